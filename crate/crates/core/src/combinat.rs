//! Index bookkeeping for exterior and symmetric powers.

use std::collections::HashMap;

/// Binomial coefficient, exact in `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Weakly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    if n > 0 || k == 0 {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

/// An ordered list of tuples with reverse lookup.
#[derive(Debug, Clone, Default)]
pub struct Indexed {
    items: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Indexed {
    pub fn new(items: Vec<Vec<usize>>) -> Self {
        let index = items.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { items, index }
    }

    pub fn subsets(n: usize, k: usize) -> Self {
        Self::new(subsets(n, k))
    }

    pub fn multisets(n: usize, k: usize) -> Self {
        Self::new(multisets(n, k))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Vec<usize>] {
        &self.items
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.items[i]
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// Sorts a tuple of distinct indices, returning the permutation sign, or
/// `None` when an index repeats (the wedge vanishes).
pub fn sort_with_sign(t: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    // insertion sort: tuples are short
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        for n in 0..7 {
            for k in 0..6 {
                assert_eq!(subsets(n, k).len() as u128, binomial(n as u64, k as u64));
                if n > 0 {
                    assert_eq!(
                        multisets(n, k).len() as u128,
                        binomial((n + k - 1) as u64, k as u64)
                    );
                }
            }
        }
        assert_eq!(multisets(0, 0), vec![Vec::<usize>::new()]);
        assert!(multisets(0, 2).is_empty());
    }

    #[test]
    fn lexicographic_order() {
        assert_eq!(
            multisets(2, 3),
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]
        );
        assert_eq!(subsets(4, 2)[..3], [vec![0, 1], vec![0, 2], vec![0, 3]]);
    }

    #[test]
    fn signs() {
        assert_eq!(sort_with_sign(&mut [2, 0, 1]), Some(1));
        assert_eq!(sort_with_sign(&mut [1, 0]), Some(-1));
        assert_eq!(sort_with_sign(&mut [1, 3, 1]), None);
    }
}
