//! Torus characters of SL2 representations.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Space;
use crate::combinat::binomial;

/// Weight multiplicities: the Laurent polynomial `sum m_w q^w`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Character(BTreeMap<i64, u64>);

impl Character {
    pub fn from_weights(weights: impl IntoIterator<Item = i64>) -> Self {
        let mut m = BTreeMap::new();
        for w in weights {
            *m.entry(w).or_insert(0) += 1;
        }
        Character(m)
    }

    /// Character of the irreducible `S^d U`.
    pub fn irreducible(d: usize) -> Self {
        Self::from_weights((0..=d).map(|j| d as i64 - 2 * j as i64))
    }

    pub fn of(space: &Space) -> Self {
        match space {
            Space::U => Self::irreducible(1),
            Space::Sym(a, v) => Self::of(v).sym(*a),
            Space::Wedge(a, v) => Self::of(v).wedge(*a),
            Space::Tensor(l, r) => Self::of(l).tensor(&Self::of(r)),
        }
    }

    pub fn multiplicity(&self, w: i64) -> u64 {
        self.0.get(&w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(w, m)| (*w, *m))
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().all(|(w, m)| self.multiplicity(-w) == *m)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut m = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                *m.entry(a + b).or_insert(0) += x * y;
            }
        }
        Character(m)
    }

    /// Character of the `k`-th symmetric power (unbounded knapsack over the
    /// weight multiset).
    pub fn sym(&self, k: usize) -> Self {
        self.power(k, false)
    }

    /// Character of the `k`-th exterior power (0/1 knapsack).
    pub fn wedge(&self, k: usize) -> Self {
        self.power(k, true)
    }

    fn power(&self, k: usize, exterior: bool) -> Self {
        // table[c] = character of degree-c part over the items seen so far
        let mut table: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::new(); k + 1];
        table[0].insert(0, 1);
        for (&w, &mult) in &self.0 {
            for _ in 0..mult {
                if exterior {
                    for c in (1..=k).rev() {
                        let prev: Vec<(i64, u64)> =
                            table[c - 1].iter().map(|(a, b)| (*a, *b)).collect();
                        for (a, b) in prev {
                            *table[c].entry(a + w).or_insert(0) += b;
                        }
                    }
                } else {
                    for c in 1..=k {
                        let prev: Vec<(i64, u64)> =
                            table[c - 1].iter().map(|(a, b)| (*a, *b)).collect();
                        for (a, b) in prev {
                            *table[c].entry(a + w).or_insert(0) += b;
                        }
                    }
                }
            }
        }
        Character(table.swap_remove(k))
    }

    /// Highest weights of the irreducible summands, in decreasing order and
    /// repeated by multiplicity. `None` if the character is not that of an
    /// SL2 representation.
    pub fn decompose(&self) -> Option<Vec<usize>> {
        let mut rest: BTreeMap<i64, i64> = self.0.iter().map(|(w, m)| (*w, *m as i64)).collect();
        let mut out = Vec::new();
        while let Some((&top, &c)) = rest.iter().next_back() {
            if c == 0 {
                rest.remove(&top);
                continue;
            }
            if c < 0 || top < 0 {
                return None;
            }
            for _ in 0..c {
                out.push(top as usize);
            }
            for j in 0..=top {
                let e = rest.entry(top - 2 * j).or_insert(0);
                *e -= c;
            }
            rest.retain(|_, m| *m != 0);
        }
        Some(out)
    }
}

impl fmt::Display for Character {
    /// Sorted `weight: multiplicity` list, highest weight first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().rev().map(|(w, m)| format!("{w}: {m}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteReport {
    pub a: usize,
    pub b: usize,
    pub dim_wedge: u64,
    pub dim_sym: u64,
    pub expected_dim: u128,
    pub characters_equal: bool,
    /// First weight (from the top) where the two characters differ.
    pub first_difference: Option<(i64, u64, u64)>,
}

impl HermiteReport {
    pub fn passed(&self) -> bool {
        self.characters_equal
            && self.dim_wedge == self.dim_sym
            && self.dim_wedge as u128 == self.expected_dim
    }
}

/// Compares the characters of `L^a S^b U` and `S^(b+1-a) S^a U`.
pub fn hermite_verify(a: usize, b: usize) -> HermiteReport {
    assert!(a <= b + 1, "hermite_verify needs a <= b + 1");
    let lhs = Character::of(&Space::wedge(a, Space::sym_u(b)));
    let rhs = Character::of(&Space::sym(b + 1 - a, Space::sym_u(a)));
    let mut weights: Vec<i64> = lhs.0.keys().chain(rhs.0.keys()).copied().collect();
    weights.sort_unstable_by(|x, y| y.cmp(x));
    weights.dedup();
    let first_difference = weights
        .into_iter()
        .map(|w| (w, lhs.multiplicity(w), rhs.multiplicity(w)))
        .find(|(_, l, r)| l != r);
    HermiteReport {
        a,
        b,
        dim_wedge: lhs.dim(),
        dim_sym: rhs.dim(),
        expected_dim: binomial(b as u64 + 1, a as u64),
        characters_equal: first_difference.is_none(),
        first_difference,
    }
}

/// Irreducible decomposition of `L^2 S^m U`, as highest weights.
pub fn wedge2_decompose(m: usize) -> Vec<usize> {
    Character::of(&Space::wedge(2, Space::sym_u(m)))
        .decompose()
        .expect("exterior square is a representation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laurent(pairs: &[(i64, u64)]) -> Character {
        Character(pairs.iter().copied().collect())
    }

    #[test]
    fn basic_characters() {
        assert_eq!(Character::of(&Space::U), laurent(&[(1, 1), (-1, 1)]));
        assert_eq!(
            Character::of(&Space::sym_u(2)),
            laurent(&[(2, 1), (0, 1), (-2, 1)])
        );
        assert_eq!(
            Character::of(&Space::wedge(2, Space::sym_u(2))),
            laurent(&[(2, 1), (0, 1), (-2, 1)])
        );
    }

    #[test]
    fn characters_agree_with_basis_weights() {
        for s in [
            Space::wedge(3, Space::sym_u(5)),
            Space::sym(2, Space::sym_u(3)),
            Space::tensor(Space::sym_u(2), Space::wedge(2, Space::sym_u(4))),
        ] {
            assert_eq!(Character::of(&s), Character::from_weights(s.weights()), "{s}");
        }
    }

    #[test]
    fn hermite_examples() {
        let r = hermite_verify(1, 5);
        assert!(r.passed());
        assert_eq!(r.dim_wedge, 6);
        let r = hermite_verify(2, 3);
        assert!(r.passed());
        assert_eq!(r.dim_wedge, 6);
        let r = hermite_verify(4, 6);
        assert!(r.passed());
        assert_eq!((r.dim_wedge, r.dim_sym), (35, 35));
    }

    #[test]
    fn equal_dimension_is_not_enough() {
        // S^4 U (x) U and L^2 S^4 U both have dimension 10 but differ
        let lhs = Character::of(&Space::wedge(2, Space::sym_u(4)));
        let rhs = Character::of(&Space::tensor(Space::sym_u(4), Space::U));
        assert_eq!(lhs.dim(), rhs.dim());
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn wedge_square_decompositions() {
        assert_eq!(wedge2_decompose(2), vec![2]);
        assert_eq!(wedge2_decompose(3), vec![4, 0]);
        let top = wedge2_decompose(5);
        assert_eq!(top[0], 8);
        assert_eq!(top.iter().filter(|&&w| w == 8).count(), 1);
        for m in 1..=12 {
            let d = wedge2_decompose(m);
            let expected: Vec<usize> = (0..m.div_ceil(2)).map(|k| 2 * m - 2 - 4 * k).collect();
            assert_eq!(d, expected, "m={m}");
        }
    }

    #[test]
    fn display_lists_weights() {
        assert_eq!(Character::of(&Space::U).to_string(), "1: 1, -1: 1");
    }
}
