//! Matrices of the sl2 operators and of functorial maps on the canonical bases.
//!
//! Convention on `U = <x, y>`: `e = x d/dy`, `f = y d/dx`, `h = [e, f]`, so
//! `e y = x`, `f x = y`, `h x = x`, `h y = -y`. Operators act on symmetric and
//! exterior powers as derivations and on tensor products by `X (x) 1 + 1 (x) X`.

use std::collections::HashMap;

use super::Space;
use crate::combinat::{sort_with_sign, Indexed};
use crate::field::Field;
use crate::sparse::SparseMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    H,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::E, Generator::F, Generator::H];
}

/// Matrix of `gen` acting on `space`.
pub fn sl2_action<F: Field>(field: &F, space: &Space, gen: Generator) -> SparseMatrix<F> {
    match space {
        Space::U => {
            let t = match gen {
                Generator::E => vec![(0, 1, field.one())],
                Generator::F => vec![(1, 0, field.one())],
                Generator::H => vec![(0, 0, field.one()), (1, 1, field.from_i64(-1))],
            };
            SparseMatrix::from_triplets(field, 2, 2, t)
        }
        Space::Sym(_, v) | Space::Wedge(_, v) => {
            let inner = sl2_action(field, v, gen);
            let exterior = matches!(space, Space::Wedge(..));
            induced_derivation(field, &inner, space.basis().labels(), exterior)
        }
        Space::Tensor(l, r) => {
            let (xl, xr) = (sl2_action(field, l, gen), sl2_action(field, r, gen));
            let il = SparseMatrix::identity(field, l.dim());
            let ir = SparseMatrix::identity(field, r.dim());
            xl.kron(&ir)
                .and_then(|a| a.add(&il.kron(&xr)?))
                .expect("shapes agree")
        }
    }
}

/// Derivation induced on `S^k` or `L^k` by an endomorphism `x` of the inner space.
fn induced_derivation<F: Field>(
    field: &F,
    x: &SparseMatrix<F>,
    labels: &Indexed,
    exterior: bool,
) -> SparseMatrix<F> {
    let cols = x.columns();
    let n = labels.len();
    let mut t = Vec::new();
    for (c, label) in labels.items().iter().enumerate() {
        for p in 0..label.len() {
            for (r, v) in &cols[label[p]] {
                let mut new = label.clone();
                new[p] = *r;
                let sign = if exterior {
                    match sort_with_sign(&mut new) {
                        Some(s) => s,
                        None => continue,
                    }
                } else {
                    new.sort_unstable();
                    1
                };
                let row = labels.position(&new).expect("label in basis");
                t.push((row, c, field.mul(&field.from_i64(sign), v)));
            }
        }
    }
    SparseMatrix::from_triplets(field, n, n, t)
}

/// Expands `L v_{j1} * ... * L v_{jk}` for each tuple of the source basis.
fn induced_power<F: Field>(
    field: &F,
    l: &SparseMatrix<F>,
    k: usize,
    exterior: bool,
) -> SparseMatrix<F> {
    let (src, dst) = if exterior {
        (Indexed::subsets(l.cols(), k), Indexed::subsets(l.rows(), k))
    } else {
        (Indexed::multisets(l.cols(), k), Indexed::multisets(l.rows(), k))
    };
    let cols = l.columns();
    let mut t = Vec::new();
    for (c, label) in src.items().iter().enumerate() {
        let mut terms: HashMap<Vec<usize>, F::Elem> = HashMap::from([(Vec::new(), field.one())]);
        for &j in label {
            let mut next: HashMap<Vec<usize>, F::Elem> = HashMap::new();
            for (tuple, coeff) in &terms {
                for (r, v) in &cols[j] {
                    // insert r keeping the tuple sorted
                    let pos = tuple.partition_point(|&a| a < *r);
                    let mut sign = 1;
                    if exterior {
                        if tuple.get(pos) == Some(r) {
                            continue;
                        }
                        if (tuple.len() - pos) % 2 == 1 {
                            sign = -1;
                        }
                    }
                    let mut new = tuple.clone();
                    new.insert(pos, *r);
                    let val = field.mul(&field.mul(coeff, v), &field.from_i64(sign));
                    next.entry(new)
                        .and_modify(|e| *e = field.add(e, &val))
                        .or_insert(val);
                }
            }
            terms = next;
        }
        for (tuple, v) in terms {
            if !field.is_zero(&v) {
                t.push((dst.position(&tuple).expect("label in basis"), c, v));
            }
        }
    }
    SparseMatrix::from_triplets(field, dst.len(), src.len(), t)
}

/// `L^k l`: the map on `k`-th exterior powers induced by `l`.
pub fn wedge_power_map<F: Field>(field: &F, l: &SparseMatrix<F>, k: usize) -> SparseMatrix<F> {
    induced_power(field, l, k, true)
}

/// `S^k l`: the map on `k`-th symmetric powers induced by `l`.
pub fn sym_power_map<F: Field>(field: &F, l: &SparseMatrix<F>, k: usize) -> SparseMatrix<F> {
    induced_power(field, l, k, false)
}

/// Multiplication of binary forms `S^a U (x) S^b U -> S^(a+b) U`.
pub fn multiplication_map<F: Field>(field: &F, a: usize, b: usize) -> SparseMatrix<F> {
    SparseMatrix::from_triplets(
        field,
        a + b + 1,
        (a + 1) * (b + 1),
        (0..=a).flat_map(|i| (0..=b).map(move |j| (i + j, i * (b + 1) + j, field.one()))),
    )
}

/// Number of nonzero entries of `map X_dom - X_cod map`, summed over `e, f, h`.
pub fn equivariance_defect<F: Field>(
    field: &F,
    map: &SparseMatrix<F>,
    domain: &Space,
    codomain: &Space,
) -> usize {
    assert_eq!(map.shape(), (codomain.dim(), domain.dim()));
    Generator::ALL
        .iter()
        .map(|&g| {
            let lhs = map.compose(&sl2_action(field, domain, g)).expect("shape");
            let rhs = sl2_action(field, codomain, g).compose(map).expect("shape");
            lhs.sub(&rhs).expect("shape").nnz()
        })
        .sum()
}
