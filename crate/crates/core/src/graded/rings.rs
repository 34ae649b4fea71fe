//! Polynomial rings, the rational normal curve and complete intersections.

use crate::combinat::{binomial, Indexed};
use crate::elim::{rref_of_rows, Rref};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::{SparseMatrix, SparseVec};

use super::forms::binary_monomial_product;
use super::poly::Poly;
use super::{GradedModule, ObjectKind};

fn exps_to_multiset(e: &[u32]) -> Vec<usize> {
    e.iter()
        .enumerate()
        .flat_map(|(i, &x)| std::iter::repeat_n(i, x as usize))
        .collect()
}

/// Multiplication by `Z_k` from monomials of degree `q` to degree `q + 1`.
fn monomial_shift<F: Field>(field: &F, src: &Indexed, dst: &Indexed, k: usize) -> SparseMatrix<F> {
    SparseMatrix::from_triplets(
        field,
        dst.len(),
        src.len(),
        src.items().iter().enumerate().map(|(c, m)| {
            let mut m = m.clone();
            let pos = m.partition_point(|&x| x <= k);
            m.insert(pos, k);
            (dst.position(&m).expect("monomial"), c, field.one())
        }),
    )
}

/// `k[Z_0..Z_(n-1)]` in degrees `0..=qmax`, with the monomial basis.
pub fn polynomial_ring_module<F: Field>(field: &F, nvars: usize, qmax: usize) -> GradedModule<F> {
    let bases: Vec<Indexed> = (0..=qmax).map(|q| Indexed::multisets(nvars, q)).collect();
    let actions = (0..qmax)
        .map(|q| {
            (0..nvars)
                .map(|k| monomial_shift(field, &bases[q], &bases[q + 1], k))
                .collect()
        })
        .collect();
    GradedModule::new(
        field,
        ObjectKind::PolynomialRing,
        nvars.saturating_sub(1),
        nvars,
        bases.iter().map(Indexed::len).collect(),
        actions,
    )
}

/// Coordinate ring of the rational normal curve `[s^g, s^(g-1) t, ..., t^g]`:
/// `M_q` is binary forms of degree `q g` and `Z_k` acts by `s^(g-k) t^k`.
pub fn rnc_module<F: Field>(field: &F, g: usize, qmax: usize) -> GradedModule<F> {
    assert!(g >= 2, "genus must be at least 2");
    let dims = (0..=qmax).map(|q| q * g + 1).collect();
    let actions = (0..qmax)
        .map(|q| {
            (0..=g)
                .map(|k| binary_monomial_product(field, q * g, g, k))
                .collect()
        })
        .collect();
    GradedModule::new(field, ObjectKind::Rnc, g, g + 1, dims, actions)
}

/// The `2 x 2` minors `Q_(a, b+1) = Z_a Z_(b+1) - Z_b Z_(a+1)` of the
/// catalecticant `[[Z_0 .. Z_(g-1)], [Z_1 .. Z_g]]`, labelled by `(a, b + 1)`.
pub fn catalecticant_minors(g: usize) -> Vec<((usize, usize), Poly)> {
    let n = g + 1;
    let z = |i| Poly::var(n, i);
    let mut out = Vec::new();
    for a in 0..g {
        for b in a + 1..g {
            let q = &(&z(a) * &z(b + 1)) - &(&z(b) * &z(a + 1));
            out.push(((a, b + 1), q));
        }
    }
    out
}

fn poly_vector<F: Field>(field: &F, p: &Poly, basis: &Indexed) -> SparseVec<F::Elem> {
    let mut v: SparseVec<F::Elem> = p
        .terms()
        .map(|(e, c)| (basis.position(&exps_to_multiset(e)).expect("monomial"), field.from_i64(c)))
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Expected dimension of the degree-`q` piece of an ideal generated by a
/// regular sequence of `c` quadrics in `n` variables.
fn ci_ideal_dim(nvars: usize, c: usize, q: usize) -> i128 {
    let s = |d: i64| -> i128 {
        if d < 0 {
            0
        } else {
            binomial((nvars as i64 + d - 1) as u64, d as u64) as i128
        }
    };
    (1..=c)
        .map(|j| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            sign * binomial(c as u64, j as u64) as i128 * s(q as i64 - 2 * j as i64)
        })
        .sum()
}

/// `S / (Q_1, ..., Q_c)` for homogeneous quadrics forming a regular sequence.
///
/// Regularity is checked through the Hilbert function in every degree up to
/// `qmax`. The quotient basis consists of the monomials that are not pivots
/// of the reduced echelon form of the ideal piece, and products are reduced
/// to that basis.
pub fn ci_module<F: Field>(field: &F, quadrics: &[Poly], qmax: usize) -> Result<GradedModule<F>> {
    let nvars = quadrics
        .first()
        .map(Poly::nvars)
        .ok_or_else(|| Error::Precondition("no quadrics given".into()))?;
    for q in quadrics {
        if q.nvars() != nvars || q.homogeneous_degree() != Some(2) {
            return Err(Error::Precondition(format!("`{q}` is not a quadric in {nvars} variables")));
        }
    }
    let monos: Vec<Indexed> = (0..=qmax + 1).map(|q| Indexed::multisets(nvars, q)).collect();
    let mut ideals: Vec<Rref<F::Elem>> = Vec::new();
    for q in 0..=qmax {
        let mut rows = Vec::new();
        if q >= 2 {
            for m in monos[q - 2].items() {
                let mut e = vec![0u32; nvars];
                for &i in m {
                    e[i] += 1;
                }
                let mono = Poly::monomial(e, 1);
                for quad in quadrics {
                    rows.push(poly_vector(field, &(&mono * quad), &monos[q]));
                }
            }
        }
        let r = rref_of_rows(field, rows, monos[q].len());
        let expected = ci_ideal_dim(nvars, quadrics.len(), q);
        if r.rank() as i128 != expected {
            return Err(Error::NotRegularSequence {
                degree: q,
                found: r.rank(),
                expected: expected.max(0) as usize,
            });
        }
        ideals.push(r);
    }
    // standard monomials: non-pivot columns
    let standard: Vec<Vec<usize>> = ideals
        .iter()
        .zip(&monos)
        .map(|(r, m)| (0..m.len()).filter(|c| r.pivots.binary_search(c).is_err()).collect())
        .collect();
    let mut actions = Vec::new();
    for q in 0..qmax {
        let mut layer = Vec::new();
        for k in 0..nvars {
            let mut t = Vec::new();
            for (c, &mono_idx) in standard[q].iter().enumerate() {
                let mut m = monos[q].get(mono_idx).to_vec();
                let pos = m.partition_point(|&x| x <= k);
                m.insert(pos, k);
                let v = vec![(monos[q + 1].position(&m).expect("monomial"), field.one())];
                for (col, x) in ideals[q + 1].residual(field, &v) {
                    let row = standard[q + 1].binary_search(&col).expect("reduced to standard");
                    t.push((row, c, x));
                }
            }
            layer.push(SparseMatrix::from_triplets(
                field,
                standard[q + 1].len(),
                standard[q].len(),
                t,
            ));
        }
        actions.push(layer);
    }
    Ok(GradedModule::new(
        field,
        ObjectKind::Ci,
        nvars - 1,
        nvars,
        standard.iter().map(Vec::len).collect(),
        actions,
    ))
}

/// The two quadrics `Z0 Z2 - Z1^2`, `Z1 Z3 - Z2^2` cutting out an elliptic
/// quartic in `P^3`.
pub fn default_ci_quadrics() -> Vec<Poly> {
    vec![
        "Z0*Z2 - Z1^2".parse().expect("literal"),
        "Z1*Z3 - Z2^2".parse().expect("literal"),
    ]
}
