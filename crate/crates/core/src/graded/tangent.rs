//! The tangent developable `T` of the rational normal curve, through its
//! normalization `nu : P1 x P1 -> P^g`.
//!
//! `O_T` sits in `0 -> O_T -> nu_* O -> Omega_C -> 0`. The pushforward piece
//! of degree `q` is the space of forms of bidegree `(q(g-1), q)`; the
//! canonical-sheaf piece is binary forms of degree `q g - 2` on the diagonal.
//!
//! The derivation `delta` sends `f` to `(df_s - (g-1) df_u)|_(u=s, v=t) / t`.
//! The derivative of `nu` along the diagonal kills `a (d_s - (g-1) d_u) +
//! b (d_t - (g-1) d_v)` for every `(a, b)` proportional to `(s, t)`, so the
//! restriction above is divisible by `t` and the quotient is the conormal
//! derivative. It is rescaled by `g^-q` so that it is a map of graded
//! modules when `Z_k` acts on the diagonal by `s^(g-k) t^k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::elim::{kernel_basis, rref_of_rows, same_span, Rref};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::sparse::{SparseMatrix, SparseVec};

use super::forms::{bigraded_dim, binary_monomial_product, mult_by_nu, ParamForms};
use super::{GradedModule, ObjectKind};

/// Sections of `O(q(g-1), q)` for `q = 0..=qmax`, acted on by the `nu_k`.
pub fn pushforward_module<F: Field>(field: &F, g: usize, qmax: usize) -> GradedModule<F> {
    let nu = ParamForms::new(g);
    let dims = (0..=qmax).map(|q| bigraded_dim(q * (g - 1), q)).collect();
    let actions = (0..qmax)
        .map(|q| {
            (0..=g)
                .map(|k| mult_by_nu(field, &nu, k, q * (g - 1), q))
                .collect()
        })
        .collect();
    GradedModule::new(field, ObjectKind::Pushforward, g, g + 1, dims, actions)
}

/// Binary forms of degree `q g - 2` (zero for `q = 0`), with `Z_k` acting by
/// `s^(g-k) t^k` (the diagonal restriction of `nu_k` without its factor `g`).
pub fn omega_module<F: Field>(field: &F, g: usize, qmax: usize) -> GradedModule<F> {
    let dims: Vec<usize> = (0..=qmax).map(|q| (q * g).saturating_sub(1)).collect();
    let actions = (0..qmax)
        .map(|q| {
            (0..=g)
                .map(|k| {
                    if q == 0 {
                        SparseMatrix::zeros(field, dims[1], 0)
                    } else {
                        binary_monomial_product(field, q * g - 2, g, k)
                    }
                })
                .collect()
        })
        .collect();
    GradedModule::new(field, ObjectKind::Omega, g, g + 1, dims, actions)
}

/// The derivation `delta_q` from the pushforward piece of degree `q` to the
/// canonical-sheaf piece of degree `q`.
pub fn delta_matrix<F: Field>(field: &F, g: usize, q: usize) -> SparseMatrix<F> {
    let (a, b) = (q * (g - 1), q);
    let cols = bigraded_dim(a, b);
    let rows = (q * g).saturating_sub(1);
    let scale = field.inv(&pow(field, &field.from_i64(g as i64), q));
    let mut t = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            // (d_s - (g-1) d_u) of s^(a-i) t^i u^(b-j) v^j on the diagonal
            let c = (a - i) as i64 - (g as i64 - 1) * (b - j) as i64;
            if c == 0 {
                continue;
            }
            // restriction is c s^(qg-1-i-j) t^(i+j); i + j >= 1 whenever c != 0
            let e = i + j - 1;
            t.push((e, i * (b + 1) + j, field.mul(&field.from_i64(c), &scale)));
        }
    }
    SparseMatrix::from_triplets(field, rows, cols, t)
}

fn pow<F: Field>(field: &F, x: &F::Elem, n: usize) -> F::Elem {
    (0..n).fold(field.one(), |acc, _| field.mul(&acc, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TangentMethod {
    /// Span of the degree-`q` products of the `nu_k`.
    Image,
    /// Kernel of `delta_q`.
    Kernel,
}

/// Spanning rows of `(O_T)_q` inside the pushforward piece, by products.
fn product_spans<F: Field>(field: &F, g: usize, qmax: usize) -> Vec<Rref<F::Elem>> {
    let nu = ParamForms::new(g);
    let mut out: Vec<Rref<F::Elem>> = vec![rref_of_rows(field, vec![vec![(0, field.one())]], 1)];
    for q in 0..qmax {
        let mults: Vec<SparseMatrix<F>> = (0..=g)
            .map(|k| mult_by_nu(field, &nu, k, q * (g - 1), q))
            .collect();
        let rows: Vec<SparseVec<F::Elem>> = out[q]
            .rows
            .iter()
            .flat_map(|r| mults.iter().map(move |m| m.apply(r)))
            .collect();
        out.push(rref_of_rows(field, rows, bigraded_dim((q + 1) * (g - 1), q + 1)));
    }
    out
}

/// `(O_T)_q` as the kernel of `delta_q`, in reduced echelon form.
fn kernel_spans<F: Field>(field: &F, g: usize, qmax: usize) -> Vec<Rref<F::Elem>> {
    (0..=qmax)
        .map(|q| {
            let d = delta_matrix(field, g, q);
            rref_of_rows(field, kernel_basis(&d), d.cols())
        })
        .collect()
}

/// Coordinate ring of the tangent developable, pieces `0..=qmax`.
///
/// Each piece is stored by its reduced echelon basis inside the pushforward
/// piece, so both constructions produce identical modules when they agree.
/// The kernel construction is always cross-checked against the image one,
/// which is authoritative.
pub fn tangent_module<F: Field>(
    field: &F,
    g: usize,
    qmax: usize,
    method: TangentMethod,
) -> Result<GradedModule<F>> {
    if g < 3 {
        return Err(Error::Precondition(format!("tangent developable needs g >= 3, got {g}")));
    }
    let image = product_spans(field, g, qmax);
    let spans = match method {
        TangentMethod::Image => image,
        TangentMethod::Kernel => {
            let kernel = kernel_spans(field, g, qmax);
            for (q, (a, b)) in image.iter().zip(&kernel).enumerate() {
                let dim = bigraded_dim(q * (g - 1), q);
                if !same_span(field, dim, &a.rows, &b.rows) {
                    return Err(Error::MethodMismatch { genus: g, degree: q });
                }
            }
            kernel
        }
    };
    let nu = ParamForms::new(g);
    let mut actions = Vec::new();
    for q in 0..qmax {
        let mut layer = Vec::new();
        for k in 0..=g {
            let m = mult_by_nu(field, &nu, k, q * (g - 1), q);
            let mut cols = Vec::new();
            for row in &spans[q].rows {
                let w = m.apply(row);
                if !spans[q + 1].residual(field, &w).is_empty() {
                    return Err(Error::MethodMismatch { genus: g, degree: q + 1 });
                }
                let coords = spans[q + 1].coordinates(field, &w);
                cols.push(
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !field.is_zero(x))
                        .collect::<SparseVec<F::Elem>>(),
                );
            }
            layer.push(SparseMatrix::from_columns(field, spans[q + 1].rank(), &cols));
        }
        actions.push(layer);
    }
    let dims = spans.iter().map(Rref::rank).collect();
    Ok(GradedModule::new(field, ObjectKind::Tangent, g, g + 1, dims, actions))
}

/// Result of counting the points of `T` on a random codimension-2 linear space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub genus: usize,
    pub prime: u64,
    pub seed: u64,
    /// Degree of the eliminant `A1 B2 - A2 B1` in `(s, t)`.
    pub eliminant_degree: usize,
    /// Distinct roots of the eliminant on `P1`, i.e. intersection points.
    pub points: usize,
    pub expected: usize,
}

/// Degree of `T` by elimination: two random hyperplanes pull back to
/// `A_i(s,t) u + B_i(s,t) v`; they meet on `P1 x P1` exactly over the roots
/// of `A1 B2 - A2 B1`, a binary form of degree `2g - 2`.
pub fn tangent_degree(g: usize, seed: u64) -> DegreeReport {
    const P: u64 = 1_000_000_007;
    let field = PrimeField::new(P).expect("prime");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nu = ParamForms::new(g);
    let mut pull_back = || {
        let h: Vec<u64> = (0..=g).map(|_| rng.gen_range(1..P)).collect();
        // coefficients of u and v as binary forms of degree g - 1
        let mut a = vec![0u64; g];
        let mut b = vec![0u64; g];
        for (k, hk) in h.iter().enumerate() {
            for &(i, j, c) in nu.terms(k) {
                let target = if j == 0 { &mut a } else { &mut b };
                target[i] = field.add(&target[i], &field.mul(hk, &field.from_i64(c)));
            }
        }
        (a, b)
    };
    let (a1, b1) = pull_back();
    let (a2, b2) = pull_back();
    let elim = poly_sub(&field, &poly_mul(&field, &a1, &b2), &poly_mul(&field, &a2, &b1));
    // index = exponent of t in s^(n-e) t^e; dehomogenize at s = 1
    let n = 2 * g - 2;
    let mut affine = elim.clone();
    trim(&mut affine);
    let at_infinity = usize::from(affine.len() < n + 1);
    let deriv: Vec<u64> = affine
        .iter()
        .enumerate()
        .skip(1)
        .map(|(e, c)| field.mul(c, &field.from_i64(e as i64)))
        .collect();
    let g_ = poly_gcd(&field, affine.clone(), deriv);
    let distinct_affine = (affine.len() - 1) - (g_.len() - 1);
    DegreeReport {
        genus: g,
        prime: P,
        seed,
        eliminant_degree: n,
        points: distinct_affine + at_infinity,
        expected: 2 * g - 2,
    }
}

fn trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().expect("nonempty") == 0 {
        p.pop();
    }
}

fn poly_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

fn poly_sub(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
        .collect()
}

fn poly_rem(f: &PrimeField, mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let lead_inv = f.inv(b.last().expect("nonzero divisor"));
    while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
        let c = f.mul(a.last().expect("nonempty"), &lead_inv);
        let shift = a.len() - b.len();
        for (i, y) in b.iter().enumerate() {
            a[shift + i] = f.sub(&a[shift + i], &f.mul(&c, y));
        }
        a.pop();
        trim(&mut a);
        if a.len() < b.len() {
            break;
        }
    }
    a
}

fn poly_gcd(f: &PrimeField, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) && !b.is_empty() {
        let r = poly_rem(f, a, &b);
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn pushforward_dimensions() {
        let m = pushforward_module(&Rationals, 3, 2);
        assert_eq!(m.dims(), &[1, 6, 15]);
        let m = pushforward_module(&Rationals, 4, 2);
        assert!(m.actions_commute());
    }

    #[test]
    fn omega_dimensions() {
        let m = omega_module(&Rationals, 3, 2);
        assert_eq!(m.dims(), &[0, 2, 5]);
        assert_eq!(omega_module(&Rationals, 5, 2).dim(2), 9);
        assert!(omega_module(&Rationals, 5, 3).actions_commute());
    }

    #[test]
    fn delta_kills_products_of_nu() {
        let f = Rationals;
        for g in 3..=6 {
            let nu = ParamForms::new(g);
            let d1 = delta_matrix(&f, g, 1);
            let forms = nu.coefficient_matrix(&f);
            assert!(d1.compose(&forms).unwrap().is_zero(), "g={g}");
        }
    }

    #[test]
    fn delta_is_a_module_map() {
        let f = Rationals;
        for g in 3..=6 {
            let p = pushforward_module(&f, g, 3);
            let o = omega_module(&f, g, 3);
            for q in 0..3 {
                let dq = delta_matrix(&f, g, q);
                let dq1 = delta_matrix(&f, g, q + 1);
                for k in 0..=g {
                    let lhs = dq1.compose(p.action(k, q)).unwrap();
                    let rhs = o.action(k, q).compose(&dq).unwrap();
                    assert_eq!(lhs, rhs, "g={g} q={q} k={k}");
                }
            }
        }
    }

    #[test]
    fn both_tangent_constructions_agree() {
        let f = Rationals;
        for g in 3..=6 {
            let image = tangent_module(&f, g, 3, TangentMethod::Image).unwrap();
            let kernel = tangent_module(&f, g, 3, TangentMethod::Kernel).unwrap();
            assert_eq!(image.dims(), kernel.dims());
            for q in 0..3 {
                for k in 0..=g {
                    assert_eq!(image.action(k, q), kernel.action(k, q));
                }
            }
            assert!(image.actions_commute());
        }
    }

    #[test]
    fn tangent_low_degrees() {
        let m = tangent_module(&Rationals, 3, 2, TangentMethod::Image).unwrap();
        assert_eq!(m.dims(), &[1, 4, 10]);
        for g in 3..=8 {
            let m = tangent_module(&Rationals, g, 1, TangentMethod::Image).unwrap();
            assert_eq!(m.dim(1), g + 1);
        }
    }

    #[test]
    fn degree_of_tangent_surface() {
        for g in [3, 4] {
            for seed in 0..3 {
                let r = tangent_degree(g, seed);
                assert_eq!(r.points, 2 * g - 2, "{r:?}");
            }
        }
    }
}
