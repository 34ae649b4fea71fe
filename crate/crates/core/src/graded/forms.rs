//! Bihomogeneous forms on `P1 x P1` and the parameterization of the tangent
//! developable.
//!
//! A form of bidegree `(a, b)` is a vector over the monomials
//! `s^(a-i) t^i u^(b-j) v^j`, indexed by `i * (b + 1) + j`. Binary forms of
//! degree `d` in `(s, t)` are vectors over `s^(d-i) t^i`, indexed by `i`.

use crate::field::Field;
use crate::sparse::SparseMatrix;

pub fn bigraded_dim(a: usize, b: usize) -> usize {
    (a + 1) * (b + 1)
}

/// The `g + 1` forms `nu_k = (g-k) s^(g-k-1) t^k u + k s^(g-k) t^(k-1) v`
/// of bidegree `(g - 1, 1)`, i.e. `[u v] . Jac(s^g, s^(g-1) t, ..., t^g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamForms {
    genus: usize,
    /// Per form: `(i, j, coefficient)` for the monomial `s^(g-1-i) t^i u^(1-j) v^j`.
    terms: Vec<Vec<(usize, usize, i64)>>,
}

impl ParamForms {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 2, "genus must be at least 2");
        let g = genus;
        let terms = (0..=g)
            .map(|k| {
                let mut t = Vec::with_capacity(2);
                if k < g {
                    t.push((k, 0, (g - k) as i64));
                }
                if k > 0 {
                    t.push((k - 1, 1, k as i64));
                }
                t
            })
            .collect();
        Self { genus, terms }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self, k: usize) -> &[(usize, usize, i64)] {
        &self.terms[k]
    }

    /// Coefficient matrix in bidegree `(g - 1, 1)`: one column per form.
    pub fn coefficient_matrix<F: Field>(&self, field: &F) -> SparseMatrix<F> {
        SparseMatrix::from_triplets(
            field,
            bigraded_dim(self.genus - 1, 1),
            self.len(),
            self.terms.iter().enumerate().flat_map(|(k, t)| {
                t.iter()
                    .map(move |&(i, j, c)| (i * 2 + j, k, field.from_i64(c)))
            }),
        )
    }

    /// `nu_k(s, t, s, t)` as a binary form of degree `g`: `(exponent of t, coefficient)`.
    pub fn diagonal_restriction(&self, k: usize) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for &(i, j, c) in &self.terms[k] {
            let e = i + j;
            match out.iter_mut().find(|(x, _)| *x == e) {
                Some(slot) => slot.1 += c,
                None => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        out
    }

    /// Text form, e.g. `2stu + s^2v`.
    pub fn describe(&self, k: usize) -> String {
        let g = self.genus;
        let pow = |v: &str, e: usize| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let parts: Vec<String> = self.terms[k]
            .iter()
            .map(|&(i, j, c)| {
                let coeff = if c == 1 { String::new() } else { c.to_string() };
                format!(
                    "{coeff}{}{}{}{}",
                    pow("s", g - 1 - i),
                    pow("t", i),
                    pow("u", 1 - j),
                    pow("v", j)
                )
            })
            .collect();
        parts.join(" + ")
    }
}

/// Multiplication by `nu_k` from bidegree `(a, b)` to `(a + g - 1, b + 1)`.
pub fn mult_by_nu<F: Field>(
    field: &F,
    nu: &ParamForms,
    k: usize,
    a: usize,
    b: usize,
) -> SparseMatrix<F> {
    let g = nu.genus();
    let (a2, b2) = (a + g - 1, b + 1);
    let mut t = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            for &(ti, tj, c) in nu.terms(k) {
                t.push(((i + ti) * (b2 + 1) + j + tj, i * (b + 1) + j, field.from_i64(c)));
            }
        }
    }
    SparseMatrix::from_triplets(field, bigraded_dim(a2, b2), bigraded_dim(a, b), t)
}

/// Multiplication by `s^(e-k) t^k` on binary forms of degree `d` (`e` is the
/// degree of the multiplier).
pub fn binary_monomial_product<F: Field>(
    field: &F,
    d: usize,
    e: usize,
    k: usize,
) -> SparseMatrix<F> {
    SparseMatrix::from_triplets(
        field,
        d + e + 1,
        d + 1,
        (0..=d).map(|i| (i + k, i, field.one())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elim::rank;
    use crate::field::Rationals;

    #[test]
    fn genus_three_forms() {
        let nu = ParamForms::new(3);
        let shown: Vec<String> = (0..4).map(|k| nu.describe(k)).collect();
        assert_eq!(shown, ["3s^2u", "2stu + s^2v", "t^2u + 2stv", "3t^2v"]);
    }

    #[test]
    fn diagonal_lands_on_scaled_curve() {
        for g in 2..=12 {
            let nu = ParamForms::new(g);
            for k in 0..=g {
                assert_eq!(nu.diagonal_restriction(k), vec![(k, g as i64)]);
            }
        }
    }

    #[test]
    fn forms_are_independent() {
        for g in 2..=9 {
            let m = ParamForms::new(g).coefficient_matrix(&Rationals);
            assert_eq!(rank(&m).rank, g + 1);
        }
    }

    #[test]
    fn multiplication_by_nu_commutes() {
        let f = Rationals;
        let nu = ParamForms::new(4);
        for k in 0..5 {
            for l in 0..5 {
                let kl = mult_by_nu(&f, &nu, k, 3, 1).compose(&mult_by_nu(&f, &nu, l, 0, 0));
                let lk = mult_by_nu(&f, &nu, l, 3, 1).compose(&mult_by_nu(&f, &nu, k, 0, 0));
                assert_eq!(kl.unwrap(), lk.unwrap());
            }
        }
    }
}
