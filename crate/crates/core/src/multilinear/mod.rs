//! Representations of SL2 built from the standard 2-dimensional space `U`
//! by symmetric powers, exterior powers and tensor products.
//!
//! `U` has basis `(x, y)`. A symmetric power is indexed by weakly increasing
//! tuples of inner indices, an exterior power by strictly increasing tuples,
//! a tensor product by lexicographic pairs; so `Sym(a, U)` has the monomial
//! basis `x^a, x^(a-1) y, ..., y^a` in that order.

mod action;
mod character;

pub use action::{
    equivariance_defect, multiplication_map, sl2_action, sym_power_map, wedge_power_map,
    Generator,
};
pub use character::{hermite_verify, wedge2_decompose, Character, HermiteReport};

use std::fmt;

use crate::combinat::{binomial, multisets, subsets, Indexed};

/// A formal expression over the atom `U`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Space {
    U,
    Sym(usize, Box<Space>),
    Wedge(usize, Box<Space>),
    Tensor(Box<Space>, Box<Space>),
}

impl Space {
    pub fn sym(a: usize, inner: Space) -> Space {
        Space::Sym(a, Box::new(inner))
    }

    pub fn wedge(a: usize, inner: Space) -> Space {
        Space::Wedge(a, Box::new(inner))
    }

    pub fn tensor(left: Space, right: Space) -> Space {
        Space::Tensor(Box::new(left), Box::new(right))
    }

    /// `S^a U`.
    pub fn sym_u(a: usize) -> Space {
        Space::sym(a, Space::U)
    }

    /// Dimension from the closed-form binomial formulas.
    pub fn dim(&self) -> usize {
        match self {
            Space::U => 2,
            Space::Sym(a, v) => {
                let n = v.dim() as u64;
                if n == 0 {
                    usize::from(*a == 0)
                } else {
                    binomial(n + *a as u64 - 1, *a as u64) as usize
                }
            }
            Space::Wedge(a, v) => binomial(v.dim() as u64, *a as u64) as usize,
            Space::Tensor(l, r) => l.dim() * r.dim(),
        }
    }

    /// The canonical ordered basis.
    pub fn basis(&self) -> Basis {
        let labels = match self {
            Space::U => vec![vec![0], vec![1]],
            Space::Sym(a, v) => multisets(v.dim(), *a),
            Space::Wedge(a, v) => subsets(v.dim(), *a),
            Space::Tensor(l, r) => {
                let (m, n) = (l.dim(), r.dim());
                (0..m)
                    .flat_map(|i| (0..n).map(move |j| vec![i, j]))
                    .collect()
            }
        };
        Basis {
            space: self.clone(),
            labels: Indexed::new(labels),
        }
    }

    /// Torus weight of each basis vector (`x` has weight 1, `y` weight -1).
    pub fn weights(&self) -> Vec<i64> {
        match self {
            Space::U => vec![1, -1],
            Space::Sym(_, v) | Space::Wedge(_, v) => {
                let inner = v.weights();
                self.basis()
                    .labels
                    .items()
                    .iter()
                    .map(|t| t.iter().map(|&i| inner[i]).sum())
                    .collect()
            }
            Space::Tensor(l, r) => {
                let (wl, wr) = (l.weights(), r.weights());
                wl.iter()
                    .flat_map(|a| wr.iter().map(move |b| a + b))
                    .collect()
            }
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::U => write!(f, "U"),
            Space::Sym(a, v) => write!(f, "S^{a}({v})"),
            Space::Wedge(a, v) => write!(f, "L^{a}({v})"),
            Space::Tensor(l, r) => write!(f, "({l} x {r})"),
        }
    }
}

/// A space together with its ordered basis labels.
#[derive(Debug, Clone)]
pub struct Basis {
    space: Space,
    labels: Indexed,
}

impl Basis {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &[usize] {
        self.labels.get(i)
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.labels.position(t)
    }

    pub fn labels(&self) -> &Indexed {
        &self.labels
    }

    /// Human-readable name of basis vector `i`, e.g. `x^2y` in `S^3 U`.
    pub fn describe(&self, i: usize) -> String {
        describe(&self.space, self.label(i))
    }
}

fn describe(space: &Space, label: &[usize]) -> String {
    match space {
        Space::U => ["x", "y"][label[0]].to_string(),
        Space::Sym(a, v) if **v == Space::U => {
            let j = label.iter().filter(|&&i| i == 1).count();
            monomial(*a - j, j)
        }
        Space::Sym(_, v) | Space::Wedge(_, v) => {
            let inner = v.basis();
            let sep = if matches!(space, Space::Sym(..)) { "." } else { "^" };
            let parts: Vec<String> = label.iter().map(|&i| inner.describe(i)).collect();
            format!("[{}]", parts.join(sep))
        }
        Space::Tensor(l, r) => format!(
            "{}(x){}",
            describe(l, l.basis().label(label[0])),
            describe(r, r.basis().label(label[1]))
        ),
    }
}

fn monomial(xe: usize, ye: usize) -> String {
    let pow = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = format!("{}{}", pow("x", xe), pow("y", ye));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}
