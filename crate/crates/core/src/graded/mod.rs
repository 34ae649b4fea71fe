//! Finitely generated graded modules over a polynomial ring, truncated to
//! finitely many degrees.
//!
//! A module is stored as its graded pieces `M_0..=M_qmax` (each a vector
//! space with a fixed basis) together with the action of each linear form
//! `Z_k` as a matrix `M_q -> M_(q+1)`. This is all the Koszul complex needs.

mod forms;
mod io;
mod poly;
mod rings;
mod tangent;

pub use forms::{bigraded_dim, binary_monomial_product, mult_by_nu, ParamForms};
pub use io::{load_module, save_module, ModuleManifest};
pub use poly::Poly;
pub use rings::{
    catalecticant_minors, ci_module, default_ci_quadrics, polynomial_ring_module, rnc_module,
};
pub use tangent::{
    delta_matrix, omega_module, pushforward_module, tangent_degree, tangent_module, DegreeReport,
    TangentMethod,
};

use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::sparse::SparseMatrix;

/// The objects the engine knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectKind {
    /// Coordinate ring of the rational normal curve of degree `g`.
    Rnc,
    /// Coordinate ring of its tangent developable surface.
    Tangent,
    /// Sections of `O(q(g-1), q)` on `P1 x P1`, a module via the forms `nu_k`.
    Pushforward,
    /// Canonical sheaf of the curve, pushed forward to `P^g`.
    Omega,
    /// Complete intersection of quadrics.
    Ci,
    /// The polynomial ring itself.
    PolynomialRing,
}

impl ObjectKind {
    pub fn name(&self) -> &'static str {
        match self {
            ObjectKind::Rnc => "rnc",
            ObjectKind::Tangent => "tangent",
            ObjectKind::Pushforward => "pushforward",
            ObjectKind::Omega => "omega",
            ObjectKind::Ci => "ci",
            ObjectKind::PolynomialRing => "polynomial-ring",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GradedModule<F: Field> {
    field: F,
    kind: ObjectKind,
    /// Genus `g` for the curve-derived objects; number of variables minus
    /// one otherwise.
    genus: usize,
    num_forms: usize,
    dims: Vec<usize>,
    /// `actions[q][k]` is multiplication by `Z_k` from `M_q` to `M_(q+1)`.
    actions: Vec<Vec<SparseMatrix<F>>>,
}

impl<F: Field> GradedModule<F> {
    /// Assembles a module, checking every action matrix shape.
    pub fn new(
        field: &F,
        kind: ObjectKind,
        genus: usize,
        num_forms: usize,
        dims: Vec<usize>,
        actions: Vec<Vec<SparseMatrix<F>>>,
    ) -> Self {
        assert_eq!(actions.len() + 1, dims.len(), "one action layer per degree step");
        for (q, layer) in actions.iter().enumerate() {
            assert_eq!(layer.len(), num_forms);
            for a in layer {
                assert_eq!(a.shape(), (dims[q + 1], dims[q]), "action shape in degree {q}");
            }
        }
        Self {
            field: field.clone(),
            kind,
            genus,
            num_forms,
            dims,
            actions,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn kind(&self) -> ObjectKind {
        self.kind
    }
    pub fn genus(&self) -> usize {
        self.genus
    }
    /// Number of linear forms acting (the dimension of `W`).
    pub fn num_forms(&self) -> usize {
        self.num_forms
    }
    pub fn qmax(&self) -> usize {
        self.dims.len() - 1
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of `M_q`; zero beyond the stored range is *not* implied, so
    /// this panics there.
    pub fn dim(&self, q: usize) -> usize {
        self.dims[q]
    }

    pub fn action(&self, k: usize, q: usize) -> &SparseMatrix<F> {
        &self.actions[q][k]
    }

    /// `Z_k Z_l = Z_l Z_k` on every piece where both sides are defined.
    pub fn actions_commute(&self) -> bool {
        (0..self.qmax().saturating_sub(1)).all(|q| {
            (0..self.num_forms).all(|k| {
                (k + 1..self.num_forms).all(|l| {
                    let kl = self.actions[q + 1][k].compose(&self.actions[q][l]).expect("shape");
                    let lk = self.actions[q + 1][l].compose(&self.actions[q][k]).expect("shape");
                    kl == lk
                })
            })
        })
    }
}
