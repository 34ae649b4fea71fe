//! The explicit SL2-equivariant maps through which the linear syzygies of the
//! tangent developable can be computed without its Koszul complex.
//!
//! * `wahl(i)`: `L^2 S^(i+1) U -> S^(2i) U`, `f ^ g -> f_x g_y - f_y g_x`.
//! * `co_wahl(i)`: an equivariant section of it, `S^(2i) U -> L^2 S^(i+1) U`.
//! * `gamma(g, i)`: `L^(i+1) S^(g-2) U (x) S^(2i) U -> L^(i+1) S^(g-1) U (x) S^(i+1) U`.
//! * `gamma_prime(g, i)`: `S^(2i) U (x) S^q V -> V (x) S^(q+1) V` with
//!   `V = S^(i+1) U` and `q = g - i - 2`.
//!
//! Both `gamma` and `gamma_prime` have `K_(i,1)` of the tangent developable as
//! kernel (up to isomorphism).

mod folk;
mod weyman;

pub use folk::{folk_verify, FolkEntry, FolkOptions, FolkReport, REPORT_SCHEMA};
pub use weyman::{
    antisymmetrize, decomposable_probe, euler_finisher, euler_identity, koszul_map,
    koszul_module_dim, multiplication, EulerReport, KoszulModuleInstance, KoszulModuleReport,
    ProbeReport,
};

use crate::combinat::sort_with_sign;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::multilinear::{equivariance_defect, multiplication_map, wedge_power_map, Space};
use crate::sparse::SparseMatrix;

/// A matrix between two SL2 spaces, with its equivariance certificate: the
/// number of nonzero entries of `X M - M X` summed over `e, f, h`.
#[derive(Debug, Clone)]
pub struct EquivariantMap<F: Field> {
    pub name: String,
    pub domain: Space,
    pub codomain: Space,
    pub matrix: SparseMatrix<F>,
    pub defect: usize,
}

impl<F: Field> EquivariantMap<F> {
    /// Wraps `matrix`, computing its certificate. A nonzero defect is an error.
    pub fn certified(name: impl Into<String>, domain: Space, codomain: Space, matrix: SparseMatrix<F>) -> Result<Self> {
        let name = name.into();
        if matrix.shape() != (codomain.dim(), domain.dim()) {
            return Err(Error::Malformed(format!(
                "{name}: matrix shape {:?} does not match {domain} -> {codomain}",
                matrix.shape()
            )));
        }
        let defect = equivariance_defect(matrix.field(), &matrix, &domain, &codomain);
        if defect != 0 {
            return Err(Error::NotEquivariant { map: name, defect });
        }
        Ok(Self {
            name,
            domain,
            codomain,
            matrix,
            defect,
        })
    }

    /// Wraps `matrix` without computing the certificate (recorded as zero
    /// only after `certify`).
    fn uncertified(name: impl Into<String>, domain: Space, codomain: Space, matrix: SparseMatrix<F>) -> Self {
        Self {
            name: name.into(),
            domain,
            codomain,
            matrix,
            defect: usize::MAX,
        }
    }

    /// Computes the certificate, failing if it is nonzero.
    pub fn certify(mut self) -> Result<Self> {
        self.defect = equivariance_defect(self.matrix.field(), &self.matrix, &self.domain, &self.codomain);
        if self.defect != 0 {
            return Err(Error::NotEquivariant {
                map: self.name,
                defect: self.defect,
            });
        }
        Ok(self)
    }

    pub fn is_certified(&self) -> bool {
        self.defect == 0
    }

    pub fn kernel_dim(&self) -> usize {
        crate::elim::rank(&self.matrix).nullity
    }
}

/// The Wahl map on monomials: `x^(a-j) y^j ^ x^(a-k) y^k -> a (k - j) x^(2a-1-j-k) y^(j+k-1)`
/// with `a = i + 1`.
pub fn wahl<F: Field>(field: &F, i: usize) -> Result<EquivariantMap<F>> {
    if i == 0 {
        return Err(Error::Precondition("the Wahl map needs i >= 1".into()));
    }
    let a = i + 1;
    let domain = Space::wedge(2, Space::sym_u(a));
    let basis = domain.basis();
    let t = (0..basis.len()).map(|c| {
        let (j, k) = (basis.label(c)[0], basis.label(c)[1]);
        (j + k - 1, c, field.from_i64((a * (k - j)) as i64))
    });
    let m = SparseMatrix::from_triplets(field, 2 * i + 1, basis.len(), t);
    EquivariantMap::certified(format!("wahl({i})"), domain, Space::sym_u(2 * i), m)
}

/// An equivariant section of the Wahl map, together with the scalar `c`
/// such that `wahl(i) . co_wahl(i) = c Id`.
///
/// The weight-`2i` space of `L^2 S^(i+1) U` is spanned by the highest weight
/// vector `v0 = x^(i+1) ^ x^i y`, and `x^(2i-k) y^k` is sent to
/// `(2i-k)!/(2i)! f^k v0`, which commutes with `f` by construction.
pub fn co_wahl<F: Field>(field: &F, i: usize) -> Result<(EquivariantMap<F>, F::Elem)> {
    let w = wahl(field, i)?;
    let codomain = w.domain.clone();
    let f_op = crate::multilinear::sl2_action(field, &codomain, crate::multilinear::Generator::F);
    let v0_index = codomain.basis().position(&[0, 1]).expect("highest weight vector");
    let mut v = vec![(v0_index, field.one())];
    let mut columns = Vec::with_capacity(2 * i + 1);
    let mut scale = field.one();
    for k in 0..=2 * i {
        if k > 0 {
            v = f_op.apply(&v);
            // (2i-k)!/(2i)! = previous / (2i - k + 1)
            let d = field.from_i64((2 * i - k + 1) as i64);
            if field.is_zero(&d) {
                return Err(Error::Precondition(format!(
                    "co_wahl({i}) needs characteristic above {}",
                    2 * i
                )));
            }
            scale = field.div(&scale, &d);
        }
        columns.push(v.iter().map(|(r, x)| (*r, field.mul(x, &scale))).collect());
    }
    let m = SparseMatrix::from_columns(field, codomain.dim(), &columns);
    let map = EquivariantMap::certified(format!("co_wahl({i})"), Space::sym_u(2 * i), codomain, m)?;
    let product = w.matrix.compose(&map.matrix)?;
    let c = product.get(0, 0);
    let expected = SparseMatrix::scalar(field, 2 * i + 1, c.clone());
    if field.is_zero(&c) || product != expected {
        return Err(Error::Precondition(format!("co_wahl({i}) is not a section of the Wahl map")));
    }
    Ok((map, c))
}

/// `L^(m) A (x) S^m U -> L^m (A (x) U)`,
/// `a_1 ^ ... ^ a_m (x) u_1 ... u_m -> sum_sigma (a_1 (x) u_sigma(1)) ^ ... ^ (a_m (x) u_sigma(m))`.
///
/// The sum runs over all permutations; each distinct arrangement of the
/// multiset of `u`s appears `(m-j)! j!` times.
pub fn summand_embedding<F: Field>(field: &F, dim_a: usize, m: usize) -> SparseMatrix<F> {
    let wa = Space::wedge(m, Space::sym_u(dim_a - 1));
    let src_wedge = wa.basis();
    let target = Space::wedge(m, Space::tensor(Space::sym_u(dim_a - 1), Space::U)).basis();
    let fact = |n: usize| (1..=n).fold(field.one(), |acc, k| field.mul(&acc, &field.from_i64(k as i64)));
    let mut t = Vec::new();
    for c_wedge in 0..src_wedge.len() {
        let a = src_wedge.label(c_wedge);
        for j in 0..=m {
            let col = c_wedge * (m + 1) + j;
            let mult = field.mul(&fact(m - j), &fact(j));
            // choose which positions receive y
            for ys in crate::combinat::subsets(m, j) {
                let mut tuple: Vec<usize> = (0..m)
                    .map(|p| a[p] * 2 + usize::from(ys.binary_search(&p).is_ok()))
                    .collect();
                let sign = sort_with_sign(&mut tuple).expect("distinct factors");
                let row = target.position(&tuple).expect("label");
                t.push((row, col, field.mul(&mult, &field.from_i64(sign))));
            }
        }
    }
    SparseMatrix::from_triplets(field, target.len(), src_wedge.len() * (m + 1), t)
}

/// `gamma(g, i)` as the composition of its three stages, certified.
pub fn gamma<F: Field>(field: &F, g: usize, i: usize) -> Result<EquivariantMap<F>> {
    gamma_scaled(field, g, i, &field.one()).and_then(EquivariantMap::certify)
}

/// `gamma` with the co-Wahl map multiplied by `lambda`; uncertified.
pub fn gamma_scaled<F: Field>(field: &F, g: usize, i: usize, lambda: &F::Elem) -> Result<EquivariantMap<F>> {
    check_range(g, i)?;
    let m = i + 1;
    let a = Space::sym_u(g - 2);
    let wedge_a = Space::wedge(m, a.clone());
    let s = Space::sym_u(m);
    let (cw, _) = co_wahl(field, i)?;
    let cw = cw.matrix.scale(lambda);
    // stage 1: id (x) (antisymmetrize . co_wahl)
    let pair = antisymmetrize(field, m + 1).compose(&cw)?;
    let stage1 = SparseMatrix::identity(field, wedge_a.dim()).kron(&pair)?;
    // stage 2: summand embedding on the first S^(i+1) U factor
    let stage2 = summand_embedding(field, g - 1, m).kron(&SparseMatrix::identity(field, s.dim()))?;
    // stage 3: L^(i+1) of multiplication S^(g-2) U (x) U -> S^(g-1) U
    let mult = multiplication_map(field, g - 2, 1);
    let stage3 = wedge_power_map(field, &mult, m).kron(&SparseMatrix::identity(field, s.dim()))?;
    let matrix = stage3.compose(&stage2)?.compose(&stage1)?;
    Ok(EquivariantMap::uncertified(
        format!("gamma({g}, {i})"),
        Space::tensor(wedge_a, Space::sym_u(2 * i)),
        Space::tensor(Space::wedge(m, Space::sym_u(g - 1)), s),
        matrix,
    ))
}

/// `gamma_prime(g, i)`: the Koszul map on `V = S^(i+1) U` pulled back along
/// `co_wahl (x) id`, certified.
pub fn gamma_prime<F: Field>(field: &F, g: usize, i: usize) -> Result<EquivariantMap<F>> {
    gamma_prime_scaled(field, g, i, &field.one()).and_then(EquivariantMap::certify)
}

pub fn gamma_prime_scaled<F: Field>(field: &F, g: usize, i: usize, lambda: &F::Elem) -> Result<EquivariantMap<F>> {
    check_range(g, i)?;
    let v = Space::sym_u(i + 1);
    let n = i + 2;
    let q = g - i - 2;
    let (cw, _) = co_wahl(field, i)?;
    let cw = cw.matrix.scale(lambda);
    let sq = Space::sym(q, v.clone());
    let pulled = cw.kron(&SparseMatrix::identity(field, sq.dim()))?;
    let matrix = koszul_map(field, n, q).compose(&pulled)?;
    Ok(EquivariantMap::uncertified(
        format!("gamma_prime({g}, {i})"),
        Space::tensor(Space::sym_u(2 * i), sq),
        Space::tensor(v.clone(), Space::sym(q + 1, v)),
        matrix,
    ))
}

fn check_range(g: usize, i: usize) -> Result<()> {
    if g < 3 || i == 0 || i + 2 > g {
        return Err(Error::Precondition(format!("need 1 <= i <= g - 2, got g = {g}, i = {i}")));
    }
    Ok(())
}
