//! Koszul modules `W_q(V, A)` for a subspace `A` of `L^2 V`, the randomized
//! search for decomposable annihilators, and the dimension count that
//! finishes the odd genus case.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, Indexed};
use crate::elim::{kernel_basis, rank};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::sparse::{SparseMatrix, SparseVec};

use super::co_wahl;

/// `L^2 V -> V (x) V`, `v_a ^ v_b -> v_a (x) v_b - v_b (x) v_a`.
pub fn antisymmetrize<F: Field>(field: &F, n: usize) -> SparseMatrix<F> {
    let pairs = Indexed::subsets(n, 2);
    let t = pairs.items().iter().enumerate().flat_map(|(c, ab)| {
        let (a, b) = (ab[0], ab[1]);
        [(a * n + b, c, field.one()), (b * n + a, c, field.from_i64(-1))]
    });
    SparseMatrix::from_triplets(field, n * n, pairs.len(), t)
}

fn insert_sorted(m: &[usize], x: usize) -> Vec<usize> {
    let mut out = m.to_vec();
    out.insert(out.partition_point(|&y| y <= x), x);
    out
}

/// `L^2 V (x) S^q V -> V (x) S^(q+1) V`, `(v ^ w) (x) f -> v (x) wf - w (x) vf`.
pub fn koszul_map<F: Field>(field: &F, n: usize, q: usize) -> SparseMatrix<F> {
    let pairs = Indexed::subsets(n, 2);
    let src = Indexed::multisets(n, q);
    let dst = Indexed::multisets(n, q + 1);
    let mut t = Vec::new();
    for (pi, ab) in pairs.items().iter().enumerate() {
        let (a, b) = (ab[0], ab[1]);
        for (fi, f) in src.items().iter().enumerate() {
            let col = pi * src.len() + fi;
            let bf = dst.position(&insert_sorted(f, b)).expect("monomial");
            let af = dst.position(&insert_sorted(f, a)).expect("monomial");
            t.push((a * dst.len() + bf, col, field.one()));
            t.push((b * dst.len() + af, col, field.from_i64(-1)));
        }
    }
    SparseMatrix::from_triplets(field, n * dst.len(), pairs.len() * src.len(), t)
}

/// `V (x) S^q V -> S^(q+1) V`.
pub fn multiplication<F: Field>(field: &F, n: usize, q: usize) -> SparseMatrix<F> {
    let src = Indexed::multisets(n, q);
    let dst = Indexed::multisets(n, q + 1);
    let t = (0..n).flat_map(|v| {
        let (src, dst) = (&src, &dst);
        src.items().iter().enumerate().map(move |(fi, f)| {
            (dst.position(&insert_sorted(f, v)).expect("monomial"), v * src.len() + fi, field.one())
        })
    });
    SparseMatrix::from_triplets(field, dst.len(), n * src.len(), t)
}

/// A vector space `V = k^n` with a subspace `A` of `L^2 V`, given by
/// spanning 2-forms in the basis `v_a ^ v_b` (`a < b`, lexicographic).
#[derive(Debug, Clone)]
pub struct KoszulModuleInstance<F: Field> {
    pub field: F,
    pub n: usize,
    pub forms: Vec<SparseVec<F::Elem>>,
}

#[derive(Debug, Deserialize, Serialize)]
struct InstanceFile {
    dim: usize,
    /// Each form is a list of `[a, b, coefficient]` for `coefficient v_a ^ v_b`.
    forms: Vec<Vec<(usize, usize, String)>>,
    #[serde(default)]
    qmax: Option<usize>,
}

impl<F: Field> KoszulModuleInstance<F> {
    /// Checks that the forms are independent 2-forms on an `n`-space, `n >= 2`.
    pub fn new(field: &F, n: usize, forms: Vec<SparseVec<F::Elem>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("V must have dimension at least 2, got {n}")));
        }
        let dim = binomial(n as u64, 2) as usize;
        if forms.iter().flatten().any(|(i, _)| *i >= dim) {
            return Err(Error::Malformed(format!("2-form index out of range for dim V = {n}")));
        }
        let m = SparseMatrix::from_columns(field, dim, &forms);
        if rank(&m).rank != forms.len() {
            return Err(Error::Precondition("the 2-forms spanning A are not independent".into()));
        }
        Ok(Self {
            field: field.clone(),
            n,
            forms,
        })
    }

    /// `A = L^2 V`.
    pub fn full(field: &F, n: usize) -> Result<Self> {
        let dim = binomial(n as u64, 2) as usize;
        Self::new(field, n, (0..dim).map(|i| vec![(i, field.one())]).collect())
    }

    /// `A = S^(2i) U` inside `L^2 S^(i+1) U` via the co-Wahl map.
    pub fn co_wahl_image(field: &F, i: usize) -> Result<Self> {
        let (cw, _) = co_wahl(field, i)?;
        Self::new(field, i + 2, cw.matrix.columns())
    }

    /// Reads `{"dim": n, "forms": [[[a, b, "c"], ...], ...], "qmax": q}`;
    /// returns the instance and the optional `qmax`.
    pub fn from_json(field: &F, text: &str) -> Result<(Self, Option<usize>)> {
        let file: InstanceFile = serde_json::from_str(text)?;
        let pairs = Indexed::subsets(file.dim, 2);
        let mut forms = Vec::new();
        for form in &file.forms {
            let mut v: std::collections::BTreeMap<usize, F::Elem> = Default::default();
            for (a, b, c) in form {
                let (lo, hi, sign) = match a.cmp(b) {
                    std::cmp::Ordering::Less => (*a, *b, 1),
                    std::cmp::Ordering::Greater => (*b, *a, -1),
                    std::cmp::Ordering::Equal => continue,
                };
                let idx = pairs
                    .position(&[lo, hi])
                    .ok_or_else(|| Error::Malformed(format!("index ({a}, {b}) out of range")))?;
                let x = field.mul(&field.parse(c)?, &field.from_i64(sign));
                let e = v.entry(idx).or_insert_with(|| field.zero());
                *e = field.add(e, &x);
            }
            forms.push(v.into_iter().filter(|(_, x)| !field.is_zero(x)).collect());
        }
        Ok((Self::new(field, file.dim, forms)?, file.qmax))
    }

    pub fn load(field: &F, path: &Path) -> Result<(Self, Option<usize>)> {
        Self::from_json(field, &std::fs::read_to_string(path)?)
    }

    pub fn dim_a(&self) -> usize {
        self.forms.len()
    }

    fn inclusion(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns(&self.field, binomial(self.n as u64, 2) as usize, &self.forms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulModuleReport {
    pub n: usize,
    pub dim_a: usize,
    pub q: usize,
    /// `dim W_q(V, A)`.
    pub dim: usize,
    pub rank_left: usize,
    pub kernel_right: usize,
    /// `V (x) S^(q+1) V -> S^(q+2) V` is onto.
    pub right_surjective: bool,
}

/// `dim W_q(V, A) = dim ker(V (x) S^(q+1) V -> S^(q+2) V) - rank(A (x) S^q V -> V (x) S^(q+1) V)`.
pub fn koszul_module_dim<F: Field>(inst: &KoszulModuleInstance<F>, q: usize) -> Result<KoszulModuleReport> {
    let f = &inst.field;
    let n = inst.n;
    let sq = binomial((n + q - 1) as u64, q as u64) as usize;
    let left = koszul_map(f, n, q).compose(&inst.inclusion().kron(&SparseMatrix::identity(f, sq))?)?;
    let right = multiplication(f, n, q + 1);
    let rr = rank(&right);
    let rank_left = rank(&left).rank;
    Ok(KoszulModuleReport {
        n,
        dim_a: inst.dim_a(),
        q,
        dim: rr.nullity - rank_left,
        rank_left,
        kernel_right: rr.nullity,
        right_surjective: rr.rank == right.rows(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    /// Trials run before a hit (all of them if none was found).
    pub trials_run: usize,
    /// `(alpha, beta)` with `alpha ^ beta` a nonzero form vanishing on `A`.
    pub witness: Option<(Vec<u64>, Vec<u64>)>,
}

impl ProbeReport {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn summary(&self) -> String {
        match &self.witness {
            Some((a, b)) => format!("decomposable annihilator alpha ^ beta with alpha = {a:?}, beta = {b:?}"),
            None => format!("no counterexample found in {} trials", self.trials),
        }
    }
}

/// `eta(A) = 0` for `eta = alpha ^ beta`, where
/// `eta(v_a ^ v_b) = alpha_a beta_b - alpha_b beta_a`.
fn annihilates(f: &PrimeField, inst: &KoszulModuleInstance<PrimeField>, alpha: &[u64], beta: &[u64]) -> bool {
    let pairs = Indexed::subsets(inst.n, 2);
    inst.forms.iter().all(|form| {
        let s = form.iter().fold(0u64, |acc, (idx, c)| {
            let ab = pairs.get(*idx);
            let (a, b) = (ab[0], ab[1]);
            let minor = f.sub(&f.mul(&alpha[a], &beta[b]), &f.mul(&alpha[b], &beta[a]));
            f.add(&acc, &f.mul(c, &minor))
        });
        s == 0
    })
}

/// One-sided search for a decomposable 2-form `alpha ^ beta` on `V` that
/// vanishes on `A`. For each random `alpha` the conditions on `beta` are
/// linear; `beta = alpha` always solves them, so a solution space of
/// dimension at least 2 gives a nonzero decomposable annihilator.
pub fn decomposable_probe(inst: &KoszulModuleInstance<PrimeField>, trials: usize, seed: u64) -> ProbeReport {
    let f = &inst.field;
    let p = f.modulus();
    let n = inst.n;
    let pairs = Indexed::subsets(n, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let alpha: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        // row per form: sum_(a<b) c_ab (alpha_a beta_b - alpha_b beta_a)
        let t = inst.forms.iter().enumerate().flat_map(|(r, form)| {
            let pairs = &pairs;
            let alpha = &alpha;
            form.iter().flat_map(move |(idx, c)| {
                let ab = pairs.get(*idx);
                let (a, b) = (ab[0], ab[1]);
                [(r, b, f.mul(c, &alpha[a])), (r, a, f.neg(&f.mul(c, &alpha[b])))]
            })
        });
        let m = SparseMatrix::from_triplets(f, inst.forms.len(), n, t);
        let kernel = kernel_basis(&m);
        if kernel.len() < 2 || alpha.iter().all(|&x| x == 0) {
            continue;
        }
        // a kernel vector not proportional to alpha
        for k in &kernel {
            let mut beta = vec![0u64; n];
            for (i, x) in k {
                beta[*i] = *x;
            }
            let independent = (0..n).any(|a| (a + 1..n).any(|b| f.sub(&f.mul(&alpha[a], &beta[b]), &f.mul(&alpha[b], &beta[a])) != 0));
            if independent && annihilates(f, inst, &alpha, &beta) {
                return ProbeReport {
                    prime: p,
                    seed,
                    trials,
                    trials_run: trial + 1,
                    witness: Some((alpha, beta)),
                };
            }
        }
    }
    ProbeReport {
        prime: p,
        seed,
        trials,
        trials_run: trials,
        witness: None,
    }
}

/// `(2n-3) C(2n-4, n-3) - n C(2n-3, n-2) + C(2n-2, n-1)`.
pub fn euler_identity(n: usize) -> i128 {
    assert!(n >= 3, "n must be at least 3");
    let c = |a: usize, b: usize| binomial(a as u64, b as u64) as i128;
    (2 * n as i128 - 3) * c(2 * n - 4, n - 3) - n as i128 * c(2 * n - 3, n - 2) + c(2 * n - 2, n - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub genus: usize,
    pub n: usize,
    pub i: usize,
    pub q: usize,
    /// `dim S^(2i) U (x) S^q V`, `dim V (x) S^(q+1) V`, `dim S^(q+2) V`.
    pub dims: [u128; 3],
    pub identity_value: i128,
    /// `dim W_q(V, co-Wahl image)`.
    pub koszul_module_dim: usize,
    pub right_surjective: bool,
    /// `dim K_(n-2,1)` read off the four-term exact sequence, when it is exact.
    pub conclusion: Option<i128>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.identity_value == 0 && self.conclusion == Some(0)
    }
}

/// For odd `g = 2n - 3`: checks the vanishing of `W_(n-3)(V, S^(2n-4) U)` and
/// the surjectivity on the right, then reads `dim K_(n-2,1)` of the tangent
/// developable off `0 -> K -> A (x) S^q V -> V (x) S^(q+1) V -> S^(q+2) V -> 0`.
pub fn euler_finisher<F: Field>(field: &F, g: usize) -> Result<EulerReport> {
    if g < 5 || g.is_multiple_of(2) {
        return Err(Error::Precondition(format!("the finisher needs odd g >= 5, got {g}")));
    }
    let n = (g + 3) / 2;
    let (i, q) = (n - 2, n - 3);
    let c = |a: usize, b: usize| binomial(a as u64, b as u64);
    let dims = [
        (2 * i as u128 + 1) * c(n + q - 1, q),
        n as u128 * c(n + q, q + 1),
        c(n + q + 1, q + 2),
    ];
    let identity_value = euler_identity(n);
    let inst = KoszulModuleInstance::co_wahl_image(field, i)?;
    let w = koszul_module_dim(&inst, q)?;
    let exact = w.dim == 0 && w.right_surjective;
    Ok(EulerReport {
        genus: g,
        n,
        i,
        q,
        dims,
        identity_value,
        koszul_module_dim: w.dim,
        right_surjective: w.right_surjective,
        conclusion: exact.then(|| dims[0] as i128 - dims[1] as i128 + dims[2] as i128),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn koszul_complex_composes_to_zero() {
        let f = Rationals;
        for n in 2..=4 {
            for q in 0..=2 {
                let c = multiplication(&f, n, q + 1).compose(&koszul_map(&f, n, q)).unwrap();
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn two_dimensional_antisymmetrization() {
        // v ^ w -> v (x) w - w (x) v: a 4 x 1 matrix of rank 1
        let m = koszul_map(&Rationals, 2, 0);
        assert_eq!(m.shape(), (4, 1));
        assert_eq!(kernel_basis(&m).len(), 0);
        assert_eq!(m, antisymmetrize(&Rationals, 2));
    }

    #[test]
    fn full_exterior_square_is_exact() {
        let f = Rationals;
        for n in 2..=5 {
            let inst = KoszulModuleInstance::full(&f, n).unwrap();
            for q in 0..=2 {
                let r = koszul_module_dim(&inst, q).unwrap();
                assert_eq!(r.dim, 0, "n={n} q={q}");
                assert!(r.right_surjective);
            }
        }
    }

    #[test]
    fn single_decomposable_form() {
        let f = Rationals;
        let inst = KoszulModuleInstance::new(&f, 4, vec![vec![(0, f.one())]]).unwrap();
        assert!(koszul_module_dim(&inst, 0).unwrap().dim > 0);
        assert!(koszul_module_dim(&inst, 1).unwrap().dim > 0);
    }

    #[test]
    fn co_wahl_image_vanishing() {
        let f = PrimeField::new(1_000_003).unwrap();
        for i in 1..=4 {
            let inst = KoszulModuleInstance::co_wahl_image(&f, i).unwrap();
            let n = i + 2;
            for q in n.saturating_sub(3)..=n.saturating_sub(3) + 1 {
                let r = koszul_module_dim(&inst, q).unwrap();
                assert_eq!(r.dim, 0, "i={i} q={q}");
            }
        }
    }

    #[test]
    fn probe_finds_obvious_annihilator() {
        let f = PrimeField::new(1_000_003).unwrap();
        let inst = KoszulModuleInstance::new(&f, 4, vec![vec![(0, 1)]]).unwrap();
        let r = decomposable_probe(&inst, 10, 1);
        assert!(r.found());
        let (a, b) = r.witness.unwrap();
        assert!(annihilates(&f, &inst, &a, &b));
        let full = KoszulModuleInstance::full(&f, 4).unwrap();
        assert!(!decomposable_probe(&full, 50, 1).found());
        let cw = KoszulModuleInstance::co_wahl_image(&f, 3).unwrap();
        assert!(!decomposable_probe(&cw, 200, 1).found());
    }

    #[test]
    fn instance_file() {
        let f = Rationals;
        let text = r#"{"dim": 4, "forms": [[[0, 1, "1"], [3, 2, "1/2"]]], "qmax": 2}"#;
        let (inst, qmax) = KoszulModuleInstance::from_json(&f, text).unwrap();
        assert_eq!(qmax, Some(2));
        // (2, 3) is the last pair; the swap flips the sign
        assert_eq!(inst.forms[0], vec![(0, f.one()), (5, f.parse("-1/2").unwrap())]);
        assert!(KoszulModuleInstance::from_json(&f, r#"{"dim": 3, "forms": [[[0, 5, "1"]]]}"#).is_err());
    }

    #[test]
    fn euler_small_cases() {
        assert_eq!(euler_identity(4), 0);
        assert_eq!(5 * 4 - 4 * 10 + 20, 0);
        assert_eq!(7 * 15 - 5 * 35 + 70, 0);
        for n in 3..=12 {
            assert_eq!(euler_identity(n), 0, "n={n}");
        }
        let r = euler_finisher(&Rationals, 5).unwrap();
        assert_eq!(r.dims, [20, 40, 20]);
        assert!(r.passed());
        assert!(euler_finisher(&Rationals, 6).is_err());
    }
}
