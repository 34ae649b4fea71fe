//! Koszul cohomology of truncated graded modules and the Betti tables built
//! from it.
//!
//! For a module `M` over `Sym(W)` the group `K_(p,q)(M)` is the middle
//! homology of
//!
//! ```text
//! L^(p+1) W (x) M_(q-1)  --d1-->  L^p W (x) M_q  --d2-->  L^(p-1) W (x) M_(q+1)
//! ```
//!
//! with `d(w_J (x) m) = sum_pos (-1)^pos w_(J - j_pos) (x) Z_(j_pos) m`. Basis
//! vectors of `L^p W (x) M_q` are indexed by `subset * dim M_q + m`, subsets in
//! lexicographic order.

use std::fmt::{self, Write as _};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, Indexed};
use crate::elim::rank;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::graded::{delta_matrix, omega_module, pushforward_module, GradedModule};
use crate::sparse::{SparseMatrix, SparseVec};

/// The differential `L^p W (x) M_q -> L^(p-1) W (x) M_(q+1)`.
///
/// Degrees outside the stored range are treated as zero spaces on the source
/// side only; the target piece must exist.
pub fn koszul_differential<F: Field>(m: &GradedModule<F>, p: usize, q: isize) -> Result<SparseMatrix<F>> {
    let field = m.field();
    let n = m.num_forms();
    let target_q = q + 1;
    if target_q as usize > m.qmax() {
        return Err(Error::ExtendModule {
            needed: target_q as usize,
            available: m.qmax(),
        });
    }
    let target_dim = m.dim(target_q as usize);
    if q < 0 || p > n {
        // zero source space
        let rows = if p == 0 { 0 } else { binomial(n as u64, (p - 1) as u64) as usize * target_dim };
        return Ok(SparseMatrix::zeros(field, rows, 0));
    }
    let (q, src_dim) = (q as usize, m.dim(q as usize));
    let src = Indexed::subsets(n, p);
    if p == 0 {
        return Ok(SparseMatrix::zeros(field, 0, src.len() * src_dim));
    }
    let dst = Indexed::subsets(n, p - 1);
    let action_cols: Vec<Vec<SparseVec<F::Elem>>> =
        (0..n).map(|k| m.action(k, q).columns()).collect();
    let mut triplets = Vec::new();
    let mut face = Vec::with_capacity(p);
    for (si, subset) in src.items().iter().enumerate() {
        for (pos, &j) in subset.iter().enumerate() {
            face.clear();
            face.extend(subset.iter().enumerate().filter(|&(x, _)| x != pos).map(|(_, &v)| v));
            let di = dst.position(&face).expect("face of a subset");
            let negate = pos % 2 == 1;
            for (c, col) in action_cols[j].iter().enumerate() {
                for (r, x) in col {
                    let v = if negate { field.neg(x) } else { x.clone() };
                    triplets.push((di * target_dim + r, si * src_dim + c, v));
                }
            }
        }
    }
    Ok(SparseMatrix::from_triplets(field, dst.len() * target_dim, src.len() * src_dim, triplets))
}

/// The two differentials around `L^p W (x) M_q`.
pub struct KoszulSlice<F: Field> {
    pub p: usize,
    pub q: usize,
    pub d1: SparseMatrix<F>,
    pub d2: SparseMatrix<F>,
}

impl<F: Field> KoszulSlice<F> {
    pub fn new(m: &GradedModule<F>, p: usize, q: usize) -> Result<Self> {
        let d2 = koszul_differential(m, p, q as isize)?;
        let d1 = koszul_differential(m, p + 1, q as isize - 1)?;
        Ok(Self { p, q, d1, d2 })
    }

    /// `d2 . d1 = 0`.
    pub fn is_complex(&self) -> bool {
        self.d2.compose(&self.d1).map(|c| c.is_zero()).unwrap_or(false)
    }

    pub fn homology_dim(&self) -> usize {
        let r2 = rank(&self.d2).rank;
        let r1 = rank(&self.d1).rank;
        self.d2.cols() - r2 - r1
    }
}

/// `dim K_(p,q)(M)`. Needs the module up to degree `q + 1`.
pub fn koszul_group<F: Field>(m: &GradedModule<F>, p: usize, q: usize) -> Result<usize> {
    Ok(KoszulSlice::new(m, p, q)?.homology_dim())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellTiming {
    pub p: usize,
    pub q: usize,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub object: String,
    pub genus: usize,
    pub field: FieldSpec,
    pub method: String,
    /// `grid[p][q] = dim K_(p,q)`.
    pub grid: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<CellTiming>>,
}

/// All `K_(p,q)` for `p <= pmax`, `q <= qmax`, cells computed in parallel.
pub fn betti_table<F: Field>(m: &GradedModule<F>, pmax: usize, qmax: usize) -> Result<BettiTable> {
    if qmax + 1 > m.qmax() {
        return Err(Error::ExtendModule {
            needed: qmax + 1,
            available: m.qmax(),
        });
    }
    let cells: Vec<(usize, usize)> = (0..=pmax).flat_map(|p| (0..=qmax).map(move |q| (p, q))).collect();
    let results: Vec<Result<(usize, u128)>> = cells
        .par_iter()
        .map(|&(p, q)| {
            let start = Instant::now();
            let d = koszul_group(m, p, q)?;
            Ok((d, start.elapsed().as_millis()))
        })
        .collect();
    let mut grid = vec![vec![0; qmax + 1]; pmax + 1];
    let mut timings = Vec::new();
    for (&(p, q), r) in cells.iter().zip(results) {
        let (d, ms) = r?;
        grid[p][q] = d;
        timings.push(CellTiming { p, q, millis: ms });
    }
    Ok(BettiTable {
        object: m.kind().name().to_string(),
        genus: m.genus(),
        field: m.field().spec(),
        method: "koszul".into(),
        grid,
        timings: Some(timings),
    })
}

impl BettiTable {
    pub fn pmax(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn qmax(&self) -> usize {
        self.grid[0].len() - 1
    }

    pub fn get(&self, p: usize, q: usize) -> usize {
        self.grid[p][q]
    }

    /// Drops timing data so that serialized output is reproducible.
    pub fn without_timings(mut self) -> Self {
        self.timings = None;
        self
    }

    /// Same numbers, regardless of field, method or timing metadata.
    pub fn same_grid(&self, other: &BettiTable) -> bool {
        self.grid == other.grid
    }

    /// Staircase layout: one column per `p`, one row per `q`, `.` for zero.
    pub fn to_text(&self) -> String {
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let totals: Vec<usize> = self.grid.iter().map(|col| col.iter().sum()).collect();
        let width = self
            .grid
            .iter()
            .flatten()
            .chain(&totals)
            .map(|&v| cell(v).len())
            .max()
            .unwrap_or(1)
            .max(self.pmax().to_string().len());
        let label_w = "total:".len().max(self.qmax().to_string().len() + 1);
        let mut out = String::new();
        write!(out, "{:>label_w$}", "").ok();
        for p in 0..=self.pmax() {
            write!(out, " {p:>width$}").ok();
        }
        out.push('\n');
        write!(out, "{:>label_w$}", "total:").ok();
        for t in &totals {
            write!(out, " {:>width$}", cell(*t)).ok();
        }
        out.push('\n');
        for q in 0..=self.qmax() {
            write!(out, "{:>label_w$}", format!("{q}:")).ok();
            for p in 0..=self.pmax() {
                write!(out, " {:>width$}", cell(self.grid[p][q])).ok();
            }
            out.push('\n');
        }
        out
    }

    /// One line per cell: `p,q,dim`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,dim\n");
        for (p, col) in self.grid.iter().enumerate() {
            for (q, v) in col.iter().enumerate() {
                writeln!(out, "{p},{q},{v}").ok();
            }
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpReport {
    pub p: usize,
    pub holds: bool,
    /// Largest `p' <= pmax` for which the property holds on this table.
    pub largest: usize,
    /// First nonzero `(i, q, b[i][q])` with `1 <= i` and `q != 1`.
    pub first_failure: Option<(usize, usize, usize)>,
}

/// Property `(N_p)`: `b[i][q] = 0` for `1 <= i <= p` and every computed
/// `q != 1`. Needs the table to reach column `p` and row 2.
pub fn check_np(table: &BettiTable, p: usize) -> Result<NpReport> {
    if table.pmax() < p || table.qmax() < 2 {
        return Err(Error::TableRange {
            pmax: table.pmax(),
            qmax: table.qmax(),
            what: format!("property N_{p} needs columns up to {p} and rows up to 2"),
        });
    }
    let failure_in = |i: usize| {
        (0..=table.qmax())
            .filter(|&q| q != 1)
            .find(|&q| table.grid[i][q] != 0)
            .map(|q| (i, q, table.grid[i][q]))
    };
    let first_bad = (1..=table.pmax()).find_map(failure_in);
    let largest = first_bad.map_or(table.pmax(), |(i, _, _)| i - 1);
    let first_failure = first_bad.filter(|&(i, _, _)| i <= p);
    Ok(NpReport {
        p,
        holds: first_failure.is_none(),
        largest,
        first_failure,
    })
}

/// `dim ker(K_(i,1)(pushforward) -> K_(i,1)(omega))`, the map being induced by
/// `delta_1`. Since `omega` vanishes in degree 0 this is the nullity of `d2`
/// stacked over `1 (x) delta_1`, less the rank of `d1`.
pub fn connecting_kernel_dim<F: Field>(field: &F, g: usize, i: usize) -> Result<usize> {
    let p = pushforward_module(field, g, 2);
    let slice = KoszulSlice::new(&p, i, 1)?;
    let wedge = binomial(g as u64 + 1, i as u64) as usize;
    let lifted = SparseMatrix::identity(field, wedge).kron(&delta_matrix(field, g, 1))?;
    let stacked = slice.d2.vstack(&lifted)?;
    Ok(stacked.cols() - rank(&stacked).rank - rank(&slice.d1).rank)
}

/// `dim K_(i,1)` of the pushforward, predicted as `C(g-1, i+1) (2i+1)`.
pub fn pushforward_k1_formula(g: usize, i: usize) -> u128 {
    binomial(g as u64 - 1, i as u64 + 1) * (2 * i as u128 + 1)
}

/// Upper bound `C(g, i+1) (i+2)` on `dim K_(i,1)` of `omega`.
pub fn omega_k1_bound(g: usize, i: usize) -> u128 {
    binomial(g as u64, i as u64 + 1) * (i as u128 + 2)
}

/// `dim K_(i,1)(omega)` computed directly.
pub fn omega_k1<F: Field>(field: &F, g: usize, i: usize) -> Result<usize> {
    koszul_group(&omega_module(field, g, 2), i, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::graded::{ci_module, default_ci_quadrics, polynomial_ring_module, rnc_module, tangent_module, TangentMethod};

    #[test]
    fn differentials_compose_to_zero() {
        let f = Rationals;
        let m = tangent_module(&f, 4, 3, TangentMethod::Image).unwrap();
        for p in 0..=5 {
            for q in 0..=2 {
                assert!(KoszulSlice::new(&m, p, q).unwrap().is_complex(), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn polynomial_ring_has_no_syzygies() {
        let m = polynomial_ring_module(&Rationals, 4, 3);
        let t = betti_table(&m, 4, 2).unwrap();
        for p in 0..=4 {
            for q in 0..=2 {
                let expect = usize::from(p == 0 && q == 0);
                assert_eq!(t.get(p, q), expect, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn twisted_cubic() {
        let m = rnc_module(&Rationals, 3, 3);
        let t = betti_table(&m, 3, 2).unwrap();
        assert_eq!(t.grid, vec![vec![1, 0, 0], vec![0, 3, 0], vec![0, 2, 0], vec![0, 0, 0]]);
        assert!(check_np(&t, 2).unwrap().holds);
        assert_eq!(
            t.to_text(),
            "       0 1 2 3\ntotal: 1 3 2 .\n    0: 1 . . .\n    1: . 3 2 .\n    2: . . . .\n"
        );
    }

    #[test]
    fn elliptic_quartic() {
        let m = ci_module(&Rationals, &default_ci_quadrics(), 4).unwrap();
        let t = betti_table(&m, 3, 3).unwrap();
        assert_eq!(t.get(1, 1), 2);
        assert_eq!(t.get(2, 1), 0);
        assert_eq!(t.get(2, 2), 1);
        assert!(check_np(&t, 1).unwrap().holds);
        let r = check_np(&t, 2).unwrap();
        assert!(!r.holds);
        assert_eq!(r.first_failure, Some((2, 2, 1)));
        assert_eq!(r.largest, 1);
    }

    #[test]
    fn missing_degrees_are_reported() {
        let m = rnc_module(&Rationals, 3, 2);
        assert!(matches!(
            koszul_group(&m, 1, 2),
            Err(Error::ExtendModule { needed: 3, available: 2 })
        ));
        let t = betti_table(&m, 2, 1).unwrap();
        assert!(matches!(check_np(&t, 1), Err(Error::TableRange { .. })));
    }

    #[test]
    fn tangent_genus_three_has_no_quadrics() {
        let m = tangent_module(&Rationals, 3, 2, TangentMethod::Image).unwrap();
        assert_eq!(koszul_group(&m, 1, 1).unwrap(), 0);
    }

    #[test]
    fn pushforward_closed_form() {
        let f = PrimeField::new(1_000_003).unwrap();
        for g in 4..=5 {
            let m = pushforward_module(&f, g, 2);
            for i in 1..=g - 2 {
                let d = koszul_group(&m, i, 1).unwrap() as u128;
                assert_eq!(d, pushforward_k1_formula(g, i), "g={g} i={i}");
            }
        }
    }

    #[test]
    fn omega_bound() {
        let f = PrimeField::new(1_000_003).unwrap();
        for i in 1..=3 {
            assert!(omega_k1(&f, 5, i).unwrap() as u128 <= omega_k1_bound(5, i));
        }
    }

    #[test]
    fn connecting_map_kernel_matches_tangent() {
        let f = PrimeField::new(1_000_003).unwrap();
        for g in 3..=5 {
            let t = tangent_module(&f, g, 2, TangentMethod::Image).unwrap();
            for i in 1..=g / 2 {
                assert_eq!(connecting_kernel_dim(&f, g, i).unwrap(), koszul_group(&t, i, 1).unwrap());
            }
        }
    }

    #[test]
    fn csv_layout() {
        let m = rnc_module(&Rationals, 3, 2);
        let t = betti_table(&m, 1, 1).unwrap();
        assert_eq!(t.to_csv(), "p,q,dim\n0,0,1\n0,1,0\n1,0,0\n1,1,3\n");
    }
}
