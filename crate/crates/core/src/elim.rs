//! Sparse Gaussian elimination: rank, reduced row echelon form and kernels.
//!
//! Rank computations first split the matrix into the connected components of
//! its row/column incidence graph. The differentials built in this crate are
//! homogeneous for the torus weight, so components are small and independent;
//! they are eliminated in parallel. Inside a component columns are ordered by
//! ascending count and rows by ascending length (a static Markowitz ordering),
//! which keeps fill-in low on the banded Koszul matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::{Field, FieldSpec};
use crate::sparse::{SparseMatrix, SparseVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    pub nullity: usize,
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A diagonal block: rows with columns relabelled `0..ncols`.
struct Block<E> {
    rows: Vec<SparseVec<E>>,
    ncols: usize,
}

fn split_blocks<F: Field>(m: &SparseMatrix<F>) -> Vec<Block<F::Elem>> {
    let rows = m.row_lists();
    let mut uf = UnionFind::new(m.cols());
    for row in &rows {
        for w in row.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut col_count = vec![0usize; m.cols()];
    for (_, c, _) in m.entries() {
        col_count[*c] += 1;
    }
    // group columns by component root, in order of first appearance
    let mut block_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut block_cols: Vec<Vec<usize>> = Vec::new();
    for (c, &count) in col_count.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let r = uf.find(c);
        let b = *block_of_root.entry(r).or_insert_with(|| {
            block_cols.push(Vec::new());
            block_cols.len() - 1
        });
        block_cols[b].push(c);
    }
    let mut local = vec![0usize; m.cols()];
    for cols in &mut block_cols {
        cols.sort_by_key(|&c| (col_count[c], c));
        for (i, &c) in cols.iter().enumerate() {
            local[c] = i;
        }
    }
    let mut blocks: Vec<Block<F::Elem>> = block_cols
        .iter()
        .map(|cols| Block {
            rows: Vec::new(),
            ncols: cols.len(),
        })
        .collect();
    for row in rows.into_iter().filter(|r| !r.is_empty()) {
        let b = block_of_root[&uf.find(row[0].0)];
        let mut r: SparseVec<F::Elem> = row.into_iter().map(|(c, v)| (local[c], v)).collect();
        r.sort_by_key(|(c, _)| *c);
        blocks[b].rows.push(r);
    }
    for b in &mut blocks {
        b.rows.sort_by_key(|r| r.len());
    }
    blocks
}

/// Rank of `m` over its field.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> RankReport {
    let field = m.field();
    let r: usize = split_blocks(m)
        .into_par_iter()
        .map(|b| field.block_rank(b.rows, b.ncols))
        .sum();
    RankReport {
        rank: r,
        nullity: m.cols() - r,
        rows: m.rows(),
        cols: m.cols(),
        field: field.spec(),
    }
}

/// Rank by the generic leftmost-pivot sweep over any field.
pub fn echelon_rank<F: Field>(field: &F, rows: Vec<SparseVec<F::Elem>>, ncols: usize) -> usize {
    let mut pivots: Vec<Option<SparseVec<F::Elem>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        if let Some((c, p)) = reduce_row(field, &pivots, row) {
            pivots[c] = Some(p);
            rank += 1;
        }
    }
    rank
}

/// Reduces `row` against normalised pivot rows (pivot entry first, equal to
/// one). Returns the new pivot row, normalised, if anything survives.
fn reduce_row<F: Field>(
    field: &F,
    pivots: &[Option<SparseVec<F::Elem>>],
    row: SparseVec<F::Elem>,
) -> Option<(usize, SparseVec<F::Elem>)> {
    let mut work: BTreeMap<usize, F::Elem> = row.into_iter().collect();
    while let Some((c, a)) = work.pop_first() {
        if field.is_zero(&a) {
            continue;
        }
        match &pivots[c] {
            Some(p) => {
                for (j, v) in &p[1..] {
                    let t = field.mul(&a, v);
                    let e = work.entry(*j).or_insert_with(|| field.zero());
                    *e = field.sub(e, &t);
                    if field.is_zero(e) {
                        work.remove(j);
                    }
                }
            }
            None => {
                let inv = field.inv(&a);
                let mut p = Vec::with_capacity(work.len() + 1);
                p.push((c, field.one()));
                p.extend(
                    work.into_iter()
                        .filter(|(_, v)| !field.is_zero(v))
                        .map(|(j, v)| (j, field.mul(&v, &inv))),
                );
                return Some((c, p));
            }
        }
    }
    None
}

fn primitive(row: &mut BTreeMap<usize, BigInt>) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

/// Fraction-free rank over the rationals: rows are scaled to primitive
/// integer vectors and combined by integer cross-multiplication.
pub fn fraction_free_rank(rows: Vec<SparseVec<BigRational>>, ncols: usize) -> usize {
    // pivot rows: pivot entry first, primitive, pivot value positive
    let mut pivots: Vec<Option<Vec<(usize, BigInt)>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
        let mut work: BTreeMap<usize, BigInt> = row
            .into_iter()
            .map(|(c, v)| (c, (v * BigRational::from_integer(lcm.clone())).to_integer()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        primitive(&mut work);
        while let Some((c, a)) = work.pop_first() {
            match &pivots[c] {
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&a);
                    let (mr, mp) = (pv / &g, &a / &g);
                    for v in work.values_mut() {
                        *v *= &mr;
                    }
                    for (j, v) in &p[1..] {
                        let e = work.entry(*j).or_insert_with(BigInt::zero);
                        *e -= &mp * v;
                        if e.is_zero() {
                            work.remove(j);
                        }
                    }
                    primitive(&mut work);
                }
                None => {
                    let sign = if a.is_negative() { -BigInt::one() } else { BigInt::one() };
                    let mut p = vec![(c, a * &sign)];
                    p.extend(work.into_iter().map(|(j, v)| (j, v * &sign)));
                    pivots[c] = Some(p);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Reduced row echelon form of a row space, in natural column order.
#[derive(Debug, Clone)]
pub struct Rref<E> {
    pub ncols: usize,
    /// Pivot columns, strictly increasing.
    pub pivots: Vec<usize>,
    /// One row per pivot; each has a one at its pivot column and zeros at
    /// every other pivot column.
    pub rows: Vec<SparseVec<E>>,
}

impl<E: Clone> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of a vector assumed to lie in the row space: its values at
    /// the pivot columns.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, v: &[(usize, E)]) -> Vec<E> {
        let mut out = vec![field.zero(); self.pivots.len()];
        for (c, x) in v {
            if let Ok(k) = self.pivots.binary_search(c) {
                out[k] = x.clone();
            }
        }
        out
    }

    /// Remainder of `v` after subtracting its projection along the pivots.
    /// Zero exactly when `v` lies in the row space.
    pub fn residual<F: Field<Elem = E>>(&self, field: &F, v: &[(usize, E)]) -> SparseVec<E> {
        let mut work: BTreeMap<usize, E> = v.iter().cloned().collect();
        for (k, &pc) in self.pivots.iter().enumerate() {
            let Some(a) = work.get(&pc).cloned() else { continue };
            for (j, x) in &self.rows[k] {
                let t = field.mul(&a, x);
                let e = work.entry(*j).or_insert_with(|| field.zero());
                *e = field.sub(e, &t);
            }
        }
        work.into_iter().filter(|(_, x)| !field.is_zero(x)).collect()
    }
}

/// Reduced row echelon form of the rows of `m`.
pub fn rref<F: Field>(m: &SparseMatrix<F>) -> Rref<F::Elem> {
    rref_of_rows(m.field(), m.row_lists(), m.cols())
}

pub fn rref_of_rows<F: Field>(
    field: &F,
    rows: Vec<SparseVec<F::Elem>>,
    ncols: usize,
) -> Rref<F::Elem> {
    let mut pivots: Vec<Option<SparseVec<F::Elem>>> = vec![None; ncols];
    let mut rows = rows;
    rows.sort_by_key(|r| r.len());
    for row in rows {
        if let Some((c, p)) = reduce_row(field, &pivots, row) {
            pivots[c] = Some(p);
        }
    }
    let pivot_cols: Vec<usize> = (0..ncols).filter(|&c| pivots[c].is_some()).collect();
    // back substitution, from the rightmost pivot leftwards
    for &c in pivot_cols.iter().rev() {
        let row = pivots[c].take().expect("pivot row");
        let mut work: BTreeMap<usize, F::Elem> = row.iter().cloned().collect();
        for (j, a) in &row[1..] {
            if let Some(p) = &pivots[*j] {
                for (k, v) in p {
                    let t = field.mul(a, v);
                    let e = work.entry(*k).or_insert_with(|| field.zero());
                    *e = field.sub(e, &t);
                }
            }
        }
        pivots[c] = Some(work.into_iter().filter(|(_, v)| !field.is_zero(v)).collect());
    }
    Rref {
        ncols,
        rows: pivot_cols
            .iter()
            .map(|&c| pivots[c].take().expect("pivot row"))
            .collect(),
        pivots: pivot_cols,
    }
}

/// A basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F::Elem>> {
    let field = m.field();
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    // column view of the non-pivot part of the RREF
    let mut free_cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); m.cols()];
    for (k, row) in r.rows.iter().enumerate() {
        for (j, v) in &row[1..] {
            free_cols[*j].push((r.pivots[k], field.neg(v)));
        }
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|c| {
            let mut v = std::mem::take(&mut free_cols[c]);
            v.push((c, field.one()));
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect()
}

/// Whether two families of vectors span the same subspace.
pub fn same_span<F: Field>(
    field: &F,
    dim: usize,
    a: &[SparseVec<F::Elem>],
    b: &[SparseVec<F::Elem>],
) -> bool {
    let ma = SparseMatrix::from_columns(field, dim, a).transpose();
    let mb = SparseMatrix::from_columns(field, dim, b).transpose();
    let ra = rank(&ma).rank;
    ra == rank(&mb).rank && ra == rank(&ma.vstack(&mb).expect("same width")).rank
}
