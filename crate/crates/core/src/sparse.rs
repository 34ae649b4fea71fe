//! Rectangular sparse matrices in triplet form.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// An exact matrix stored as `(row, col, value)` triplets.
///
/// Triplets are kept sorted row-major, with no duplicate positions and no
/// stored zeros. Matrices are immutable once built; every operation returns
/// a new matrix.
#[derive(Clone, Debug)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, F::Elem)>,
}

impl<F: Field> PartialEq for SparseMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl<F: Field> SparseMatrix<F> {
    /// Builds a matrix from arbitrary triplets: duplicate positions are summed
    /// and zeros dropped. Panics on out-of-range indices.
    pub fn from_triplets(
        field: &F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F::Elem)>,
    ) -> Self {
        let mut t: Vec<(usize, usize, F::Elem)> = triplets.into_iter().collect();
        for &(r, c, _) in &t {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
        }
        t.sort_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, F::Elem)> = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = field.add(&last.2, &v),
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|(_, _, v)| !field.is_zero(v));
        Self {
            field: field.clone(),
            rows,
            cols,
            entries,
        }
    }

    /// Strict constructor for externally supplied data: rejects out-of-range
    /// indices, duplicates and explicit zeros instead of repairing them.
    pub fn try_new(
        field: &F,
        rows: usize,
        cols: usize,
        mut entries: Vec<(usize, usize, F::Elem)>,
    ) -> Result<Self> {
        for (r, c, v) in &entries {
            if *r >= rows || *c >= cols {
                return Err(Error::Malformed(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            if field.is_zero(v) {
                return Err(Error::Malformed(format!("stored zero at ({r}, {c})")));
            }
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::Malformed(format!(
                "duplicate entry at ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        Self::scalar(field, n, field.one())
    }

    pub fn scalar(field: &F, n: usize, c: F::Elem) -> Self {
        Self::from_triplets(field, n, n, (0..n).map(|i| (i, i, c.clone())))
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[SparseVec<F::Elem>]) -> Self {
        Self::from_triplets(
            field,
            rows,
            columns.len(),
            columns
                .iter()
                .enumerate()
                .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone()))),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn entries(&self) -> &[(usize, usize, F::Elem)] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        match self.entries.binary_search_by_key(&(r, c), |&(i, j, _)| (i, j)) {
            Ok(k) => self.entries[k].2.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Column lists, each sorted by row.
    pub fn columns(&self) -> Vec<SparseVec<F::Elem>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        cols
    }

    /// Row lists, each sorted by column.
    pub fn row_lists(&self) -> Vec<SparseVec<F::Elem>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            &self.field,
            self.cols,
            self.rows,
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())),
        )
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.spec() != other.field.spec() {
            return Err(Error::FieldMismatch(self.field.spec(), other.field.spec()));
        }
        Ok(())
    }

    /// The product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "compose",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let f = &self.field;
        let lhs_cols = self.columns();
        let mut acc: Vec<Option<F::Elem>> = vec![None; self.rows];
        let mut touched = Vec::new();
        let mut out = Vec::new();
        for (j, col) in rhs.columns().into_iter().enumerate() {
            for (k, b) in &col {
                for (i, a) in &lhs_cols[*k] {
                    let t = f.mul(a, b);
                    match &mut acc[*i] {
                        Some(x) => *x = f.add(x, &t),
                        slot @ None => {
                            *slot = Some(t);
                            touched.push(*i);
                        }
                    }
                }
            }
            for i in touched.drain(..) {
                if let Some(v) = acc[i].take() {
                    if !f.is_zero(&v) {
                        out.push((i, j, v));
                    }
                }
            }
        }
        Ok(Self::from_triplets(f, self.rows, rhs.cols, out))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Self::from_triplets(
            &self.field,
            self.rows,
            self.cols,
            self.entries.iter().chain(&rhs.entries).cloned(),
        ))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::from_triplets(
            f,
            self.rows,
            self.cols,
            self.entries.iter().map(|(r, k, v)| (*r, *k, f.mul(c, v))),
        )
    }

    /// Kronecker product; row `(i, k)` of the result is `i * rhs.rows + k`.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        let f = &self.field;
        let mut out = Vec::with_capacity(self.nnz() * rhs.nnz());
        for (i, j, a) in &self.entries {
            for (k, l, b) in &rhs.entries {
                out.push((i * rhs.rows + k, j * rhs.cols + l, f.mul(a, b)));
            }
        }
        Ok(Self::from_triplets(
            f,
            self.rows * rhs.rows,
            self.cols * rhs.cols,
            out,
        ))
    }

    /// Stacks `self` above `lower`.
    pub fn vstack(&self, lower: &Self) -> Result<Self> {
        self.check_field(lower)?;
        if self.cols != lower.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: lower.shape(),
            });
        }
        let off = self.rows;
        Ok(Self::from_triplets(
            &self.field,
            self.rows + lower.rows,
            self.cols,
            self.entries
                .iter()
                .cloned()
                .chain(lower.entries.iter().map(|(r, c, v)| (r + off, *c, v.clone()))),
        ))
    }

    /// Places `right` next to `self`.
    pub fn hstack(&self, right: &Self) -> Result<Self> {
        Ok(self.transpose().vstack(&right.transpose())?.transpose())
    }

    /// `self * v` for a sparse column vector.
    pub fn apply(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let cols = self.columns();
        let mut acc: HashMap<usize, F::Elem> = HashMap::new();
        for (k, b) in v {
            for (i, a) in &cols[*k] {
                let t = f.mul(a, b);
                acc.entry(*i)
                    .and_modify(|x| *x = f.add(x, &t))
                    .or_insert(t);
            }
        }
        let mut out: SparseVec<F::Elem> = acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Dense row-major copy, for small matrices and diagnostics.
    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let mut d = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }
}

impl SparseMatrix<Rationals> {
    /// Reduces a rational matrix into another field.
    pub fn to_field<G: Field>(&self, g: &G) -> Result<SparseMatrix<G>> {
        let t = self
            .entries
            .iter()
            .map(|(r, c, v)| Ok((*r, *c, g.from_rational(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_triplets(g, self.rows, self.cols, t))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let nc = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            &Rationals,
            rows.len(),
            nc,
            rows.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(j, v)| (i, j, BigRational::from_integer((*v).into())))
            }),
        )
    }
}
