//! Plain-text matrix cache files.
//!
//! ```text
//! SYZMAT v1 <rows> <cols> <field>
//! <row> <col> <numerator>[/<denominator>]
//! ...
//! ```
//!
//! `<field>` is `rationals` or `prime:<p>`. Entries are written in row-major
//! order, so writing a parsed file reproduces it byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sparse::SparseMatrix;

const MAGIC: &str = "SYZMAT";
const VERSION: &str = "v1";

pub fn write_matrix_string<F: Field>(m: &SparseMatrix<F>) -> String {
    let f = m.field();
    let mut out = format!("{MAGIC} {VERSION} {} {} {}\n", m.rows(), m.cols(), f.spec());
    for (r, c, v) in m.entries() {
        writeln!(out, "{r} {c} {}", f.format(v)).expect("write to string");
    }
    out
}

pub fn read_matrix_str<F: Field>(field: &F, text: &str) -> Result<SparseMatrix<F>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 5 || parts[0] != MAGIC || parts[1] != VERSION {
        return Err(Error::Parse(format!("bad header `{header}`")));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad integer `{s}`: {e}")))
    };
    let (rows, cols) = (num(parts[2])?, num(parts[3])?);
    if parts[4] != field.spec().to_string() {
        return Err(Error::Parse(format!(
            "matrix is over {}, expected {}",
            parts[4],
            field.spec()
        )));
    }
    let mut entries = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 3 {
            return Err(Error::Parse(format!("line {}: `{line}`", lineno + 2)));
        }
        entries.push((num(t[0])?, num(t[1])?, field.parse(t[2])?));
    }
    SparseMatrix::try_new(field, rows, cols, entries)
}

pub fn write_matrix<F: Field>(path: &Path, m: &SparseMatrix<F>) -> Result<()> {
    fs::write(path, write_matrix_string(m))?;
    Ok(())
}

pub fn read_matrix<F: Field>(field: &F, path: &Path) -> Result<SparseMatrix<F>> {
    read_matrix_str(field, &fs::read_to_string(path)?)
}
