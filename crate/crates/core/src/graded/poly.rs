//! Small integer polynomials in the coordinates `Z_0..Z_(n-1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: Vec<u32>, c: i64) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    /// Common total degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>() as usize);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    fn combine(mut self, rhs: &Poly, sign: i64) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (e, c) in &rhs.terms {
            let v = self.terms.entry(e.clone()).or_insert(0);
            *v += sign * c;
            if *v == 0 {
                self.terms.remove(e);
            }
        }
        self
    }

    /// Substitutes `Z_k -> s^(g-k) t^k`, giving a binary form of degree
    /// `g * deg` as `(exponent of t, coefficient)` pairs.
    pub fn on_rational_normal_curve(&self) -> BTreeMap<usize, i64> {
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for (e, c) in &self.terms {
            let texp: usize = e.iter().enumerate().map(|(k, &x)| k * x as usize).sum();
            *out.entry(texp).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.clone().combine(rhs, 1)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.clone().combine(rhs, -1)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::zero(self.nvars).combine(self, -1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out = out.combine(&Poly::monomial(e, x * y), 1);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    /// Highest monomial first in lexicographic exponent order, e.g. `Z0*Z2 - Z1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("Z{i}") } else { format!("Z{i}^{x}") })
                .collect();
            let sign = if *c < 0 { "-" } else { "+" };
            if n == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (mono.is_empty(), a) {
                (true, _) => write!(f, "{a}")?,
                (false, 1) => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Parses sums of terms like `3*Z0*Z2^2 - Z1` in `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        let bad = |why: &str| Error::Parse(format!("polynomial `{text}`: {why}"));
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty"));
        }
        // split into signed terms
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut sign = 1;
        let mut cur = String::new();
        for (i, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && !(i > 0 && cleaned[..i].ends_with('^')) {
                if !cur.is_empty() {
                    terms.push((sign, std::mem::take(&mut cur)));
                } else if i > 0 {
                    return Err(bad("dangling sign"));
                }
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad("dangling sign"));
        }
        terms.push((sign, cur));
        let mut out = Poly::zero(nvars);
        for (sign, term) in terms {
            let mut coeff = sign;
            let mut exps = vec![0u32; nvars];
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix('Z') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx >= nvars {
                        return Err(bad("variable index out of range"));
                    }
                    exps[idx] += pow;
                } else {
                    let c: i64 = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coeff *= c;
                }
            }
            out = out.combine(&Poly::monomial(exps, coeff), 1);
        }
        Ok(out)
    }
}

impl FromStr for Poly {
    type Err = Error;
    /// Parses with four variables, the ambient `P^3` of the complete
    /// intersection examples.
    fn from_str(s: &str) -> Result<Poly> {
        Poly::parse(s, 4)
    }
}
