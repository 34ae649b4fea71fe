//! The `--field` argument and dispatch over concrete fields.

use syzygy::field::random_primes;
use syzygy::{FieldSpec, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldArg {
    Single(FieldSpec),
    /// `k` primes drawn from the seed.
    Consensus(usize),
}

pub fn parse_field_arg(s: &str) -> Result<FieldArg, String> {
    if let Some(k) = s.strip_prefix("consensus:") {
        let k: usize = k.parse().map_err(|e| format!("bad prime count in `{s}`: {e}"))?;
        if k == 0 {
            return Err("consensus needs at least one prime".into());
        }
        return Ok(FieldArg::Consensus(k));
    }
    s.parse::<FieldSpec>().map(FieldArg::Single).map_err(|e| e.to_string())
}

impl FieldArg {
    /// The concrete fields to run over.
    pub fn specs(&self, seed: u64) -> Vec<FieldSpec> {
        match self {
            FieldArg::Single(f) => vec![*f],
            FieldArg::Consensus(k) => random_primes(*k, seed)
                .into_iter()
                .map(FieldSpec::PrimeField)
                .collect(),
        }
    }

    pub fn is_consensus(&self) -> bool {
        matches!(self, FieldArg::Consensus(_))
    }

    pub fn any_rational(&self) -> bool {
        matches!(self, FieldArg::Single(FieldSpec::Rationals))
    }
}

/// A prime field for randomized probes: the chosen prime if there is one,
/// otherwise one drawn from the seed.
pub fn probe_field(spec: FieldSpec, seed: u64) -> PrimeField {
    match spec {
        FieldSpec::PrimeField(p) => PrimeField::new(p).expect("validated prime"),
        FieldSpec::Rationals => PrimeField::new(random_primes(1, seed)[0]).expect("random prime"),
    }
}

/// Runs `$body` with `$f` bound to a reference to the field described by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            syzygy::FieldSpec::Rationals => {
                let $f = &syzygy::Rationals;
                $body
            }
            syzygy::FieldSpec::PrimeField(p) => {
                let $f = &syzygy::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}
pub(crate) use with_field;
