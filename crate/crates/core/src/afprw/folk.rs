//! Three independent computations of `K_(i,1)` of the tangent developable
//! and the resulting verdict on the folk conjecture at a given genus.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{Field, FieldSpec};
use crate::graded::{tangent_module, TangentMethod};
use crate::koszul::{betti_table, check_np, koszul_group, NpReport};

use super::{gamma, gamma_prime};

pub const REPORT_SCHEMA: &str = "syzygy-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolkEntry {
    pub i: usize,
    pub direct: usize,
    pub ker_gamma: usize,
    pub ker_gamma_prime: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FolkOptions {
    /// Also compute the Betti table up to `p = [(g-3)/2]`, `q = 2` and check `(N_p)`.
    pub np_check: bool,
    pub timings: bool,
    /// Seed that chose the field, if any; recorded only.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FolkReport {
    pub schema: String,
    pub genus: usize,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub entries: Vec<FolkEntry>,
    /// The `[g/2]` entry is zero by all three methods.
    pub required_vanishing: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub np: Option<NpReport>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u128)>>,
}

impl FolkReport {
    /// Same mathematical content, ignoring field, seed and timings.
    pub fn same_content(&self, other: &FolkReport) -> bool {
        self.genus == other.genus
            && self.entries == other.entries
            && self.required_vanishing == other.required_vanishing
            && self.np == other.np
            && self.pass == other.pass
    }
}

/// Runs the direct Koszul computation, `ker gamma` and `ker gamma'` for
/// `1 <= i <= [g/2]`, with `(N_p)` at `p = [(g-3)/2]` on request.
pub fn folk_verify<F: Field>(field: &F, g: usize, opts: FolkOptions) -> Result<FolkReport> {
    let mut timings = Vec::new();
    let start = Instant::now();
    let qmax = if opts.np_check { 3 } else { 2 };
    let t = tangent_module(field, g, qmax, TangentMethod::Image)?;
    timings.push(("tangent module".to_string(), start.elapsed().as_millis()));
    let top = g / 2;
    let mut entries = Vec::new();
    for i in 1..=top {
        let start = Instant::now();
        let direct = koszul_group(&t, i, 1)?;
        let ker_gamma = gamma(field, g, i)?.kernel_dim();
        let ker_gamma_prime = gamma_prime(field, g, i)?.kernel_dim();
        timings.push((format!("i = {i}"), start.elapsed().as_millis()));
        entries.push(FolkEntry {
            i,
            direct,
            ker_gamma,
            ker_gamma_prime,
            agree: direct == ker_gamma && direct == ker_gamma_prime,
        });
    }
    let last = entries.last().expect("g >= 3 gives at least one entry");
    let required_vanishing = last.direct == 0 && last.ker_gamma == 0 && last.ker_gamma_prime == 0;
    let np = if opts.np_check {
        let start = Instant::now();
        let p = g.saturating_sub(3) / 2;
        let table = betti_table(&t, p.max(1), 2)?;
        timings.push(("betti table".to_string(), start.elapsed().as_millis()));
        Some(check_np(&table, p)?)
    } else {
        None
    };
    let pass = required_vanishing && entries.iter().all(|e| e.agree) && np.as_ref().is_none_or(|r| r.holds);
    Ok(FolkReport {
        schema: REPORT_SCHEMA.into(),
        genus: g,
        field: field.spec(),
        seed: opts.seed,
        entries,
        required_vanishing,
        np,
        pass,
        timings_ms: opts.timings.then_some(timings),
    })
}
