//! Wavefront-style text mesh of the tangent developable of the twisted cubic.
//!
//! Vertices are `nu(1, a, 1, w)` in the affine chart `Z0 != 0`, on an evenly
//! spaced grid of `(a, w)` in `[-1, 1]^2`. The cuspidal edge is the image of
//! the diagonal `w = a`, where neighbouring tangent planes coincide.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;
use syzygy::graded::ParamForms;

use crate::commands::{Failure, Outcome};

pub fn vertices(samples: usize) -> Vec<[f64; 3]> {
    let nu = ParamForms::new(3);
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / (samples - 1) as f64;
    let mut out = Vec::with_capacity(samples * samples);
    for ia in 0..samples {
        for iw in 0..samples {
            let (a, w) = (coord(ia), coord(iw));
            // nu_k at s = 1, t = a, u = 1, v = w
            let value = |k: usize| -> f64 {
                nu.terms(k)
                    .iter()
                    .map(|&(i, j, c)| c as f64 * a.powi(i as i32) * if j == 1 { w } else { 1.0 })
                    .sum()
            };
            let z0 = value(0);
            out.push([value(1) / z0, value(2) / z0, value(3) / z0]);
        }
    }
    out
}

pub fn render(samples: usize) -> String {
    let mut text = String::new();
    writeln!(text, "# tangent developable of the twisted cubic, {samples} x {samples} grid").ok();
    writeln!(text, "# parameters (a, w) in [-1, 1]^2; cuspidal edge along w = a").ok();
    for [x, y, z] in vertices(samples) {
        writeln!(text, "v {x:.6} {y:.6} {z:.6}").ok();
    }
    let idx = |ia: usize, iw: usize| ia * samples + iw + 1;
    for ia in 0..samples - 1 {
        for iw in 0..samples - 1 {
            let (p, q, r, s) = (idx(ia, iw), idx(ia + 1, iw), idx(ia + 1, iw + 1), idx(ia, iw + 1));
            writeln!(text, "f {p} {q} {r}").ok();
            writeln!(text, "f {p} {r} {s}").ok();
        }
    }
    text
}

pub fn run(genus: usize, samples: usize, output: Option<&Path>) -> Result<Outcome, Failure> {
    if genus != 3 {
        return Err(Failure::Config("mesh export is only defined for genus 3".into()));
    }
    if samples < 2 {
        return Err(Failure::Config("--samples must be at least 2".into()));
    }
    let mesh = render(samples);
    let summary = json!({
        "command": "mesh",
        "genus": genus,
        "vertices": samples * samples,
        "faces": 2 * (samples - 1) * (samples - 1),
    });
    let text = match output {
        Some(path) => {
            std::fs::write(path, &mesh).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
            format!(
                "wrote {} vertices and {} faces to {}\n",
                samples * samples,
                2 * (samples - 1) * (samples - 1),
                path.display()
            )
        }
        None => mesh,
    };
    Ok(Outcome {
        text,
        json: summary,
        csv: None,
        verified: true,
    })
}
