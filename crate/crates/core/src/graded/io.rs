//! On-disk form of a graded module: a `module.json` manifest next to one
//! matrix file per action `actions/q<q>_z<k>.syzmat`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cache::{read_matrix, write_matrix};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

use super::{GradedModule, ObjectKind};

const SCHEMA: &str = "syzygy-module/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleManifest {
    pub schema: String,
    pub kind: ObjectKind,
    pub genus: usize,
    pub field: FieldSpec,
    pub num_forms: usize,
    pub dims: Vec<usize>,
}

fn action_path(q: usize, k: usize) -> String {
    format!("actions/q{q}_z{k}.syzmat")
}

pub fn save_module<F: Field>(module: &GradedModule<F>, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir.join("actions"))?;
    let manifest = ModuleManifest {
        schema: SCHEMA.into(),
        kind: module.kind(),
        genus: module.genus(),
        field: module.field().spec(),
        num_forms: module.num_forms(),
        dims: module.dims().to_vec(),
    };
    fs::write(dir.join("module.json"), serde_json::to_string_pretty(&manifest)?)?;
    for q in 0..module.qmax() {
        for k in 0..module.num_forms() {
            write_matrix(&dir.join(action_path(q, k)), module.action(k, q))?;
        }
    }
    Ok(())
}

pub fn load_module<F: Field>(field: &F, dir: &Path) -> Result<GradedModule<F>> {
    let manifest: ModuleManifest = serde_json::from_str(&fs::read_to_string(dir.join("module.json"))?)?;
    if manifest.schema != SCHEMA {
        return Err(Error::Malformed(format!("unknown module schema `{}`", manifest.schema)));
    }
    if manifest.field != field.spec() {
        return Err(Error::FieldMismatch(manifest.field, field.spec()));
    }
    if manifest.dims.is_empty() {
        return Err(Error::Malformed("module has no graded pieces".into()));
    }
    let mut actions = Vec::new();
    for q in 0..manifest.dims.len() - 1 {
        let mut layer = Vec::new();
        for k in 0..manifest.num_forms {
            let m = read_matrix(field, &dir.join(action_path(q, k)))?;
            if m.shape() != (manifest.dims[q + 1], manifest.dims[q]) {
                return Err(Error::Malformed(format!(
                    "action of Z{k} in degree {q} has shape {:?}, expected {:?}",
                    m.shape(),
                    (manifest.dims[q + 1], manifest.dims[q])
                )));
            }
            layer.push(m);
        }
        actions.push(layer);
    }
    Ok(GradedModule::new(
        field,
        manifest.kind,
        manifest.genus,
        manifest.num_forms,
        manifest.dims,
        actions,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::graded::{tangent_module, TangentMethod};

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let m = tangent_module(&Rationals, 3, 3, TangentMethod::Image).unwrap();
        save_module(&m, dir.path()).unwrap();
        let back = load_module(&Rationals, dir.path()).unwrap();
        assert_eq!(back.dims(), m.dims());
        assert_eq!(back.kind(), ObjectKind::Tangent);
        for q in 0..3 {
            for k in 0..4 {
                assert_eq!(back.action(k, q), m.action(k, q));
            }
        }
        let wrong = PrimeField::new(101).unwrap();
        assert!(matches!(load_module(&wrong, dir.path()), Err(Error::FieldMismatch(..))));
    }
}
