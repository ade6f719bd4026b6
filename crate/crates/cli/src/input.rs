use std::collections::BTreeMap;
use std::io::Read;

use casimir_core::catalog::{catalog_lookup, Params};
use casimir_core::format::{parse_algebra_doc, LeviMeta};
use casimir_core::rational;
use casimir_core::semidirect::{split_levi, LeviPair};
use casimir_core::LieAlgebra;

use crate::{Config, Failure};

pub const CATALOG_PREFIX: &str = "catalog:";

pub struct Loaded {
    pub name: String,
    pub algebra: LieAlgebra,
    pub levi: Option<LeviMeta>,
    pub warnings: Vec<String>,
}

impl Loaded {
    pub fn levi_pair(&self) -> Option<Result<LeviPair, Failure>> {
        self.levi.as_ref().map(|m| {
            split_levi(&self.algebra, m.levi_dim, m.rep.as_ref()).map_err(|e| Failure::Input(e.to_string()))
        })
    }
}

pub fn params(cfg: &Config) -> Result<Params, Failure> {
    let mut out = BTreeMap::new();
    for raw in &cfg.params {
        let (name, value) = raw
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("--param {raw:?}: expected name=rational")))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Failure::Input(format!("--param {raw:?}: empty name")));
        }
        let q = rational::parse(value)
            .ok_or_else(|| Failure::Input(format!("--param {raw:?}: {value:?} is not a rational number")))?;
        out.insert(name.to_string(), q);
    }
    Ok(out)
}

/// Reads a file path, `-` for standard input, or `catalog:<name>`.
pub fn load(source: &str, cfg: &Config) -> Result<Loaded, Failure> {
    let params = params(cfg)?;
    if let Some(name) = source.strip_prefix(CATALOG_PREFIX) {
        let entry = catalog_lookup(name).map_err(|e| Failure::Input(e.to_string()))?;
        let inst = entry.instantiate(&params).map_err(|e| Failure::Input(e.to_string()))?;
        return Ok(Loaded {
            name: inst.name,
            algebra: inst.algebra,
            levi: inst.levi,
            warnings: inst.warnings,
        });
    }
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| Failure::Input(format!("{source}: {e}")))?
    };
    let doc = parse_algebra_doc(&text, &params).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
    Ok(Loaded {
        name: doc.name,
        algebra: doc.algebra,
        levi: doc.levi,
        warnings: Vec::new(),
    })
}
