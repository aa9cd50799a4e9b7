//! Regenerated tables, the verification suite and the configuration shared with the CLI.

mod cache;
mod suite;
mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

pub use cache::{cache_key, Cache};
pub use suite::{verify_suite, CheckResult, Status, SuiteReport};
pub use tables::{emit_table, render_jsonl, render_markdown, CatalogEntry};

use crate::conj::{st_build, STGroup};
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::extpoly::{extpoly_build_desc, ExtPolyGroup};
use crate::gkh::{gkh_build_desc_capped, GKHGroup, GroupRecord};
use crate::quat::{quat_is_reflection, QMat2, ReflectionInfo};
use crate::soi::default_samples;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Json,
    Markdown,
}

impl FromStr for Output {
    type Err = Error;

    fn from_str(s: &str) -> Result<Output> {
        match s.trim() {
            "json" => Ok(Output::Json),
            "markdown" | "md" => Ok(Output::Markdown),
            o => Err(Error::Parse(format!("unknown output format {o}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_m: u32,
    pub closure_cap: usize,
    pub soi_samples: Vec<Rat>,
    pub output: Output,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Config {
        Config { max_m: 12, closure_cap: 40_000, soi_samples: default_samples(), output: Output::Json, cache_dir: None }
    }
}

pub fn parse_samples(s: &str) -> Result<Vec<Rat>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse()).collect()
}

impl Config {
    /// Parses `key = value` lines; keys mirror the CLI flags.
    pub fn from_kv(text: &str) -> Result<Config> {
        let mut cfg = Config::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("line {}: expected key = value", n + 1)))?;
            cfg.set(k.trim(), v.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Config::from_kv(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = |v: &str| v.parse::<u64>().map_err(|_| Error::Parse(format!("{key}: not a number: {v}")));
        match key.replace('_', "-").as_str() {
            "max-m" => self.max_m = num(value)? as u32,
            "closure-cap" => self.closure_cap = num(value)? as usize,
            "samples" | "soi-samples" => self.soi_samples = parse_samples(value)?,
            "output" => self.output = value.parse()?,
            "cache-dir" => self.cache_dir = Some(PathBuf::from(value)),
            _ => return Err(Error::Parse(format!("unknown key {key}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_m == 0 || self.closure_cap == 0 {
            return Err(Error::InvalidParams("bounds must be positive".into()));
        }
        if self.soi_samples.is_empty() {
            return Err(Error::InvalidParams("at least one sample is needed".into()));
        }
        Ok(())
    }

    pub fn cache(&self) -> Option<Cache> {
        self.cache_dir.as_ref().map(|d| Cache::new(d.clone()))
    }
}

/// Any group the CLI can build from a descriptor.
#[derive(Debug)]
pub enum AnyGroup {
    Gkh(GKHGroup),
    Ext(ExtPolyGroup),
    St(STGroup),
}

fn tally(mats: &[QMat2]) -> Result<(Vec<QMat2>, BTreeMap<u32, usize>)> {
    let mut refl = Vec::new();
    let mut orders = BTreeMap::new();
    for e in mats {
        if let ReflectionInfo::Reflection { order, .. } = quat_is_reflection(e)? {
            refl.push(e.clone());
            *orders.entry(order).or_insert(0) += 1;
        }
    }
    Ok((refl, orders))
}

impl AnyGroup {
    pub fn descriptor(&self) -> String {
        match self {
            AnyGroup::Gkh(g) => g.descriptor.clone(),
            AnyGroup::Ext(g) => g.descriptor(),
            AnyGroup::St(g) => g.descriptor.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnyGroup::Gkh(g) => g.order(),
            AnyGroup::Ext(g) => g.order(),
            AnyGroup::St(g) => g.order(),
        }
    }

    pub fn reflection_matrices(&self) -> Result<Vec<QMat2>> {
        Ok(match self {
            AnyGroup::Gkh(g) => g.reflection_matrices(),
            AnyGroup::Ext(g) => g.reflection_matrices(),
            AnyGroup::St(g) => tally(&g.group.elements)?.0,
        })
    }

    pub fn record(&self) -> Result<GroupRecord> {
        Ok(match self {
            AnyGroup::Gkh(g) => g.record(),
            AnyGroup::Ext(g) => {
                let r = g.record();
                GroupRecord {
                    descriptor: r.descriptor,
                    order: r.order,
                    reflection_count: r.reflection_count,
                    reflection_orders: r.reflection_orders,
                    family: r.family,
                    standard: r.standard,
                }
            }
            AnyGroup::St(g) => {
                let (refl, orders) = tally(&g.group.elements)?;
                GroupRecord {
                    descriptor: g.descriptor.clone(),
                    order: g.order(),
                    reflection_count: refl.len(),
                    reflection_orders: orders,
                    family: "shephard-todd".into(),
                    standard: true,
                }
            }
        })
    }
}

impl fmt::Display for AnyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.descriptor(), self.order())
    }
}

/// Builds `G(...)`, `Cbox(...)`, `Cbox2(...)`, `Ccirc{f}(...)` or `ST(...)`.
pub fn build_group(desc: &str, cap: usize) -> Result<AnyGroup> {
    let d = desc.trim();
    let g = if d.starts_with("G(") {
        AnyGroup::Gkh(gkh_build_desc_capped(d, cap)?)
    } else if d.starts_with("Cbox") || d.starts_with("Ccirc") {
        AnyGroup::Ext(extpoly_build_desc(d)?)
    } else if d.starts_with("ST(") {
        AnyGroup::St(st_build(d)?)
    } else {
        return Err(Error::InvalidDescriptor(d.to_string()));
    };
    if g.order() > cap {
        return Err(Error::ClosureBound(cap));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_from_kv() {
        let cfg = Config::from_kv("# bounds\nmax-m = 4\nclosure_cap=100\nsamples = 1, 1/2\noutput = markdown\n").unwrap();
        assert_eq!(cfg.max_m, 4);
        assert_eq!(cfg.closure_cap, 100);
        assert_eq!(cfg.soi_samples.len(), 2);
        assert_eq!(cfg.output, Output::Markdown);
        assert!(Config::from_kv("max-m = 0").is_err());
        assert!(Config::from_kv("colour = blue").is_err());
        assert!(Config::from_kv("max-m").is_err());
        assert_eq!(Config::from_kv("").unwrap(), Config::default());
    }

    #[test]
    fn dispatch() {
        assert_eq!(build_group("G(D:3,C:2,psi:1)", 40_000).unwrap().order(), 48);
        assert_eq!(build_group("Cbox(4,O)", 40_000).unwrap().order(), 192);
        let st = build_group("ST(12)", 40_000).unwrap();
        assert_eq!(st.record().unwrap().reflection_count, 12);
        assert!(matches!(build_group("G(I,I,1)", 100), Err(Error::ClosureBound(100))));
        assert!(matches!(build_group("H(1)", 100), Err(Error::InvalidDescriptor(_))));
    }
}
