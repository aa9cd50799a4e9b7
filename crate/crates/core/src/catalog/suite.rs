use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::tables::{TABLE2, TABLE4};
use super::Config;
use crate::conj::{verify_conjugacy_theorem, ConjOptions};
use crate::error::{Error, Result};
use crate::extpoly::{extpoly_expected, extpoly_is_reflection_group};
use crate::gkh::theorem_a::{valid_r_values, valid_r_values_bruteforce};
use crate::gkh::{gkh_build_desc_capped, gkh_is_reflection_group, GKHGroup};
use crate::sgroups::{SGroup, Tag};
use crate::soi::{soi_classify, soi_preserved_by, soi_search_structured, Mode, SoI};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "FAIL"),
            Status::Skipped(r) => write!(f, "Skipped({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub section: String,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub max_m: u32,
    pub closure_cap: usize,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn find(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type Job = Box<dyn Fn() -> Result<(bool, String)> + Send + Sync>;

struct Plan {
    jobs: Vec<(String, String, Job)>,
}

impl Plan {
    fn add(&mut self, section: &str, name: impl Into<String>, job: impl Fn() -> Result<(bool, String)> + Send + Sync + 'static) {
        self.jobs.push((section.to_string(), name.into(), Box::new(job)));
    }
}

fn run(section: String, name: String, job: &Job) -> CheckResult {
    let (status, detail) = match job() {
        Ok((true, d)) => (Status::Pass, d),
        Ok((false, d)) => (Status::Fail, d),
        Err(Error::ClosureBound(_)) => (Status::Skipped("ClosureBound".into()), String::new()),
        Err(e) => (Status::Fail, e.to_string()),
    };
    CheckResult { section, name, status, detail }
}

fn orders(cfg: &Config) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut check = |tag: Tag, want: usize| -> Result<()> {
        let got = SGroup::build(tag.clone())?.order();
        if got != want {
            bad.push(format!("{tag}: {got} != {want}"));
        }
        Ok(())
    };
    for m in 1..=2 * cfg.max_m {
        check(Tag::C(m), m as usize)?;
    }
    for m in 1..=cfg.max_m {
        check(Tag::D(m), 4 * m as usize)?;
    }
    check(Tag::T, 24)?;
    check(Tag::O, 48)?;
    check(Tag::I, 120)?;
    Ok((bad.is_empty(), bad.join("; ")))
}

fn theorem_a(max_m: u32) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for m in 1..=max_m {
        for l in (1..=2 * m).filter(|l| (2 * m) % l == 0) {
            if valid_r_values(m, l) != valid_r_values_bruteforce(m, l) {
                bad.push(format!("m={m} l={l}"));
            }
        }
    }
    Ok((bad.is_empty(), bad.join("; ")))
}

fn generation_agrees(g: &GKHGroup) -> Result<bool> {
    let mut refl = g.reflection_matrices();
    let mut param = g.parametric_reflections();
    let key = |m: &crate::quat::QMat2| m.to_string();
    refl.sort_by_key(key);
    param.sort_by_key(key);
    param.dedup();
    Ok(gkh_is_reflection_group(&g.phi) == g.reflections_generate()? && refl == param)
}

fn lemma_gen(max_m: u32, cap: usize) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for m in 1..=max_m {
        for l in (1..=2 * m).filter(|l| (2 * m) % l == 0) {
            for r in valid_r_values(m, l) {
                let desc = format!("G(D:{m},C:{l},psi:{r})");
                if !generation_agrees(&gkh_build_desc_capped(&desc, cap)?)? {
                    bad.push(desc);
                }
            }
        }
    }
    Ok((bad.is_empty(), bad.join("; ")))
}

const TABLE2_ORDERS: [usize; 15] = [1152, 384, 96, 48, 4608, 2304, 768, 192, 96, 96, 28800, 480, 480, 240, 240];

fn table2_row(desc: &str, want: usize, cap: usize) -> Result<(bool, String)> {
    let g = gkh_build_desc_capped(desc, cap)?;
    let criterion = gkh_is_reflection_group(&g.phi);
    let generated = g.reflections_generate()?;
    let ok = g.order() == want && criterion == generated && criterion;
    Ok((ok, format!("order {} reflections {}", g.order(), g.reflection_count())))
}

fn soi_row(desc: &str, samples: &[crate::exactnum::Rat], cap: usize) -> Result<(bool, String)> {
    let g = gkh_build_desc_capped(desc, cap)?;
    let c = soi_classify(desc)?;
    let inst = c.instances(samples);
    let preserved = inst.iter().all(|f| soi_preserved_by(&g, &f.soi, Mode::Generators));
    let found = soi_search_structured(&g, samples);
    let agree = found.len() == inst.len() && found.iter().all(|f| inst.iter().any(|i| i.soi == f.soi));
    let gate = g.h().order() <= 2 || found.is_empty();
    let standard = soi_preserved_by(&g, &SoI::standard(), Mode::Generators);
    Ok((preserved && agree && gate && standard, format!("{} systems", found.len())))
}

fn soi_none(desc: &str, samples: &[crate::exactnum::Rat], cap: usize) -> Result<(bool, String)> {
    let g = gkh_build_desc_capped(desc, cap)?;
    let found = soi_search_structured(&g, samples);
    Ok((found.is_empty() && soi_classify(desc)?.is_empty(), format!("{} systems", found.len())))
}

/// Largest group a theorem chain closes, so that the cap can be honoured up front.
fn conj_size(tag: &str, m: u32) -> usize {
    let m = m as usize;
    match tag {
        "TO" => 96,
        "primST(i)" | "primST(ii)" => 240,
        "boxdot" => 480,
        "dihedral-cyclic" => 16 * m,
        "dihedral-odd" => 32 * m,
        _ => 16 * m,
    }
}

fn conj_check(tag: &'static str, ms: Vec<u32>, cap: usize) -> Result<(bool, String)> {
    let worst = ms.iter().map(|m| conj_size(tag, *m)).max().unwrap_or_else(|| conj_size(tag, 1));
    if worst > cap {
        return Err(Error::ClosureBound(cap));
    }
    let runs: Vec<Option<u32>> = if ms.is_empty() { vec![None] } else { ms.into_iter().map(Some).collect() };
    let mut n = 0;
    for m in runs {
        let rep = verify_conjugacy_theorem(tag, &ConjOptions { m, r: None })?;
        n += rep.instances.len();
        if !rep.pass() {
            return Ok((false, format!("{tag} failed at m={m:?}")));
        }
    }
    Ok((true, format!("{n} instances")))
}

fn extpoly_law(k: Tag, f: u32, cap: usize) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for d in (2..=48).step_by(2).filter(|d| d % f == 0) {
        let size = d as usize * SGroup::build(k.clone())?.order() / f as usize;
        if size > cap {
            return Err(Error::ClosureBound(cap));
        }
        if extpoly_is_reflection_group(d, f, k.clone()) != extpoly_expected(d, f, &k) {
            bad.push(d.to_string());
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { String::new() } else { format!("d = {}", bad.join(",")) }))
}

/// Runs every check in a fixed order; independent checks are evaluated in parallel.
pub fn verify_suite(cfg: &Config) -> Result<SuiteReport> {
    cfg.validate()?;
    let cap = cfg.closure_cap;
    let max_m = cfg.max_m;
    let samples = Arc::new(cfg.soi_samples.clone());
    let mut p = Plan { jobs: Vec::new() };

    let c = cfg.clone();
    p.add("orders", "subgroup orders", move || orders(&c));
    p.add("theorem-a", format!("gcd criterion m <= {max_m}"), move || theorem_a(max_m));
    p.add("lemma-gen", format!("reflection generation m <= {max_m}"), move || lemma_gen(max_m, cap));
    for (desc, want) in TABLE2.iter().zip(TABLE2_ORDERS) {
        p.add("table2", *desc, move || table2_row(desc, want, cap));
    }

    let mut soi_groups: Vec<String> =
        ["G(D:1,1,psi:1)", "G(D:2,1,psi:1)", "G(D:1,C:2,psi:1)", "G(D:2,C:2,psi:1)"].iter().map(|s| s.to_string()).collect();
    for m in 3..=max_m {
        soi_groups.push(format!("G(D:{m},1,psi:1)"));
        soi_groups.push(format!("G(D:{m},C:2,psi:1)"));
    }
    for m in (3..=max_m / 2).filter(|m| m % 2 == 1) {
        soi_groups.push(format!("G(D:{},1,psi:{})", 2 * m, 2 * m - 1));
    }
    soi_groups.extend(TABLE4.iter().map(|s| s.to_string()));
    for desc in soi_groups {
        let s = samples.clone();
        p.add("soi", desc.clone(), move || soi_row(&desc, &s, cap));
    }
    for desc in ["G(I,C:2,theta)", "G(I,1,theta)"] {
        let s = samples.clone();
        p.add("soi", desc, move || soi_none(desc, &s, cap));
    }

    let dihedral: Vec<u32> = (1..=max_m.min(8)).collect();
    let odd: Vec<u32> = (1..=max_m.min(7)).filter(|m| m % 2 == 1).collect();
    for (tag, ms) in [
        ("TO", vec![]),
        ("primST(i)", vec![]),
        ("primST(ii)", vec![]),
        ("dihedral-cyclic", dihedral.clone()),
        ("dihedral-odd", odd),
        ("boxdot", vec![]),
        ("centralizer", dihedral),
    ] {
        p.add("conj", tag, move || conj_check(tag, ms.clone(), cap));
    }

    for (k, f) in [(Tag::T, 1), (Tag::O, 1), (Tag::O, 2), (Tag::I, 1)] {
        p.add("extpoly", format!("C_d box_{f} {k}"), move || extpoly_law(k.clone(), f, cap));
    }

    let checks: Vec<CheckResult> = p.jobs.into_par_iter().map(|(s, n, j)| run(s, n, &j)).collect();
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
    let skipped = checks.len() - passed - failed;
    Ok(SuiteReport { max_m, closure_cap: cap, checks, passed, failed, skipped })
}
