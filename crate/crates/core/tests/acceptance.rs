//! The ten acceptance criteria, one line each.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::strategy::Strategy;
use proptest::test_runner::{Config as PConfig, RngAlgorithm, TestError, TestRng, TestRunner};

use qrg::conj::{verify_conjugacy_theorem, ConjOptions};
use qrg::extpoly::extpoly_is_reflection_group;
use qrg::gkh::theorem_a::{valid_r_values, valid_r_values_bruteforce};
use qrg::gkh::{gkh_build_desc, gkh_from_aut, gkh_is_reflection_group};
use qrg::sgroups::{sgroup_normal_subgroups, AutKind, QuotAut, Quotient};
use qrg::soi::{soi_classify, soi_preserved_by, soi_search_structured, Mode};
use qrg::{Rat, SGroup, Tag};

const CRITERION_1_BUDGET: Duration = Duration::from_secs(1);
const CRITERION_2_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_orders() -> Outcome {
    let t = Instant::now();
    for m in 1..=24 {
        let n = SGroup::build(Tag::C(m)).map_err(|e| e.to_string())?.order();
        ensure(n == m as usize, || format!("|C({m})| = {n}"))?;
    }
    for m in 1..=12 {
        let n = SGroup::build(Tag::D(m)).map_err(|e| e.to_string())?.order();
        ensure(n == 4 * m as usize, || format!("|D({m})| = {n}"))?;
    }
    for (tag, want) in [(Tag::T, 24), (Tag::O, 48), (Tag::I, 120)] {
        let n = SGroup::build(tag.clone()).map_err(|e| e.to_string())?.order();
        ensure(n == want, || format!("|{tag}| = {n}"))?;
    }
    let dt = t.elapsed();
    ensure(dt < CRITERION_1_BUDGET, || format!("took {dt:?}"))?;
    Ok(format!("{dt:.2?}"))
}

fn aut_candidates(k: &Tag) -> Vec<String> {
    let mut v: Vec<String> = ["id", "inv"].iter().map(|s| s.to_string()).collect();
    match k {
        Tag::D(m) => v.extend((2..2 * m).map(|r| format!("psi:{r}")).chain(std::iter::once("psi:1".to_string()))),
        Tag::T | Tag::O => v.extend(["rho:delta", "beta", "rho:i", "rho:delta*beta"].iter().map(|s| s.to_string())),
        Tag::I => v.extend(["rho:j", "theta", "rho:i"].iter().map(|s| s.to_string())),
        _ => {}
    }
    v
}

fn c2_order_law() -> Outcome {
    let mut ks: Vec<Tag> = (1..=24).map(Tag::C).collect();
    ks.extend((1..=12).map(Tag::D));
    ks.extend([Tag::T, Tag::O, Tag::I]);
    let mut built = 0;
    for kt in ks {
        let k = Arc::new(SGroup::build(kt.clone()).map_err(|e| e.to_string())?);
        for h in sgroup_normal_subgroups(&k) {
            let (h_order, h_tag) = (h.order(), h.tag.clone());
            let q = Arc::new(Quotient::new(k.clone(), h).map_err(|e| e.to_string())?);
            for phi in aut_candidates(&kt) {
                let Ok(kind) = phi.parse::<AutKind>() else { continue };
                let Ok(aut) = QuotAut::new(kind, q.clone()) else { continue };
                let want = 2 * k.order() * h_order;
                let g = gkh_from_aut(aut, String::new()).map_err(|e| format!("G({kt},{h_tag},{phi}): {e}"))?;
                ensure(g.order() == want, || format!("G({kt},{h_tag},{phi}) has order {}", g.order()))?;
                built += 1;
            }
        }
    }
    let t = Instant::now();
    let g = gkh_build_desc("G(I,I,1)").map_err(|e| e.to_string())?;
    let dt = t.elapsed();
    ensure(g.order() == 28_800, || format!("|G(I,I,1)| = {}", g.order()))?;
    ensure(dt < CRITERION_2_BUDGET, || format!("G(I,I,1) took {dt:?}"))?;
    Ok(format!("{built} groups; 28800 in {dt:.2?}"))
}

const TABLE2: [(&str, usize); 15] = [
    ("G(T,T,1)", 1152),
    ("G(T,D:2,rho:delta)", 384),
    ("G(T,C:2,rho:delta)", 96),
    ("G(T,1,rho:delta)", 48),
    ("G(O,O,1)", 4608),
    ("G(O,T,1)", 2304),
    ("G(O,D:2,1)", 768),
    ("G(O,C:2,1)", 192),
    ("G(O,1,beta)", 96),
    ("G(O,1,rho:delta)", 96),
    ("G(I,I,1)", 28800),
    ("G(I,C:2,1)", 480),
    ("G(I,C:2,theta)", 480),
    ("G(I,1,theta)", 240),
    ("G(I,1,rho:j)", 240),
];

fn c3_table2() -> Outcome {
    for (desc, want) in TABLE2 {
        let g = gkh_build_desc(desc).map_err(|e| e.to_string())?;
        ensure(g.order() == want, || format!("{desc}: order {}", g.order()))?;
        let generated = g.reflections_generate().map_err(|e| e.to_string())?;
        ensure(generated && gkh_is_reflection_group(&g.phi), || format!("{desc}: reflection status disagrees"))?;
    }
    Ok("15 rows".into())
}

fn c4_theorem_a() -> Outcome {
    let mut cases = 0;
    for m in 1..=24 {
        for l in (1..=2 * m).filter(|l| (2 * m) % l == 0) {
            let (a, b) = (valid_r_values(m, l), valid_r_values_bruteforce(m, l));
            ensure(a == b, || format!("m={m} l={l}: {a:?} vs {b:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (m, l) pairs, 0 discrepancies"))
}

fn c5_reflection_counts() -> Outcome {
    for (desc, want) in [("G(T,1,rho:delta)", 12), ("G(O,1,rho:delta)", 18), ("G(I,1,rho:j)", 30)] {
        let n = gkh_build_desc(desc).map_err(|e| e.to_string())?.reflection_count();
        ensure(n == want, || format!("{desc}: {n} reflections"))?;
    }
    Ok("12, 18, 30".into())
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn c6_soi() -> Outcome {
    let samples: Vec<Rat> = ["1", "-1", "1/2", "-1/2", "2/3"].iter().map(|s| s.parse().unwrap()).collect();
    let mut rows: Vec<(String, BTreeSet<String>, bool)> = vec![
        ("G(D:1,1,psi:1)".into(), set(&["(1,1)", "(1,r*i)", "(1,j)", "(1,r*k)"]), false),
        ("G(D:2,1,psi:1)".into(), set(&["(1,1)", "(1,r*i)", "(1,j)", "(1,k)"]), false),
        ("G(D:1,C:2,psi:1)".into(), set(&["(1,1)", "(1,i)", "(1,j)", "(1,k)"]), false),
        ("G(D:2,C:2,psi:1)".into(), set(&["(1,1)", "(1,i)", "(1,j)", "(1,k)"]), false),
    ];
    for m in 3..=8 {
        rows.push((format!("G(D:{m},1,psi:1)"), set(&["(1,1)", "(1,r*i)"]), false));
        rows.push((format!("G(D:{m},C:2,psi:1)"), set(&["(1,1)", "(1,i)"]), false));
    }
    for m in [3, 5, 7] {
        rows.push((format!("G(D:{},1,psi:{})", 2 * m, 2 * m - 1), set(&["(1,j)", "(1,k)"]), false));
    }
    for (desc, sys) in [
        ("G(T,C:2,rho:delta)", "<<(1,delta),(delta,1)>>"),
        ("G(T,1,rho:delta)", "<<(1,r*delta),(r*delta,1)>>"),
        ("G(O,C:2,1)", "<<(1,1),(1,-1)>>"),
        ("G(O,1,beta)", "<<(1,1),(1,-1)>>"),
        ("G(O,1,rho:delta)", "<<(1,r*delta),(r*delta,1)>>"),
        ("G(I,C:2,1)", "<<(1,1),(1,-1)>>"),
        ("G(I,1,rho:j)", "<<(1,r*j),(r*j,1)>>"),
    ] {
        rows.push((desc.into(), set(&[sys]), true));
    }
    let n = rows.len();
    for (desc, want, full) in rows {
        let c = soi_classify(&desc).map_err(|e| e.to_string())?;
        let got: BTreeSet<String> =
            c.report().systems.into_iter().map(|s| if full { format!("<<{},{}>>", s.u, s.v) } else { s.u }).collect();
        ensure(got == want, || format!("{desc}: {got:?}"))?;
        let g = gkh_build_desc(&desc).map_err(|e| e.to_string())?;
        let inst = c.instances(&samples);
        ensure(inst.iter().all(|f| soi_preserved_by(&g, &f.soi, Mode::Generators)), || format!("{desc}: instance not preserved"))?;
        let found = soi_search_structured(&g, &samples);
        ensure(g.h().order() <= 2 || found.is_empty(), || format!("{desc}: |H| > 2 with extra systems"))?;
        ensure(found.iter().all(|f| c.admits(&f.soi)), || format!("{desc}: search found an unclassified system"))?;
    }
    for desc in ["G(I,C:2,theta)", "G(I,1,theta)"] {
        let g = gkh_build_desc(desc).map_err(|e| e.to_string())?;
        let found = soi_search_structured(&g, &samples);
        ensure(found.is_empty(), || format!("{desc}: {} systems", found.len()))?;
    }
    Ok(format!("{n} groups plus the two Θ groups"))
}

fn c7_witnesses() -> Outcome {
    let mut n = 0;
    for tag in ["TO", "primST(i)", "primST(ii)", "dihedral-cyclic", "dihedral-odd", "boxdot"] {
        let rep = verify_conjugacy_theorem(tag, &ConjOptions::default()).map_err(|e| e.to_string())?;
        for inst in &rep.instances {
            ensure(inst.pass, || format!("{tag} {:?}", inst.params))?;
        }
        let ms: BTreeSet<u32> = rep.instances.iter().filter_map(|i| i.params.get("m")).map(|m| m.parse().unwrap()).collect();
        match tag {
            "dihedral-cyclic" => ensure(ms == (1..=8).collect(), || format!("{tag} covered {ms:?}"))?,
            "dihedral-odd" => ensure(ms == [1, 3, 5, 7].into(), || format!("{tag} covered {ms:?}"))?,
            _ => {}
        }
        n += rep.instances.len();
    }
    Ok(format!("{n} instances"))
}

fn c8_extpoly() -> Outcome {
    let law = |d: u32, f: u32, k: &Tag| match (k, f) {
        (Tag::T, 1) => d % 6 == 0,
        (Tag::O, 1) => d % 4 == 0,
        (Tag::O, 2) => d % 4 == 0 && d % 16 != 0,
        (Tag::I, 1) => d % 4 == 0 || d % 6 == 0 || d % 10 == 0,
        _ => unreachable!(),
    };
    for (k, f) in [(Tag::T, 1), (Tag::O, 1), (Tag::O, 2), (Tag::I, 1)] {
        for d in (2..=48).step_by(2).filter(|d| d % f == 0) {
            let got = extpoly_is_reflection_group(d, f, k.clone());
            ensure(got == law(d, f, &k), || format!("d={d} f={f} {k}: {got}"))?;
        }
    }
    for d in [16, 32, 48] {
        ensure(!extpoly_is_reflection_group(d, 2, Tag::O), || format!("C{d} box_2 O generated by reflections"))?;
    }
    Ok("even d <= 48".into())
}

fn runner(cases: u32) -> TestRunner {
    let cfg = PConfig { cases, failure_persistence: None, ..PConfig::default() };
    TestRunner::new_with_rng(cfg, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn fmt<T: std::fmt::Debug>(e: TestError<T>) -> String {
    e.to_string()
}

fn c9_properties() -> Outcome {
    runner(1000).run(&(common::cyc(), common::cyc(), common::cyc()), |(a, b, c)| common::field_axioms(&a, &b, &c)).map_err(fmt)?;
    runner(1000).run(&(common::quat(), common::quat()), |(p, q)| common::norm_multiplicative(&p, &q)).map_err(fmt)?;
    runner(200).run(&(common::theta_arg(), common::theta_arg()), |(a, b)| common::theta_multiplicative(&a, &b)).map_err(fmt)?;
    let rows = common::table4();
    let strat = (0..rows.len(), common::nonzero_rat()).boxed();
    runner(200).run(&strat, |(i, r)| common::witness_sane(&rows[i], &r)).map_err(fmt)?;
    Ok("1000 + 1000 + 200 + 200 cases, 0 failures".into())
}

fn c10_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_qrg");
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(exe).args(["verify", "--max-m", "8"]).output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(!a.is_empty() && a == b, || "reports differ".into())?;
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("subgroup orders", c1_orders),
        ("order law", c2_order_law),
        ("table 2 reproduction", c3_table2),
        ("gcd criterion vs brute force", c4_theorem_a),
        ("reflection counts", c5_reflection_counts),
        ("systems of imprimitivity", c6_soi),
        ("witness chains", c7_witnesses),
        ("extended polyhedral law", c8_extpoly),
        ("property suites", c9_properties),
        ("determinism of qrg verify", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let dt = t.elapsed();
        match res {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{dt:.1?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{dt:.1?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
