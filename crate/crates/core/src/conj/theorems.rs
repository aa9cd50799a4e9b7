use std::collections::BTreeMap;

use serde::Serialize;

use super::{conjugate_group, groups_equal, st_build, Witness};
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::extpoly::extpoly_build_desc;
use crate::gkh::gkh_build_desc;
use crate::matgroup::{common_conductor, Closure};
use crate::quat::{consts, quat_is_reflection, QMat2, Quat, ReflectionInfo};
use crate::soi::{soi_preserved, MatrixGroup, SoI};

pub const THEOREM_TAGS: [&str; 7] = ["TO", "primST(i)", "primST(ii)", "dihedral-cyclic", "dihedral-odd", "boxdot", "centralizer"];

/// Restricts the instances that are checked.
#[derive(Clone, Debug, Default)]
pub struct ConjOptions {
    pub m: Option<u32>,
    pub r: Option<Rat>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Instance {
    pub params: BTreeMap<String, String>,
    pub witnesses: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConjReport {
    pub theorem: String,
    pub instances: Vec<Instance>,
}

impl ConjReport {
    pub fn pass(&self) -> bool {
        !self.instances.is_empty() && self.instances.iter().all(|i| i.pass)
    }
}

fn gkh(desc: &str) -> Result<Closure<QMat2>> {
    Ok(gkh_build_desc(desc)?.group)
}

fn extpoly(desc: &str) -> Result<Closure<QMat2>> {
    let g = extpoly_build_desc(desc)?;
    let els = g.elements();
    let n = common_conductor(els.iter());
    Ok(Closure::from_elements(els, g.generator_matrices(), n))
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Applies the witnesses in order and compares with the target after each step that has one.
fn chain(start: &Closure<QMat2>, steps: &[(Witness, Option<&Closure<QMat2>>)]) -> Result<(bool, Vec<String>)> {
    let mut cur = start.clone();
    let mut ok = true;
    let mut names = Vec::new();
    for (w, target) in steps {
        ok &= w.is_sane();
        cur = conjugate_group(&cur, w)?;
        names.push(w.label.clone());
        if let Some(t) = target {
            ok &= groups_equal(&cur, t);
        }
    }
    Ok((ok, names))
}

fn r1(theta: Quat, label: &str) -> Result<Witness> {
    Witness::r(Rat::one(), theta, label)
}

fn diag1(b: Quat, label: &str) -> Result<Witness> {
    Witness::diag(Quat::one(), b, label)
}

fn r_samples(opts: &ConjOptions) -> Vec<Rat> {
    match &opts.r {
        Some(r) => vec![r.clone()],
        None => vec![Rat::one(), Rat::new(1, 2).expect("nonzero"), Rat::int(2)],
    }
}

fn m_values(opts: &ConjOptions, max: u32, odd: bool) -> Vec<u32> {
    match opts.m {
        Some(m) => vec![m],
        None => (1..=max).filter(|m| !odd || m % 2 == 1).collect(),
    }
}

fn reflection_orders(g: &Closure<QMat2>) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for e in &g.elements {
        if let ReflectionInfo::Reflection { order, .. } = quat_is_reflection(e)? {
            out.push(order);
        }
    }
    Ok(out)
}

fn theorem_to() -> Result<Vec<Instance>> {
    let start = gkh("G(T,C:2,rho:delta)")?;
    let mid = gkh("G(O,1,rho:delta*beta)")?;
    let end = gkh("G(O,1,beta)")?;
    let (pass, witnesses) =
        chain(&start, &[(r1(consts::delta(), "delta")?, Some(&mid)), (diag1(consts::delta(), "diag(1,delta)")?, Some(&end))])?;
    Ok(vec![Instance {
        params: params(&[("from", "G(T,C:2,rho:delta)".into()), ("to", "G(O,1,beta)".into())]),
        witnesses,
        pass,
    }])
}

fn theorem_prim_st_i() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (src, st, count) in [("G(T,1,rho:delta)", "ST(12)", 12), ("G(O,1,rho:delta)", "ST(13)", 18)] {
        let target = st_build(st)?.group;
        let (pass, witnesses) = chain(&gkh(src)?, &[(Witness::m_prim(), Some(&target))])?;
        let refl = reflection_orders(&target)?;
        out.push(Instance {
            params: params(&[("from", src.into()), ("to", st.into())]),
            witnesses,
            pass: pass && refl.len() == count && refl.iter().all(|o| *o == 2),
        });
    }
    let target = st_build("ST(22)")?.group;
    let d = Witness::diag(Quat::one(), Quat::from_int(-1), "D")?;
    let (pass, witnesses) = chain(&gkh("G(I,1,rho:j)")?, &[(r1(Quat::k(), "k")?, None), (d, Some(&target))])?;
    let refl = reflection_orders(&target)?;
    out.push(Instance {
        params: params(&[("from", "G(I,1,rho:j)".into()), ("to", "ST(22)".into())]),
        witnesses,
        pass: pass && refl.len() == 30 && refl.iter().all(|o| *o == 2),
    });
    Ok(out)
}

fn theorem_prim_st_ii(opts: &ConjOptions) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (desc, theta, label) in
        [("G(T,1,rho:delta)", consts::delta(), "delta"), ("G(O,1,rho:delta)", consts::delta(), "delta"), ("G(I,1,rho:j)", Quat::j(), "j")]
    {
        let g = gkh(desc)?;
        for r in r_samples(opts) {
            let w = Witness::r(r.clone(), theta.clone(), label)?;
            let (pass, witnesses) = chain(&g, &[(w, Some(&g))])?;
            out.push(Instance { params: params(&[("group", desc.into()), ("r", r.to_string())]), witnesses, pass });
        }
    }
    Ok(out)
}

fn theorem_dihedral_cyclic(opts: &ConjOptions) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for m in m_values(opts, 8, false) {
        let src = gkh(&format!("G(D:{m},1,psi:1)"))?;
        let target = gkh(&format!("G(C:{},C:2,inv)", 2 * m))?;
        let st = st_build(&format!("ST({},{m},2)", 2 * m))?.group;
        let w = diag1(Quat::j(), "diag(1,j)")?.then_after(&Witness::t());
        let (mut pass, mut witnesses) = chain(&src, &[(w, Some(&target))])?;
        pass &= groups_equal(&target, &st);
        for r in r_samples(opts) {
            let (ok, names) = chain(&src, &[(Witness::r(r, Quat::i(), "i")?, Some(&src))])?;
            pass &= ok;
            witnesses.extend(names);
        }
        out.push(Instance { params: params(&[("m", m.to_string())]), witnesses, pass });
    }
    Ok(out)
}

fn theorem_dihedral_odd(opts: &ConjOptions) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for m in m_values(opts, 7, true) {
        if m % 2 == 0 {
            return Err(Error::InvalidParams(format!("m = {m} must be odd")));
        }
        let src = gkh(&format!("G(D:{m},C:2,psi:1)"))?;
        let target = gkh(&format!("G(D:{},1,psi:{})", 2 * m, 2 * m - 1))?;
        let (pass, witnesses) = chain(&src, &[(r1(Quat::i(), "i")?, None), (diag1(Quat::j(), "diag(1,j)")?, Some(&target))])?;
        out.push(Instance { params: params(&[("m", m.to_string())]), witnesses, pass });
    }
    Ok(out)
}

fn theorem_boxdot() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (src, to) in [("Cbox(4,O)", "G(O,C:2,1)"), ("Cbox(4,I)", "G(I,C:2,1)")] {
        let target = gkh(to)?;
        let (pass, witnesses) = chain(&extpoly(src)?, &[(r1(Quat::j(), "j")?, None), (diag1(Quat::k(), "diag(1,k)")?, Some(&target))])?;
        out.push(Instance { params: params(&[("from", src.into()), ("to", to.into())]), witnesses, pass });
    }
    let s = Quat::from_complex(consts::inv_sqrt2());
    let eps = &(&s * &Quat::i()) + &(&s * &Quat::j());
    let mid = gkh("G(T,C:2,rho:delta)")?;
    let end = gkh("G(O,1,beta)")?;
    let (pass, witnesses) = chain(
        &extpoly("Cbox2(4,O)")?,
        &[
            (r1(Quat::j(), "j")?, None),
            (diag1(eps, "diag(1,(i+j)/sqrt2)")?, Some(&mid)),
            (r1(consts::delta(), "delta")?, None),
            (diag1(consts::delta(), "diag(1,delta)")?, Some(&end)),
        ],
    )?;
    out.push(Instance { params: params(&[("from", "Cbox2(4,O)".into()), ("to", "G(O,1,beta)".into())]), witnesses, pass });
    Ok(out)
}

fn theorem_centralizer(opts: &ConjOptions) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let samples: Vec<Rat> = ["1", "-1", "1/2", "2/3", "0"].iter().map(|s| s.parse().expect("rational literal")).collect();
    for m in m_values(opts, 8, false) {
        let g = gkh_build_desc(&format!("G(D:{m},1,psi:1)"))?;
        let gens = g.generator_matrices();
        let mut pass = true;
        let mut witnesses = Vec::new();
        for p in &samples {
            for q in &samples {
                if p.is_zero() && q.is_zero() {
                    continue;
                }
                let a = Quat::from_rat(p);
                let b = Quat::i().mul_rat(q);
                let c = QMat2::new(a.clone(), b.clone(), b.clone(), a.clone());
                pass &= gens.iter().all(|x| &c * x == x * &c);
                pass &= soi_preserved(&gens, &SoI::new([a.clone(), b.clone()], [b, a]));
            }
        }
        witnesses.push("[[p,qi],[qi,p]]".to_string());
        out.push(Instance { params: params(&[("m", m.to_string())]), witnesses, pass });
    }
    Ok(out)
}

/// Runs the explicit witness chain for one theorem tag.
pub fn verify_conjugacy_theorem(tag: &str, opts: &ConjOptions) -> Result<ConjReport> {
    let instances = match tag {
        "TO" => theorem_to()?,
        "primST(i)" => theorem_prim_st_i()?,
        "primST(ii)" => theorem_prim_st_ii(opts)?,
        "dihedral-cyclic" => theorem_dihedral_cyclic(opts)?,
        "dihedral-odd" => theorem_dihedral_odd(opts)?,
        "boxdot" => theorem_boxdot()?,
        "centralizer" => theorem_centralizer(opts)?,
        _ => return Err(Error::InvalidParams(format!("unknown theorem {tag}"))),
    };
    Ok(ConjReport { theorem: tag.to_string(), instances })
}
