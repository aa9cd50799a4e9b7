//! The imprimitive groups G(K,H,φ) as explicit 2×2 quaternionic matrix groups.

pub mod theorem_a;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

pub use theorem_a::{psi_generates, valid_r_values, valid_r_values_bruteforce};

use crate::error::{Error, Result};
use crate::matgroup::{generated_order, Closure};
use crate::quat::{quat_is_reflection, reflection_root, QMat2, Quat, ReflectionInfo};
use crate::sgroups::{AutKind, QuotAut, Quotient, SGroup, Tag};

/// Cap used when closing matrix groups.
pub const MATRIX_CAP: usize = 40_000;

/// L_φ as a subset of K.
#[derive(Clone, Debug)]
pub struct LSet {
    /// Indices into K's element list.
    pub members: Vec<usize>,
}

/// A built G(K,H,φ).
#[derive(Clone, Debug)]
pub struct GKHGroup {
    pub descriptor: String,
    pub phi: QuotAut,
    pub group: Closure<QMat2>,
    /// Indices into `group.elements`.
    pub reflections: Vec<usize>,
    pub reflection_orders: BTreeMap<u32, usize>,
    pub family: String,
    pub standard: bool,
}

/// Summary written to JSON.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GroupRecord {
    pub descriptor: String,
    pub order: usize,
    pub reflection_count: usize,
    pub reflection_orders: BTreeMap<u32, usize>,
    pub family: String,
    pub standard: bool,
}

impl GKHGroup {
    pub fn k(&self) -> &Arc<SGroup> {
        &self.phi.quotient.k
    }

    pub fn h(&self) -> &SGroup {
        &self.phi.quotient.h
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn reflection_count(&self) -> usize {
        self.reflections.len()
    }

    pub fn reflection_matrices(&self) -> Vec<QMat2> {
        self.reflections.iter().map(|i| self.group.elements[*i].clone()).collect()
    }

    pub fn record(&self) -> GroupRecord {
        GroupRecord {
            descriptor: self.descriptor.clone(),
            order: self.order(),
            reflection_count: self.reflection_count(),
            reflection_orders: self.reflection_orders.clone(),
            family: self.family.clone(),
            standard: self.standard,
        }
    }

    /// The parametric reflection list: diag(ξ,1), diag(1,ξ) for ξ ∈ H∖1 and antidiag(ξ, ξ⁻¹) for ξ ∈ L_φ.
    pub fn parametric_reflections(&self) -> Vec<QMat2> {
        let k = self.k();
        let mut out = Vec::new();
        for h in self.h().elements() {
            if !h.is_one() {
                out.push(QMat2::diag(h.clone(), Quat::one()));
                out.push(QMat2::diag(Quat::one(), h.clone()));
            }
        }
        for x in gkh_lset(&self.phi).members {
            let e = k.element(x);
            out.push(QMat2::antidiag(e.clone(), e.conj()));
        }
        out
    }

    /// Whether the reflections generate the whole matrix group.
    pub fn reflections_generate(&self) -> Result<bool> {
        let refl = self.reflection_matrices();
        Ok(generated_order(&refl, QMat2::identity(), self.order())? == self.order())
    }
}

fn family_of(k: &Tag) -> String {
    match k {
        Tag::C(_) => "cyclic",
        Tag::D(_) => "dihedral",
        Tag::T | Tag::O | Tag::I => "polyhedral",
        _ => "custom",
    }
    .to_string()
}

/// A small generating set of the subgroup with the given mask.
fn mask_generators(k: &SGroup, mask: &[bool]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur = k.generated_mask(&gens);
    for i in 0..k.order() {
        if mask[i] && !cur[i] {
            gens.push(i);
            cur = k.generated_mask(&gens);
        }
    }
    gens
}

/// Builds G(K,H,φ) from a verified automorphism.
pub fn gkh_from_aut(phi: QuotAut, descriptor: String) -> Result<GKHGroup> {
    gkh_from_aut_capped(phi, descriptor, MATRIX_CAP)
}

pub fn gkh_from_aut_capped(phi: QuotAut, descriptor: String, cap: usize) -> Result<GKHGroup> {
    let q = phi.quotient.clone();
    let k = &q.k;
    let n = k.conductor();
    if 2 * k.order() * q.h.order() > cap {
        return Err(Error::ClosureBound(cap));
    }
    let mut elements = Vec::with_capacity(2 * k.order() * q.h.order());
    for x in 0..k.order() {
        let c = phi.image_coset(x);
        for y in &q.cosets[c] {
            let (a, b) = (k.element(x).clone(), k.element(*y).clone());
            elements.push(QMat2::diag(a.clone(), b.clone()));
            elements.push(QMat2::antidiag(b, a));
        }
    }
    let expected = 2 * k.order() * q.h.order();
    let mut gens = vec![QMat2::swap()];
    for h in mask_generators(k, &q.h_mask) {
        gens.push(QMat2::diag(k.element(h).clone(), Quat::one()));
    }
    for g in &k.closure.gens {
        let x = k.index_of(g).expect("generator of K");
        gens.push(QMat2::diag(g.clone(), k.element(phi.lift[x] as usize).clone()));
    }
    let group = Closure::generate_at(&gens, QMat2::identity(), expected.max(1) + 1, n)
        .map_err(|_| Error::SizeMismatch { expected, found: expected + 1 })?;
    if group.order() != expected || elements.len() != expected || !elements.iter().all(|e| group.contains(e)) {
        return Err(Error::SizeMismatch { expected, found: group.order() });
    }
    let mut reflections = Vec::new();
    let mut reflection_orders = BTreeMap::new();
    for (i, e) in group.elements.iter().enumerate() {
        if reflection_root(e).is_some() {
            if let ReflectionInfo::Reflection { order, .. } = quat_is_reflection(e)? {
                reflections.push(i);
                *reflection_orders.entry(order).or_insert(0) += 1;
            }
        }
    }
    let family = family_of(&k.tag);
    let standard = !matches!(k.tag, Tag::Custom(_)) && !matches!(q.h.tag, Tag::Custom(_));
    Ok(GKHGroup { descriptor, phi, group, reflections, reflection_orders, family, standard })
}

/// Builds the quotient K/H and the automorphism φ, verifying both.
pub fn make_aut(k: Arc<SGroup>, h: &str, phi: &str) -> Result<QuotAut> {
    let hs = k.subgroup(h)?;
    let q = Arc::new(Quotient::new(k, hs)?);
    QuotAut::new(phi.parse::<AutKind>()?, q)
}

/// G(K,H,φ) for a named K, a subgroup descriptor H and an automorphism descriptor φ.
pub fn gkh_build(k: Arc<SGroup>, h: &str, phi: &str) -> Result<GKHGroup> {
    let aut = make_aut(k, h, phi)?;
    let desc = format!("G({},{},{})", aut.quotient.k.tag, aut.quotient.h.tag, aut.kind);
    gkh_from_aut(aut, desc)
}

/// G(K,H,φ) from a descriptor like `G(D:3,C:2,psi:1)`.
pub fn gkh_build_desc(desc: &str) -> Result<GKHGroup> {
    let (k, h, phi) = parse_gkh_descriptor(desc)?;
    gkh_build(Arc::new(SGroup::build(k)?), &h, &phi)
}

/// As [`gkh_build_desc`] with an explicit closure cap.
pub fn gkh_build_desc_capped(desc: &str, cap: usize) -> Result<GKHGroup> {
    let (k, h, phi) = parse_gkh_descriptor(desc)?;
    let aut = make_aut(Arc::new(SGroup::build(k)?), &h, &phi)?;
    let desc = format!("G({},{},{})", aut.quotient.k.tag, aut.quotient.h.tag, aut.kind);
    gkh_from_aut_capped(aut, desc, cap)
}

pub fn parse_gkh_descriptor(desc: &str) -> Result<(Tag, String, String)> {
    let bad = || Error::InvalidDescriptor(desc.to_string());
    let body = desc.trim().strip_prefix("G(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let parts = crate::quat::split_top(body);
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((Tag::parse_ambient(parts[0])?, parts[1].trim().to_string(), parts[2].trim().to_string()))
}

pub fn gkh_lset(phi: &QuotAut) -> LSet {
    LSet { members: phi.lset_mask().iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect() }
}

/// G(K,H,φ) is a reflection group exactly when L_φ generates K.
pub fn gkh_is_reflection_group(phi: &QuotAut) -> bool {
    let k = &phi.quotient.k;
    let l = gkh_lset(phi);
    k.generated_mask(&l.members).iter().all(|b| *b)
}

pub fn gkh_reflection_count(g: &GKHGroup) -> usize {
    g.reflection_count()
}

/// Standard copy G(D_m, C_ℓ, ψ_r) = G(⟨ζ_{2m}, j⟩, ⟨ζ_{2m}^n⟩, ψ_r) with n = 2m/ℓ.
pub fn dihedral_standard(m: u32, l: u32, r: i64) -> Result<GKHGroup> {
    if (2 * m) % l != 0 {
        return Err(Error::InvalidParams(format!("{l} does not divide {}", 2 * m)));
    }
    gkh_build(Arc::new(SGroup::build(Tag::D(m))?), &format!("C:{l}"), &format!("psi:{r}"))
}

/// G(D_m, D_m, 1) or, doubled, G(D_{2m}, ⟨x², y⟩, 1).
pub fn theorem_b_build(m: u32, doubled: bool) -> Result<GKHGroup> {
    if m == 0 {
        return Err(Error::InvalidParams("m must be positive".into()));
    }
    if doubled {
        gkh_build(Arc::new(SGroup::build(Tag::D(2 * m))?), &format!("D:{m}"), "id")
    } else {
        gkh_build(Arc::new(SGroup::build(Tag::D(m))?), &format!("D:{m}"), "id")
    }
}

/// Checks diag(1,ξ)·G(K,H,φ)·diag(1,ξ)⁻¹ = G(K,H,ρ(ξ)φ) for ξ ∈ L_φ.
pub fn lemma_conjugation_holds(g: &GKHGroup, xi_index: usize) -> Result<bool> {
    let k = g.k().clone();
    let xi = k.element(xi_index).clone();
    let h = QMat2::diag(Quat::one(), xi.clone());
    let hinv = QMat2::diag(Quat::one(), xi.conj());
    let rho = AutKind::Rho(format!("{xi}"), xi);
    let composed = AutKind::Compose(Box::new(rho), Box::new(g.phi.kind.clone()));
    let aut = QuotAut::new(composed, g.phi.quotient.clone())?;
    let target = gkh_from_aut(aut, String::new())?;
    let conj: Vec<QMat2> = g.group.elements.iter().map(|e| &(&h * e) * &hinv).collect();
    let conj = Closure::from_elements(conj, Vec::new(), g.group.conductor);
    Ok(conj.same_elements(&target.group))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_law_small() {
        let g = gkh_build_desc("G(T,T,id)").unwrap();
        assert_eq!(g.order(), 1152);
        let c = gkh_build_desc("G(C:6,C:3,inv)").unwrap();
        assert_eq!(c.order(), 36);
    }

    #[test]
    fn lsets() {
        let c = make_aut(Arc::new(SGroup::build(Tag::C(6)).unwrap()), "C:2", "inv").unwrap();
        assert_eq!(gkh_lset(&c).members.len(), 6);
        let t = make_aut(Arc::new(SGroup::build(Tag::T).unwrap()), "D:2", "id").unwrap();
        assert_eq!(gkh_lset(&t).members.len(), 8);
        assert!(!gkh_is_reflection_group(&t));
        let t1 = make_aut(Arc::new(SGroup::build(Tag::T).unwrap()), "1", "id").unwrap();
        assert_eq!(gkh_lset(&t1).members.len(), 2);
        let o = make_aut(Arc::new(SGroup::build(Tag::O).unwrap()), "C:2", "id").unwrap();
        assert!(gkh_is_reflection_group(&o));
    }

    #[test]
    fn parametric_list_matches_detector() {
        for d in ["G(D:3,C:2,psi:1)", "G(D:4,1,psi:1)", "G(T,C:2,rho:delta)", "G(C:4,C:2,inv)"] {
            let g = gkh_build_desc(d).unwrap();
            let par = Closure::from_elements(g.parametric_reflections(), Vec::new(), g.group.conductor);
            let det = Closure::from_elements(g.reflection_matrices(), Vec::new(), g.group.conductor);
            assert!(par.same_elements(&det), "{d}");
        }
    }

    #[test]
    fn descriptor_errors() {
        assert!(matches!(gkh_build_desc("G(T,T)"), Err(Error::InvalidDescriptor(_))));
        assert!(matches!(gkh_build_desc("H(T,T,id)"), Err(Error::InvalidDescriptor(_))));
        assert!(matches!(gkh_build_desc("G(T,T,psi:1)"), Err(Error::InvalidAutomorphism(_))));
        assert!(matches!(dihedral_standard(3, 4, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn theorem_b_orders() {
        assert_eq!(theorem_b_build(1, false).unwrap().order(), 32);
        assert_eq!(theorem_b_build(2, false).unwrap().order(), 128);
        assert_eq!(theorem_b_build(2, true).unwrap().order(), 256);
    }

    #[test]
    fn conjugation_by_diag_twists_phi() {
        let g = gkh_build_desc("G(D:4,C:2,psi:1)").unwrap();
        for x in gkh_lset(&g.phi).members.into_iter().take(4) {
            assert!(lemma_conjugation_holds(&g, x).unwrap());
        }
    }
}
