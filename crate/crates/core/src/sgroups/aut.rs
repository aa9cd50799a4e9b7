use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{Quotient, Tag};
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::quat::{consts, quat_const, Const, Quat};

/// How an automorphism of K/H is specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutKind {
    Identity,
    /// x^a y^b ↦ x^{ar+bm} y^b on binary dihedral groups.
    Psi(i64),
    /// Conjugation η ↦ ξηξ⁻¹, with the label used to name ξ.
    Rho(String, Quat),
    /// Identity on T, negation on O∖T.
    Beta,
    /// The outer automorphism of I with i ↦ −i, σ ↦ −½(τ + i − τ⁻¹k).
    Theta,
    /// ξ ↦ ξ⁻¹ on cyclic groups.
    Inv,
    /// Apply the right factor first.
    Compose(Box<AutKind>, Box<AutKind>),
}

impl fmt::Display for AutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutKind::Identity => write!(f, "id"),
            AutKind::Psi(r) => write!(f, "psi:{r}"),
            AutKind::Rho(l, _) => write!(f, "rho:{l}"),
            AutKind::Beta => write!(f, "beta"),
            AutKind::Theta => write!(f, "theta"),
            AutKind::Inv => write!(f, "inv"),
            AutKind::Compose(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// Parses a quaternion given by name (`i`, `delta`, `zeta(6)`, …), optionally negated, or as a literal.
pub fn parse_quat_label(s: &str) -> Result<Quat> {
    let s = s.trim();
    if let Some(r) = s.strip_prefix('-') {
        return Ok(-&parse_quat_label(r)?);
    }
    if s == "1" {
        return Ok(Quat::one());
    }
    if s.starts_with("q[") || s.starts_with("q{") {
        return s.parse();
    }
    match quat_const(s)? {
        Const::Quat(q) => Ok(q),
        Const::Scalar(_) => Err(Error::InvalidDescriptor(s.to_string())),
    }
}

impl FromStr for AutKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<AutKind> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('*') {
            return Ok(AutKind::Compose(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let bad = || Error::InvalidDescriptor(s.to_string());
        if let Some(r) = s.strip_prefix("psi:") {
            return Ok(AutKind::Psi(r.trim().parse().map_err(|_| bad())?));
        }
        if let Some(r) = s.strip_prefix("rho:") {
            return Ok(AutKind::Rho(r.trim().to_string(), parse_quat_label(r)?));
        }
        match s {
            "id" | "1" => Ok(AutKind::Identity),
            "beta" => Ok(AutKind::Beta),
            "theta" => Ok(AutKind::Theta),
            "inv" => Ok(AutKind::Inv),
            _ => Err(bad()),
        }
    }
}

/// A verified automorphism φ of K/H with φ² = 1.
#[derive(Debug, Clone)]
pub struct QuotAut {
    pub kind: AutKind,
    pub quotient: Arc<Quotient>,
    /// An element map K → K inducing φ.
    pub lift: Vec<u16>,
    /// Coset id ↦ coset id.
    pub table: Vec<u16>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidAutomorphism(msg.into())
}

fn theta_sigma_image() -> Quat {
    use crate::exactnum::CycNum;
    let t = consts::tau();
    let tinv = &t - &CycNum::one(5);
    let h = Rat::new(1, 2).unwrap();
    let a0 = -&t.mul_rat(&h);
    let a1 = CycNum::from_rat(1, &-&h);
    Quat::make([&a0, &a1, &CycNum::zero(1), &tinv.mul_rat(&h)]).unwrap()
}

fn element_lift(kind: &AutKind, q: &Quotient) -> Result<Vec<u16>> {
    let k = &q.k;
    let n = k.order();
    Ok(match kind {
        AutKind::Identity => (0..n as u16).collect(),
        AutKind::Psi(r) => {
            let Tag::D(m) = k.tag else { return Err(invalid("psi needs a binary dihedral group")) };
            (0..n)
                .map(|i| {
                    let (a, b) = k.dihedral_coords(i).unwrap();
                    let a2 = a as i64 * r + b as i64 * m as i64;
                    k.dihedral_index(a2, b).unwrap() as u16
                })
                .collect()
        }
        AutKind::Rho(label, xi) => {
            if !xi.is_unit() {
                return Err(invalid(format!("{label} is not a unit")));
            }
            let xinv = xi.conj();
            let mut out = Vec::with_capacity(n);
            for e in k.elements() {
                let c = &(xi * e) * &xinv;
                let idx = k.index_of(&c).ok_or_else(|| invalid(format!("{label} does not normalize {}", k.tag)))?;
                out.push(idx as u16);
            }
            out
        }
        AutKind::Beta => {
            if k.tag != Tag::O {
                return Err(invalid("beta is defined on O"));
            }
            let t = k.subgroup("T")?;
            let neg = Quat::from_int(-1);
            k.elements()
                .iter()
                .map(|e| if t.contains(e) { k.index_of(e) } else { k.index_of(&(&neg * e)) })
                .map(|i| i.unwrap() as u16)
                .collect()
        }
        AutKind::Theta => {
            if k.tag != Tag::I || k.closure.gens.len() != 2 {
                return Err(invalid("theta is defined on I = <i, sigma>"));
            }
            let images = [-&Quat::i(), theta_sigma_image()];
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                let w = k.word(i).ok_or_else(|| invalid("missing generator words"))?;
                let mut acc = Quat::one();
                for g in w {
                    acc = &acc * &images[g as usize];
                }
                out.push(k.index_of(&acc).ok_or_else(|| invalid("theta image leaves I"))? as u16);
            }
            for a in 0..n {
                for b in 0..n {
                    if out[k.mul_idx(a, b)] as usize != k.mul_idx(out[a] as usize, out[b] as usize) {
                        return Err(invalid("theta is not multiplicative"));
                    }
                }
            }
            out
        }
        AutKind::Inv => {
            if !matches!(k.tag, Tag::C(_)) {
                return Err(invalid("inv is defined on cyclic groups"));
            }
            (0..n).map(|i| k.inv_idx(i) as u16).collect()
        }
        AutKind::Compose(a, b) => {
            let la = element_lift(a, q)?;
            let lb = element_lift(b, q)?;
            lb.iter().map(|x| la[*x as usize]).collect()
        }
    })
}

impl QuotAut {
    pub fn new(kind: AutKind, quotient: Arc<Quotient>) -> Result<QuotAut> {
        let q = &quotient;
        let lift = element_lift(&kind, q)?;
        let nc = q.order();
        let table: Vec<u16> = (0..nc).map(|c| q.coset_of[lift[q.cosets[c][0]] as usize]).collect();
        for (x, img) in lift.iter().enumerate() {
            if q.coset_of[*img as usize] != table[q.coset_of[x] as usize] {
                return Err(invalid(format!("{kind} is not well defined modulo {}", q.h.tag)));
            }
        }
        let mut hit = vec![false; nc];
        for t in &table {
            hit[*t as usize] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(invalid(format!("{kind} is not bijective")));
        }
        for a in 0..nc {
            for b in 0..nc {
                if table[q.coset_mul(a, b)] as usize != q.coset_mul(table[a] as usize, table[b] as usize) {
                    return Err(invalid(format!("{kind} is not multiplicative")));
                }
            }
        }
        if (0..nc).any(|c| table[table[c] as usize] as usize != c) {
            return Err(invalid(format!("{kind} does not square to the identity")));
        }
        Ok(QuotAut { kind, quotient, lift, table })
    }

    pub fn apply_coset(&self, c: usize) -> usize {
        self.table[c] as usize
    }

    /// φ(Hξ) as a coset id, for ξ given by index.
    pub fn image_coset(&self, x: usize) -> usize {
        self.table[self.quotient.coset_of[x] as usize] as usize
    }

    /// Membership mask of L_φ = {ξ : φ(Hξ) = Hξ⁻¹}.
    pub fn lset_mask(&self) -> Vec<bool> {
        let q = &self.quotient;
        (0..q.k.order()).map(|x| self.image_coset(x) == q.coset_of[q.k.inv_idx(x)] as usize).collect()
    }

    /// Same coset table as another automorphism of the same quotient.
    pub fn same_map(&self, o: &QuotAut) -> bool {
        self.table == o.table
    }
}

/// Builds and verifies an automorphism of `quotient`.
pub fn aut_make(kind: AutKind, quotient: Arc<Quotient>) -> Result<QuotAut> {
    QuotAut::new(kind, quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sgroups::SGroup;

    fn quot(k: Tag, h: &str) -> Arc<Quotient> {
        let k = Arc::new(SGroup::build(k).unwrap());
        let h = k.subgroup(h).unwrap();
        Arc::new(Quotient::new(k, h).unwrap())
    }

    #[test]
    fn descriptors_parse() {
        for s in ["id", "psi:5", "rho:delta", "beta", "theta", "inv", "rho:delta*beta", "rho:-j"] {
            let k: AutKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert!("psi:x".parse::<AutKind>().is_err());
        assert!("rho:tau".parse::<AutKind>().is_err());
        assert!("frob".parse::<AutKind>().is_err());
    }

    #[test]
    fn psi1_matches_rho_i() {
        let q = quot(Tag::D(3), "1");
        let psi = aut_make("psi:1".parse().unwrap(), q.clone()).unwrap();
        let rho = aut_make("rho:i".parse().unwrap(), q.clone()).unwrap();
        assert!(psi.same_map(&rho));
        let k = &q.k;
        for a in 0..6 {
            let x = k.dihedral_index(a, 0).unwrap();
            assert_eq!(psi.image_coset(x), q.coset_of[x] as usize);
            let xy = k.dihedral_index(a, 1).unwrap();
            assert_eq!(psi.image_coset(xy), q.coset_of[k.inv_idx(xy)] as usize);
        }
    }

    #[test]
    fn beta_fixes_t_and_negates_the_rest() {
        let q = quot(Tag::O, "1");
        let b = aut_make(AutKind::Beta, q.clone()).unwrap();
        let t = q.k.subgroup("T").unwrap();
        let fixed = (0..48).filter(|x| b.lift[*x] as usize == *x).count();
        assert_eq!(fixed, 24);
        for x in 0..48 {
            let e = q.k.element(x);
            let img = q.k.element(b.lift[x] as usize);
            if t.contains(e) {
                assert_eq!(img, e);
            } else {
                assert_eq!(img, &-e);
            }
        }
    }

    #[test]
    fn theta_generator_images_and_lset() {
        let q = quot(Tag::I, "1");
        let th = aut_make(AutKind::Theta, q.clone()).unwrap();
        let s = q.k.index_of(&consts::sigma()).unwrap();
        assert_eq!(q.k.element(th.lift[s] as usize), &theta_sigma_image());
        assert_eq!(th.lset_mask().iter().filter(|b| **b).count(), 20);
        let q2 = quot(Tag::I, "C:2");
        let th2 = aut_make(AutKind::Theta, q2).unwrap();
        assert_eq!(th2.lset_mask().iter().filter(|b| **b).count(), 20);
    }

    #[test]
    fn invalid_automorphisms() {
        let q = quot(Tag::D(4), "1");
        assert!(aut_make(AutKind::Psi(2), q.clone()).is_err());
        assert!(aut_make(AutKind::Beta, q.clone()).is_err());
        assert!(aut_make(AutKind::Theta, q.clone()).is_err());
        let t = quot(Tag::T, "1");
        let g = "rho:zeta(3)".parse().unwrap();
        assert!(matches!(aut_make(g, t), Err(Error::InvalidAutomorphism(_))));
    }
}
