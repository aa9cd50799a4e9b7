//! Finite subgroups of the unit quaternions, their quotients and quotient automorphisms.

mod aut;
mod normal;
mod quotient;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_integer::Integer;

pub use aut::{aut_make, parse_quat_label, AutKind, QuotAut};
pub use quotient::{quotient_identify, QuotTag, Quotient};

use crate::error::{Error, Result};
use crate::matgroup::{Closure, GroupElem, MatKey};
use crate::quat::{consts, Quat};

/// Default closure cap for quaternion groups.
pub const DEFAULT_CAP: usize = 10_000;

/// Name of a finite quaternion group or of a distinguished subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    /// Cyclic of the given order; `C(1)` is the trivial group.
    C(u32),
    /// Binary dihedral ⟨ζ_{2m}, j⟩ of order 4m.
    D(u32),
    /// ⟨x², xy⟩ inside D(2m).
    DPrime(u32),
    T,
    O,
    I,
    Custom(String),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::C(1) => write!(f, "1"),
            Tag::C(m) => write!(f, "C:{m}"),
            Tag::D(m) => write!(f, "D:{m}"),
            Tag::DPrime(m) => write!(f, "D':{m}"),
            Tag::T => write!(f, "T"),
            Tag::O => write!(f, "O"),
            Tag::I => write!(f, "I"),
            Tag::Custom(s) => write!(f, "{s}"),
        }
    }
}

impl Tag {
    /// Parses an ambient group name `C:m`, `D:m`, `T`, `O`, `I`.
    pub fn parse_ambient(s: &str) -> Result<Tag> {
        let s = s.trim();
        let bad = || Error::InvalidDescriptor(s.to_string());
        let num = |r: &str| r.trim().parse::<u32>().ok().filter(|m| *m >= 1).ok_or_else(bad);
        if let Some(r) = s.strip_prefix("C:") {
            return Ok(Tag::C(num(r)?));
        }
        if let Some(r) = s.strip_prefix("D:") {
            return Ok(Tag::D(num(r)?));
        }
        match s {
            "T" => Ok(Tag::T),
            "O" => Ok(Tag::O),
            "I" => Ok(Tag::I),
            _ => Err(bad()),
        }
    }
}

/// A finite group of unit quaternions with its multiplication table.
pub struct SGroup {
    pub tag: Tag,
    pub closure: Closure<Quat>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: usize,
    /// For D(m): (a, b) with element = x^a y^b.
    dcoords: Option<Vec<(u32, u8)>>,
    foreign: RwLock<HashMap<u32, Arc<HashMap<MatKey, usize>>>>,
}

impl fmt::Debug for SGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SGroup({}, order {})", self.tag, self.order())
    }
}

pub fn named_generators(tag: &Tag) -> Result<Vec<Quat>> {
    Ok(match tag {
        Tag::C(m) => vec![consts::zeta(*m)],
        Tag::D(m) => vec![consts::zeta(2 * m), Quat::j()],
        Tag::T => vec![Quat::i(), Quat::j(), consts::varpi()],
        Tag::O => vec![Quat::i(), Quat::j(), consts::varpi(), consts::gamma()],
        Tag::I => vec![Quat::i(), consts::sigma()],
        other => return Err(Error::InvalidDescriptor(other.to_string())),
    })
}

impl SGroup {
    /// Builds a named group C(m), D(m), T, O or I by closure.
    pub fn build(tag: Tag) -> Result<SGroup> {
        SGroup::build_capped(tag, DEFAULT_CAP)
    }

    pub fn build_capped(tag: Tag, cap: usize) -> Result<SGroup> {
        let gens = named_generators(&tag)?;
        SGroup::from_generators(tag, &gens, cap)
    }

    pub fn from_generators(tag: Tag, gens: &[Quat], cap: usize) -> Result<SGroup> {
        for g in gens {
            if !g.is_unit() {
                return Err(Error::NotUnit);
            }
        }
        let closure = Closure::generate(gens, Quat::one(), cap)?;
        Ok(SGroup::from_closure(tag, closure))
    }

    pub(crate) fn from_closure(tag: Tag, closure: Closure<Quat>) -> SGroup {
        let n = closure.order();
        let mut mul = vec![0u16; n * n];
        for (a, x) in closure.elements.iter().enumerate() {
            for (b, y) in closure.elements.iter().enumerate() {
                mul[a * n + b] = closure.index_of(&(x * y)).expect("closed") as u16;
            }
        }
        let identity = closure.elements.iter().position(Quat::is_one).expect("contains 1");
        let mut inv = vec![0u16; n];
        for a in 0..n {
            inv[a] = (0..n).find(|b| mul[a * n + b] as usize == identity).expect("inverse") as u16;
        }
        let dcoords = match tag {
            Tag::D(m) => Some(dihedral_coords(m, &closure)),
            _ => None,
        };
        SGroup { tag, closure, mul, inv, identity, dcoords, foreign: RwLock::new(HashMap::new()) }
    }

    pub fn order(&self) -> usize {
        self.closure.order()
    }

    pub fn elements(&self) -> &[Quat] {
        &self.closure.elements
    }

    pub fn element(&self, i: usize) -> &Quat {
        &self.closure.elements[i]
    }

    pub fn conductor(&self) -> u32 {
        self.closure.conductor
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Index of q in the group, for q at any conductor.
    pub fn index_of(&self, q: &Quat) -> Option<usize> {
        let n = self.conductor();
        let qn = q.conductor();
        if n % qn == 0 {
            return self.closure.index_of(q);
        }
        let l = n.lcm(&qn);
        let map = {
            let r = self.foreign.read().unwrap();
            r.get(&l).cloned()
        };
        let map = match map {
            Some(m) => m,
            None => {
                let m: HashMap<MatKey, usize> =
                    self.elements().iter().enumerate().map(|(i, e)| (e.key(l), i)).collect();
                let m = Arc::new(m);
                self.foreign.write().unwrap().insert(l, m.clone());
                m
            }
        };
        map.get(&q.key(l)).copied()
    }

    pub fn contains(&self, q: &Quat) -> bool {
        self.index_of(q).is_some()
    }

    /// Element order by repeated multiplication in the table.
    pub fn elem_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != self.identity {
            cur = self.mul_idx(cur, a);
            k += 1;
        }
        k
    }

    /// Generator word of element `i` over `closure.gens`.
    pub fn word(&self, i: usize) -> Option<Vec<u16>> {
        self.closure.word(i)
    }

    /// (a, b) with element = x^a y^b, for binary dihedral groups.
    pub fn dihedral_coords(&self, i: usize) -> Option<(u32, u8)> {
        self.dcoords.as_ref().map(|c| c[i])
    }

    pub fn dihedral_index(&self, a: i64, b: u8) -> Option<usize> {
        let m = match self.tag {
            Tag::D(m) => m,
            _ => return None,
        };
        let x = consts::zeta_pow(2 * m, a);
        let q = if b == 0 { x } else { &x * &Quat::j() };
        self.index_of(&q)
    }

    /// Canonical sort key at the group's conductor.
    pub fn key(&self, i: usize) -> MatKey {
        self.element(i).key(self.conductor())
    }

    /// Subgroup generated by the given element indices, as a membership mask.
    pub fn generated_mask(&self, seeds: &[usize]) -> Vec<bool> {
        let n = self.order();
        let mut mask = vec![false; n];
        mask[self.identity] = true;
        let mut members = vec![self.identity];
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            for &s in seeds {
                let p = self.mul_idx(a, s);
                if !mask[p] {
                    mask[p] = true;
                    members.push(p);
                }
            }
            head += 1;
        }
        mask
    }

    /// Builds the subgroup with the given membership mask as its own SGroup.
    pub fn subgroup_from_mask(&self, tag: Tag, mask: &[bool]) -> SGroup {
        let elems: Vec<Quat> =
            self.elements().iter().zip(mask).filter(|(_, m)| **m).map(|(e, _)| e.clone()).collect();
        let closure = Closure::from_elements(elems, Vec::new(), self.conductor());
        SGroup::from_closure(tag, closure)
    }

    pub fn mask_of(&self, sub: &SGroup) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.order()];
        for e in sub.elements() {
            let i = self.index_of(e).ok_or_else(|| Error::InvalidParams(format!("{} is not inside {}", sub.tag, self.tag)))?;
            mask[i] = true;
        }
        Ok(mask)
    }

    /// Parses a subgroup descriptor relative to this group: `1`, `C:l`, `X^n`, `D:k`, `D':k`, `T`, `O`, `I`.
    pub fn subgroup(&self, desc: &str) -> Result<SGroup> {
        let desc = desc.trim();
        let bad = || Error::InvalidDescriptor(desc.to_string());
        let num = |r: &str| r.trim().parse::<u32>().ok().filter(|v| *v >= 1).ok_or_else(bad);
        let order = self.order() as u32;
        let (tag, seeds): (Tag, Vec<usize>) = if desc == "1" {
            (Tag::C(1), vec![])
        } else if let Some(r) = desc.strip_prefix("X^") {
            let Tag::D(m) = self.tag else { return Err(bad()) };
            let n = num(r)?;
            if (2 * m) % n != 0 {
                return Err(bad());
            }
            (Tag::C(2 * m / n), vec![self.dihedral_index(n as i64, 0).unwrap()])
        } else if let Some(r) = desc.strip_prefix("C:") {
            let l = num(r)?;
            match self.tag {
                Tag::C(m) if m % l == 0 => (Tag::C(l), vec![self.index_of(&consts::zeta_pow(m, (m / l) as i64)).unwrap()]),
                Tag::D(m) if (2 * m) % l == 0 => (Tag::C(l), vec![self.dihedral_index((2 * m / l) as i64, 0).unwrap()]),
                Tag::T | Tag::O | Tag::I if l <= 2 => (Tag::C(l), vec![self.index_of(&Quat::from_int(-1)).unwrap()]),
                _ => return Err(bad()),
            }
        } else if let Some(r) = desc.strip_prefix("D':") {
            let Tag::D(m) = self.tag else { return Err(bad()) };
            let k = num(r)?;
            if m % 2 != 0 || 2 * k != m {
                return Err(bad());
            }
            (Tag::DPrime(k), vec![self.dihedral_index(2, 0).unwrap(), self.dihedral_index(1, 1).unwrap()])
        } else if let Some(r) = desc.strip_prefix("D:") {
            let k = num(r)?;
            match self.tag {
                Tag::D(m) if k == m => (Tag::D(m), (0..self.order()).collect()),
                Tag::D(m) if 2 * k == m => {
                    (Tag::D(k), vec![self.dihedral_index(2, 0).unwrap(), self.dihedral_index(0, 1).unwrap()])
                }
                Tag::T | Tag::O if k == 2 => (Tag::D(2), vec![self.index_of(&Quat::i()).unwrap(), self.index_of(&Quat::j()).unwrap()]),
                _ => return Err(bad()),
            }
        } else {
            let t = Tag::parse_ambient(desc)?;
            match (&self.tag, &t) {
                (a, b) if a == b => (t.clone(), (0..self.order()).collect()),
                (Tag::O, Tag::T) => {
                    let seeds = named_generators(&Tag::T)?.iter().map(|g| self.index_of(g).unwrap()).collect();
                    (Tag::T, seeds)
                }
                _ => return Err(bad()),
            }
        };
        let mask = self.generated_mask(&seeds);
        debug_assert!(mask.iter().filter(|m| **m).count() as u32 <= order);
        Ok(self.subgroup_from_mask(tag, &mask))
    }
}

fn dihedral_coords(m: u32, c: &Closure<Quat>) -> Vec<(u32, u8)> {
    let n = c.conductor;
    let mut lookup: HashMap<MatKey, u32> = HashMap::new();
    for a in 0..2 * m {
        lookup.insert(consts::zeta_pow(2 * m, a as i64).key(n), a);
    }
    c.elements
        .iter()
        .map(|q| {
            if q.is_complex() {
                (lookup[&q.key(n)], 0)
            } else {
                // x^a j has z = 0 and w = ζ^a
                (lookup[&Quat::from_complex(q.w().clone()).key(n)], 1)
            }
        })
        .collect()
}

/// Builds a named group; the operation behind `sgroup_build`.
pub fn sgroup_build(tag: Tag) -> Result<SGroup> {
    SGroup::build(tag)
}

pub use normal::sgroup_normal_subgroups;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders() {
        for (t, o) in [(Tag::T, 24), (Tag::O, 48), (Tag::I, 120), (Tag::D(1), 4), (Tag::D(5), 20), (Tag::C(7), 7)] {
            assert_eq!(SGroup::build(t).unwrap().order(), o);
        }
    }

    #[test]
    fn cap_applies() {
        assert_eq!(SGroup::build_capped(Tag::I, 50).unwrap_err(), Error::ClosureBound(50));
    }

    #[test]
    fn non_unit_generator() {
        let r = SGroup::from_generators(Tag::Custom("x".into()), &[Quat::from_int(2)], 10);
        assert_eq!(r.unwrap_err(), Error::NotUnit);
    }

    #[test]
    fn dihedral_coordinates_round_trip() {
        let d = SGroup::build(Tag::D(3)).unwrap();
        for i in 0..d.order() {
            let (a, b) = d.dihedral_coords(i).unwrap();
            assert_eq!(d.dihedral_index(a as i64, b), Some(i));
        }
    }

    #[test]
    fn subgroup_descriptors() {
        let d = SGroup::build(Tag::D(4)).unwrap();
        assert_eq!(d.subgroup("X^2").unwrap().order(), 4);
        assert_eq!(d.subgroup("C:8").unwrap().order(), 8);
        assert_eq!(d.subgroup("D:2").unwrap().order(), 8);
        assert_eq!(d.subgroup("D':2").unwrap().order(), 8);
        assert_eq!(d.subgroup("D:4").unwrap().order(), 16);
        assert!(d.subgroup("X^3").is_err());
        assert!(d.subgroup("T").is_err());
        let o = SGroup::build(Tag::O).unwrap();
        assert_eq!(o.subgroup("T").unwrap().order(), 24);
        assert_eq!(o.subgroup("D:2").unwrap().order(), 8);
        assert_eq!(o.subgroup("C:2").unwrap().order(), 2);
        assert_eq!(o.subgroup("1").unwrap().order(), 1);
    }

    #[test]
    fn foreign_conductor_lookup() {
        let t = SGroup::build(Tag::T).unwrap();
        let d = consts::delta();
        let c = &(&d * &Quat::i()) * &d.conj();
        assert!(t.contains(&c));
        assert!(!t.contains(&d));
    }
}
