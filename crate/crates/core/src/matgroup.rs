//! Breadth-first closure of finite groups with canonical hashing.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::quat::{QMat2, Quat};

/// Canonical key of an element at a fixed conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatKey {
    Small(Box<[i64]>),
    Big(String),
}

/// Something that can be multiplied and hashed canonically.
pub trait GroupElem: Clone + Send + Sync {
    fn op(&self, o: &Self) -> Self;
    fn key(&self, n: u32) -> MatKey;
    fn conductor(&self) -> u32;
    fn is_identity(&self) -> bool;
    fn promote_to(&self, n: u32) -> Self;
}

impl GroupElem for Quat {
    fn op(&self, o: &Quat) -> Quat {
        self * o
    }

    fn key(&self, n: u32) -> MatKey {
        let mut out = Vec::with_capacity(16);
        if self.push_key(n, &mut out) {
            MatKey::Small(out.into())
        } else {
            MatKey::Big(self.promote(n).unwrap().to_string())
        }
    }

    fn conductor(&self) -> u32 {
        Quat::conductor(self)
    }

    fn is_identity(&self) -> bool {
        self.is_one()
    }

    fn promote_to(&self, n: u32) -> Quat {
        self.promote(n).unwrap()
    }
}

impl GroupElem for QMat2 {
    fn op(&self, o: &QMat2) -> QMat2 {
        self * o
    }

    fn key(&self, n: u32) -> MatKey {
        match self.small_key(n) {
            Some(k) => MatKey::Small(k),
            None => MatKey::Big(self.promote(n).unwrap().to_string()),
        }
    }

    fn conductor(&self) -> u32 {
        QMat2::conductor(self)
    }

    fn is_identity(&self) -> bool {
        QMat2::is_identity(self)
    }

    fn promote_to(&self, n: u32) -> QMat2 {
        self.promote(n).unwrap()
    }
}

/// A finite group given by its element list, with O(1) membership.
#[derive(Clone, Debug)]
pub struct Closure<E: GroupElem> {
    pub conductor: u32,
    pub gens: Vec<E>,
    pub elements: Vec<E>,
    /// (parent index, generator index) in the breadth-first tree; the identity is its own parent.
    parent: Vec<(usize, u16)>,
    index: HashMap<MatKey, usize>,
    /// Key maps at conductors that are multiples of `conductor`, built on demand.
    foreign: Arc<RwLock<HashMap<u32, Arc<HashMap<MatKey, usize>>>>>,
}

pub fn common_conductor<'a, E: GroupElem + 'a>(items: impl IntoIterator<Item = &'a E>) -> u32 {
    items.into_iter().fold(4, |acc, e| acc.lcm(&e.conductor()))
}

impl<E: GroupElem> Closure<E> {
    /// Closes `gens` under right multiplication, failing beyond `cap` elements.
    pub fn generate(gens: &[E], identity: E, cap: usize) -> Result<Closure<E>> {
        let n = common_conductor(gens.iter().chain(std::iter::once(&identity)));
        Closure::generate_at(gens, identity, cap, n)
    }

    pub fn generate_at(gens: &[E], identity: E, cap: usize, n: u32) -> Result<Closure<E>> {
        let gens: Vec<E> = gens.iter().map(|g| g.promote_to(n)).collect();
        let identity = identity.promote_to(n);
        let mut index = HashMap::new();
        index.insert(identity.key(n), 0);
        let mut elements = vec![identity];
        let mut parent = vec![(0usize, 0u16)];
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let p = elements[head].op(g);
                let k = p.key(n);
                if !index.contains_key(&k) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureBound(cap));
                    }
                    index.insert(k, elements.len());
                    elements.push(p);
                    parent.push((head, gi as u16));
                }
            }
            head += 1;
        }
        Ok(Closure { conductor: n, gens, elements, parent, index, foreign: Default::default() })
    }

    /// Wraps a known element list; generator words are unavailable.
    pub fn from_elements(elements: Vec<E>, gens: Vec<E>, n: u32) -> Closure<E> {
        let elements: Vec<E> = elements.into_iter().map(|e| e.promote_to(n)).collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.key(n), i)).collect();
        let parent = vec![(usize::MAX, 0); elements.len()];
        Closure { conductor: n, gens, elements, parent, index, foreign: Default::default() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        let c = e.conductor();
        if self.conductor % c == 0 {
            return self.index.get(&e.key(self.conductor)).copied();
        }
        let l = self.conductor.lcm(&c);
        let cached = self.foreign.read().expect("lock").get(&l).cloned();
        let map = match cached {
            Some(m) => m,
            None => {
                let m: Arc<HashMap<MatKey, usize>> =
                    Arc::new(self.elements.iter().enumerate().map(|(i, x)| (x.key(l), i)).collect());
                self.foreign.write().expect("lock").insert(l, m.clone());
                m
            }
        };
        map.get(&e.key(l)).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index_of(e).is_some()
    }

    /// Generator word (indices into `gens`) of element `i`, if it was found by closure.
    pub fn word(&self, mut i: usize) -> Option<Vec<u16>> {
        let mut w = Vec::new();
        while i != 0 {
            let (p, g) = *self.parent.get(i)?;
            if p == usize::MAX {
                return None;
            }
            w.push(g);
            i = p;
        }
        w.reverse();
        Some(w)
    }

    /// Elements sorted by canonical key at conductor `n`.
    pub fn sorted_keys(&self, n: u32) -> Vec<MatKey> {
        let mut ks: Vec<MatKey> = self.elements.iter().map(|e| e.key(n)).collect();
        ks.sort();
        ks
    }

    /// Exact equality of the element sets.
    pub fn same_elements(&self, o: &Closure<E>) -> bool {
        if self.order() != o.order() {
            return false;
        }
        if self.conductor == o.conductor {
            return o.elements.iter().all(|e| self.contains(e));
        }
        let n = self.conductor.lcm(&o.conductor);
        self.sorted_keys(n) == o.sorted_keys(n)
    }

    /// Verifies closure under products by all generators.
    pub fn is_closed_under(&self, gens: &[E]) -> bool {
        self.elements.iter().all(|e| gens.iter().all(|g| self.contains(&e.op(g))))
    }
}

/// Order of the subgroup generated by `subset`, grown one generator at a time so that only
/// a few generators are used in each closure.
pub fn generated_order<E: GroupElem>(subset: &[E], identity: E, cap: usize) -> Result<usize> {
    Ok(generated_subgroup(subset, identity, cap)?.order())
}

pub fn generated_subgroup<E: GroupElem>(subset: &[E], identity: E, cap: usize) -> Result<Closure<E>> {
    let n = common_conductor(subset.iter().chain(std::iter::once(&identity)));
    let mut gens: Vec<E> = Vec::new();
    let mut cur = Closure::generate_at(&gens, identity.clone(), cap, n)?;
    for s in subset {
        if !cur.contains(s) {
            gens.push(s.clone());
            cur = Closure::generate_at(&gens, identity.clone(), cap, n)?;
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::consts;

    #[test]
    fn cyclic_closure_and_words() {
        let c = Closure::generate(&[consts::zeta(6)], Quat::one(), 100).unwrap();
        assert_eq!(c.order(), 6);
        let i = c.index_of(&consts::zeta_pow(6, 4)).unwrap();
        assert_eq!(c.word(i).unwrap().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let r = Closure::generate(&[consts::zeta(12)], Quat::one(), 5);
        assert_eq!(r.unwrap_err(), Error::ClosureBound(5));
    }

    #[test]
    fn equality_across_conductors() {
        let a = Closure::generate(&[Quat::i()], Quat::one(), 10).unwrap();
        let b = Closure::generate(&[Quat::i().promote(8).unwrap()], Quat::one(), 10).unwrap();
        assert_eq!(b.conductor, 8);
        assert!(a.same_elements(&b));
    }

    #[test]
    fn incremental_generation() {
        let sub = [Quat::i(), Quat::j(), Quat::k(), -&Quat::one()];
        assert_eq!(generated_order(&sub, Quat::one(), 100).unwrap(), 8);
    }
}
