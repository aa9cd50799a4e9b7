use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{SGroup, Tag};
use crate::error::{Error, Result};

/// Isomorphism type of a quotient K/H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QuotTag {
    Trivial,
    C(u32),
    /// Binary dihedral of order 4k.
    DBinary(u32),
    /// Dihedral of order 2k.
    Dih(u32),
    Alt4,
    Sym3,
    Sym4,
    Alt5,
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl fmt::Display for QuotTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotTag::Trivial => write!(f, "1"),
            QuotTag::C(k) => write!(f, "C{k}"),
            QuotTag::DBinary(k) => write!(f, "Dbin{k}"),
            QuotTag::Dih(k) => write!(f, "Dih{k}"),
            QuotTag::Alt4 => write!(f, "Alt4"),
            QuotTag::Sym3 => write!(f, "Sym3"),
            QuotTag::Sym4 => write!(f, "Sym4"),
            QuotTag::Alt5 => write!(f, "Alt5"),
            QuotTag::BinaryTetrahedral => write!(f, "T"),
            QuotTag::BinaryOctahedral => write!(f, "O"),
            QuotTag::BinaryIcosahedral => write!(f, "I"),
        }
    }
}

/// K together with a normal subgroup H and its coset decomposition.
#[derive(Debug)]
pub struct Quotient {
    pub k: Arc<SGroup>,
    pub h: SGroup,
    pub h_mask: Vec<bool>,
    /// Coset id of each element of K.
    pub coset_of: Vec<u16>,
    /// Members of each coset; the first member is the canonical representative.
    pub cosets: Vec<Vec<usize>>,
}

impl Quotient {
    pub fn new(k: Arc<SGroup>, h: SGroup) -> Result<Quotient> {
        let h_mask = k.mask_of(&h)?;
        if !k.is_normal_mask(&h_mask) {
            return Err(Error::NotNormal(h.tag.to_string()));
        }
        let n = k.order();
        let hs: Vec<usize> = (0..n).filter(|i| h_mask[*i]).collect();
        let mut seen = vec![false; n];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = hs.iter().map(|x| k.mul_idx(*x, g)).collect();
            for x in &c {
                seen[*x] = true;
            }
            c.sort_by_key(|i| k.key(*i));
            cosets.push(c);
        }
        cosets.sort_by_key(|c| k.key(c[0]));
        let mut coset_of = vec![0u16; n];
        for (ci, c) in cosets.iter().enumerate() {
            for x in c {
                coset_of[*x] = ci as u16;
            }
        }
        Ok(Quotient { k, h, h_mask, coset_of, cosets })
    }

    pub fn order(&self) -> usize {
        self.cosets.len()
    }

    pub fn coset_mul(&self, a: usize, b: usize) -> usize {
        self.coset_of[self.k.mul_idx(self.cosets[a][0], self.cosets[b][0])] as usize
    }

    pub fn coset_inv(&self, a: usize) -> usize {
        self.coset_of[self.k.inv_idx(self.cosets[a][0])] as usize
    }

    pub fn identity_coset(&self) -> usize {
        self.coset_of[self.k.identity_index()] as usize
    }

    fn coset_order(&self, a: usize) -> usize {
        let e = self.identity_coset();
        let mut k = 1;
        let mut cur = a;
        while cur != e {
            cur = self.coset_mul(cur, a);
            k += 1;
        }
        k
    }

    fn stats(&self) -> (usize, usize, bool, usize) {
        let q = self.order();
        let orders: Vec<usize> = (0..q).map(|a| self.coset_order(a)).collect();
        let involutions = orders.iter().filter(|o| **o == 2).count();
        let abelian = (0..q).all(|a| (0..q).all(|b| self.coset_mul(a, b) == self.coset_mul(b, a)));
        let max_order = orders.iter().copied().max().unwrap_or(1);
        (q, involutions, abelian, max_order)
    }

    /// Identifies K/H using the ambient family and checks the element statistics agree.
    pub fn identify(&self) -> Result<QuotTag> {
        let (q, inv, abelian, max_order) = self.stats();
        let l = self.h.order();
        let claimed = match (&self.k.tag, &self.h.tag) {
            _ if q == 1 => QuotTag::Trivial,
            (Tag::C(_), _) => QuotTag::C(q as u32),
            (Tag::D(_), Tag::C(_)) if l % 2 == 1 => QuotTag::DBinary((q / 4) as u32),
            (Tag::D(_), Tag::C(_)) => QuotTag::Dih((q / 2) as u32),
            (Tag::D(_), _) if q == 2 => QuotTag::C(2),
            (Tag::T, _) if q == 24 => QuotTag::BinaryTetrahedral,
            (Tag::O, _) if q == 48 => QuotTag::BinaryOctahedral,
            (Tag::I, _) if q == 120 => QuotTag::BinaryIcosahedral,
            (_, _) if abelian && max_order == q => QuotTag::C(q as u32),
            (_, _) => match (q, inv) {
                (6, 3) => QuotTag::Sym3,
                (12, 3) => QuotTag::Alt4,
                (24, 9) => QuotTag::Sym4,
                (60, 15) => QuotTag::Alt5,
                _ => return Err(Error::UnrecognizedQuotient(q)),
            },
        };
        let consistent = match &claimed {
            QuotTag::Trivial => q == 1,
            QuotTag::C(k) => abelian && max_order == *k as usize,
            QuotTag::DBinary(k) => q == 4 * *k as usize && inv == 1 && max_order == (2 * *k as usize).max(4),
            QuotTag::Dih(k) => {
                let k = *k as usize;
                let expect_inv = match k {
                    1 => 1,
                    2 => 3,
                    _ if k % 2 == 0 => k + 1,
                    _ => k,
                };
                q == 2 * k && inv == expect_inv
            }
            QuotTag::Alt4 => q == 12 && inv == 3 && !abelian,
            QuotTag::Sym3 => q == 6 && inv == 3,
            QuotTag::Sym4 => q == 24 && inv == 9,
            QuotTag::Alt5 => q == 60 && inv == 15,
            QuotTag::BinaryTetrahedral => q == 24 && inv == 1 && max_order == 6,
            QuotTag::BinaryOctahedral => q == 48 && inv == 1 && max_order == 8,
            QuotTag::BinaryIcosahedral => q == 120 && inv == 1 && max_order == 10,
        };
        if consistent {
            Ok(claimed)
        } else {
            Err(Error::UnrecognizedQuotient(q))
        }
    }
}

/// Isomorphism type of K/H.
pub fn quotient_identify(k: &Arc<SGroup>, h: &SGroup) -> Result<QuotTag> {
    let h = h.subgroup_from_mask(h.tag.clone(), &vec![true; h.order()]);
    Quotient::new(k.clone(), h)?.identify()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ident(k: Tag, h: &str) -> QuotTag {
        let k = Arc::new(SGroup::build(k).unwrap());
        let h = k.subgroup(h).unwrap();
        quotient_identify(&k, &h).unwrap()
    }

    #[test]
    fn polyhedral_quotients() {
        assert_eq!(ident(Tag::T, "C:2"), QuotTag::Alt4);
        assert_eq!(ident(Tag::T, "D:2"), QuotTag::C(3));
        assert_eq!(ident(Tag::O, "D:2"), QuotTag::Sym3);
        assert_eq!(ident(Tag::O, "C:2"), QuotTag::Sym4);
        assert_eq!(ident(Tag::O, "T"), QuotTag::C(2));
        assert_eq!(ident(Tag::I, "C:2"), QuotTag::Alt5);
        assert_eq!(ident(Tag::I, "1"), QuotTag::BinaryIcosahedral);
        assert_eq!(ident(Tag::I, "I"), QuotTag::Trivial);
    }

    #[test]
    fn dihedral_quotients() {
        assert_eq!(ident(Tag::D(3), "C:3"), QuotTag::DBinary(1));
        assert_eq!(ident(Tag::D(3), "C:2"), QuotTag::Dih(3));
        assert_eq!(ident(Tag::D(4), "C:2"), QuotTag::Dih(4));
        assert_eq!(ident(Tag::D(5), "1"), QuotTag::DBinary(5));
        assert_eq!(ident(Tag::D(4), "D:2"), QuotTag::C(2));
        assert_eq!(ident(Tag::D(2), "C:4"), QuotTag::Dih(1));
    }

    #[test]
    fn non_normal_rejected() {
        let k = Arc::new(SGroup::build(Tag::T).unwrap());
        let mask = k.generated_mask(&[k.index_of(&crate::quat::Quat::i()).unwrap()]);
        let h = k.subgroup_from_mask(Tag::C(4), &mask);
        assert!(matches!(Quotient::new(k, h), Err(Error::NotNormal(_))));
    }
}
