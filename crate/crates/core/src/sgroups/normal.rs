use super::{SGroup, Tag};

impl SGroup {
    pub(crate) fn normal_closure_mask(&self, seeds: &[usize]) -> Vec<bool> {
        let n = self.order();
        let mut conj = Vec::new();
        for &s in seeds {
            for k in 0..n {
                conj.push(self.mul_idx(self.mul_idx(k, s), self.inv_idx(k)));
            }
        }
        conj.sort_unstable();
        conj.dedup();
        self.generated_mask(&conj)
    }

    pub fn is_normal_mask(&self, mask: &[bool]) -> bool {
        let n = self.order();
        (0..n).filter(|h| mask[*h]).all(|h| (0..n).all(|k| mask[self.mul_idx(self.mul_idx(k, h), self.inv_idx(k))]))
    }

    /// All normal subgroups as membership masks, ordered by size then by members.
    pub fn normal_subgroup_masks(&self) -> Vec<Vec<bool>> {
        let n = self.order();
        let mut found: Vec<Vec<bool>> = Vec::new();
        for g in 0..n {
            let m = self.normal_closure_mask(&[g]);
            if !found.contains(&m) {
                found.push(m);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let seeds: Vec<usize> = (0..n).filter(|x| found[i][*x] || found[j][*x]).collect();
                let m = self.generated_mask(&seeds);
                if !found.contains(&m) {
                    found.push(m);
                }
            }
            i += 1;
        }
        found.sort_by_key(|m| (m.iter().filter(|b| **b).count(), m.iter().map(|b| !*b).collect::<Vec<_>>()));
        found
    }

    /// A conventional name for a normal subgroup of this group.
    pub fn name_subgroup(&self, mask: &[bool]) -> Tag {
        let size = mask.iter().filter(|b| **b).count() as u32;
        if size == self.order() as u32 {
            return self.tag.clone();
        }
        match &self.tag {
            Tag::C(_) => Tag::C(size),
            Tag::D(m) => {
                let members: Vec<(u32, u8)> =
                    (0..self.order()).filter(|i| mask[*i]).map(|i| self.dihedral_coords(i).unwrap()).collect();
                if members.iter().all(|(_, b)| *b == 0) {
                    Tag::C(size)
                } else if size == 2 * m && members.contains(&(0, 1)) {
                    Tag::D(m / 2)
                } else if size == 2 * m {
                    Tag::DPrime(m / 2)
                } else {
                    Tag::Custom(format!("order{size}"))
                }
            }
            _ => match size {
                1 | 2 => Tag::C(size),
                8 => Tag::D(2),
                24 => Tag::T,
                48 => Tag::O,
                _ => Tag::Custom(format!("order{size}")),
            },
        }
    }
}

/// Every normal subgroup of `k`, each as its own group with a conventional tag.
pub fn sgroup_normal_subgroups(k: &SGroup) -> Vec<SGroup> {
    k.normal_subgroup_masks().iter().map(|m| k.subgroup_from_mask(k.name_subgroup(m), m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: &SGroup) -> Vec<String> {
        sgroup_normal_subgroups(k).iter().map(|h| h.tag.to_string()).collect()
    }

    #[test]
    fn chief_series_members() {
        let o = SGroup::build(Tag::O).unwrap();
        assert_eq!(names(&o), ["1", "C:2", "D:2", "T", "O"]);
        let i = SGroup::build(Tag::I).unwrap();
        assert_eq!(names(&i), ["1", "C:2", "I"]);
        let t = SGroup::build(Tag::T).unwrap();
        assert_eq!(names(&t), ["1", "C:2", "D:2", "T"]);
    }

    #[test]
    fn binary_dihedral_normal_subgroups() {
        let d3 = SGroup::build(Tag::D(3)).unwrap();
        let sizes: Vec<usize> = sgroup_normal_subgroups(&d3).iter().map(|h| h.order()).collect();
        assert_eq!(sizes, [1, 2, 3, 6, 12]);
        let d4 = SGroup::build(Tag::D(4)).unwrap();
        let n = names(&d4);
        assert!(n.contains(&"D:2".to_string()) && n.contains(&"D':2".to_string()));
    }
}
