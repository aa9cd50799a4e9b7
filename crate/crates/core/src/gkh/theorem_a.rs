use std::sync::Arc;

use num_integer::Integer;

use super::{gkh_is_reflection_group, make_aut};
use crate::sgroups::{SGroup, Tag};

/// The admissible r for G(D_m, C_ℓ, ψ_r) to be a reflection group, by the gcd criterion.
pub fn valid_r_values(m: u32, l: u32) -> Vec<u32> {
    assert!(m >= 1 && (2 * m) % l == 0, "ℓ must divide 2m");
    let n = 2 * m / l;
    let mut out = vec![1];
    for r in 2..=n / 2 {
        let kappa = n / n.gcd(&(r + 1));
        let nu = n / n.gcd(&(r - 1));
        if r.gcd(&n) == 1 && kappa.gcd(&nu) == 1 {
            out.push(r);
        }
    }
    out
}

/// Whether ψ_r is an automorphism of D_m/⟨x^n⟩ whose L-set generates D_m.
pub fn psi_generates(k: &Arc<SGroup>, l: u32, r: u32) -> bool {
    match make_aut(k.clone(), &format!("C:{l}"), &format!("psi:{r}")) {
        Ok(aut) => gkh_is_reflection_group(&aut),
        Err(_) => false,
    }
}

/// The same set found by trying every r in 1..=max(1, n/2).
pub fn valid_r_values_bruteforce(m: u32, l: u32) -> Vec<u32> {
    let n = 2 * m / l;
    let k = Arc::new(SGroup::build(Tag::D(m)).expect("binary dihedral group"));
    (1..=(n / 2).max(1)).filter(|r| psi_generates(&k, l, *r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(valid_r_values(5, 2), [1]);
        assert_eq!(valid_r_values(6, 1), [1, 5]);
        assert_eq!(valid_r_values(12, 1), [1, 7]);
        assert_eq!(valid_r_values(1, 2), [1]);
    }

    #[test]
    fn agrees_with_bruteforce_small() {
        for m in 1..=8 {
            for l in (1..=2 * m).filter(|l| (2 * m) % l == 0) {
                assert_eq!(valid_r_values(m, l), valid_r_values_bruteforce(m, l), "m={m} l={l}");
            }
        }
    }
}
