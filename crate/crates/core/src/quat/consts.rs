//! Named constants: roots of unity and the generators of the binary polyhedral groups.

use super::Quat;
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};

fn half() -> Rat {
    Rat::new(1, 2).unwrap()
}

pub fn sqrt2() -> CycNum {
    let z = CycNum::zeta(8);
    &z + &z.conj()
}

pub fn sqrt5() -> CycNum {
    let z = CycNum::zeta(5);
    &CycNum::one(5) + &(&z + &z.conj()).mul_rat(&Rat::int(2))
}

/// The golden ratio (1 + √5)/2.
pub fn tau() -> CycNum {
    (&CycNum::one(5) + &sqrt5()).mul_rat(&half())
}

/// 1/√2 = √2/2.
pub fn inv_sqrt2() -> CycNum {
    sqrt2().mul_rat(&half())
}

/// ζ_m as a complex quaternion.
pub fn zeta(m: u32) -> Quat {
    Quat::from_complex(CycNum::zeta(m))
}

pub fn zeta_pow(m: u32, k: i64) -> Quat {
    Quat::from_complex(CycNum::zeta_pow(m, k))
}

/// ½(−1 + i + j + k), of order 3.
pub fn varpi() -> Quat {
    let h = half();
    Quat::from_rats([-h.clone(), h.clone(), h.clone(), h])
}

/// (1 + i)/√2.
pub fn gamma() -> Quat {
    zeta(8)
}

/// (i − j)/√2.
pub fn delta() -> Quat {
    let s = inv_sqrt2();
    Quat::new(&s * &CycNum::zeta(4), -&s)
}

/// ½(τ⁻¹ + i + τj).
pub fn sigma() -> Quat {
    let t = tau();
    let tinv = &t - &CycNum::one(5);
    let z = (&tinv + &CycNum::zeta(4)).mul_rat(&half());
    Quat::new(z, t.mul_rat(&half()))
}

/// A named constant, which may be a scalar (τ, √2, √5) or a quaternion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Const {
    Scalar(CycNum),
    Quat(Quat),
}

/// Looks up `zeta(m)`, `varpi`, `gamma`, `sigma`, `delta`, `tau`, `sqrt2`, `sqrt5`, `i`, `j`, `k`.
pub fn quat_const(name: &str) -> Result<Const> {
    let name = name.trim();
    if let Some(m) = name.strip_prefix("zeta(").and_then(|r| r.strip_suffix(')')) {
        return match m.trim().parse::<u32>() {
            Ok(m) if m >= 1 => Ok(Const::Quat(zeta(m))),
            _ => Err(Error::UnknownConstant(name.to_string())),
        };
    }
    Ok(match name {
        "varpi" => Const::Quat(varpi()),
        "gamma" => Const::Quat(gamma()),
        "sigma" => Const::Quat(sigma()),
        "delta" => Const::Quat(delta()),
        "i" => Const::Quat(Quat::i()),
        "j" => Const::Quat(Quat::j()),
        "k" => Const::Quat(Quat::k()),
        "tau" => Const::Scalar(tau()),
        "sqrt2" => Const::Scalar(sqrt2()),
        "sqrt5" => Const::Scalar(sqrt5()),
        _ => return Err(Error::UnknownConstant(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductors() {
        assert_eq!(zeta(3).conductor(), 12);
        assert_eq!(zeta(8).conductor(), 8);
        assert_eq!(delta().conductor(), 8);
        assert_eq!(sigma().conductor(), 20);
        assert_eq!(tau().conductor(), 5);
        assert_eq!(varpi().conductor(), 4);
    }

    #[test]
    fn defining_relations() {
        assert!(varpi().pow(3).is_one());
        assert_eq!(delta().pow(2), Quat::from_int(-1));
        assert_eq!(gamma().pow(2), Quat::i());
        let t = tau();
        assert_eq!(&t * &t, &t + &CycNum::one(1));
        assert_eq!(sigma().order(240), Ok(5));
        assert_eq!(sigma().trace(), &t - &CycNum::one(1));
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(quat_const("omega"), Err(Error::UnknownConstant(_))));
        assert!(matches!(quat_const("zeta(0)"), Err(Error::UnknownConstant(_))));
        assert!(matches!(quat_const("zeta(5)"), Ok(Const::Quat(_))));
    }
}
