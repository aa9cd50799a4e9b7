//! Explicit conjugating matrices, complex-type Shephard–Todd groups and the conjugacy chains between families.

mod theorems;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::matgroup::{common_conductor, Closure};
use crate::quat::{consts, QMat2, Quat};

pub use theorems::{verify_conjugacy_theorem, ConjOptions, ConjReport, Instance, THEOREM_TAGS};

/// Shape of a witness matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    R { r: Rat, theta: Quat },
    T,
    M,
    Diag(Quat, Quat),
    Custom,
}

/// A unitary matrix W = W̃/√c stored as the unnormalized W̃ and the rational c = W̃W̃*.
#[derive(Clone, Debug)]
pub struct Witness {
    pub kind: WitnessKind,
    pub label: String,
    pub mat: QMat2,
    pub c: Rat,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl Witness {
    /// R_{r,θ}: R̃ = [[1, rθ], [−rθ, −1]] with c = 1 + r².
    pub fn r(r: Rat, theta: Quat, theta_label: &str) -> Result<Witness> {
        if !(&(&theta * &theta) + &Quat::one()).is_zero() {
            return Err(Error::InvalidParams("θ² must be −1".into()));
        }
        let rt = theta.mul_rat(&r);
        let mat = QMat2::new(Quat::one(), rt.clone(), -rt, Quat::from_int(-1));
        let c = Rat::one() + &r * &r;
        let label = if r == Rat::one() { format!("R(1,{theta_label})") } else { format!("R({r},{theta_label})") };
        Ok(Witness { kind: WitnessKind::R { r, theta }, label, mat, c })
    }

    /// T̃ = [[1, 1], [1, −1]] with c = 2.
    pub fn t() -> Witness {
        Witness { kind: WitnessKind::T, label: "T".into(), mat: QMat2::from_rats([[1, 1], [1, -1]]), c: Rat::int(2) }
    }

    /// M̃ = [[−1+k, −√2k], [1+k, √2]] with c = 4.
    pub fn m_prim() -> Witness {
        let s2 = Quat::from_complex(consts::sqrt2());
        let mat = QMat2::new(&Quat::k() - &Quat::one(), -(&s2 * &Quat::k()), &Quat::k() + &Quat::one(), s2);
        Witness { kind: WitnessKind::M, label: "M".into(), mat, c: Rat::int(4) }
    }

    /// diag(a, b) for unit quaternions.
    pub fn diag(a: Quat, b: Quat, label: &str) -> Result<Witness> {
        if !a.is_unit() || !b.is_unit() {
            return Err(Error::NotUnit);
        }
        Ok(Witness { kind: WitnessKind::Diag(a.clone(), b.clone()), label: label.into(), mat: QMat2::diag(a, b), c: Rat::one() })
    }

    /// Any matrix with W̃W̃* a rational multiple of the identity.
    pub fn custom(mat: QMat2, label: &str) -> Result<Witness> {
        let p = &mat * &mat.conj_transpose();
        let c = scalar_of(&p).ok_or(Error::NotInvolutiveWitness)?;
        if c.is_zero() || c.is_negative() {
            return Err(Error::NotInvolutiveWitness);
        }
        Ok(Witness { kind: WitnessKind::Custom, label: label.into(), mat, c })
    }

    /// Conjugation by `self` after conjugation by `first`.
    pub fn then_after(&self, first: &Witness) -> Witness {
        Witness {
            kind: WitnessKind::Custom,
            label: format!("{}·{}", self.label, first.label),
            mat: &self.mat * &first.mat,
            c: &self.c * &first.c,
        }
    }

    /// W̃W̃* = cI, and W̃² = cI for the involutions R and T.
    pub fn is_sane(&self) -> bool {
        let ok = scalar_of(&(&self.mat * &self.mat.conj_transpose())) == Some(self.c.clone());
        match self.kind {
            WitnessKind::R { .. } | WitnessKind::T => ok && scalar_of(&(&self.mat * &self.mat)) == Some(self.c.clone()),
            _ => ok,
        }
    }

    /// W g W⁻¹ = W̃ g W̃* / c.
    pub fn conjugate(&self, g: &QMat2) -> QMat2 {
        (&(&self.mat * g) * &self.mat.conj_transpose()).scale_rat(&self.c.inv().expect("c is nonzero"))
    }
}

/// The rational λ with A = λI, if any.
fn scalar_of(a: &QMat2) -> Option<Rat> {
    if !a.e[0][1].is_zero() || !a.e[1][0].is_zero() || a.e[0][0] != a.e[1][1] {
        return None;
    }
    a.e[0][0].rational_coords().filter(|c| c[1].is_zero() && c[2].is_zero() && c[3].is_zero()).map(|c| c[0].clone())
}

/// Element-wise conjugation of a finite group.
pub fn conjugate_group(g: &Closure<QMat2>, w: &Witness) -> Result<Closure<QMat2>> {
    if !w.is_sane() {
        return Err(Error::NotInvolutiveWitness);
    }
    let elements: Vec<QMat2> = g.elements.iter().map(|e| w.conjugate(e)).collect();
    let gens: Vec<QMat2> = g.gens.iter().map(|e| w.conjugate(e)).collect();
    let n = common_conductor(elements.iter().chain(gens.iter()));
    Ok(Closure::from_elements(elements, gens, n))
}

/// Exact equality of element sets.
pub fn groups_equal(a: &Closure<QMat2>, b: &Closure<QMat2>) -> bool {
    a.same_elements(b)
}

/// A Shephard–Todd group realised by complex-type 2×2 matrices.
#[derive(Clone, Debug)]
pub struct STGroup {
    pub descriptor: String,
    pub group: Closure<QMat2>,
}

impl STGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

fn cplx(re: Rat, im: Rat) -> Quat {
    Quat::from_rats([re, im, Rat::zero(), Rat::zero()])
}

fn half(re: i64, im: i64) -> Quat {
    cplx(Rat::new(re, 2).unwrap(), Rat::new(im, 2).unwrap())
}

/// Generators of ST(12), ST(13) or ST(22).
pub fn st_generators(n: u32) -> Result<Vec<QMat2>> {
    let r2 = Quat::from_complex(consts::inv_sqrt2());
    let neg_t = QMat2::new(-r2.clone(), -r2.clone(), -r2.clone(), r2.clone());
    let g2 = QMat2::new(half(-1, 1), half(-1, -1), half(1, -1), half(-1, -1));
    let g3 = QMat2::new(r2.clone(), &r2 * &(-Quat::i()), &r2 * &(-Quat::i()), r2.clone());
    match n {
        12 => Ok(vec![neg_t, g2, QMat2::antidiag(-Quat::i(), -Quat::i())]),
        13 => Ok(vec![neg_t, g2, g3]),
        22 => {
            let h = Rat::new(1, 2).unwrap();
            let tau = Quat::from_complex(consts::tau());
            let tau_inv = &tau - &Quat::one();
            let a = (&tau_inv + &Quat::i()).mul_rat(&h);
            let b = (&tau * &(-Quat::i())).mul_rat(&h);
            let d = (&tau_inv - &Quat::i()).mul_rat(&h);
            Ok(vec![QMat2::swap(), QMat2::diag(Quat::i(), -Quat::i()), QMat2::new(a, b.clone(), b, d)])
        }
        _ => Err(Error::InvalidDescriptor(format!("ST({n})"))),
    }
}

/// ST(m,p,2) from the swap, diag(ζ_m, ζ_m⁻¹) and diag(ζ_m^p, 1).
pub fn st_imprimitive_generators(m: u32, p: u32) -> Result<Vec<QMat2>> {
    if m == 0 || p == 0 || m % p != 0 {
        return Err(Error::InvalidDescriptor(format!("ST({m},{p},2)")));
    }
    let mut gens = vec![QMat2::swap(), QMat2::diag(consts::zeta(m), consts::zeta_pow(m, -1))];
    if p != m {
        gens.push(QMat2::diag(consts::zeta_pow(m, p as i64), Quat::one()));
    }
    Ok(gens)
}

/// Builds `ST(m,p,2)`, `ST(12)`, `ST(13)` or `ST(22)`.
pub fn st_build(desc: &str) -> Result<STGroup> {
    let bad = || Error::InvalidDescriptor(desc.to_string());
    let inner = desc.trim().strip_prefix("ST(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let nums: Vec<u32> = inner.split(',').map(|s| s.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?;
    let gens = match nums.as_slice() {
        [n] => st_generators(*n)?,
        [m, p, 2] => st_imprimitive_generators(*m, *p)?,
        _ => return Err(bad()),
    };
    let group = Closure::generate(&gens, QMat2::identity(), 100_000)?;
    let descriptor = match nums.as_slice() {
        [n] => format!("ST({n})"),
        [m, p, _] => format!("ST({m},{p},2)"),
        _ => unreachable!(),
    };
    Ok(STGroup { descriptor, group })
}
