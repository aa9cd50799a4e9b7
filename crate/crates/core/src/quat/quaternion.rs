use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};

/// A quaternion z + w·j with z, w in a common cyclotomic field containing i.
#[derive(Clone, PartialEq, Eq)]
pub struct Quat {
    z: CycNum,
    w: CycNum,
}

fn quat_conductor(a: u32, b: u32) -> u32 {
    a.lcm(&b).lcm(&4)
}

impl Quat {
    pub fn new(z: CycNum, w: CycNum) -> Quat {
        let n = quat_conductor(z.conductor(), w.conductor());
        Quat { z: z.promote(n).unwrap(), w: w.promote(n).unwrap() }
    }

    pub fn from_complex(z: CycNum) -> Quat {
        let n = quat_conductor(z.conductor(), 1);
        Quat::new(z, CycNum::zero(n))
    }

    pub fn from_rat(r: &Rat) -> Quat {
        Quat::from_complex(CycNum::from_rat(4, r))
    }

    pub fn from_int(v: i64) -> Quat {
        Quat::from_complex(CycNum::from_int(4, v))
    }

    pub fn zero() -> Quat {
        Quat::from_int(0)
    }

    pub fn one() -> Quat {
        Quat::from_int(1)
    }

    pub fn i() -> Quat {
        Quat::from_complex(CycNum::zeta(4))
    }

    pub fn j() -> Quat {
        Quat::new(CycNum::zero(4), CycNum::one(4))
    }

    pub fn k() -> Quat {
        Quat::new(CycNum::zero(4), CycNum::zeta(4))
    }

    /// a₀ + a₁i + a₂j + a₃k from real coordinates.
    pub fn make(a: [&CycNum; 4]) -> Result<Quat> {
        for c in a {
            if !c.is_real() {
                return Err(Error::NotRealCoordinate(c.to_string()));
            }
        }
        let i = CycNum::zeta(4);
        Ok(Quat::new(a[0] + &(a[1] * &i), a[2] + &(a[3] * &i)))
    }

    pub fn from_rats(a: [Rat; 4]) -> Quat {
        let c: Vec<CycNum> = a.iter().map(|r| CycNum::from_rat(1, r)).collect();
        Quat::make([&c[0], &c[1], &c[2], &c[3]]).unwrap()
    }

    pub fn z(&self) -> &CycNum {
        &self.z
    }

    pub fn w(&self) -> &CycNum {
        &self.w
    }

    pub fn conductor(&self) -> u32 {
        self.z.conductor()
    }

    pub fn promote(&self, n: u32) -> Result<Quat> {
        Ok(Quat { z: self.z.promote(n)?, w: self.w.promote(n)? })
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero() && self.w.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.z.is_one() && self.w.is_zero()
    }

    /// True when the j-part vanishes.
    pub fn is_complex(&self) -> bool {
        self.w.is_zero()
    }

    pub fn conj(&self) -> Quat {
        Quat { z: self.z.conj(), w: -&self.w }
    }

    /// q q̄, a totally real scalar.
    pub fn norm(&self) -> CycNum {
        &(&self.z * &self.z.conj()) + &(&self.w * &self.w.conj())
    }

    /// q + q̄.
    pub fn trace(&self) -> CycNum {
        &self.z + &self.z.conj()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// (conjugate, norm, trace).
    pub fn conj_norm_trace(&self) -> (Quat, CycNum, CycNum) {
        (self.conj(), self.norm(), self.trace())
    }

    pub fn inv(&self) -> Result<Quat> {
        let n = self.norm();
        if n.is_one() {
            return Ok(self.conj());
        }
        let ni = n.inv()?;
        let c = self.conj();
        Ok(Quat::new(&c.z * &ni, &c.w * &ni))
    }

    pub fn scale(&self, c: &CycNum) -> Quat {
        debug_assert!(c.is_real());
        Quat::new(&self.z * c, &self.w * c)
    }

    pub fn mul_rat(&self, r: &Rat) -> Quat {
        Quat { z: self.z.mul_rat(r), w: self.w.mul_rat(r) }
    }

    /// Real coordinates a₀, a₁, a₂, a₃.
    pub fn coords(&self) -> [CycNum; 4] {
        let half = Rat::new(1, 2).unwrap();
        let mi = CycNum::zeta_pow(4, 3);
        let re = |c: &CycNum| (c + &c.conj()).mul_rat(&half);
        let im = |c: &CycNum| (&(c - &c.conj()) * &mi).mul_rat(&half);
        [re(&self.z), im(&self.z), re(&self.w), im(&self.w)]
    }

    pub fn rational_coords(&self) -> Option<[Rat; 4]> {
        let c = self.coords();
        Some([c[0].to_rat()?, c[1].to_rat()?, c[2].to_rat()?, c[3].to_rat()?])
    }

    pub fn pow(&self, e: u32) -> Quat {
        let mut acc = Quat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative order, if at most `bound`.
    pub fn order(&self, bound: u32) -> Result<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Ok(k);
            }
            acc = &acc * self;
        }
        Err(Error::NotFiniteOrder(bound))
    }

    pub(crate) fn push_key(&self, n: u32, out: &mut Vec<i64>) -> bool {
        if self.conductor() == n {
            self.z.push_key(out) && self.w.push_key(out)
        } else {
            let p = self.promote(n).unwrap();
            p.z.push_key(out) && p.w.push_key(out)
        }
    }

    fn mul_impl(&self, o: &Quat) -> Quat {
        if self.w.is_zero() && o.w.is_zero() {
            return Quat::from_complex(&self.z * &o.z);
        }
        let z = &(&self.z * &o.z) - &(&self.w * &o.w.conj());
        let w = &(&self.z * &o.w) + &(&self.w * &o.z.conj());
        Quat::new(z, w)
    }
}

impl Add<&Quat> for &Quat {
    type Output = Quat;
    fn add(self, o: &Quat) -> Quat {
        Quat::new(&self.z + &o.z, &self.w + &o.w)
    }
}

impl Sub<&Quat> for &Quat {
    type Output = Quat;
    fn sub(self, o: &Quat) -> Quat {
        Quat::new(&self.z - &o.z, &self.w - &o.w)
    }
}

impl Mul<&Quat> for &Quat {
    type Output = Quat;
    fn mul(self, o: &Quat) -> Quat {
        self.mul_impl(o)
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        self.mul_impl(&o)
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        &self + &o
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        &self - &o
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat { z: -&self.z, w: -&self.w }
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        -&self
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational_coords() {
            Some([a, b, c, d]) => write!(f, "q[{a},{b},{c},{d}]"),
            None => write!(f, "q{{z={},w={}}}", self.z, self.w),
        }
    }
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Quat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quat> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a quaternion: `{s}`"));
        if let Some(body) = s.strip_prefix("q[").and_then(|r| r.strip_suffix(']')) {
            let c = body.split(',').map(str::parse).collect::<Result<Vec<Rat>>>()?;
            let c: [Rat; 4] = c.try_into().map_err(|_| bad())?;
            return Ok(Quat::from_rats(c));
        }
        if let Some(body) = s.strip_prefix("q{").and_then(|r| r.strip_suffix('}')) {
            let (zs, ws) = body.split_once("],w=").ok_or_else(bad)?;
            let zs = zs.strip_prefix("z=").ok_or_else(bad)?;
            let z: CycNum = format!("{zs}]").parse()?;
            let w: CycNum = ws.parse()?;
            return Ok(Quat::new(z, w));
        }
        Err(bad())
    }
}
