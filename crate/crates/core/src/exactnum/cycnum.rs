use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{field, totient, Field};
use super::rat::Rat;
use crate::error::{Error, Result};

/// Values below this bound keep products of two coefficients comfortably inside i128.
const SMALL_LIMIT: i64 = 1 << 31;
/// Fields whose reduction table exceeds this fall back to big integers for products.
const TABLE_LIMIT: i64 = 1 << 20;

/// Numerators over one shared positive denominator, reduced so that
/// gcd(den, all numerators) = 1. Zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Coef {
    Small { den: i64, num: Box<[i64]> },
    Big { den: BigInt, num: Box<[BigInt]> },
}

/// An element of ℚ(ζ_n) in the power basis 1, ζ_n, …, ζ_n^{φ(n)−1}.
#[derive(Clone)]
pub struct CycNum {
    field: &'static Field,
    c: Coef,
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

fn finish_i128(mut den: i128, mut num: Vec<i128>) -> Coef {
    let mut g = den;
    for v in &num {
        if g == 1 {
            break;
        }
        if *v != 0 {
            g = gcd_i128(g, *v);
        }
    }
    if den < 0 {
        g = -g.abs();
    } else {
        g = g.abs();
    }
    if num.iter().all(|v| *v == 0) {
        return Coef::Small { den: 1, num: vec![0; num.len()].into() };
    }
    if g != 1 {
        den /= g;
        for v in num.iter_mut() {
            *v /= g;
        }
    }
    let lim = SMALL_LIMIT as i128;
    if den < lim && num.iter().all(|v| v.abs() < lim) {
        Coef::Small { den: den as i64, num: num.into_iter().map(|v| v as i64).collect() }
    } else {
        Coef::Big { den: den.into(), num: num.into_iter().map(BigInt::from).collect() }
    }
}

fn finish_big(mut den: BigInt, mut num: Vec<BigInt>) -> Coef {
    if num.iter().all(|v| v.is_zero()) {
        return Coef::Small { den: 1, num: vec![0; num.len()].into() };
    }
    let mut g = den.clone();
    for v in &num {
        if g.is_one() {
            break;
        }
        if !v.is_zero() {
            g = g.gcd(v);
        }
    }
    if den.is_negative() {
        g = -g.abs();
    }
    if !g.is_one() {
        den /= &g;
        for v in num.iter_mut() {
            *v /= &g;
        }
    }
    let lim = BigInt::from(SMALL_LIMIT);
    if den < lim && num.iter().all(|v| v.abs() < lim) {
        Coef::Small {
            den: den.to_i64().unwrap(),
            num: num.iter().map(|v| v.to_i64().unwrap()).collect(),
        }
    } else {
        Coef::Big { den, num: num.into() }
    }
}

impl Coef {
    fn to_big(&self) -> (BigInt, Vec<BigInt>) {
        match self {
            Coef::Small { den, num } => (BigInt::from(*den), num.iter().map(|v| BigInt::from(*v)).collect()),
            Coef::Big { den, num } => (den.clone(), num.to_vec()),
        }
    }
}

impl CycNum {
    fn from_coef(field: &'static Field, c: Coef) -> CycNum {
        CycNum { field, c }
    }

    pub fn zero(n: u32) -> CycNum {
        let f = field(n);
        CycNum::from_coef(f, Coef::Small { den: 1, num: vec![0; f.deg].into() })
    }

    pub fn from_int(n: u32, v: i64) -> CycNum {
        CycNum::from_rat(n, &Rat::int(v))
    }

    pub fn one(n: u32) -> CycNum {
        CycNum::from_int(n, 1)
    }

    pub fn from_rat(n: u32, r: &Rat) -> CycNum {
        let f = field(n);
        let mut num = vec![BigInt::zero(); f.deg];
        num[0] = r.numer().clone();
        CycNum::from_coef(f, finish_big(r.denom().clone(), num))
    }

    /// Builds a value from its power-basis coordinates.
    pub fn from_coeffs(n: u32, coeffs: &[Rat]) -> Result<CycNum> {
        let f = field(n);
        if coeffs.len() != f.deg {
            return Err(Error::InvalidParams(format!(
                "conductor {n} needs {} coefficients, got {}",
                f.deg,
                coeffs.len()
            )));
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycNum::from_coef(f, finish_big(den, num)))
    }

    /// ζ_n, the class of x in ℚ[x]/Φ_n.
    pub fn zeta(n: u32) -> CycNum {
        CycNum::zeta_pow(n, 1)
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> CycNum {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        let mut num = vec![0i64; f.deg];
        for (i, c) in &f.pow[e] {
            num[*i as usize] = *c;
        }
        CycNum::from_coef(f, Coef::Small { den: 1, num: num.into() })
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        let (den, num) = self.c.to_big();
        num.into_iter().map(|v| Rat::from_big(v, den.clone()).unwrap()).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.c {
            Coef::Small { num, .. } => num.iter().all(|v| *v == 0),
            Coef::Big { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.c {
            Coef::Small { den, num } => *den == 1 && num[0] == 1 && num[1..].iter().all(|v| *v == 0),
            Coef::Big { .. } => false,
        }
    }

    /// The value as a rational, when it is one.
    pub fn to_rat(&self) -> Option<Rat> {
        let cs = self.coeffs();
        if cs[1..].iter().all(|c| c.is_zero()) {
            Some(cs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        match &self.c {
            Coef::Small { num, .. } => num[1..].iter().all(|v| *v == 0),
            Coef::Big { num, .. } => num[1..].iter().all(|v| v.is_zero()),
        }
    }

    /// Fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The same value expressed at conductor n.
    pub fn promote(&self, n: u32) -> Result<CycNum> {
        let m = self.field.n;
        if m == n {
            return Ok(self.clone());
        }
        if n % m != 0 {
            return Err(Error::NotADivisor { from: m, to: n });
        }
        let step = (n / m) as usize;
        let target = field(n);
        Ok(self.remap(target, |k| k * step))
    }

    /// Applies the linear map x^k ↦ target.pow[idx(k)].
    fn remap(&self, target: &'static Field, idx: impl Fn(usize) -> usize) -> CycNum {
        match &self.c {
            Coef::Small { den, num } if target.max_pow_coef < TABLE_LIMIT => {
                let mut out = vec![0i128; target.deg];
                for (k, v) in num.iter().enumerate() {
                    if *v == 0 {
                        continue;
                    }
                    for (i, c) in &target.pow[idx(k)] {
                        out[*i as usize] += *v as i128 * *c as i128;
                    }
                }
                CycNum::from_coef(target, finish_i128(*den as i128, out))
            }
            _ => {
                let (den, num) = self.c.to_big();
                let mut out = vec![BigInt::zero(); target.deg];
                for (k, v) in num.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for (i, c) in &target.pow[idx(k)] {
                        out[*i as usize] += v * BigInt::from(*c);
                    }
                }
                CycNum::from_coef(target, finish_big(den, out))
            }
        }
    }

    /// Complex conjugation ζ_n ↦ ζ_n^{n−1}.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// The Galois automorphism ζ_n ↦ ζ_n^k, for k coprime to n.
    pub fn galois(&self, k: i64) -> CycNum {
        let n = self.field.n as i64;
        let k = k.rem_euclid(n) as usize;
        self.remap(self.field, |e| (e * k) % n as usize)
    }

    fn align(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let l = a.field.n.lcm(&b.field.n);
        (a.promote(l).unwrap(), b.promote(l).unwrap())
    }

    fn add_sub(&self, o: &CycNum, sign: i64) -> CycNum {
        if self.field.n != o.field.n {
            let (a, b) = CycNum::align(self, o);
            return a.add_sub(&b, sign);
        }
        let f = self.field;
        match (&self.c, &o.c) {
            (Coef::Small { den: da, num: na }, Coef::Small { den: db, num: nb }) => {
                let (da, db) = (*da as i128, *db as i128);
                let l = da.lcm(&db);
                let (sa, sb) = (l / da, sign as i128 * (l / db));
                let out = na.iter().zip(nb.iter()).map(|(x, y)| *x as i128 * sa + *y as i128 * sb).collect();
                CycNum::from_coef(f, finish_i128(l, out))
            }
            _ => {
                let (da, na) = self.c.to_big();
                let (db, nb) = o.c.to_big();
                let l = da.lcm(&db);
                let sa = &l / &da;
                let sb = (&l / &db) * BigInt::from(sign);
                let out = na.iter().zip(nb.iter()).map(|(x, y)| x * &sa + y * &sb).collect();
                CycNum::from_coef(f, finish_big(l, out))
            }
        }
    }

    fn mul_impl(&self, o: &CycNum) -> CycNum {
        if self.field.n != o.field.n {
            let (a, b) = CycNum::align(self, o);
            return a.mul_impl(&b);
        }
        let f = self.field;
        let n = f.n as usize;
        let d = f.deg;
        match (&self.c, &o.c) {
            (Coef::Small { den: da, num: na }, Coef::Small { den: db, num: nb }) if f.max_pow_coef < TABLE_LIMIT => {
                let mut raw = vec![0i128; 2 * d - 1];
                for (i, x) in na.iter().enumerate() {
                    if *x == 0 {
                        continue;
                    }
                    let x = *x as i128;
                    for (j, y) in nb.iter().enumerate() {
                        raw[i + j] += x * *y as i128;
                    }
                }
                let mut out = raw[..d].to_vec();
                for (e, v) in raw.iter().enumerate().skip(d) {
                    if *v == 0 {
                        continue;
                    }
                    for (i, c) in &f.pow[e % n] {
                        out[*i as usize] += v * *c as i128;
                    }
                }
                CycNum::from_coef(f, finish_i128(*da as i128 * *db as i128, out))
            }
            _ => {
                let (da, na) = self.c.to_big();
                let (db, nb) = o.c.to_big();
                let mut raw = vec![BigInt::zero(); 2 * d - 1];
                for (i, x) in na.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in nb.iter().enumerate() {
                        raw[i + j] += x * y;
                    }
                }
                let mut out: Vec<BigInt> = raw[..d].to_vec();
                for (e, v) in raw.iter().enumerate().skip(d) {
                    if v.is_zero() {
                        continue;
                    }
                    for (i, c) in &f.pow[e % n] {
                        out[*i as usize] += v * BigInt::from(*c);
                    }
                }
                CycNum::from_coef(f, finish_big(da * db, out))
            }
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> CycNum {
        let (den, num) = self.c.to_big();
        let num = num.into_iter().map(|v| v * r.numer()).collect();
        CycNum::from_coef(self.field, finish_big(den * r.denom(), num))
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.field.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse via the product of the nontrivial Galois conjugates.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rat() {
            return Ok(CycNum::from_rat(self.field.n, &r.inv()?));
        }
        let n = self.field.n as i64;
        let mut others = CycNum::one(self.field.n);
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others).to_rat().expect("field norm is rational");
        Ok(others.mul_rat(&norm.inv()?))
    }

    pub fn div(&self, o: &CycNum) -> Result<CycNum> {
        Ok(self * &o.inv()?)
    }

    /// Appends a canonical integer encoding (den, numerators) and returns false
    /// when the value needs big integers.
    pub(crate) fn push_key(&self, out: &mut Vec<i64>) -> bool {
        match &self.c {
            Coef::Small { den, num } => {
                out.push(*den);
                out.extend_from_slice(num);
                true
            }
            Coef::Big { .. } => false,
        }
    }

    /// Approximate value, for diagnostics and test oracles.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs().iter().enumerate() {
            let t = std::f64::consts::TAU * k as f64 / n;
            let v = c.to_f64();
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, o: &CycNum) -> bool {
        if self.field.n == o.field.n {
            self.c == o.c
        } else {
            let (a, b) = CycNum::align(self, o);
            a.c == b.c
        }
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyc({})[", self.field.n)?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for CycNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<CycNum> {
        let bad = || Error::Parse(format!("not a cyclotomic number: `{s}`"));
        let rest = s.trim().strip_prefix("cyc(").ok_or_else(bad)?;
        let (n, rest) = rest.split_once(")[").ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let coeffs = body.split(',').map(str::parse).collect::<Result<Vec<Rat>>>()?;
        if coeffs.len() != totient(n) {
            return Err(bad());
        }
        CycNum::from_coeffs(n, &coeffs)
    }
}

macro_rules! cyc_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                $body(self, o)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                $body(&self, &o)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                $body(&self, o)
            }
        }
    };
}
cyc_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_sub(b, 1));
cyc_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_sub(b, -1));
cyc_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_impl(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let c = match &self.c {
            Coef::Small { den, num } => Coef::Small { den: *den, num: num.iter().map(|v| -v).collect() },
            Coef::Big { den, num } => Coef::Big { den: den.clone(), num: num.iter().map(|v| -v).collect() },
        };
        CycNum::from_coef(self.field, c)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q).unwrap()
    }

    #[test]
    fn basics() {
        let i = CycNum::zeta(4);
        assert_eq!(&i * &i, CycNum::from_int(4, -1));
        assert!(CycNum::zeta(1).is_one());
        let w = CycNum::zeta(3);
        assert_eq!(&w + &(&w * &w), CycNum::from_int(1, -1));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let z = CycNum::zeta(8);
        let s = &z + &z.inv().unwrap();
        assert_eq!(&s * &s, CycNum::from_int(8, 2));
        assert!(s.is_real());
    }

    #[test]
    fn mixed_conductors() {
        let p = &CycNum::zeta(5) * &CycNum::zeta(4);
        assert_eq!(p.conductor(), 20);
        assert_eq!(p, CycNum::zeta_pow(20, 9));
        assert_eq!(CycNum::zeta(8).inv().unwrap(), CycNum::zeta_pow(8, 7));
    }

    #[test]
    fn conj_and_promote() {
        assert_eq!(CycNum::zeta(5).conj(), CycNum::zeta_pow(5, 4));
        let h = CycNum::from_rat(7, &r(3, 2));
        assert_eq!(h.conj(), h);
        assert_eq!(CycNum::zeta(4).promote(20).unwrap(), CycNum::zeta_pow(20, 5));
        assert_eq!(CycNum::zeta(5).promote(20).unwrap(), CycNum::zeta_pow(20, 4));
        assert!(CycNum::one(1).promote(8).unwrap().is_one());
        assert_eq!(CycNum::zeta(8).promote(12), Err(Error::NotADivisor { from: 8, to: 12 }));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(CycNum::zero(12).inv(), Err(Error::DivisionByZero));
        assert_eq!(CycNum::one(3).div(&CycNum::zero(5)), Err(Error::DivisionByZero));
    }

    #[test]
    fn big_fallback_round_trips() {
        let big = CycNum::from_coeffs(4, &[r(1 << 40, 3), r(-5, 1 << 35)]).unwrap();
        let inv = big.inv().unwrap();
        assert!((&big * &inv).is_one());
        let back = &(&big + &CycNum::one(4)) - &big;
        assert!(back.is_one());
        assert_eq!(big.to_string().parse::<CycNum>().unwrap(), big);
    }

    #[test]
    fn text_format() {
        let v = CycNum::from_coeffs(8, &[r(1, 2), r(0, 1), r(-3, 1), r(0, 1)]).unwrap();
        assert_eq!(v.to_string(), "cyc(8)[1/2,0,-3,0]");
        assert_eq!("cyc(8)[1/2,0,-3,0]".parse::<CycNum>().unwrap(), v);
        assert!("cyc(8)[1,2]".parse::<CycNum>().is_err());
        assert!("cyc(0)[1]".parse::<CycNum>().is_err());
        assert!("zeta(8)".parse::<CycNum>().is_err());
    }

    #[test]
    fn order_of_zeta_is_exact() {
        for n in [1u32, 2, 3, 5, 8, 12, 20, 24] {
            let z = CycNum::zeta(n);
            assert!(z.pow(n).is_one());
            for k in 1..n {
                assert!(!z.pow(k).is_one(), "zeta({n})^{k}");
            }
        }
    }
}
