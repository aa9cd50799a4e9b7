use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use super::Quat;
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};

/// A 2×2 quaternionic matrix acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat2 {
    pub e: [[Quat; 2]; 2],
}

/// Row vector in ℍ².
pub type QVec2 = [Quat; 2];

impl QMat2 {
    pub fn new(a: Quat, b: Quat, c: Quat, d: Quat) -> QMat2 {
        QMat2 { e: [[a, b], [c, d]] }
    }

    pub fn identity() -> QMat2 {
        QMat2::diag(Quat::one(), Quat::one())
    }

    pub fn diag(a: Quat, d: Quat) -> QMat2 {
        QMat2::new(a, Quat::zero(), Quat::zero(), d)
    }

    pub fn antidiag(b: Quat, c: Quat) -> QMat2 {
        QMat2::new(Quat::zero(), b, c, Quat::zero())
    }

    /// [[0,1],[1,0]].
    pub fn swap() -> QMat2 {
        QMat2::antidiag(Quat::one(), Quat::one())
    }

    pub fn from_rats(r: [[i64; 2]; 2]) -> QMat2 {
        QMat2::new(Quat::from_int(r[0][0]), Quat::from_int(r[0][1]), Quat::from_int(r[1][0]), Quat::from_int(r[1][1]))
    }

    pub fn is_identity(&self) -> bool {
        self.e[0][0].is_one() && self.e[1][1].is_one() && self.e[0][1].is_zero() && self.e[1][0].is_zero()
    }

    pub fn is_complex_type(&self) -> bool {
        self.e.iter().flatten().all(Quat::is_complex)
    }

    pub fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.e.iter().flatten().fold(4, |acc, q| acc.lcm(&q.conductor()))
    }

    pub fn promote(&self, n: u32) -> Result<QMat2> {
        let p = |q: &Quat| q.promote(n);
        Ok(QMat2::new(p(&self.e[0][0])?, p(&self.e[0][1])?, p(&self.e[1][0])?, p(&self.e[1][1])?))
    }

    pub fn map(&self, f: impl Fn(&Quat) -> Quat) -> QMat2 {
        QMat2::new(f(&self.e[0][0]), f(&self.e[0][1]), f(&self.e[1][0]), f(&self.e[1][1]))
    }

    pub fn conj_transpose(&self) -> QMat2 {
        QMat2::new(self.e[0][0].conj(), self.e[1][0].conj(), self.e[0][1].conj(), self.e[1][1].conj())
    }

    pub fn is_unitary(&self) -> bool {
        (self * &self.conj_transpose()).is_identity()
    }

    pub fn inverse_of_unitary(&self) -> Result<QMat2> {
        let ct = self.conj_transpose();
        if (self * &ct).is_identity() {
            Ok(ct)
        } else {
            Err(Error::NotUnitary)
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> QMat2 {
        self.map(|q| q.mul_rat(r))
    }

    pub fn scale(&self, c: &CycNum) -> QMat2 {
        self.map(|q| q.scale(c))
    }

    pub fn neg(&self) -> QMat2 {
        self.map(|q| -q)
    }

    pub fn sub(&self, o: &QMat2) -> QMat2 {
        let s = |r: usize, c: usize| &self.e[r][c] - &o.e[r][c];
        QMat2::new(s(0, 0), s(0, 1), s(1, 0), s(1, 1))
    }

    /// v·A for a row vector v.
    pub fn act(&self, v: &QVec2) -> QVec2 {
        [dot2(&v[0], &self.e[0][0], &v[1], &self.e[1][0]), dot2(&v[0], &self.e[0][1], &v[1], &self.e[1][1])]
    }

    pub fn order(&self, bound: u32) -> Result<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = &acc * self;
        }
        Err(Error::NotFiniteOrder(bound))
    }

    pub fn pow(&self, e: u32) -> QMat2 {
        let mut acc = QMat2::identity();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Canonical integer key at conductor `n`; `None` when some entry needs big integers.
    pub(crate) fn small_key(&self, n: u32) -> Option<Box<[i64]>> {
        let mut out = Vec::with_capacity(64);
        for q in self.e.iter().flatten() {
            if !q.push_key(n, &mut out) {
                return None;
            }
        }
        Some(out.into())
    }
}

/// a·b + c·d with zero skipping.
fn dot2(a: &Quat, b: &Quat, c: &Quat, d: &Quat) -> Quat {
    let l = !a.is_zero() && !b.is_zero();
    let r = !c.is_zero() && !d.is_zero();
    match (l, r) {
        (true, true) => &(a * b) + &(c * d),
        (true, false) => a * b,
        (false, true) => c * d,
        (false, false) => Quat::zero(),
    }
}

impl Mul<&QMat2> for &QMat2 {
    type Output = QMat2;
    fn mul(self, o: &QMat2) -> QMat2 {
        let a = &self.e;
        let b = &o.e;
        QMat2::new(
            dot2(&a[0][0], &b[0][0], &a[0][1], &b[1][0]),
            dot2(&a[0][0], &b[0][1], &a[0][1], &b[1][1]),
            dot2(&a[1][0], &b[0][0], &a[1][1], &b[1][0]),
            dot2(&a[1][0], &b[0][1], &a[1][1], &b[1][1]),
        )
    }
}

impl Mul for QMat2 {
    type Output = QMat2;
    fn mul(self, o: QMat2) -> QMat2 {
        &self * &o
    }
}

impl fmt::Display for QMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.e;
        write!(f, "[[{},{}],[{},{}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

impl fmt::Debug for QMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits at top-level commas, ignoring those nested in brackets or braces.
pub(crate) fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '{' | '(' => depth += 1,
            ']' | '}' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for QMat2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<QMat2> {
        let bad = || Error::Parse(format!("not a 2x2 matrix: `{s}`"));
        let body = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let rows = split_top(body);
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut qs = Vec::new();
        for row in rows {
            let inner = row.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
            let cols = split_top(inner);
            if cols.len() != 2 {
                return Err(bad());
            }
            for c in cols {
                qs.push(c.parse::<Quat>()?);
            }
        }
        let mut it = qs.into_iter();
        Ok(QMat2::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::consts;

    #[test]
    fn swap_squares_to_identity() {
        assert!((&QMat2::swap() * &QMat2::swap()).is_identity());
    }

    #[test]
    fn row_action() {
        let v = [Quat::one(), Quat::zero()];
        let w = QMat2::swap().act(&v);
        assert!(w[0].is_zero() && w[1].is_one());
    }

    #[test]
    fn non_unitary_rejected() {
        let a = QMat2::from_rats([[1, 1], [0, 1]]);
        assert_eq!(a.inverse_of_unitary(), Err(Error::NotUnitary));
        let t = QMat2::from_rats([[1, 1], [1, -1]]).scale(&consts::inv_sqrt2());
        assert!(t.is_unitary());
        assert_eq!(t.inverse_of_unitary().unwrap(), t);
    }

    #[test]
    fn text_round_trip() {
        let m = QMat2::diag(consts::delta(), Quat::j());
        let s = m.to_string();
        assert_eq!(s.parse::<QMat2>().unwrap(), m);
        assert!("[[q[1,0,0,0]]]".parse::<QMat2>().is_err());
    }
}
