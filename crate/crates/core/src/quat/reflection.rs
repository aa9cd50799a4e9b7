use super::{QMat2, QVec2, Quat};
use crate::error::Result;

/// Default bound on matrix orders.
pub const ORDER_BOUND: u32 = 240;

/// Outcome of the reflection test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReflectionInfo {
    NotReflection,
    /// `root` spans the orthogonal complement of the fixed line; it is not normalized.
    Reflection { order: u32, root: QVec2 },
}

impl ReflectionInfo {
    pub fn is_reflection(&self) -> bool {
        matches!(self, ReflectionInfo::Reflection { .. })
    }
}

/// v ∈ ℍu for the left span of a nonzero u.
pub fn in_left_span(u: &QVec2, v: &QVec2) -> bool {
    if !u[0].is_zero() {
        // v = λu with λ = v₀u₀⁻¹, so v₁·N(u₀) = v₀ ū₀ u₁
        let lhs = v[1].scale(&u[0].norm());
        let rhs = &(&v[0] * &u[0].conj()) * &u[1];
        lhs == rhs
    } else {
        v[0].is_zero()
    }
}

/// Root direction of A when its fixed space {v : vA = v} is a line, without computing the order.
pub fn reflection_root(a: &QMat2) -> Option<QVec2> {
    let b = a.sub(&QMat2::identity());
    let r1: QVec2 = [b.e[0][0].clone(), b.e[0][1].clone()];
    let r2: QVec2 = [b.e[1][0].clone(), b.e[1][1].clone()];
    let r1_zero = r1[0].is_zero() && r1[1].is_zero();
    let r2_zero = r2[0].is_zero() && r2[1].is_zero();
    if r1_zero && r2_zero {
        return None;
    }
    if r1_zero {
        return Some([Quat::zero(), Quat::one()]);
    }
    if !in_left_span(&r1, &r2) {
        return None;
    }
    let c = if r1[0].is_zero() { 1 } else { 0 };
    let n = Quat::from_complex(r1[c].norm());
    Some([n, &r1[c] * &r2[c].conj()])
}

/// Decides whether A is a reflection, returning its order and root if so.
pub fn quat_is_reflection(a: &QMat2) -> Result<ReflectionInfo> {
    quat_is_reflection_bounded(a, ORDER_BOUND)
}

pub fn quat_is_reflection_bounded(a: &QMat2, bound: u32) -> Result<ReflectionInfo> {
    match reflection_root(a) {
        None => Ok(ReflectionInfo::NotReflection),
        Some(root) => Ok(ReflectionInfo::Reflection { order: a.order(bound)?, root }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn basic_cases() {
        let r = quat_is_reflection(&QMat2::diag(Quat::from_int(-1), Quat::one())).unwrap();
        match r {
            ReflectionInfo::Reflection { order, root } => {
                assert_eq!(order, 2);
                assert!(in_left_span(&[Quat::one(), Quat::zero()], &root));
            }
            _ => panic!("expected a reflection"),
        }
        let s = quat_is_reflection(&QMat2::swap()).unwrap();
        match s {
            ReflectionInfo::Reflection { order, root } => {
                assert_eq!(order, 2);
                assert!(in_left_span(&[Quat::one(), Quat::from_int(-1)], &root));
            }
            _ => panic!("expected a reflection"),
        }
        let d = QMat2::diag(Quat::i(), Quat::i());
        assert_eq!(quat_is_reflection(&d).unwrap(), ReflectionInfo::NotReflection);
        assert_eq!(quat_is_reflection(&QMat2::identity()).unwrap(), ReflectionInfo::NotReflection);
    }

    #[test]
    fn order_bound_is_enforced() {
        let d = QMat2::diag(crate::quat::consts::zeta(7), Quat::one());
        assert_eq!(quat_is_reflection_bounded(&d, 5), Err(Error::NotFiniteOrder(5)));
    }

    #[test]
    fn span_membership() {
        let u = [Quat::one(), Quat::j()];
        assert!(in_left_span(&u, &[Quat::k(), -&Quat::i()]));
        assert!(!in_left_span(&[Quat::one(), Quat::zero()], &[Quat::zero(), Quat::one()]));
        assert!(in_left_span(&[Quat::one(), Quat::one()], &[Quat::i(), Quat::i()]));
        assert!(in_left_span(&[Quat::zero(), Quat::one()], &[Quat::zero(), Quat::k()]));
    }
}
