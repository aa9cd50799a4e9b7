#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::TestCaseError;

use qrg::conj::Witness;
use qrg::extpoly::theta_embed;
use qrg::gkh::gkh_build_desc;
use qrg::quat::consts;
use qrg::soi::{soi_preserved, SoI};
use qrg::{CycNum, QMat2, Quat, Rat, SGroup, Tag};

/// (conductor, degree of the cyclotomic field)
const FIELDS: [(u32, usize); 9] = [(1, 1), (3, 2), (4, 2), (5, 4), (8, 4), (12, 4), (15, 8), (20, 8), (24, 8)];

pub fn rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| Rat::new(p, q).unwrap())
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn cyc() -> impl Strategy<Value = CycNum> {
    prop::sample::select(FIELDS.to_vec())
        .prop_flat_map(|(n, deg)| prop::collection::vec(rat(), deg).prop_map(move |c| CycNum::from_coeffs(n, &c).unwrap()))
}

pub fn quat() -> impl Strategy<Value = Quat> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(|(n, deg)| {
        (prop::collection::vec(rat(), deg), prop::collection::vec(rat(), deg))
            .prop_map(move |(a, b)| Quat::new(CycNum::from_coeffs(n, &a).unwrap(), CycNum::from_coeffs(n, &b).unwrap()))
    })
}

pub fn field_axioms(a: &CycNum, b: &CycNum, c: &CycNum) -> Result<(), TestCaseError> {
    let zero = CycNum::zero(1);
    let one = CycNum::one(1);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + &zero, a.clone());
    prop_assert_eq!(a * &one, a.clone());
    prop_assert_eq!(a + &(-a), zero);
    if !a.is_zero() {
        prop_assert_eq!(a * &a.inv().unwrap(), one);
    }
    Ok(())
}

pub fn norm_multiplicative(p: &Quat, q: &Quat) -> Result<(), TestCaseError> {
    prop_assert_eq!((p * q).norm(), &p.norm() * &q.norm());
    prop_assert!(p.norm().is_real());
    Ok(())
}

fn polyhedral() -> &'static Vec<Quat> {
    static ELEMS: OnceLock<Vec<Quat>> = OnceLock::new();
    ELEMS.get_or_init(|| {
        let mut v = Vec::new();
        for t in [Tag::T, Tag::O, Tag::I] {
            v.extend(SGroup::build(t).unwrap().elements().iter().cloned());
        }
        v
    })
}

/// (α, ξ) with α a root of unity and ξ in T, O or I.
pub fn theta_arg() -> impl Strategy<Value = (Quat, Quat)> {
    (prop::sample::select(vec![2u32, 4, 6, 8, 10, 12]), 0i64..12, any::<Index>())
        .prop_map(|(d, k, i)| (consts::zeta_pow(d, k), i.get(polyhedral()).clone()))
}

pub fn theta_multiplicative(a: &(Quat, Quat), b: &(Quat, Quat)) -> Result<(), TestCaseError> {
    let lhs = &theta_embed(&a.0, &a.1).unwrap() * &theta_embed(&b.0, &b.1).unwrap();
    let rhs = theta_embed(&(&a.0 * &b.0), &(&a.1 * &b.1)).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub struct Row4 {
    pub desc: &'static str,
    pub gens: Vec<QMat2>,
    /// Direction of the listed system; `None` for ⟨⟨(1,1),(1,−1)⟩⟩.
    pub theta: Option<Quat>,
    /// Whether the system comes in a one-parameter family.
    pub family: bool,
}

pub fn table4() -> &'static Vec<Row4> {
    static ROWS: OnceLock<Vec<Row4>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let rows: [(&str, Option<Quat>, bool); 7] = [
            ("G(T,C:2,rho:delta)", Some(consts::delta()), false),
            ("G(T,1,rho:delta)", Some(consts::delta()), true),
            ("G(O,C:2,1)", None, false),
            ("G(O,1,beta)", None, false),
            ("G(O,1,rho:delta)", Some(consts::delta()), true),
            ("G(I,C:2,1)", None, false),
            ("G(I,1,rho:j)", Some(Quat::j()), true),
        ];
        rows.into_iter()
            .map(|(desc, theta, family)| Row4 { desc, gens: gkh_build_desc(desc).unwrap().group.gens.clone(), theta, family })
            .collect()
    })
}

/// The witness matrix of a Table 4 system has the system as its rows and is a scaled involution.
pub fn witness_sane(row: &Row4, r: &Rat) -> Result<(), TestCaseError> {
    let r = if row.family { r.clone() } else { Rat::one() };
    let (w, soi) = match &row.theta {
        Some(t) => {
            let rt = t.mul_rat(&r);
            (Witness::r(r.clone(), t.clone(), "theta").unwrap(), SoI::new([Quat::one(), rt.clone()], [rt, Quat::one()]))
        }
        None => (Witness::t(), SoI::new([Quat::one(), Quat::one()], [Quat::one(), -Quat::one()])),
    };
    prop_assert!(w.is_sane());
    let sq = &w.mat * &w.mat;
    prop_assert_eq!(sq, QMat2::identity().scale_rat(&w.c));
    prop_assert!(SoI::new(w.mat.e[0].clone(), w.mat.e[1].clone()) == soi);
    prop_assert!(soi_preserved(&row.gens, &soi), "{} does not preserve its system at r = {}", row.desc, r);
    Ok(())
}
