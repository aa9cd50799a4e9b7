//! Systems of imprimitivity: pairs of orthogonal lines permuted by a group.

use std::fmt;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::extpoly::{parse_extpoly_descriptor, ExtPolyGroup};
use crate::gkh::{parse_gkh_descriptor, GKHGroup};
use crate::quat::{consts, in_left_span, QMat2, QVec2, Quat};
use crate::sgroups::{AutKind, QuotAut, SGroup, Tag};

/// The left span ℍu of a nonzero vector.
#[derive(Clone, Debug)]
pub struct Line {
    pub u: QVec2,
}

impl Line {
    pub fn new(u: QVec2) -> Line {
        Line { u }
    }

    /// The line through (1, θ).
    pub fn graph(theta: Quat) -> Line {
        Line::new([Quat::one(), theta])
    }
}

impl PartialEq for Line {
    fn eq(&self, o: &Line) -> bool {
        in_left_span(&self.u, &o.u) && in_left_span(&o.u, &self.u)
    }
}

pub fn line_contains(l: &Line, v: &QVec2) -> bool {
    in_left_span(&l.u, v)
}

/// An unordered pair of lines.
#[derive(Clone, Debug)]
pub struct SoI {
    pub first: Line,
    pub second: Line,
}

impl PartialEq for SoI {
    fn eq(&self, o: &SoI) -> bool {
        (self.first == o.first && self.second == o.second) || (self.first == o.second && self.second == o.first)
    }
}

impl SoI {
    pub fn new(u: QVec2, v: QVec2) -> SoI {
        SoI { first: Line::new(u), second: Line::new(v) }
    }

    pub fn standard() -> SoI {
        SoI::new([Quat::one(), Quat::zero()], [Quat::zero(), Quat::one()])
    }

    /// ⟨⟨(1,1),(1,−1)⟩⟩.
    pub fn diagonal() -> SoI {
        SoI::new([Quat::one(), Quat::one()], [Quat::one(), Quat::from_int(-1)])
    }

    /// ⟨⟨(1,θ),(θ,1)⟩⟩.
    pub fn pure(theta: Quat) -> SoI {
        SoI::new([Quat::one(), theta.clone()], [theta, Quat::one()])
    }

    /// Σ u_h v̄_h.
    pub fn inner(&self) -> Quat {
        let (u, v) = (&self.first.u, &self.second.u);
        &(&u[0] * &v[0].conj()) + &(&u[1] * &v[1].conj())
    }
}

/// Whether every matrix maps the two lines onto the two lines.
pub fn soi_preserved(mats: &[QMat2], s: &SoI) -> bool {
    mats.iter().all(|g| {
        let (a, b) = (g.act(&s.first.u), g.act(&s.second.u));
        (line_contains(&s.first, &a) && line_contains(&s.second, &b))
            || (line_contains(&s.second, &a) && line_contains(&s.first, &b))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Generators,
    Full,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "generators" => Ok(Mode::Generators),
            "full" => Ok(Mode::Full),
            _ => Err(Error::Parse(format!("mode {s}"))),
        }
    }
}

/// A finite matrix group that can be tested against candidate systems.
pub trait MatrixGroup {
    fn generator_matrices(&self) -> Vec<QMat2>;
    fn element_matrices(&self) -> Vec<QMat2>;
    /// |H| for G(K,H,φ); `None` when the group is not of that shape.
    fn h_order(&self) -> Option<usize>;
    fn name(&self) -> String;
}

impl MatrixGroup for GKHGroup {
    fn generator_matrices(&self) -> Vec<QMat2> {
        self.group.gens.clone()
    }

    fn element_matrices(&self) -> Vec<QMat2> {
        self.group.elements.clone()
    }

    fn h_order(&self) -> Option<usize> {
        Some(self.h().order())
    }

    fn name(&self) -> String {
        self.descriptor.clone()
    }
}

impl MatrixGroup for ExtPolyGroup {
    fn generator_matrices(&self) -> Vec<QMat2> {
        let mut gens: Vec<usize> = Vec::new();
        let mut size = 1;
        for i in 0..self.order() {
            if size == self.order() {
                break;
            }
            let mut trial = gens.clone();
            trial.push(i);
            let n = self.generated_order(&trial);
            if n > size {
                gens = trial;
                size = n;
            }
        }
        gens.iter().map(|i| self.matrix(*i)).collect()
    }

    fn element_matrices(&self) -> Vec<QMat2> {
        self.elements()
    }

    fn h_order(&self) -> Option<usize> {
        None
    }

    fn name(&self) -> String {
        self.descriptor()
    }
}

pub fn soi_preserved_by<G: MatrixGroup + ?Sized>(g: &G, s: &SoI, mode: Mode) -> bool {
    match mode {
        Mode::Generators => soi_preserved(&g.generator_matrices(), s),
        Mode::Full => soi_preserved(&g.element_matrices(), s),
    }
}

/// Direction of θ in ⟨⟨(1,θ),(θ,1)⟩⟩, or the diagonal system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Diagonal,
    I,
    J,
    K,
    Delta,
}

impl Direction {
    pub const PURE: [Direction; 4] = [Direction::I, Direction::J, Direction::K, Direction::Delta];

    pub fn unit(self) -> Quat {
        match self {
            Direction::Diagonal => Quat::one(),
            Direction::I => Quat::i(),
            Direction::J => Quat::j(),
            Direction::K => Quat::k(),
            Direction::Delta => consts::delta(),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Direction::Diagonal => "1",
            Direction::I => "i",
            Direction::J => "j",
            Direction::K => "k",
            Direction::Delta => "delta",
        }
    }

    /// Tag of the one-parameter family along this direction.
    pub fn family_tag(self) -> &'static str {
        match self {
            Direction::Diagonal => "11",
            Direction::I => "ai",
            Direction::J => "rj",
            Direction::K => "ck",
            Direction::Delta => "rdelta",
        }
    }
}

/// A candidate that was found to be preserved.
#[derive(Clone, Debug)]
pub struct Found {
    pub soi: SoI,
    pub direction: Direction,
    pub coeff: Rat,
}

impl Found {
    fn new(direction: Direction, coeff: Rat) -> Found {
        let soi = match direction {
            Direction::Diagonal => SoI::diagonal(),
            d => SoI::pure(d.unit().mul_rat(&coeff)),
        };
        Found { soi, direction, coeff }
    }

    pub fn label(&self) -> (String, String) {
        match self.direction {
            Direction::Diagonal => ("(1,1)".into(), "(1,-1)".into()),
            d => {
                let t = if self.coeff == Rat::one() {
                    d.symbol().to_string()
                } else {
                    format!("{}*{}", self.coeff, d.symbol())
                };
                (format!("(1,{t})"), format!("({t},1)"))
            }
        }
    }
}

impl fmt::Display for Found {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = self.label();
        write!(f, "<<{u},{v}>>")
    }
}

fn push_unique(out: &mut Vec<Found>, f: Found) {
    if !out.iter().any(|g| g.soi == f.soi) {
        out.push(f);
    }
}

/// Tests ⟨⟨(1,1),(1,−1)⟩⟩ and ⟨⟨(1,θ),(θ,1)⟩⟩ for θ a sampled multiple of i, j, k or δ.
pub fn soi_search_structured<G: MatrixGroup + ?Sized>(g: &G, samples: &[Rat]) -> Vec<Found> {
    soi_search_mode(g, samples, Mode::Generators)
}

pub fn soi_search_mode<G: MatrixGroup + ?Sized>(g: &G, samples: &[Rat], mode: Mode) -> Vec<Found> {
    let h = g.h_order();
    if h.is_some_and(|h| h > 2) {
        return Vec::new();
    }
    let mats = match mode {
        Mode::Generators => g.generator_matrices(),
        Mode::Full => g.element_matrices(),
    };
    let mut out = Vec::new();
    let diag = Found::new(Direction::Diagonal, Rat::one());
    if soi_preserved(&mats, &diag.soi) {
        out.push(diag);
    }
    let coeffs: Vec<Rat> = if h == Some(2) {
        vec![Rat::one()]
    } else {
        samples.iter().filter(|r| !r.is_zero()).cloned().collect()
    };
    for d in Direction::PURE {
        for c in &coeffs {
            let f = Found::new(d, c.clone());
            if soi_preserved(&mats, &f.soi) {
                push_unique(&mut out, f);
            }
        }
    }
    out
}

/// Result of the symbolic classification.
#[derive(Clone, Debug)]
pub struct Classification {
    pub group: String,
    pub concrete: Vec<Direction>,
    pub families: Vec<Direction>,
    /// For D₁ every θ ∈ ℝi + ℝk gives a system (of norm 1 when |H| = 2); the
    /// listed directions are representatives up to the normaliser.
    pub ik_plane: Option<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SystemEntry {
    pub u: String,
    pub v: String,
    pub kind: String,
    pub direction: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SoiReport {
    pub group: String,
    pub systems: Vec<SystemEntry>,
}

impl Classification {
    fn empty(group: &str) -> Classification {
        Classification { group: group.to_string(), concrete: Vec::new(), families: Vec::new(), ik_plane: None }
    }

    pub fn is_empty(&self) -> bool {
        self.concrete.is_empty() && self.families.is_empty()
    }

    /// Concrete systems plus every family sampled at the given coefficients.
    pub fn instances(&self, samples: &[Rat]) -> Vec<Found> {
        let mut out = Vec::new();
        for d in &self.concrete {
            push_unique(&mut out, Found::new(*d, Rat::one()));
        }
        for d in &self.families {
            for r in samples.iter().filter(|r| !r.is_zero()) {
                push_unique(&mut out, Found::new(*d, r.clone()));
            }
        }
        out
    }

    /// Whether a system belongs to the classified set.
    pub fn admits(&self, s: &SoI) -> bool {
        if self.concrete.iter().any(|d| Found::new(*d, Rat::one()).soi == *s) {
            return true;
        }
        if let Some(unit) = self.ik_plane {
            let on_plane = [&s.first, &s.second].iter().any(|l| match graph_coordinate(l) {
                Some(q) if !q.is_zero() => {
                    let c = q.coords();
                    c[0].is_zero() && c[2].is_zero() && (!unit || q.norm().is_one())
                }
                _ => false,
            });
            if on_plane {
                return true;
            }
        }
        self.families.iter().any(|d| {
            let unit = d.unit();
            [&s.first, &s.second].iter().any(|l| match graph_coordinate(l) {
                Some(q) if !q.is_zero() => (&q * &unit.conj()).is_complex() && (&q * &unit.conj()).z().is_real(),
                _ => false,
            })
        })
    }

    pub fn report(&self) -> SoiReport {
        let mut systems = Vec::new();
        for d in &self.concrete {
            let (u, v) = Found::new(*d, Rat::one()).label();
            systems.push(SystemEntry { u, v, kind: "concrete".into(), direction: d.symbol().into() });
        }
        for d in &self.families {
            let (u, v) = (format!("(1,r*{})", d.symbol()), format!("(r*{},1)", d.symbol()));
            systems.push(SystemEntry { u, v, kind: "family".into(), direction: d.family_tag().into() });
        }
        SoiReport { group: self.group.clone(), systems }
    }
}

/// θ with ℍu = ℍ(1,θ), when the first coordinate is nonzero.
fn graph_coordinate(l: &Line) -> Option<Quat> {
    if l.u[0].is_zero() {
        return None;
    }
    Some(&l.u[0].inv().ok()? * &l.u[1])
}

fn dihedral_rules(name: &str, m: u32, l: u32, r: i64) -> Classification {
    let mut c = Classification::empty(name);
    if l > 2 {
        return c;
    }
    let (m, tm) = (m as i64, 2 * m as i64);
    let plus = (r - 1).rem_euclid(m) == 0;
    let minus = (r + 1).rem_euclid(m) == 0;
    if plus {
        c.concrete.push(Direction::Diagonal);
    }
    if l == 1 && (r - 1).rem_euclid(tm) == 0 {
        c.families.push(Direction::I);
    } else if plus {
        c.concrete.push(Direction::I);
    }
    if minus {
        c.concrete.push(Direction::J);
    }
    if m == 1 {
        c.ik_plane = Some(l == 2);
    }
    if l == 1 && (r + 1).rem_euclid(tm) == 0 {
        c.families.push(Direction::K);
    } else if minus {
        c.concrete.push(Direction::K);
    }
    c
}

fn polyhedral_rules(name: &str, phi: &QuotAut) -> Result<Classification> {
    let q = phi.quotient.clone();
    let k = &q.k.tag;
    let h = q.h.order();
    let mut c = Classification::empty(name);
    let same = |kind: &str| -> bool {
        kind.parse::<AutKind>().ok().and_then(|a| QuotAut::new(a, q.clone()).ok()).is_some_and(|a| a.same_map(phi))
    };
    let known: &[(Tag, usize, &str)] = &[
        (Tag::T, 24, "1"),
        (Tag::T, 8, "rho:delta"),
        (Tag::T, 2, "rho:delta"),
        (Tag::T, 1, "rho:delta"),
        (Tag::O, 48, "1"),
        (Tag::O, 24, "1"),
        (Tag::O, 8, "1"),
        (Tag::O, 2, "1"),
        (Tag::O, 1, "beta"),
        (Tag::O, 1, "rho:delta"),
        (Tag::I, 120, "1"),
        (Tag::I, 2, "1"),
        (Tag::I, 2, "theta"),
        (Tag::I, 1, "theta"),
        (Tag::I, 1, "rho:j"),
    ];
    let hit = known.iter().find(|(kt, ho, kind)| kt == k && *ho == h && same(kind));
    let Some((_, _, kind)) = hit else {
        return Err(Error::UnknownFamily(name.to_string()));
    };
    match (k, h, *kind) {
        (Tag::T, 2, "rho:delta") => c.concrete.push(Direction::Delta),
        (Tag::T, 1, "rho:delta") | (Tag::O, 1, "rho:delta") => c.families.push(Direction::Delta),
        (Tag::O, 2, "1") | (Tag::O, 1, "beta") | (Tag::I, 2, "1") => c.concrete.push(Direction::Diagonal),
        (Tag::I, 1, "rho:j") => c.families.push(Direction::J),
        _ => {}
    }
    Ok(c)
}

/// Classification of the extra systems of a group from its descriptor.
pub fn soi_classify(desc: &str) -> Result<Classification> {
    let desc = desc.trim();
    if desc.starts_with("Cbox") {
        let (d, f, k) = parse_extpoly_descriptor(desc)?;
        let mut c = Classification::empty(desc);
        if d == 4 && matches!((f, &k), (1, Tag::O) | (2, Tag::O) | (1, Tag::I)) {
            c.concrete = vec![Direction::J, Direction::K];
            return Ok(c);
        }
        if crate::extpoly::extpoly_expected(d, f, &k) {
            return Ok(c);
        }
        return Err(Error::UnknownFamily(desc.to_string()));
    }
    let (k, h, phi) = parse_gkh_descriptor(desc).map_err(|_| Error::UnknownFamily(desc.to_string()))?;
    let kg = Arc::new(SGroup::build(k.clone())?);
    let aut = crate::gkh::make_aut(kg, &h, &phi)?;
    match k {
        Tag::D(m) => {
            let hq = &aut.quotient.h;
            match (&hq.tag, &aut.kind) {
                (_, _) if hq.order() > 2 => Ok(Classification::empty(desc)),
                (Tag::C(l), AutKind::Psi(r)) => Ok(dihedral_rules(desc, m, *l, *r)),
                _ => Err(Error::UnknownFamily(desc.to_string())),
            }
        }
        Tag::T | Tag::O | Tag::I => polyhedral_rules(desc, &aut),
        _ => Err(Error::UnknownFamily(desc.to_string())),
    }
}

fn random_rat(rng: &mut StdRng) -> Rat {
    let num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    Rat::new(num, den).expect("nonzero denominator")
}

/// Random candidates u = (1,q), v = (−q̄,1) with q in ℚ⟨1,i,j,k⟩ or on the δ axis; returns those preserved.
pub fn soi_fuzz<G: MatrixGroup + ?Sized>(g: &G, trials: usize, seed: u64) -> Vec<SoI> {
    let mut rng = StdRng::seed_from_u64(seed);
    let gens = g.generator_matrices();
    let mut out: Vec<SoI> = Vec::new();
    for t in 0..trials {
        let q = if t % 4 == 3 {
            consts::delta().mul_rat(&random_rat(&mut rng))
        } else {
            let pure = t % 2 == 0;
            let a = if pure { Rat::zero() } else { random_rat(&mut rng) };
            Quat::from_rats([a, random_rat(&mut rng), random_rat(&mut rng), random_rat(&mut rng)])
        };
        if q.is_zero() {
            continue;
        }
        let s = SoI::new([Quat::one(), q.clone()], [-q.conj(), Quat::one()]);
        if soi_preserved(&gens, &s) && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// Sample set used when none is supplied.
pub fn default_samples() -> Vec<Rat> {
    ["1", "-1", "1/2", "-1/2", "2/3"].iter().map(|s| s.parse().expect("rational literal")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkh::gkh_build_desc;

    #[test]
    fn membership() {
        let l = Line::graph(Quat::j());
        assert!(line_contains(&l, &[Quat::k(), -Quat::i()]));
        assert!(!line_contains(&Line::new([Quat::one(), Quat::zero()]), &[Quat::zero(), Quat::one()]));
        assert!(line_contains(&Line::graph(Quat::one()), &[Quat::i(), Quat::i()]));
    }

    #[test]
    fn unordered_pairs() {
        assert_eq!(SoI::pure(Quat::i()), SoI::pure(-Quat::i()));
        let half = Rat::new(1, 2).unwrap();
        assert_eq!(SoI::pure(Quat::i().mul_rat(&Rat::int(2))), SoI::pure(Quat::i().mul_rat(&-half)));
        assert_ne!(SoI::pure(Quat::i()), SoI::pure(Quat::j()));
        assert!(SoI::pure(consts::delta().mul_rat(&Rat::int(3))).inner().is_zero());
    }

    #[test]
    fn preserved_examples() {
        let g = gkh_build_desc("G(O,C:2,1)").unwrap();
        assert!(soi_preserved_by(&g, &SoI::diagonal(), Mode::Generators));
        assert!(soi_preserved_by(&g, &SoI::diagonal(), Mode::Full));
        let g = gkh_build_desc("G(I,1,rho:j)").unwrap();
        let s = SoI::pure(Quat::j().mul_rat(&Rat::new(2, 3).unwrap()));
        assert!(soi_preserved_by(&g, &s, Mode::Full));
        let g = gkh_build_desc("G(T,T,1)").unwrap();
        assert!(!soi_preserved_by(&g, &SoI::diagonal(), Mode::Generators));
        assert!(!soi_preserved_by(&g, &SoI::diagonal(), Mode::Full));
        assert!(soi_preserved_by(&g, &SoI::standard(), Mode::Full));
    }

    #[test]
    fn structured_search_examples() {
        let s: Vec<Rat> = vec![Rat::one(), Rat::new(1, 2).unwrap()];
        let g = gkh_build_desc("G(D:2,1,psi:1)").unwrap();
        let found: Vec<String> = soi_search_structured(&g, &s).iter().map(|f| f.to_string()).collect();
        assert_eq!(found, ["<<(1,1),(1,-1)>>", "<<(1,i),(i,1)>>", "<<(1,1/2*i),(1/2*i,1)>>", "<<(1,j),(j,1)>>", "<<(1,k),(k,1)>>"]);
        let s2 = vec![Rat::one(), Rat::int(2)];
        let g = gkh_build_desc("G(O,1,rho:delta)").unwrap();
        let found: Vec<String> = soi_search_structured(&g, &s2).iter().map(|f| f.to_string()).collect();
        assert_eq!(found, ["<<(1,delta),(delta,1)>>", "<<(1,2*delta),(2*delta,1)>>"]);
        let g = gkh_build_desc("G(O,O,1)").unwrap();
        assert!(soi_search_structured(&g, &s2).is_empty());
    }

    #[test]
    fn classify_examples() {
        let c = soi_classify("G(D:1,1,psi:1)").unwrap();
        assert_eq!(c.concrete, [Direction::Diagonal, Direction::J]);
        assert_eq!(c.families, [Direction::I, Direction::K]);
        let c = soi_classify("G(D:5,C:2,psi:1)").unwrap();
        assert_eq!(c.concrete, [Direction::Diagonal, Direction::I]);
        assert!(c.families.is_empty());
        assert!(soi_classify("G(I,C:2,theta)").unwrap().is_empty());
        assert!(soi_classify("G(I,1,theta)").unwrap().is_empty());
        assert!(matches!(soi_classify("ST(12)"), Err(Error::UnknownFamily(_))));
        assert!(matches!(soi_classify("G(T,1,rho:i)"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn report_shape() {
        let r = soi_classify("G(T,1,rho:delta)").unwrap().report();
        assert_eq!(r.systems.len(), 1);
        assert_eq!(r.systems[0].kind, "family");
        assert_eq!(r.systems[0].direction, "rdelta");
    }
}
