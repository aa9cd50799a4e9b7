//! The groups C_d ∘_f K and C_d ⊡_f K built from a cyclic group and a binary polyhedral group.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::quat::{consts, quat_is_reflection, QMat2, Quat, ReflectionInfo};
use crate::sgroups::{Quotient, SGroup, Tag};

/// θ(α,ξ): the matrix of h ↦ α h ξ̄ on ℍ with basis {1, j}.
pub fn theta_embed(alpha: &Quat, xi: &Quat) -> Result<QMat2> {
    if !alpha.is_complex() {
        return Err(Error::NotComplex);
    }
    if !alpha.is_unit() || !xi.is_unit() {
        return Err(Error::NotUnit);
    }
    Ok(theta_unchecked(alpha.z(), xi))
}

fn theta_unchecked(alpha: &CycNum, xi: &Quat) -> QMat2 {
    let (a, b) = (xi.z(), xi.w());
    let q = |c: CycNum| Quat::from_complex(alpha * &c);
    QMat2::new(q(a.conj()), q(b.conj()), q(-b), q(a.clone()))
}

/// [[0, j], [−j, 0]].
pub fn s_matrix() -> QMat2 {
    QMat2::antidiag(Quat::j(), -Quat::j())
}

/// A 4×4 complex matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMat4 {
    pub e: Vec<Vec<CycNum>>,
}

impl CMat4 {
    pub fn identity() -> CMat4 {
        let e = (0..4).map(|r| (0..4).map(|c| CycNum::from_int(4, (r == c) as i64)).collect()).collect();
        CMat4 { e }
    }

    pub fn mul(&self, o: &CMat4) -> CMat4 {
        let e = (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| (0..4).fold(CycNum::zero(4), |acc, k| &acc + &(&self.e[r][k] * &o.e[k][c])))
                    .collect()
            })
            .collect();
        CMat4 { e }
    }
}

impl fmt::Display for CMat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.e.iter().map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Writes A = A₁ + A₂j as the block matrix [[A₁, A₂], [−Ā₂, Ā₁]].
pub fn complexify(a: &QMat2) -> CMat4 {
    let mut e = vec![vec![CycNum::zero(4); 4]; 4];
    for r in 0..2 {
        for c in 0..2 {
            let q = &a.e[r][c];
            e[r][c] = q.z().clone();
            e[r][c + 2] = q.w().clone();
            e[r + 2][c] = -q.w().conj();
            e[r + 2][c + 2] = q.z().conj();
        }
    }
    CMat4 { e }
}

/// (a, ξ, b) stands for θ(ζ_d^a, ξ)·s^b, with a < d/2 after identifying (a, ξ) with (a + d/2, −ξ).
pub type Label = (u32, u16, u8);

/// A built C_d ∘_f K (`boxed == false`) or C_d ⊡_f K.
#[derive(Debug)]
pub struct ExtPolyGroup {
    pub d: u32,
    pub f: u32,
    pub k: Arc<SGroup>,
    pub boxed: bool,
    pub labels: Vec<Label>,
    index: HashMap<Label, usize>,
    neg_one: usize,
    /// Indices into `labels`.
    pub reflections: Vec<usize>,
    pub reflection_orders: BTreeMap<u32, usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExtPolyRecord {
    pub descriptor: String,
    pub d: u32,
    pub f: u32,
    pub order: usize,
    pub reflection_count: usize,
    pub reflection_orders: BTreeMap<u32, usize>,
    pub family: String,
    pub standard: bool,
    pub reflection_group: bool,
}

fn check_params(d: u32, f: u32, k: &Tag) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
    if !matches!(k, Tag::T | Tag::O | Tag::I) {
        return bad("K must be T, O or I");
    }
    if d == 0 || d % 2 == 1 {
        return bad("d must be even and positive");
    }
    match (f, k) {
        (1, _) | (2, Tag::O) | (3, Tag::T) => {}
        _ => return bad("f must be 1, or 2 with K = O, or 3 with K = T"),
    }
    if d % f != 0 {
        return bad("f must divide d");
    }
    Ok(())
}

impl ExtPolyGroup {
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn descriptor(&self) -> String {
        let k = self.k.tag.to_string();
        match (self.boxed, self.f) {
            (true, 1) => format!("Cbox({},{k})", self.d),
            (true, f) => format!("Cbox{f}({},{k})", self.d),
            (false, f) => format!("Ccirc{f}({},{k})", self.d),
        }
    }

    fn canon(&self, a: u32, x: usize, b: u8) -> Label {
        let h = self.d / 2;
        if a >= h {
            (a - h, self.k.mul_idx(x, self.neg_one) as u16, b)
        } else {
            (a, x as u16, b)
        }
    }

    pub fn mul_labels(&self, p: Label, q: Label) -> Label {
        let d = self.d as i64;
        let a2 = if p.2 == 1 { -(q.0 as i64) } else { q.0 as i64 };
        let a = (p.0 as i64 + a2).rem_euclid(d) as u32;
        self.canon(a, self.k.mul_idx(p.1 as usize, q.1 as usize), p.2 ^ q.2)
    }

    pub fn index_of_label(&self, l: Label) -> Option<usize> {
        self.index.get(&l).copied()
    }

    pub fn matrix(&self, i: usize) -> QMat2 {
        let (a, x, b) = self.labels[i];
        let m = theta_unchecked(&CycNum::zeta_pow(self.d, a as i64), self.k.element(x as usize));
        if b == 1 {
            &m * &s_matrix()
        } else {
            m
        }
    }

    pub fn elements(&self) -> Vec<QMat2> {
        (0..self.order()).map(|i| self.matrix(i)).collect()
    }

    pub fn reflection_count(&self) -> usize {
        self.reflections.len()
    }

    pub fn reflection_matrices(&self) -> Vec<QMat2> {
        self.reflections.iter().map(|i| self.matrix(*i)).collect()
    }

    /// Size of the subgroup generated by the given label indices.
    pub fn generated_order(&self, seeds: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        let e = self.index[&(0, self.k.identity_index() as u16, 0)];
        seen[e] = true;
        let mut queue = vec![e];
        while let Some(i) = queue.pop() {
            for s in seeds {
                let j = self.index[&self.mul_labels(self.labels[i], self.labels[*s])];
                if !seen[j] {
                    seen[j] = true;
                    queue.push(j);
                }
            }
        }
        seen.iter().filter(|b| **b).count()
    }

    pub fn reflections_generate(&self) -> bool {
        self.generated_order(&self.reflections) == self.order()
    }

    /// Whether conjugation by s preserves the complex-type part.
    pub fn normalized_by_s(&self) -> bool {
        let d = self.d;
        self.labels
            .iter()
            .filter(|l| l.2 == 0)
            .all(|l| self.index.contains_key(&self.canon((d - l.0) % d, l.1 as usize, 0)))
    }

    pub fn record(&self) -> ExtPolyRecord {
        ExtPolyRecord {
            descriptor: self.descriptor(),
            d: self.d,
            f: self.f,
            order: self.order(),
            reflection_count: self.reflection_count(),
            reflection_orders: self.reflection_orders.clone(),
            family: "extpoly".to_string(),
            standard: true,
            reflection_group: self.reflections_generate(),
        }
    }
}

fn build(d: u32, f: u32, k: Tag, boxed: bool) -> Result<ExtPolyGroup> {
    check_params(d, f, &k)?;
    let kg = Arc::new(SGroup::build(k.clone())?);
    let n = kg.order();
    let allowed: Vec<Vec<bool>> = match f {
        1 => vec![vec![true; n]],
        _ => {
            let (h, g0) = if f == 2 { ("T", consts::gamma()) } else { ("D:2", consts::varpi()) };
            let q = Quotient::new(kg.clone(), kg.subgroup(h)?)?;
            let g0 = q.coset_of[kg.index_of(&g0).ok_or_else(|| Error::InvalidParams("generator".into()))?] as usize;
            let mut c = q.identity_coset();
            (0..f)
                .map(|_| {
                    let mask = (0..n).map(|x| q.coset_of[x] as usize == c).collect();
                    c = q.coset_mul(c, g0);
                    mask
                })
                .collect()
        }
    };
    let neg_one = kg.index_of(&Quat::from_int(-1)).expect("-1 lies in K");
    let mut g = ExtPolyGroup {
        d,
        f,
        k: kg,
        boxed,
        labels: Vec::new(),
        index: HashMap::new(),
        neg_one,
        reflections: Vec::new(),
        reflection_orders: BTreeMap::new(),
    };
    for b in 0..=(boxed as u8) {
        for a in 0..d {
            let mask = &allowed[(a % f) as usize];
            for x in (0..n).filter(|x| mask[*x]) {
                let l = g.canon(a, x, b);
                if !g.index.contains_key(&l) {
                    g.index.insert(l, g.labels.len());
                    g.labels.push(l);
                }
            }
        }
    }
    for i in 0..g.order() {
        if let ReflectionInfo::Reflection { order, .. } = quat_is_reflection(&g.matrix(i))? {
            g.reflections.push(i);
            *g.reflection_orders.entry(order).or_insert(0) += 1;
        }
    }
    Ok(g)
}

/// C_d ⊡_f K; `f` is 1 or 2.
pub fn extpoly_build(d: u32, f: u32, k: Tag) -> Result<ExtPolyGroup> {
    if f == 3 {
        return Err(Error::InvalidParams("s does not normalise C_d ∘_3 T".into()));
    }
    build(d, f, k, true)
}

/// C_d ∘_f K as a group of complex-type matrices.
pub fn circ_build(d: u32, f: u32, k: Tag) -> Result<ExtPolyGroup> {
    build(d, f, k, false)
}

pub fn extpoly_is_reflection_group(d: u32, f: u32, k: Tag) -> bool {
    extpoly_build(d, f, k).map(|g| g.reflections_generate()).unwrap_or(false)
}

/// The divisibility rule for C_d ⊡_f K to be generated by reflections.
pub fn extpoly_expected(d: u32, f: u32, k: &Tag) -> bool {
    match (k, f) {
        (Tag::T, 1) => d % 6 == 0,
        (Tag::O, 1) => d % 4 == 0,
        (Tag::O, 2) => d % 4 == 0 && d % 16 != 0,
        (Tag::I, 1) => d % 4 == 0 || d % 6 == 0 || d % 10 == 0,
        _ => false,
    }
}

/// Parses `Cbox(d,K)` or `Cbox2(d,O)`.
pub fn parse_extpoly_descriptor(s: &str) -> Result<(u32, u32, Tag)> {
    let bad = || Error::InvalidDescriptor(s.to_string());
    let s = s.trim();
    let (f, rest) = if let Some(r) = s.strip_prefix("Cbox2(") {
        (2, r)
    } else if let Some(r) = s.strip_prefix("Cbox(") {
        (1, r)
    } else {
        return Err(bad());
    };
    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
    let (d, k) = inner.split_once(',').ok_or_else(bad)?;
    let d: u32 = d.trim().parse().map_err(|_| bad())?;
    let k = Tag::parse_ambient(k.trim())?;
    Ok((d, f, k))
}

pub fn extpoly_build_desc(s: &str) -> Result<ExtPolyGroup> {
    let (d, f, k) = parse_extpoly_descriptor(s)?;
    extpoly_build(d, f, k)
}
