//! Grothendieck-group shadows of the affine Hecke categories for SL(2) and
//! PGL(2): group algebras of the infinite dihedral group, Wakimoto classes,
//! the Eisenstein translation module and the aspherical module.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("class {name} is not defined for {kind}")]
    InvalidClass { name: String, kind: GroupKind },
    #[error("operands belong to different groups")]
    KindMismatch,
    #[error("element has a reflection term; only translations act on Eisenstein classes")]
    NotTranslation,
    #[error("weight multiset is not symmetric under negation")]
    NotSelfDual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    SL2,
    PGL2,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::SL2 => "SL(2)",
            GroupKind::PGL2 => "PGL(2)",
        })
    }
}

impl GroupKind {
    pub fn allows_translation(self, n: i64) -> bool {
        match self {
            GroupKind::SL2 => n % 2 == 0,
            GroupKind::PGL2 => true,
        }
    }
}

/// The affine map `x ↦ εx + n` of the real line.
///
/// Products compose left to right: `g·h` is "first `g`, then `h`", so that
/// `r_0·r_{1/2} = t_1` and `r_0·r_1 = t_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DihedralElement {
    pub n: i64,
    pub reflection: bool,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { n: 0, reflection: false };

    pub fn translation(n: i64) -> Self {
        DihedralElement { n, reflection: false }
    }

    /// Reflection with center `c/2`.
    pub fn reflection_at_half(c: i64) -> Self {
        DihedralElement { n: c, reflection: true }
    }

    pub fn eps(self) -> i64 {
        if self.reflection {
            -1
        } else {
            1
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: DihedralElement) -> DihedralElement {
        DihedralElement { n: other.n + other.eps() * self.n, reflection: self.reflection != other.reflection }
    }

    pub fn inverse(self) -> DihedralElement {
        DihedralElement { n: -self.eps() * self.n, reflection: self.reflection }
    }

    pub fn pow(self, k: i64) -> DihedralElement {
        let base = if k < 0 { self.inverse() } else { self };
        (0..k.unsigned_abs()).fold(DihedralElement::IDENTITY, |acc, _| acc.mul(base))
    }

    /// Image of a point under the affine map.
    pub fn act(self, x: i64) -> i64 {
        self.eps() * x + self.n
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, if self.reflection { '−' } else { '+' })
    }
}

pub fn r0() -> DihedralElement {
    DihedralElement::reflection_at_half(0)
}

/// Reflection with center 1.
pub fn r1() -> DihedralElement {
    DihedralElement::reflection_at_half(2)
}

/// Reflection with center 1/2.
pub fn r_half() -> DihedralElement {
    DihedralElement::reflection_at_half(1)
}

/// Finite ℤ-combination of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    kind: GroupKind,
    terms: BTreeMap<DihedralElement, i64>,
}

impl GroupAlgebraElement {
    pub fn zero(kind: GroupKind) -> Self {
        GroupAlgebraElement { kind, terms: BTreeMap::new() }
    }

    pub fn basis(kind: GroupKind, g: DihedralElement) -> Result<Self, HeckeError> {
        Self::from_terms(kind, [(g, 1)])
    }

    pub fn one(kind: GroupKind) -> Self {
        Self::basis(kind, DihedralElement::IDENTITY).unwrap()
    }

    pub fn from_terms(kind: GroupKind, terms: impl IntoIterator<Item = (DihedralElement, i64)>) -> Result<Self, HeckeError> {
        let mut out = Self::zero(kind);
        for (g, c) in terms {
            if !kind.allows_translation(g.n) {
                return Err(HeckeError::InvalidClass { name: g.to_string(), kind });
            }
            out.add_term(g, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, g: DihedralElement, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(g).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&g);
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = (DihedralElement, i64)> + '_ {
        self.terms.iter().map(|(&g, &c)| (g, c))
    }

    pub fn coeff(&self, g: DihedralElement) -> i64 {
        self.terms.get(&g).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.kind);
        for (g, c) in self.terms() {
            out.add_term(g, k * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, HeckeError> {
        self.same_kind(other)?;
        let mut out = Self::zero(self.kind);
        for (g, c) in self.terms() {
            for (h, d) in other.terms() {
                out.add_term(g.mul(h), c * d);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.kind), |acc, _| acc.mul(self).expect("same kind"))
    }

    /// The single group element, if this is a basis vector.
    pub fn as_group_element(&self) -> Option<DihedralElement> {
        match self.terms.iter().next() {
            Some((&g, &1)) if self.terms.len() == 1 => Some(g),
            _ => None,
        }
    }

    fn same_kind(&self, other: &Self) -> Result<(), HeckeError> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(HeckeError::KindMismatch)
        }
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(DihedralElement, i64)> = self.terms().collect();
        terms.sort_by_key(|(g, _)| (g.n, g.reflection));
        for (k, (g, c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K0Name {
    Delta,
    T0Star,
    T0Shriek,
    T1Star,
    THalf,
    Avg,
    J(i64),
}

impl fmt::Display for K0Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K0Name::Delta => f.write_str("delta"),
            K0Name::T0Star => f.write_str("T0_star"),
            K0Name::T0Shriek => f.write_str("T0_shriek"),
            K0Name::T1Star => f.write_str("T1_star"),
            K0Name::THalf => f.write_str("T_half"),
            K0Name::Avg => f.write_str("Avg"),
            K0Name::J(k) => write!(f, "J({k})"),
        }
    }
}

/// Class in the Grothendieck group, where each distinguished triangle adds.
pub fn k0_class(name: K0Name, kind: GroupKind) -> Result<GroupAlgebraElement, HeckeError> {
    let invalid = || HeckeError::InvalidClass { name: name.to_string(), kind };
    let basis = |g| GroupAlgebraElement::basis(kind, g).map_err(|_| invalid());
    match name {
        K0Name::Delta => basis(DihedralElement::IDENTITY),
        K0Name::T0Star | K0Name::T0Shriek => basis(r0()),
        K0Name::T1Star if kind == GroupKind::SL2 => basis(r1()),
        K0Name::THalf if kind == GroupKind::PGL2 => basis(r_half()),
        K0Name::T1Star | K0Name::THalf => Err(invalid()),
        K0Name::Avg => basis(r0())?.sub(&GroupAlgebraElement::one(kind)),
        K0Name::J(k) => basis(DihedralElement::translation(k)),
    }
}

fn class(name: K0Name, kind: GroupKind) -> GroupAlgebraElement {
    k0_class(name, kind).expect("class defined for kind")
}

/// Finitely supported vector `Σ c_λ e_λ` of Eisenstein classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EisVector {
    coeffs: BTreeMap<i64, i64>,
}

impl EisVector {
    pub fn basis(lambda: i64) -> Self {
        let mut v = EisVector::default();
        v.add(lambda, 1);
        v
    }

    pub fn add(&mut self, lambda: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(lambda).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn coeff(&self, lambda: i64) -> i64 {
        self.coeffs.get(&lambda).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&l, &c)| (l, c))
    }
}

impl fmt::Display for EisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(l, c)| if c == 1 { format!("e_{l}") } else { format!("{c}·e_{l}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `J(μ)·e_λ = e_{λ+μ}`, extended bilinearly.
pub fn eis_action(g: &GroupAlgebraElement, v: &EisVector) -> Result<EisVector, HeckeError> {
    let mut out = EisVector::default();
    for (h, c) in g.terms() {
        if h.reflection {
            return Err(HeckeError::NotTranslation);
        }
        for (l, d) in v.iter() {
            out.add(l + h.n, c * d);
        }
    }
    Ok(out)
}

/// Element of `ℤ[W] / ℤ[W]·(r_0 − e)`, in the basis of cosets `w·{e, r_0}`
/// indexed by their translation representative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AsphericalVector {
    coeffs: BTreeMap<i64, i64>,
}

impl AsphericalVector {
    fn add(&mut self, k: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.coeffs.get(&k).copied().unwrap_or(0)
    }
}

/// The aspherical (Whittaker) module of one kind.
#[derive(Clone, Copy, Debug)]
pub struct AsphericalModule {
    pub kind: GroupKind,
}

impl AsphericalModule {
    pub fn new(kind: GroupKind) -> Self {
        AsphericalModule { kind }
    }

    /// Translation representative of the coset `w·{e, r_0}`.
    pub fn coset(w: DihedralElement) -> i64 {
        if w.reflection {
            w.mul(r0()).n
        } else {
            w.n
        }
    }

    /// The image of `e`.
    pub fn wh(&self) -> AsphericalVector {
        let mut v = AsphericalVector::default();
        v.add(0, 1);
        v
    }

    pub fn act(&self, g: &GroupAlgebraElement, v: &AsphericalVector) -> Result<AsphericalVector, HeckeError> {
        if g.kind() != self.kind {
            return Err(HeckeError::KindMismatch);
        }
        let mut out = AsphericalVector::default();
        for (h, c) in g.terms() {
            for (&k, &d) in &v.coeffs {
                out.add(Self::coset(h.mul(DihedralElement::translation(k))), c * d);
            }
        }
        Ok(out)
    }
}

/// `Σ mult(λ)·J(λ)` for a symmetric weight multiset.
pub fn central_class(kind: GroupKind, weights: &[(i64, i64)]) -> Result<GroupAlgebraElement, HeckeError> {
    let mut m: BTreeMap<i64, i64> = BTreeMap::new();
    for &(w, c) in weights {
        *m.entry(w).or_insert(0) += c;
    }
    if m.iter().any(|(w, c)| m.get(&-w).copied().unwrap_or(0) != *c) {
        return Err(HeckeError::NotSelfDual);
    }
    let mut out = GroupAlgebraElement::zero(kind);
    for (w, c) in m {
        out = out.add(&k0_class(K0Name::J(w), kind)?.scale(c))?;
    }
    Ok(out)
}

const ANCHOR_SL2: &str = "affine Hecke category for SL(2)";
const ANCHOR_PGL2: &str = "affine Hecke category for PGL(2)";
const ANCHOR_WAKI: &str = "Wakimoto monoid";
const ANCHOR_EIS: &str = "Wakimoto action on Eisenstein sheaves";
const ANCHOR_WH: &str = "Whittaker asphericity";

/// Relations among the K₀ classes, for translations up to `kmax`.
pub fn verify_relations(kmax: i64) -> CheckReport {
    let mut rep = CheckReport::new("hecke");
    use GroupKind::*;
    use K0Name::*;

    for kind in [SL2, PGL2] {
        let anchor = if kind == SL2 { ANCHOR_SL2 } else { ANCHOR_PGL2 };
        let tag = if kind == SL2 { "sl2" } else { "pgl2" };
        let delta = class(Delta, kind);
        let avg = class(Avg, kind);
        rep.expect_eq(&format!("{tag}.triangle_star"), class(T0Star, kind), avg.add(&delta).unwrap(), anchor);
        rep.expect_eq(&format!("{tag}.triangle_shriek"), class(T0Shriek, kind), delta.add(&avg).unwrap(), anchor);
        rep.expect_eq(&format!("{tag}.star_shriek_inverse"), delta.clone(), class(T0Star, kind).mul(&class(T0Shriek, kind)).unwrap(), anchor);
        rep.expect_eq(&format!("{tag}.avg_squared"), avg.scale(-2), avg.mul(&avg).unwrap(), anchor);

        let gen = if kind == SL2 { class(T1Star, kind) } else { class(THalf, kind) };
        let step = if kind == SL2 { 2 } else { 1 };
        let base = class(T0Star, kind).mul(&gen).unwrap();
        let mut bad = Vec::new();
        for k in -kmax..=kmax {
            let lhs = class(J(step * k), kind);
            let rhs = if k >= 0 {
                base.pow(k as u32)
            } else {
                let inv = GroupAlgebraElement::basis(kind, base.as_group_element().unwrap().inverse()).unwrap();
                inv.pow((-k) as u32)
            };
            if lhs != rhs {
                bad.push(k);
            }
        }
        let what = if kind == SL2 { "J(2k) = (T0_star·T1_star)^k" } else { "J(k) = (T0_star·T_half)^k" };
        rep.record(&format!("{tag}.wakimoto_words"), bad.is_empty(), what, format!("{} mismatches for |k| ≤ {kmax}", bad.len()), anchor);

        let j = class(J(step), kind);
        let jinv = class(J(-step), kind);
        let lhs = class(T0Star, kind).mul(&gen).unwrap().mul(&class(T0Shriek, kind)).unwrap();
        let rhs = j.mul(&gen).unwrap().mul(&jinv).unwrap();
        let refl = rhs.as_group_element().is_some_and(|g| g.reflection);
        rep.record(&format!("{tag}.conjugate_reflection"), lhs == rhs && refl, &lhs, &rhs, anchor);
    }
    let th = class(THalf, PGL2);
    rep.expect_eq("pgl2.t_half_involution", class(Delta, PGL2), th.mul(&th).unwrap(), ANCHOR_PGL2);
    rep.expect_eq("sl2.r0_squared", class(Delta, SL2), class(T0Star, SL2).pow(2), ANCHOR_SL2);
    let t1 = k0_class(T1Star, PGL2);
    let th_sl = k0_class(THalf, SL2);
    let odd = k0_class(J(1), SL2);
    let rejected = t1.is_err() && th_sl.is_err() && odd.is_err();
    rep.record("kind_restrictions", rejected, "T1_star only SL(2); T_half, odd J only PGL(2)", rejected, ANCHOR_PGL2);
    rep
}

/// `J(a)·J(b) = J(a+b)`, `J(a)·J(−a) = δ`, `r_0·J(k)·r_0 = J(−k)`.
pub fn waki_monoid_check(kmax: i64) -> CheckReport {
    let mut rep = CheckReport::new("hecke");
    for kind in [GroupKind::SL2, GroupKind::PGL2] {
        let tag = if kind == GroupKind::SL2 { "sl2" } else { "pgl2" };
        let ks: Vec<i64> = (-kmax..=kmax).filter(|&k| kind.allows_translation(k)).collect();
        let mut bad = Vec::new();
        for &a in &ks {
            for &b in &ks {
                let prod = class(K0Name::J(a), kind).mul(&class(K0Name::J(b), kind)).unwrap();
                if prod != class(K0Name::J(a + b), kind) {
                    bad.push((a, b));
                }
            }
            let inv = class(K0Name::J(a), kind).mul(&class(K0Name::J(-a), kind)).unwrap();
            if inv != class(K0Name::Delta, kind) {
                bad.push((a, -a));
            }
            let r = class(K0Name::T0Star, kind);
            let conj = r.mul(&class(K0Name::J(a), kind)).unwrap().mul(&r).unwrap();
            if conj != class(K0Name::J(-a), kind) {
                bad.push((a, a));
            }
        }
        let got = match bad.first() {
            Some((a, b)) => format!("{} failures, first at ({a},{b})", bad.len()),
            None => format!("all pairs |a|,|b| ≤ {kmax}"),
        };
        rep.record(&format!("{tag}.wakimoto_monoid"), bad.is_empty(), "monoid map and r0-conjugation", got, ANCHOR_WAKI);
    }
    rep
}

pub fn verify_eisenstein(kmax: i64) -> CheckReport {
    let mut rep = CheckReport::new("hecke");
    let kind = GroupKind::PGL2;
    let mut bad = 0;
    for mu in -kmax..=kmax {
        for lambda in -kmax..=kmax {
            let v = eis_action(&class(K0Name::J(mu), kind), &EisVector::basis(lambda)).unwrap();
            if v != EisVector::basis(lambda + mu) {
                bad += 1;
            }
        }
    }
    rep.record("eis.translation", bad == 0, "J(μ)·e_λ = e_{λ+μ}", format!("{bad} mismatches"), ANCHOR_EIS);
    let sum = class(K0Name::J(1), kind).add(&class(K0Name::J(-1), kind)).unwrap();
    let got = eis_action(&sum, &EisVector::basis(0)).unwrap();
    let mut want = EisVector::basis(1);
    want.add(-1, 1);
    rep.expect_eq("eis.bilinear", want, got, ANCHOR_EIS);
    let refused = eis_action(&class(K0Name::T0Star, kind), &EisVector::basis(0)) == Err(HeckeError::NotTranslation);
    rep.record("eis.rejects_reflections", refused, "NotTranslation", refused, ANCHOR_EIS);
    rep
}

pub fn verify_aspherical(kmax: i64) -> CheckReport {
    let mut rep = CheckReport::new("hecke");
    for kind in [GroupKind::SL2, GroupKind::PGL2] {
        let tag = if kind == GroupKind::SL2 { "sl2" } else { "pgl2" };
        let m = AsphericalModule::new(kind);
        let wh = m.wh();
        let killed = m.act(&class(K0Name::Avg, kind), &wh).unwrap();
        rep.record(&format!("{tag}.avg_kills_wh"), killed.is_zero(), "0", if killed.is_zero() { "0" } else { "nonzero" }, ANCHOR_WH);
        let fixed = m.act(&class(K0Name::T0Star, kind), &wh).unwrap() == wh;
        rep.record(&format!("{tag}.t0_fixes_wh"), fixed, true, fixed, ANCHOR_WH);
        let ks: Vec<i64> = (-kmax..=kmax).filter(|&k| kind.allows_translation(k)).collect();
        let images: Vec<AsphericalVector> =
            ks.iter().map(|&k| m.act(&class(K0Name::J(k), kind), &wh).unwrap()).collect();
        let independent = images.iter().zip(&ks).all(|(v, &k)| v.coeffs.len() == 1 && v.coeff(k) == 1);
        rep.record(&format!("{tag}.translates_independent"), independent, format!("{} distinct cosets", ks.len()), independent, ANCHOR_WH);
    }
    rep
}

pub fn verify_all(kmax: i64) -> CheckReport {
    let mut rep = verify_relations(kmax);
    rep.checks.extend(waki_monoid_check(kmax).checks);
    rep.checks.extend(verify_eisenstein(kmax).checks);
    rep.checks.extend(verify_aspherical(kmax.max(50)).checks);
    rep
}
