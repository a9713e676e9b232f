//! The matched-object dictionary, cross-module consistency checks, and suite
//! dispatch for the command-line front end.

use std::fmt;

use thiserror::Error;

use crate::algkernel::AlgError;
use crate::fqbun::{self, aut_order, atkin_lehner_label, default_window, Fq, FqError, OrbitLabel};
use crate::heckewaki::{self, eis_action, k0_class, EisVector, GroupKind, K0Name};
use crate::marked::{Marked, MarkedSet};
use crate::report::CheckReport;
use crate::sl2rep::{self, coh_p1, hom_structure_table, sections_diagonal, sections_p1_cubed, sections_theta};
use crate::spectral::{self, ComponentName};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Field(#[from] FqError),
    #[error(transparent)]
    Algebra(#[from] AlgError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralDescriptor {
    /// `𝒪_Loc`
    StructureSheaf,
    /// `𝒪_Loc(a, b, c)`, pulled back from `(P¹)³`.
    LineBundleOnLoc([i64; 3]),
    /// `𝒪_Δ(n)` on the diagonal component.
    ODelta(i64),
    /// `𝒪_{Λ_R}(a, b, c)`.
    OComponent(ComponentName, [i64; 3]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphicDescriptor {
    Wh,
    Eis(i64),
    IC(OrbitLabel),
    F(OrbitLabel),
    /// `J_s(k) ⋆_s base`
    JTranslate { s: Marked, k: i64, base: Box<AutomorphicDescriptor> },
}

fn twist(t: &[i64; 3]) -> String {
    format!("({},{},{})", t[0], t[1], t[2])
}

impl fmt::Display for SpectralDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralDescriptor::StructureSheaf => f.write_str("𝒪_Loc"),
            SpectralDescriptor::LineBundleOnLoc(t) => write!(f, "𝒪_Loc{}", twist(t)),
            SpectralDescriptor::ODelta(0) => f.write_str("𝒪_Δ"),
            SpectralDescriptor::ODelta(n) => write!(f, "𝒪_Δ({n})"),
            SpectralDescriptor::OComponent(ComponentName::Empty, t) => write!(f, "𝒪_(P¹)³{}", twist(t)),
            SpectralDescriptor::OComponent(c, t) => write!(f, "𝒪_{c}{}", twist(t)),
        }
    }
}

fn ic_name(l: OrbitLabel) -> String {
    match l.set() {
        Some(s) => format!("{}({})", l.gap(), s),
        None => "1(*)".into(),
    }
}

impl fmt::Display for AutomorphicDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutomorphicDescriptor::Wh => f.write_str("Wh"),
            AutomorphicDescriptor::Eis(n) => write!(f, "Eis_{n}"),
            AutomorphicDescriptor::IC(l) => write!(f, "IC_{}", ic_name(*l)),
            AutomorphicDescriptor::F(l) => write!(f, "𝓕_{}", ic_name(*l)),
            AutomorphicDescriptor::JTranslate { s, k, base } => write!(f, "J_{s}({k})⋆{base}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchEntry {
    pub spectral: SpectralDescriptor,
    pub automorphic: AutomorphicDescriptor,
    pub anchors: Vec<&'static str>,
    pub checks: Vec<&'static str>,
}

fn pair(points: &[Marked]) -> MarkedSet {
    MarkedSet::of(points)
}

/// The nine matched pairs.
pub fn dictionary_table() -> Vec<MatchEntry> {
    use AutomorphicDescriptor as A;
    use Marked::*;
    use SpectralDescriptor as S;
    let e = |spectral, automorphic, anchor, checks: &[&'static str]| MatchEntry {
        spectral,
        automorphic,
        anchors: vec![anchor],
        checks: checks.to_vec(),
    };
    vec![
        e(S::StructureSheaf, A::Wh, "Whittaker sheaf", &["wh.open_support", "wh.exchanged_open_point"]),
        e(S::ODelta(0), A::Eis(-1), "Eisenstein sheaves", &["eis.twist_rule", "eis.hom", "eis.easy_label"]),
        e(S::ODelta(2), A::Eis(1), "Eisenstein sheaves", &["eis.twist_rule", "eis.hom", "eis.easy_label"]),
        e(S::ODelta(1), A::Eis(0), "Eisenstein sheaves", &["eis.twist_rule", "eis.hom", "eis.easy_label"]),
        e(
            S::OComponent(ComponentName::Empty, [-1, -1, -1]),
            A::IC(OrbitLabel::c(0, MarkedSet::EMPTY)),
            "IC sheaves of the even component",
            &["ic.component", "ic.twist_pattern", "ic.acyclic"],
        ),
        e(
            S::OComponent(ComponentName::ZeroOne, [0, 0, -1]),
            A::IC(OrbitLabel::c(0, pair(&[Zero, One]))),
            "IC sheaves of the even component",
            &["ic.component", "ic.twist_pattern"],
        ),
        e(
            S::OComponent(ComponentName::ZeroInf, [0, -1, 0]),
            A::IC(OrbitLabel::c(0, pair(&[Zero, Inf]))),
            "IC sheaves of the even component",
            &["ic.component", "ic.twist_pattern"],
        ),
        e(
            S::OComponent(ComponentName::OneInf, [-1, 0, 0]),
            A::IC(OrbitLabel::c(0, pair(&[One, Inf]))),
            "IC sheaves of the even component",
            &["ic.component", "ic.twist_pattern"],
        ),
        e(
            S::LineBundleOnLoc([0, 1, 0]),
            A::JTranslate { s: One, k: 1, base: Box::new(A::Wh) },
            "Wakimoto translates of the Whittaker sheaf",
            &["translate.twist_slot", "translate.parity"],
        ),
    ]
}

pub fn lookup(a: &AutomorphicDescriptor) -> Option<SpectralDescriptor> {
    dictionary_table().into_iter().find(|e| &e.automorphic == a).map(|e| e.spectral)
}

/// Support of `Eis_n`: `c_n(S)` for `n ≥ 0`, `c_1(∅)` for `n = −1`.
pub fn eis_support(n: i64) -> Option<OrbitLabel> {
    match n {
        -1 => Some(OrbitLabel::c(1, MarkedSet::EMPTY)),
        n if n >= 0 => Some(OrbitLabel::c(n as u32, MarkedSet::FULL)),
        _ => None,
    }
}

/// Open substack `c_1(*) ∪ c_1(∅)` carrying the Whittaker sheaf.
pub fn wh_open() -> Vec<OrbitLabel> {
    vec![OrbitLabel::c(1, MarkedSet::EMPTY), OrbitLabel::Generic]
}

/// Support of `Wh = i_! j_* ℚ`: the closure of `c_1(*)` taken inside the open
/// substack, since `i_!` extends by zero.
pub fn wh_support() -> Vec<OrbitLabel> {
    let open = wh_open();
    OrbitLabel::Generic.closure().into_iter().filter(|l| open.contains(l)).collect()
}

const ANCHOR_HOM: &str = "Hom into the diagonal sheaves";
const ANCHOR_TABLE: &str = "dictionary of matched objects";
const ANCHOR_WAKI: &str = "Wakimoto equivariance of the dictionary";
const ANCHOR_NEW: &str = "generation by Eisenstein sheaves";
const ANCHOR_SUPPORT: &str = "support disjointness";

/// The Hom values on the automorphic side, as stated: scalars in degree −1,
/// zero afterwards.
fn stated_hom(n: i64) -> i64 {
    (n == -1) as i64
}

pub fn verify_hom_table(n_max: i64) -> CheckReport {
    let mut rep = CheckReport::new("dictionary");
    for (n, computed) in hom_structure_table(n_max) {
        rep.expect_eq(&format!("hom.n{n}"), stated_hom(n), computed, ANCHOR_HOM)
            .with_details("expected: stated; got: computed");
    }
    rep
}

fn row_checks(rep: &mut CheckReport, row: &MatchEntry, f: Fq, window: i32) {
    use AutomorphicDescriptor as A;
    use SpectralDescriptor as S;
    let q = f.q();
    let tag = format!("row.{}", row.automorphic);
    let anchor = row.anchors[0];
    for &check in &row.checks {
        let id = format!("{tag}.{check}");
        match (check, &row.spectral, &row.automorphic) {
            ("wh.open_support", S::StructureSheaf, A::Wh) => {
                let auts: Vec<u128> = wh_support().iter().map(|l| aut_order(*l, q).unwrap()).collect();
                rep.expect_eq(&id, format!("[{}, 1]", q - 1), format!("{auts:?}"), anchor)
                    .with_details("Aut orders over c_1(∅), c_1(*)");
            }
            ("wh.exchanged_open_point", S::StructureSheaf, A::Wh) => {
                let got = atkin_lehner_label(OrbitLabel::Generic, Marked::Zero, f, window).unwrap();
                rep.expect_eq(&id, "c_0(∅)".to_string(), got.to_string(), anchor);
            }
            ("eis.twist_rule", S::ODelta(m), A::Eis(n)) => {
                rep.expect_eq(&id, n + 1, *m, anchor).with_details("𝒪_Δ(n+1) ↔ Eis_n");
            }
            ("eis.hom", S::ODelta(m), A::Eis(n)) => {
                let computed = sections_diagonal(*m, sl2rep::TABLE_CUTOFF).unwrap();
                rep.expect_eq(&id, stated_hom(*n), computed, anchor).with_details("expected: stated; got: computed");
            }
            ("eis.easy_label", _, A::Eis(n)) => {
                let l = eis_support(*n).unwrap();
                rep.record(&id, fqbun::OrbitLabel::all_at(l.gap()).contains(&l), "label in poset", l, anchor);
            }
            ("ic.component", S::OComponent(c, _), A::IC(l)) => {
                let comp = spectral::component(*c);
                rep.expect_eq(&id, l.set().unwrap(), comp.conormal_base, anchor)
                    .with_details(format!("{} is the conormal of Δ_R", comp.name));
            }
            ("ic.twist_pattern", S::OComponent(_, t), A::IC(l)) => {
                let set = l.set().unwrap();
                let want: Vec<i64> = Marked::ALL.iter().map(|s| if set.contains(*s) { 0 } else { -1 }).collect();
                rep.expect_eq(&id, twist(&[want[0], want[1], want[2]]), twist(t), anchor)
                    .with_details("−1 off the coincidence set");
            }
            ("ic.acyclic", S::OComponent(_, t), A::IC(l)) => {
                // Künneth: RΓ of a box product vanishes once one factor is 𝒪(−1)
                let total: i64 = t.iter().map(|&a| coh_p1(a).h0.dim() + coh_p1(a).h1.dim()).product();
                let ok = total == 0 && sections_p1_cubed(t[0], t[1], t[2]) == 0 && aut_order(*l, q) == Ok(1);
                rep.record(&id, ok, "RΓ = 0 and trivial stabilizer", total, anchor);
            }
            ("translate.twist_slot", S::LineBundleOnLoc(t), A::JTranslate { s, k, .. }) => {
                let mut want = [0; 3];
                want[s.index()] = *k;
                rep.expect_eq(&id, twist(&want), twist(t), anchor);
            }
            ("translate.parity", S::LineBundleOnLoc(t), A::JTranslate { k, .. }) => {
                let odd = t.iter().sum::<i64>() % 2 != 0;
                let ok = odd == !GroupKind::SL2.allows_translation(*k) && GroupKind::PGL2.allows_translation(*k);
                rep.record(&id, ok, "odd twist ↔ PGL(2)-only translation", odd, anchor);
            }
            _ => {
                rep.skip(&id, "check does not apply to this row", anchor);
            }
        }
    }
}

pub fn verify_table(f: Fq, dmax: u32) -> CheckReport {
    let mut rep = CheckReport::new("dictionary");
    let table = dictionary_table();
    rep.expect_eq("table.rows", 9, table.len(), ANCHOR_TABLE);
    rep.expect_eq(
        "table.lookup_eis1",
        "𝒪_Δ(2)".to_string(),
        lookup(&AutomorphicDescriptor::Eis(1)).map(|s| s.to_string()).unwrap_or_default(),
        ANCHOR_TABLE,
    );
    let window = default_window(dmax);
    for row in &table {
        row_checks(&mut rep, row, f, window);
    }
    // AL_r moves every support label to the other parity
    let mut same_parity = 0;
    for row in &table {
        let label = match &row.automorphic {
            AutomorphicDescriptor::IC(l) => Some(*l),
            AutomorphicDescriptor::Eis(n) => eis_support(*n),
            _ => None,
        };
        for l in label.into_iter().chain(wh_support()) {
            for r in Marked::ALL {
                if atkin_lehner_label(l, r, f, window).unwrap().gap() % 2 == l.gap() % 2 {
                    same_parity += 1;
                }
            }
        }
    }
    rep.expect_eq("table.al_parity", 0, same_parity, ANCHOR_TABLE);
    rep
}

pub fn verify_wakimoto_equivariance(kmax: i64) -> CheckReport {
    let mut rep = CheckReport::new("dictionary");
    let kind = GroupKind::PGL2;
    let matched = |spec: i64, v: &EisVector| {
        // single Eisenstein class e_n matched with 𝒪_Δ(n+1)
        let terms: Vec<(i64, i64)> = v.iter().collect();
        terms == [(spec - 1, 1)]
    };
    let mut bad = Vec::new();
    for mu in -kmax..=kmax {
        let j = k0_class(K0Name::J(mu), kind).unwrap();
        for n in -kmax..=kmax {
            let moved = eis_action(&j, &EisVector::basis(n)).unwrap();
            if !matched(n + 1 + mu, &moved) {
                bad.push(format!("μ={mu},n={n}"));
            }
        }
    }
    rep.record("wakimoto.closure", bad.is_empty(), "J(μ)·Eis_n ↔ 𝒪_Δ(n+1+μ)", format!("{} mismatches", bad.len()), ANCHOR_WAKI)
        .with_details(bad.join(" "));
    let j = |k| k0_class(K0Name::J(k), kind).unwrap();
    let e0 = EisVector::basis(0);
    rep.expect_eq("wakimoto.identity", e0.clone(), eis_action(&j(0), &e0).unwrap(), ANCHOR_WAKI);
    let round = eis_action(&j(1), &eis_action(&j(-1), &e0).unwrap()).unwrap();
    rep.expect_eq("wakimoto.inverse", e0.clone(), round, ANCHOR_WAKI);
    rep.expect_eq("wakimoto.eis0_by_2", EisVector::basis(2), eis_action(&j(2), &e0).unwrap(), ANCHOR_WAKI)
        .with_details("𝒪_Δ(1) ↦ 𝒪_Δ(3)");
    rep
}

pub fn verify_newform_sequences(n_max: i64, cutoff: i64, f: Fq) -> CheckReport {
    let mut rep = CheckReport::new("dictionary");
    let mut bad = Vec::new();
    for c in 1..=cutoff {
        for n in -2 * cutoff..=n_max {
            let lhs = sections_diagonal(n, c).unwrap();
            let rhs = sections_diagonal(n + 2, c - 1).unwrap() + sections_theta(n, c).unwrap();
            if lhs != rhs {
                bad.push(format!("n={n},c={c}"));
            }
        }
    }
    rep.record("newform.dimension_additivity", bad.is_empty(), "Γ(𝒪_Δ(n)) = Γ(𝒪_Δ(n+2)) + Γ(𝒪_Θ(n))", format!("{} failures", bad.len()), ANCHOR_NEW)
        .with_details(bad.join(" "));
    let q = f.q();
    for n in -1..=n_max {
        let l = eis_support(n).unwrap();
        let got = aut_order(l, q).map(|a| a.to_string()).unwrap_or_else(|e| e.to_string());
        let want = match n {
            -1 => q - 1,
            0 => q * (q - 1),
            1 => q * q * (q - 1),
            // q^{d−2+3}(q−1)
            n => q.pow(n as u32 + 1) * (q - 1),
        };
        rep.expect_eq(&format!("newform.eis{n}.label"), format!("{l} aut {want}"), format!("{l} aut {got}"), ANCHOR_NEW);
    }
    rep
}

pub fn verify_support_disjointness(dmax: u32) -> CheckReport {
    let mut rep = CheckReport::new("dictionary");
    let open = wh_open();
    // open: every generization of a point of U lies in U
    let all: Vec<OrbitLabel> = (0..=dmax.max(1)).flat_map(OrbitLabel::all_at).collect();
    let is_open = all.iter().all(|k| open.contains(k) || !k.closure().iter().any(|l| open.contains(l)));
    rep.record("support.wh_open", is_open, "c_1(*) ∪ c_1(∅) open", is_open, ANCHOR_SUPPORT);
    let support = wh_support();
    rep.record("support.wh_contains_c1_empty", support.contains(&OrbitLabel::c(1, MarkedSet::EMPTY)), true, support.contains(&OrbitLabel::c(1, MarkedSet::EMPTY)), ANCHOR_SUPPORT);
    for n in 0..=dmax as i64 {
        let l = eis_support(n).unwrap();
        let meets = support.contains(&l);
        rep.record(&format!("support.eis{n}"), !meets, "disjoint", if meets { "meets" } else { "disjoint" }, ANCHOR_SUPPORT)
            .with_details(format!("{l}"));
    }
    rep
}

/// Parameters shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub q: u32,
    pub dmax: u32,
    pub cutoff: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { q: 3, dmax: 3, cutoff: 10 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Spectral,
    Sl2rep,
    Hecke,
    Fqbun,
    Dictionary,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 5] = [Suite::Spectral, Suite::Sl2rep, Suite::Hecke, Suite::Fqbun, Suite::Dictionary];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Spectral => "spectral",
            Suite::Sl2rep => "sl2rep",
            Suite::Hecke => "hecke",
            Suite::Fqbun => "fqbun",
            Suite::Dictionary => "dictionary",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::SINGLE.into_iter().chain([Suite::All]).find(|x| x.name() == s)
    }
}

pub fn verify_dictionary(opts: &VerifyOptions) -> Result<CheckReport, VerifyError> {
    let f = Fq::new(opts.q)?;
    let mut rep = verify_table(f, opts.dmax);
    rep.checks.extend(verify_hom_table(20.max(opts.cutoff)).checks);
    rep.checks.extend(verify_wakimoto_equivariance(opts.cutoff).checks);
    rep.checks.extend(verify_newform_sequences(opts.dmax as i64, opts.cutoff, f).checks);
    rep.checks.extend(verify_support_disjointness(opts.dmax.max(4)).checks);
    Ok(rep)
}

fn run_single(suite: Suite, opts: &VerifyOptions) -> Result<CheckReport, VerifyError> {
    Ok(match suite {
        Suite::Spectral => spectral::verify_all()?,
        Suite::Sl2rep => sl2rep::verify_all(opts.cutoff),
        Suite::Hecke => heckewaki::verify_all(2 * opts.cutoff),
        Suite::Fqbun => fqbun::verify_all(opts.q, opts.dmax)?,
        Suite::Dictionary => verify_dictionary(opts)?,
        Suite::All => unreachable!("composite suite"),
    })
}

#[cfg(feature = "parallel")]
fn run_many(suites: &[Suite], opts: &VerifyOptions) -> Vec<Result<CheckReport, VerifyError>> {
    use rayon::prelude::*;
    suites.par_iter().map(|s| run_single(*s, opts)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_many(suites: &[Suite], opts: &VerifyOptions) -> Vec<Result<CheckReport, VerifyError>> {
    suites.iter().map(|s| run_single(*s, opts)).collect()
}

/// Runs a suite. `All` runs every suite and concatenates them in a fixed order,
/// prefixing check ids with the suite name.
pub fn verify_suite(suite: Suite, opts: &VerifyOptions) -> Result<CheckReport, VerifyError> {
    Fq::new(opts.q)?;
    if opts.cutoff < 1 {
        return Err(VerifyError::Usage(format!("cutoff must be positive, got {}", opts.cutoff)));
    }
    if suite != Suite::All {
        return run_single(suite, opts);
    }
    let mut all = CheckReport::new("all");
    for r in run_many(&Suite::SINGLE, opts) {
        all.absorb(r?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        let t = dictionary_table();
        assert_eq!(t.len(), 9);
        assert_eq!(lookup(&AutomorphicDescriptor::Wh), Some(SpectralDescriptor::StructureSheaf));
        assert_eq!(t[4].spectral.to_string(), "𝒪_(P¹)³(-1,-1,-1)");
        assert_eq!(t[8].automorphic.to_string(), "J_1(1)⋆Wh");
        assert!(t.iter().all(|e| !e.checks.is_empty()));
    }

    #[test]
    fn hom_table_examples() {
        let r = verify_hom_table(12);
        assert!(r.passed());
        assert_eq!(r.get("hom.n-1").unwrap().got, "1");
        assert_eq!(r.get("hom.n12").unwrap().got, "0");
    }

    #[test]
    fn support_examples() {
        assert_eq!(wh_support(), wh_open());
        assert!(verify_support_disjointness(4).passed());
    }

    #[test]
    fn dictionary_suite_passes() {
        let r = verify_dictionary(&VerifyOptions::default()).unwrap();
        let fails: Vec<String> = r.failures().map(|c| format!("{} {} {}", c.id, c.expected, c.got)).collect();
        assert!(fails.is_empty(), "{fails:?}");
    }
}
