//! Rank-2 parabolic bundles on P¹ over a small prime field: transition
//! matrices, Birkhoff splitting, orbit census with automorphism counts, Hecke
//! lower modifications and the Atkin–Lehner involutions.

mod birkhoff;
mod bundle;
mod field;
mod label;
mod lpoly;
mod matrix;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use birkhoff::{factorize, splitting_type, Birkhoff};
pub use bundle::{ParabolicPoint, Presented, Site};
pub use field::{Fq, ProjPoint, SUPPORTED_Q};
pub use label::OrbitLabel;
pub use lpoly::LPoly;
pub use matrix::TransitionMatrix;

use crate::marked::{Marked, MarkedSet};
use crate::report::CheckReport;

pub type FqConfig = Fq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FqError {
    #[error("unsupported field size q = {0}; supported: 2, 3, 5")]
    UnsupportedQ(u32),
    #[error("determinant is not a unit monomial")]
    NotABundle,
    #[error("degree window [-{window}, {window}] exceeded")]
    WindowExceeded { window: i32 },
    #[error("invalid orbit label {0}")]
    InvalidLabel(String),
    #[error("x = {0} is a marked point")]
    RamifiedPoint(u32),
}

/// Degree window used for a given gap bound.
pub fn default_window(dmax: u32) -> i32 {
    2 * dmax as i32 + 2
}

/// `#Aut(𝒪(d) ⊕ 𝒪)(F_q)` modulo scalars.
pub fn aut_bundle(d: u32, q: u32) -> u128 {
    let q = q as u128;
    match d {
        0 => q * (q * q - 1),
        _ => q.pow(d + 1) * (q - 1),
    }
}

/// Order of the stabilizer of a point in the given orbit.
pub fn aut_order(label: OrbitLabel, q: u32) -> Result<u128, FqError> {
    if !label.is_valid() {
        return Err(FqError::InvalidLabel(label.to_string()));
    }
    let q = q as u128;
    Ok(match label {
        OrbitLabel::Generic => 1,
        OrbitLabel::Config { d: 0, set } => match set.len() {
            0 => 1,
            2 => q - 1,
            _ => q * (q - 1),
        },
        OrbitLabel::Config { d: 1, set } => match set.len() {
            0 | 1 => q - 1,
            2 => q * (q - 1),
            _ => q * q * (q - 1),
        },
        // 1 → G_a^{d−2} → Aut → G_m ⋉ G_a^R → 1
        OrbitLabel::Config { d, set } => q.pow(d - 2 + set.len() as u32) * (q - 1),
    })
}

fn all_triples(f: Fq) -> Vec<[ProjPoint; 3]> {
    let pts = ProjPoint::all(f);
    let mut out = Vec::with_capacity(pts.len().pow(3));
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Every parabolic point at gap `d`, in a fixed order.
pub fn all_points(d: u32, f: Fq) -> Vec<ParabolicPoint> {
    all_triples(f).into_iter().map(|l| ParabolicPoint::new(d, l)).collect()
}

#[cfg(feature = "parallel")]
fn classify_all(points: &[ParabolicPoint], f: Fq) -> Vec<OrbitLabel> {
    use rayon::prelude::*;
    points.par_iter().map(|p| p.classify(f)).collect()
}

#[cfg(not(feature = "parallel"))]
fn classify_all(points: &[ParabolicPoint], f: Fq) -> Vec<OrbitLabel> {
    points.iter().map(|p| p.classify(f)).collect()
}

/// Sizes of the orbits at gap `d`, from enumerating all `(q+1)³` line triples.
pub fn orbit_census(d: u32, f: Fq) -> BTreeMap<OrbitLabel, u64> {
    let mut out = BTreeMap::new();
    for l in classify_all(&all_points(d, f), f) {
        *out.entry(l).or_insert(0) += 1;
    }
    out
}

/// `Σ 1/#Aut` over the orbits at gap `d`.
pub fn groupoid_mass(d: u32, f: Fq) -> Result<BigRational, FqError> {
    let mut mass = BigRational::from_integer(BigInt::from(0));
    for l in OrbitLabel::all_at(d) {
        mass += BigRational::new(BigInt::from(1), BigInt::from(aut_order(l, f.q())?));
    }
    Ok(mass)
}

/// Points of the orbit `b`.
pub fn orbit_points(b: OrbitLabel, f: Fq) -> Vec<ParabolicPoint> {
    all_points(b.gap(), f).into_iter().filter(|p| p.classify(f) == b).collect()
}

/// Hecke modifications at `x` of a fixed point, counted by target orbit.
pub fn hecke_fiber_counts_at(p: &ParabolicPoint, x: u32, f: Fq, window: i32) -> Result<BTreeMap<OrbitLabel, u64>, FqError> {
    let mut out = BTreeMap::new();
    for ell in ProjPoint::all(f) {
        let target = p.hecke(x, ell, f, window)?.classify(f);
        *out.entry(target).or_insert(0) += 1;
    }
    Ok(out)
}

/// Hecke fiber over the standard representative of `b`.
pub fn hecke_fiber_counts(b: OrbitLabel, x: u32, f: Fq, window: i32) -> Result<BTreeMap<OrbitLabel, u64>, FqError> {
    if !b.is_valid() {
        return Err(FqError::InvalidLabel(b.to_string()));
    }
    hecke_fiber_counts_at(&ParabolicPoint::representative(b), x, f, window)
}

/// Unramified points of `P¹(F_q)`: `F_q ∖ {0, 1}`.
pub fn unramified_points(f: Fq) -> Vec<u32> {
    (2..f.q()).collect()
}

pub fn atkin_lehner(p: &ParabolicPoint, r: Marked, f: Fq, window: i32) -> Result<ParabolicPoint, FqError> {
    p.atkin_lehner(r, f, window)
}

/// Action of `AL_r` on orbit labels, through the standard representative.
pub fn atkin_lehner_label(b: OrbitLabel, r: Marked, f: Fq, window: i32) -> Result<OrbitLabel, FqError> {
    Ok(ParabolicPoint::representative(b).atkin_lehner(r, f, window)?.classify(f))
}

pub fn format_counts(m: &BTreeMap<OrbitLabel, u64>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

const ANCHOR_CENSUS: &str = "parabolic bundle orbits";
const ANCHOR_HECKE: &str = "Hecke local constancy";
const ANCHOR_AL: &str = "Atkin–Lehner involutions";
const ANCHOR_SPLIT: &str = "Birkhoff splitting";

fn elementary(upper: bool, c: u32, k: i32) -> TransitionMatrix {
    let (one, zero) = (LPoly::constant(1), LPoly::zero());
    let e = LPoly::monomial(c, k);
    if upper {
        TransitionMatrix::new([[one.clone(), e], [zero, one]])
    } else {
        TransitionMatrix::new([[one.clone(), zero], [e, one]])
    }
}

fn verify_splitting(rep: &mut CheckReport, f: Fq, window: i32) {
    let t = LPoly::monomial(1, 1);
    let ext = TransitionMatrix::new([[t, LPoly::constant(1)], [LPoly::zero(), LPoly::monomial(1, -1)]]);
    let cases = [
        ("identity", TransitionMatrix::identity(), 0),
        ("diag_t_1", TransitionMatrix::diag(1, 0), 1),
        ("extension", ext, 0),
    ];
    for (name, g, want) in &cases {
        let got = splitting_type(g, f, window).map(|d| d.to_string()).unwrap_or_else(|e| e.to_string());
        rep.expect_eq(&format!("splitting.{name}"), want.to_string(), got, ANCHOR_SPLIT);
    }
    // unimodular left/right multiplications, cycled deterministically
    let fixtures = [TransitionMatrix::diag(-2, 0), TransitionMatrix::diag(1, -2), cases[2].1.clone()];
    let mut bad = 0;
    for g0 in &fixtures {
        let want = splitting_type(g0, f, window).expect("fixture is a bundle");
        let mut g = g0.clone();
        for i in 0..100u32 {
            let c = 1 + i % (f.q() - 1);
            let left = elementary(i % 2 == 0, c, -((i % 3) as i32));
            let right = elementary(i % 4 < 2, c, (i % 2) as i32);
            g = left.mul(&g, f).mul(&right, f);
            if i % 5 == 0 {
                g = g.scale(&LPoly::monomial(1, 1), f);
            }
            match splitting_type(&g, f, 4 * window) {
                Ok(d) if d == want => {}
                _ => bad += 1,
            }
            // keep degrees bounded: restart the walk
            if i % 10 == 9 {
                g = g0.clone();
            }
        }
    }
    rep.expect_eq("splitting.unimodular_invariance", 0, bad, ANCHOR_SPLIT)
        .with_details("300 left/right unimodular multiplications");
}

fn verify_census(rep: &mut CheckReport, f: Fq, dmax: u32) {
    let q = f.q();
    let total = (q as u64 + 1).pow(3);
    for d in 0..=dmax {
        let census = orbit_census(d, f);
        let labels: Vec<OrbitLabel> = census.keys().copied().collect();
        let mut want = OrbitLabel::all_at(d);
        want.sort();
        rep.expect_eq(&format!("census.d{d}.labels"), want.len(), labels.len(), ANCHOR_CENSUS);
        let show = |v: &[OrbitLabel]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        rep.expect_eq(&format!("census.d{d}.label_set"), show(&want), show(&labels), ANCHOR_CENSUS);
        rep.expect_eq(&format!("census.d{d}.total"), total, census.values().sum(), ANCHOR_CENSUS);
        let aut = aut_bundle(d, q);
        let bad: Vec<String> = census
            .iter()
            .filter(|(l, n)| aut_order(**l, q).map(|a| a * **n as u128) != Ok(aut))
            .map(|(l, n)| format!("{l}:{n}"))
            .collect();
        rep.record(&format!("census.d{d}.orbit_stabilizer"), bad.is_empty(), format!("size·aut = {aut}"), format!("{} mismatches", bad.len()), ANCHOR_CENSUS)
            .with_details(bad.join(", "));
        let mass = groupoid_mass(d, f).expect("labels valid");
        let want = BigRational::new(BigInt::from(total), BigInt::from(aut));
        rep.expect_eq(&format!("census.d{d}.mass"), want, mass, ANCHOR_CENSUS);
    }
    let f2 = Fq::new(2).unwrap();
    rep.expect_eq(
        "census.example_d0_q2",
        "{c_0(∅):6, c_0(0,1):6, c_0(0,∞):6, c_0(1,∞):6, c_0(S):3}".to_string(),
        format_counts(&orbit_census(0, f2)),
        ANCHOR_CENSUS,
    );
    rep.expect_eq(
        "census.example_d1_q2",
        "{c_1(∅):4, c_1(0):4, c_1(1):4, c_1(0,1):2, c_1(∞):4, c_1(0,∞):2, c_1(1,∞):2, c_1(S):1, c_1(*):4}".to_string(),
        format_counts(&orbit_census(1, f2)),
        ANCHOR_CENSUS,
    );
    let c3 = OrbitLabel::c(3, MarkedSet::of(&[Marked::Zero, Marked::One]));
    rep.expect_eq("aut_order.c_3(0,1).q2", 8, aut_order(c3, 2).unwrap(), ANCHOR_CENSUS)
        .with_details("G_a^{d-2} kernel times G_m ⋉ G_a^R; orbit of size q^{3-|R|} = 2");
    rep.expect_eq("aut_order.c_1(S).q3", 18, aut_order(OrbitLabel::c(1, MarkedSet::FULL), 3).unwrap(), ANCHOR_CENSUS);
    rep.expect_eq("aut_order.c_0(∅)", 1, aut_order(OrbitLabel::c(0, MarkedSet::EMPTY), q).unwrap(), ANCHOR_CENSUS);
}

fn verify_hecke(rep: &mut CheckReport, f: Fq, dmax: u32, window: i32) {
    let q = f.q() as u64;
    let xs = unramified_points(f);
    if xs.is_empty() {
        rep.skip("hecke", "F_2 has no point outside {0, 1, ∞}", ANCHOR_HECKE);
        return;
    }
    let mut dependent = Vec::new();
    let mut bad_total = Vec::new();
    for d in 0..=dmax {
        for b in OrbitLabel::all_at(d) {
            let reference = hecke_fiber_counts(b, xs[0], f, window).expect("window suffices");
            for p in orbit_points(b, f) {
                for &x in &xs {
                    let c = hecke_fiber_counts_at(&p, x, f, window).expect("window suffices");
                    if c.values().sum::<u64>() != q + 1 {
                        bad_total.push(format!("{b}@{x}"));
                    }
                    if c != reference {
                        dependent.push(format!("{b}@{x}"));
                    }
                }
            }
            let sum: u64 = reference.values().sum();
            rep.record(&format!("hecke.fiber.{b}"), sum == q + 1, format!("total {}", q + 1), format_counts(&reference), ANCHOR_HECKE);
        }
    }
    dependent.dedup();
    rep.record("hecke.local_constancy", dependent.is_empty(), "independent of x and representative", format!("{} dependent", dependent.len()), ANCHOR_HECKE)
        .with_details(dependent.join(", "));
    rep.record("hecke.totals", bad_total.is_empty(), format!("q+1 = {}", q + 1), format!("{} wrong totals", bad_total.len()), ANCHOR_HECKE);
    for s in Marked::ALL {
        let b = OrbitLabel::c(0, MarkedSet::FULL.remove(s));
        let c = hecke_fiber_counts(b, xs[0], f, window).unwrap();
        let single = OrbitLabel::c(1, MarkedSet::of(&[s]));
        let rest = OrbitLabel::c(1, MarkedSet::FULL.remove(s));
        rep.expect_eq(&format!("hecke.isomorphism.{b}->{single}"), 1, c.get(&single).copied().unwrap_or(0), ANCHOR_HECKE);
        rep.expect_eq(&format!("hecke.isomorphism.{b}->{rest}"), 1, c.get(&rest).copied().unwrap_or(0), ANCHOR_HECKE);
    }
    let c = hecke_fiber_counts(OrbitLabel::c(0, MarkedSet::EMPTY), xs[0], f, window).unwrap();
    let generic = c.get(&OrbitLabel::Generic).copied().unwrap_or(0);
    rep.expect_eq("hecke.open_fibration", q, generic, ANCHOR_HECKE)
        .with_details(format!("fiber over c_0(∅): {}", format_counts(&c)));
}

fn verify_atkin_lehner(rep: &mut CheckReport, f: Fq, dmax: u32, window: i32) {
    let mut not_involutive = 0;
    let mut parity = 0;
    let mut non_commuting = 0;
    let mut rep_dependent = 0;
    for d in 0..=dmax {
        for p in all_points(d, f) {
            let l = p.classify(f);
            for r in Marked::ALL {
                let a = p.atkin_lehner(r, f, window).expect("window suffices");
                if a.classify(f) != atkin_lehner_label(l, r, f, window).unwrap() {
                    rep_dependent += 1;
                }
                if a.d % 2 == d % 2 {
                    parity += 1;
                }
                if a.atkin_lehner(r, f, window).unwrap().classify(f) != l {
                    not_involutive += 1;
                }
                for r2 in Marked::ALL {
                    let ab = a.atkin_lehner(r2, f, window).unwrap().classify(f);
                    let ba = p.atkin_lehner(r2, f, window).unwrap().atkin_lehner(r, f, window).unwrap().classify(f);
                    if ab != ba {
                        non_commuting += 1;
                    }
                }
            }
        }
    }
    rep.expect_eq("atkin_lehner.involution", 0, not_involutive, ANCHOR_AL);
    rep.expect_eq("atkin_lehner.parity", 0, parity, ANCHOR_AL);
    rep.expect_eq("atkin_lehner.commute", 0, non_commuting, ANCHOR_AL);
    rep.expect_eq("atkin_lehner.well_defined_on_labels", 0, rep_dependent, ANCHOR_AL);
    let open = OrbitLabel::c(0, MarkedSet::EMPTY);
    for r in Marked::ALL {
        let got = atkin_lehner_label(open, r, f, window).unwrap();
        rep.expect_eq(&format!("atkin_lehner.open.{r}"), OrbitLabel::Generic.to_string(), got.to_string(), ANCHOR_AL);
    }
    let pair = OrbitLabel::c(0, MarkedSet::of(&[Marked::Zero, Marked::One]));
    let got = atkin_lehner_label(pair, Marked::Zero, f, window).unwrap();
    rep.expect_eq("atkin_lehner.c_0(0,1).at_0", "c_1(1)".to_string(), got.to_string(), ANCHOR_AL);
}

/// The `fqbun` report for one field size and gap bound.
pub fn verify_all(q: u32, dmax: u32) -> Result<CheckReport, FqError> {
    let f = Fq::new(q)?;
    let window = default_window(dmax);
    let mut rep = CheckReport::new("fqbun");
    verify_splitting(&mut rep, f, window);
    verify_census(&mut rep, f, dmax);
    verify_hecke(&mut rep, f, dmax, window);
    verify_atkin_lehner(&mut rep, f, dmax, window);
    Ok(rep)
}
