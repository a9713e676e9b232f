//! SL(2) characters, Clebsch–Gordan, Borel–Weil–Bott on P¹, and the
//! section counts of the diagonal component.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algkernel::LaurentPoly;
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("highest weight must be nonnegative, got {0}")]
    NegativeWeight(i64),
    #[error("cutoff must be nonnegative, got {0}")]
    NegativeCutoff(i64),
    #[error("character is not a virtual SL(2) character: {0}")]
    NotACharacter(String),
}

/// Character of a (virtual) representation, as a Laurent polynomial in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character(pub LaurentPoly);

impl Character {
    pub fn laurent(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn dim(&self) -> i64 {
        self.0.eval_one()
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character(&self.0 * &other.0)
    }

    /// Strips highest weights off one at a time.
    pub fn to_virtual(&self) -> Result<VirtualRep, Sl2Error> {
        if !self.0.is_symmetric() {
            return Err(Sl2Error::NotACharacter(self.0.to_string()));
        }
        let mut rest = self.0.clone();
        let mut out = VirtualRep::zero();
        while let Some(top) = rest.max_exp() {
            if top < 0 {
                return Err(Sl2Error::NotACharacter(self.0.to_string()));
            }
            let m = rest.coeff(top);
            out.add(top as u32, m);
            let strip = LaurentPoly::from_terms((0..=top).map(|k| (top - 2 * k, m)));
            rest = &rest - &strip;
        }
        Ok(out)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Finitely supported ℤ-combination of irreducibles `V_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualRep {
    mults: BTreeMap<u32, i64>,
}

impl VirtualRep {
    pub fn zero() -> Self {
        VirtualRep::default()
    }

    pub fn irreducible(n: u32) -> Self {
        let mut v = VirtualRep::zero();
        v.add(n, 1);
        v
    }

    pub fn add(&mut self, n: u32, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.mults.entry(n).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mults.remove(&n);
        }
    }

    pub fn multiplicity(&self, n: u32) -> i64 {
        self.mults.get(&n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.mults.iter().map(|(&n, &m)| (n, m))
    }

    pub fn dim(&self) -> i64 {
        self.iter().map(|(n, m)| (n as i64 + 1) * m).sum()
    }

    pub fn character(&self) -> Character {
        let mut acc = LaurentPoly::zero();
        for (n, m) in self.iter() {
            for k in 0..=n as i64 {
                acc.add_term(n as i64 - 2 * k, m);
            }
        }
        Character(acc)
    }

    pub fn tensor(&self, other: &VirtualRep) -> VirtualRep {
        let mut out = VirtualRep::zero();
        for (a, ma) in self.iter() {
            for (b, mb) in other.iter() {
                for (c, mc) in clebsch_gordan(a, b).iter() {
                    out.add(c, ma * mb * mc);
                }
            }
        }
        out
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .mults
            .iter()
            .rev()
            .map(|(n, m)| if *m == 1 { format!("V_{n}") } else { format!("{m}·V_{n}") })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Cohomology of a line bundle on P¹ as SL(2)-representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohPair {
    pub h0: VirtualRep,
    pub h1: VirtualRep,
}

impl CohPair {
    pub fn euler(&self) -> i64 {
        self.h0.dim() - self.h1.dim()
    }
}

impl fmt::Display for CohPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h0, self.h1)
    }
}

/// `zⁿ + zⁿ⁻² + … + z⁻ⁿ`.
pub fn irr_char(n: i64) -> Result<Character, Sl2Error> {
    if n < 0 {
        return Err(Sl2Error::NegativeWeight(n));
    }
    Ok(VirtualRep::irreducible(n as u32).character())
}

fn clebsch_gordan(a: u32, b: u32) -> VirtualRep {
    let mut v = VirtualRep::zero();
    let lo = a.abs_diff(b);
    let mut c = a + b;
    loop {
        v.add(c, 1);
        if c < lo + 2 {
            break;
        }
        c -= 2;
    }
    v
}

/// `V_a ⊗ V_b = V_{a+b} ⊕ V_{a+b−2} ⊕ … ⊕ V_{|a−b|}`.
pub fn tensor_decompose(a: i64, b: i64) -> Result<VirtualRep, Sl2Error> {
    for n in [a, b] {
        if n < 0 {
            return Err(Sl2Error::NegativeWeight(n));
        }
    }
    Ok(clebsch_gordan(a as u32, b as u32))
}

pub fn invariant_dim(v: &VirtualRep) -> i64 {
    v.multiplicity(0)
}

/// Borel–Weil–Bott for `𝒪(n)` on P¹.
pub fn coh_p1(n: i64) -> CohPair {
    match n {
        n if n >= 0 => CohPair { h0: VirtualRep::irreducible(n as u32), h1: VirtualRep::zero() },
        -1 => CohPair { h0: VirtualRep::zero(), h1: VirtualRep::zero() },
        n => CohPair { h0: VirtualRep::zero(), h1: VirtualRep::irreducible((-n - 2) as u32) },
    }
}

/// Invariant sections of `𝒪_Δ(n)` on the reduced diagonal component, truncated
/// at fiber degree `cutoff`; degree `i` contributes with multiplicity `i+1`.
pub fn sections_diagonal(n: i64, cutoff: i64) -> Result<i64, Sl2Error> {
    sections_weighted(n, cutoff, |i| i + 1)
}

/// Same sum with multiplicity 1 in every degree (a line bundle over the base).
pub fn sections_theta(n: i64, cutoff: i64) -> Result<i64, Sl2Error> {
    sections_weighted(n, cutoff, |_| 1)
}

fn sections_weighted(n: i64, cutoff: i64, mult: impl Fn(i64) -> i64) -> Result<i64, Sl2Error> {
    if cutoff < 0 {
        return Err(Sl2Error::NegativeCutoff(cutoff));
    }
    Ok((0..=cutoff).map(|i| mult(i) * invariant_dim(&coh_p1(n + 2 * i).h0)).sum())
}

/// Fiber-degree cutoff large enough that every contribution for `n ≥ −1`
/// is included.
pub const TABLE_CUTOFF: i64 = 64;

/// `dim Hom(𝒪, 𝒪_Δ(n+1))` for `−1 ≤ n ≤ n_max`.
pub fn hom_structure_table(n_max: i64) -> Vec<(i64, i64)> {
    (-1..=n_max)
        .map(|n| (n, sections_diagonal(n + 1, TABLE_CUTOFF.max(n_max + 2)).expect("cutoff is positive")))
        .collect()
}

/// Invariants of `Γ(𝒪(a)) ⊗ Γ(𝒪(b)) ⊗ Γ(𝒪(c))`.
pub fn sections_p1_cubed(a: i64, b: i64, c: i64) -> i64 {
    if a < 0 || b < 0 || c < 0 {
        return 0;
    }
    let ab = clebsch_gordan(a as u32, b as u32);
    invariant_dim(&ab.tensor(&VirtualRep::irreducible(c as u32)))
}

/// Torus characters of `H⁰` and `H¹` of `𝒪(n)` from the Čech complex on the
/// charts `x ≠ 0`, `y ≠ 0`: degree-`n` Laurent monomials `x^i y^j` of weight
/// `i − j`, regular on one chart, both, or neither.
pub fn cech_characters(n: i64) -> (LaurentPoly, LaurentPoly) {
    let span = n.abs() + 2;
    let mut h0 = LaurentPoly::zero();
    let mut h1 = LaurentPoly::zero();
    for i in -span..=span + n.abs() {
        let j = n - i;
        // C⁰ → C¹ is injective on Laurent monomials; a monomial is a global section
        // when regular on both charts, a nonzero H¹ class when regular on neither
        match (i >= 0, j >= 0) {
            (true, true) => h0.add_term(i - j, 1),
            (false, false) => h1.add_term(i - j, 1),
            _ => {}
        }
    }
    (h0, h1)
}

const ANCHOR_BWB: &str = "Borel–Weil–Bott on P¹";
const ANCHOR_DIAG: &str = "invariant sections over the diagonal component";

/// The `sl2rep` report: character identities, cohomology of `𝒪(n)` against the
/// Čech computation, and cutoff behavior of diagonal sections.
pub fn verify_all(cutoff: i64) -> CheckReport {
    let mut rep = CheckReport::new("sl2rep");
    let mut bad = 0;
    for a in 0..=12 {
        for b in 0..=12 {
            let prod = irr_char(a).unwrap().mul(&irr_char(b).unwrap());
            if tensor_decompose(a, b).unwrap().character() != prod {
                bad += 1;
            }
        }
    }
    rep.expect_eq("characters.tensor_homomorphism", 0, bad, "Clebsch–Gordan");
    rep.expect_eq("tensor.1x1", "V_2 ⊕ V_0".to_string(), tensor_decompose(1, 1).unwrap().to_string(), "Clebsch–Gordan");
    rep.expect_eq("invariants.1x1", 1, invariant_dim(&tensor_decompose(1, 1).unwrap()), "Clebsch–Gordan");
    let (mut euler, mut serre, mut cech) = (Vec::new(), Vec::new(), Vec::new());
    for n in -10..=10 {
        let c = coh_p1(n);
        if c.euler() != n + 1 {
            euler.push(n);
        }
        if c.h1.dim() != coh_p1(-n - 2).h0.dim() {
            serre.push(n);
        }
        let (h0, h1) = cech_characters(n);
        if c.h0.character().0 != h0 || c.h1.character().0 != h1 {
            cech.push(n);
        }
    }
    let list = |v: &[i64]| format!("{v:?}");
    rep.record("bwb.euler", euler.is_empty(), "χ(𝒪(n)) = n+1 for |n| ≤ 10", list(&euler), ANCHOR_BWB);
    rep.record("bwb.serre", serre.is_empty(), "h¹(n) = h⁰(−n−2)", list(&serre), ANCHOR_BWB);
    rep.record("bwb.cech", cech.is_empty(), "Čech characters agree", list(&cech), ANCHOR_BWB);
    rep.expect_eq("bwb.minus_two", "(0, V_0)".to_string(), coh_p1(-2).to_string(), ANCHOR_BWB);
    let mut unstable = Vec::new();
    for n in -10..=10 {
        let vals: Vec<i64> = (0..=cutoff).map(|c| sections_diagonal(n, c).unwrap()).collect();
        let ok = if n >= 0 { vals.windows(2).all(|w| w[0] == w[1]) } else { vals.windows(2).all(|w| w[0] <= w[1]) };
        if !ok {
            unstable.push(n);
        }
    }
    rep.record("sections.cutoff_behavior", unstable.is_empty(), "constant for n ≥ 0, monotone below", list(&unstable), ANCHOR_DIAG);
    rep.expect_eq("sections.diagonal_0", 1, sections_diagonal(0, cutoff).unwrap(), ANCHOR_DIAG);
    rep.expect_eq("sections.diagonal_3", 0, sections_diagonal(3, cutoff).unwrap(), ANCHOR_DIAG);
    rep.expect_eq("sections.p1_cubed_110", 1, sections_p1_cubed(1, 1, 0), ANCHOR_DIAG);
    rep.expect_eq("sections.p1_cubed_neg", 0, sections_p1_cubed(-1, -1, -1), ANCHOR_DIAG);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters() {
        assert_eq!(irr_char(0).unwrap().to_string(), "1");
        assert_eq!(irr_char(1).unwrap().to_string(), "z + z^-1");
        assert_eq!(irr_char(2).unwrap().to_string(), "z^2 + 1 + z^-2");
        assert!(irr_char(-1).is_err());
        assert_eq!(irr_char(4).unwrap().dim(), 5);
    }

    #[test]
    fn clebsch_gordan_examples() {
        let v = tensor_decompose(1, 1).unwrap();
        assert_eq!(v.to_string(), "V_2 ⊕ V_0");
        assert_eq!(tensor_decompose(5, 0).unwrap(), VirtualRep::irreducible(5));
        assert_eq!(tensor_decompose(2, 1).unwrap().to_string(), "V_3 ⊕ V_1");
        assert_eq!(invariant_dim(&v), 1);
        assert_eq!(invariant_dim(&VirtualRep::irreducible(2)), 0);
    }

    #[test]
    fn bott_examples() {
        assert_eq!(coh_p1(0).h0, VirtualRep::irreducible(0));
        assert!(coh_p1(-1).h0.is_zero() && coh_p1(-1).h1.is_zero());
        assert_eq!(coh_p1(-2).h1, VirtualRep::irreducible(0));
    }

    #[test]
    fn section_examples() {
        assert_eq!(sections_diagonal(0, 10).unwrap(), 1);
        assert_eq!(sections_diagonal(3, 10).unwrap(), 0);
        assert_eq!(sections_diagonal(1, 0).unwrap(), 0);
        assert_eq!(sections_diagonal(-4, 3).unwrap(), 3);
        assert!(sections_diagonal(0, -1).is_err());
        let t = hom_structure_table(7);
        assert_eq!(t[0], (-1, 1));
        assert!(t[1..].iter().all(|&(_, v)| v == 0));
        assert_eq!(sections_p1_cubed(-1, -1, -1), 0);
        assert_eq!(sections_p1_cubed(0, 0, 0), 1);
        assert_eq!(sections_p1_cubed(1, 1, 0), 1);
        assert_eq!(sections_p1_cubed(1, 1, 2), 1);
    }

    #[test]
    fn character_roundtrip() {
        let mut v = VirtualRep::zero();
        v.add(3, 2);
        v.add(0, -1);
        assert_eq!(v.character().to_virtual().unwrap(), v);
        assert!(Character(LaurentPoly::monomial(1, 1)).to_virtual().is_err());
    }
}
