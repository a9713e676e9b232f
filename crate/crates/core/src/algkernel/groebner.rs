use std::sync::{Arc, OnceLock};

use super::poly::MultiPoly;
use super::ring::{coprime, divides, mono_div, mono_lcm, Monomial, PolyRing};
use super::{AlgError, Rational};

/// Full normal form of `p` with respect to `basis` (multivariate division).
///
/// The basis elements are tried in the given order, so the result is
/// deterministic; it is canonical whenever `basis` is a Gröbner basis.
pub fn reduce(p: &MultiPoly, basis: &[MultiPoly]) -> Result<MultiPoly, AlgError> {
    for g in basis {
        p.check_ring(g)?;
    }
    Ok(reduce_unchecked(p, basis))
}

fn reduce_unchecked(p: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let ring = p.ring().clone();
    let leads: Vec<(&Monomial, &Rational)> = basis
        .iter()
        .filter_map(|g| g.terms().first().map(|(m, c)| (m, c)))
        .collect();
    let nonzero: Vec<&MultiPoly> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = p.clone();
    let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        match leads.iter().position(|(lm, _)| divides(lm, &m)) {
            Some(k) => {
                let (lm, lc) = leads[k];
                let factor = &c / lc;
                let shift = mono_div(&m, lm);
                rest = rest - nonzero[k].mul_term(&shift, &factor);
            }
            None => remainder.push(rest.pop_leading().unwrap()),
        }
    }
    MultiPoly::from_terms(&ring, remainder)
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (mf, cf) = f.terms().first().unwrap();
    let (mg, cg) = g.terms().first().unwrap();
    let l = mono_lcm(mf, mg);
    f.mul_term(&mono_div(&l, mf), &cf.recip()) - g.mul_term(&mono_div(&l, mg), &cg.recip())
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller update of the active basis and pair list after adding
/// `polys[h]`.
fn update(polys: &[MultiPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lm = |k: usize| polys[k].leading_monomial().unwrap();
    let lh = lm(h).clone();

    let mut cand: Vec<Pair> = active
        .iter()
        .map(|&g| Pair { i: g, j: h, lcm: mono_lcm(lm(g), &lh) })
        .collect();

    // Chain criterion among the new pairs; coprime pairs survive it so they can
    // shadow others, then fall to the product criterion.
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = cand.pop() {
        let coprime_p = coprime(lm(p.i), &lh);
        let shadowed = cand.iter().chain(kept.iter()).any(|q| divides(&q.lcm, &p.lcm));
        if coprime_p || !shadowed {
            kept.push(p);
        }
    }
    let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !coprime(lm(p.i), &lh)).collect();

    // Old pairs made redundant by h.
    pairs.retain(|p| {
        !(divides(&lh, &p.lcm)
            && mono_lcm(lm(p.i), &lh) != p.lcm
            && mono_lcm(lm(p.j), &lh) != p.lcm)
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !divides(&lh, lm(g)));
    active.push(h);
}

/// Reduced Gröbner basis of the ideal generated by `gens`, via Buchberger's
/// algorithm with Gebauer–Möller pair elimination and the normal selection
/// strategy.
///
/// The result is sorted by descending leading monomial, monic, and fully
/// tail-reduced, hence canonical for the ideal and the ring's order.
pub fn buchberger(gens: &[MultiPoly]) -> Result<Vec<MultiPoly>, AlgError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    for g in gens {
        first.check_ring(g)?;
    }
    let ring = first.ring().clone();
    let mut polys: Vec<MultiPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<MultiPoly> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in input {
        let current: Vec<MultiPoly> = active.iter().map(|&k| polys[k].clone()).collect();
        let h = reduce_unchecked(&g, &current);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![MultiPoly::one(&ring)]);
        }
        polys.push(h.monic());
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    while !pairs.is_empty() {
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                ring.cmp_monomials(&a.lcm, &b.lcm).then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(k);
        let s = s_polynomial(&polys[pair.i], &polys[pair.j]);
        let current: Vec<MultiPoly> = active.iter().map(|&k| polys[k].clone()).collect();
        let h = reduce_unchecked(&s, &current);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![MultiPoly::one(&ring)]);
        }
        polys.push(h.monic());
        update(&polys, &mut active, &mut pairs, polys.len() - 1);
    }

    let basis: Vec<MultiPoly> = active.iter().map(|&k| polys[k].clone()).collect();
    Ok(interreduce(basis))
}

fn interreduce(mut basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    basis.sort_by(|a, b| ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            let hm = h.leading_monomial().unwrap();
            m != k && divides(hm, lm) && (hm != lm || m < k)
        });
        if !redundant {
            minimal.push(g.monic());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MultiPoly> =
            minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, g)| g.clone()).collect();
        reduced.push(reduce_unchecked(&minimal[k], &others).monic());
    }
    reduced.sort_by(|a, b| ring.cmp_monomials(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}

/// A polynomial ideal given by generators, with its reduced Gröbner basis
/// computed lazily and cached once.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<MultiPoly>,
    reduced_gb: OnceLock<Vec<MultiPoly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.reduced_gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), reduced_gb: gb }
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<MultiPoly>) -> Result<Self, AlgError> {
        let probe = MultiPoly::zero(ring);
        for g in &generators {
            probe.check_ring(g)?;
        }
        Ok(Ideal { ring: ring.clone(), generators, reduced_gb: OnceLock::new() })
    }

    /// Parses each generator in the polynomial text format.
    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self, AlgError> {
        let polys = gens.iter().map(|s| MultiPoly::parse(ring, s)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    fn check_ring(&self, other: &Arc<PolyRing>) -> Result<(), AlgError> {
        if *self.ring == **other {
            Ok(())
        } else {
            Err(AlgError::RingMismatch)
        }
    }

    /// The reduced Gröbner basis (computed on first use).
    pub fn groebner_basis(&self) -> &[MultiPoly] {
        self.reduced_gb
            .get_or_init(|| buchberger(&self.generators).expect("generators share the ring"))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().first().is_some_and(|g| g.is_one())
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly, AlgError> {
        self.check_ring(p.ring())?;
        Ok(reduce_unchecked(p, self.groebner_basis()))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool, AlgError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `other ⊆ self`, generator-wise.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, AlgError> {
        self.check_ring(&other.ring)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ideal_eq(&self, other: &Ideal) -> Result<bool, AlgError> {
        self.check_ring(&other.ring)?;
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, AlgError> {
        self.check_ring(&other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `self + (polys)`.
    pub fn with_generators(&self, extra: &[MultiPoly]) -> Result<Ideal, AlgError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, AlgError> {
        self.check_ring(&other.ring)?;
        let mut gens = Vec::new();
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f * g);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Drops the auxiliary (first) variable: keeps the basis elements free of it.
    fn eliminate_aux(gens: Vec<MultiPoly>, target: &Arc<PolyRing>) -> Ideal {
        let gb = buchberger(&gens).expect("same ring");
        let kept: Vec<MultiPoly> = gb
            .into_iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m[0] == 0))
            .map(|g| g.map_to_ring(target).expect("aux variable absent"))
            .collect();
        Ideal::new(target, kept).unwrap()
    }

    /// `self ∩ other`, via `t·I + (1−t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, AlgError> {
        self.check_ring(&other.ring)?;
        let ext = self.ring.with_aux_first();
        let t = MultiPoly::var(&ext, &ext.vars()[0])?;
        let one_minus_t = MultiPoly::one(&ext) - &t;
        let mut gens = Vec::new();
        for f in &self.generators {
            gens.push(&t * &f.map_to_ring(&ext)?);
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.map_to_ring(&ext)?);
        }
        Ok(Self::eliminate_aux(gens, &self.ring))
    }

    /// Colon ideal `(self : f) = { g : g·f ∈ self }`.
    pub fn quotient(&self, f: &MultiPoly) -> Result<Ideal, AlgError> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Err(AlgError::ZeroDivisor);
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .groebner_basis()
            .iter()
            .map(|g| g.div_exact(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Saturation `(self : f^∞)` via the Rabinowitsch variable.
    pub fn saturate(&self, f: &MultiPoly) -> Result<Ideal, AlgError> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Err(AlgError::ZeroDivisor);
        }
        let ext = self.ring.with_aux_first();
        let t = MultiPoly::var(&ext, &ext.vars()[0])?;
        let mut gens: Vec<MultiPoly> =
            self.generators.iter().map(|g| g.map_to_ring(&ext)).collect::<Result<_, _>>()?;
        gens.push(MultiPoly::one(&ext) - &t * &f.map_to_ring(&ext)?);
        Ok(Self::eliminate_aux(gens, &self.ring))
    }

    /// Whether some power of `p` lies in the ideal.
    pub fn radical_contains(&self, p: &MultiPoly) -> Result<bool, AlgError> {
        self.check_ring(p.ring())?;
        if p.is_zero() {
            return Ok(true);
        }
        let ext = self.ring.with_aux_first().with_order(super::MonomialOrder::Grevlex);
        let t = MultiPoly::var(&ext, &ext.vars()[0])?;
        let mut gens: Vec<MultiPoly> =
            self.generators.iter().map(|g| g.map_to_ring(&ext)).collect::<Result<_, _>>()?;
        gens.push(MultiPoly::one(&ext) - &t * &p.map_to_ring(&ext)?);
        Ok(Ideal::new(&ext, gens)?.is_unit())
    }

    /// Krull dimension of `ring / self`, read off the leading-term staircase as
    /// the size of a largest set of variables containing no leading monomial.
    pub fn krull_dim(&self) -> Result<usize, AlgError> {
        if self.is_unit() {
            return Err(AlgError::UnitIdeal);
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .groebner_basis()
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .unwrap()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let mut best = 0;
        for subset in 0u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size > best && supports.iter().all(|&s| s & !subset != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// `dim_Q ring/self` when finite, by counting standard monomials.
    pub fn quotient_dim(&self) -> Result<Option<usize>, AlgError> {
        if self.is_unit() {
            return Ok(Some(0));
        }
        let n = self.ring.nvars();
        let leads: Vec<&Monomial> =
            self.groebner_basis().iter().map(|g| g.leading_monomial().unwrap()).collect();
        // each variable needs a pure power among the leading monomials
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let pure = leads
                .iter()
                .filter(|m| m.iter().enumerate().all(|(k, &e)| k == i || e == 0) && m[i] > 0)
                .map(|m| m[i])
                .min();
            match pure {
                Some(b) => bounds.push(b),
                None => return Ok(None),
            }
        }
        let mut count = 0usize;
        let mut m = vec![0u32; n];
        loop {
            if !leads.iter().any(|l| divides(l, &m)) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Ok(Some(count));
                }
                m[k] += 1;
                if m[k] < bounds[k] {
                    break;
                }
                m[k] = 0;
                k += 1;
            }
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ideal_eq(other).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkernel::MonomialOrder;

    fn chart() -> Arc<PolyRing> {
        PolyRing::new(&["a", "b", "x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> MultiPoly {
        MultiPoly::parse(r, s).unwrap()
    }

    #[test]
    fn division_examples() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::Lex).unwrap();
        assert!(reduce(&p(&r, "x^2"), &[p(&r, "x")]).unwrap().is_zero());
        assert_eq!(reduce(&p(&r, "x+y"), &[p(&r, "x-y")]).unwrap(), p(&r, "2*y"));
        assert_eq!(reduce(&p(&r, "1"), &[p(&r, "x"), p(&r, "y")]).unwrap(), p(&r, "1"));
    }

    #[test]
    fn basis_examples() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::Lex).unwrap();
        assert_eq!(buchberger(&[p(&r, "x+y"), p(&r, "x-y")]).unwrap(), vec![p(&r, "x"), p(&r, "y")]);
        assert_eq!(buchberger(&[p(&r, "x^2"), p(&r, "x*y")]).unwrap(), vec![p(&r, "x^2"), p(&r, "x*y")]);
        assert_eq!(buchberger(&[p(&r, "x-y"), p(&r, "y^2")]).unwrap(), vec![p(&r, "x-y"), p(&r, "y^2")]);
        assert_eq!(buchberger(&[p(&r, "x^2+1"), p(&r, "x")]).unwrap(), vec![p(&r, "1")]);
    }

    #[test]
    fn membership_and_equality() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::Grevlex).unwrap();
        let i = ideal(&r, &["x+y", "x-y"]);
        assert!(i.contains(&p(&r, "y")).unwrap());
        assert!(i.contains(&MultiPoly::zero(&r)).unwrap());
        assert!(!ideal(&r, &["x*y"]).contains(&p(&r, "x")).unwrap());
        assert!(i.ideal_eq(&ideal(&r, &["x", "y"])).unwrap());
        assert!(!ideal(&r, &["x"]).ideal_eq(&ideal(&r, &["x^2"])).unwrap());
    }

    #[test]
    fn intersections() {
        let r = chart();
        let meet = ideal(&r, &["a", "b"]).intersect(&ideal(&r, &["a", "y"])).unwrap();
        assert!(meet.ideal_eq(&ideal(&r, &["a", "b*y"])).unwrap());
        let xy = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])).unwrap();
        assert!(xy.ideal_eq(&ideal(&r, &["x*y"])).unwrap());
    }

    #[test]
    fn quotients_and_saturation() {
        let r = chart();
        let q = ideal(&r, &["x*y"]).quotient(&p(&r, "x")).unwrap();
        assert!(q.ideal_eq(&ideal(&r, &["y"])).unwrap());
        assert_eq!(ideal(&r, &["x"]).quotient(&MultiPoly::zero(&r)).unwrap_err(), AlgError::ZeroDivisor);
        let s = ideal(&r, &["x^2*y"]).saturate(&p(&r, "x")).unwrap();
        assert!(s.ideal_eq(&ideal(&r, &["y"])).unwrap());
        let s = ideal(&r, &["x^2", "y^2", "x*y", "a*x+b*y"]).saturate(&p(&r, "x")).unwrap();
        assert!(s.is_unit());
    }

    #[test]
    fn dimensions_and_radicals() {
        let r = chart();
        assert_eq!(Ideal::zero(&r).krull_dim().unwrap(), 4);
        assert_eq!(ideal(&r, &["a", "b"]).krull_dim().unwrap(), 2);
        assert_eq!(ideal(&r, &["a*x+b*y", "a*x^2+b*y^2"]).krull_dim().unwrap(), 2);
        assert_eq!(ideal(&r, &["1"]).krull_dim().unwrap_err(), AlgError::UnitIdeal);
        let ns = ideal(&r, &["x^2", "y^2", "x*y", "a*x+b*y"]);
        assert!(ns.radical_contains(&p(&r, "x")).unwrap());
        assert!(!ns.radical_contains(&p(&r, "a")).unwrap());
        assert!(ideal(&r, &["x^2"]).radical_contains(&p(&r, "x")).unwrap());
    }

    #[test]
    fn finite_quotients() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(ideal(&r, &["x^2", "y^2", "x*y"]).quotient_dim().unwrap(), Some(3));
        assert_eq!(ideal(&r, &["x*y"]).quotient_dim().unwrap(), None);
        assert_eq!(ideal(&r, &["x-1", "y"]).quotient_dim().unwrap(), Some(1));
    }
}
