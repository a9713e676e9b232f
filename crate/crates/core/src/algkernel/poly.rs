use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::ring::{divides, mono_div, mono_mul, Monomial, PolyRing};
use super::{AlgError, Rational};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in strictly descending monomial order of the owning
/// ring and never carry a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((vec![0; ring.nvars()], c));
        }
        p
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn from_int(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self, AlgError> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| AlgError::UnknownVariable(name.to_string()))?;
        let mut m = vec![0; ring.nvars()];
        m[i] = 1;
        Ok(MultiPoly { ring: ring.clone(), terms: vec![(m, Rational::one())] })
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: Monomial, c: Rational) -> Self {
        assert_eq!(exps.len(), ring.nvars());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((exps, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "exponent vector length");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms[0].1.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.iter().sum()).max()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms
            .iter()
            .find(|(k, _)| k.as_slice() == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub(crate) fn check_ring(&self, other: &MultiPoly) -> Result<(), AlgError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(AlgError::RingMismatch)
        }
    }

    fn merge(&self, other: &MultiPoly, sign_other: bool) -> MultiPoly {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let neg = |c: &Rational| if sign_other { c.clone() } else { -c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ring.cmp_monomials(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), neg(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + neg(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), neg(c))));
        MultiPoly { ring: ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, AlgError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, AlgError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, AlgError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(mono_mul(ma, mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.ring.cmp_monomials(&b.0, &a.0));
        Ok(MultiPoly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// `c * x^m * self`; monomial orders are multiplicative so term order is kept.
    pub fn mul_term(&self, m: &[u32], c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (mono_mul(k, m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Exact division `self / f`; errors if `f` does not divide `self`.
    pub fn div_exact(&self, f: &MultiPoly) -> Result<MultiPoly, AlgError> {
        self.check_ring(f)?;
        let (lm, lc) = match f.terms.first() {
            Some(t) => t.clone(),
            None => return Err(AlgError::ZeroDivisor),
        };
        let mut rest = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            if !divides(&lm, &m) {
                return Err(AlgError::NotDivisible);
            }
            let qm = mono_div(&m, &lm);
            let qc = &c / &lc;
            rest = rest.merge(&f.mul_term(&qm, &qc), false);
            quot.push((qm, qc));
        }
        Ok(MultiPoly { ring: self.ring.clone(), terms: quot })
    }

    /// Re-expresses this polynomial in `target`, mapping each source variable to
    /// the target variable of the same name. Fails if a variable with a
    /// nonzero exponent is missing from the target ring.
    pub fn map_to_ring(&self, target: &Arc<PolyRing>) -> Result<MultiPoly, AlgError> {
        let map: Vec<Option<usize>> =
            self.ring.vars().iter().map(|v| target.var_index(v)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = vec![0; target.nvars()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => nm[j] = e,
                    None => return Err(AlgError::UnknownVariable(self.ring.vars()[i].clone())),
                }
            }
            terms.push((nm, c.clone()));
        }
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Substitutes a rational value for one variable (the variable stays in the ring).
    pub fn substitute(&self, var: &str, value: &Rational) -> Result<MultiPoly, AlgError> {
        let i = self
            .ring
            .var_index(var)
            .ok_or_else(|| AlgError::UnknownVariable(var.to_string()))?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut nm = m.clone();
            let e = nm[i];
            nm[i] = 0;
            (nm, c * pow_rat(value, e))
        });
        Ok(MultiPoly::from_terms(&self.ring, terms))
    }

    /// Evaluates at a full point (values in ring variable order).
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(m) {
                t *= pow_rat(v, e);
            }
            acc += t;
        }
        acc
    }

    /// Swaps variables according to a permutation of variable indices.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.ring.nvars());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut nm = vec![0; m.len()];
            for (i, &e) in m.iter().enumerate() {
                nm[perm[i]] = e;
            }
            (nm, c.clone())
        });
        MultiPoly::from_terms(&self.ring, terms)
    }

    /// Variables that occur with nonzero exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }
}

pub(crate) fn pow_rat(v: &Rational, e: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e {
        r *= v;
    }
    r
}

fn fmt_monomial(ring: &PolyRing, m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in ring.vars().iter().zip(m) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = fmt_monomial(&self.ring, m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$inner(rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$inner(&rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$inner(rhs).expect("polynomials from different rings")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
