use std::fmt;
use std::sync::Arc;

use crate::algkernel::{AlgError, Ideal, MultiPoly, PolyRing, Rational};

/// A 2×2 matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix2 {
    entries: [[MultiPoly; 2]; 2],
}

impl SymMatrix2 {
    pub fn new(entries: [[MultiPoly; 2]; 2]) -> Result<Self, AlgError> {
        let r = entries[0][0].ring().clone();
        for row in &entries {
            for e in row {
                if **e.ring() != *r {
                    return Err(AlgError::RingMismatch);
                }
            }
        }
        Ok(SymMatrix2 { entries })
    }

    /// Parses four entries given row by row.
    pub fn parse(ring: &Arc<PolyRing>, rows: [[&str; 2]; 2]) -> Result<Self, AlgError> {
        let p = |s: &str| MultiPoly::parse(ring, s);
        SymMatrix2::new([[p(rows[0][0])?, p(rows[0][1])?], [p(rows[1][0])?, p(rows[1][1])?]])
    }

    pub fn scalar(ring: &Arc<PolyRing>, c: i64) -> Self {
        let z = MultiPoly::zero(ring);
        let d = MultiPoly::from_int(ring, c);
        SymMatrix2 { entries: [[d.clone(), z.clone()], [z, d]] }
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        SymMatrix2::scalar(ring, 1)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.entries[0][0].ring()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    fn zip(&self, other: &Self, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Self {
        let e = |i: usize, j: usize| f(&self.entries[i][j], &other.entries[i][j]);
        SymMatrix2 { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let e = |i: usize, j: usize| f(&self.entries[i][j]);
        SymMatrix2 { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        SymMatrix2 { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn det(&self) -> MultiPoly {
        let a = &self.entries;
        &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
    }

    pub fn trace(&self) -> MultiPoly {
        &self.entries[0][0] + &self.entries[1][1]
    }

    /// Adjugate; the inverse whenever the determinant is 1.
    pub fn adjugate(&self) -> Self {
        let a = &self.entries;
        SymMatrix2 { entries: [[a[1][1].clone(), -&a[0][1]], [-&a[1][0], a[0][0].clone()]] }
    }

    pub fn apply(&self, v: &[MultiPoly; 2]) -> [MultiPoly; 2] {
        let a = &self.entries;
        [&(&a[0][0] * &v[0]) + &(&a[0][1] * &v[1]), &(&a[1][0] * &v[0]) + &(&a[1][1] * &v[1])]
    }

    pub fn substitute(&self, var: &str, value: &Rational) -> Result<Self, AlgError> {
        let e = |i: usize, j: usize| self.entries[i][j].substitute(var, value);
        Ok(SymMatrix2 { entries: [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]] })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    /// Entrywise normal form modulo `ideal`.
    pub fn reduce_mod(&self, ideal: &Ideal) -> Result<Self, AlgError> {
        let e = |i: usize, j: usize| ideal.normal_form(&self.entries[i][j]);
        Ok(SymMatrix2 { entries: [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]] })
    }

    pub fn is_zero_mod(&self, ideal: &Ideal) -> Result<bool, AlgError> {
        Ok(self.reduce_mod(ideal)?.is_zero())
    }
}

impl fmt::Display for SymMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", a[0][0], a[0][1], a[1][0], a[1][1])
    }
}
