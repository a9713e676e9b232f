use super::field::Fq;

/// Laurent polynomial in `t` over `F_q`: `Σ c[i]·t^(low+i)`.
///
/// Normalized: no leading or trailing zero coefficients; zero has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPoly {
    low: i32,
    c: Vec<u32>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly { low: 0, c: Vec::new() }
    }

    pub fn monomial(c: u32, e: i32) -> Self {
        LPoly::from_coeffs(e, vec![c])
    }

    pub fn constant(c: u32) -> Self {
        LPoly::monomial(c, 0)
    }

    /// Coefficients are assumed already reduced mod q.
    pub fn from_coeffs(low: i32, mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        let lead = c.iter().take_while(|&&v| v == 0).count();
        if lead == c.len() {
            return LPoly::zero();
        }
        c.drain(..lead);
        LPoly { low: low + lead as i32, c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn low(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.c.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> u32 {
        let i = e - self.low;
        if i < 0 {
            0
        } else {
            self.c.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// `c·t^k` if this is a single term.
    pub fn as_monomial(&self) -> Option<(u32, i32)> {
        (self.c.len() == 1).then(|| (self.c[0], self.low))
    }

    pub fn add(&self, other: &LPoly, f: Fq) -> LPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().unwrap().max(other.high().unwrap());
        let c = (low..=high).map(|e| f.add(self.coeff(e), other.coeff(e))).collect();
        LPoly::from_coeffs(low, c)
    }

    pub fn neg(&self, f: Fq) -> LPoly {
        LPoly { low: self.low, c: self.c.iter().map(|&v| f.neg(v)).collect() }
    }

    pub fn sub(&self, other: &LPoly, f: Fq) -> LPoly {
        self.add(&other.neg(f), f)
    }

    pub fn mul(&self, other: &LPoly, f: Fq) -> LPoly {
        if self.is_zero() || other.is_zero() {
            return LPoly::zero();
        }
        let mut c = vec![0; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        LPoly::from_coeffs(self.low + other.low, c)
    }

    pub fn scale(&self, k: u32, f: Fq) -> LPoly {
        LPoly::from_coeffs(self.low, self.c.iter().map(|&v| f.mul(v, k)).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i32) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        LPoly { low: self.low + k, c: self.c.clone() }
    }

    /// Value at a nonzero point, or at 0 when no negative powers occur.
    pub fn eval(&self, x: u32, f: Fq) -> u32 {
        assert!(x != 0 || self.low().is_none_or(|l| l >= 0), "negative powers at t = 0");
        let mut acc = 0;
        for (i, &c) in self.c.iter().enumerate() {
            let e = self.low + i as i32;
            let p = if e >= 0 { f.pow(x, e as u32) } else { f.pow(f.inv(x), (-e) as u32) };
            acc = f.add(acc, f.mul(c, p));
        }
        acc
    }

    /// Value at `t = ∞`, i.e. the `t⁰` coefficient when no positive powers occur.
    pub fn eval_infinity(&self) -> u32 {
        assert!(self.high().is_none_or(|h| h <= 0), "positive powers at t = ∞");
        self.coeff(0)
    }

    /// Exact division by `t − x` for `x ≠ 0`; `None` if not divisible.
    pub fn div_linear(&self, x: u32, f: Fq) -> Option<LPoly> {
        if self.is_zero() {
            return Some(LPoly::zero());
        }
        // synthetic division on the polynomial t^{-low}·self
        let n = self.c.len();
        if n == 1 {
            return None;
        }
        let mut quot = vec![0; n - 1];
        let mut carry = 0;
        for i in (1..n).rev() {
            carry = f.add(self.c[i], f.mul(carry, x));
            quot[i - 1] = carry;
        }
        let rem = f.add(self.c[0], f.mul(carry, x));
        (rem == 0).then(|| LPoly::from_coeffs(self.low, quot))
    }
}
