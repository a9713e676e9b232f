use super::field::Fq;
use super::lpoly::LPoly;
use super::FqError;

/// 2×2 matrix of Laurent polynomials over `F_q`.
///
/// As a transition matrix it glues the frame over `P¹∖{∞}` to the frame over
/// `P¹∖{0}`: `s_∞ = g·s_0`. With this convention `diag(t^a, 1)` presents
/// `𝒪(−a) ⊕ 𝒪`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub e: [[LPoly; 2]; 2],
}

impl TransitionMatrix {
    pub fn new(e: [[LPoly; 2]; 2]) -> Self {
        TransitionMatrix { e }
    }

    pub fn identity() -> Self {
        TransitionMatrix::diag(0, 0)
    }

    /// `diag(t^a, t^b)`
    pub fn diag(a: i32, b: i32) -> Self {
        TransitionMatrix::new([
            [LPoly::monomial(1, a), LPoly::zero()],
            [LPoly::zero(), LPoly::monomial(1, b)],
        ])
    }

    pub fn constant(m: [[u32; 2]; 2]) -> Self {
        TransitionMatrix::new(m.map(|row| row.map(LPoly::constant)))
    }

    pub fn mul(&self, o: &TransitionMatrix, f: Fq) -> TransitionMatrix {
        let entry = |i: usize, j: usize| {
            self.e[i][0].mul(&o.e[0][j], f).add(&self.e[i][1].mul(&o.e[1][j], f), f)
        };
        TransitionMatrix::new([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    pub fn det(&self, f: Fq) -> LPoly {
        self.e[0][0].mul(&self.e[1][1], f).sub(&self.e[0][1].mul(&self.e[1][0], f), f)
    }

    /// `(c, k)` with `det = c·t^k`, if the determinant is a unit monomial.
    pub fn unit_det(&self, f: Fq) -> Result<(u32, i32), FqError> {
        self.det(f).as_monomial().ok_or(FqError::NotABundle)
    }

    /// Inverse over `F_q[t, t⁻¹]`.
    pub fn inverse(&self, f: Fq) -> Result<TransitionMatrix, FqError> {
        let (c, k) = self.unit_det(f)?;
        let s = LPoly::monomial(f.inv(c), -k);
        let [[a, b], [cc, d]] = &self.e;
        Ok(TransitionMatrix::new([
            [d.mul(&s, f), b.neg(f).mul(&s, f)],
            [cc.neg(f).mul(&s, f), a.mul(&s, f)],
        ]))
    }

    pub fn swap_rows(&self) -> TransitionMatrix {
        let [r0, r1] = self.e.clone();
        TransitionMatrix::new([r1, r0])
    }

    pub fn swap_columns(&self) -> TransitionMatrix {
        let [[a, b], [c, d]] = self.e.clone();
        TransitionMatrix::new([[b, a], [d, c]])
    }

    pub fn scale(&self, s: &LPoly, f: Fq) -> TransitionMatrix {
        let m = |p: &LPoly| p.mul(s, f);
        let [[a, b], [c, d]] = &self.e;
        TransitionMatrix::new([[m(a), m(b)], [m(c), m(d)]])
    }

    /// Smallest and largest exponent over all entries.
    pub fn exponent_range(&self) -> Option<(i32, i32)> {
        let lows = self.e.iter().flatten().filter_map(LPoly::low);
        let highs = self.e.iter().flatten().filter_map(LPoly::high);
        Some((lows.min()?, highs.max()?))
    }

    pub fn check_window(&self, window: i32) -> Result<(), FqError> {
        match self.exponent_range() {
            Some((lo, hi)) if lo < -window || hi > window => Err(FqError::WindowExceeded { window }),
            _ => Ok(()),
        }
    }

    /// Evaluate at a finite point (no negative powers allowed at 0).
    pub fn eval(&self, x: u32, f: Fq) -> [[u32; 2]; 2] {
        let v = |p: &LPoly| p.eval(x, f);
        [[v(&self.e[0][0]), v(&self.e[0][1])], [v(&self.e[1][0]), v(&self.e[1][1])]]
    }

    /// Evaluate at `t = ∞` (no positive powers allowed).
    pub fn eval_infinity(&self) -> [[u32; 2]; 2] {
        let v = |p: &LPoly| p.eval_infinity();
        [[v(&self.e[0][0]), v(&self.e[0][1])], [v(&self.e[1][0]), v(&self.e[1][1])]]
    }

    /// Entries lie in `F_q[t]` (`sign = 1`) or `F_q[t⁻¹]` (`sign = -1`).
    pub fn is_polynomial_in(&self, sign: i32) -> bool {
        self.e.iter().flatten().all(|p| match sign {
            1 => p.low().is_none_or(|l| l >= 0),
            _ => p.high().is_none_or(|h| h <= 0),
        })
    }
}

impl std::fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |p: &LPoly| {
            if p.is_zero() {
                return "0".to_string();
            }
            let (lo, hi) = (p.low().unwrap(), p.high().unwrap());
            let terms: Vec<String> = (lo..=hi)
                .rev()
                .filter(|&e| p.coeff(e) != 0)
                .map(|e| match (p.coeff(e), e) {
                    (c, 0) => c.to_string(),
                    (1, 1) => "t".into(),
                    (c, 1) => format!("{c}t"),
                    (1, e) => format!("t^{e}"),
                    (c, e) => format!("{c}t^{e}"),
                })
                .collect();
            terms.join("+")
        };
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            show(&self.e[0][0]),
            show(&self.e[0][1]),
            show(&self.e[1][0]),
            show(&self.e[1][1])
        )
    }
}

/// Apply a constant matrix to a vector.
pub fn apply(m: [[u32; 2]; 2], v: [u32; 2], f: Fq) -> [u32; 2] {
    [
        f.add(f.mul(m[0][0], v[0]), f.mul(m[0][1], v[1])),
        f.add(f.mul(m[1][0], v[0]), f.mul(m[1][1], v[1])),
    ]
}

/// Inverse of an invertible constant matrix.
pub fn inverse_const(m: [[u32; 2]; 2], f: Fq) -> [[u32; 2]; 2] {
    let det = f.sub(f.mul(m[0][0], m[1][1]), f.mul(m[0][1], m[1][0]));
    let i = f.inv(det);
    [
        [f.mul(m[1][1], i), f.mul(f.neg(m[0][1]), i)],
        [f.mul(f.neg(m[1][0]), i), f.mul(m[0][0], i)],
    ]
}
