use super::field::Fq;
use super::lpoly::LPoly;
use super::matrix::TransitionMatrix;
use super::FqError;

/// `left · g = diag(t^m0, t^m1) · right` with `left ∈ GL₂(F_q[t⁻¹])` and
/// `right ∈ GL₂(F_q[t])`. The bundle splits as `𝒪(−m0) ⊕ 𝒪(−m1)`.
#[derive(Clone, Debug)]
pub struct Birkhoff {
    pub left: TransitionMatrix,
    pub exps: [i32; 2],
    pub right: TransitionMatrix,
}

impl Birkhoff {
    pub fn gap(&self) -> u32 {
        self.exps[0].abs_diff(self.exps[1])
    }
}

fn row_low(m: &TransitionMatrix, i: usize) -> i32 {
    m.e[i].iter().filter_map(LPoly::low).min().expect("zero row in a bundle")
}

fn lead_vector(m: &TransitionMatrix, i: usize) -> [u32; 2] {
    let lo = row_low(m, i);
    [m.e[i][0].coeff(lo), m.e[i][1].coeff(lo)]
}

/// Row reduction over `F_q[t⁻¹]` until the lowest-order coefficient vectors of
/// the two rows are independent.
pub fn factorize(g: &TransitionMatrix, f: Fq, window: i32) -> Result<Birkhoff, FqError> {
    g.unit_det(f)?;
    let mut m = g.clone();
    let mut left = TransitionMatrix::identity();
    loop {
        m.check_window(window)?;
        let lc = [lead_vector(&m, 0), lead_vector(&m, 1)];
        let cross = f.sub(f.mul(lc[0][0], lc[1][1]), f.mul(lc[0][1], lc[1][0]));
        if cross != 0 {
            break;
        }
        let lows = [row_low(&m, 0), row_low(&m, 1)];
        // reduce the row of smaller order against the other one
        let (i, j) = if lows[0] <= lows[1] { (0, 1) } else { (1, 0) };
        let k = if lc[j][0] != 0 { 0 } else { 1 };
        let lambda = f.div(lc[i][k], lc[j][k]);
        let mult = LPoly::monomial(lambda, lows[i] - lows[j]);
        for mat in [&mut m, &mut left] {
            let row_j = mat.e[j].clone();
            for (entry, pivot) in mat.e[i].iter_mut().zip(&row_j) {
                *entry = entry.sub(&pivot.mul(&mult, f), f);
            }
        }
    }
    let exps = [row_low(&m, 0), row_low(&m, 1)];
    let right = TransitionMatrix::diag(-exps[0], -exps[1]).mul(&m, f);
    debug_assert!(right.is_polynomial_in(1) && left.is_polynomial_in(-1));
    debug_assert_eq!(right.unit_det(f).map(|(_, k)| k), Ok(0));
    Ok(Birkhoff { left, exps, right })
}

/// The splitting gap `|a − b|` of `g ≃ diag(t^a, t^b)`.
pub fn splitting_type(g: &TransitionMatrix, f: Fq, window: i32) -> Result<u32, FqError> {
    Ok(factorize(g, f, window)?.gap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f = Fq::new(3).unwrap();
        assert_eq!(splitting_type(&TransitionMatrix::identity(), f, 8), Ok(0));
        assert_eq!(splitting_type(&TransitionMatrix::diag(1, 0), f, 8), Ok(1));
        let g = TransitionMatrix::new([
            [LPoly::monomial(1, 1), LPoly::constant(1)],
            [LPoly::zero(), LPoly::monomial(1, -1)],
        ]);
        assert_eq!(splitting_type(&g, f, 8), Ok(0));
        let bad = TransitionMatrix::new([
            [LPoly::from_coeffs(0, vec![1, 1]), LPoly::zero()],
            [LPoly::zero(), LPoly::constant(1)],
        ]);
        assert_eq!(splitting_type(&bad, f, 8), Err(FqError::NotABundle));
        assert!(matches!(
            splitting_type(&TransitionMatrix::diag(9, 0), f, 4),
            Err(FqError::WindowExceeded { .. })
        ));
    }

    #[test]
    fn factorization_reconstructs() {
        let f = Fq::new(5).unwrap();
        let g = TransitionMatrix::new([
            [LPoly::from_coeffs(-1, vec![1, 0, 1]), LPoly::monomial(1, 2)],
            [LPoly::constant(1), LPoly::monomial(1, 1)],
        ]);
        let b = factorize(&g, f, 10).unwrap();
        let lhs = b.left.mul(&g, f);
        let rhs = TransitionMatrix::diag(b.exps[0], b.exps[1]).mul(&b.right, f);
        assert_eq!(lhs, rhs);
    }
}
