use crate::marked::{Marked, MarkedSet};

use super::birkhoff::factorize;
use super::field::{Fq, ProjPoint};
use super::label::OrbitLabel;
use super::lpoly::LPoly;
use super::matrix::{apply, inverse_const, TransitionMatrix};
use super::FqError;

/// A parabolic bundle in normal form: `𝒪(d) ⊕ 𝒪` glued by `diag(t^{−d}, 1)`,
/// with lines at `0, 1, ∞` in that frame. The top summand's fiber is `[1:0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParabolicPoint {
    pub d: u32,
    pub lines: [ProjPoint; 3],
}

/// A parabolic bundle in an arbitrary presentation. Lines at finite points are
/// in the frame over `P¹∖{∞}`, the line at `∞` in the frame over `P¹∖{0}`.
#[derive(Clone, Debug)]
pub struct Presented {
    pub g: TransitionMatrix,
    pub lines: [[u32; 2]; 3],
}

/// Where a lower modification happens.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Marked(Marked),
    /// An unramified point `x ∈ F_q ∖ {0, 1}`.
    Unramified(u32),
}

impl Site {
    fn finite(self) -> Option<u32> {
        match self {
            Site::Marked(Marked::Zero) => Some(0),
            Site::Marked(Marked::One) => Some(1),
            Site::Marked(Marked::Inf) => None,
            Site::Unramified(x) => Some(x),
        }
    }
}

fn marked_coord(s: Marked) -> Option<u32> {
    Site::Marked(s).finite()
}

/// A vector completing `v` to a basis.
fn complement(v: [u32; 2]) -> [u32; 2] {
    if v[0] != 0 {
        [0, 1]
    } else {
        [1, 0]
    }
}

fn columns(v: [u32; 2], w: [u32; 2]) -> [[u32; 2]; 2] {
    [[v[0], w[0]], [v[1], w[1]]]
}

fn proj(v: [u32; 2], f: Fq) -> ProjPoint {
    ProjPoint::new(f, v[0], v[1]).expect("zero vector is not a line")
}

impl ParabolicPoint {
    pub fn new(d: u32, lines: [ProjPoint; 3]) -> Self {
        ParabolicPoint { d, lines }
    }

    pub fn line(&self, s: Marked) -> ProjPoint {
        self.lines[s.index()]
    }

    pub fn presented(&self) -> Presented {
        Presented {
            g: TransitionMatrix::diag(-(self.d as i32), 0),
            lines: self.lines.map(ProjPoint::vector),
        }
    }

    /// The orbit of this point.
    pub fn classify(&self, f: Fq) -> OrbitLabel {
        let l = self.lines;
        if self.d == 0 {
            let mut set = MarkedSet::EMPTY;
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                if l[i] == l[j] {
                    set = set.insert(Marked::ALL[i]).insert(Marked::ALL[j]);
                }
            }
            return OrbitLabel::c(0, set);
        }
        let set = MarkedSet::of(
            &Marked::ALL.into_iter().filter(|s| self.line(*s) == ProjPoint::top()).collect::<Vec<_>>(),
        );
        if self.d == 1 && set.is_empty() {
            // lines [u_s : 1]; a section (α + βt, 1) passes through them iff u_1 − u_0 = u_∞
            let u = l.map(|p| f.div(p.x, p.y));
            if f.sub(u[1], u[0]) != u[2] {
                return OrbitLabel::Generic;
            }
        }
        OrbitLabel::c(self.d, set)
    }

    /// A fixed point of the given orbit.
    pub fn representative(label: OrbitLabel) -> ParabolicPoint {
        let (top, bot) = (ProjPoint::top(), ProjPoint::bottom());
        match label {
            OrbitLabel::Generic => ParabolicPoint::new(1, [bot, bot, ProjPoint { x: 1, y: 1 }]),
            OrbitLabel::Config { d: 0, set } => {
                let mut lines = [top, bot, ProjPoint { x: 1, y: 1 }];
                if set.len() >= 2 {
                    let m: Vec<Marked> = set.iter().collect();
                    let first = lines[m[0].index()];
                    for s in m {
                        lines[s.index()] = first;
                    }
                }
                ParabolicPoint::new(0, lines)
            }
            OrbitLabel::Config { d, set } => {
                ParabolicPoint::new(d, Marked::ALL.map(|s| if set.contains(s) { top } else { bot }))
            }
        }
    }

    /// Lower modification along `ℓ` at `site`, renormalized. At a marked point
    /// the new line there is the image of `𝓔(−site)`.
    pub fn lower_modification(&self, site: Site, ell: ProjPoint, f: Fq, window: i32) -> Result<ParabolicPoint, FqError> {
        self.presented().lower_modification(site, ell.vector(), f)?.normalize(f, window)
    }

    /// Hecke modification at an unramified point.
    pub fn hecke(&self, x: u32, ell: ProjPoint, f: Fq, window: i32) -> Result<ParabolicPoint, FqError> {
        if x == 0 || x == 1 {
            return Err(FqError::RamifiedPoint(x));
        }
        self.lower_modification(Site::Unramified(x % f.q()), ell, f, window)
    }

    /// The Atkin–Lehner modification at a marked point.
    pub fn atkin_lehner(&self, r: Marked, f: Fq, window: i32) -> Result<ParabolicPoint, FqError> {
        self.lower_modification(Site::Marked(r), self.line(r), f, window)
    }
}

impl Presented {
    /// Kernel of `𝓔 → 𝓔_x/ℓ`, with `ℓ` given in the chart frame at `x`.
    pub fn lower_modification(&self, site: Site, ell: [u32; 2], f: Fq) -> Result<Presented, FqError> {
        self.g.unit_det(f)?;
        let mut lines = self.lines;
        let new_line = [0, 1];
        let g = match site.finite() {
            None => {
                let c_inf = columns(ell, complement(ell));
                lines[2] = new_line;
                TransitionMatrix::diag(0, 1).mul(&TransitionMatrix::constant(inverse_const(c_inf, f)), f).mul(&self.g, f)
            }
            Some(x) => {
                let c0 = columns(ell, complement(ell));
                let c0_inv = inverse_const(c0, f);
                let c0_m = TransitionMatrix::constant(c0);
                for s in [Marked::Zero, Marked::One] {
                    let sx = marked_coord(s).unwrap();
                    lines[s.index()] = if sx == x {
                        new_line
                    } else {
                        let v = apply(c0_inv, lines[s.index()], f);
                        [v[0], f.div(v[1], f.sub(sx, x))]
                    };
                }
                if x == 0 {
                    self.g.mul(&c0_m, f).mul(&TransitionMatrix::diag(0, 1), f)
                } else {
                    let gx = self.g.eval(x, f);
                    let top = apply(gx, ell, f);
                    let c_inf = columns(top, complement(top));
                    let ci = inverse_const(c_inf, f);
                    lines[2] = apply(ci, lines[2], f);
                    let m = TransitionMatrix::constant(ci).mul(&self.g, f).mul(&c0_m, f);
                    let lin = LPoly::from_coeffs(0, vec![f.neg(x), 1]);
                    let t = LPoly::monomial(1, 1);
                    let m21 = m.e[1][0].div_linear(x, f).expect("line condition forces divisibility");
                    TransitionMatrix::new([
                        [m.e[0][0].clone(), m.e[0][1].mul(&lin, f)],
                        [m21.mul(&t, f), m.e[1][1].mul(&t, f)],
                    ])
                }
            }
        };
        Ok(Presented { g, lines })
    }

    /// Bring to normal form `𝒪(d) ⊕ 𝒪` via Birkhoff factorization.
    pub fn normalize(&self, f: Fq, window: i32) -> Result<ParabolicPoint, FqError> {
        let b = factorize(&self.g, f, window)?;
        let r0 = b.right.eval(0, f);
        let r1 = b.right.eval(1, f);
        let li = b.left.eval_infinity();
        let mut lines = [apply(r0, self.lines[0], f), apply(r1, self.lines[1], f), apply(li, self.lines[2], f)];
        // diag(t^m0, t^m1) presents 𝒪(−m0) ⊕ 𝒪(−m1); the larger summand goes on top
        let [m0, m1] = b.exps;
        if m0 > m1 {
            for l in &mut lines {
                l.swap(0, 1);
            }
        }
        Ok(ParabolicPoint::new(b.gap(), lines.map(|v| proj(v, f))))
    }
}
