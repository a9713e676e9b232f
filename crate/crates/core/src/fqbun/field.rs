use super::FqError;

/// The prime field `F_q`, for the supported primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    q: u32,
}

pub const SUPPORTED_Q: [u32; 3] = [2, 3, 5];

impl Fq {
    pub fn new(q: u32) -> Result<Self, FqError> {
        if SUPPORTED_Q.contains(&q) {
            Ok(Fq { q })
        } else {
            Err(FqError::UnsupportedQ(q))
        }
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn from_int(self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.q
    }

    pub fn pow(self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.q), "inverse of zero in F_{}", self.q);
        self.pow(a, self.q - 2)
    }

    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }
}

/// A point of `P¹(F_q)`, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    pub x: u32,
    pub y: u32,
}

impl ProjPoint {
    pub fn new(f: Fq, x: u32, y: u32) -> Option<ProjPoint> {
        let (x, y) = (x % f.q(), y % f.q());
        if x != 0 {
            let i = f.inv(x);
            Some(ProjPoint { x: 1, y: f.mul(y, i) })
        } else if y != 0 {
            Some(ProjPoint { x: 0, y: 1 })
        } else {
            None
        }
    }

    /// `[1:0]`
    pub fn top() -> ProjPoint {
        ProjPoint { x: 1, y: 0 }
    }

    /// `[0:1]`
    pub fn bottom() -> ProjPoint {
        ProjPoint { x: 0, y: 1 }
    }

    /// All `q+1` points: `[1:u]` for `u = 0..q`, then `[0:1]`.
    pub fn all(f: Fq) -> Vec<ProjPoint> {
        let mut v: Vec<ProjPoint> = f.elements().map(|u| ProjPoint { x: 1, y: u }).collect();
        v.push(ProjPoint::bottom());
        v
    }

    pub fn index(self, f: Fq) -> usize {
        if self.x == 1 {
            self.y as usize
        } else {
            f.q() as usize
        }
    }

    pub fn vector(self) -> [u32; 2] {
        [self.x, self.y]
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}:{}]", self.x, self.y)
    }
}
