//! The three marked points of P¹.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Marked {
    Zero,
    One,
    Inf,
}

impl Marked {
    pub const ALL: [Marked; 3] = [Marked::Zero, Marked::One, Marked::Inf];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Marked> {
        Marked::ALL.get(i).copied()
    }

    pub fn bit(self) -> u8 {
        1 << self.index()
    }
}

impl fmt::Display for Marked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Marked::Zero => "0",
            Marked::One => "1",
            Marked::Inf => "∞",
        })
    }
}

/// A subset of `{0, 1, ∞}`, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MarkedSet(u8);

impl MarkedSet {
    pub const EMPTY: MarkedSet = MarkedSet(0);
    pub const FULL: MarkedSet = MarkedSet(0b111);

    pub fn from_bits(bits: u8) -> MarkedSet {
        MarkedSet(bits & 0b111)
    }

    pub fn of(points: &[Marked]) -> MarkedSet {
        MarkedSet(points.iter().fold(0, |acc, p| acc | p.bit()))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, p: Marked) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: MarkedSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(self, p: Marked) -> MarkedSet {
        MarkedSet(self.0 | p.bit())
    }

    pub fn remove(self, p: Marked) -> MarkedSet {
        MarkedSet(self.0 & !p.bit())
    }

    pub fn complement(self) -> MarkedSet {
        MarkedSet(!self.0 & 0b111)
    }

    pub fn iter(self) -> impl Iterator<Item = Marked> {
        Marked::ALL.into_iter().filter(move |p| self.contains(*p))
    }

    /// All eight subsets, ordered by size and then by member order.
    pub fn all() -> Vec<MarkedSet> {
        let mut v: Vec<MarkedSet> = (0..8).map(MarkedSet).collect();
        v.sort_by_key(|s| (s.len(), s.iter().map(|p| p.index()).collect::<Vec<_>>()));
        v
    }
}

impl fmt::Display for MarkedSet {
    /// `∅`, `S`, or the members joined by commas (`0,∞`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.len() {
            0 => f.write_str("∅"),
            3 => f.write_str("S"),
            _ => {
                let parts: Vec<String> = self.iter().map(|p| p.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_print_and_order() {
        let names: Vec<String> = MarkedSet::all().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["∅", "0", "1", "∞", "0,1", "0,∞", "1,∞", "S"]);
        let s = MarkedSet::of(&[Marked::Inf, Marked::Zero]);
        assert_eq!(s.complement(), MarkedSet::of(&[Marked::One]));
        assert!(s.is_subset(MarkedSet::FULL));
    }
}
