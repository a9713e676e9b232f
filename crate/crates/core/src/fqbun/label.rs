use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::marked::{Marked, MarkedSet};

/// Orbit of a parabolic PGL(2)-bundle: splitting gap plus line configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitLabel {
    /// `c_d(R)`: for `d = 0`, `R` is the set of marked points whose lines
    /// coincide (empty, a pair, or all of S); for `d ≥ 1`, the lines lying in
    /// the top summand.
    Config { d: u32, set: MarkedSet },
    /// `c_1(*)`: the open orbit of the odd component.
    Generic,
}

impl OrbitLabel {
    pub fn c(d: u32, set: MarkedSet) -> OrbitLabel {
        OrbitLabel::Config { d, set }
    }

    pub fn gap(self) -> u32 {
        match self {
            OrbitLabel::Config { d, .. } => d,
            OrbitLabel::Generic => 1,
        }
    }

    pub fn set(self) -> Option<MarkedSet> {
        match self {
            OrbitLabel::Config { set, .. } => Some(set),
            OrbitLabel::Generic => None,
        }
    }

    pub fn is_valid(self) -> bool {
        match self {
            OrbitLabel::Config { d: 0, set } => set.len() != 1,
            _ => true,
        }
    }

    /// All labels at gap `d`: 5 at `d = 0`, 9 at `d = 1`, 8 beyond.
    pub fn all_at(d: u32) -> Vec<OrbitLabel> {
        let mut v: Vec<OrbitLabel> = MarkedSet::all()
            .into_iter()
            .map(|set| OrbitLabel::c(d, set))
            .filter(|l| l.is_valid())
            .collect();
        if d == 1 {
            v.insert(0, OrbitLabel::Generic);
        }
        v
    }

    /// Immediate specializations inside the same gap.
    pub fn covers(self) -> Vec<OrbitLabel> {
        match self {
            OrbitLabel::Generic => {
                let mut v = vec![OrbitLabel::c(1, MarkedSet::EMPTY)];
                v.extend(MarkedSet::all().into_iter().filter(|s| s.len() == 1).map(|s| OrbitLabel::c(1, s)));
                v
            }
            OrbitLabel::Config { d: 0, set } => match set.len() {
                0 => MarkedSet::all().into_iter().filter(|s| s.len() == 2).map(|s| OrbitLabel::c(0, s)).collect(),
                2 => vec![OrbitLabel::c(0, MarkedSet::FULL)],
                _ => vec![],
            },
            OrbitLabel::Config { d: 1, set } if set.is_empty() => MarkedSet::all()
                .into_iter()
                .filter(|s| s.len() == 2)
                .map(|s| OrbitLabel::c(1, s))
                .collect(),
            OrbitLabel::Config { d, set } => set
                .complement()
                .iter()
                .map(|p| OrbitLabel::c(d, set.insert(p)))
                .collect(),
        }
    }

    /// Every label in the closure of this one, restricted to the same gap.
    pub fn closure(self) -> Vec<OrbitLabel> {
        let mut seen = vec![self];
        let mut i = 0;
        while i < seen.len() {
            for c in seen[i].covers() {
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            i += 1;
        }
        seen.sort();
        seen
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Config { d, set } => write!(f, "c_{d}({set})"),
            OrbitLabel::Generic => write!(f, "c_1(*)"),
        }
    }
}

impl FromStr for OrbitLabel {
    type Err = String;

    /// Accepts `c_1(*)`, `c_0(∅)`, `c_2(0,∞)`, `c_1(S)`; `inf` and `empty` are
    /// ASCII spellings.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("not an orbit label: {s}");
        let rest = s.trim().strip_prefix("c_").ok_or_else(bad)?;
        let (d, inner) = rest.split_once('(').ok_or_else(bad)?;
        let inner = inner.strip_suffix(')').ok_or_else(bad)?.trim();
        let d: u32 = d.trim().parse().map_err(|_| bad())?;
        let label = match inner {
            "*" if d == 1 => OrbitLabel::Generic,
            "S" => OrbitLabel::c(d, MarkedSet::FULL),
            "∅" | "empty" | "" => OrbitLabel::c(d, MarkedSet::EMPTY),
            list => {
                let mut set = MarkedSet::EMPTY;
                for p in list.split(',') {
                    set = set.insert(match p.trim() {
                        "0" => Marked::Zero,
                        "1" => Marked::One,
                        "∞" | "inf" => Marked::Inf,
                        _ => return Err(bad()),
                    });
                }
                OrbitLabel::c(d, set)
            }
        };
        if label.is_valid() {
            Ok(label)
        } else {
            Err(format!("no such orbit: {s}"))
        }
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
