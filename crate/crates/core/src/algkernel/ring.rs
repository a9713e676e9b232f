use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::AlgError;

/// Exponent vector of a monomial, one entry per ring variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Exponent of the first variable decides, ties broken by grevlex on the rest.
    /// An elimination order for the first variable.
    EliminateFirst,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::EliminateFirst => match (a.first(), b.first()) {
                (Some(x), Some(y)) => x
                    .cmp(y)
                    .then_with(|| MonomialOrder::Grevlex.cmp(&a[1..], &b[1..])),
                _ => Ordering::Equal,
            },
            MonomialOrder::Grevlex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    // smaller exponent in the last differing variable wins
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// A polynomial ring over the rationals: ordered variable names plus a monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Arc<Self>, AlgError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgError::InvalidVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(AlgError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { vars, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Same variables, different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { vars: self.vars.clone(), order })
    }

    /// A fresh variable name not used by this ring, preferring `t`.
    pub fn fresh_var(&self) -> String {
        let mut name = String::from("t");
        while self.vars.contains(&name) {
            name.push('_');
        }
        name
    }

    /// Ring with one fresh auxiliary variable placed first, under an order that
    /// eliminates it.
    pub fn with_aux_first(&self) -> Arc<Self> {
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push(self.fresh_var());
        vars.extend(self.vars.iter().cloned());
        Arc::new(PolyRing { vars, order: MonomialOrder::EliminateFirst })
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}] ({:?})", self.vars.join(","), self.order)
    }
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}
