use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    #[serde(rename = "degrevlex")]
    DegRevLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::DegRevLex => write!(f, "degrevlex"),
        }
    }
}

impl std::str::FromStr for OrderKind {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "degrevlex" | "grevlex" | "drl" => Ok(OrderKind::DegRevLex),
            other => Err(PolyError::Parse(format!("unknown monomial order `{other}`"))),
        }
    }
}

/// An admissible monomial order.
///
/// `precedence[0]` is the index of the greatest variable, `precedence[1]` the
/// next one and so on. Janet division reads the same precedence to decide
/// which variable is `x_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Order with `x_0 > x_1 > ... > x_{n-1}`.
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::new(OrderKind::DegRevLex, nvars)
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self, PolyError> {
        let n = precedence.len();
        let mut seen = vec![false; n];
        for &i in &precedence {
            if i >= n || seen[i] {
                return Err(PolyError::InvalidOrder(format!(
                    "precedence {precedence:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    /// Same precedence, different kind.
    pub fn with_kind(&self, kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            precedence: self.precedence.clone(),
        }
    }

    /// Checked comparison.
    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Result<Ordering, PolyError> {
        if u.nvars() != self.nvars() || v.nvars() != self.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars(),
                found: if u.nvars() != self.nvars() { u.nvars() } else { v.nvars() },
            });
        }
        Ok(self.cmp(u, v))
    }

    /// Unchecked comparison; both monomials must live in this order's ring.
    #[inline]
    pub fn cmp(&self, u: &Monomial, v: &Monomial) -> Ordering {
        let (a, b) = (u.exponents(), v.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.precedence {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match u.degree().cmp(&v.degree()) {
                    Ordering::Equal => {}
                    other => return other,
                }
                for &i in self.precedence.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        // smaller power of the last variable wins
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}
