use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::Exponent;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Graded lexicographic.
    Glex,
    /// Graded reverse lexicographic.
    Grevlex,
    /// Pure lexicographic.
    Lex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Glex => "glex",
            OrderKind::Grevlex => "grevlex",
            OrderKind::Lex => "lex",
        }
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "glex" | "grlex" | "deglex" => Ok(OrderKind::Glex),
            "grevlex" | "degrevlex" => Ok(OrderKind::Grevlex),
            "lex" | "plex" => Ok(OrderKind::Lex),
            other => Err(Error::Invalid(format!("unknown monomial order `{}`", other))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial order on `Z_{≥0}^n`, also used as the term order on the
/// injective hull: `1/x^{α+1} ≺ 1/x^{β+1}` iff `x^α ≺ x^β`.
///
/// `precedence[0]` is the most significant variable, so `glex` with
/// precedence `[x, y, z]` is the order with `z ≺ y ≺ x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    /// Order of the given kind where variable 0 is the most significant.
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, precedence: (0..nvars).collect() }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= precedence.len() || seen[v] {
                return Err(Error::Invalid(format!(
                    "variable precedence {:?} is not a permutation",
                    precedence
                )));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn glex(nvars: usize) -> Self {
        Self::new(OrderKind::Glex, nvars)
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    /// Compares two exponents, checking that both live in the ambient ring.
    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Result<Ordering> {
        for e in [a, b] {
            if e.len() != self.nvars() {
                return Err(Error::LengthMismatch { expected: self.nvars(), found: e.len() });
            }
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison; both exponents must have `nvars()` entries.
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.cmp_lex(a, b),
            OrderKind::Glex => a.degree().cmp(&b.degree()).then_with(|| self.cmp_lex(a, b)),
            OrderKind::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.precedence.iter().rev() {
                    match a.get(v).cmp(&b.get(v)) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn cmp_lex(&self, a: &Exponent, b: &Exponent) -> Ordering {
        for &v in &self.precedence {
            match a.get(v).cmp(&b.get(v)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// Sorts exponents ascending.
    pub fn sort(&self, items: &mut [Exponent]) {
        items.sort_by(|a, b| self.cmp(a, b));
    }

    pub fn max<'a>(&self, items: impl IntoIterator<Item = &'a Exponent>) -> Option<&'a Exponent> {
        items.into_iter().max_by(|a, b| self.cmp(a, b))
    }

    pub fn min<'a>(&self, items: impl IntoIterator<Item = &'a Exponent>) -> Option<&'a Exponent> {
        items.into_iter().min_by(|a, b| self.cmp(a, b))
    }
}
