use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector `α ∈ Z_{≥0}^n`.
///
/// The same type indexes monomials `x^α` of a polynomial and the dual terms
/// `1/x^{α+1}` of the injective hull.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Exponent(SmallVec<[u32; 6]>);

impl Exponent {
    pub fn new(entries: impl IntoIterator<Item = u32>) -> Self {
        Exponent(entries.into_iter().collect())
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(SmallVec::from_elem(0, nvars))
    }

    /// The exponent of the single variable `x_var` raised to `power`.
    pub fn unit(nvars: usize, var: usize, power: u32) -> Self {
        let mut e = Self::zero(nvars);
        e.0[var] = power;
        e
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: u32) {
        self.0[i] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// Total degree `|α|`.
    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Support `{i | α_i > 0}`.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, _)| i)
    }

    /// Index of the single variable when `α` is a pure power `x_i^k`, `k > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &a) in self.0.iter().enumerate() {
            if a > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.len(), other.len());
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when every entry stays non-negative.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = SmallVec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Exponent(out))
    }

    /// Componentwise `self ≤ other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn max(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn min(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    /// `α + e_var`.
    pub fn incremented(&self, var: usize) -> Exponent {
        let mut e = self.clone();
        e.0[var] += 1;
        e
    }

    /// `α - e_var`, if `α_var > 0`.
    pub fn decremented(&self, var: usize) -> Option<Exponent> {
        if self.0[var] == 0 {
            return None;
        }
        let mut e = self.clone();
        e.0[var] -= 1;
        Some(e)
    }

    /// Graded lexicographic comparison with variable 0 most significant.
    ///
    /// This is the storage order of every sparse container in the crate.
    pub fn cmp_grlex(&self, other: &Exponent) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }

    /// Renders `x^α` with the given variable names; `1` for the zero exponent.
    pub fn render_monomial(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("v{}", i + 1));
                if a == 1 {
                    name
                } else {
                    format!("{}^{}", name, a)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(SmallVec::from_vec(v))
    }
}

impl From<&[u32]> for Exponent {
    fn from(v: &[u32]) -> Self {
        Exponent(SmallVec::from_slice(v))
    }
}

impl<const N: usize> From<[u32; N]> for Exponent {
    fn from(v: [u32; N]) -> Self {
        Exponent(v.iter().copied().collect())
    }
}
