use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use super::ring::{BaseField, Names, Ring};
use super::SparsePoly;
use crate::error::{Error, Result};

/// A power series given by a truncation oracle.
///
/// Either a polynomial, or the expansion of `num / den` where `den` has an
/// invertible constant term. Homogeneous components of the expansion are
/// produced lazily and cached.
pub enum SeriesOracle<B: BaseField> {
    Polynomial(SparsePoly<B>),
    Rational {
        num: SparsePoly<B>,
        den: SparsePoly<B>,
        components: Mutex<Vec<SparsePoly<B>>>,
    },
}

impl<B: BaseField> SeriesOracle<B> {
    pub fn polynomial(p: SparsePoly<B>) -> Self {
        SeriesOracle::Polynomial(p)
    }

    /// The expansion of `num / den`. A constant denominator gives a
    /// polynomial oracle.
    pub fn rational(num: SparsePoly<B>, den: SparsePoly<B>) -> Result<Self> {
        let c0 = den.constant_coeff();
        let c0_inv = c0.inv().ok_or(Error::NonInvertibleDenominator)?;
        if den.is_constant() {
            return Ok(SeriesOracle::Polynomial(num.scale(&c0_inv)));
        }
        if num.is_zero() {
            return Ok(SeriesOracle::Polynomial(num));
        }
        Ok(SeriesOracle::Rational { num, den, components: Mutex::new(Vec::new()) })
    }

    pub fn nvars(&self) -> usize {
        match self {
            SeriesOracle::Polynomial(p) => p.nvars(),
            SeriesOracle::Rational { num, .. } => num.nvars(),
        }
    }

    pub fn as_polynomial(&self) -> Option<&SparsePoly<B>> {
        match self {
            SeriesOracle::Polynomial(p) => Some(p),
            SeriesOracle::Rational { .. } => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_polynomial().is_some()
    }

    /// Sum of all terms of total degree at most `degree`.
    pub fn truncate(&self, degree: u64) -> SparsePoly<B> {
        match self {
            SeriesOracle::Polynomial(p) => p.truncate(degree),
            SeriesOracle::Rational { num, den, components } => {
                let mut comps = components.lock().unwrap_or_else(|e| e.into_inner());
                let c0_inv = den.constant_coeff().inv().expect("checked at construction");
                while comps.len() as u64 <= degree {
                    let k = comps.len() as u64;
                    // s_k = (p_k - sum_{j>=1} q_j s_{k-j}) / q_0
                    let mut acc = num.homogeneous_part(k);
                    for j in 1..=k {
                        let qj = den.homogeneous_part(j);
                        if !qj.is_zero() {
                            acc = acc.sub(&qj.mul(&comps[(k - j) as usize]));
                        }
                    }
                    comps.push(acc.scale(&c0_inv));
                }
                let mut out = SparsePoly::new(num.poly_ctx());
                for c in comps.iter().take(degree as usize + 1) {
                    out = out.add(c);
                }
                out
            }
        }
    }

    pub fn render(&self, names: Names<'_>) -> String {
        match self {
            SeriesOracle::Polynomial(p) => p.render(names),
            SeriesOracle::Rational { num, den, .. } => {
                let n = num.render(names);
                let n = if num.needs_parens() { format!("({})", n) } else { n };
                format!("{}/({})", n, den.render(names))
            }
        }
    }
}

impl<B: BaseField> Clone for SeriesOracle<B> {
    fn clone(&self) -> Self {
        match self {
            SeriesOracle::Polynomial(p) => SeriesOracle::Polynomial(p.clone()),
            SeriesOracle::Rational { num, den, components } => SeriesOracle::Rational {
                num: num.clone(),
                den: den.clone(),
                components: Mutex::new(components.lock().unwrap_or_else(|e| e.into_inner()).clone()),
            },
        }
    }
}

impl<B: BaseField> PartialEq for SeriesOracle<B> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SeriesOracle::Polynomial(a), SeriesOracle::Polynomial(b)) => a == b,
            (SeriesOracle::Rational { num: a, den: b, .. }, SeriesOracle::Rational { num: c, den: d, .. }) => {
                a.mul(d) == c.mul(b)
            }
            _ => false,
        }
    }
}

impl<B: BaseField> Eq for SeriesOracle<B> {}

impl<B: BaseField> Hash for SeriesOracle<B> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            SeriesOracle::Polynomial(p) => {
                0u8.hash(state);
                p.hash(state);
            }
            SeriesOracle::Rational { num, den, .. } => {
                1u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
        }
    }
}

impl<B: BaseField> fmt::Debug for SeriesOracle<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Exponent, PolyCtx, Rational};
    use proptest::prelude::*;

    type P = SparsePoly<Rational>;

    fn ctx(n: usize) -> PolyCtx<()> {
        PolyCtx::new(n, ())
    }

    fn names() -> Vec<Vec<String>> {
        vec![vec!["x".into(), "y".into()]]
    }

    #[test]
    fn geometric_series() {
        let one = P::one(ctx(1));
        let x = P::var(ctx(1), 0);
        let s = SeriesOracle::rational(one.clone(), one.sub(&x)).unwrap();
        let t = s.truncate(3);
        let expect = P::from_terms(ctx(1), (0..4).map(|k| (Exponent::from([k]), Rational::integer(1))));
        assert_eq!(t, expect);
    }

    #[test]
    fn shifted_expansion() {
        let x = P::var(ctx(2), 0);
        let y = P::var(ctx(2), 1);
        let s = SeriesOracle::rational(x.clone(), P::one(ctx(2)).add(&y)).unwrap();
        assert_eq!(s.truncate(2).render(&names()), "-x*y + x");
        assert_eq!(s.truncate(2), x.sub(&x.mul(&y)));
    }

    #[test]
    fn polynomial_oracle() {
        let x = P::var(ctx(2), 0);
        let y = P::var(ctx(2), 1);
        let p = x.mul(&x).add(&y);
        let s = SeriesOracle::polynomial(p.clone());
        assert_eq!(s.truncate(2), p);
        assert_eq!(s.truncate(7), p);
    }

    #[test]
    fn non_invertible_denominator() {
        let x = P::var(ctx(1), 0);
        assert_eq!(SeriesOracle::rational(P::one(ctx(1)), x).unwrap_err(), Error::NonInvertibleDenominator);
    }

    proptest! {
        #[test]
        fn truncations_are_consistent(
            num in proptest::collection::vec((-3i64..4, 0u32..3, 0u32..3), 1..4),
            den in proptest::collection::vec((-3i64..4, 0u32..3, 0u32..3), 0..3),
            c0 in 1i64..4,
            d in 0u64..5,
            extra in 0u64..4,
        ) {
            let mk = |ts: &[(i64, u32, u32)]| P::from_terms(ctx(2), ts.iter().map(|&(c, i, j)| (Exponent::from([i, j]), Rational::integer(c))));
            let den = mk(&den).truncate(3).sub(&mk(&den).truncate(0)).add(&P::from_i64(ctx(2), c0));
            let s = SeriesOracle::rational(mk(&num), den.clone()).unwrap();
            let hi = s.truncate(d + extra);
            prop_assert_eq!(hi.truncate(d), s.truncate(d));
            // den * expansion agrees with num up to degree d
            prop_assert_eq!(den.mul(&s.truncate(d)).truncate(d), mk(&num).truncate(d));
        }
    }
}
