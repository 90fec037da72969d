use std::fmt;

use super::gcd::gcd;
use super::ring::{BaseField, Field, Names, Ring};
use super::{PolyCtx, SparsePoly};
use crate::error::{Error, Result};

/// Element of `K(t_1, …, t_r)`.
///
/// Always stored in lowest terms with a canonical denominator: over `Q`
/// numerator and denominator have integer coefficients without a common
/// factor and the denominator has positive leading coefficient; over `F_p`
/// the denominator is monic. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<B: BaseField> {
    num: SparsePoly<B>,
    den: SparsePoly<B>,
}

impl<B: BaseField> RatFunc<B> {
    pub fn from_poly(p: SparsePoly<B>) -> Self {
        let den = SparsePoly::one(p.poly_ctx());
        Self::new(p, den).expect("unit denominator")
    }

    /// `num / den` in lowest terms; fails on a zero denominator.
    pub fn new(num: SparsePoly<B>, den: SparsePoly<B>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let ctx = num.poly_ctx();
        if num.is_zero() {
            return Some(RatFunc { num, den: SparsePoly::one(ctx) });
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let u = den.normalizing_unit();
        if !u.is_one() {
            num = num.div_scalar(&u);
            den = den.div_scalar(&u);
        }
        let w = B::denominator_lcm(ctx.coeff, num.terms().iter().map(|(_, c)| c));
        if !w.is_one() {
            num = num.scale(&w);
            den = den.scale(&w);
        }
        Some(RatFunc { num, den })
    }

    pub fn numer(&self) -> &SparsePoly<B> {
        &self.num
    }

    pub fn denom(&self) -> &SparsePoly<B> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Evaluates at a point of the base field.
    pub fn eval(&self, point: &[B]) -> Result<B> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes { coefficient: self.to_string() });
        }
        Ok(self.num.eval(point).div(&d).expect("nonzero"))
    }
}

impl<B: BaseField> Ring for RatFunc<B> {
    type Ctx = PolyCtx<B::Ctx>;

    fn ctx(&self) -> Self::Ctx {
        self.num.poly_ctx()
    }

    fn zero(ctx: Self::Ctx) -> Self {
        RatFunc { num: SparsePoly::new(ctx), den: SparsePoly::one(ctx) }
    }

    fn one(ctx: Self::Ctx) -> Self {
        RatFunc { num: SparsePoly::one(ctx), den: SparsePoly::one(ctx) }
    }

    fn from_i64(ctx: Self::Ctx, v: i64) -> Self {
        Self::from_poly(SparsePoly::from_i64(ctx, v))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone()).expect("nonzero");
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::new(num, self.den.mul(&rhs.den)).expect("nonzero")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.ctx());
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).expect("nonzero")
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn render(&self, names: Names<'_>) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        let n = self.num.render(names);
        let d = self.den.render(names);
        let n = if self.num.needs_parens() { format!("({})", n) } else { n };
        let (e, c) = &self.den.terms()[0];
        let simple = self.den.len() == 1 && (e.is_zero() || (c.is_one() && e.support().count() == 1));
        let d = if simple { d } else { format!("({})", d) };
        format!("{}/{}", n, d)
    }

    // a/b*x parses as (a/b)*x, so only a bare sum needs parentheses
    fn needs_parens(&self) -> bool {
        self.den.is_one() && self.num.needs_parens()
    }
}

impl<B: BaseField> Field for RatFunc<B> {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl<B: BaseField> fmt::Debug for RatFunc<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl<B: BaseField> fmt::Display for RatFunc<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Exponent, Rational};
    use proptest::prelude::*;

    type P = SparsePoly<Rational>;
    type R = RatFunc<Rational>;

    fn ctx() -> PolyCtx<()> {
        PolyCtx::new(2, ())
    }

    fn poly(coeffs: &[(i64, [u32; 2])]) -> P {
        P::from_terms(ctx(), coeffs.iter().map(|(c, e)| (Exponent::from(*e), Rational::integer(*c))))
    }

    #[test]
    fn lowest_terms() {
        let a = P::var(ctx(), 0);
        let b = P::var(ctx(), 1);
        let f = R::new(a.mul(&b).scale(&Rational::integer(2)), a.scale(&Rational::integer(-4))).unwrap();
        assert_eq!(f.numer(), &b.neg());
        assert_eq!(f.denom(), &P::from_i64(ctx(), 2));
        assert_eq!(f.render(&[vec!["a".into(), "b".into()]]), "-b/2");
    }

    #[test]
    fn eval_vanishing_denominator() {
        let a = P::var(ctx(), 0);
        let f = R::new(P::one(ctx()), a).unwrap();
        assert!(matches!(
            f.eval(&[Rational::integer(0), Rational::integer(1)]),
            Err(Error::DenominatorVanishes { .. })
        ));
        assert_eq!(f.eval(&[Rational::integer(2), Rational::integer(1)]).unwrap(), Rational::new(1, 2));
    }

    fn small_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec((-3i64..4, 0u32..3, 0u32..3), 1..4)
            .prop_map(|ts| poly(&ts.iter().map(|&(c, i, j)| (c, [i, j])).collect::<Vec<_>>()))
    }

    fn nonzero_poly() -> impl Strategy<Value = P> {
        small_poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn addition_is_representation_independent(
            a in small_poly(), b in nonzero_poly(), c in small_poly(), d in nonzero_poly(), k in nonzero_poly()
        ) {
            let x = R::new(a.clone(), b.clone()).unwrap();
            let y = R::new(c.clone(), d.clone()).unwrap();
            let expect = R::new(a.mul(&d).add(&c.mul(&b)), b.mul(&d)).unwrap();
            prop_assert_eq!(x.add(&y), expect);
            // scaling numerator and denominator by the same factor changes nothing
            let x2 = R::new(a.mul(&k), b.mul(&k)).unwrap();
            prop_assert_eq!(x2, x.clone());
            if !x.is_zero() {
                prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }
    }
}
