use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{BaseField, Field, Names, Ring};

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Ring for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: ()) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: ()) -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(_: (), v: i64) -> Self {
        Rational::integer(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn add_assign(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }

    fn render(&self, _: Names<'_>) -> String {
        self.0.to_string()
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
}

impl BaseField for Rational {
    fn characteristic(_: ()) -> u64 {
        0
    }

    fn normalizing_unit<'a, I>(coeffs: I, leading: &Self) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        // content = gcd(numerators) / lcm(denominators)
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one(());
        }
        let content = BigRational::new(num_gcd, den_lcm);
        if leading.0.is_negative() {
            Rational(-content)
        } else {
            Rational(content)
        }
    }

    fn denominator_lcm<'a, I>(_: (), coeffs: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        let mut l = BigInt::one();
        for c in coeffs {
            l = l.lcm(c.denom());
        }
        Rational::integer(l)
    }

    fn modular_image(&self, q: u64) -> Option<u64> {
        let qb = BigInt::from(q);
        let n = self.numer().mod_floor(&qb).to_u64()?;
        let d = self.denom().mod_floor(&qb).to_u64()?;
        if d == 0 {
            return None;
        }
        let dinv = super::modular::inv_mod(d, q)?;
        Some(super::modular::mul_mod(n, dinv, q))
    }

    fn from_ratio(_: (), num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }

    fn is_negative(&self) -> bool {
        self.0.numer().sign() == Sign::Minus
    }
}
