use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;

/// Variable names for nested polynomial rings: level 0 names the outermost
/// variables, level 1 the variables of the coefficient ring, and so on.
pub type Names<'a> = &'a [Vec<String>];

/// Commutative ring with a runtime context.
///
/// The context carries whatever an element needs to be created from nothing
/// (the modulus of a prime field, the variable count of a polynomial ring).
pub trait Ring: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    type Ctx: Copy + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_i64(ctx: Self::Ctx, v: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn is_minus_one(&self) -> bool {
        self.neg().is_one()
    }

    /// Human readable form; parses back with the expression grammar.
    fn render(&self, names: Names<'_>) -> String;

    /// Whether `render` must be parenthesised when used as a factor.
    fn needs_parens(&self) -> bool {
        false
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Base coefficient fields: the rationals and prime fields.
pub trait BaseField: Field + Ord {
    fn characteristic(ctx: Self::Ctx) -> u64;

    /// The unit `u` such that dividing a polynomial with these coefficients
    /// by `u` gives its canonical associate: primitive integer coefficients
    /// with positive leading coefficient over `Q`, monic over `F_p`.
    fn normalizing_unit<'a, I>(coeffs: I, leading: &Self) -> Self
    where
        I: Iterator<Item = &'a Self>;

    /// Least common multiple of the denominators (one over `F_p`).
    fn denominator_lcm<'a, I>(ctx: Self::Ctx, coeffs: I) -> Self
    where
        I: Iterator<Item = &'a Self>;

    /// Image under `Z_(q) -> F_q`, `None` when a denominator is divisible by `q`.
    fn modular_image(&self, q: u64) -> Option<u64>;

    /// `num / den` in the field, `None` when `den` is not invertible.
    fn from_ratio(ctx: Self::Ctx, num: &BigInt, den: &BigInt) -> Option<Self>;

    fn is_negative(&self) -> bool {
        false
    }
}
