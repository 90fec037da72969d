//! Scalars, exponents, monomial orders, polynomials and series.

mod exponent;
pub mod expr;
mod gcd;
pub mod modular;
mod order;
mod poly;
mod ratfunc;
mod rational;
mod ring;
mod series;

pub use exponent::Exponent;
pub use gcd::{gcd, lcm, pseudo_remainder};
pub use modular::Fp;
pub use order::{MonomialOrder, OrderKind};
pub use poly::{PolyCtx, SparsePoly};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use ring::{BaseField, Field, Names, Ring};
pub use series::SeriesOracle;
