pub mod algebra;
pub mod dual;
pub mod error;
pub mod generator;
pub mod linalg;
pub mod matlis;
pub mod modp;
pub mod oracles;
pub mod reduction;
pub mod selftest;

pub use error::{Error, Result};
