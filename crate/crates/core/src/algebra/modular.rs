use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ring::{BaseField, Field, Names, Ring};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Element of the prime field `F_p`; the modulus travels with the value.
#[derive(Clone, Copy)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp { value: value % modulus, modulus }
    }

    pub fn from_signed(value: i64, modulus: u64) -> Self {
        Fp { value: (value as i128).rem_euclid(modulus as i128) as u64, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.modulus == other.modulus
    }
}

impl Eq for Fp {}

impl Hash for Fp {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl PartialOrd for Fp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.modulus
    }

    fn zero(p: u64) -> Self {
        Fp { value: 0, modulus: p }
    }

    fn one(p: u64) -> Self {
        Fp { value: 1 % p, modulus: p }
    }

    fn from_i64(p: u64, v: i64) -> Self {
        Fp::from_signed(v, p)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u128 + rhs.value as u128;
        Fp { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.modulus - (rhs.value - self.value)
        };
        Fp { value: v, modulus: self.modulus }
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }

    fn render(&self, _: Names<'_>) -> String {
        self.value.to_string()
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        inv_mod(self.value, self.modulus).map(|v| Fp { value: v, modulus: self.modulus })
    }
}

impl BaseField for Fp {
    fn characteristic(p: u64) -> u64 {
        p
    }

    fn normalizing_unit<'a, I>(_: I, leading: &Self) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        if leading.is_zero() {
            Fp::one(leading.modulus)
        } else {
            *leading
        }
    }

    fn denominator_lcm<'a, I>(p: u64, _: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        Fp::one(p)
    }

    fn modular_image(&self, q: u64) -> Option<u64> {
        if q == self.modulus {
            Some(self.value)
        } else {
            None
        }
    }

    fn from_ratio(p: u64, num: &BigInt, den: &BigInt) -> Option<Self> {
        let pb = BigInt::from(p);
        let n = num.mod_floor(&pb).to_u64()?;
        let d = den.mod_floor(&pb).to_u64()?;
        let dinv = inv_mod(d, p)?;
        Some(Fp::new(mul_mod(n, dinv, p), p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_seven() {
        let a = Fp::new(3, 7);
        let b = Fp::new(5, 7);
        assert_eq!(a.add(&b), Fp::new(1, 7));
        assert_eq!(a.sub(&b), Fp::new(5, 7));
        assert_eq!(a.mul(&b), Fp::new(1, 7));
        assert_eq!(a.inv(), Some(b));
        assert_eq!(Fp::from_signed(-1, 7), Fp::new(6, 7));
        assert!(Fp::zero(7).inv().is_none());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(32003));
        assert!(is_prime(2147483647));
        assert!(!is_prime(2147483649));
        assert!(!is_prime(1));
        assert!(!is_prime(561));
    }

    #[test]
    fn from_ratio() {
        let half = Fp::from_ratio(7, &BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, Fp::new(4, 7));
        assert!(Fp::from_ratio(7, &BigInt::from(1), &BigInt::from(14)).is_none());
    }
}
