//! Brute-force reference computations, independent of the main engine.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{BaseField, Exponent, SparsePoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<usize> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

/// Number of monomials outside the monomial ideal `⟨x^g | g ∈ gens⟩`,
/// counted over the box cut out by the pure powers.
pub fn monomial_length(nvars: usize, gens: &[Exponent]) -> Length {
    if gens.iter().any(|g| g.is_zero()) {
        return Length::Finite(0);
    }
    let mut bounds = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let b = gens.iter().filter(|g| g.pure_power_var() == Some(i)).map(|g| g.get(i)).min();
        match b {
            Some(b) => bounds.push(b),
            None => return Length::Infinite,
        }
    }
    let mut count = 0;
    let mut p = vec![0u32; nvars];
    'outer: loop {
        let e = Exponent::from(p.as_slice());
        if !gens.iter().any(|g| g.divides(&e)) {
            count += 1;
        }
        for i in 0..nvars {
            p[i] += 1;
            if p[i] < bounds[i] {
                continue 'outer;
            }
            p[i] = 0;
        }
        break;
    }
    Length::Finite(count)
}

/// Generators of `M^k` as k-fold sums of generator exponents.
pub fn power_generators(gens: &[Exponent], k: u32) -> Vec<Exponent> {
    let nvars = gens.first().map_or(0, |g| g.len());
    let mut cur = vec![Exponent::zero(nvars)];
    for _ in 0..k {
        let mut next: Vec<Exponent> = cur.iter().flat_map(|a| gens.iter().map(move |g| a.add(g))).collect();
        next.sort_by(|a, b| a.cmp_grlex(b));
        next.dedup();
        let mut minimal: Vec<Exponent> = Vec::new();
        for e in next {
            if !minimal.iter().any(|m| m.divides(&e)) {
                minimal.push(e);
            }
        }
        cur = minimal;
    }
    cur
}

/// Multiplicity of a monomial ideal from `ℓ(S/M^k)`, `k = 1..=k_max`: the
/// `d`-th finite difference of the length sequence, once two consecutive
/// differences agree.
pub fn monomial_multiplicity_fit(nvars: usize, gens: &[Exponent], d: usize, k_max: u32) -> Result<u64> {
    let mut lengths: Vec<i128> = Vec::new();
    let mut last: Option<i128> = None;
    for k in 1..=k_max {
        let l = monomial_length(nvars, &power_generators(gens, k))
            .finite()
            .ok_or_else(|| Error::Invalid("monomial ideal is not zero-dimensional".into()))?;
        lengths.push(l as i128);
        if lengths.len() > d {
            let diff = finite_difference(&lengths[lengths.len() - 1 - d..]);
            if last == Some(diff) {
                return u64::try_from(diff).map_err(|_| Error::NotStabilized(k_max as usize));
            }
            last = Some(diff);
        }
    }
    Err(Error::NotStabilized(k_max as usize))
}

/// `d`-th forward difference of `d + 1` consecutive values.
fn finite_difference(vals: &[i128]) -> i128 {
    let mut v = vals.to_vec();
    while v.len() > 1 {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    v[0]
}

/// All exponents in `n` variables of total degree below `d`.
fn monomials_below(nvars: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut p = vec![0u32; nvars];
    fn rec(i: usize, left: u32, p: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i == p.len() {
            out.push(Exponent::from(p.as_slice()));
            return;
        }
        for a in 0..=left {
            p[i] = a;
            rec(i + 1, left - a, p, out);
        }
        p[i] = 0;
    }
    if d > 0 {
        rec(0, d - 1, &mut p, &mut out);
    }
    out
}

/// `dim K[x]/(⟨F⟩ + m^D)`, by row reduction of `{x^γ f mod m^D}`.
fn truncated_colength<B: BaseField>(gens: &[SparsePoly<B>], nvars: usize, d: u32) -> usize {
    let monos = monomials_below(nvars, d);
    let index: HashMap<&Exponent, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut pivots: HashMap<usize, BTreeMap<usize, B>> = HashMap::new();
    for f in gens {
        for g in &monos {
            let mut row: BTreeMap<usize, B> = BTreeMap::new();
            for (e, c) in f.terms() {
                let s = e.add(g);
                if s.degree() < d as u64 {
                    row.insert(index[&s], c.clone());
                }
            }
            while let Some((&col, lead)) = row.iter().next() {
                match pivots.get(&col) {
                    Some(p) => {
                        let factor = lead.clone();
                        for (j, v) in p {
                            let nv = row.get(j).cloned().unwrap_or_else(|| v.sub(v)).sub(&factor.mul(v));
                            if nv.is_zero() {
                                row.remove(j);
                            } else {
                                row.insert(*j, nv);
                            }
                        }
                    }
                    None => {
                        let inv = lead.inv().expect("nonzero");
                        let row = row.into_iter().map(|(j, v)| (j, v.mul(&inv))).collect();
                        pivots.insert(col, row);
                        break;
                    }
                }
            }
        }
    }
    monos.len() - pivots.len()
}

/// `ℓ(S/⟨F⟩)` for polynomial generators: the colength modulo `m^D` for
/// `D = 1, 2, …` until two consecutive values agree.
pub fn vector_space_length<B: BaseField>(gens: &[SparsePoly<B>], d_max: u32) -> Result<usize> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let mut prev = None;
    for d in 1..=d_max {
        let v = truncated_colength(gens, nvars, d);
        if prev == Some(v) {
            return Ok(v);
        }
        prev = Some(v);
    }
    Err(Error::NotStabilized(d_max as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::expr::parse_polynomial;
    use crate::algebra::Rational;

    fn e<const N: usize>(v: [u32; N]) -> Exponent {
        Exponent::from(v)
    }

    fn polys(vars: &[&str], src: &[&str]) -> Vec<SparsePoly<Rational>> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        src.iter().map(|s| parse_polynomial::<Rational>(s, (), &vars).unwrap()).collect()
    }

    #[test]
    fn monomial_lengths() {
        assert_eq!(monomial_length(2, &[e([3, 0]), e([0, 2]), e([1, 1])]), Length::Finite(4));
        assert_eq!(monomial_length(2, &[e([2, 0]), e([0, 2])]), Length::Finite(4));
        assert_eq!(monomial_length(2, &[e([1, 0])]), Length::Infinite);
    }

    #[test]
    fn multiplicity_fits() {
        assert_eq!(monomial_multiplicity_fit(2, &[e([2, 0]), e([1, 1]), e([0, 2])], 2, 10).unwrap(), 4);
        let j = [e([2, 0, 0]), e([1, 1, 1]), e([0, 3, 0]), e([0, 0, 4])];
        assert_eq!(monomial_multiplicity_fit(3, &j, 3, 12).unwrap(), 24);
        assert_eq!(monomial_multiplicity_fit(2, &[e([1, 0]), e([0, 1])], 2, 10).unwrap(), 1);
        assert_eq!(monomial_multiplicity_fit(2, &[e([2, 0]), e([0, 3])], 2, 2), Err(Error::NotStabilized(2)));
    }

    #[test]
    fn square_of_maximal_ideal_lengths() {
        // ℓ(S/m^{2k}) = k(2k+1)
        for k in 1..6u32 {
            let l = monomial_length(2, &power_generators(&[e([2, 0]), e([1, 1]), e([0, 2])], k)).finite().unwrap();
            assert_eq!(l as u32, k * (2 * k + 1));
        }
    }

    #[test]
    fn vector_space_lengths() {
        assert_eq!(vector_space_length(&polys(&["x", "y"], &["x^3 + x*y", "y^2"]), 30).unwrap(), 6);
        assert_eq!(vector_space_length(&polys(&["x", "y"], &["x^3 + x*y", "y^2 + x*y"]), 30).unwrap(), 5);
        assert_eq!(vector_space_length(&polys(&["x", "y"], &["x", "y"]), 30).unwrap(), 1);
        let f = polys(&["x", "y", "z"], &["x^2 + y^3 + z^4", "x^2 + z^2", "x*y"]);
        assert_eq!(vector_space_length(&f, 30).unwrap(), 10);
        assert_eq!(vector_space_length(&polys(&["x", "y"], &["x^3", "y^2"]), 30).unwrap(), 6);
        assert!(matches!(vector_space_length(&polys(&["x", "y"], &["x^2"]), 6), Err(Error::NotStabilized(6))));
    }
}
