//! Randomized agreement checks between the engine and the brute-force oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::expr::parse_polynomial;
use crate::algebra::{Exponent, Fp, MonomialOrder, PolyCtx, Rational, Ring, SeriesOracle, SparsePoly};
use crate::dual::standard_monomials;
use crate::error::Result;
use crate::generator::Generator;
use crate::matlis::{check_invariants, compute_dual_basis, EngineConfig};
use crate::oracles::{monomial_length, monomial_multiplicity_fit, vector_space_length, Length};
use crate::reduction::{multiplicity, ProblemInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Random monomial ideals compared by length.
    pub monomial_cases: usize,
    /// How many of them (with small multiplicity) go through the
    /// multiplicity fit.
    pub multiplicity_cases: usize,
    pub polynomial_cases: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { seed: 20_240_601, monomial_cases: 120, multiplicity_cases: 24, polynomial_cases: 40 }
    }
}

/// A random m-primary monomial ideal in at most three variables with at
/// most five generators and at most 40 standard monomials.
pub fn random_monomial_ideal(rng: &mut impl Rng) -> (usize, Vec<Exponent>) {
    loop {
        let n = rng.gen_range(1..=3);
        let mut gens: Vec<Exponent> = (0..n).map(|i| Exponent::unit(n, i, rng.gen_range(1..=6))).collect();
        let extra = rng.gen_range(0..=5 - n);
        for _ in 0..extra {
            gens.push(Exponent::new((0..n).map(|_| rng.gen_range(0..=3))));
        }
        gens.retain(|g| !g.is_zero());
        if let Ok(s) = standard_monomials(n, &gens, 40) {
            if !s.is_empty() {
                return (n, gens);
            }
        }
    }
}

fn monomial_poly(n: usize, e: &Exponent) -> SparsePoly<Rational> {
    SparsePoly::monomial(PolyCtx::new(n, ()), e.clone(), Rational::one(()))
}

fn engine_length_q(n: usize, polys: Vec<SparsePoly<Rational>>) -> Result<usize> {
    let gens: Vec<_> = polys.into_iter().map(Generator::from_poly).collect();
    let b = compute_dual_basis(gens.clone(), EngineConfig::new(MonomialOrder::glex(n)))?;
    check_invariants(&gens, &b).map_err(crate::Error::InternalInconsistency)?;
    Ok(b.length())
}

fn monomial_suites(opts: &SelftestOptions) -> (SuiteReport, SuiteReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut lengths = SuiteReport::new("monomial length vs staircase count");
    let mut mults = SuiteReport::new("multiplicity vs power-length fit");
    for _ in 0..opts.monomial_cases {
        let (n, gens) = random_monomial_ideal(&mut rng);
        let expected = monomial_length(n, &gens);
        let got = engine_length_q(n, gens.iter().map(|g| monomial_poly(n, g)).collect());
        lengths.check(matches!((&got, expected), (Ok(a), Length::Finite(b)) if *a == b), || {
            format!("{:?}: engine {:?}, oracle {:?}", gens, got, expected)
        });
        if mults.cases >= opts.multiplicity_cases {
            continue;
        }
        let inst = ProblemInstance::new(
            (),
            Vec::new(),
            gens.iter().map(|g| SeriesOracle::polynomial(monomial_poly(n, g))).collect(),
            n,
            EngineConfig::new(MonomialOrder::glex(n)),
        );
        let e = inst.and_then(|i| multiplicity(&i)).map(|r| r.e);
        match e {
            Ok(e) if e > 30 => {}
            Ok(e) => {
                let fit = monomial_multiplicity_fit(n, &gens, n, 20);
                mults.check(fit == Ok(e as u64), || format!("{:?}: engine {}, fit {:?}", gens, e, fit));
            }
            Err(err) => mults.check(false, || format!("{:?}: {}", gens, err)),
        }
    }
    (lengths, mults)
}

/// Generators `x_i^{a_i} + (terms of higher degree)` plus a few random
/// extra polynomials; the initial forms make the ideal m-primary.
fn random_polynomial_ideal(rng: &mut impl Rng, n: usize) -> Vec<Vec<(Exponent, i64)>> {
    let mut out = Vec::new();
    for i in 0..n {
        let a = rng.gen_range(1..=3u32);
        let mut terms = vec![(Exponent::unit(n, i, a), 1)];
        for _ in 0..rng.gen_range(0..=2) {
            let mut e = Exponent::new((0..n).map(|_| rng.gen_range(0..=2)));
            while e.degree() <= a as u64 {
                e = e.incremented(rng.gen_range(0..n));
            }
            terms.push((e, rng.gen_range(-3..=3)));
        }
        out.push(terms);
    }
    for _ in 0..rng.gen_range(0..=1) {
        let terms = (0..rng.gen_range(1..=3))
            .map(|_| (Exponent::new((0..n).map(|_| rng.gen_range(0..=2))), rng.gen_range(-3..=3)))
            .filter(|(e, _)| !e.is_zero())
            .collect();
        out.push(terms);
    }
    out
}

fn build<C: Ring>(ctx: PolyCtx<C::Ctx>, terms: &[(Exponent, i64)]) -> SparsePoly<C> {
    SparsePoly::from_terms(ctx, terms.iter().map(|(e, c)| (e.clone(), C::from_i64(ctx.coeff, *c))))
}

fn polynomial_suite(opts: &SelftestOptions) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut suite = SuiteReport::new("engine length vs vector-space length");
    for case in 0..opts.polynomial_cases {
        let n = rng.gen_range(1..=3);
        let spec = random_polynomial_ideal(&mut rng, n);
        if case % 2 == 0 {
            let polys: Vec<SparsePoly<Rational>> = spec.iter().map(|t| build(PolyCtx::new(n, ()), t)).collect();
            let oracle = vector_space_length(&polys, 40);
            let got = engine_length_q(n, polys);
            suite.check(matches!((&got, &oracle), (Ok(a), Ok(b)) if a == b), || {
                format!("over Q {:?}: engine {:?}, oracle {:?}", spec, got, oracle)
            });
        } else {
            let ctx = PolyCtx::new(n, 32003);
            let polys: Vec<SparsePoly<Fp>> = spec.iter().map(|t| build(ctx, t)).collect();
            let oracle = vector_space_length(&polys, 40);
            let gens: Vec<_> = polys.into_iter().map(Generator::from_poly).collect();
            let got = compute_dual_basis(gens, EngineConfig::new(MonomialOrder::glex(n))).map(|b| b.length());
            suite.check(matches!((&got, &oracle), (Ok(a), Ok(b)) if a == b), || {
                format!("over F_32003 {:?}: engine {:?}, oracle {:?}", spec, got, oracle)
            });
        }
    }
    suite
}

/// Fixed ideals whose lengths were worked out independently.
fn fixture_suite() -> SuiteReport {
    let mut suite = SuiteReport::new("fixture lengths");
    let cases: [(&[&str], &[&str], usize); 4] = [
        (&["x", "y"], &["x^3 + x*y", "y^2 + x*y"], 5),
        (&["x", "y"], &["x^3 + x*y", "y^2"], 6),
        (&["x", "y", "z"], &["x^2 + y^3 + z^4", "x^2 + z^2", "x*y"], 10),
        (&["x", "y", "z"], &["x^2", "x*y*z", "y^3", "z^4"], 18),
    ];
    for (vars, src, expected) in cases {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let polys: Vec<SparsePoly<Rational>> = src.iter().map(|s| parse_polynomial(s, (), &names).unwrap()).collect();
        let oracle = vector_space_length(&polys, 40);
        let got = engine_length_q(vars.len(), polys);
        suite.check(got == Ok(expected) && oracle == Ok(expected), || {
            format!("{:?}: engine {:?}, oracle {:?}, expected {}", src, got, oracle, expected)
        });
    }
    suite
}

pub fn run_selftest(opts: &SelftestOptions) -> Vec<SuiteReport> {
    let (lengths, mults) = monomial_suites(opts);
    vec![lengths, mults, polynomial_suite(opts), fixture_suite()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selftest_passes() {
        let opts = SelftestOptions { seed: 7, monomial_cases: 15, multiplicity_cases: 4, polynomial_cases: 6 };
        for s in run_selftest(&opts) {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures);
            assert!(s.cases > 0);
        }
    }

    #[test]
    fn generated_ideals_are_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (n, gens) = random_monomial_ideal(&mut rng);
            assert!(gens.len() <= 5 && n <= 3);
            assert!(matches!(monomial_length(n, &gens), Length::Finite(k) if (1..=40).contains(&k)));
        }
    }
}
