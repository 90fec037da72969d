//! Kernel decisions for matrices over `K[t]` through a specialization
//! `t -> a` modulo a prime.
//!
//! A trivial kernel modulo `p` proves the exact kernel trivial. A kernel
//! vector modulo `p` only suggests the support of the exact one; the exact
//! vector is computed on those columns and checked against the full matrix
//! before it is returned.

use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::algebra::{BaseField, Fp, Ring, SparsePoly};
use crate::error::{Error, Result};
use crate::linalg::{Eliminate, ExactMatrix, KernelResult};

/// Word-sized primes, descending from `2^31 - 1`.
pub const PRIMES: [u64; 10] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497, 2147483489,
    2147483477,
];

/// A maximal ideal `⟨p, t - a⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecPoint {
    pub prime: u64,
    pub values: Vec<u64>,
    pub retry: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModpPolicy {
    pub primes: Vec<u64>,
    pub max_retries: usize,
    /// Points tried before the derived ones (used to exercise the retry path).
    pub forced_points: Vec<SpecPoint>,
}

impl Default for ModpPolicy {
    fn default() -> Self {
        ModpPolicy { primes: PRIMES.to_vec(), max_retries: 3, forced_points: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModpMode {
    On,
    Off,
    #[default]
    Auto,
}

impl FromStr for ModpMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "on" => Ok(ModpMode::On),
            "off" => Ok(ModpMode::Off),
            "auto" => Ok(ModpMode::Auto),
            _ => Err(Error::Invalid(format!("unknown modp mode `{}`", s))),
        }
    }
}

impl ModpMode {
    pub fn name(self) -> &'static str {
        match self {
            ModpMode::On => "on",
            ModpMode::Off => "off",
            ModpMode::Auto => "auto",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModpConfig {
    pub mode: ModpMode,
    /// In auto mode, matrices with more columns than this go modular.
    pub threshold: usize,
    pub policy: ModpPolicy,
}

impl Default for ModpConfig {
    fn default() -> Self {
        ModpConfig { mode: ModpMode::Auto, threshold: 4, policy: ModpPolicy::default() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ModpStats {
    /// Kernels solved by direct elimination.
    pub direct: usize,
    /// Kernels routed through the modular path.
    pub modular: usize,
    /// Specialization points tried.
    pub attempts: usize,
    /// Points that failed to confirm and forced another attempt.
    pub retries: usize,
    /// Modular solves that gave up and eliminated directly.
    pub fallbacks: usize,
}

impl ModpStats {
    pub fn merge(&mut self, other: &ModpStats) {
        self.direct += other.direct;
        self.modular += other.modular;
        self.attempts += other.attempts;
        self.retries += other.retries;
        self.fallbacks += other.fallbacks;
    }
}

struct Fnv(u64);

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }
}

fn splitmix64(x: &mut u64) -> u64 {
    *x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// The point used for attempt `retry`, derived from a hash of the matrix.
pub fn derive_point<B: BaseField>(m: &ExactMatrix<SparsePoly<B>>, policy: &ModpPolicy, retry: usize) -> SpecPoint {
    if let Some(p) = policy.forced_points.get(retry) {
        return p.clone();
    }
    let ctx = m.ctx();
    let char_p = B::characteristic(ctx.coeff);
    let prime = if char_p > 0 { char_p } else { policy.primes[retry % policy.primes.len()] };
    let mut h = Fnv(0xcbf29ce484222325);
    m.hash(&mut h);
    let mut state = h.finish() ^ (retry as u64).wrapping_mul(0xd1b54a32d192ed03);
    let values = (0..ctx.nvars).map(|_| splitmix64(&mut state) % prime).collect();
    SpecPoint { prime, values, retry }
}

/// Reduces every entry at the point; `None` when some coefficient has a
/// denominator divisible by the prime.
pub fn specialize<B: BaseField>(m: &ExactMatrix<SparsePoly<B>>, pt: &SpecPoint) -> Option<ExactMatrix<Fp>> {
    let p = pt.prime;
    m.try_map(p, |e| {
        let mut acc = 0u64;
        for (exp, c) in e.terms() {
            let mut v = c.modular_image(p).ok_or(())?;
            for (i, k) in exp.iter().enumerate() {
                if k > 0 {
                    v = crate::algebra::modular::mul_mod(v, crate::algebra::modular::pow_mod(pt.values[i], k as u64, p), p);
                }
            }
            acc = (acc + v) % p;
        }
        Ok::<Fp, ()>(Fp::new(acc, p))
    })
    .ok()
}

/// Kernel of a polynomial matrix of nullity at most one via modular
/// support discovery, with exact confirmation.
pub fn kernel_via_modp<B: BaseField>(
    m: &ExactMatrix<SparsePoly<B>>,
    policy: &ModpPolicy,
    stats: &mut ModpStats,
) -> Result<KernelResult<SparsePoly<B>>> {
    stats.modular += 1;
    let tries = policy.max_retries.max(1) + policy.forced_points.len();
    for retry in 0..tries {
        if retry > 0 {
            stats.retries += 1;
        }
        stats.attempts += 1;
        let pt = derive_point(m, policy, retry);
        let Some(image) = specialize(m, &pt) else { continue };
        let c = match Fp::kernel(&image) {
            Ok(KernelResult::Trivial) => return Ok(KernelResult::Trivial),
            Ok(KernelResult::Vector(c)) => c,
            Err(_) => continue,
        };
        let support: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
        let sub = m.select_columns(&support);
        let Ok(KernelResult::Vector(w)) = SparsePoly::kernel(&sub) else { continue };
        let mut v = vec![SparsePoly::new(m.ctx()); m.cols()];
        for (k, &j) in support.iter().enumerate() {
            v[j] = w[k].clone();
        }
        if m.annihilates(&v) {
            return Ok(KernelResult::Vector(SparsePoly::normalize_vector(&v)));
        }
    }
    stats.fallbacks += 1;
    SparsePoly::kernel(m)
}

/// Routes a kernel computation to the modular or the direct path.
pub fn solve_dispatch<B: BaseField>(
    m: &ExactMatrix<SparsePoly<B>>,
    config: &ModpConfig,
    stats: &mut ModpStats,
) -> Result<KernelResult<SparsePoly<B>>> {
    let has_params = m.ctx().nvars > 0;
    let modular = has_params
        && match config.mode {
            ModpMode::On => true,
            ModpMode::Off => false,
            ModpMode::Auto => m.cols() > config.threshold,
        };
    if modular {
        kernel_via_modp(m, &config.policy, stats)
    } else {
        stats.direct += 1;
        SparsePoly::kernel(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PolyCtx, Rational};

    type P = SparsePoly<Rational>;

    fn tctx() -> PolyCtx<()> {
        PolyCtx::new(2, ())
    }

    fn a() -> P {
        P::var(tctx(), 0)
    }

    fn b() -> P {
        P::var(tctx(), 1)
    }

    fn c(v: i64) -> P {
        P::from_i64(tctx(), v)
    }

    fn pm(rows: Vec<Vec<P>>) -> ExactMatrix<P> {
        let cols = rows[0].len();
        ExactMatrix::from_rows(tctx(), cols, rows)
    }

    fn fp(m: Vec<Vec<u64>>) -> ExactMatrix<Fp> {
        let cols = m[0].len();
        ExactMatrix::from_rows(5, cols, m.into_iter().map(|r| r.into_iter().map(|v| Fp::new(v, 5)).collect()).collect())
    }

    fn pt5() -> SpecPoint {
        SpecPoint { prime: 5, values: vec![2, 3], retry: 0 }
    }

    #[test]
    fn specialize_examples() {
        let m = pm(vec![vec![a(), c(0)], vec![b(), c(1)]]);
        assert_eq!(specialize(&m, &pt5()).unwrap(), fp(vec![vec![2, 0], vec![3, 1]]));
        let m = pm(vec![vec![c(1), a(), c(0)], vec![c(0), b(), c(1)]]);
        assert_eq!(specialize(&m, &pt5()).unwrap(), fp(vec![vec![1, 2, 0], vec![0, 3, 1]]));
        let z: ExactMatrix<P> = ExactMatrix::zeros(tctx(), 2, 2);
        assert!(specialize(&z, &pt5()).unwrap().is_zero());
        // 1/5 has no image mod 5
        let m = pm(vec![vec![P::constant(tctx(), Rational::new(1, 5))]]);
        assert!(specialize(&m, &pt5()).is_none());
    }

    #[test]
    fn example_kernels() {
        let mut stats = ModpStats::default();
        let policy = ModpPolicy { forced_points: vec![pt5()], ..Default::default() };
        let m = pm(vec![vec![a(), c(0)], vec![b(), c(1)]]);
        assert_eq!(kernel_via_modp(&m, &ModpPolicy::default(), &mut stats).unwrap(), KernelResult::Trivial);
        let m = pm(vec![vec![c(1), a(), c(0)], vec![c(0), b(), c(1)]]);
        let image = specialize(&m, &pt5()).unwrap();
        assert_eq!(Fp::kernel(&image).unwrap(), KernelResult::Vector(fp(vec![vec![1, 2, 4]]).row(0).to_vec()));
        assert_eq!(kernel_via_modp(&m, &policy, &mut stats).unwrap(), KernelResult::Vector(vec![a(), c(-1), b()]));
        let m = pm(vec![vec![c(0)]]);
        assert_eq!(kernel_via_modp(&m, &policy, &mut stats).unwrap(), KernelResult::Vector(vec![c(1)]));
        assert_eq!(stats.fallbacks, 0);
    }

    #[test]
    fn bad_point_retries() {
        // at a = 0 the image has kernel (0, 1) whose support misses column 0
        let m = pm(vec![vec![c(1), a()], vec![c(1), c(0)]]);
        let bad = SpecPoint { prime: 5, values: vec![0, 0], retry: 0 };
        let policy = ModpPolicy { forced_points: vec![bad], ..Default::default() };
        let mut stats = ModpStats::default();
        assert_eq!(kernel_via_modp(&m, &policy, &mut stats).unwrap(), KernelResult::Trivial);
        assert_eq!(stats.retries, 1);

        // a kernel that exists, hidden by a point where the image kernel is two-dimensional
        let m = pm(vec![vec![a(), c(0), a()], vec![c(0), b(), b()]]);
        let bad = SpecPoint { prime: 5, values: vec![0, 0], retry: 0 };
        let policy = ModpPolicy { forced_points: vec![bad.clone(), bad], max_retries: 1, ..Default::default() };
        let mut stats = ModpStats::default();
        let v = kernel_via_modp(&m, &policy, &mut stats).unwrap();
        assert_eq!(v, SparsePoly::kernel(&m).unwrap());
        assert_eq!(stats.fallbacks, 0);
        assert_eq!(stats.retries, 2);
    }

    #[test]
    fn derived_points_are_deterministic() {
        let m = pm(vec![vec![c(1), a(), c(0)], vec![c(0), b(), c(1)]]);
        let p = ModpPolicy::default();
        assert_eq!(derive_point(&m, &p, 0), derive_point(&m, &p, 0));
        assert_ne!(derive_point(&m, &p, 0), derive_point(&m, &p, 1));
        assert_eq!(derive_point(&m, &p, 0).prime, PRIMES[0]);
        assert!(derive_point(&m, &p, 0).values.iter().all(|&v| v < PRIMES[0]));
    }

    #[test]
    fn dispatch_routes() {
        let mut stats = ModpStats::default();
        let cfg = ModpConfig::default();
        let one = pm(vec![vec![c(1)]]);
        solve_dispatch(&one, &cfg, &mut stats).unwrap();
        assert_eq!((stats.direct, stats.modular), (1, 0));
        let wide = pm(vec![vec![c(1), a(), b(), c(0), c(0)], vec![c(0), c(1), c(0), a(), c(0)]]);
        assert!(matches!(solve_dispatch(&wide, &cfg, &mut stats), Err(Error::UnexpectedNullity(3))));
        assert_eq!(stats.modular, 1);
        let q = ExactMatrix::from_rows(PolyCtx::new(0, ()), 5, vec![vec![P::one(PolyCtx::new(0, ())); 5]]);
        let _ = solve_dispatch(&q, &ModpConfig { mode: ModpMode::On, ..cfg.clone() }, &mut stats);
        assert_eq!(stats.modular, 1);
    }
}
