//! Multiplicity over the parameter field, genericity certificates,
//! reduction search and integral closure membership.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{BaseField, PolyCtx, SeriesOracle, SparsePoly};
use crate::error::{Error, Result};
use crate::generator::{EngineScalar, Generator};
use crate::linalg::{nonsingular_at, ExactMatrix};
use crate::matlis::{compute_dual_basis, DualBasis, EngineConfig};

/// Parameter grid `t_i_j`, `1 <= i <= d < j <= m`, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamLayout {
    pub d: usize,
    pub m: usize,
}

impl ParamLayout {
    pub fn count(&self) -> usize {
        self.d * (self.m - self.d)
    }

    /// Position of `t_i_j` (1-based indices as in the names).
    pub fn index(&self, i: usize, j: usize) -> usize {
        (i - 1) * (self.m - self.d) + (j - self.d - 1)
    }

    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.count());
        for i in 1..=self.d {
            for j in self.d + 1..=self.m {
                out.push(format!("t_{}_{}", i, j));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ProblemInstance<B: BaseField> {
    pub nvars: usize,
    pub coeff: B::Ctx,
    /// Generators of `I`; empty means `R = S`.
    pub quotient: Vec<Arc<SeriesOracle<B>>>,
    /// Generators of `J`.
    pub ideal: Vec<Arc<SeriesOracle<B>>>,
    /// Krull dimension of `R`, supplied by the caller.
    pub dim: usize,
    pub config: EngineConfig,
}

impl<B> ProblemInstance<B>
where
    B: BaseField + EngineScalar<Base = B>,
{
    pub fn new(
        coeff: B::Ctx,
        quotient: Vec<SeriesOracle<B>>,
        ideal: Vec<SeriesOracle<B>>,
        dim: usize,
        config: EngineConfig,
    ) -> Result<Self> {
        let nvars = config.order.nvars();
        if dim > nvars {
            return Err(Error::Invalid(format!("dimension {} exceeds the {} variables", dim, nvars)));
        }
        if ideal.len() < dim {
            return Err(Error::TooFewGenerators { m: ideal.len(), d: dim });
        }
        for s in quotient.iter().chain(&ideal) {
            if s.nvars() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, found: s.nvars() });
            }
        }
        Ok(ProblemInstance {
            nvars,
            coeff,
            quotient: quotient.into_iter().map(Arc::new).collect(),
            ideal: ideal.into_iter().map(Arc::new).collect(),
            dim,
            config,
        })
    }

    pub fn layout(&self) -> ParamLayout {
        ParamLayout { d: self.dim, m: self.ideal.len() }
    }

    /// Same instance with `h` appended to the generators of `J`.
    pub fn with_extra_generator(&self, h: SeriesOracle<B>) -> Result<Self> {
        if h.nvars() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, found: h.nvars() });
        }
        let mut out = self.clone();
        out.ideal.push(Arc::new(h));
        Ok(out)
    }

    /// Serialization used as cache key; ignores caps and solver settings.
    pub fn canonical_key(&self) -> String {
        let names: Vec<Vec<String>> = vec![(1..=self.nvars).map(|i| format!("x{}", i)).collect()];
        let render = |v: &[Arc<SeriesOracle<B>>]| v.iter().map(|s| s.render(&names)).collect::<Vec<_>>().join(";");
        format!(
            "char={};n={};d={};order={}{:?};I=[{}];J=[{}]",
            B::characteristic(self.coeff),
            self.nvars,
            self.dim,
            self.config.order.kind().name(),
            self.config.order.precedence(),
            render(&self.quotient),
            render(&self.ideal)
        )
    }

    fn param_ctx(&self) -> PolyCtx<PolyCtx<B::Ctx>> {
        PolyCtx::new(self.nvars, PolyCtx::new(self.layout().count(), self.coeff))
    }

    /// `f_i + Σ_j t_ij f_j` for `i <= d`, followed by the generators of `I`.
    pub fn generic_generators(&self) -> Result<Vec<Generator<SparsePoly<B>>>> {
        let layout = self.layout();
        let ctx = self.param_ctx();
        let one = SparsePoly::constant(ctx.coeff, B::one(self.coeff));
        let mut out = Vec::with_capacity(self.dim + self.quotient.len());
        for i in 1..=self.dim {
            let mut parts = vec![(one.clone(), self.ideal[i - 1].clone())];
            for j in self.dim + 1..=layout.m {
                parts.push((SparsePoly::var(ctx.coeff, layout.index(i, j)), self.ideal[j - 1].clone()));
            }
            out.push(Generator::new(ctx, parts));
        }
        for g in &self.quotient {
            out.push(Generator::new(ctx, vec![(one.clone(), g.clone())]));
        }
        if out.is_empty() {
            return Err(Error::Invalid("no generators: both the quotient ideal and d are empty".into()));
        }
        Ok(out)
    }

    /// Generators `f_i + Σ_j a_ij f_j` over the base field, then those of `I`.
    pub fn specialized_generators(&self, a: &[B]) -> Result<Vec<Generator<B>>> {
        let layout = self.layout();
        if a.len() != layout.count() {
            return Err(Error::LengthMismatch { expected: layout.count(), found: a.len() });
        }
        let ctx = PolyCtx::new(self.nvars, self.coeff);
        let one = B::one(self.coeff);
        let mut out = Vec::new();
        for i in 1..=self.dim {
            let mut parts = vec![(one.clone(), self.ideal[i - 1].clone())];
            for j in self.dim + 1..=layout.m {
                parts.push((a[layout.index(i, j)].clone(), self.ideal[j - 1].clone()));
            }
            out.push(Generator::new(ctx, parts));
        }
        for g in &self.quotient {
            out.push(Generator::new(ctx, vec![(one.clone(), g.clone())]));
        }
        if out.is_empty() {
            return Err(Error::Invalid("no generators: both the quotient ideal and d are empty".into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct MultiplicityResult<B: BaseField + EngineScalar<Base = B>> {
    pub e: usize,
    pub layout: ParamLayout,
    pub basis: DualBasis<SparsePoly<B>>,
}

impl<B: BaseField + EngineScalar<Base = B>> MultiplicityResult<B> {
    /// Polynomials in the parameters that must not vanish.
    pub fn polylist(&self) -> &[SparsePoly<B>] {
        &self.basis.polylist
    }

    /// Matrices that must keep a trivial kernel.
    pub fn matlist(&self) -> &[ExactMatrix<SparsePoly<B>>] {
        &self.basis.matlist
    }
}

pub fn multiplicity<B>(inst: &ProblemInstance<B>) -> Result<MultiplicityResult<B>>
where
    B: BaseField + EngineScalar<Base = B>,
{
    let gens = inst.generic_generators()?;
    let basis = compute_dual_basis(gens, inst.config.clone())?;
    Ok(MultiplicityResult { e: basis.length(), layout: inst.layout(), basis })
}

/// Sufficient conditions for `a` to give a reduction: no PolyList entry
/// vanishes at `a` and every MatList matrix stays injective there.
pub fn certify<B>(a: &[B], res: &MultiplicityResult<B>) -> bool
where
    B: BaseField + EngineScalar<Base = B>,
{
    if a.len() != res.layout.count() {
        return false;
    }
    res.polylist().iter().all(|p| !p.eval(a).is_zero()) && res.matlist().iter().all(|m| nonsingular_at(m, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationMode {
    Symbolic,
    LengthVerified,
}

impl VerificationMode {
    pub fn name(self) -> &'static str {
        match self {
            VerificationMode::Symbolic => "symbolic",
            VerificationMode::LengthVerified => "length-verified",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionCertificate<B: BaseField + EngineScalar<Base = B>> {
    pub layout: ParamLayout,
    /// `d x (m - d)` coefficients, row-major.
    pub a: Vec<B>,
    /// The integers the entries were chosen as.
    pub integers: Vec<i64>,
    pub mode: VerificationMode,
    pub generators: Vec<Generator<B>>,
}

impl<B: BaseField + EngineScalar<Base = B>> ReductionCertificate<B> {
    pub fn rows(&self) -> Vec<Vec<B>> {
        let cols = self.layout.m - self.layout.d;
        if cols == 0 {
            return vec![Vec::new(); self.layout.d];
        }
        self.a.chunks(cols).map(|c| c.to_vec()).collect()
    }
}

/// Candidate integer values in search order `0, 1, -1, 2, -2, ...` up to
/// `bound`, dropping those whose image in the field repeats an earlier one.
pub fn search_values<B: BaseField>(ctx: B::Ctx, bound: u32) -> Vec<i64> {
    let mut seen: Vec<B> = Vec::new();
    let mut out = Vec::new();
    for k in 0..=bound as i64 {
        for v in if k == 0 { vec![0] } else { vec![k, -k] } {
            let img = B::from_i64(ctx, v);
            if !seen.contains(&img) {
                seen.push(img);
                out.push(v);
            }
        }
    }
    out
}

/// All integer vectors of length `len` with entries from `values` and max
/// norm at most `bound`, shell by shell; lexicographic (in value order)
/// inside a shell.
pub fn shell_points(values: &[i64], len: usize, bound: u32) -> impl Iterator<Item = Vec<i64>> + '_ {
    let mut norms: Vec<u64> = values.iter().map(|v| v.unsigned_abs()).collect();
    norms.sort_unstable();
    norms.dedup();
    norms.retain(|&n| n <= bound as u64);
    norms.into_iter().flat_map(move |s| {
        let allowed: Vec<i64> = values.iter().copied().filter(|v| v.unsigned_abs() <= s).collect();
        let mut idx = vec![0usize; len];
        let mut done = allowed.is_empty() && len > 0;
        std::iter::from_fn(move || loop {
            if done {
                return None;
            }
            let point: Vec<i64> = idx.iter().map(|&i| allowed[i]).collect();
            // advance odometer, last coordinate fastest
            let mut k = len;
            loop {
                if k == 0 {
                    done = true;
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < allowed.len() {
                    break;
                }
                idx[k] = 0;
            }
            let on_shell = if len == 0 { s == 0 } else { point.iter().any(|v| v.unsigned_abs() == s) };
            if on_shell {
                return Some(point);
            }
        })
    })
}

fn to_field<B: BaseField>(ctx: B::Ctx, point: &[i64]) -> Vec<B> {
    point.iter().map(|&v| B::from_i64(ctx, v)).collect()
}

/// First point in shell order passing [`certify`].
pub fn find_reduction<B>(inst: &ProblemInstance<B>, res: &MultiplicityResult<B>, bound: u32) -> Result<ReductionCertificate<B>>
where
    B: BaseField + EngineScalar<Base = B>,
{
    let values = search_values::<B>(inst.coeff, bound);
    for point in shell_points(&values, res.layout.count(), bound) {
        let a = to_field::<B>(inst.coeff, &point);
        if certify(&a, res) {
            let generators = inst.specialized_generators(&a)?;
            return Ok(ReductionCertificate {
                layout: res.layout,
                a,
                integers: point,
                mode: VerificationMode::Symbolic,
                generators,
            });
        }
    }
    Err(Error::SearchExhausted(bound))
}

/// Whether `ℓ(S/P_a)` equals `e`. A run that exceeds the caps (or does not
/// terminate in a finite staircase) counts as a failure.
pub fn verify_reduction_by_length<B>(inst: &ProblemInstance<B>, e: usize, a: &[B]) -> Result<bool>
where
    B: BaseField + EngineScalar<Base = B>,
{
    let gens = inst.specialized_generators(a)?;
    let mut config = inst.config.clone();
    // ℓ(S/P_a) >= e always, so anything longer is already a failure
    config.caps.max_terms = config.caps.max_terms.min(e);
    match compute_dual_basis(gens, config) {
        Ok(b) => Ok(b.length() == e),
        Err(Error::CapExceeded(_)) | Err(Error::NotZeroDimensional { .. }) => Ok(false),
        Err(err) => Err(err),
    }
}

/// Shell search deciding each point by length; slower than the symbolic
/// search but finds points where the sufficient conditions fail.
pub fn find_reduction_by_length<B>(inst: &ProblemInstance<B>, e: usize, bound: u32) -> Result<ReductionCertificate<B>>
where
    B: BaseField + EngineScalar<Base = B>,
{
    let layout = inst.layout();
    let values = search_values::<B>(inst.coeff, bound);
    for point in shell_points(&values, layout.count(), bound) {
        let a = to_field::<B>(inst.coeff, &point);
        if verify_reduction_by_length(inst, e, &a)? {
            let generators = inst.specialized_generators(&a)?;
            return Ok(ReductionCertificate { layout, a, integers: point, mode: VerificationMode::LengthVerified, generators });
        }
    }
    Err(Error::SearchExhausted(bound))
}

#[derive(Clone, Debug)]
pub struct Membership<B: BaseField + EngineScalar<Base = B>> {
    pub member: bool,
    pub without: Arc<MultiplicityResult<B>>,
    pub with: Arc<MultiplicityResult<B>>,
}

/// Multiplicity runs memoized by the instance's canonical serialization.
pub struct MultiplicityEngine<B: BaseField + EngineScalar<Base = B>> {
    cache: Mutex<HashMap<String, Arc<MultiplicityResult<B>>>>,
}

impl<B: BaseField + EngineScalar<Base = B>> Default for MultiplicityEngine<B> {
    fn default() -> Self {
        MultiplicityEngine { cache: Mutex::new(HashMap::new()) }
    }
}

impl<B: BaseField + EngineScalar<Base = B>> MultiplicityEngine<B> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cached(&self, inst: &ProblemInstance<B>) -> Option<Arc<MultiplicityResult<B>>> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner()).get(&inst.canonical_key()).cloned()
    }

    pub fn multiplicity(&self, inst: &ProblemInstance<B>) -> Result<Arc<MultiplicityResult<B>>> {
        if let Some(r) = self.cached(inst) {
            return Ok(r);
        }
        let r = Arc::new(multiplicity(inst)?);
        self.cache.lock().unwrap_or_else(|e| e.into_inner()).insert(inst.canonical_key(), r.clone());
        Ok(r)
    }

    /// `h` is integral over `J` iff adding it leaves the multiplicity unchanged.
    pub fn is_in_integral_closure(&self, inst: &ProblemInstance<B>, h: SeriesOracle<B>) -> Result<Membership<B>> {
        let extended = inst.with_extra_generator(h)?;
        let (without, with) = std::thread::scope(|s| {
            let a = s.spawn(|| self.multiplicity(inst));
            let b = self.multiplicity(&extended);
            (a.join().unwrap_or_else(|p| std::panic::resume_unwind(p)), b)
        });
        let (without, with) = (without?, with?);
        Ok(Membership { member: without.e == with.e, without, with })
    }
}

/// One-shot membership test without a shared cache.
pub fn is_in_integral_closure<B>(inst: &ProblemInstance<B>, h: SeriesOracle<B>) -> Result<bool>
where
    B: BaseField + EngineScalar<Base = B>,
{
    MultiplicityEngine::new().is_in_integral_closure(inst, h).map(|m| m.member)
}
