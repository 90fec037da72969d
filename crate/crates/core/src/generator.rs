//! Ideal generators as combinations of series oracles.

use std::sync::{Arc, Mutex};

use crate::algebra::{BaseField, Field, Fp, PolyCtx, RatFunc, Rational, Ring, SeriesOracle, SparsePoly};
use crate::error::Result;
use crate::linalg::{Eliminate, ExactMatrix, KernelResult};
use crate::modp::{solve_dispatch, ModpConfig, ModpStats};

/// Scalars the dual-basis engine runs over: a base field itself, or
/// polynomials in parameters over a base field.
pub trait EngineScalar: Eliminate {
    type Base: BaseField;
    /// The fraction field, where accepted elements are made monic.
    type Field: Field;

    fn embed(ctx: Self::Ctx, b: &Self::Base) -> Self;
    fn field_ctx(ctx: Self::Ctx) -> <Self::Field as Ring>::Ctx;
    fn to_field(&self) -> Self::Field;
    /// Canonical non-vanishing condition recorded for a leading coefficient;
    /// `None` when the coefficient is a unit.
    fn certificate(&self) -> Option<Self>;
    fn solve(m: &ExactMatrix<Self>, config: &ModpConfig, stats: &mut ModpStats) -> Result<KernelResult<Self>>;
}

macro_rules! base_engine_scalar {
    ($t:ty) => {
        impl EngineScalar for $t {
            type Base = $t;
            type Field = $t;

            fn embed(_: Self::Ctx, b: &$t) -> Self {
                b.clone()
            }

            fn field_ctx(ctx: Self::Ctx) -> Self::Ctx {
                ctx
            }

            fn to_field(&self) -> Self {
                self.clone()
            }

            fn certificate(&self) -> Option<Self> {
                None
            }

            fn solve(m: &ExactMatrix<Self>, _: &ModpConfig, stats: &mut ModpStats) -> Result<KernelResult<Self>> {
                stats.direct += 1;
                Self::kernel(m)
            }
        }
    };
}

base_engine_scalar!(Rational);
base_engine_scalar!(Fp);

impl<B: BaseField> EngineScalar for SparsePoly<B> {
    type Base = B;
    type Field = RatFunc<B>;

    fn embed(ctx: Self::Ctx, b: &B) -> Self {
        SparsePoly::constant(ctx, b.clone())
    }

    fn field_ctx(ctx: Self::Ctx) -> Self::Ctx {
        ctx
    }

    fn to_field(&self) -> RatFunc<B> {
        RatFunc::from_poly(self.clone())
    }

    fn certificate(&self) -> Option<Self> {
        (!self.is_constant()).then(|| self.normalize())
    }

    fn solve(m: &ExactMatrix<Self>, config: &ModpConfig, stats: &mut ModpStats) -> Result<KernelResult<Self>> {
        solve_dispatch(m, config, stats)
    }
}

/// `Σ c_k · s_k` with scalars `c_k` and series oracles `s_k` over the base.
pub struct Generator<E: EngineScalar> {
    ctx: PolyCtx<E::Ctx>,
    parts: Vec<(E, Arc<SeriesOracle<E::Base>>)>,
    exact: Option<Arc<SparsePoly<E>>>,
    cache: Mutex<Option<(u64, Arc<SparsePoly<E>>)>>,
}

impl<E: EngineScalar> Clone for Generator<E> {
    fn clone(&self) -> Self {
        Generator {
            ctx: self.ctx,
            parts: self.parts.clone(),
            exact: self.exact.clone(),
            cache: Mutex::new(self.cache.lock().unwrap_or_else(|e| e.into_inner()).clone()),
        }
    }
}

impl<E: EngineScalar> std::fmt::Debug for Generator<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.exact {
            Some(p) => write!(f, "{:?}", p),
            None => write!(f, "Generator({} parts)", self.parts.len()),
        }
    }
}

impl<E: EngineScalar> Generator<E> {
    pub fn new(ctx: PolyCtx<E::Ctx>, parts: Vec<(E, Arc<SeriesOracle<E::Base>>)>) -> Self {
        let parts: Vec<_> = parts.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        let exact = parts.iter().all(|(_, s)| s.is_polynomial()).then(|| {
            let mut acc = SparsePoly::new(ctx);
            for (c, s) in &parts {
                acc = acc.add(&Self::lift(ctx, s.as_polynomial().expect("polynomial")).scale(c));
            }
            Arc::new(acc)
        });
        Generator { ctx, parts, exact, cache: Mutex::new(None) }
    }

    pub fn from_poly(p: SparsePoly<E>) -> Self {
        Generator { ctx: p.poly_ctx(), parts: Vec::new(), exact: Some(Arc::new(p)), cache: Mutex::new(None) }
    }

    fn lift(ctx: PolyCtx<E::Ctx>, p: &SparsePoly<E::Base>) -> SparsePoly<E> {
        p.map_coeffs(ctx, |b| E::embed(ctx.coeff, b))
    }

    pub fn ctx(&self) -> PolyCtx<E::Ctx> {
        self.ctx
    }

    pub fn parts(&self) -> &[(E, Arc<SeriesOracle<E::Base>>)] {
        &self.parts
    }

    /// The full polynomial when no part is an infinite series.
    pub fn as_polynomial(&self) -> Option<&SparsePoly<E>> {
        self.exact.as_deref()
    }

    /// A polynomial agreeing with the generator in every degree up to
    /// `degree` (it may carry higher terms as well).
    pub fn truncated(&self, degree: u64) -> Arc<SparsePoly<E>> {
        if let Some(p) = &self.exact {
            return p.clone();
        }
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some((d, p)) = cache.as_ref() {
            if *d >= degree {
                return p.clone();
            }
        }
        let d = cache.as_ref().map_or(degree, |(d, _)| degree.max(2 * d));
        let mut acc = SparsePoly::new(self.ctx);
        for (c, s) in &self.parts {
            acc = acc.add(&Self::lift(self.ctx, &s.truncate(d)).scale(c));
        }
        let p = Arc::new(acc);
        *cache = Some((d, p.clone()));
        p
    }

    /// The terms of degree at most `degree`, exactly.
    pub fn truncate_exact(&self, degree: u64) -> SparsePoly<E> {
        self.truncated(degree).truncate(degree)
    }
}

impl<B> Generator<SparsePoly<B>>
where
    B: BaseField + EngineScalar<Base = B>,
{
    /// Substitutes base-field values for the parameters.
    pub fn specialize(&self, point: &[B]) -> Generator<B> {
        let ctx = PolyCtx::new(self.ctx.nvars, self.ctx.coeff.coeff);
        if self.parts.is_empty() {
            let p = self.exact.as_ref().expect("generator without parts is a polynomial");
            return Generator::from_poly(p.map_coeffs(ctx, |c| c.eval(point)));
        }
        Generator::new(ctx, self.parts.iter().map(|(c, s)| (c.eval(point), s.clone())).collect())
    }
}
