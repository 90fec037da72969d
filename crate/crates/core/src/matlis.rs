//! Dual basis of `S/J` by a composition series of its Matlis dual.

use std::collections::{BTreeMap, HashSet};

use crate::algebra::{Exponent, Field, MonomialOrder, PolyCtx, Ring, SparsePoly};
use crate::dual::{gamma_candidates, initial_staircase, leading, DualElement, DualTerm, Staircase};
use crate::error::{Error, Result};
use crate::generator::{EngineScalar, Generator};
use crate::linalg::{ExactMatrix, KernelResult, RowTag};
use crate::modp::{ModpConfig, ModpStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceCaps {
    /// Largest staircase (and dual basis) allowed.
    pub max_terms: usize,
    /// Largest total degree of a candidate term or series truncation.
    pub max_degree: u64,
    pub max_iterations: usize,
}

impl Default for ResourceCaps {
    fn default() -> Self {
        ResourceCaps { max_terms: 20_000, max_degree: 256, max_iterations: 100_000 }
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub order: MonomialOrder,
    pub caps: ResourceCaps,
    /// First truncation degree tried for series generators.
    pub trunc_degree: u64,
    pub modp: ModpConfig,
}

impl EngineConfig {
    pub fn new(order: MonomialOrder) -> Self {
        EngineConfig { order, caps: ResourceCaps::default(), trunc_degree: 8, modp: ModpConfig::default() }
    }
}

/// An accepted element of the composition series.
#[derive(Clone, Debug)]
pub struct AcceptedXi<E: EngineScalar> {
    pub leading: DualTerm,
    pub gamma: Vec<DualTerm>,
    /// Kernel vector in `gamma` order.
    pub vector: Vec<E>,
    /// `Σ c_k τ_k` with the kernel vector as coefficients.
    pub element: DualElement<E>,
    /// The same element divided by its leading coefficient.
    pub monic: DualElement<E::Field>,
    /// Staircase of leading terms just before acceptance.
    pub ltn_before: Staircase,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub iterations: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub largest_gamma: usize,
    pub largest_matrix_rows: usize,
    pub modp: ModpStats,
}

/// Result of one loop iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Accepted(DualTerm),
    Rejected(DualTerm),
    Finished,
}

pub struct DualBasisState<E: EngineScalar> {
    gens: Vec<Generator<E>>,
    config: EngineConfig,
    nvars: usize,
    ctx: PolyCtx<E::Ctx>,
    t1: Staircase,
    t1_terms: Vec<DualTerm>,
    ltn: Staircase,
    t2: Staircase,
    l1: HashSet<Exponent>,
    l2: Vec<Exponent>,
    xis: Vec<AcceptedXi<E>>,
    polylist: Vec<E>,
    matlist: Vec<ExactMatrix<E>>,
    stats: EngineStats,
}

#[derive(Clone, Debug)]
pub struct DualBasis<E: EngineScalar> {
    pub nvars: usize,
    pub order: MonomialOrder,
    /// Terms of the initial staircase, ascending.
    pub t1_terms: Vec<DualTerm>,
    pub xis: Vec<AcceptedXi<E>>,
    pub polylist: Vec<E>,
    pub matlist: Vec<ExactMatrix<E>>,
    pub stats: EngineStats,
}

impl<E: EngineScalar> DualBasis<E> {
    pub fn length(&self) -> usize {
        self.t1_terms.len() + self.xis.len()
    }

    /// The basis: initial terms ascending, then accepted elements in order.
    pub fn basis(&self) -> Vec<DualElement<E>> {
        let ctx = self.xis.first().map(|x| x.element.ctx());
        let mut out: Vec<DualElement<E>> = Vec::with_capacity(self.length());
        if let Some(ctx) = ctx {
            out.extend(self.t1_terms.iter().map(|t| DualElement::term(ctx, t, E::one(ctx.coeff))));
        }
        out.extend(self.xis.iter().map(|x| x.element.clone()));
        out
    }
}

/// Initial staircase from the supports of the generators.
///
/// Series generators are truncated at increasing degrees until the
/// staircase of the truncated supports lies below the truncation degree;
/// higher terms cannot change it then.
fn t1_staircase<E: EngineScalar>(gens: &[Generator<E>], nvars: usize, config: &EngineConfig) -> Result<Staircase> {
    let exact = gens.iter().all(|g| g.as_polynomial().is_some());
    let mut degree = config.trunc_degree.max(1);
    loop {
        let polys: Vec<SparsePoly<E>> = gens
            .iter()
            .map(|g| match g.as_polynomial() {
                Some(p) => p.clone(),
                None => g.truncate_exact(degree),
            })
            .collect();
        let supports: Vec<&Exponent> = polys.iter().flat_map(|p| p.support()).collect();
        let attempt = initial_staircase(nvars, supports, &config.order, config.caps.max_terms);
        if exact {
            return attempt.map(|(s, _)| s);
        }
        match attempt {
            Ok((s, _)) if s.max_degree().unwrap_or(0) <= degree => return Ok(s),
            Ok(_) | Err(Error::NotZeroDimensional { .. }) | Err(Error::CapExceeded(_)) if degree < config.caps.max_degree => {
                degree = (degree * 2).min(config.caps.max_degree);
            }
            Ok(_) => {
                return Err(Error::CapExceeded(format!("series truncation beyond degree {}", config.caps.max_degree)))
            }
            Err(e) => return Err(e),
        }
    }
}

/// Block matrix of the generators acting on `gamma`: one block per
/// generator, rows indexed by the dual terms hit (descending), columns by
/// `gamma`.
pub fn build_matrix<E: EngineScalar>(
    gens: &[Generator<E>],
    gamma: &[DualTerm],
    order: &MonomialOrder,
) -> ExactMatrix<E> {
    let nvars = gamma.first().map_or(0, |t| t.0.len());
    let degree = gamma.iter().map(|t| t.0.degree()).max().unwrap_or(0) + nvars as u64;
    let ctx = gens.first().map(|g| g.ctx().coeff).expect("at least one generator");
    let mut rows: Vec<Vec<E>> = Vec::new();
    let mut tags = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let f = g.truncated(degree);
        let mut block: BTreeMap<OrderedTerm<'_>, Vec<E>> = BTreeMap::new();
        for (k, tau) in gamma.iter().enumerate() {
            for (alpha, c) in f.terms() {
                if let Some(s) = tau.0.checked_sub(alpha) {
                    let row = block.entry(OrderedTerm(s, order)).or_insert_with(|| vec![E::zero(ctx); gamma.len()]);
                    row[k].add_assign(c);
                }
            }
        }
        for (s, row) in block.into_iter().rev() {
            if row.iter().any(|c| !c.is_zero()) {
                tags.push(RowTag { generator: gi, term: s.0 });
                rows.push(row);
            }
        }
    }
    ExactMatrix::from_rows(ctx, gamma.len(), rows).with_tags(tags)
}

struct OrderedTerm<'a>(Exponent, &'a MonomialOrder);

impl PartialEq for OrderedTerm<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for OrderedTerm<'_> {}

impl PartialOrd for OrderedTerm<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedTerm<'_> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

impl<E: EngineScalar> DualBasisState<E> {
    pub fn new(gens: Vec<Generator<E>>, config: EngineConfig) -> Result<Self> {
        let first = gens.first().ok_or_else(|| Error::Invalid("no generators".into()))?;
        let ctx = first.ctx();
        let nvars = ctx.nvars;
        if config.order.nvars() != nvars {
            return Err(Error::LengthMismatch { expected: nvars, found: config.order.nvars() });
        }
        let t1 = t1_staircase(&gens, nvars, &config)?;
        let t1_terms = t1.enumerate_sorted(&config.order).into_iter().map(DualTerm).collect();
        let l2 = if t1.is_empty() { Vec::new() } else { t1.socle_candidates() };
        Ok(DualBasisState {
            gens,
            nvars,
            ctx,
            ltn: t1.clone(),
            t2: t1.clone(),
            t1,
            t1_terms,
            l1: HashSet::new(),
            l2,
            xis: Vec::new(),
            polylist: Vec::new(),
            matlist: Vec::new(),
            stats: EngineStats::default(),
            config,
        })
    }

    pub fn t1(&self) -> &Staircase {
        &self.t1
    }

    pub fn ltn(&self) -> &Staircase {
        &self.ltn
    }

    pub fn t2(&self) -> &Staircase {
        &self.t2
    }

    pub fn rejected(&self) -> &HashSet<Exponent> {
        &self.l1
    }

    /// Current socle candidates of the leading-term staircase.
    pub fn candidates(&self) -> &[Exponent] {
        &self.l2
    }

    pub fn xis(&self) -> &[AcceptedXi<E>] {
        &self.xis
    }

    pub fn matlist(&self) -> &[ExactMatrix<E>] {
        &self.matlist
    }

    pub fn polylist(&self) -> &[E] {
        &self.polylist
    }

    fn next_candidate(&self) -> Option<Exponent> {
        self.l2
            .iter()
            .filter(|p| !self.l1.contains(*p))
            .min_by(|a, b| self.config.order.cmp(a, b))
            .cloned()
    }

    /// One iteration: try the smallest untried candidate as a new leading term.
    pub fn step(&mut self) -> Result<StepOutcome> {
        let Some(tau0) = self.next_candidate() else {
            return Ok(StepOutcome::Finished);
        };
        let caps = self.config.caps;
        self.stats.iterations += 1;
        if self.stats.iterations > caps.max_iterations {
            return Err(Error::CapExceeded(format!("more than {} iterations", caps.max_iterations)));
        }
        if tau0.degree() > caps.max_degree {
            return Err(Error::CapExceeded(format!("candidate term of degree {} exceeds {}", tau0.degree(), caps.max_degree)));
        }
        let tau0 = DualTerm(tau0);
        let mut gamma = vec![tau0.clone()];
        gamma.extend(gamma_candidates(&self.t2, &self.ltn, &self.config.order, &tau0));
        let m = build_matrix(&self.gens, &gamma, &self.config.order);
        self.stats.largest_gamma = self.stats.largest_gamma.max(gamma.len());
        self.stats.largest_matrix_rows = self.stats.largest_matrix_rows.max(m.rows());
        match E::solve(&m, &self.config.modp, &mut self.stats.modp)? {
            KernelResult::Vector(c) => {
                self.accept(tau0.clone(), gamma, c)?;
                Ok(StepOutcome::Accepted(tau0))
            }
            KernelResult::Trivial => {
                self.l1.insert(tau0.0.clone());
                self.matlist.push(m);
                self.stats.rejected += 1;
                Ok(StepOutcome::Rejected(tau0))
            }
        }
    }

    fn accept(&mut self, tau0: DualTerm, gamma: Vec<DualTerm>, c: Vec<E>) -> Result<()> {
        let c0 = c[0].clone();
        if c0.is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "kernel vector for candidate {} has zero leading coefficient",
                tau0.0
            )));
        }
        let element = DualElement::from_terms(self.ctx, gamma.iter().cloned().zip(c.iter().cloned()));
        let fctx = PolyCtx::new(self.nvars, E::field_ctx(self.ctx.coeff));
        let lc_inv = c0.to_field().inv().expect("nonzero leading coefficient");
        let monic = element.map_coeffs(fctx, |x| x.to_field()).scale(&lc_inv);
        let ltn_before = self.ltn.clone();
        self.ltn.insert(&tau0.0);
        if self.ltn.size() > self.config.caps.max_terms {
            return Err(Error::CapExceeded(format!("dual basis larger than {}", self.config.caps.max_terms)));
        }
        for (beta, _) in element.terms() {
            self.t2.insert(beta);
        }
        self.l2 = self.ltn.socle_candidates();
        if let Some(p) = c0.certificate() {
            if !self.polylist.contains(&p) {
                self.polylist.push(p);
            }
        }
        self.stats.accepted += 1;
        self.xis.push(AcceptedXi { leading: tau0, gamma, vector: c, element, monic, ltn_before });
        Ok(())
    }

    pub fn run(&mut self) -> Result<()> {
        while self.step()? != StepOutcome::Finished {}
        Ok(())
    }

    pub fn finish(self) -> DualBasis<E> {
        DualBasis {
            nvars: self.nvars,
            order: self.config.order,
            t1_terms: self.t1_terms,
            xis: self.xis,
            polylist: self.polylist,
            matlist: self.matlist,
            stats: self.stats,
        }
    }
}

/// Runs the whole composition-series loop.
pub fn compute_dual_basis<E: EngineScalar>(gens: Vec<Generator<E>>, config: EngineConfig) -> Result<DualBasis<E>> {
    let mut state = DualBasisState::new(gens, config)?;
    state.run()?;
    Ok(state.finish())
}

/// Checks the structural invariants of a finished run; returns a
/// description of the first violation.
pub fn check_invariants<E: EngineScalar>(gens: &[Generator<E>], basis: &DualBasis<E>) -> std::result::Result<(), String> {
    let order = &basis.order;
    for w in basis.xis.windows(2) {
        if order.cmp(&w[0].leading.0, &w[1].leading.0) != std::cmp::Ordering::Less {
            return Err(format!("leading terms {} and {} are not increasing", w[0].leading.0, w[1].leading.0));
        }
    }
    for xi in &basis.xis {
        match leading(&xi.element, order) {
            Ok((t, _)) if t == xi.leading => {}
            _ => return Err(format!("element for {} has another leading term", xi.leading.0)),
        }
        if !xi.monic.coeff(&xi.leading).is_one() {
            return Err(format!("element for {} is not monic", xi.leading.0));
        }
        for (beta, _) in xi.element.terms() {
            if xi.ltn_before.contains(beta) {
                return Err(format!("element for {} has term {} inside the leading-term staircase", xi.leading.0, beta));
            }
        }
    }
    let max_deg = basis
        .xis
        .iter()
        .flat_map(|x| x.element.terms().map(|(b, _)| b.degree()))
        .chain(basis.t1_terms.iter().map(|t| t.0.degree()))
        .max()
        .unwrap_or(0);
    for (gi, g) in gens.iter().enumerate() {
        let f = g.truncated(max_deg + basis.nvars as u64);
        for t in &basis.t1_terms {
            if !crate::dual::act_on_term(&f, t).is_empty() {
                return Err(format!("generator {} does not annihilate initial term {}", gi, t.0));
            }
        }
        for xi in &basis.xis {
            if !crate::dual::act(&f, &xi.element).is_zero() {
                return Err(format!("generator {} does not annihilate element for {}", gi, xi.leading.0));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
