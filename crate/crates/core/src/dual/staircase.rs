use std::collections::HashSet;

use crate::algebra::{Exponent, MonomialOrder};
use crate::error::{Error, Result};

/// A finite order ideal of `Z_{≥0}^n`, stored by its corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    nvars: usize,
    corners: Vec<Exponent>,
    size: usize,
}

/// Visits every point below some corner exactly once.
///
/// Points are generated by raising coordinates in non-decreasing index
/// order, which gives each point a unique path from the origin.
fn walk(nvars: usize, contains: impl Fn(&Exponent) -> bool, mut visit: impl FnMut(&Exponent) -> bool) {
    let origin = Exponent::zero(nvars);
    if !contains(&origin) {
        return;
    }
    let mut stack = vec![(origin, 0usize)];
    while let Some((p, first)) = stack.pop() {
        if !visit(&p) {
            return;
        }
        for i in first..nvars {
            let q = p.incremented(i);
            if contains(&q) {
                stack.push((q, i));
            }
        }
    }
}

impl Staircase {
    pub fn empty(nvars: usize) -> Self {
        Staircase { nvars, corners: Vec::new(), size: 0 }
    }

    /// The smallest staircase containing all given points.
    pub fn from_points<'a>(nvars: usize, points: impl IntoIterator<Item = &'a Exponent>) -> Self {
        let mut s = Staircase::empty(nvars);
        let mut pts: Vec<&Exponent> = points.into_iter().collect();
        // larger degrees first so that most dominated points are skipped early
        pts.sort_by_key(|p| std::cmp::Reverse(p.degree()));
        for p in pts {
            s.add_corner(p);
        }
        s.size = s.count();
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn corners(&self) -> &[Exponent] {
        &self.corners
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn contains(&self, p: &Exponent) -> bool {
        self.corners.iter().any(|c| p.divides(c))
    }

    fn add_corner(&mut self, p: &Exponent) -> bool {
        if self.contains(p) {
            return false;
        }
        self.corners.retain(|c| !c.divides(p));
        self.corners.push(p.clone());
        true
    }

    /// Adds `p` and everything below it.
    pub fn insert(&mut self, p: &Exponent) {
        if self.add_corner(p) {
            self.size = self.count();
        }
    }

    fn count(&self) -> usize {
        let mut n = 0;
        walk(self.nvars, |p| self.contains(p), |_| {
            n += 1;
            true
        });
        n
    }

    /// All points of the staircase, in no particular order.
    pub fn enumerate(&self) -> Vec<Exponent> {
        let mut out = Vec::with_capacity(self.size);
        walk(self.nvars, |p| self.contains(p), |p| {
            out.push(p.clone());
            true
        });
        out
    }

    /// All points sorted ascending in `order`.
    pub fn enumerate_sorted(&self, order: &MonomialOrder) -> Vec<Exponent> {
        let mut v = self.enumerate();
        order.sort(&mut v);
        v
    }

    /// Exponents of the minimal generators of the complementary monomial
    /// ideal; `{0}` for the empty staircase.
    pub fn socle_candidates(&self) -> Vec<Exponent> {
        if self.is_empty() {
            return vec![Exponent::zero(self.nvars)];
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for s in self.enumerate() {
            for j in 0..self.nvars {
                let b = s.incremented(j);
                if self.contains(&b) || seen.contains(&b) {
                    continue;
                }
                if b.support().all(|i| self.contains(&b.decremented(i).expect("positive entry"))) {
                    seen.insert(b.clone());
                    out.push(b);
                }
            }
        }
        out
    }

    /// Points of the colon by the maximal ideal: the staircase together with
    /// its socle candidates.
    pub fn colon(&self) -> Vec<Exponent> {
        let mut v = self.enumerate();
        v.extend(self.socle_candidates());
        v
    }

    /// Whether the dual term at `p` lies in the colon by the maximal ideal.
    pub fn colon_contains(&self, p: &Exponent) -> bool {
        self.contains(p) || p.support().all(|i| self.contains(&p.decremented(i).expect("positive entry")))
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.corners.iter().map(|c| c.degree()).max()
    }

    /// Corners sorted ascending in `order`, for stable output.
    pub fn sorted_corners(&self, order: &MonomialOrder) -> Vec<Exponent> {
        let mut v = self.corners.clone();
        order.sort(&mut v);
        v
    }
}

/// Standard monomials of the monomial ideal generated by `generators`.
///
/// Every variable needs a pure power among the generators (a constant
/// generator gives the empty staircase). `max_size` bounds the enumeration.
pub fn standard_monomials(nvars: usize, generators: &[Exponent], max_size: usize) -> Result<Staircase> {
    if generators.iter().any(|g| g.is_zero()) {
        return Ok(Staircase::empty(nvars));
    }
    for var in 0..nvars {
        if !generators.iter().any(|g| g.pure_power_var() == Some(var)) {
            return Err(Error::NotZeroDimensional { var });
        }
    }
    let mins = minimal_generators(generators);
    let standard = |p: &Exponent| !mins.iter().any(|g| g.divides(p));
    let mut corners = Vec::new();
    let mut size = 0usize;
    let mut overflow = false;
    walk(nvars, standard, |p| {
        size += 1;
        if size > max_size {
            overflow = true;
            return false;
        }
        if (0..nvars).all(|i| !standard(&p.incremented(i))) {
            corners.push(p.clone());
        }
        true
    });
    if overflow {
        return Err(Error::CapExceeded(format!("staircase has more than {} points", max_size)));
    }
    Ok(Staircase { nvars, corners, size })
}

/// Removes generators divisible by another one (and duplicates).
pub fn minimal_generators(generators: &[Exponent]) -> Vec<Exponent> {
    let mut sorted: Vec<&Exponent> = generators.iter().collect();
    sorted.sort_by(|a, b| a.cmp_grlex(b));
    sorted.dedup();
    let mut out: Vec<Exponent> = Vec::new();
    for g in sorted {
        if !out.iter().any(|h| h.divides(g)) {
            out.push(g.clone());
        }
    }
    out
}
