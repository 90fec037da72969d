//! Division, content and gcd for polynomials over a base field.
//!
//! Gcds are computed with a recursive primitive PRS and are returned as the
//! canonical associate (see [`BaseField::normalizing_unit`]): primitive with
//! positive leading coefficient over `Q`, monic over `F_p`.

use super::ring::{BaseField, Ring};
use super::{Exponent, PolyCtx, SparsePoly};

impl<B: BaseField> SparsePoly<B> {
    /// The unit that [`SparsePoly::normalize`] divides by.
    pub fn normalizing_unit(&self) -> B {
        match self.leading_coeff() {
            Some(lc) => B::normalizing_unit(self.terms().iter().map(|(_, c)| c), lc),
            None => B::one(self.poly_ctx().coeff),
        }
    }

    /// Canonical associate.
    pub fn normalize(&self) -> Self {
        let u = self.normalizing_unit();
        if u.is_one() {
            return self.clone();
        }
        self.div_scalar(&u)
    }

    pub fn div_scalar(&self, c: &B) -> Self {
        let inv = c.inv().expect("division by zero scalar");
        self.scale(&inv)
    }

    /// `self / d` when the division is exact, otherwise `None`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.is_constant() {
            return Some(self.div_scalar(&d.terms()[0].1));
        }
        let (lead_e, lead_c) = d.leading().cloned()?;
        let lead_inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((e, c)) = rem.leading().cloned() {
            let shift = e.checked_sub(&lead_e)?;
            let coef = c.mul(&lead_inv);
            rem = rem.sub(&d.mul_term(&shift, &coef));
            quotient.push((shift, coef));
        }
        Some(SparsePoly::from_sorted(self.poly_ctx(), quotient))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Coefficients with respect to `var`, indexed by degree in `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<SparsePoly<B>> {
        let ctx = self.poly_ctx();
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exponent, B)>> = vec![Vec::new(); deg + 1];
        for (e, c) in self.terms() {
            let k = e.get(var) as usize;
            let mut e2 = e.clone();
            e2.set(var, 0);
            buckets[k].push((e2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| {
                // zeroing one coordinate keeps the remaining terms distinct but not sorted
                SparsePoly::from_terms(ctx, terms)
            })
            .collect()
    }

    pub fn from_coeffs_in(ctx: PolyCtx<B::Ctx>, var: usize, coeffs: &[SparsePoly<B>]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in c.terms() {
                let mut e2 = e.clone();
                e2.set(var, k as u32);
                terms.push((e2, a.clone()));
            }
        }
        SparsePoly::from_terms(ctx, terms)
    }

    /// Gcd of the coefficients with respect to `var`.
    pub fn content_in(&self, var: usize) -> Self {
        let mut g = SparsePoly::new(self.poly_ctx());
        for c in self.coeffs_in(var) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_constant() {
                break;
            }
        }
        g
    }

    pub fn primitive_part_in(&self, var: usize) -> Self {
        let c = self.content_in(var);
        self.exact_div(&c).expect("content divides").normalize()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms().iter().any(|(e, _)| e.get(var) > 0)
    }
}

/// Canonical gcd of two polynomials; `gcd(0, 0) = 0`.
pub fn gcd<B: BaseField>(a: &SparsePoly<B>, b: &SparsePoly<B>) -> SparsePoly<B> {
    let ctx = a.poly_ctx();
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    if a.is_constant() || b.is_constant() {
        return SparsePoly::one(ctx);
    }
    if a.len() == 1 || b.len() == 1 {
        let (mono, other) = if a.len() == 1 { (a, b) } else { (b, a) };
        let mut g = mono.terms()[0].0.clone();
        for (e, _) in other.terms() {
            g = g.min(e);
        }
        return SparsePoly::monomial(ctx, g, B::one(ctx.coeff));
    }
    if a == b {
        return a.normalize();
    }
    let (small, large) = if a.total_degree() <= b.total_degree() { (a, b) } else { (b, a) };
    if small.divides(large) {
        return small.normalize();
    }

    let nvars = ctx.nvars;
    // a variable present in only one operand reduces the problem to its content
    for v in 0..nvars {
        match (a.involves(v), b.involves(v)) {
            (true, false) => return gcd(&a.content_in(v), b),
            (false, true) => return gcd(a, &b.content_in(v)),
            _ => {}
        }
    }
    let v = (0..nvars)
        .filter(|&v| a.involves(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial involves a variable");

    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let content = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides").normalize();
    let pb = b.exact_div(&cb).expect("content divides").normalize();
    let prim = primitive_prs(pa, pb, v);
    content.mul(&prim).normalize()
}

pub fn lcm<B: BaseField>(a: &SparsePoly<B>, b: &SparsePoly<B>) -> SparsePoly<B> {
    if a.is_zero() || b.is_zero() {
        return SparsePoly::new(a.poly_ctx());
    }
    let g = gcd(a, b);
    a.exact_div(&g).expect("gcd divides").mul(b).normalize()
}

fn primitive_prs<B: BaseField>(a: SparsePoly<B>, b: SparsePoly<B>, v: usize) -> SparsePoly<B> {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            return g.primitive_part_in(v);
        }
        if r.degree_in(v) == 0 {
            return SparsePoly::one(g.poly_ctx());
        }
        f = g;
        g = r.primitive_part_in(v);
    }
}

/// A pseudo-remainder `lc(g)^k · f mod g` with respect to `var`.
pub fn pseudo_remainder<B: BaseField>(f: &SparsePoly<B>, g: &SparsePoly<B>, var: usize) -> SparsePoly<B> {
    let ctx = f.poly_ctx();
    let gc = g.coeffs_in(var);
    let dg = gc.len() - 1;
    let lc = gc[dg].clone();
    let mut r = f.coeffs_in(var);
    trim(&mut r);
    while !r.is_empty() && r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            if !c.is_zero() {
                *c = c.mul(&lc);
            }
        }
        for (j, gj) in gc.iter().enumerate() {
            if !gj.is_zero() {
                let idx = j + dr - dg;
                r[idx] = r[idx].sub(&lr.mul(gj));
            }
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    SparsePoly::from_coeffs_in(ctx, var, &r)
}

fn trim<B: BaseField>(r: &mut Vec<SparsePoly<B>>) {
    while r.last().map_or(false, |c| c.is_zero()) {
        r.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Rational};

    type P = SparsePoly<Rational>;

    fn vars(n: usize) -> Vec<P> {
        (0..n).map(|i| P::var(PolyCtx::new(n, ()), i)).collect()
    }

    fn q(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn exact_division() {
        let v = vars(2);
        let (a, b) = (&v[0], &v[1]);
        let p = a.add(b).mul(&a.sub(b));
        assert_eq!(p.exact_div(&a.add(b)), Some(a.sub(b)));
        assert_eq!(p.exact_div(a), None);
    }

    #[test]
    fn gcd_of_products() {
        let v = vars(3);
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let common = a.mul(b).add(&c.scale(&q(3))).add(&P::one(a.poly_ctx()));
        let f = common.mul(&a.add(&c)).scale(&q(6));
        let g = common.mul(&b.sub(&P::one(a.poly_ctx()))).scale(&q(-4));
        assert_eq!(gcd(&f, &g), common);
    }

    #[test]
    fn gcd_coprime_and_monomial() {
        let v = vars(2);
        let (a, b) = (&v[0], &v[1]);
        assert!(gcd(&a.add(b), &a.sub(b)).is_one());
        let m = a.pow(2).mul(b);
        assert_eq!(gcd(&m, &a.pow(3).add(&a.mul(b))), a.clone());
    }

    #[test]
    fn gcd_normalizes_sign_and_content() {
        let v = vars(1);
        let t = &v[0];
        let f = t.scale(&q(-2)).add(&P::from_i64(t.poly_ctx(), 4));
        assert_eq!(gcd(&f, &f.mul(t)), t.sub(&P::from_i64(t.poly_ctx(), 2)));
    }

    #[test]
    fn gcd_over_prime_field_is_monic() {
        let ctx = PolyCtx::new(2, 7u64);
        let a = SparsePoly::<Fp>::var(ctx, 0);
        let b = SparsePoly::<Fp>::var(ctx, 1);
        let common = a.add(&b.scale(&Fp::new(3, 7)));
        let f = common.mul(&a).scale(&Fp::new(5, 7));
        let g = common.mul(&b.add(&SparsePoly::one(ctx)));
        let expect = common.scale(&Fp::new(1, 7));
        assert_eq!(gcd(&f, &g), expect);
        assert!(gcd(&f, &g).leading_coeff().unwrap().is_one());
    }

    #[test]
    fn pseudo_remainder_univariate() {
        let v = vars(1);
        let t = &v[0];
        let one = P::one(t.poly_ctx());
        // t^2 - 1 mod (t - 1) = 0
        let r = pseudo_remainder(&t.pow(2).sub(&one), &t.sub(&one), 0);
        assert!(r.is_zero());
    }
}
