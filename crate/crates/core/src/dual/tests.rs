use proptest::prelude::*;

use super::*;
use crate::algebra::{OrderKind, PolyCtx, Rational, SparsePoly};

type P = SparsePoly<Rational>;
type D = DualElement<Rational>;

fn e<const N: usize>(v: [u32; N]) -> Exponent {
    Exponent::from(v)
}

fn t<const N: usize>(v: [u32; N]) -> DualTerm {
    DualTerm(e(v))
}

fn q(v: i64) -> Rational {
    Rational::integer(v)
}

fn ctx2() -> PolyCtx<()> {
    PolyCtx::new(2, ())
}

fn glex() -> MonomialOrder {
    MonomialOrder::glex(2)
}

fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

/// Polynomials in x, y with coefficients in Q[a, b].
mod param {
    use super::*;
    pub type C = SparsePoly<Rational>;
    pub type XP = SparsePoly<C>;

    pub fn tctx() -> PolyCtx<()> {
        PolyCtx::new(2, ())
    }

    pub fn xctx() -> PolyCtx<PolyCtx<()>> {
        PolyCtx::new(2, tctx())
    }

    pub fn a() -> C {
        C::var(tctx(), 0)
    }

    pub fn b() -> C {
        C::var(tctx(), 1)
    }

    pub fn k(v: i64) -> C {
        C::from_i64(tctx(), v)
    }

    pub fn xp(terms: &[([u32; 2], C)]) -> XP {
        XP::from_terms(xctx(), terms.iter().map(|(x, c)| (e(*x), c.clone())))
    }
}

#[test]
fn action_examples() {
    let x3 = P::monomial(ctx2(), e([3, 0]), q(1));
    let xy_ = P::monomial(ctx2(), e([1, 1]), q(1));
    let tau = D::term(ctx2(), &t([3, 0]), q(1));
    assert_eq!(act(&x3, &tau), D::term(ctx2(), &t([0, 0]), q(1)));
    assert!(act(&xy_, &tau).is_zero());

    use param::*;
    let f = xp(&[([3, 0], k(1)), ([1, 1], a())]);
    let eta = DualElement::term(xctx(), &t([1, 1]), k(1));
    assert_eq!(act(&f, &eta), DualElement::term(xctx(), &t([0, 0]), a()));
}

#[test]
fn leading_examples() {
    use param::*;
    let xi = DualElement::from_terms(xctx(), vec![(t([3, 0]), a()), (t([1, 1]), k(-1)), (t([0, 2]), b())]);
    assert_eq!(leading(&xi, &glex()).unwrap(), (t([3, 0]), a()));
    assert_eq!(xi.render(&glex(), &[xy(), vec!["a".into(), "b".into()]]), "a/(x^4*y) - 1/(x^2*y^2) + b/(x*y^3)");
    let single = D::term(ctx2(), &t([0, 0]), q(5));
    assert_eq!(leading(&single, &glex()).unwrap(), (t([0, 0]), q(5)));
    let two = D::from_terms(ctx2(), vec![(t([0, 2]), q(1)), (t([1, 1]), q(1))]);
    assert_eq!(leading(&two, &glex()).unwrap(), (t([1, 1]), q(1)));
    assert_eq!(leading(&D::zero(ctx2()), &glex()), Err(Error::ZeroElement));
}

#[test]
fn initial_staircase_examples() {
    let (_, terms) = initial_staircase(2, &[e([3, 0]), e([0, 2]), e([1, 1])], &glex(), 100).unwrap();
    assert_eq!(terms, vec![t([0, 0]), t([0, 1]), t([1, 0]), t([2, 0])]);
    let r: Vec<String> = terms.iter().map(|x| x.render(&xy())).collect();
    assert_eq!(r, vec!["1/(x*y)", "1/(x*y^2)", "1/(x^2*y)", "1/(x^3*y)"]);
    let (_, terms) = initial_staircase(2, &[e([1, 0]), e([0, 1])], &glex(), 100).unwrap();
    assert_eq!(terms, vec![t([0, 0])]);
    let (s, terms) = initial_staircase(2, &[e([2, 0]), e([0, 2])], &glex(), 100).unwrap();
    assert_eq!(terms.len(), 4);
    assert_eq!(s.size(), 4);
    assert_eq!(initial_staircase(2, &[e([2, 0])], &glex(), 100).unwrap_err(), Error::NotZeroDimensional { var: 1 });
}

#[test]
fn span_examples() {
    use param::*;
    let single = D::term(ctx2(), &t([0, 0]), q(1));
    assert_eq!(span_of_terms(2, [&single]).corners(), &[e([0, 0])]);
    let xi = DualElement::from_terms(xctx(), vec![(t([3, 0]), a()), (t([1, 1]), k(-1)), (t([0, 2]), b())]);
    let s = span_of_terms(2, [&xi]);
    let mut c = s.corners().to_vec();
    glex().sort(&mut c);
    assert_eq!(c, vec![e([0, 2]), e([1, 1]), e([3, 0])]);
    assert!(span_of_terms::<Rational>(2, []).is_empty());
}

#[test]
fn gamma_examples() {
    let (s, _) = initial_staircase(2, &[e([3, 0]), e([0, 2]), e([1, 1])], &glex(), 100).unwrap();
    assert_eq!(gamma_candidates(&s, &s, &glex(), &t([3, 0])), vec![t([1, 1]), t([0, 2])]);
    assert_eq!(gamma_candidates(&s, &s, &glex(), &t([0, 2])), vec![]);
    // y above x: 1/x^2y is the smallest socle term of the staircase {0}
    let yx = MonomialOrder::with_precedence(OrderKind::Glex, vec![1, 0]).unwrap();
    let m = Staircase::from_points(2, &[e([0, 0])]);
    assert_eq!(gamma_candidates(&m, &m, &yx, &t([1, 0])), vec![]);
}

fn small_poly(n: usize) -> impl Strategy<Value = P> {
    proptest::collection::vec((-3i64..4, proptest::collection::vec(0u32..3, n)), 0..4).prop_map(move |ts| {
        P::from_terms(PolyCtx::new(n, ()), ts.into_iter().map(|(c, x)| (Exponent::from(x), q(c))))
    })
}

fn small_element(n: usize) -> impl Strategy<Value = D> {
    proptest::collection::vec((-3i64..4, proptest::collection::vec(0u32..4, n)), 0..5).prop_map(move |ts| {
        D::from_terms(PolyCtx::new(n, ()), ts.into_iter().map(|(c, x)| (DualTerm(Exponent::from(x)), q(c))))
    })
}

proptest! {
    #[test]
    fn action_is_linear(f in small_poly(2), g in small_poly(2), eta in small_element(2), gamma in proptest::collection::vec(0u32..3, 2)) {
        let sum = act(&f.add(&g), &eta);
        prop_assert_eq!(sum, act(&f, &eta).add(&act(&g, &eta)));
        let xg = P::monomial(ctx2(), Exponent::from(gamma), q(1));
        prop_assert_eq!(act(&xg.mul(&f), &eta), act(&f, &act(&xg, &eta)));
    }

    #[test]
    fn leading_term_is_multiplicative(eta in small_element(3), var in 0usize..3, kind in 0usize..3) {
        let order = MonomialOrder::new([OrderKind::Glex, OrderKind::Grevlex, OrderKind::Lex][kind], 3);
        prop_assume!(!eta.is_zero());
        let (lt, _) = leading(&eta, &order).unwrap();
        let xi = P::var(PolyCtx::new(3, ()), var);
        if let Some(shifted) = lt.act_monomial(&Exponent::unit(3, var, 1)) {
            let moved = act(&xi, &eta);
            prop_assert_eq!(leading(&moved, &order).unwrap().0, shifted);
        }
    }
}
