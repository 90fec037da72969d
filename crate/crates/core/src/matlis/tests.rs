use super::*;
use crate::algebra::expr::{parse_param_xpoly, parse_polynomial};
use crate::algebra::{Fp, Rational};

type P = SparsePoly<Rational>;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn pgens(vars: &[&str], params: &[&str], src: &[&str]) -> Vec<Generator<P>> {
    src.iter()
        .map(|s| Generator::from_poly(parse_param_xpoly::<Rational>(s, (), &names(vars), &names(params)).unwrap()))
        .collect()
}

fn qgens(vars: &[&str], src: &[&str]) -> Vec<Generator<Rational>> {
    src.iter().map(|s| Generator::from_poly(parse_polynomial::<Rational>(s, (), &names(vars)).unwrap())).collect()
}

fn config(n: usize) -> EngineConfig {
    EngineConfig::new(MonomialOrder::glex(n))
}

fn t<const N: usize>(v: [u32; N]) -> DualTerm {
    DualTerm(Exponent::from(v))
}

fn tp(v: i64) -> P {
    P::from_i64(PolyCtx::new(2, ()), v)
}

fn tvar(i: usize) -> P {
    P::var(PolyCtx::new(2, ()), i)
}

#[test]
fn block_matrix_examples() {
    let gens = pgens(&["x", "y"], &["a", "b"], &["x^3 + a*x*y", "y^2 + b*x*y"]);
    let m = build_matrix(&gens, &[t([3, 0]), t([1, 1]), t([0, 2])], &MonomialOrder::glex(2));
    assert_eq!(m.row_vecs(), vec![vec![tp(1), tvar(0), tp(0)], vec![tp(0), tvar(1), tp(1)]]);
    let tags = m.tags().unwrap();
    assert_eq!((tags[0].generator, &tags[0].term), (0, &Exponent::from([0, 0])));
    assert_eq!((tags[1].generator, &tags[1].term), (1, &Exponent::from([0, 0])));

    let gens = qgens(&["x", "y"], &["x", "y"]);
    let m = build_matrix(&gens, &[t([1, 0])], &MonomialOrder::glex(2));
    assert_eq!(m.rows(), 1);
    assert_eq!(m.tags().unwrap()[0].term, Exponent::from([0, 0]));

    let gens = qgens(&["x", "y"], &["x^2", "y^2"]);
    let m = build_matrix(&gens, &[t([1, 1])], &MonomialOrder::glex(2));
    assert_eq!((m.rows(), m.cols()), (0, 1));
}

#[test]
fn plane_monomial_trace() {
    let gens = pgens(&["x", "y"], &["a", "b"], &["x^3 + a*x*y", "y^2 + b*x*y"]);
    let mut st = DualBasisState::new(gens.clone(), config(2)).unwrap();
    assert_eq!(st.t1().size(), 4);
    let mut l2 = st.candidates().to_vec();
    MonomialOrder::glex(2).sort(&mut l2);
    assert_eq!(l2, vec![Exponent::from([0, 2]), Exponent::from([1, 1]), Exponent::from([3, 0])]);

    assert_eq!(st.step().unwrap(), StepOutcome::Rejected(t([0, 2])));
    assert_eq!(st.matlist()[0].row_vecs(), vec![vec![tp(1)]]);
    assert_eq!(st.step().unwrap(), StepOutcome::Rejected(t([1, 1])));
    assert_eq!(st.matlist()[1].row_vecs(), vec![vec![tvar(0), tp(0)], vec![tvar(1), tp(1)]]);
    assert_eq!(st.step().unwrap(), StepOutcome::Accepted(t([3, 0])));
    let xi = &st.xis()[0];
    assert_eq!(xi.vector, vec![tvar(0), tp(-1), tvar(1)]);
    assert_eq!(st.polylist(), &[tvar(0)]);
    let nm = [names(&["x", "y"]), names(&["a", "b"])];
    assert_eq!(xi.element.render(&MonomialOrder::glex(2), &nm), "a/(x^4*y) - 1/(x^2*y^2) + b/(x*y^3)");
    assert_eq!(xi.monic.render(&MonomialOrder::glex(2), &nm), "1/(x^4*y) - 1/a/(x^2*y^2) + b/a/(x*y^3)");
    let mut l2 = st.candidates().to_vec();
    MonomialOrder::glex(2).sort(&mut l2);
    assert_eq!(l2, vec![Exponent::from([0, 2]), Exponent::from([1, 1]), Exponent::from([4, 0])]);
    assert_eq!(st.step().unwrap(), StepOutcome::Rejected(t([4, 0])));
    assert_eq!(st.step().unwrap(), StepOutcome::Finished);
    let basis = st.finish();
    assert_eq!(basis.length(), 5);
    assert_eq!(basis.matlist.len(), 3);
    check_invariants(&gens, &basis).unwrap();
}

#[test]
fn small_lengths() {
    // a = 1, b = 0 is not a generic point: x^3*y lies in the ideal
    let b = compute_dual_basis(qgens(&["x", "y"], &["x^3 + x*y", "y^2"]), config(2)).unwrap();
    assert_eq!(b.length(), 6);
    let b = compute_dual_basis(qgens(&["x", "y"], &["x^3 + x*y", "y^2 + x*y"]), config(2)).unwrap();
    assert_eq!(b.length(), 5);
    let b = compute_dual_basis(qgens(&["x", "y"], &["x", "y"]), config(2)).unwrap();
    assert_eq!(b.length(), 1);
    assert_eq!(b.t1_terms, vec![t([0, 0])]);
    let b = compute_dual_basis(qgens(&["x", "y"], &["x + 1", "y"]), config(2)).unwrap();
    assert_eq!(b.length(), 0);
}

#[test]
fn hypersurface_split() {
    let gens = pgens(&["x", "y", "z"], &["a", "b"], &["x^2 + a*z^2", "x*y + b*z^2", "x^2 + y^3 + z^4"]);
    let b = compute_dual_basis(gens.clone(), config(3)).unwrap();
    assert_eq!((b.t1_terms.len(), b.xis.len()), (8, 2));
    check_invariants(&gens, &b).unwrap();
}

#[test]
fn lengths_do_not_depend_on_the_order() {
    let src = ["x^3 + x*y + y^3", "y^2 - x^2*y", "x*y^2"];
    for kind in [crate::algebra::OrderKind::Glex, crate::algebra::OrderKind::Grevlex, crate::algebra::OrderKind::Lex] {
        let gens = qgens(&["x", "y"], &src);
        let b = compute_dual_basis(gens.clone(), EngineConfig::new(MonomialOrder::new(kind, 2))).unwrap();
        check_invariants(&gens, &b).unwrap();
        assert_eq!(b.length(), crate::oracles::vector_space_length(&[
            parse_polynomial::<Rational>(src[0], (), &names(&["x", "y"])).unwrap(),
            parse_polynomial::<Rational>(src[1], (), &names(&["x", "y"])).unwrap(),
            parse_polynomial::<Rational>(src[2], (), &names(&["x", "y"])).unwrap(),
        ], 40).unwrap());
    }
}

#[test]
fn prime_field_run() {
    let vars = names(&["x", "y"]);
    let gens: Vec<Generator<Fp>> = ["x^3 + x*y", "y^2 + x*y"]
        .iter()
        .map(|s| Generator::from_poly(parse_polynomial::<Fp>(s, 32003, &vars).unwrap()))
        .collect();
    let b = compute_dual_basis(gens.clone(), config(2)).unwrap();
    assert_eq!(b.length(), 5);
    check_invariants(&gens, &b).unwrap();
}

#[test]
fn caps_are_enforced() {
    let mut cfg = config(2);
    cfg.caps.max_terms = 10;
    let err = compute_dual_basis(qgens(&["x", "y"], &["x^20", "y^20"]), cfg).unwrap_err();
    assert!(matches!(err, Error::CapExceeded(_)), "{:?}", err);
    let err = compute_dual_basis(qgens(&["x", "y"], &["x^2"]), config(2)).unwrap_err();
    assert_eq!(err, Error::NotZeroDimensional { var: 1 });
}

#[test]
fn series_generators_truncate() {
    use crate::algebra::expr::parse_series;
    use std::sync::Arc;
    let vars = names(&["x", "y"]);
    let ctx = PolyCtx::new(2, ());
    let mk = |s: &str| {
        Generator::<Rational>::new(ctx, vec![(Rational::integer(1), Arc::new(parse_series::<Rational>(s, (), &vars).unwrap()))])
    };
    // x^2/(1 - y) = x^2 + x^2*y + ...; together with y^3 - x*y/(1 + x)
    let gens = vec![mk("x^2/(1-y)"), mk("y^3 - x*y/(1+x)")];
    let b = compute_dual_basis(gens.clone(), config(2)).unwrap();
    check_invariants(&gens, &b).unwrap();
    let trunc: Vec<SparsePoly<Rational>> = gens.iter().map(|g| g.truncate_exact(12)).collect();
    assert_eq!(b.length(), crate::oracles::vector_space_length(&trunc, 40).unwrap());
}
