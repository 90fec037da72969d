use std::time::{Duration, Instant};

use hsmult_core::algebra::expr::parse_series;
use hsmult_core::algebra::{MonomialOrder, Rational};
use hsmult_core::matlis::{check_invariants, EngineConfig};
use hsmult_core::reduction::{find_reduction, multiplicity, verify_reduction_by_length, MultiplicityEngine, ProblemInstance};

fn inst(quotient: &[&str], ideal: &[&str], dim: usize) -> ProblemInstance<Rational> {
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let parse = |v: &[&str]| v.iter().map(|s| parse_series::<Rational>(s, (), &vars).unwrap()).collect();
    ProblemInstance::new((), parse(quotient), parse(ideal), dim, EngineConfig::new(MonomialOrder::glex(3))).unwrap()
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    assert!(start.elapsed() < limit, "took {:?}", start.elapsed());
    out
}

#[test]
fn four_generators_in_three_variables() {
    let i = inst(&[], &["x^2 + y^3 + z^3", "y^3 + x*z^3", "z^4 + x*y^3", "x^2 + x*y*z + y^4"], 3);
    let r = timed(Duration::from_secs(10), || multiplicity(&i).unwrap());
    assert_eq!(r.e, 18);
    assert_eq!(r.basis.t1_terms.len(), 14);
    assert_eq!(r.basis.xis.len(), 4);
    check_invariants(&i.generic_generators().unwrap(), &r.basis).unwrap();
    let c = find_reduction(&i, &r, 4).unwrap();
    assert!(verify_reduction_by_length(&i, r.e, &c.a).unwrap());
}

#[test]
fn hypersurface_membership() {
    let i = inst(&["x^2 + y^3 + z^4"], &["x^2", "x*y", "z^2"], 2);
    let engine = MultiplicityEngine::new();
    let h = parse_series::<Rational>("x*z", (), &["x".into(), "y".into(), "z".into()]).unwrap();
    let m = timed(Duration::from_secs(10), || engine.is_in_integral_closure(&i, h).unwrap());
    assert!(m.member);
    assert_eq!((m.without.e, m.without.basis.t1_terms.len()), (10, 8));
    assert_eq!((m.with.e, m.with.basis.t1_terms.len()), (10, 7));
}

#[test]
fn monomial_and_perturbation() {
    let plain = inst(&[], &["x^2", "x*y*z", "y^3", "z^4"], 3);
    let r = timed(Duration::from_secs(30), || multiplicity(&plain).unwrap());
    assert_eq!(r.e, 24);
    let perturbed = inst(
        &[],
        &[
            "x^2 + z^10 + y^20 + x^200",
            "x*y*z + x^10 + x*y^20 + z^100",
            "y^3 + x^10 + y^100",
            "z^4 + y^10 + x^20 + z^100",
        ],
        3,
    );
    let p = timed(Duration::from_secs(30), || multiplicity(&perturbed).unwrap());
    assert_eq!(p.e, 24);
    assert_eq!(p.polylist(), r.polylist());
    assert_eq!(p.matlist(), r.matlist());
}
