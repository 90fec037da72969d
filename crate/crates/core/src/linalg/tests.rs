use proptest::prelude::*;

use super::*;
use crate::algebra::{Exponent, Fp, PolyCtx, RatFunc, Rational, SparsePoly};
use crate::error::Error;

type P = SparsePoly<Rational>;
type R = RatFunc<Rational>;

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

fn to_ratfunc(m: &ExactMatrix<P>) -> ExactMatrix<R> {
    m.map(tctx(), |e| R::from_poly(e.clone()))
}

#[test]
fn example_kernel_vector() {
    let m = pm(vec![vec![c(1), a(), c(0)], vec![c(0), b(), c(1)]]);
    let expect = vec![a(), c(-1), b()];
    assert_eq!(kernel(&m).unwrap(), KernelResult::Vector(expect.clone()));
    let over_field = kernel(&to_ratfunc(&m)).unwrap();
    assert_eq!(over_field, KernelResult::Vector(expect.into_iter().map(R::from_poly).collect()));
}

#[test]
fn example_trivial_kernel() {
    let m = pm(vec![vec![a(), c(0)], vec![b(), c(1)]]);
    assert_eq!(kernel(&m).unwrap(), KernelResult::Trivial);
    assert_eq!(rank(&m), 2);
    assert_eq!(kernel(&to_ratfunc(&m)).unwrap(), KernelResult::Trivial);
    assert_eq!(rank(&to_ratfunc(&m)), 2);
}

#[test]
fn zero_one_by_one() {
    let m = pm(vec![vec![c(0)]]);
    assert_eq!(kernel(&m).unwrap(), KernelResult::Vector(vec![c(1)]));
    let q = ExactMatrix::from_rows((), 1, vec![vec![Rational::integer(0)]]);
    assert_eq!(kernel(&q).unwrap(), KernelResult::Vector(vec![Rational::integer(1)]));
    let empty: ExactMatrix<P> = ExactMatrix::zeros(tctx(), 0, 1);
    assert_eq!(kernel(&empty).unwrap(), KernelResult::Vector(vec![c(1)]));
}

#[test]
fn ranks() {
    let id: ExactMatrix<Rational> = ExactMatrix::identity((), 3);
    assert_eq!(rank(&id), 3);
    let z: ExactMatrix<Rational> = ExactMatrix::zeros((), 2, 3);
    assert_eq!(rank(&z), 0);
    assert_eq!(kernel(&z), Err(Error::UnexpectedNullity(3)));
}

#[test]
fn nonsingular_points() {
    let m = pm(vec![vec![a(), c(0)], vec![b(), c(1)]]);
    let q = |x: i64| Rational::integer(x);
    assert!(nonsingular_at(&m, &[q(1), q(0)]));
    assert!(!nonsingular_at(&m, &[q(0), q(1)]));
    let one = pm(vec![vec![c(1)]]);
    assert!(nonsingular_at(&one, &[q(7), q(-3)]));
}

#[test]
fn rational_and_prime_normalization() {
    let q = |n: i64, d: i64| Rational::new(n, d);
    let m = ExactMatrix::from_rows((), 3, vec![vec![q(2, 1), q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 3), q(-1, 1)]]);
    // x0 = -x1/2, x2 = x1/3
    let v = kernel(&m).unwrap();
    assert_eq!(v, KernelResult::Vector(vec![q(3, 1), q(-6, 1), q(-2, 1)]));
    let f = |v: i64| Fp::from_signed(v, 7);
    let m = ExactMatrix::from_rows(7, 2, vec![vec![f(2), f(3)]]);
    let v = kernel(&m).unwrap();
    assert_eq!(v, KernelResult::Vector(vec![f(1), f(4)]));
    assert!(m.annihilates(v.vector().unwrap()));
}

#[test]
fn prime_field_polynomials_are_monic() {
    let ctx = PolyCtx::new(2, 5u64);
    let s = SparsePoly::<Fp>::var(ctx, 0);
    let two = SparsePoly::from_i64(ctx, 2);
    let m = ExactMatrix::from_rows(ctx, 2, vec![vec![s.scale(&Fp::new(3, 5)), two]]);
    let KernelResult::Vector(v) = kernel(&m).unwrap() else { panic!() };
    assert!(m.annihilates(&v));
    assert!(v[0].is_one());
}

fn entry() -> impl Strategy<Value = P> {
    proptest::collection::vec((-2i64..3, 0u32..2, 0u32..2), 0..3).prop_map(|ts| {
        P::from_terms(tctx(), ts.into_iter().map(|(k, i, j)| (Exponent::from([i, j]), Rational::integer(k))))
    })
}

fn matrix() -> impl Strategy<Value = ExactMatrix<P>> {
    (1usize..4, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(entry(), c), r).prop_map(move |rows| pm(rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn fraction_free_agrees_with_field_path(m in matrix()) {
        let ff = kernel(&m);
        let fd = kernel(&to_ratfunc(&m));
        prop_assert_eq!(rank(&m), rank(&to_ratfunc(&m)));
        match (ff, fd) {
            (Ok(KernelResult::Trivial), Ok(KernelResult::Trivial)) => {}
            (Ok(KernelResult::Vector(v)), Ok(KernelResult::Vector(w))) => {
                prop_assert!(m.annihilates(&v));
                prop_assert!(v.iter().any(|e| !e.is_zero()));
                let v2: Vec<R> = v.iter().cloned().map(R::from_poly).collect();
                prop_assert_eq!(v2, w);
                // rank + nullity = columns
                prop_assert_eq!(rank(&m) + 1, m.cols());
                // the support columns are a minimal dependency
                let supp: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                prop_assert_eq!(rank(&m.select_columns(&supp)) + 1, supp.len());
            }
            (Err(Error::UnexpectedNullity(k)), Err(Error::UnexpectedNullity(l))) => {
                prop_assert_eq!(k, l);
                prop_assert_eq!(rank(&m) + k, m.cols());
            }
            (x, y) => prop_assert!(false, "paths disagree: {:?} vs {:?}", x, y),
        }
    }
}
