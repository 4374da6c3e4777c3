//! Strategies and per-case checks for the interval kernel, shared by the
//! property suites and the acceptance run.

#![allow(dead_code)]

use super::hiprec;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError};
use rotnum::interval::atan2_circle;
use rotnum::{Interval, IntervalError};

pub const CASES: u32 = 10_000;

pub fn config() -> Config {
    Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    }
}

/// Finite floats over many binades, plus small integers and exact zeros.
pub fn scalar() -> impl Strategy<Value = f64> {
    prop_oneof![
        4 => -1.0e3..1.0e3f64,
        2 => (-60i32..20, -1.0..1.0f64).prop_map(|(e, m)| m * 2f64.powi(e)),
        1 => (-8i32..8).prop_map(f64::from),
    ]
}

pub fn interval() -> impl Strategy<Value = Interval> {
    prop_oneof![
        (scalar(), scalar()).prop_map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap()),
        (scalar(), 0.0..1.0e-6f64).prop_map(|(a, w)| Interval::new(a, a + w).unwrap()),
        scalar().prop_map(Interval::point),
    ]
}

/// A point of `x` chosen by `u ∈ [0, 1]`.
pub fn pick(x: Interval, u: f64) -> f64 {
    (x.lo() + u * (x.hi() - x.lo())).clamp(x.lo(), x.hi())
}

/// A sub-interval of `x` chosen by `u, v ∈ [0, 1]`.
pub fn sub_interval(x: Interval, u: f64, v: f64) -> Interval {
    let (a, b) = (pick(x, u), pick(x, v));
    Interval::new(a.min(b), a.max(b)).unwrap()
}

pub fn exact(x: f64) -> BigRational {
    hiprec::rational(x)
}

pub fn contains_exact(r: Interval, v: &BigRational) -> bool {
    hiprec::encloses_exact(r.lo(), r.hi(), v)
}

pub type BinOp = fn(Interval, Interval) -> Result<Interval, IntervalError>;

pub fn check_binary(
    op: BinOp,
    exact_op: fn(&BigRational, &BigRational) -> BigRational,
    x: Interval,
    y: Interval,
    u: [f64; 4],
) -> Result<(), TestCaseError> {
    let r = match op(x, y) {
        Ok(r) => r,
        Err(IntervalError::Overflow) => return Ok(()),
        Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
    };
    let (s, t) = (pick(x, u[0]), pick(y, u[1]));
    prop_assert!(contains_exact(r, &exact_op(&exact(s), &exact(t))), "{x:?} {y:?} -> {r:?} at ({s}, {t})");
    let (xs, ys) = (sub_interval(x, u[0], u[2]), sub_interval(y, u[1], u[3]));
    let inner = op(xs, ys).unwrap();
    prop_assert!(inner.subset(r), "isotonicity: {inner:?} not in {r:?}");
    Ok(())
}


pub fn check_sin(x: Interval, u: [f64; 3]) -> Result<(), TestCaseError> {
    let r = x.sin_2pi();
    prop_assert!(r.lo() >= -1.0 && r.hi() <= 1.0);
    let t = pick(x, u[0]);
    if t.abs() < 1.0e6 {
        prop_assert!(hiprec::encloses(r.lo(), r.hi(), &hiprec::sin_2pi(t)), "sin_2pi({t}) not in {r:?}");
    }
    let inner = sub_interval(x, u[1], u[2]).sin_2pi();
    prop_assert!(inner.subset(r));
    Ok(())
}

pub fn check_cos(x: Interval, u: [f64; 3]) -> Result<(), TestCaseError> {
    let r = x.cos_2pi();
    prop_assert!(r.lo() >= -1.0 && r.hi() <= 1.0);
    let t = pick(x, u[0]);
    if t.abs() < 1.0e6 {
        prop_assert!(hiprec::encloses(r.lo(), r.hi(), &hiprec::cos_2pi(t)), "cos_2pi({t}) not in {r:?}");
    }
    let inner = sub_interval(x, u[1], u[2]).cos_2pi();
    prop_assert!(inner.subset(r));
    Ok(())
}

pub fn check_atan2(y: Interval, x: Interval, u: [f64; 4]) -> Result<(), TestCaseError> {
    if x.contains_zero() && y.contains_zero() {
        prop_assert_eq!(atan2_circle(y, x), Err(IntervalError::OriginInRectangle));
        return Ok(());
    }
    let r = atan2_circle(y, x).unwrap();
    prop_assert!(r.lo() >= -0.5 && r.hi() <= 1.0);
    let (ys, xs) = (pick(y, u[0]), pick(x, u[1]));
    let v = hiprec::atan2_turns(ys, xs);
    let turn = hiprec::one();
    let hit = [&v - &turn, v.clone(), &v + &turn]
        .iter()
        .any(|w| hiprec::encloses(r.lo(), r.hi(), w));
    prop_assert!(hit, "angle of ({xs}, {ys}) not in {r:?}");
    let inner = atan2_circle(sub_interval(y, u[0], u[2]), sub_interval(x, u[1], u[3])).unwrap();
    let shifted = [inner, inner.add_int(1).unwrap(), inner.sub_int(1).unwrap()];
    prop_assert!(shifted.iter().any(|s| s.subset(r)), "isotonicity: {inner:?} vs {r:?}");
    Ok(())
}

pub fn check_div(x: Interval, y: Interval, u: [f64; 4]) -> Result<(), TestCaseError> {
    if y.contains_zero() {
        prop_assert_eq!(x.div(y), Err(IntervalError::DivisionByZero));
        Ok(())
    } else {
        check_binary(Interval::div, |a, b| a / b, x, y, u)
    }
}
