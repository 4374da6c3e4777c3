//! Checks on maps, certified orbits and continued-fraction runs, shared by
//! the property suites and the acceptance run.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::hiprec;
use rotnum::rotation::{width_diagnostic, RotationResult};
use rotnum::shooting::{approximate_orbit, newton_refine, INITIAL_RADIUS};
use rotnum::{rho_cf, Interval, MapDescriptor, Status};

pub fn arnold(alpha: f64, eps: f64) -> MapDescriptor {
    MapDescriptor::arnold(Interval::point(alpha), Interval::point(eps)).unwrap()
}

/// Reference value of `x + α − ε sin(2πx)`.
pub fn arnold_reference(alpha: f64, eps: f64, x: f64) -> BigInt {
    hiprec::from_f64(x) + hiprec::from_f64(alpha) - hiprec::mul(&hiprec::from_f64(eps), &hiprec::sin_2pi(x))
}

/// `F(x + k) = F(x) + k` and point containment against the reference.
pub fn check_lift(alpha: f64, eps: f64, x: f64, k: i64) -> Result<(), TestCaseError> {
    let m = arnold(alpha, eps);
    let fx = m.lift_eval(Interval::point(x)).unwrap();
    prop_assert!(hiprec::encloses(fx.lo(), fx.hi(), &arnold_reference(alpha, eps, x)), "F({x}) = {fx:?}");
    let shifted = Interval::point(x).add_int(k).unwrap();
    if shifted.is_point() {
        let fxk = m.lift_eval(shifted).unwrap();
        prop_assert!(fxk.overlaps(fx.add_int(k).unwrap()), "F(x+{k}) = {fxk:?}, F(x)+{k} = {fx:?}");
        prop_assert!(fxk.width() <= 16.0 * f64::EPSILON * (2.0 + shifted.mag()));
    }
    Ok(())
}

/// `F(b) − F(a) ∈ F'([a, b])·(b − a)` and monotonicity for `2π|ε| ≤ 1`.
pub fn check_mvt(alpha: f64, eps: f64, a: f64, b: f64) -> Result<(), TestCaseError> {
    let (a, b) = (a.min(b), a.max(b));
    let m = arnold(alpha, eps);
    let fa = m.lift_eval(Interval::point(a)).unwrap();
    let fb = m.lift_eval(Interval::point(b)).unwrap();
    let slope = m.lift_deriv(Interval::new(a, b).unwrap()).unwrap();
    let dx = Interval::point(b).sub(Interval::point(a)).unwrap();
    let predicted = slope.mul(dx).unwrap();
    let actual = fb.sub(fa).unwrap();
    prop_assert!(predicted.overlaps(actual), "{actual:?} vs {predicted:?}");
    prop_assert!(slope.lo() >= 0.0 || slope.contains_zero());
    prop_assert!(fb.hi() >= fa.lo(), "F not monotone on [{a}, {b}]");
    // reference check of the derivative at the midpoint
    let mid = 0.5 * (a + b);
    let d = m.lift_deriv(Interval::point(mid)).unwrap();
    let two_pi = hiprec::pi() * BigInt::from(2);
    let reference = hiprec::one() - hiprec::mul(&hiprec::mul(&hiprec::from_f64(eps), &two_pi), &hiprec::cos_2pi(mid));
    prop_assert!(hiprec::encloses(d.lo(), d.hi(), &reference), "F'({mid}) = {d:?}");
    Ok(())
}

/// Delayed logistic image against exact rational arithmetic.
pub fn check_dlm_image(lambda: f64, x: f64, y: f64) -> Result<(), TestCaseError> {
    let m = MapDescriptor::delayed_logistic(Interval::point(lambda), true).unwrap();
    let img = m.plane_eval([Interval::point(x), Interval::point(y)]).unwrap();
    let (xr, yr, lr) = (hiprec::rational(x), hiprec::rational(y), hiprec::rational(lambda));
    let second = &lr * &yr * (BigRational::from_integer(1.into()) - &xr);
    prop_assert!(hiprec::encloses_exact(img[0].lo(), img[0].hi(), &yr));
    prop_assert!(hiprec::encloses_exact(img[1].lo(), img[1].hi(), &second), "{img:?}");
    let j = m.plane_jacobian([Interval::point(x), Interval::point(y)]).unwrap();
    let dy_dx = -(&lr * &yr);
    let dy_dy = &lr * (BigRational::from_integer(1.into()) - &xr);
    prop_assert!(j[0][0].contains(0.0) && j[0][1].contains(1.0));
    prop_assert!(hiprec::encloses_exact(j[1][0].lo(), j[1][0].hi(), &dy_dx));
    prop_assert!(hiprec::encloses_exact(j[1][1].lo(), j[1][1].hi(), &dy_dy));
    Ok(())
}

/// Newton-certified orbit against plain interval iteration of the lift.
pub fn check_orbit_soundness(alpha: f64, eps: f64, x0: f64, n: usize) -> Result<(), TestCaseError> {
    let m = arnold(alpha, eps);
    let approx = approximate_orbit(&m, x0, n).unwrap();
    let enc = newton_refine(&m, x0, &approx, INITIAL_RADIUS)
        .map_err(|e| TestCaseError::fail(format!("certification failed: {e}")))?;
    let mut direct = Interval::point(x0);
    for k in 1..=n {
        direct = m.lift_eval(direct).unwrap();
        let certified = enc.lifted(k).unwrap();
        prop_assert!(certified.overlaps(direct), "k={k}: {certified:?} vs {direct:?}");
        prop_assert!(certified.width() <= direct.width().max(4.0 * INITIAL_RADIUS));
    }
    Ok(())
}

/// Exact continued fraction of a float in `(0, 1)`.
pub fn exact_cf(x: f64, terms: usize) -> Vec<u64> {
    let mut r = hiprec::rational(x);
    let mut out = Vec::new();
    while out.len() < terms && !r.is_zero() {
        let inv = r.recip();
        let a = inv.floor();
        out.push(a.to_integer().to_u64().unwrap());
        r = inv - a;
    }
    out
}

/// Determinant identity, stage nesting and the width diagnostic on one run.
pub fn check_cf_structure(r: &RotationResult) -> Result<(), String> {
    let Some(cf) = &r.cf else { return Ok(()) };
    if let Some(d) = cf.determinants().iter().find(|&&d| d != 1) {
        return Err(format!("determinant {d} ≠ 1"));
    }
    let stages = cf.stages().map_err(|e| e.to_string())?;
    for w in stages.windows(2) {
        if !w[1].enclosure.subset(w[0].enclosure) {
            return Err(format!("stage {} not nested in stage {}", w[1].i, w[0].i));
        }
    }
    if let Some(last) = stages.last() {
        if !r.enclosure.overlaps(last.enclosure) {
            return Err("final enclosure misses the last stage".into());
        }
    }
    for w in width_diagnostic(cf).map_err(|e| e.to_string())? {
        if !w.holds {
            return Err(format!("width check fails at stage {}: {w:?}", w.stage));
        }
    }
    Ok(())
}

/// Rigid rotation by a dyadic rational terminates at that rational.
pub fn check_rigid_dyadic(k: u64, bits: u32) -> Result<(), TestCaseError> {
    let den = 1u64 << bits;
    let alpha = k as f64 / den as f64;
    let g = k.gcd(&den);
    let r = rho_cf(&MapDescriptor::rigid(Interval::point(alpha)), 1 << 16, 64).unwrap();
    prop_assert_eq!(r.status, Status::Rational, "alpha = {}", alpha);
    let rat = r.rational.as_ref().unwrap();
    prop_assert_eq!((rat.p as u64, rat.q), (k / g, den / g));
    prop_assert!(r.enclosure.contains(alpha));
    check_cf_structure(&r).map_err(TestCaseError::fail)?;
    Ok(())
}

/// Coefficients of a rigid rotation agree with the exact expansion of α.
pub fn check_rigid_coefficients(alpha: f64, stages: usize) -> Result<(), TestCaseError> {
    let r = rho_cf(&MapDescriptor::rigid(Interval::point(alpha)), 1 << 22, stages).unwrap();
    let cf = r.cf.as_ref().unwrap();
    let reference = exact_cf(alpha, cf.a.len());
    if r.status == Status::Rational {
        return Ok(());
    }
    prop_assert_eq!(&cf.a, &reference, "alpha = {}", alpha);
    prop_assert!(r.enclosure.contains(alpha));
    check_cf_structure(&r).map_err(TestCaseError::fail)?;
    Ok(())
}
