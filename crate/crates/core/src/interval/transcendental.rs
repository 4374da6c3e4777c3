//! `sin(2πt)`, `cos(2πt)` and angle enclosures.
//!
//! Trust assumption: the platform `sin`, `cos` and `atan2` are faithful to
//! within one ulp. The argument `2πt` itself carries a few ulps of relative
//! error after exact reduction of `t` to `[0, 1/4]`, so point values are
//! padded by [`SIN_PAD_ULPS`] on each side.

use super::round::{step_down, step_up};
use super::{Interval, IntervalError, INV_TWO_PI};

const SIN_PAD_ULPS: u32 = 6;
const ATAN_PAD_ULPS: u32 = 2;

/// Below this reduced argument the relative error bound on the product
/// `2π·a` is not valid (subnormal range).
const TINY_ARG: f64 = 1.0e-290;

/// Beyond this magnitude integer offsets near `t` are no longer exact.
const LARGE_ARG: f64 = 1.0e15;

fn clip_unit(lo: f64, hi: f64) -> Interval {
    Interval {
        lo: lo.max(-1.0),
        hi: hi.min(1.0),
    }
}

/// Enclosure of `sin(2πa)` for `a` in `[0, 1/4]`.
fn sin_quarter(a: f64) -> (f64, f64) {
    debug_assert!((0.0..=0.25).contains(&a));
    if a == 0.0 {
        return (0.0, 0.0);
    }
    if a == 0.25 {
        return (1.0, 1.0);
    }
    if a < TINY_ARG {
        // 0 < sin(2πa) < 7a
        return (0.0, super::round::mul_up(7.0, a));
    }
    let y = (std::f64::consts::TAU * a).sin();
    (step_down(y, SIN_PAD_ULPS).max(0.0), step_up(y, SIN_PAD_ULPS))
}

/// Enclosure of `cos(2πa)` for `a` in `[0, 1/8]`.
fn cos_eighth(a: f64) -> (f64, f64) {
    debug_assert!((0.0..=0.125).contains(&a));
    if a == 0.0 {
        return (1.0, 1.0);
    }
    let y = (std::f64::consts::TAU * a).cos();
    (step_down(y, SIN_PAD_ULPS), step_up(y, SIN_PAD_ULPS).min(1.0))
}

/// Enclosure of `sin(2πt)` at a single point.
pub(crate) fn sin_2pi_point(t: f64) -> (f64, f64) {
    // exact: t - round(t) is representable for every finite t
    let r = t - t.round();
    let a = r.abs();
    let (lo, hi) = if a <= 0.25 {
        sin_quarter(a)
    } else {
        // Sterbenz: 0.5 - a is exact for a in [0.25, 0.5]
        sin_quarter(0.5 - a)
    };
    if r < 0.0 {
        (-hi, -lo)
    } else {
        (lo, hi)
    }
}

/// Enclosure of `cos(2πt)` at a single point.
pub(crate) fn cos_2pi_point(t: f64) -> (f64, f64) {
    let a = (t - t.round()).abs();
    if a <= 0.125 {
        cos_eighth(a)
    } else if a < 0.375 {
        // cos(2πa) = sin(2π(1/4 - a)); the difference is exact for a >= 1/8
        sin_2pi_point(0.25 - a)
    } else {
        let (lo, hi) = cos_eighth(0.5 - a);
        (-hi, -lo)
    }
}

/// Whether `[lo, hi]` (width < 1) contains `c + k` for some integer `k`.
fn contains_lattice_point(lo: f64, hi: f64, c: f64) -> bool {
    let k = lo.floor();
    [k - 1.0, k, k + 1.0]
        .iter()
        .any(|&k| lo <= k + c && k + c <= hi)
}

pub(crate) fn sin_2pi(x: Interval) -> Interval {
    if x.hi - x.lo >= 1.0 || x.mag() > LARGE_ARG {
        return Interval::UNIT;
    }
    let (a_lo, a_hi) = sin_2pi_point(x.lo);
    let (b_lo, b_hi) = sin_2pi_point(x.hi);
    let mut lo = a_lo.min(b_lo);
    let mut hi = a_hi.max(b_hi);
    if contains_lattice_point(x.lo, x.hi, 0.25) {
        hi = 1.0;
    }
    if contains_lattice_point(x.lo, x.hi, 0.75) {
        lo = -1.0;
    }
    clip_unit(lo, hi)
}

pub(crate) fn cos_2pi(x: Interval) -> Interval {
    if x.hi - x.lo >= 1.0 || x.mag() > LARGE_ARG {
        return Interval::UNIT;
    }
    let (a_lo, a_hi) = cos_2pi_point(x.lo);
    let (b_lo, b_hi) = cos_2pi_point(x.hi);
    let mut lo = a_lo.min(b_lo);
    let mut hi = a_hi.max(b_hi);
    if contains_lattice_point(x.lo, x.hi, 0.0) {
        hi = 1.0;
    }
    if contains_lattice_point(x.lo, x.hi, 0.5) {
        lo = -1.0;
    }
    clip_unit(lo, hi)
}

/// Turn angle of a single corner, padded, in `[-1/2, 1/2]`.
fn corner_turns(y: f64, x: f64) -> Result<Interval, IntervalError> {
    let t = y.atan2(x);
    let a = Interval {
        lo: step_down(t, ATAN_PAD_ULPS),
        hi: step_up(t, ATAN_PAD_ULPS),
    }
    .mul(INV_TWO_PI)?;
    Ok(Interval {
        lo: a.lo.max(-0.5),
        hi: a.hi.min(0.5),
    })
}

pub(crate) fn atan2_circle(y: Interval, x: Interval) -> Result<Interval, IntervalError> {
    if x.contains_zero() && y.contains_zero() {
        return Err(IntervalError::OriginInRectangle);
    }
    // A rectangle touching or crossing the negative x-axis is measured on
    // [0, 1): corners below the axis move up one turn. Using the same
    // per-corner enclosures on both branches keeps the result isotone.
    let cut = y.contains_zero() && x.hi < 0.0;
    let mut out: Option<Interval> = None;
    for &cy in &[y.lo, y.hi] {
        for &cx in &[x.lo, x.hi] {
            let mut a = corner_turns(cy, cx)?;
            if cut && a.lo < 0.0 {
                a = a.add_int(1)?;
            }
            out = Some(out.map_or(a, |o| o.hull(a)));
        }
    }
    Ok(out.expect("four corners"))
}
