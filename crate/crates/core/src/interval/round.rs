//! Directed rounding on top of round-to-nearest.
//!
//! Every helper computes the nearest result and then uses an error-free
//! transformation to decide whether the exact value lies above or below it.
//! The endpoint is stepped to its neighbour only when the exact value is on
//! the far side, so exact operations stay exact.

/// Below this magnitude the error-free transformations may lose their
/// exactness to underflow; both directions are stepped unconditionally.
const TINY: f64 = 1.0e-290;

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// Sign of `exact - p` for `p = fl(a * b)`; `None` when the residual is not
/// trustworthy.
#[inline]
fn mul_residual_sign(a: f64, b: f64, p: f64) -> Option<f64> {
    if a == 0.0 || b == 0.0 {
        return Some(0.0);
    }
    if p.abs() < TINY {
        return None;
    }
    Some(a.mul_add(b, -p))
}

#[inline]
pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    match mul_residual_sign(a, b, p) {
        Some(e) if e >= 0.0 => p,
        _ => p.next_down(),
    }
}

#[inline]
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    match mul_residual_sign(a, b, p) {
        Some(e) if e <= 0.0 => p,
        _ => p.next_up(),
    }
}

/// Sign of `a / b - q` for `q = fl(a / b)`.
#[inline]
fn div_residual_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if a == 0.0 {
        return Some(0.0);
    }
    if q.abs() < TINY || a.abs() < TINY {
        return None;
    }
    // r = a - q*b is exact; sign(a/b - q) = sign(r / b)
    let r = (-q).mul_add(b, a);
    Some(if b > 0.0 { r } else { -r })
}

#[inline]
pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_residual_sign(a, b, q) {
        Some(e) if e >= 0.0 => q,
        _ => q.next_down(),
    }
}

#[inline]
pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_residual_sign(a, b, q) {
        Some(e) if e <= 0.0 => q,
        _ => q.next_up(),
    }
}

/// Steps `x` down by `n` representable values.
#[inline]
pub(crate) fn step_down(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

/// Steps `x` up by `n` representable values.
#[inline]
pub(crate) fn step_up(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sums_are_not_widened() {
        assert_eq!(add_down(1.0, 2.0), 3.0);
        assert_eq!(add_up(1.0, 2.0), 3.0);
        assert_eq!(mul_down(3.0, 0.5), 1.5);
        assert_eq!(mul_up(3.0, 0.5), 1.5);
        assert_eq!(div_down(1.0, 4.0), 0.25);
        assert_eq!(div_up(1.0, 4.0), 0.25);
    }

    #[test]
    fn inexact_results_bracket_the_exact_value() {
        // 0.1 + 0.2 rounds up to 0.30000000000000004; the exact sum is below it.
        let lo = add_down(0.1, 0.2);
        let hi = add_up(0.1, 0.2);
        assert!(lo < hi);
        assert_eq!(hi, 0.1 + 0.2);
        assert_eq!(lo, (0.1f64 + 0.2).next_down());

        let lo = div_down(1.0, 3.0);
        let hi = div_up(1.0, 3.0);
        assert_eq!(hi, lo.next_up());
        assert!(3.0 * lo <= 1.0 && 3.0 * hi >= 1.0);
    }

    #[test]
    fn negative_divisor_flips_residual() {
        let lo = div_down(1.0, -3.0);
        let hi = div_up(1.0, -3.0);
        assert_eq!(hi, lo.next_up());
        assert!(lo < -1.0 / 3.0 + 1e-17);
    }

    #[test]
    fn underflow_is_stepped_both_ways() {
        let a = 1e-200;
        assert!(mul_down(a, a) < 0.0);
        assert!(mul_up(a, a) > 0.0);
    }
}
