//! Outward-rounded interval arithmetic over binary64.
//!
//! Every operation returns an interval that contains the exact real result
//! for every choice of real operands inside the input intervals. Directed
//! rounding is emulated in round-to-nearest (see [`round`]), so the kernel is
//! portable and thread-safe; no hardware rounding mode is ever changed.
//!
//! Endpoints are always finite. An operation whose result would overflow
//! returns [`IntervalError::Overflow`] instead of storing an infinity.

mod format;
mod round;
mod transcendental;

use std::fmt;
use std::ops::Neg;

use thiserror::Error;

pub use format::{
    compact_decimal, format_hex, parse_hex, DecimalParseError, HexParseError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval overflow")]
    Overflow,
    #[error("division by interval containing zero")]
    DivisionByZero,
    #[error("origin in rectangle")]
    OriginInRectangle,
    #[error("invalid interval endpoints [{lo}, {hi}]")]
    InvalidEndpoints { lo: f64, hi: f64 },
    #[error(transparent)]
    Decimal(#[from] DecimalParseError),
}

/// A closed interval `[lo, hi]` with finite binary64 endpoints.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&compact_decimal(*self))
    }
}

/// 2π and 1/(2π) as enclosing intervals.
pub const TWO_PI: Interval = Interval {
    lo: 6.283_185_307_179_586,
    hi: 6.283_185_307_179_587,
};
pub const INV_TWO_PI: Interval = Interval {
    lo: 0.159_154_943_091_895_32,
    hi: 0.159_154_943_091_895_35,
};

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

    /// Builds `[lo, hi]`, rejecting NaN, infinite, or reversed endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            // normalize -0.0 so that bit-level equality matches value equality
            Ok(Interval {
                lo: lo + 0.0,
                hi: hi + 0.0,
            })
        } else {
            Err(IntervalError::InvalidEndpoints { lo, hi })
        }
    }

    /// The degenerate interval `[x, x]`.
    ///
    /// # Panics
    /// If `x` is not finite.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "interval endpoint must be finite, got {x}");
        Interval {
            lo: x + 0.0,
            hi: x + 0.0,
        }
    }

    /// Exact enclosure of an integer. Integers beyond 2^53 are rounded outward.
    pub fn from_int(n: i64) -> Self {
        let f = n as f64;
        // `as` rounds to nearest; compare back in i128 to detect inexactness
        let back = f as i128;
        let n = n as i128;
        if back == n {
            Interval::point(f)
        } else if back > n {
            Interval { lo: f.next_down(), hi: f }
        } else {
            Interval { lo: f, hi: f.next_up() }
        }
    }

    /// Enclosure of a `u64` (used for convergent numerators and denominators).
    pub fn from_u64(n: u64) -> Self {
        let f = n as f64;
        let back = f as u128;
        let n = n as u128;
        if back == n {
            Interval::point(f)
        } else if back > n {
            Interval { lo: f.next_down(), hi: f }
        } else {
            Interval { lo: f, hi: f.next_up() }
        }
    }

    /// Tightest binary64 interval enclosing a decimal literal such as
    /// `"0.159154943"`. Exactly representable decimals give a point.
    pub fn from_decimal(s: &str) -> Result<Self, IntervalError> {
        let (lo, hi) = format::decimal_enclosure(s)?;
        Ok(Interval { lo, hi })
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    fn checked(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_finite() && hi.is_finite() {
            Ok(Interval {
                lo: lo + 0.0,
                hi: hi + 0.0,
            })
        } else {
            Err(IntervalError::Overflow)
        }
    }

    pub fn add(self, rhs: Interval) -> Result<Self, IntervalError> {
        Self::checked(
            round::add_down(self.lo, rhs.lo),
            round::add_up(self.hi, rhs.hi),
        )
    }

    pub fn sub(self, rhs: Interval) -> Result<Self, IntervalError> {
        Self::checked(
            round::sub_down(self.lo, rhs.hi),
            round::sub_up(self.hi, rhs.lo),
        )
    }

    pub fn mul(self, rhs: Interval) -> Result<Self, IntervalError> {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = round::mul_down(a, c)
            .min(round::mul_down(a, d))
            .min(round::mul_down(b, c))
            .min(round::mul_down(b, d));
        let hi = round::mul_up(a, c)
            .max(round::mul_up(a, d))
            .max(round::mul_up(b, c))
            .max(round::mul_up(b, d));
        Self::checked(lo, hi)
    }

    pub fn div(self, rhs: Interval) -> Result<Self, IntervalError> {
        if rhs.lo <= 0.0 && rhs.hi >= 0.0 {
            return Err(IntervalError::DivisionByZero);
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = round::div_down(a, c)
            .min(round::div_down(a, d))
            .min(round::div_down(b, c))
            .min(round::div_down(b, d));
        let hi = round::div_up(a, c)
            .max(round::div_up(a, d))
            .max(round::div_up(b, c))
            .max(round::div_up(b, d));
        Self::checked(lo, hi)
    }

    /// `self - n` for an integer `n`, exact whenever representable.
    pub fn sub_int(self, n: i64) -> Result<Self, IntervalError> {
        if n == 0 {
            return Ok(self);
        }
        self.sub(Interval::from_int(n))
    }

    /// `self + n` for an integer `n`.
    pub fn add_int(self, n: i64) -> Result<Self, IntervalError> {
        if n == 0 {
            return Ok(self);
        }
        self.add(Interval::from_int(n))
    }

    /// `|x|` over the interval.
    pub fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval {
                lo: 0.0,
                hi: (-self.lo).max(self.hi),
            }
        }
    }

    /// Largest absolute value in the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// A point guaranteed to lie inside the interval.
    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Radius rounded up, so `mid ± rad` covers the interval.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        round::sub_up(m, self.lo).max(round::sub_up(self.hi, m))
    }

    /// Width `hi - lo`, rounded up.
    pub fn width(self) -> f64 {
        round::sub_up(self.hi, self.lo)
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    /// `other ⊆ self`.
    pub fn contains_interval(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `self ⊆ other`.
    pub fn subset(self, other: Interval) -> bool {
        other.contains_interval(self)
    }

    /// `self` lies in the interior of `other`.
    pub fn interior_subset(self, other: Interval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn hull(self, other: Interval) -> Self {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Intersection, or `None` when the intervals are disjoint.
    pub fn intersect(self, other: Interval) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn overlaps(self, other: Interval) -> bool {
        self.intersect(other).is_some()
    }

    /// Symmetric widening by an absolute radius, rounded outward.
    pub fn inflate(self, r: f64) -> Result<Self, IntervalError> {
        Self::checked(round::sub_down(self.lo, r), round::add_up(self.hi, r))
    }

    /// `[x - r, x + r]` rounded outward.
    pub fn ball(x: f64, r: f64) -> Result<Self, IntervalError> {
        Interval::point(x).inflate(r)
    }

    /// Widens by `n` representable values on each side.
    pub fn widen_ulps(self, n: u32) -> Result<Self, IntervalError> {
        Self::checked(round::step_down(self.lo, n), round::step_up(self.hi, n))
    }

    /// Strictly positive over the whole interval.
    pub fn is_positive(self) -> bool {
        self.lo > 0.0
    }

    /// Strictly negative over the whole interval.
    pub fn is_negative(self) -> bool {
        self.hi < 0.0
    }

    /// Enclosure of `sin(2πt)` for all `t` in the interval, within `[-1, 1]`.
    pub fn sin_2pi(self) -> Self {
        transcendental::sin_2pi(self)
    }

    /// Enclosure of `cos(2πt)` for all `t` in the interval, within `[-1, 1]`.
    pub fn cos_2pi(self) -> Self {
        transcendental::cos_2pi(self)
    }

    /// Enclosure, in turns, of the angle of every point of the rectangle
    /// `x × y`. See [`atan2_circle`].
    pub fn atan2_circle(y: Interval, x: Interval) -> Result<Self, IntervalError> {
        transcendental::atan2_circle(y, x)
    }
}

/// Angle of every point of the rectangle `x × y`, measured counter-clockwise
/// from the positive x-axis in turns.
///
/// The result normally lies in `[-1/2, 1/2]`; a rectangle that crosses the
/// negative x-axis is measured on the branch `[0, 1)` instead, so the result
/// is always a connected range of turns.
pub fn atan2_circle(y: Interval, x: Interval) -> Result<Interval, IntervalError> {
    transcendental::atan2_circle(y, x)
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}
