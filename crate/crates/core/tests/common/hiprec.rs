//! Fixed-point reference values with 256 fractional bits.
//!
//! Values are `BigInt`s `v` standing for `v · 2^-256`. Every function here
//! is accurate to a few units of `2^-240`, far below binary64 resolution, so
//! a binary64 enclosure can be checked against them with [`err`] slack.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

pub const BITS: u32 = 256;

/// Slack, in fixed-point units, covering truncation in the series below.
pub fn err() -> BigInt {
    BigInt::one() << 16
}

pub fn one() -> BigInt {
    BigInt::one() << BITS
}

/// Exact value of a float as a rational.
pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `floor(r · 2^256)`.
pub fn fixed(r: &BigRational) -> BigInt {
    (r.numer() << BITS).div_floor(r.denom())
}

pub fn from_f64(x: f64) -> BigInt {
    fixed(&rational(x))
}

pub fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << BITS).div_floor(b)
}

/// `atan(1/n)` by its alternating series.
fn atan_inv(n: u32) -> BigInt {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut power = one() / &n;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
    }
    sum
}

pub fn pi() -> &'static BigInt {
    static PI: OnceLock<BigInt> = OnceLock::new();
    PI.get_or_init(|| atan_inv(5) * 16 - atan_inv(239) * 4)
}

/// `(sin x, cos x)` by Taylor series; intended for `|x| ≤ 2π`.
fn sin_cos(x: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::zero();
    let mut c = BigInt::zero();
    let mut term = one();
    let mut n = 0u32;
    loop {
        match n % 4 {
            0 => c += &term,
            1 => s += &term,
            2 => c -= &term,
            _ => s -= &term,
        }
        n += 1;
        term = mul(&term, x) / BigInt::from(n);
        if term.is_zero() {
            break;
        }
    }
    (s, c)
}

/// `2π · frac(t)` for a float `t`, reduced exactly.
fn turns_to_radians(t: f64) -> BigInt {
    let r = rational(t);
    let frac = &r - r.floor();
    mul(&(pi() * 2), &fixed(&frac))
}

pub fn sin_2pi(t: f64) -> BigInt {
    sin_cos(&turns_to_radians(t)).0
}

pub fn cos_2pi(t: f64) -> BigInt {
    sin_cos(&turns_to_radians(t)).1
}

fn sqrt(a: &BigInt) -> BigInt {
    (a << BITS).sqrt()
}

/// `atan(z)` for `|z| ≤ 1`, after two half-angle reductions.
fn atan(z: &BigInt) -> BigInt {
    if z.is_negative() {
        return -atan(&-z);
    }
    let mut z = z.clone();
    for _ in 0..2 {
        let d = one() + sqrt(&(one() + mul(&z, &z)));
        z = div(&z, &d);
    }
    let z2 = mul(&z, &z);
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = mul(&power, &z2);
        k += 1;
    }
    sum * 4
}

/// Angle of `(x, y)` in turns, in `(-1/2, 1/2]`.
pub fn atan2_turns(y: f64, x: f64) -> BigInt {
    assert!(x != 0.0 || y != 0.0);
    let (yr, xr) = (rational(y), rational(x));
    let pi = pi();
    let angle = if xr.abs() >= yr.abs() {
        let a = atan(&fixed(&(&yr / &xr)));
        if x > 0.0 {
            a
        } else if y >= 0.0 {
            a + pi
        } else {
            a - pi
        }
    } else {
        let a = atan(&fixed(&(&xr / &yr)));
        let half = pi / BigInt::from(2);
        if y > 0.0 {
            half - a
        } else {
            -half - a
        }
    };
    div(&angle, &(pi * 2))
}

/// Whether `[lo, hi]` contains the reference value up to [`err`].
pub fn encloses(lo: f64, hi: f64, v: &BigInt) -> bool {
    let e = err();
    from_f64(lo) <= v + &e && v - &e <= from_f64(hi)
}

/// Whether `[lo, hi]` contains the exact rational.
pub fn encloses_exact(lo: f64, hi: f64, v: &BigRational) -> bool {
    rational(lo) <= *v && *v <= rational(hi)
}

pub fn to_f64(v: &BigInt) -> f64 {
    let scale = 2f64.powi(-(BITS as i32));
    (v >> 200u32).to_f64().unwrap() * (scale * 2f64.powi(200))
}
