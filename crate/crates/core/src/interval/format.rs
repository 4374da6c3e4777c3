//! Decimal and hexadecimal conversions for interval endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use super::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecimalParseError {
    #[error("malformed decimal literal {0:?}")]
    Malformed(String),
    #[error("decimal literal {0:?} is out of binary64 range")]
    OutOfRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HexParseError {
    #[error("malformed hexadecimal float {0:?}")]
    Malformed(String),
    #[error("hexadecimal float {0:?} is not exactly representable in binary64")]
    Inexact(String),
}

/// Exact rational value of a decimal literal (`-12.5e-3`, `0.159154943`, ...).
fn parse_decimal_exact(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    let mut value = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    if neg {
        value = -value;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::from_integer(value * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(value, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

/// Tightest binary64 enclosure of a decimal literal.
pub(crate) fn decimal_enclosure(s: &str) -> Result<(f64, f64), DecimalParseError> {
    let exact =
        parse_decimal_exact(s).ok_or_else(|| DecimalParseError::Malformed(s.to_string()))?;
    let f: f64 = s
        .trim()
        .parse()
        .map_err(|_| DecimalParseError::Malformed(s.to_string()))?;
    if !f.is_finite() {
        return Err(DecimalParseError::OutOfRange(s.to_string()));
    }
    let nearest = BigRational::from_float(f).expect("finite");
    let (lo, hi) = match nearest.cmp(&exact) {
        std::cmp::Ordering::Equal => (f, f),
        std::cmp::Ordering::Greater => (f.next_down(), f),
        std::cmp::Ordering::Less => (f, f.next_up()),
    };
    if !lo.is_finite() || !hi.is_finite() {
        return Err(DecimalParseError::OutOfRange(s.to_string()));
    }
    Ok((lo + 0.0, hi + 0.0))
}

/// C99-style hexadecimal literal (`0x1.8p-1`) that round-trips bit-exactly.
pub fn format_hex(x: f64) -> String {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return format!("{sign}inf");
    }
    if exp_bits == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if exp_bits == 0 {
        (0, -1022)
    } else {
        (1, exp_bits - 1023)
    };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    let dot = if digits.is_empty() { "" } else { "." };
    format!("{sign}0x{lead}{dot}{digits}p{exp:+}")
}

/// Parses a hexadecimal float. Literals that would need rounding are
/// rejected, so the result is always the exact written value.
pub fn parse_hex(s: &str) -> Result<f64, HexParseError> {
    let bad = || HexParseError::Malformed(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let body = body
        .strip_prefix("0x")
        .or_else(|| body.strip_prefix("0X"))
        .ok_or_else(bad)?;
    let (mant, exp) = match body.find(['p', 'P']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let mut m: u128 = 0;
    let mut shift: i64 = exp;
    for c in int_part.chars().chain(frac_part.chars()) {
        let d = c.to_digit(16).ok_or_else(bad)? as u128;
        if m >> 120 != 0 {
            return Err(HexParseError::Inexact(s.to_string()));
        }
        m = (m << 4) | d;
    }
    shift -= 4 * frac_part.len() as i64;
    let signed = |v: f64| if neg { -v } else { v };
    if m == 0 {
        return Ok(signed(0.0));
    }
    // normalize so the leading one sits at bit 52
    let lz = m.leading_zeros() as i64;
    let top = 127 - lz;
    let mut e = shift + top;
    let mut mant = if top > 52 {
        let drop = top - 52;
        if m & ((1u128 << drop) - 1) != 0 {
            return Err(HexParseError::Inexact(s.to_string()));
        }
        m >> drop
    } else {
        m << (52 - top)
    } as u64;
    if e > 1023 {
        return Err(HexParseError::Inexact(s.to_string()));
    }
    if e < -1022 {
        let drop = -1022 - e;
        if drop > 53 || mant & ((1u64 << drop) - 1) != 0 {
            return Err(HexParseError::Inexact(s.to_string()));
        }
        mant >>= drop;
        e = -1023;
    }
    let bits = if e == -1023 {
        mant
    } else {
        (((e + 1023) as u64) << 52) | (mant & ((1u64 << 52) - 1))
    };
    Ok(signed(f64::from_bits(bits)))
}

fn scaled_floor(x: f64, digits: u32, ceil: bool) -> BigInt {
    let r = BigRational::from_float(x).expect("finite") * BigRational::from_integer(
        num_traits::pow(BigInt::from(10u32), digits as usize),
    );
    if ceil {
        r.ceil().to_integer()
    } else {
        r.floor().to_integer()
    }
}

fn render_fixed(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let mut s = n.abs().to_str_radix(10);
    let d = digits as usize;
    if s.len() <= d {
        s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
    }
    let (i, f) = s.split_at(s.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{i}")
    } else {
        format!("{sign}{i}.{f}")
    }
}

/// Compact rendering `0.2198099931_{17}^{39}` for `[0.219809993117,
/// 0.219809993139]`; the lower endpoint is rounded down and the upper one up.
pub fn compact_decimal(x: Interval) -> String {
    if x.is_point() {
        return format!("{}", x.lo());
    }
    let w = x.hi() - x.lo();
    let digits = ((-w.log10()).ceil() + 1.0).clamp(1.0, 340.0) as u32;
    let lo = render_fixed(&scaled_floor(x.lo(), digits, false), digits);
    let hi = render_fixed(&scaled_floor(x.hi(), digits, true), digits);
    if lo.len() != hi.len() || lo.starts_with('-') != hi.starts_with('-') {
        return format!("[{lo}, {hi}]");
    }
    let common = lo
        .bytes()
        .zip(hi.bytes())
        .take_while(|(a, b)| a == b)
        .count();
    // keep the split inside the fractional digits
    let dot = lo.find('.').map_or(lo.len(), |i| i + 1);
    if common < dot {
        return format!("[{lo}, {hi}]");
    }
    format!("{}_{{{}}}^{{{}}}", &lo[..common], &lo[common..], &hi[common..])
}
