//! Scalar backends.
//!
//! Everything numeric in the crate is generic over [`Real`]. Three backends
//! are provided: plain `f64`, [`DoubleDouble`] (106 bits) and [`Octuple`]
//! (237 bits, backed by the `f256` crate).

mod dd;
mod oct;

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, Zero};

pub use dd::DoubleDouble;
pub use oct::Octuple;

/// Floating-point scalar used throughout the crate.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Significand width in bits.
    const MANTISSA_BITS: u32;

    /// Short name used in reports.
    const NAME: &'static str;

    /// Exact conversion from an `f64`.
    fn lit(x: f64) -> Self;

    /// Parses a decimal string such as `-1.25e-3`.
    fn parse_decimal(s: &str) -> Option<Self>;

    /// Scientific notation with `digits` significant digits.
    fn to_decimal(self, digits: usize) -> String;

    /// Exact decomposition `value = m * 2^e`; `None` for non-finite values.
    fn to_dyadic(self) -> Option<(BigInt, i64)>;

    /// Nearest `f64`.
    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Conversion from a small integer.
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer conversion")
    }

    /// Number of decimal digits that are meaningful at this precision.
    fn decimal_digits() -> usize {
        (Self::MANTISSA_BITS as f64 * std::f64::consts::LOG10_2).floor() as usize
    }
}

/// Rounds a big integer to `T`.
pub fn from_bigint<T: Real>(n: &BigInt) -> T {
    let (sign, digits) = n.to_u32_digits();
    let base = T::lit(4294967296.0);
    let mut acc = T::zero();
    for d in digits.iter().rev() {
        acc = acc * base + T::lit(*d as f64);
    }
    if sign == Sign::Minus {
        -acc
    } else {
        acc
    }
}

/// Rounds an exact rational to `T`.
pub fn from_rational<T: Real>(r: &BigRational) -> T {
    // Scale both parts so that the leading chunks carry full precision
    // without overflowing the exponent range.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let keep = T::MANTISSA_BITS as i64 + 64;
    let (num, nshift) = shrink(r.numer(), nb - keep);
    let (den, dshift) = shrink(r.denom(), db - keep);
    let q = from_bigint::<T>(&num) / from_bigint::<T>(&den);
    ldexp(q, nshift - dshift)
}

/// `x * 2^e` without intermediate overflow for large `|e|`.
pub fn ldexp<T: Real>(mut x: T, mut e: i64) -> T {
    let step = 512i64;
    while e > step {
        x = x * T::lit(2.0f64.powi(step as i32));
        e -= step;
    }
    while e < -step {
        x = x * T::lit(2.0f64.powi(-step as i32));
        e += step;
    }
    x * T::lit(2.0f64.powi(e as i32))
}

fn shrink(n: &BigInt, excess: i64) -> (BigInt, i64) {
    if excess > 0 {
        (n >> (excess as usize), excess)
    } else {
        (n.clone(), 0)
    }
}

/// Exact rational value of a finite scalar.
pub fn to_rational<T: Real>(x: T) -> Option<BigRational> {
    let (m, e) = x.to_dyadic()?;
    let one = BigInt::one();
    Some(if e >= 0 {
        BigRational::from_integer(m << (e as usize))
    } else {
        BigRational::new(m, one << ((-e) as usize))
    })
}

pub(crate) fn f64_dyadic(x: f64) -> Option<(BigInt, i64)> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some((BigInt::zero(), 0));
    }
    let (mant, exp, sign) = x.integer_decode();
    let m = BigInt::from(mant);
    Some((if sign < 0 { -m } else { m }, exp as i64))
}

/// Adds two dyadic numbers exactly.
pub(crate) fn dyadic_add(a: (BigInt, i64), b: (BigInt, i64)) -> (BigInt, i64) {
    let e = a.1.min(b.1);
    let ma = a.0 << ((a.1 - e) as usize);
    let mb = b.0 << ((b.1 - e) as usize);
    (ma + mb, e)
}

impl Real for f64 {
    const MANTISSA_BITS: u32 = 53;
    const NAME: &'static str = "f64";

    fn lit(x: f64) -> Self {
        x
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }

    fn to_decimal(self, digits: usize) -> String {
        format!("{:.*e}", digits.max(1) - 1, self)
    }

    fn to_dyadic(self) -> Option<(BigInt, i64)> {
        f64_dyadic(self)
    }
}

/// Splits a decimal literal into sign, digit string and decimal exponent.
/// `"-12.5e3"` becomes `(true, "125", 2)`.
pub(crate) fn split_decimal(s: &str) -> Option<(bool, String, i64)> {
    let s = s.trim();
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int, frac) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    Some((neg, digits, exp - frac.len() as i64))
}

/// Generic decimal parser built on exact big-integer arithmetic.
pub(crate) fn parse_via_rational<T: Real>(s: &str) -> Option<T> {
    let lower = s.trim().to_ascii_lowercase();
    match lower.trim_start_matches(['+', '-']) {
        "inf" | "infinity" => return Some(if lower.starts_with('-') { T::neg_infinity() } else { T::infinity() }),
        "nan" => return Some(T::nan()),
        _ => {}
    }
    let r = parse_rational(s)?;
    let v = from_rational::<T>(&r.abs());
    // keeps the sign of "-0"
    Some(if s.trim().starts_with('-') { -v } else { v })
}

/// Exact value of a finite decimal literal.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (neg, digits, exp) = split_decimal(s)?;
    let m: BigInt = digits.parse().ok()?;
    let m = if neg { -m } else { m };
    let ten = BigInt::from(10);
    Some(if exp >= 0 {
        BigRational::from_integer(m * num_traits::pow(ten, exp as usize))
    } else {
        BigRational::new(m, num_traits::pow(ten, (-exp) as usize))
    })
}

/// Generic scientific formatter: extracts decimal digits one at a time.
pub(crate) fn format_sci<T: Real>(x: T, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > T::zero() { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.max(1);
    if x.is_zero() {
        return format!("{:.*e}", digits - 1, 0.0);
    }
    let Some((m, e)) = x.abs().to_dyadic() else {
        return "NaN".into();
    };
    let mut e10 = ((m.bits() as i64 + e - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let Some(r) = to_rational(x.abs()) else {
        return "NaN".into();
    };
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = |e: i64| -> BigRational {
        if e >= 0 {
            num_traits::pow(ten.clone(), e as usize)
        } else {
            num_traits::pow(ten.clone(), (-e) as usize).recip()
        }
    };
    let mut y = &r / scale(e10);
    while y >= ten {
        y /= &ten;
        e10 += 1;
    }
    while y < BigRational::one() {
        y *= &ten;
        e10 -= 1;
    }
    // Round y * 10^(digits-1) to an integer.
    let scaled = y * scale(digits as i64 - 1);
    let mut n = scaled.round().to_integer();
    if n.to_string().len() > digits {
        n /= 10;
        e10 += 1;
    }
    let s = n.abs().to_string();
    let sign = if x < T::zero() { "-" } else { "" };
    if digits == 1 {
        format!("{sign}{s}e{e10}")
    } else {
        format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
    }
}
