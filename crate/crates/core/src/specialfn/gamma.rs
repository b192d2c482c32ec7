//! Log-gamma by the Stirling series with upward argument shifting.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::config::PrecisionConfig;
use crate::error::{invalid, Error, Result};
use crate::scalar::{from_rational, Real};

/// `log|Gamma(x)|` together with the sign of `Gamma(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGamma<T> {
    pub value: T,
    pub sign: i8,
}

const STIRLING_TERMS: usize = 160;

/// Stirling coefficients `B_2k / (2k (2k-1))`, exact.
///
/// Bernoulli numbers come from the tangent numbers, which satisfy an
/// integer-only recurrence.
fn stirling_coefficients() -> &'static [BigRational] {
    static COEFFS: OnceLock<Vec<BigRational>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let n = STIRLING_TERMS;
        let mut t: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        t[1] = BigInt::one();
        for k in 2..=n {
            t[k] = &t[k - 1] * BigInt::from(k - 1);
        }
        for k in 2..=n {
            for j in k..=n {
                t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
            }
        }
        (1..=n)
            .map(|k| {
                let four_k = BigInt::one() << (2 * k);
                let den = BigInt::from(2 * k - 1) * &four_k * (&four_k - BigInt::one());
                let c = BigRational::new(t[k].clone(), den);
                if k % 2 == 1 {
                    c
                } else {
                    -c
                }
            })
            .collect()
    })
}

/// Exact Bernoulli number `B_2k` for `1 <= k <= 160`.
pub fn bernoulli_even(k: usize) -> Option<BigRational> {
    if k == 0 || k > STIRLING_TERMS {
        return None;
    }
    let c = &stirling_coefficients()[k - 1];
    Some(c * BigRational::from_integer(BigInt::from(2 * k * (2 * k - 1))))
}

fn stirling<T: Real>(z: T, tol: T) -> T {
    let half = T::lit(0.5);
    let mut s = (z - half) * z.ln() - z + half * (T::lit(2.0) * T::PI()).ln();
    let z2 = z * z;
    let mut zp = z;
    let mut last = T::infinity();
    for c in stirling_coefficients() {
        let term = from_rational::<T>(c) / zp;
        let size = term.abs();
        if size > last {
            break;
        }
        s = s + term;
        if size <= tol * s.abs() {
            break;
        }
        last = size;
        zp = zp * z2;
    }
    s
}

/// `log|Gamma(x)|` with the sign of `Gamma(x)`.
pub fn log_gamma<T: Real>(x: T, cfg: &PrecisionConfig) -> Result<LogGamma<T>> {
    if !x.is_finite() {
        return invalid("log_gamma needs a finite argument");
    }
    if x <= T::zero() && x == x.floor() {
        return Err(Error::Pole(x.f64()));
    }
    let bits = cfg.bits::<T>();
    let eps = T::epsilon();
    let half = T::lit(0.5);
    if x < half {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        let r = x - T::lit(2.0) * (x * half).round();
        let s = (T::PI() * r).sin();
        let g = log_gamma(T::one() - x, cfg)?;
        let sign = if s < T::zero() { -1 } else { 1 };
        return Ok(LogGamma { value: T::PI().ln() - s.abs().ln() - g.value, sign });
    }
    let z0 = T::lit(bits as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) + 2.0);
    let mut z = x;
    let mut prod = T::one();
    while z < z0 {
        prod = prod * z;
        z = z + T::one();
    }
    Ok(LogGamma { value: stirling(z, eps) - prod.ln(), sign: 1 })
}

/// `Gamma(x)` as a plain value.
pub fn gamma<T: Real>(x: T, cfg: &PrecisionConfig) -> Result<T> {
    let g = log_gamma(x, cfg)?;
    let v = g.value.exp();
    Ok(if g.sign < 0 { -v } else { v })
}
