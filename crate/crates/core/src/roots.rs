//! Bracketed scalar root finding.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Illinois-modified regula falsi on a sign-changing bracket. Stops when the
/// bracket is narrower than `xtol` or `f` vanishes.
pub(crate) fn illinois<T: Real>(
    what: &str,
    mut f: impl FnMut(T) -> Result<T>,
    mut lo: T,
    mut hi: T,
    xtol: T,
    max_iter: usize,
) -> Result<T> {
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::BracketFailure { what: what.to_string(), lo: lo.f64(), hi: hi.f64() });
    }
    let mut side = 0i8;
    for _ in 0..max_iter {
        let mut x = (lo * fhi - hi * flo) / (fhi - flo);
        if !(x > lo && x < hi) {
            x = (lo + hi) * T::lit(0.5);
        }
        let fx = f(x)?;
        if fx == T::zero() {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi = fhi * T::lit(0.5);
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo = flo * T::lit(0.5);
            }
            side = 1;
        }
        if hi - lo <= xtol {
            break;
        }
    }
    Ok(if flo.abs() < fhi.abs() { lo } else { hi })
}
