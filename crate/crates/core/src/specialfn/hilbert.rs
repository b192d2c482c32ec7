//! Discrete Hilbert transform `(1/pi) PV int rho(x) dx / (xi - x)` on a
//! uniform symmetric grid.
//!
//! Each node is evaluated from the nodes of opposite parity only, so the
//! evaluation point always sits at the midpoint of the quadrature grid of
//! spacing `2h` and the kernel is never singular.

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Checks that `x` is uniform and symmetric about 0; returns the spacing.
pub fn check_grid<T: Real>(x: &[T]) -> Result<T> {
    let n = x.len();
    if n < 3 {
        return invalid("grid needs at least three nodes");
    }
    let h = (x[n - 1] - x[0]) / T::int(n as i64 - 1);
    if !(h > T::zero()) {
        return invalid("grid must be increasing");
    }
    let tol = h * T::lit(1e-9);
    for (i, xi) in x.iter().enumerate() {
        let want = x[0] + h * T::int(i as i64);
        if (*xi - want).abs() > tol {
            return invalid(format!("grid is not uniform at node {i}"));
        }
    }
    if (x[0] + x[n - 1]).abs() > tol {
        return invalid("grid is not symmetric about 0");
    }
    Ok(h)
}

/// Transform of samples `rho` on the grid `x`; `rho` is taken as zero
/// outside the grid.
pub fn hilbert_grid<T: Real>(x: &[T], rho: &[T]) -> Result<Vec<T>> {
    check_grid(x)?;
    if x.len() != rho.len() {
        return invalid("grid and samples differ in length");
    }
    Ok(hilbert_odd_even(rho))
}

/// `rt_i = (2/pi) sum_{j - i odd} rho_j / (i - j)`.
pub(crate) fn hilbert_odd_even<T: Real>(rho: &[T]) -> Vec<T> {
    let n = rho.len();
    let kernel: Vec<T> = (0..n).map(|d| if d % 2 == 1 { T::int(d as i64).recip() } else { T::zero() }).collect();
    let c = T::lit(2.0) * T::FRAC_1_PI();
    (0..n)
        .map(|i| {
            let mut s = T::zero();
            let mut d = 1;
            while d < n {
                let l = if d <= i { rho[i - d] } else { T::zero() };
                let r = if i + d < n { rho[i + d] } else { T::zero() };
                s = s + (l - r) * kernel[d];
                d += 2;
            }
            s * c
        })
        .collect()
}
