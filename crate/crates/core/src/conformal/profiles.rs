//! Limit shapes of the rescaled extremal functions.

use crate::config::PrecisionConfig;
use crate::error::{invalid, Result};
use crate::scalar::Real;
use crate::specialfn::{integrate_with, Integrator};

use super::{check_k, check_p, sin_half_pi};

fn mu_max<T: Real>(lambda: T, cfg: &PrecisionConfig) -> T {
    let tail = T::lit(cfg.tail_for(0.0, cfg.bits::<T>()));
    tail.sqrt() + lambda
}

/// Limit of the odd Laurent extremal function under `x = sqrt(2a/(2m-1)) lambda`:
/// `1 + ((-1)^(k+1)/pi) int_0^inf (mu/lambda)^(2k-1) e^-(lambda^2+mu^2) 2 mu dmu / (lambda^2+mu^2)`.
pub fn laurent_profile<T: Real>(k: u32, lambda: T, cfg: &PrecisionConfig) -> Result<T> {
    check_k(k)?;
    if !(lambda > T::zero()) {
        return invalid("lambda must be positive");
    }
    let l2 = lambda * lambda;
    let pw = 2 * k as i32 - 1;
    let g = |mu: T| {
        let m2 = mu * mu;
        (mu / lambda).powi(pw) * (-(l2 + m2)).exp() * (mu + mu) / (l2 + m2)
    };
    let integ = Integrator::new(cfg);
    let v = integ.integrate(&g, T::zero(), mu_max(lambda, cfg), &[lambda])?.value;
    let sign = if k % 2 == 1 { T::one() } else { -T::one() };
    Ok(T::one() + sign * v * T::FRAC_1_PI())
}

/// Limit of `(m/a)^(p/2) P_m(sqrt(a/m) lambda)`:
/// `lambda^p + (sin(pi p/2)/pi) int_0^inf mu^p e^-(lambda^2+mu^2) 2 mu dmu / (lambda^2+mu^2)`.
pub fn power_profile<T: Real>(p: T, lambda: T, cfg: &PrecisionConfig) -> Result<T> {
    check_p(p)?;
    if lambda < T::zero() {
        return invalid("lambda must be nonnegative");
    }
    let l2 = lambda * lambda;
    let g = |mu: T| {
        if mu <= T::zero() {
            return T::zero();
        }
        let m2 = mu * mu;
        mu.powf(p) * (-(l2 + m2)).exp() * (mu + mu) / (l2 + m2)
    };
    // near mu = 0 the integrand is mu^(p+1) / lambda^2, or 2 mu^(p-1) at lambda = 0
    let edge = if lambda > T::zero() { p + T::one() } else { p - T::one() };
    let integ = Integrator::new(cfg);
    let breaks: Vec<T> = if lambda > T::zero() { vec![lambda] } else { vec![] };
    let v = integrate_with(&integ, &g, T::zero(), mu_max(lambda, cfg), Some(edge), &breaks)?.value;
    let head = if lambda > T::zero() { lambda.powf(p) } else { T::zero() };
    Ok(head + sin_half_pi(p) * v * T::FRAC_1_PI())
}
