//! Explicit conformal maps of the upper half-plane onto slit half-planes,
//! their normalising constants, and the limit profiles of the extremal
//! functions.
//!
//! All maps share the shape
//! `value = zeta + coeff * log(-zeta) + log((1/pi) int_0^inf tau(t) dt / (t - zeta))`
//! with `log(-zeta)` on the principal branch (cut along `[0, inf)`).

mod profiles;

use num_complex::Complex;

use crate::config::PrecisionConfig;
use crate::error::{invalid, Error, Result};
use crate::roots::illinois;
use crate::scalar::Real;
use crate::specialfn::cmath::log_neg;
use crate::specialfn::{cauchy_boundary, cauchy_integral, gamma, half_line, log_gamma, DensitySpec, Integrator};

pub use profiles::{laurent_profile, power_profile};

/// One evaluation of a map, split into its three terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalSample<T> {
    pub zeta: Complex<T>,
    pub value: Complex<T>,
    pub linear_part: Complex<T>,
    pub log_part: Complex<T>,
    pub cauchy_part: Complex<T>,
}

impl<T: Real> ConformalSample<T> {
    fn assemble(zeta: Complex<T>, log_part: Complex<T>, cauchy: Complex<T>) -> Self {
        let cauchy_part = cauchy.ln();
        ConformalSample { zeta, value: zeta + log_part + cauchy_part, linear_part: zeta, log_part, cauchy_part }
    }

    fn origin() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        ConformalSample { zeta: z, value: z, linear_part: z, log_part: z, cauchy_part: z }
    }
}

/// Constants attached to the maps. The `H_k` family fills `k`, `d_k`, `y_k`;
/// the `w` family fills `p`, `lambda`, `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapConstants<T> {
    pub k: Option<u32>,
    pub d_k: Option<T>,
    pub y_k: Option<T>,
    pub p: Option<T>,
    pub lambda: Option<T>,
    pub c: Option<T>,
}

impl<T> Default for MapConstants<T> {
    fn default() -> Self {
        MapConstants { k: None, d_k: None, y_k: None, p: None, lambda: None, c: None }
    }
}

/// `t^(k-1/2) e^-t`.
pub fn hk_density<T: Real>(k: u32) -> Result<DensitySpec<T>> {
    DensitySpec::power_exp(T::lit(k as f64 - 0.5), T::one())
}

/// `(|sin(pi p/2)| / Lambda) t^(p/2) e^-t`.
pub fn w_density<T: Real>(p: T, lambda: T) -> Result<DensitySpec<T>> {
    DensitySpec::power_exp(p * T::lit(0.5), sin_half_pi(p).abs() / lambda)
}

fn sin_half_pi<T: Real>(p: T) -> T {
    // reduce first so that sin vanishes exactly at even integers
    let r = p - T::lit(4.0) * (p * T::lit(0.25)).floor();
    (r * T::FRAC_PI_2()).sin()
}

fn check_k(k: u32) -> Result<()> {
    if k < 1 {
        return invalid("k must be at least 1");
    }
    Ok(())
}

fn check_p<T: Real>(p: T) -> Result<()> {
    let h = p * T::lit(0.5);
    if !(p > T::zero()) || h == h.round() {
        return invalid(format!("p must be positive and not an even integer, got {}", p.f64()));
    }
    Ok(())
}

/// `H_k(zeta) = zeta - (k-1/2) log(-zeta) + log{(1/pi) int t^(k-1/2) e^-t / (t - zeta)}`.
pub fn eval_hk<T: Real>(k: u32, zeta: Complex<T>, cfg: &PrecisionConfig) -> Result<ConformalSample<T>> {
    check_k(k)?;
    let tau = hk_density::<T>(k)?;
    let cauchy = cauchy_integral(&tau, zeta, cfg)?;
    let log_part = log_neg(zeta) * (-T::lit(k as f64 - 0.5));
    Ok(ConformalSample::assemble(zeta, log_part, cauchy))
}

/// Boundary value `H_k(xi + i0)`, `xi > 0`.
pub fn eval_hk_boundary<T: Real>(k: u32, xi: T, cfg: &PrecisionConfig) -> Result<ConformalSample<T>> {
    check_k(k)?;
    let tau = hk_density::<T>(k)?;
    let cauchy = cauchy_boundary(&tau, xi, cfg)?;
    let log_part = Complex::new(xi.ln(), -T::PI()) * (-T::lit(k as f64 - 0.5));
    Ok(ConformalSample::assemble(Complex::new(xi, T::zero()), log_part, cauchy))
}

/// `H_0(zeta) = zeta + (1/2) log(-zeta) + log{(1/pi) int t^(-1/2) e^-t / (t - zeta)}`,
/// with the limit value `H_0(0) = 0` at the origin.
pub fn eval_h0<T: Real>(zeta: Complex<T>, cfg: &PrecisionConfig) -> Result<ConformalSample<T>> {
    if zeta.im == T::zero() && zeta.re == T::zero() {
        return Ok(ConformalSample::origin());
    }
    let tau = DensitySpec::power_exp(T::lit(-0.5), T::one())?;
    let cauchy = cauchy_integral(&tau, zeta, cfg)?;
    let log_part = log_neg(zeta) * T::lit(0.5);
    Ok(ConformalSample::assemble(zeta, log_part, cauchy))
}

/// Boundary value `H_0(xi + i0)`, `xi > 0`.
pub fn eval_h0_boundary<T: Real>(xi: T, cfg: &PrecisionConfig) -> Result<ConformalSample<T>> {
    let tau = DensitySpec::power_exp(T::lit(-0.5), T::one())?;
    let cauchy = cauchy_boundary(&tau, xi, cfg)?;
    let log_part = Complex::new(xi.ln(), -T::PI()) * T::lit(0.5);
    Ok(ConformalSample::assemble(Complex::new(xi, T::zero()), log_part, cauchy))
}

/// Root `D_k > 0` of `H_k(-D) = 0`. `H_k(-D)` decreases from `+inf` to
/// `-inf` as `D` runs over `(0, inf)`; the root is bracketed in
/// `[1e-6, 1e6]` and refined in `log D`.
pub fn find_dk<T: Real>(k: u32, cfg: &PrecisionConfig) -> Result<T> {
    check_k(k)?;
    let f = |u: T| Ok(eval_hk(k, Complex::new(-u.exp(), T::zero()), cfg)?.value.re);
    let (lo, hi) = (T::lit(1e-6).ln(), T::lit(1e6).ln());
    let xtol = cfg.tol::<T>() * T::lit(0.25);
    let u = illinois("H_k(-D)", f, lo, hi, xtol, 400)?;
    Ok(u.exp())
}

/// `Y_k = log Gamma(k + 1/2) - log pi`.
pub fn yk_closed_form<T: Real>(k: u32, cfg: &PrecisionConfig) -> Result<T> {
    check_k(k)?;
    Ok(log_gamma(T::lit(k as f64 + 0.5), cfg)?.value - T::PI().ln())
}

/// `Y_k` as `lim H_k(-R) + R + (k+1/2) log R`, extrapolated from
/// `R = 1e4, 1e5, 1e6` assuming a correction in powers of `1/R`.
pub fn yk_asymptotic<T: Real>(k: u32, cfg: &PrecisionConfig) -> Result<T> {
    check_k(k)?;
    let radii = [1e4, 1e5, 1e6];
    let mut xs = Vec::new();
    let mut gs = Vec::new();
    for r in radii {
        let rr = T::lit(r);
        let h = eval_hk(k, Complex::new(-rr, T::zero()), cfg)?.value.re;
        xs.push(rr.recip());
        gs.push(h + rr + T::lit(k as f64 + 0.5) * rr.ln());
    }
    Ok(extrapolate_to_zero(&xs, &gs))
}

/// Neville extrapolation of the interpolating polynomial to `x = 0`.
pub(crate) fn extrapolate_to_zero<T: Real>(xs: &[T], ys: &[T]) -> T {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// `rho_k(t) - (k + 1/2)` on the boundary, i.e. `-theta(t)/pi` with
/// `theta = pi - arg C(t + i0)`.
fn boundary_defect<T: Real>(tau: &DensitySpec<T>, t: T, cfg: &PrecisionConfig) -> Result<T> {
    let c = cauchy_boundary(tau, t, cfg)?;
    Ok(-(c.im.atan2(-c.re)) / T::PI())
}

/// `Y_k = D_k + (k+1/2) log D_k - int_0^inf (rho_k(t) - (k+1/2)) / (t + D_k) dt`,
/// with `rho_k = (1/pi) Im H_k(t + i0)`. The outer quadrature runs at
/// `max(tol, 1e-13)` since every node costs a principal-value integral.
pub fn yk_integral<T: Real>(k: u32, d_k: T, cfg: &PrecisionConfig) -> Result<T> {
    check_k(k)?;
    let tau = hk_density::<T>(k)?;
    let outer = Integrator::new(cfg).with_tolerance(cfg.tol::<T>().max(T::lit(1e-13)));
    let err = std::cell::RefCell::new(None);
    let g = |t: T| {
        if t <= T::zero() {
            return -T::one() / d_k;
        }
        match boundary_defect(&tau, t, cfg) {
            Ok(v) => v / (t + d_k),
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                T::zero()
            }
        }
    };
    let upper = tau.upper(cfg);
    let integral = half_line(&outer, &g, T::lit(k as f64 - 0.5), upper, &[d_k])?;
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(d_k + T::lit(k as f64 + 0.5) * d_k.ln() - integral)
}

/// `D_k` and the closed-form `Y_k`.
pub fn hk_constants<T: Real>(k: u32, cfg: &PrecisionConfig) -> Result<MapConstants<T>> {
    Ok(MapConstants {
        k: Some(k),
        d_k: Some(find_dk(k, cfg)?),
        y_k: Some(yk_closed_form(k, cfg)?),
        ..Default::default()
    })
}

/// `Lambda = |sin(pi p/2)| Gamma(p/2) / pi` and `c = -log(Lambda |Gamma(-p/2)|)`.
/// The normalisation `(1/pi) int tau(t) dt / t = 1` is checked by
/// quadrature and a mismatch beyond `sqrt(tol)` is reported as an error.
pub fn lambda_constant<T: Real>(p: T, cfg: &PrecisionConfig) -> Result<MapConstants<T>> {
    check_p(p)?;
    let half = p * T::lit(0.5);
    let lambda = sin_half_pi(p).abs() * gamma(half, cfg)? / T::PI();
    let c = -(lambda.ln() + log_gamma(-half, cfg)?.value);
    let norm = norm_integral(p, lambda, cfg)?;
    if (norm - T::one()).abs() > cfg.tol::<T>().sqrt() {
        return Err(Error::Conditioning(format!("normalisation integral is {}", norm.f64())));
    }
    Ok(MapConstants { p: Some(p), lambda: Some(lambda), c: Some(c), ..Default::default() })
}

/// `(1/pi) int_0^inf tau(t) dt / t` for the density of the `w` map.
pub fn norm_integral<T: Real>(p: T, lambda: T, cfg: &PrecisionConfig) -> Result<T> {
    moment(p, lambda, -T::one(), cfg)
}

/// `(1/pi) int_0^inf tau(t) dt`, which equals `e^c`.
pub fn ec_integral<T: Real>(p: T, lambda: T, cfg: &PrecisionConfig) -> Result<T> {
    moment(p, lambda, T::zero(), cfg)
}

fn moment<T: Real>(p: T, lambda: T, shift: T, cfg: &PrecisionConfig) -> Result<T> {
    let tau = w_density(p, lambda)?;
    let alpha = p * T::lit(0.5) + shift;
    let scale = sin_half_pi(p).abs() / lambda;
    let f = |t: T| if t <= T::zero() { T::zero() } else { scale * t.powf(alpha) * (-t).exp() };
    let integ = Integrator::new(cfg);
    Ok(half_line(&integ, &f, alpha, tau.upper(cfg), &[])? * T::FRAC_1_PI())
}

/// `w(zeta) = zeta + log{(1/pi) int tau(t) dt / (t - zeta)}` with `w(0) = 0`.
pub fn eval_w<T: Real>(p: T, zeta: Complex<T>, cfg: &PrecisionConfig) -> Result<ConformalSample<T>> {
    let consts = lambda_constant(p, cfg)?;
    eval_w_with(p, consts.lambda.unwrap_or_else(T::one), zeta, cfg)
}

/// [`eval_w`] with a precomputed `Lambda`.
pub fn eval_w_with<T: Real>(p: T, lambda: T, zeta: Complex<T>, cfg: &PrecisionConfig) -> Result<ConformalSample<T>> {
    check_p(p)?;
    if zeta.im == T::zero() && zeta.re == T::zero() {
        return Ok(ConformalSample::origin());
    }
    let tau = w_density(p, lambda)?;
    let cauchy = cauchy_integral(&tau, zeta, cfg)?;
    Ok(ConformalSample::assemble(zeta, Complex::new(T::zero(), T::zero()), cauchy))
}

/// Boundary value `w(xi + i0)`, `xi > 0`.
pub fn eval_w_boundary<T: Real>(p: T, lambda: T, xi: T, cfg: &PrecisionConfig) -> Result<ConformalSample<T>> {
    check_p(p)?;
    let tau = w_density(p, lambda)?;
    let cauchy = cauchy_boundary(&tau, xi, cfg)?;
    Ok(ConformalSample::assemble(Complex::new(xi, T::zero()), Complex::new(T::zero(), T::zero()), cauchy))
}

/// `e^xi xi^-(k-1/2) Im C_k(xi + i0) - 1`, which vanishes on the slit.
pub fn slit_residual_hk<T: Real>(k: u32, xi: T, cfg: &PrecisionConfig) -> Result<T> {
    check_k(k)?;
    let c = cauchy_boundary(&hk_density::<T>(k)?, xi, cfg)?;
    Ok(xi.exp() * xi.powf(-T::lit(k as f64 - 0.5)) * c.im - T::one())
}

/// Relative residual of `Lambda Im e^{w(xi+i0)} = |sin(pi p/2)| xi^(p/2)`,
/// with `e^w` rebuilt from the complex logarithm of the map.
pub fn slit_residual_w<T: Real>(p: T, lambda: T, xi: T, cfg: &PrecisionConfig) -> Result<T> {
    let s = eval_w_boundary(p, lambda, xi, cfg)?;
    let lhs = lambda * s.value.exp().im;
    let rhs = sin_half_pi(p).abs() * xi.powf(p * T::lit(0.5));
    Ok(lhs / rhs - T::one())
}
