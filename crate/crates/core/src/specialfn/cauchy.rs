//! Cauchy-type integrals `(1/pi) int_0^inf tau(t) dt / (t - zeta)` of
//! densities on the positive half-line, and their boundary values.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use super::quad::{integrate_with, Integrator};
use crate::config::PrecisionConfig;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Behaviour of a density at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay<T> {
    /// Decays like `e^{-t}`; integrals are truncated at the tail cut.
    Exponential,
    /// No decay; the density vanishes beyond the given point.
    None { support_end: T },
}

/// A density `tau` on `(0, inf)` behaving like `t^alpha` at the origin.
#[derive(Clone)]
pub struct DensitySpec<T> {
    pub exponent_alpha: T,
    pub decay: Decay<T>,
    values: Arc<dyn Fn(T) -> T + Send + Sync>,
}

impl<T: Real> fmt::Debug for DensitySpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensitySpec")
            .field("exponent_alpha", &self.exponent_alpha)
            .field("decay", &self.decay)
            .finish_non_exhaustive()
    }
}

impl<T: Real> DensitySpec<T> {
    pub fn new(exponent_alpha: T, decay: Decay<T>, values: impl Fn(T) -> T + Send + Sync + 'static) -> Result<Self> {
        if !(exponent_alpha > -T::one()) {
            return invalid(format!("density exponent must exceed -1, got {exponent_alpha}"));
        }
        if let Decay::None { support_end } = decay {
            if !(support_end > T::zero()) {
                return invalid("support end must be positive");
            }
        }
        Ok(DensitySpec { exponent_alpha, decay, values: Arc::new(values) })
    }

    /// `scale * t^alpha * e^{-t}`.
    pub fn power_exp(alpha: T, scale: T) -> Result<Self> {
        Self::new(alpha, Decay::Exponential, move |t: T| {
            if t <= T::zero() {
                T::zero()
            } else {
                scale * t.powf(alpha) * (-t).exp()
            }
        })
    }

    pub fn eval(&self, t: T) -> T {
        (self.values)(t)
    }

    /// Upper integration limit.
    pub fn upper(&self, cfg: &PrecisionConfig) -> T {
        match self.decay {
            Decay::Exponential => T::lit(cfg.tail_for(self.exponent_alpha.f64(), cfg.bits::<T>())),
            Decay::None { support_end } => support_end,
        }
    }
}

/// Integrates `g(t)` against a density-shaped singularity at 0 over
/// `[lo, hi]` with `lo = 0` treated specially.
pub(crate) fn half_line<T: Real, V: super::quad::QuadValue<T>>(
    integ: &Integrator<T>,
    g: &impl Fn(T) -> V,
    alpha: T,
    hi: T,
    breaks: &[T],
) -> Result<V> {
    let mut b: Vec<T> = breaks.iter().copied().filter(|x| *x > T::zero() && *x < hi).collect();
    b.push(T::one());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let first = b[0].min(hi);
    let head = integrate_with(integ, g, T::zero(), first, Some(alpha), &[])?.value;
    if first >= hi {
        return Ok(head);
    }
    let tail = integ.integrate(g, first, hi, &b[1..])?.value;
    Ok(head + tail)
}

/// `(1/pi) int_0^inf tau(t) dt / (t - zeta)` for `zeta` off `[0, inf)`.
pub fn cauchy_integral<T: Real>(tau: &DensitySpec<T>, zeta: Complex<T>, cfg: &PrecisionConfig) -> Result<Complex<T>> {
    if zeta.im.is_zero() && zeta.re >= T::zero() {
        return Err(Error::CutViolation { re: zeta.re.f64(), im: 0.0 });
    }
    let integ = Integrator::new(cfg);
    cauchy_integral_with(&integ, tau, zeta, cfg)
}

pub(crate) fn cauchy_integral_with<T: Real>(
    integ: &Integrator<T>,
    tau: &DensitySpec<T>,
    zeta: Complex<T>,
    cfg: &PrecisionConfig,
) -> Result<Complex<T>> {
    if zeta.im.is_zero() && zeta.re >= T::zero() {
        return Err(Error::CutViolation { re: zeta.re.f64(), im: 0.0 });
    }
    let hi = tau.upper(cfg);
    let g = |t: T| Complex::new(tau.eval(t), T::zero()) / (Complex::new(t, T::zero()) - zeta);
    // Resolve the near-singularity at the projection of zeta and the scale |zeta|.
    let mut breaks = vec![zeta.norm()];
    if zeta.re > T::zero() {
        let w = zeta.im.abs();
        breaks.extend([zeta.re - w, zeta.re, zeta.re + w]);
    }
    let v = half_line(integ, &g, tau.exponent_alpha, hi, &breaks)?;
    Ok(v * T::FRAC_1_PI())
}

/// Boundary value at `xi + i0`: `(1/pi) PV int tau/(t - xi) + i tau(xi)`.
pub fn cauchy_boundary<T: Real>(tau: &DensitySpec<T>, xi: T, cfg: &PrecisionConfig) -> Result<Complex<T>> {
    if !(xi > T::zero()) {
        return invalid(format!("boundary point must be positive, got {xi}"));
    }
    let integ = Integrator::new(cfg);
    cauchy_boundary_with(&integ, tau, xi, cfg)
}

pub(crate) fn cauchy_boundary_with<T: Real>(
    integ: &Integrator<T>,
    tau: &DensitySpec<T>,
    xi: T,
    cfg: &PrecisionConfig,
) -> Result<Complex<T>> {
    let hi = tau.upper(cfg);
    let eps = T::lit(cfg.pv_epsilon).min(xi * T::lit(0.5));
    let g = |t: T| tau.eval(t) / (t - xi);
    // Left of the window; carries the t^alpha behaviour at 0.
    let left = half_line(integ, &g, tau.exponent_alpha, xi - eps, &[])?;
    // Symmetric window around xi: the 1/(t - xi) part cancels in pairs.
    let pair = |s: T| (tau.eval(xi + s) - tau.eval(xi - s)) / s;
    let window = integ.integrate(&pair, T::zero(), eps, &[])?.value;
    let right = if xi + eps < hi { integ.integrate(&g, xi + eps, hi, &[xi + T::one()])?.value } else { T::zero() };
    Ok(Complex::new((left + window + right) * T::FRAC_1_PI(), tau.eval(xi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prelude::*;
    use crate::scalar::DoubleDouble;
    use proptest::prelude::*;

    type D = DoubleDouble;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::new(106).unwrap()
    }

    fn exp_density() -> DensitySpec<D> {
        DensitySpec::power_exp(D::zero(), D::one()).unwrap()
    }

    /// `E_1(x)` by its power series, for an independent oracle.
    fn e1(x: f64) -> f64 {
        let mut sum = -0.5772156649015329 - x.ln();
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x / k as f64;
            sum -= term / k as f64;
        }
        sum
    }

    /// `Ei(x)` by its power series.
    fn ei(x: f64) -> f64 {
        let mut sum = 0.5772156649015329 + x.ln();
        let mut term = 1.0;
        for k in 1..200 {
            term *= x / k as f64;
            sum += term / k as f64;
        }
        sum
    }

    #[test]
    fn exponential_density_at_minus_one() {
        let v = cauchy_integral(&exp_density(), Complex::new(-D::one(), D::zero()), &cfg()).unwrap();
        let want = std::f64::consts::E * e1(1.0) / std::f64::consts::PI;
        assert!((v.re.f64() - 0.1898232610).abs() < 1e-10);
        assert!((v.re.f64() - want).abs() < 1e-14);
        assert!(v.im.is_zero());
    }

    #[test]
    fn conjugate_symmetry_exact() {
        let tau = exp_density();
        let z = Complex::new(D::zero(), D::one());
        let a = cauchy_integral(&tau, z, &cfg()).unwrap();
        let b = cauchy_integral(&tau, z.conj(), &cfg()).unwrap();
        assert_eq!(a, b.conj());
    }

    #[test]
    fn far_field_leading_term() {
        let tau = DensitySpec::power_exp(D::lit(0.5), D::one()).unwrap();
        let v = cauchy_integral(&tau, Complex::new(D::lit(-1e6), D::zero()), &cfg()).unwrap();
        let lead = D::PI().sqrt() / D::lit(2.0) / D::PI() / D::lit(1e6);
        assert!(((v.re - lead) / lead).abs().f64() < 1e-3);
    }

    #[test]
    fn cut_is_rejected() {
        let r = cauchy_integral(&exp_density(), Complex::new(D::one(), D::zero()), &cfg());
        assert!(matches!(r, Err(Error::CutViolation { .. })));
        assert!(cauchy_boundary(&exp_density(), D::zero(), &cfg()).is_err());
    }

    #[test]
    fn boundary_value_of_exponential_density() {
        // PV int_0^inf e^{-t}/(t - 2) dt = -e^{-2} Ei(2)
        let v = cauchy_boundary(&exp_density(), D::lit(2.0), &cfg()).unwrap();
        let want = -(-2f64).exp() * ei(2.0) / std::f64::consts::PI;
        assert!((v.re.f64() - want).abs() < 1e-13);
        assert_eq!(v.im, (-D::lit(2.0)).exp());
    }

    #[test]
    fn boundary_value_matches_symmetric_grid_sum() {
        // Midpoint sum on a grid symmetric about xi: the pole contributions
        // cancel pairwise, and Richardson removes the h^2 error.
        let xi = 2.0f64;
        let sum = |n: usize| -> f64 {
            let h = xi / n as f64;
            let mut s = 0.0;
            let top = (60.0 / h) as usize;
            for k in 0..top {
                let t = (k as f64 + 0.5) * h;
                s += (-t).exp() / (t - xi);
            }
            s * h
        };
        let s1 = sum(20_000);
        let s2 = sum(40_000);
        let oracle = (4.0 * s2 - s1) / 3.0 / std::f64::consts::PI;
        let v = cauchy_boundary(&exp_density(), D::lit(xi), &cfg()).unwrap();
        assert!((v.re.f64() - oracle).abs() < 1e-10, "{} vs {}", v.re, oracle);
    }

    #[test]
    fn boundary_value_is_limit_from_upper_half_plane() {
        let tau = DensitySpec::power_exp(D::lit(0.5), D::one()).unwrap();
        let xi = D::one();
        let c = cfg();
        let at = |eta: f64| cauchy_integral(&tau, Complex::new(xi, D::lit(eta)), &c).unwrap();
        // Error is O(eta); two-step Richardson.
        let (a, b, d) = (at(4e-3), at(2e-3), at(1e-3));
        let r1 = b * D::lit(2.0) - a;
        let r2 = d * D::lit(2.0) - b;
        let lim = r2 * D::lit(4.0 / 3.0) - r1 * D::lit(1.0 / 3.0);
        let bv = cauchy_boundary(&tau, xi, &c).unwrap();
        assert!((lim - bv).norm().f64() < 1e-7, "{lim} vs {bv}");
    }

    #[test]
    fn zero_density_near_xi() {
        let tau = DensitySpec::new(D::zero(), Decay::None { support_end: D::one() }, |t: D| {
            if t < D::one() {
                D::one()
            } else {
                D::zero()
            }
        })
        .unwrap();
        let v = cauchy_boundary(&tau, D::lit(3.0), &cfg()).unwrap();
        // (1/pi) int_0^1 dt/(t-3) = (1/pi) log(2/3)
        assert!((v.re.f64() - (2.0f64 / 3.0).ln() / std::f64::consts::PI).abs() < 1e-15);
        assert!(v.im.is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn upper_half_plane_maps_up(re in -5.0f64..5.0, im in 0.01f64..5.0) {
            let tau = DensitySpec::power_exp(D::lit(0.5), D::one()).unwrap();
            let c = PrecisionConfig::new(64).unwrap();
            let z = Complex::new(D::lit(re), D::lit(im));
            let v = cauchy_integral(&tau, z, &c).unwrap();
            let w = cauchy_integral(&tau, z.conj(), &c).unwrap();
            prop_assert!(v.im > D::zero());
            prop_assert_eq!(v, w.conj());
        }

        #[test]
        fn boundary_imaginary_part_is_density(lx in -1.0f64..1.0) {
            let xi = 10f64.powf(lx);
            let tau = DensitySpec::power_exp(D::lit(1.5), D::one()).unwrap();
            let v = cauchy_boundary(&tau, D::lit(xi), &PrecisionConfig::new(64).unwrap()).unwrap();
            let want = tau.eval(D::lit(xi));
            prop_assert!(((v.im - want) / want).abs().f64() < 1e-8);
        }
    }
}
