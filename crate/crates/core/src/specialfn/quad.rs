//! Globally adaptive Gauss-Legendre quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::config::PrecisionConfig;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue<T: Real>:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> + Zero + Send + Sync
{
    /// Magnitude used for error control.
    fn size(&self) -> T;
}

impl<T: Real> QuadValue<T> for T {
    fn size(&self) -> T {
        self.abs()
    }
}

impl<T: Real> QuadValue<T> for Complex<T> {
    fn size(&self) -> T {
        self.re.abs() + self.im.abs()
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let one = T::one();
        let tol = T::epsilon() * T::lit(8.0);
        for i in 0..n.div_ceil(2) {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = T::lit(guess);
            let mut dp = one;
            for _ in 0..60 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= tol {
                    let (_, d) = legendre(n, x);
                    dp = d;
                    break;
                }
            }
            let w = T::lit(2.0) / ((one - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        GaussLegendre { nodes, weights }
    }

    /// Rule applied on `[a, b]`.
    pub fn apply<V: QuadValue<T>>(&self, f: &impl Fn(T) -> V, a: T, b: T) -> V {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        let mut s = V::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s = s + f(mid + half * *x) * *w;
        }
        s * half
    }
}

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let one = T::one();
    let mut p0 = one;
    let mut p1 = x;
    for k in 1..n {
        let k = T::int(k as i64);
        let p2 = ((k + k + one) * x * p1 - k * p0) / (k + one);
        p0 = p1;
        p1 = p2;
    }
    let nn = T::int(n as i64);
    (p1, nn * (x * p1 - p0) / (x * x - one))
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<V, T> {
    pub value: V,
    pub error: T,
    pub panels: usize,
}

struct Panel<V, T> {
    a: T,
    b: T,
    left: V,
    right: V,
    err: T,
    key: f64,
}

impl<V, T> PartialEq for Panel<V, T> {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key
    }
}
impl<V, T> Eq for Panel<V, T> {}
impl<V, T> PartialOrd for Panel<V, T> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<V, T> Ord for Panel<V, T> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key.total_cmp(&o.key)
    }
}

/// Adaptive integrator. The panel error is `|G(panel) - G(left) - G(right)|`
/// and the panel with the largest error is bisected until the summed
/// errors fall below `tol * sum |G|`.
#[derive(Debug, Clone)]
pub struct Integrator<T> {
    rule: GaussLegendre<T>,
    tol: T,
    max_panels: usize,
}

impl<T: Real> Integrator<T> {
    pub fn new(cfg: &PrecisionConfig) -> Self {
        Integrator { rule: GaussLegendre::new(cfg.quad_order), tol: cfg.tol::<T>(), max_panels: cfg.max_panels }
    }

    pub fn with_tolerance(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn rule(&self) -> &GaussLegendre<T> {
        &self.rule
    }

    fn panel<V: QuadValue<T>>(&self, f: &impl Fn(T) -> V, a: T, b: T, whole: V) -> Panel<V, T> {
        let m = (a + b) * T::lit(0.5);
        let left = self.rule.apply(f, a, m);
        let right = self.rule.apply(f, m, b);
        let err = (whole - left - right).size();
        Panel { a, b, left, right, err, key: err.f64() }
    }

    /// Integrates `f` over `[lo, hi]`, with extra interior breakpoints.
    pub fn integrate<V: QuadValue<T>>(
        &self,
        f: &impl Fn(T) -> V,
        lo: T,
        hi: T,
        breaks: &[T],
    ) -> Result<Quadrature<V, T>> {
        let mut cuts = vec![lo];
        let mut inner: Vec<T> = breaks.iter().copied().filter(|b| *b > lo && *b < hi).collect();
        inner.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        cuts.extend(inner);
        cuts.push(hi);
        let mut heap = BinaryHeap::new();
        let mut err_sum = T::zero();
        let mut size_sum = T::zero();
        for w in cuts.windows(2) {
            if w[1] <= w[0] {
                continue;
            }
            let whole = self.rule.apply(f, w[0], w[1]);
            let p = self.panel(f, w[0], w[1], whole);
            err_sum = err_sum + p.err;
            size_sum = size_sum + (p.left + p.right).size();
            heap.push(p);
        }
        let floor = T::epsilon() * T::lit(64.0);
        loop {
            if err_sum <= (self.tol + floor) * size_sum || heap.is_empty() {
                break;
            }
            if heap.len() >= self.max_panels {
                return Err(Error::Divergence {
                    lo: lo.f64(),
                    hi: hi.f64(),
                    panels: heap.len(),
                    estimate: (err_sum / size_sum).f64(),
                });
            }
            let p = heap.pop().expect("heap is non-empty");
            let m = (p.a + p.b) * T::lit(0.5);
            let l = self.panel(f, p.a, m, p.left);
            let r = self.panel(f, m, p.b, p.right);
            err_sum = err_sum - p.err + l.err + r.err;
            size_sum = size_sum - (p.left + p.right).size() + (l.left + l.right).size() + (r.left + r.right).size();
            heap.push(l);
            heap.push(r);
        }
        let panels = heap.len();
        let mut value = V::zero();
        let mut error = T::zero();
        for p in heap.into_sorted_vec() {
            value = value + p.left + p.right;
            error = error + p.err;
        }
        Ok(Quadrature { value, error, panels })
    }

    /// Integrates over `n` equal panels without adaptivity; returns the sum
    /// of the half-panel rules and the summed error estimate.
    pub fn uniform<V: QuadValue<T>>(&self, f: &impl Fn(T) -> V, lo: T, hi: T, n: usize) -> (V, T) {
        let h = (hi - lo) / T::int(n as i64);
        let mut value = V::zero();
        let mut error = T::zero();
        for i in 0..n {
            let a = lo + h * T::int(i as i64);
            let b = if i + 1 == n { hi } else { a + h };
            let whole = self.rule.apply(f, a, b);
            let p = self.panel(f, a, b, whole);
            value = value + p.left + p.right;
            error = error + p.err;
        }
        (value, error)
    }
}

/// How a power singularity `(t - lo)^alpha` at the left endpoint is removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Substitution<T> {
    /// `alpha = j/d` with small `d`: `t = lo + u^d` makes the integrand analytic.
    Rational(u32),
    /// Otherwise `t = lo + u^q` with `q = 1/(1+alpha)`.
    Power(T),
}

impl<T: Real> Substitution<T> {
    pub fn for_exponent(alpha: T) -> Self {
        for d in 1..=24u32 {
            let a = alpha * T::int(d as i64);
            if (a - a.round()).abs() <= T::epsilon() * T::lit(64.0) * T::int(d as i64) {
                return Substitution::Rational(d);
            }
        }
        Substitution::Power((T::one() + alpha).recip())
    }

    fn exponent(&self) -> T {
        match *self {
            Substitution::Rational(d) => T::int(d as i64),
            Substitution::Power(q) => q,
        }
    }

    /// Upper limit in `u` for an interval of length `len`.
    fn u_max(&self, len: T) -> T {
        match *self {
            Substitution::Rational(1) => len,
            Substitution::Rational(2) => len.sqrt(),
            _ => len.powf(self.exponent().recip()),
        }
    }

    /// `(t - lo, dt/du)` at `u`.
    fn map(&self, u: T) -> (T, T) {
        match *self {
            Substitution::Rational(d) => {
                let d = d as i32;
                let um = u.powi(d - 1);
                (um * u, T::int(d as i64) * um)
            }
            Substitution::Power(q) => {
                let t = u.powf(q);
                (t, q * t / u)
            }
        }
    }
}

/// Integrates `f` over `[lo, hi]`. When `lo_exponent` is given, `f` may
/// behave like `(t - lo)^alpha` near `lo` (`alpha > -1`).
pub fn integrate_finite<T: Real, V: QuadValue<T>>(
    f: impl Fn(T) -> V,
    lo: T,
    hi: T,
    lo_exponent: Option<T>,
    cfg: &PrecisionConfig,
) -> Result<V> {
    let integ = Integrator::new(cfg);
    Ok(integrate_with(&integ, &f, lo, hi, lo_exponent, &[])?.value)
}

/// Same as [`integrate_finite`] with a caller-owned integrator and breakpoints.
pub fn integrate_with<T: Real, V: QuadValue<T>>(
    integ: &Integrator<T>,
    f: &impl Fn(T) -> V,
    lo: T,
    hi: T,
    lo_exponent: Option<T>,
    breaks: &[T],
) -> Result<Quadrature<V, T>> {
    if hi <= lo {
        return Ok(Quadrature { value: V::zero(), error: T::zero(), panels: 0 });
    }
    let sub = match lo_exponent {
        Some(a) if a <= -T::one() => return Err(Error::InvalidInput("endpoint exponent must exceed -1".into())),
        Some(a) => Substitution::for_exponent(a),
        None => Substitution::Rational(1),
    };
    if sub == Substitution::Rational(1) {
        return integ.integrate(f, lo, hi, breaks);
    }
    let g = |u: T| {
        let (dt, jac) = sub.map(u);
        f(lo + dt) * jac
    };
    let ubreaks: Vec<T> = breaks.iter().filter(|b| **b > lo && **b < hi).map(|b| sub.u_max(*b - lo)).collect();
    integ.integrate(&g, T::zero(), sub.u_max(hi - lo), &ubreaks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prelude::*;
    use crate::scalar::{DoubleDouble, Octuple};
    use proptest::prelude::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let r = GaussLegendre::<DoubleDouble>::new(7);
        let sum: DoubleDouble = r.weights.iter().copied().fold(DoubleDouble::zero(), |a, b| a + b);
        assert!((sum - DoubleDouble::lit(2.0)).abs().f64() < 1e-30);
        // int_{-1}^{1} x^12 dx = 2/13
        let v = r.apply(&|x: DoubleDouble| x.powi(12), -DoubleDouble::one(), DoubleDouble::one());
        assert!((v - DoubleDouble::lit(2.0) / DoubleDouble::lit(13.0)).abs().f64() < 1e-30);
    }

    #[test]
    fn trivial_integrals() {
        let cfg = PrecisionConfig::new(106).unwrap();
        let one = integrate_finite(|_t: f64| 1.0, 0.0, 1.0, None, &cfg).unwrap();
        assert!((one - 1.0).abs() < 1e-15);
        let s = integrate_finite(
            |t: DoubleDouble| t.sqrt().recip(),
            DoubleDouble::zero(),
            DoubleDouble::one(),
            Some(DoubleDouble::lit(-0.5)),
            &cfg,
        )
        .unwrap();
        assert!((s - DoubleDouble::lit(2.0)).abs().f64() < 1e-30);
    }

    #[test]
    fn irrational_exponent_uses_power_substitution() {
        let a = std::f64::consts::FRAC_1_SQRT_2 - 1.0;
        assert!(matches!(Substitution::for_exponent(a), Substitution::Power(_)));
        assert_eq!(Substitution::for_exponent(0.75), Substitution::<f64>::Rational(4));
        let cfg = PrecisionConfig::new(64).unwrap();
        let v = integrate_finite(|t: f64| t.powf(a), 0.0, 1.0, Some(a), &cfg).unwrap();
        assert!((v - 1.0 / (1.0 + a)).abs() < 1e-12);
    }

    #[test]
    fn gamma_three_halves_at_high_precision() {
        type O = Octuple;
        let cfg = PrecisionConfig::new(256).unwrap();
        let cut = O::lit(cfg.tail_for(0.5, 237));
        let v = integrate_finite(|t: O| t.sqrt() * (-t).exp(), O::zero(), cut, Some(O::lit(0.5)), &cfg).unwrap();
        let want = O::PI().sqrt() / O::lit(2.0);
        assert!(((v - want) / want).abs().f64() < 1e-35);
    }

    #[test]
    fn divergence_is_reported() {
        let mut cfg = PrecisionConfig::new(64).unwrap();
        cfg.max_panels = 50;
        let r = integrate_finite(|t: f64| (1.0 / t).sin(), 1e-9, 1.0, None, &cfg);
        assert!(matches!(r, Err(Error::Divergence { .. })));
    }

    #[test]
    fn complex_values() {
        let cfg = PrecisionConfig::new(64).unwrap();
        let z = integrate_finite(|t: f64| Complex::new(t.cos(), t.sin()), 0.0, 1.0, None, &cfg).unwrap();
        assert!((z.re - 1f64.sin()).abs() < 1e-14);
        assert!((z.im - (1.0 - 1f64.cos())).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn halving_panels_does_not_increase_error_estimate(c in 0.5f64..6.0, s in -2.0f64..2.0) {
            let mut cfg = PrecisionConfig::new(64).unwrap();
            cfg.quad_order = 3;
            let integ = Integrator::<f64>::new(&cfg);
            let f = |t: f64| (c * t).cos() * (s * t).exp();
            // From the first resolved level on.
            let mut last = f64::INFINITY;
            for k in 2..7 {
                let (_, e) = integ.uniform(&f, 0.0, 2.0, 1 << k);
                prop_assert!(e <= last * (1.0 + 1e-9));
                last = e;
            }
        }
    }
}
