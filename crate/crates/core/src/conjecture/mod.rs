//! Exploratory solver for `L sin rho(x) sinh(rho~(x) + x) = x` on a
//! truncated symmetric grid, where `rho~` is the Hilbert transform of `rho`.
//!
//! In terms of the boundary curve `u + iv` of the conjectured phase map,
//! `u = rho~ + x` and `v = pi - rho`. Nothing here claims the solution
//! exists; runs report residuals only.

use crate::config::PrecisionConfig;
use crate::error::{invalid, Result};
use crate::scalar::Real;
use crate::specialfn::{check_grid, hilbert_odd_even};

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureState<T> {
    pub p: T,
    /// Uniform grid on `[-X, X]`.
    pub grid: Vec<T>,
    pub rho: Vec<T>,
    pub rho_tilde: Vec<T>,
    pub l: T,
    /// `max |L sin rho sinh(rho~ + x) - x|` over interior nodes.
    pub residual_norm: T,
}

impl<T: Real> ConjectureState<T> {
    /// `u(0) = rho~(0)`, zero under the even ansatz.
    pub fn u0(&self) -> T {
        at_origin(&self.grid, &self.rho_tilde)
    }

    /// `v(0) = pi - rho(0)`. The normalization `phi(0) = 0` asks for zero;
    /// the principal `arcsin` branch keeps it at `pi/2` or more.
    pub fn v0(&self) -> T {
        T::PI() - at_origin(&self.grid, &self.rho)
    }
}

fn at_origin<T: Real>(x: &[T], f: &[T]) -> T {
    let n = x.len();
    let c = n / 2;
    if n % 2 == 1 {
        f[c]
    } else {
        (f[c - 1] + f[c]) * T::lit(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointOptions {
    pub x_max: f64,
    pub nodes: usize,
    /// Initial damping.
    pub theta: f64,
    /// Damping below which the run is declared divergent.
    pub min_theta: f64,
    pub max_iter: usize,
    /// Consecutive residual increases tolerated before `theta` is halved.
    pub patience: usize,
    /// Stop once the residual falls below this; `None` picks
    /// `2^-(bits-10) max(1, X)`.
    pub residual_tol: Option<f64>,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        FixedPointOptions {
            x_max: 40.0,
            nodes: 4097,
            theta: 0.2,
            min_theta: 1e-3,
            max_iter: 20_000,
            patience: 10,
            residual_tol: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: usize,
    pub residual: f64,
    pub step: f64,
    pub theta: f64,
    pub clamped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointRun<T> {
    /// Final state, or the best one seen if the run diverged.
    pub state: ConjectureState<T>,
    pub iterations: usize,
    pub converged: bool,
    pub diverged: bool,
    /// Total number of `arcsin` arguments clamped into `[-1, 1]`.
    pub clamp_events: usize,
    pub trace: Vec<TraceRow>,
}

fn interior_residual<T: Real>(x: &[T], rho: &[T], rt: &[T], l: T) -> T {
    let n = x.len();
    (1..n - 1).fold(T::zero(), |m, i| m.max((l * rho[i].sin() * (rt[i] + x[i]).sinh() - x[i]).abs()))
}

/// `arcsin` argument `x / (L sinh(rho~ + x))`; at `x = 0` its limit
/// `1 / (L (1 + rho~'(0)))`.
fn asin_argument<T: Real>(x: &[T], rt: &[T], l: T, h: T) -> Vec<T> {
    let n = x.len();
    (0..n)
        .map(|i| {
            if x[i] == T::zero() && i > 0 && i + 1 < n {
                let slope = (rt[i + 1] - rt[i - 1]) / (h + h);
                (l * (T::one() + slope)).recip()
            } else {
                x[i] / (l * (rt[i] + x[i]).sinh())
            }
        })
        .collect()
}

fn symmetrize<T: Real>(rho: &mut [T]) {
    let n = rho.len();
    for i in 0..n / 2 {
        let m = (rho[i] + rho[n - 1 - i]) * T::lit(0.5);
        rho[i] = m;
        rho[n - 1 - i] = m;
    }
}

pub fn symmetric_grid<T: Real>(x_max: f64, nodes: usize) -> Result<Vec<T>> {
    if !(x_max > 0.0) || nodes < 5 {
        return invalid("need x_max > 0 and at least 5 nodes");
    }
    let xm = T::lit(x_max);
    let den = T::int(nodes as i64 - 1);
    let mut x: Vec<T> = (0..nodes).map(|i| -xm + (xm + xm) * T::int(i as i64) / den).collect();
    // exact symmetry, including an exact zero at the centre
    for i in 0..nodes / 2 {
        x[nodes - 1 - i] = -x[i];
    }
    if nodes % 2 == 1 {
        x[nodes / 2] = T::zero();
    }
    Ok(x)
}

/// Damped fixed point
/// `rho <- (1-theta) rho + theta asin(clamp(x / (L sinh(rho~ + x))))`
/// with even symmetry of `rho` imposed and `rho = 0` at the grid ends.
/// The damping is halved whenever the residual grows `patience` times in a
/// row; the run restarts from the best state seen.
pub fn solve_fixed_point<T: Real>(
    p: T,
    l: T,
    opts: &FixedPointOptions,
    cfg: &PrecisionConfig,
) -> Result<FixedPointRun<T>> {
    let half = p * T::lit(0.5);
    if !(p > T::zero()) || half == half.round() {
        return invalid(format!("p must be positive and not an even integer, got {}", p.f64()));
    }
    if !(l > T::zero()) {
        return invalid("L must be positive");
    }
    if !(opts.theta > 0.0 && opts.theta <= 1.0) || !(opts.min_theta > 0.0) {
        return invalid("damping must lie in (0, 1]");
    }
    let x = symmetric_grid::<T>(opts.x_max, opts.nodes)?;
    let h = check_grid(&x)?;
    let n = x.len();
    let tol = opts.residual_tol.unwrap_or_else(|| 2f64.powi(-(cfg.bits::<T>() as i32 - 10)) * opts.x_max.max(1.0));

    let mut rho: Vec<T> = x.iter().map(|&t| T::FRAC_PI_2() * (-(t * t)).exp()).collect();
    rho[0] = T::zero();
    rho[n - 1] = T::zero();

    let mut theta = opts.theta;
    let mut best: Option<(T, Vec<T>)> = None;
    let mut last_res = f64::INFINITY;
    let mut rising = 0;
    let mut clamp_events = 0;
    let mut trace = Vec::new();
    let mut converged = false;
    let mut diverged = false;
    let mut iterations = 0;

    for it in 0..opts.max_iter {
        iterations = it + 1;
        let rt = hilbert_odd_even(&rho);
        let res = interior_residual(&x, &rho, &rt, l);
        if !res.is_finite() {
            diverged = true;
            break;
        }
        if best.as_ref().map_or(true, |b| res < b.0) {
            best = Some((res, rho.clone()));
        }
        if res.f64() <= tol {
            trace.push(TraceRow { iteration: it, residual: res.f64(), step: 0.0, theta, clamped: 0 });
            converged = true;
            break;
        }
        rising = if res.f64() > last_res { rising + 1 } else { 0 };
        last_res = res.f64();
        if rising >= opts.patience {
            theta *= 0.5;
            rising = 0;
            if theta < opts.min_theta {
                diverged = true;
                break;
            }
            rho = best.as_ref().expect("best state recorded").1.clone();
            last_res = f64::INFINITY;
            continue;
        }

        let s = asin_argument(&x, &rt, l, h);
        let mut clamped = 0;
        let th = T::lit(theta);
        let mut step = T::zero();
        for i in 1..n - 1 {
            let mut si = s[i];
            if si.abs() > T::one() || !si.is_finite() {
                clamped += 1;
                si = if si > T::zero() { T::one() } else { -T::one() };
            }
            let next = (T::one() - th) * rho[i] + th * si.asin();
            step = step.max((next - rho[i]).abs());
            rho[i] = next;
        }
        symmetrize(&mut rho);
        clamp_events += clamped;
        trace.push(TraceRow { iteration: it, residual: res.f64(), step: step.f64(), theta, clamped });
    }

    if !converged {
        rho = best.map(|b| b.1).unwrap_or(rho);
    }
    let rho_tilde = hilbert_odd_even(&rho);
    let residual_norm = interior_residual(&x, &rho, &rho_tilde, l);
    Ok(FixedPointRun {
        state: ConjectureState { p, grid: x, rho, rho_tilde, l, residual_norm },
        iterations,
        converged,
        diverged,
        clamp_events,
        trace,
    })
}

/// Residual through the boundary-curve form `L sin v sinh u - x` with
/// `u = rho~ + x`, `v = pi - rho`.
pub fn curve_form_residual<T: Real>(state: &ConjectureState<T>) -> T {
    let x = &state.grid;
    let n = x.len();
    (1..n - 1).fold(T::zero(), |m, i| {
        let u = state.rho_tilde[i] + x[i];
        let v = T::PI() - state.rho[i];
        m.max((state.l * v.sin() * u.sinh() - x[i]).abs())
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderStudy<T> {
    pub nodes: Vec<usize>,
    pub residuals: Vec<T>,
    /// `max |rho_n - rho_2n|` on the shared nodes, for each consecutive pair.
    pub differences: Vec<T>,
    /// `differences[0] / differences[1]`; about 4 for a second-order scheme.
    pub ratio: T,
    pub all_converged: bool,
}

/// Solves on `nodes`, `2 nodes - 1` and `4 nodes - 3` points (each grid
/// contains the previous one) and compares the converged profiles.
pub fn grid_doubling_study<T: Real>(
    p: T,
    l: T,
    opts: &FixedPointOptions,
    cfg: &PrecisionConfig,
) -> Result<OrderStudy<T>> {
    if opts.nodes % 2 == 0 {
        return invalid("grid doubling needs an odd node count so grids nest");
    }
    let sizes = [opts.nodes, 2 * opts.nodes - 1, 4 * opts.nodes - 3];
    let mut runs = Vec::with_capacity(3);
    for &n in &sizes {
        runs.push(solve_fixed_point(p, l, &FixedPointOptions { nodes: n, ..*opts }, cfg)?);
    }
    let differences: Vec<T> = runs
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0].state.rho, &w[1].state.rho);
            a.iter().enumerate().fold(T::zero(), |m, (i, v)| m.max((*v - b[2 * i]).abs()))
        })
        .collect();
    Ok(OrderStudy {
        nodes: sizes.to_vec(),
        residuals: runs.iter().map(|r| r.state.residual_norm).collect(),
        ratio: differences[0] / differences[1],
        differences,
        all_converged: runs.iter().all(|r| r.converged),
    })
}
