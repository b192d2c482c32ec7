use crate::config::PrecisionConfig;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

use super::cheb::chebyshev_coefficients;
use super::{MinimaxProblem, MinimaxSolution};

const MAX_ITER: usize = 100;
const PATIENCE: usize = 12;
const SAMPLES: usize = 16;

/// Runs the exchange from the extrema of the Chebyshev polynomial of
/// degree `n + 1` mapped onto the reduced interval.
pub fn solve<T: Real>(problem: &MinimaxProblem<T>, cfg: &PrecisionConfig) -> Result<MinimaxSolution<T>> {
    let n = problem.degree();
    let (lo, hi) = problem.interval;
    let half = (hi - lo) * T::lit(0.5);
    let mid = (hi + lo) * T::lit(0.5);
    let mut reference: Vec<T> =
        (0..n + 2).map(|j| mid - half * (T::PI() * T::int(j as i64) / T::int(n as i64 + 1)).cos()).collect();
    reference[0] = lo;
    reference[n + 1] = hi;
    solve_from(problem, reference, cfg)
}

/// Runs the exchange from a caller-supplied reference of `degree + 2`
/// increasing points.
pub fn solve_from<T: Real>(
    problem: &MinimaxProblem<T>,
    mut reference: Vec<T>,
    cfg: &PrecisionConfig,
) -> Result<MinimaxSolution<T>> {
    cfg.validate()?;
    let n = problem.degree();
    let (lo, hi) = problem.interval;
    if reference.len() != n + 2 {
        return invalid(format!("reference needs {} points, got {}", n + 2, reference.len()));
    }
    if reference.windows(2).any(|w| !(w[0] < w[1])) || reference[0] < lo || reference[n + 1] > hi {
        return invalid("reference must be strictly increasing inside the interval");
    }
    let bits = cfg.bits::<T>();
    let need = -problem.log2_error_estimate();
    if need > bits as f64 / 2.0 {
        return Err(Error::PrecisionBudget { required_bits: (2.0 * need).ceil() as u32, available_bits: bits });
    }
    // Levelling is accepted at 1 - 2^(-bits/4); past that the exchange keeps
    // going while it still improves, up to the rounding floor.
    let stop = T::lit(2.0).powf(-T::lit(bits as f64 / 4.0));
    let tight = T::lit(2.0).powf(-T::lit(bits as f64 / 2.0));
    let noise = T::lit(2.0).powf(-T::lit(bits as f64 - 8.0));
    let mut prev_ratio = T::zero();

    let mut best_ratio = T::zero();
    let mut since_best = 0;
    for iter in 1..=MAX_ITER {
        let lev = Levelled::new(problem, &reference)?;
        if lev.e.abs() <= noise * lev.scale {
            return Ok(lev.into_solution(problem, reference.clone(), T::one(), iter));
        }
        let scan = scan(problem, &lev, &reference, bits);
        let top = scan.values.iter().fold(scan.stray.1, |m, v| m.max(v.abs()));
        let bottom = scan.values.iter().fold(top, |m, v| m.min(v.abs()));
        let ratio = bottom / top;
        let floor = tight.max(noise * lev.scale / lev.e.abs());
        let settled = ratio >= T::one() - floor || (ratio >= T::one() - stop && ratio <= prev_ratio);
        if settled {
            return Ok(lev.into_solution(problem, scan.points, ratio, iter));
        }
        prev_ratio = ratio;
        if ratio > best_ratio {
            best_ratio = ratio;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= PATIENCE {
                return Err(Error::NonConvergence { iterations: iter, levelling_ratio: best_ratio.f64() });
            }
        }
        reference = scan.points;
        if scan.stray.1 > scan.values.iter().fold(T::zero(), |m, v| m.max(v.abs())) {
            let signs: Vec<T> = scan.values.iter().map(|v| v.signum()).collect();
            insert_point(&mut reference, &signs, scan.stray.0, scan.stray.2);
        }
        if reference.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Conditioning("reference points collapsed".into()));
        }
    }
    Err(Error::NonConvergence { iterations: MAX_ITER, levelling_ratio: best_ratio.f64() })
}

/// Levelled interpolant on a reference: the degree-`n` polynomial with
/// weighted deviation `(-1)^j e` at the `n + 2` reference points.
struct Levelled<T> {
    e: T,
    t: Vec<T>,
    mu: Vec<T>,
    vals: Vec<T>,
    lo: T,
    hi: T,
    scale: T,
}

impl<T: Real> Levelled<T> {
    fn new(problem: &MinimaxProblem<T>, reference: &[T]) -> Result<Self> {
        let (lo, hi) = problem.interval;
        let n = reference.len() - 2;
        let t: Vec<T> = reference.iter().map(|&y| (y + y - lo - hi) / (hi - lo)).collect();
        let mut lambda = vec![T::one(); n + 2];
        for j in 0..n + 2 {
            for i in 0..n + 2 {
                if i != j {
                    lambda[j] = lambda[j] * (t[j] - t[i]);
                }
            }
            if lambda[j] == T::zero() {
                return Err(Error::Conditioning("coincident reference points".into()));
            }
            lambda[j] = lambda[j].recip();
        }
        let f: Vec<T> = reference.iter().map(|&y| problem.target(y)).collect();
        let w: Vec<T> = reference.iter().map(|&y| problem.weight(y)).collect();
        let (mut num, mut den) = (T::zero(), T::zero());
        let mut scale = T::zero();
        for j in 0..n + 2 {
            let sj = if j % 2 == 0 { T::one() } else { -T::one() };
            num = num + lambda[j] * f[j];
            den = den + lambda[j] * sj / w[j];
            scale = scale.max((w[j] * f[j]).abs());
        }
        let e = num / den;
        let vals = (0..=n)
            .map(|j| {
                let sj = if j % 2 == 0 { T::one() } else { -T::one() };
                f[j] - sj * e / w[j]
            })
            .collect();
        let mu = (0..=n).map(|j| lambda[j] * (t[j] - t[n + 1])).collect();
        let mut t = t;
        t.truncate(n + 1);
        Ok(Levelled { e, t, mu, vals, lo, hi, scale })
    }

    fn eval_t(&self, x: T) -> T {
        let (mut num, mut den) = (T::zero(), T::zero());
        for j in 0..self.t.len() {
            let d = x - self.t[j];
            if d == T::zero() {
                return self.vals[j];
            }
            let c = self.mu[j] / d;
            num = num + c * self.vals[j];
            den = den + c;
        }
        num / den
    }

    fn eval(&self, y: T) -> T {
        self.eval_t((y + y - self.lo - self.hi) / (self.hi - self.lo))
    }

    fn into_solution(
        self,
        problem: &MinimaxProblem<T>,
        alternation: Vec<T>,
        levelling_ratio: T,
        iterations: usize,
    ) -> MinimaxSolution<T> {
        let coeffs = chebyshev_coefficients(problem.degree(), |x| self.eval_t(x));
        let first: i8 = if self.e < T::zero() { -1 } else { 1 };
        let signs = (0..alternation.len()).map(|j| if j % 2 == 0 { first } else { -first }).collect();
        MinimaxSolution {
            coeffs,
            error_e: self.e.abs(),
            alternation,
            signs,
            iterations,
            levelling_ratio,
            interval: problem.interval,
        }
    }
}

struct Scan<T> {
    points: Vec<T>,
    /// Signed deviations at `points`.
    values: Vec<T>,
    /// Largest excursion against the expected sign: (abscissa, size, sign).
    stray: (T, T, T),
}

fn scan<T: Real>(problem: &MinimaxProblem<T>, lev: &Levelled<T>, reference: &[T], bits: u32) -> Scan<T> {
    let d = |y: T| problem.deviation(y, lev.eval(y));
    let n = reference.len() - 2;
    let (lo, hi) = problem.interval;
    let sign0 = if lev.e < T::zero() { -T::one() } else { T::one() };
    let sigma = |j: usize| if j % 2 == 0 { sign0 } else { -sign0 };

    let mut cuts = Vec::with_capacity(n + 3);
    cuts.push(lo);
    let steps = bits.min(60);
    for j in 0..=n {
        let (mut l, mut r) = (reference[j], reference[j + 1]);
        let s = sigma(j);
        for _ in 0..steps {
            let m = (l + r) * T::lit(0.5);
            if d(m) * s > T::zero() {
                l = m;
            } else {
                r = m;
            }
        }
        cuts.push((l + r) * T::lit(0.5));
    }
    cuts.push(hi);

    let golden_iters = ((bits as f64 / 2.0) * std::f64::consts::LN_2 / 0.4812).ceil() as usize + 4;
    let mut points = Vec::with_capacity(n + 2);
    let mut values = Vec::with_capacity(n + 2);
    let mut stray = (lo, T::zero(), T::one());
    for j in 0..n + 2 {
        let s = sigma(j);
        let g = |y: T| s * d(y);
        let (l, r) = (cuts[j], cuts[j + 1]);
        let h = (r - l) / T::int(SAMPLES as i64);
        let ys: Vec<T> = (0..=SAMPLES).map(|i| l + h * T::int(i as i64)).collect();
        let gs: Vec<T> = ys.iter().map(|&y| g(y)).collect();
        let mut arg = 0;
        for i in 0..=SAMPLES {
            if gs[i] > gs[arg] {
                arg = i;
            }
            if -gs[i] > stray.1 {
                stray = (ys[i], -gs[i], -s);
            }
        }
        let a = ys[arg.saturating_sub(1)];
        let b = ys[(arg + 1).min(SAMPLES)];
        let (mut y, mut v) = golden_max(&g, a, b, golden_iters);
        if gs[arg] >= v {
            y = ys[arg];
            v = gs[arg];
        }
        points.push(y);
        values.push(s * v);
    }
    Scan { points, values, stray }
}

fn golden_max<T: Real>(g: &impl Fn(T) -> T, mut a: T, mut b: T, iters: usize) -> (T, T) {
    let r = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = g(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Single-point exchange keeping sign alternation.
fn insert_point<T: Real>(reference: &mut Vec<T>, signs: &[T], u: T, su: T) {
    let last = reference.len() - 1;
    if u < reference[0] {
        if su == signs[0] {
            reference[0] = u;
        } else {
            reference.pop();
            reference.insert(0, u);
        }
    } else if u > reference[last] {
        if su == signs[last] {
            reference[last] = u;
        } else {
            reference.remove(0);
            reference.push(u);
        }
    } else {
        let j = (0..last).find(|&j| reference[j] <= u && u <= reference[j + 1]).unwrap_or(0);
        if su == signs[j] {
            reference[j] = u;
        } else {
            reference[j + 1] = u;
        }
    }
}
