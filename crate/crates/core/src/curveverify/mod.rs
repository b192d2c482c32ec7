//! Structural checks on computed extremal polynomials for `|x|^p`: the
//! phase `phi = arccos(+-(P(z) - z^p)/E)` along the imaginary axis, the
//! functional equation of its boundary curve, coefficient sign patterns,
//! and convergence to the limit profiles.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero as _};

use crate::asymptotics::Family;
use crate::config::PrecisionConfig;
use crate::conformal::{laurent_profile, power_profile};
use crate::error::{invalid, Error, Result};
use crate::remez::{eval_solution, eval_solution_complex, solve, MinimaxProblem, MinimaxSolution, ProblemKind};
use crate::scalar::{ldexp, to_rational, Real};
use crate::specialfn::cmath::cacos;

/// Largest `m` for which monomial coefficients are trusted.
pub const MAX_MONOMIAL_DEGREE: u32 = 16;

const MAX_REFINEMENTS: usize = 100_000;

/// Image `u + iv = phi(iy)` of the imaginary half-axis.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrace<T> {
    /// Includes any points inserted to keep the continuation smooth.
    pub y_grid: Vec<T>,
    pub u: Vec<T>,
    pub v: Vec<T>,
    /// `n` in `phi = +-arccos(w) + 2 pi n` at each point.
    pub branch_windings: Vec<i64>,
}

fn floor_half<T: Real>(p: T) -> i64 {
    (p * T::lit(0.5)).floor().to_i64().unwrap_or(0)
}

/// `(-1)^[p/2]`.
fn parity_sign<T: Real>(p: T) -> T {
    if floor_half(p) % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

fn check_absxp<T>(problem: &MinimaxProblem<T>) -> Result<()> {
    if problem.kind != ProblemKind::AbsXp {
        return invalid("curve checks apply to the |x|^p problem only");
    }
    Ok(())
}

/// `w(y) = (-1)^[p/2] (P(iy) - (iy)^p) / E`, so that `phi = arccos w`.
fn phase_argument<T: Real>(sol: &MinimaxSolution<T>, problem: &MinimaxProblem<T>, y: T) -> Result<Complex<T>> {
    let p = problem.p;
    let pz = eval_solution_complex(sol, problem, Complex::new(T::zero(), y))?;
    let half = p * T::FRAC_PI_2();
    let yp = y.powf(p);
    let zp = Complex::new(yp * half.cos(), yp * half.sin());
    Ok((pz - zp) * (parity_sign(p) / sol.error_e))
}

/// Preimage of `cos` closest to `prev`, with its winding number.
fn nearest_preimage<T: Real>(phi0: Complex<T>, prev: Complex<T>) -> (Complex<T>, i64) {
    let two_pi = T::PI() + T::PI();
    let mut best: Option<(Complex<T>, i64, T)> = None;
    for base in [phi0, -phi0] {
        let n = ((prev.re - base.re) / two_pi).round();
        let cand = Complex::new(base.re + two_pi * n, base.im);
        let dist = (cand - prev).norm();
        if best.as_ref().map_or(true, |b| dist < b.2) {
            best = Some((cand, n.to_i64().unwrap_or(0), dist));
        }
    }
    let (c, n, _) = best.expect("two candidates");
    (c, n)
}

/// Continues `phi(iy)` along `y_grid`, inserting midpoints wherever a step
/// of the phase reaches `pi/2`.
pub fn reconstruct_phase<T: Real>(
    sol: &MinimaxSolution<T>,
    problem: &MinimaxProblem<T>,
    y_grid: &[T],
) -> Result<PhaseTrace<T>> {
    check_absxp(problem)?;
    if y_grid.is_empty() {
        return invalid("empty y grid");
    }
    if y_grid.iter().any(|y| !(*y > T::zero()) || !y.is_finite()) {
        return invalid("y grid must be positive and finite");
    }
    if y_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return invalid("y grid must be strictly increasing");
    }
    let y0 = y_grid[0];
    let mut prev = cacos(phase_argument(sol, problem, y0)?);
    if !(prev.im > T::zero()) {
        return Err(Error::BranchTracking { y: y0.f64() });
    }
    let mut trace = PhaseTrace { y_grid: vec![y0], u: vec![prev.re], v: vec![prev.im], branch_windings: vec![0] };
    let mut prev_y = y0;
    let quarter = T::FRAC_PI_2();
    let mut refinements = 0;
    for &target in &y_grid[1..] {
        let mut pending = vec![target];
        while let Some(&y) = pending.last() {
            let (phi, n) = nearest_preimage(cacos(phase_argument(sol, problem, y)?), prev);
            if (phi - prev).norm() < quarter {
                if !(phi.im > T::zero()) {
                    return Err(Error::BranchTracking { y: y.f64() });
                }
                trace.y_grid.push(y);
                trace.u.push(phi.re);
                trace.v.push(phi.im);
                trace.branch_windings.push(n);
                prev = phi;
                prev_y = y;
                pending.pop();
                continue;
            }
            refinements += 1;
            let mid = (prev_y + y) * T::lit(0.5);
            if refinements > MAX_REFINEMENTS || !(mid > prev_y && mid < y) {
                return Err(Error::BranchTracking { y: y.f64() });
            }
            pending.push(mid);
        }
    }
    Ok(trace)
}

/// Relative residuals `(E sin u sinh v - |sin(pi p/2)| y^p) / (|sin(pi p/2)| y^p)`.
pub fn curve_residual<T: Real>(trace: &PhaseTrace<T>, e: T, p: T) -> Result<Vec<T>> {
    let s = (p * T::FRAC_PI_2()).sin().abs();
    if !(s > T::zero()) {
        return invalid("p is an even integer; the curve equation degenerates");
    }
    Ok(trace
        .y_grid
        .iter()
        .zip(trace.u.iter().zip(&trace.v))
        .map(|(&y, (&u, &v))| {
            let rhs = s * y.powf(p);
            (e * u.sin() * v.sinh() - rhs) / rhs
        })
        .collect())
}

/// Coefficient signs of the generalised polynomial `P(x) - x^p - tE`,
/// ordered by exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct SignPattern {
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub signs: Vec<i8>,
    pub sign_changes: usize,
    pub expected_changes: usize,
    pub first_sign: i8,
    pub last_sign: i8,
    pub expected_first: i8,
    pub expected_last: i8,
}

impl SignPattern {
    pub fn passes(&self) -> bool {
        self.sign_changes == self.expected_changes
            && self.first_sign == self.expected_first
            && self.last_sign == self.expected_last
    }
}

fn rational<T: Real>(x: T) -> Result<BigRational> {
    to_rational(x).ok_or_else(|| Error::InvalidInput(format!("{} is not finite", x.f64())))
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Rows `j`: coefficients of `y^i` in `T_j(alpha y + beta)`.
fn chebyshev_to_monomial(n: usize, alpha: &BigRational, beta: &BigRational) -> Vec<Vec<BigRational>> {
    let zero = BigRational::zero();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    let mut t0 = vec![zero.clone(); n + 1];
    t0[0] = BigRational::from_integer(BigInt::from(1));
    rows.push(t0);
    if n == 0 {
        return rows;
    }
    let mut t1 = vec![zero.clone(); n + 1];
    t1[0] = beta.clone();
    t1[1] = alpha.clone();
    rows.push(t1);
    let two = BigRational::from_integer(BigInt::from(2));
    for j in 2..=n {
        let (a, b) = (&rows[j - 1], &rows[j - 2]);
        let mut next = vec![zero.clone(); n + 1];
        for i in 0..=n {
            let mut c = &two * beta * &a[i] - &b[i];
            if i > 0 {
                c += &two * alpha * &a[i - 1];
            }
            next[i] = c;
        }
        rows.push(next);
    }
    rows
}

/// Counts sign changes in the coefficients of `P(x) - x^p - tE`.
///
/// The Chebyshev coefficients are converted to monomials in `y = x^2`
/// exactly; a monomial whose magnitude does not exceed its propagated
/// uncertainty is a conditioning error.
pub fn sign_pattern_check<T: Real>(sol: &MinimaxSolution<T>, problem: &MinimaxProblem<T>, t: T) -> Result<SignPattern> {
    check_absxp(problem)?;
    if !(t.abs() < T::one()) {
        return invalid("t must lie in (-1, 1)");
    }
    if problem.m > MAX_MONOMIAL_DEGREE {
        return Err(Error::Conditioning(format!(
            "monomial conversion limited to m <= {MAX_MONOMIAL_DEGREE}, got {}",
            problem.m
        )));
    }
    let n = sol.coeffs.len() - 1;
    let (lo, hi) = sol.interval;
    let (lo, hi) = (rational(lo)?, rational(hi)?);
    let width = &hi - &lo;
    let two = BigRational::from_integer(BigInt::from(2));
    let alpha = &two / &width;
    let beta = -(&lo + &hi) / &width;
    let rows = chebyshev_to_monomial(n, &alpha, &beta);
    let c: Vec<BigRational> = sol.coeffs.iter().map(|&x| rational(x)).collect::<Result<_>>()?;

    // uncertainty of each Chebyshev coefficient: unlevelled part of E plus rounding
    let e = sol.error_e;
    let cmax = sol.coeffs.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let slack = (e * (T::one() - sol.levelling_ratio)).abs();
    let delta = slack.f64() + ldexp(cmax, -(T::MANTISSA_BITS as i64)).f64();

    let te = rational(t * e)?;
    let mut terms: Vec<(f64, BigRational)> = Vec::with_capacity(n + 2);
    for i in 0..=n {
        let mut mono = BigRational::zero();
        let mut spread = 0.0;
        for j in 0..=n {
            mono += &c[j] * &rows[j][i];
            spread += rows[j][i].abs().to_f64().unwrap_or(f64::INFINITY);
        }
        let mut bound = delta * spread;
        if i == 0 {
            mono -= &te;
            bound += t.abs().f64() * slack.f64();
        }
        let mag = mono.abs().to_f64().unwrap_or(0.0);
        if !(mag > bound) {
            return Err(Error::Conditioning(format!(
                "coefficient of x^{} ({mag:e}) is within its error bound {bound:e}",
                2 * i
            )));
        }
        terms.push((2.0 * i as f64, mono));
    }
    terms.push((problem.p.f64(), BigRational::from_integer(BigInt::from(-1))));
    terms.sort_by(|a, b| a.0.total_cmp(&b.0));

    let signs: Vec<i8> = terms.iter().map(|(_, c)| sign_of(c)).filter(|&s| s != 0).collect();
    let sign_changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    let m = problem.m as i64;
    let parity = |k: i64| if k.rem_euclid(2) == 0 { 1i8 } else { -1i8 };
    let half = floor_half(problem.p);
    Ok(SignPattern {
        exponents: terms.iter().map(|(x, _)| *x).collect(),
        coefficients: terms.iter().map(|(_, c)| c.to_f64().unwrap_or(f64::NAN)).collect(),
        sign_changes,
        expected_changes: problem.m as usize + 1,
        first_sign: signs.first().copied().unwrap_or(0),
        last_sign: signs.last().copied().unwrap_or(0),
        expected_first: parity(half),
        expected_last: parity(half + m + 1),
        signs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow<T> {
    pub m: u32,
    /// Rescaled extremal function on the lambda grid.
    pub rescaled: Vec<T>,
    pub sup_distance: T,
    pub argmax_lambda: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable<T> {
    pub family: Family<T>,
    pub lambda_grid: Vec<T>,
    pub profile: Vec<T>,
    pub rows: Vec<ProfileRow<T>>,
}

/// Compares rescaled extremal functions with their limit profile:
/// `(m/a)^(p/2) P_m(sqrt(a/m) lambda)` for `|x|^p`, and
/// `f(sqrt(2a/(2m-1)) lambda)` for the odd Laurent problem.
pub fn profile_convergence<T: Real>(
    family: Family<T>,
    m_list: &[u32],
    lambda_grid: &[T],
    cfg: &PrecisionConfig,
    jobs: usize,
) -> Result<ProfileTable<T>> {
    if m_list.is_empty() || lambda_grid.is_empty() {
        return invalid("need at least one degree and one lambda");
    }
    if lambda_grid.iter().any(|l| !(*l > T::zero())) {
        return invalid("lambda grid must be positive");
    }
    let profile: Vec<T> = match family {
        Family::AbsXp { p, .. } => lambda_grid.iter().map(|&l| power_profile(p, l, cfg)).collect::<Result<_>>()?,
        Family::SgnLaurent { k, .. } => {
            lambda_grid.iter().map(|&l| laurent_profile(k, l, cfg)).collect::<Result<_>>()?
        }
        Family::AkhiezerPower { .. } => return invalid("no limit profile for the inverse-power family"),
    };
    let row = |&m: &u32| -> Result<ProfileRow<T>> {
        let problem = family.problem(m)?;
        let sol = solve(&problem, cfg)?;
        let mm = T::int(m as i64);
        let (scale, pre) = match family {
            Family::AbsXp { p, a } => ((a / mm).sqrt(), (mm / a).powf(p * T::lit(0.5))),
            Family::SgnLaurent { a, .. } => (((a + a) / T::int(2 * m as i64 - 1)).sqrt(), T::one()),
            Family::AkhiezerPower { .. } => unreachable!("rejected above"),
        };
        let rescaled: Vec<T> =
            lambda_grid.iter().map(|&l| Ok(pre * eval_solution(&sol, &problem, scale * l)?)).collect::<Result<_>>()?;
        let (mut sup, mut arg) = (T::zero(), lambda_grid[0]);
        for ((&r, &f), &l) in rescaled.iter().zip(&profile).zip(lambda_grid) {
            let d = (r - f).abs();
            if d > sup {
                sup = d;
                arg = l;
            }
        }
        Ok(ProfileRow { m, rescaled, sup_distance: sup, argmax_lambda: arg })
    };
    let rows = crate::par::map(jobs, m_list, row)?;
    Ok(ProfileTable { family, lambda_grid: lambda_grid.to_vec(), profile, rows })
}
