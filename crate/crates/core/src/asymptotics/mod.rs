//! Closed-form large-degree predictions for the minimax errors and sweeps
//! that compare them with Remez results.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::config::PrecisionConfig;
use crate::error::{invalid, Result};
use crate::remez::{build_absxp, build_akhiezer, build_power, build_sgn_laurent, solve, MinimaxProblem};
use crate::scalar::Real;
use crate::specialfn::log_gamma;

fn check_a<T: Real>(a: T) -> Result<()> {
    if !(a > T::zero() && a < T::one()) {
        return invalid(format!("a must lie in (0, 1), got {}", a.f64()));
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

/// `log |Gamma(x)|`.
fn ln_abs_gamma<T: Real>(x: T, cfg: &PrecisionConfig) -> Result<T> {
    Ok(log_gamma(x, cfg)?.value)
}

/// Leading behaviour of `E_{2m}(p, a)`:
/// `((1-a)/(1+a))^(m+1) m^(-p/2-1) a^(p/2-1) (1+a)^2 / (2 |Gamma(-p/2)|)`.
pub fn predict_abs_power_error<T: Real>(p: T, a: T, m: u32, cfg: &PrecisionConfig) -> Result<T> {
    check_p(p)?;
    check_a(a)?;
    predict_power_error(p, a, m, cfg)
}

/// Same formula without the sign restriction on `p` (used for `p = -2s`).
pub fn predict_power_error<T: Real>(p: T, a: T, m: u32, cfg: &PrecisionConfig) -> Result<T> {
    check_a(a)?;
    if m == 0 {
        return invalid("m must be positive");
    }
    let one = T::one();
    let half = p * T::lit(0.5);
    let mm = T::int(m as i64);
    let log = T::int(m as i64 + 1) * ((one - a) / (one + a)).ln() - (half + one) * mm.ln()
        + (half - one) * a.ln()
        + T::lit(2.0) * (one + a).ln()
        - T::lit(2.0).ln()
        - ln_abs_gamma(-half, cfg)?;
    Ok(log.exp())
}

/// The rearranged form
/// `(a/m)^(p/2) ((1-a)/(1+a))^m (1-a^2) / (2 a m |Gamma(-p/2)|)`.
pub fn predict_e_rearranged<T: Real>(p: T, a: T, m: u32, cfg: &PrecisionConfig) -> Result<T> {
    check_p(p)?;
    check_a(a)?;
    if m == 0 {
        return invalid("m must be positive");
    }
    let one = T::one();
    let half = p * T::lit(0.5);
    let mm = T::int(m as i64);
    let log = half * (a / mm).ln() + mm * ((one - a) / (one + a)).ln() + (one - a * a).ln()
        - (T::lit(2.0) * a * mm).ln()
        - ln_abs_gamma(-half, cfg)?;
    Ok(log.exp())
}

/// Large-`m` form of `B = arccosh(1 / L_m^k(a))` as stated:
/// `(m-1/2) log((1+a)/(1-a)) + (k+1/2) log(2m-1) + (k+1/2) log(a/(1-a^2)) - log(Gamma(k+1/2)/pi)`.
pub fn predict_laurent_b<T: Real>(k: u32, a: T, m: u32, cfg: &PrecisionConfig) -> Result<T> {
    if k < 1 || m < 1 {
        return invalid("need k >= 1 and m >= 1");
    }
    check_a(a)?;
    let one = T::one();
    let kh = T::lit(k as f64 + 0.5);
    let mh = T::lit(m as f64 - 0.5);
    Ok(mh * ((one + a) / (one - a)).ln() + kh * T::int(2 * m as i64 - 1).ln() + kh * (a / (one - a * a)).ln()
        - (ln_abs_gamma(kh, cfg)? - T::PI().ln()))
}

/// [`predict_laurent_b`] with the `(k+1/2) log 2` that comes from `log(2 A_m)`,
/// `A_m = a (2m-1)/(1-a^2)`, in the derivation of the limit.
pub fn predict_laurent_b_with_log2<T: Real>(k: u32, a: T, m: u32, cfg: &PrecisionConfig) -> Result<T> {
    Ok(predict_laurent_b(k, a, m, cfg)? + T::lit(k as f64 + 0.5) * T::LN_2())
}

/// `B = arccosh(1/L)`.
pub fn recover_b<T: Real>(l: T) -> T {
    l.recip().acosh()
}

/// `b = (1+a^2)/(1-a^2)`.
pub fn b_from_a<T: Real>(a: T) -> T {
    let a2 = a * a;
    (T::one() + a2) / (T::one() - a2)
}

/// `a = sqrt((b-1)/(b+1))`.
pub fn a_from_b<T: Real>(b: T) -> T {
    ((b - T::one()) / (b + T::one())).sqrt()
}

/// `sqrt(b^2-1) = 2a/(1-a^2)`.
pub fn sqrt_b2_minus_1<T: Real>(a: T) -> T {
    (a + a) / (T::one() - a * a)
}

/// `b - sqrt(b^2-1) = (1-a)/(1+a)`.
pub fn b_minus_sqrt<T: Real>(a: T) -> T {
    (T::one() - a) / (T::one() + a)
}

/// Exact `b = (1+a^2)/(1-a^2)` and `b - sqrt(b^2-1) = (1-a)/(1+a)` for rational `a`.
pub fn exact_change_of_variable(a: &BigRational) -> Result<(BigRational, BigRational)> {
    let one = BigRational::one();
    if !(a > &BigRational::zero() && a < &one) {
        return invalid(format!("a must lie in (0, 1), got {a}"));
    }
    let a2 = a * a;
    Ok(((&one + &a2) / (&one - &a2), (&one - a) / (&one + a)))
}

/// `E_{2l}(-2s, a) = (1+b)^s E_l[(b+x)^-s]`.
pub fn akhiezer_convert<T: Real>(s: T, a: T, e_akhiezer: T) -> Result<T> {
    check_a(a)?;
    if s == T::zero() {
        return invalid("s must be nonzero");
    }
    Ok((T::one() + b_from_a(a)).powf(s) * e_akhiezer)
}

/// `E_l[(b+x)^-s] ~ l^(s-1) / |Gamma(s)| (b - sqrt(b^2-1))^l / (b^2-1)^((s+1)/2)`.
pub fn predict_inverse_power_error<T: Real>(s: T, b: T, l: u32, cfg: &PrecisionConfig) -> Result<T> {
    if !(b > T::one()) || s == T::zero() {
        return invalid("need b > 1 and s != 0");
    }
    if l == 0 {
        return invalid("l must be positive");
    }
    let one = T::one();
    let r = (b * b - one).sqrt();
    let log = (s - one) * T::int(l as i64).ln() - ln_abs_gamma(s, cfg)? + T::int(l as i64) * (b - r).ln()
        - (s + one) * T::lit(0.5) * (b * b - one).ln();
    Ok(log.exp())
}

/// Both sides of the inverse-power identity at one degree: the two-interval
/// error for `y^-s` on `[a^2, 1]` and the converted `[-1, 1]` error.
pub fn inverse_power_identity<T: Real>(s: T, a: T, l: u32, cfg: &PrecisionConfig) -> Result<(T, T)> {
    let direct = solve(&build_power(-(s + s), a, l)?, cfg)?.error_e;
    let interval = solve(&build_akhiezer(s, b_from_a(a), l)?, cfg)?.error_e;
    Ok((direct, akhiezer_convert(s, a, interval)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family<T> {
    AbsXp { p: T, a: T },
    SgnLaurent { k: u32, a: T },
    AkhiezerPower { s: T, b: T },
}

impl<T: Real> Family<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Family::AbsXp { .. } => "absxp",
            Family::SgnLaurent { .. } => "sgn-laurent",
            Family::AkhiezerPower { .. } => "akhiezer",
        }
    }

    pub(crate) fn problem(&self, m: u32) -> Result<MinimaxProblem<T>> {
        match *self {
            Family::AbsXp { p, a } => build_absxp(p, a, m),
            Family::SgnLaurent { k, a } => build_sgn_laurent(k, a, m),
            Family::AkhiezerPower { s, b } => build_akhiezer(s, b, m),
        }
    }

    fn predict(&self, m: u32, cfg: &PrecisionConfig) -> Result<T> {
        match *self {
            Family::AbsXp { p, a } => predict_abs_power_error(p, a, m, cfg),
            Family::SgnLaurent { k, a } => Ok(predict_laurent_b(k, a, m, cfg)?.cosh().recip()),
            Family::AkhiezerPower { s, b } => predict_inverse_power_error(s, b, m, cfg),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub m: u32,
    pub computed: T,
    pub predicted: T,
    pub ratio: T,
    pub log_computed: T,
    pub log_predicted: T,
    /// `arccosh(1/L) - predicted B` for the Laurent family.
    pub b_gap: Option<T>,
}

impl<T: Real> SweepRow<T> {
    /// Distance from the prediction on which convergence is judged:
    /// `|B gap|` for the Laurent family, `|log ratio|` otherwise.
    pub fn distance(&self) -> T {
        match self.b_gap {
            Some(g) => g.abs(),
            None => (self.log_computed - self.log_predicted).abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticsReport<T> {
    pub family: Family<T>,
    pub sweep: Vec<SweepRow<T>>,
    pub final_ratio: T,
    pub final_distance: T,
    /// Degrees at which the distance to the prediction grew.
    pub non_monotone_at: Vec<u32>,
}

impl<T: Real> AsymptoticsReport<T> {
    pub fn monotone(&self) -> bool {
        self.non_monotone_at.is_empty()
    }
}

/// Solves the family at every degree in `ms` (on `jobs` threads) and
/// tabulates computed against predicted errors.
pub fn compare<T: Real>(
    family: Family<T>,
    ms: &[u32],
    cfg: &PrecisionConfig,
    jobs: usize,
) -> Result<AsymptoticsReport<T>> {
    if ms.is_empty() {
        return invalid("empty degree range");
    }
    let mut ms = ms.to_vec();
    ms.sort_unstable();
    ms.dedup();
    let row = |m: u32| -> Result<SweepRow<T>> {
        let computed = solve(&family.problem(m)?, cfg)?.error_e;
        let predicted = family.predict(m, cfg)?;
        let b_gap = match family {
            Family::SgnLaurent { k, a } => Some(recover_b(computed) - predict_laurent_b(k, a, m, cfg)?),
            _ => None,
        };
        Ok(SweepRow {
            m,
            computed,
            predicted,
            ratio: computed / predicted,
            log_computed: computed.ln(),
            log_predicted: predicted.ln(),
            b_gap,
        })
    };
    let sweep = crate::par::map(jobs, &ms, |&m| row(m))?;
    // growth below the working tolerance is rounding noise
    let noise = cfg.tol::<T>();
    let non_monotone_at =
        sweep.windows(2).filter(|w| w[1].distance() > w[0].distance() + noise).map(|w| w[1].m).collect();
    let last = sweep.last().expect("nonempty sweep");
    Ok(AsymptoticsReport { family, final_ratio: last.ratio, final_distance: last.distance(), sweep, non_monotone_at })
}
