//! Weighted minimax approximation by Remez exchange.
//!
//! Every problem is posed in a reduced variable `y` on one interval:
//! the even two-interval problems on `[-1,-a] u [a,1]` become problems on
//! `[a^2, 1]` through `y = x^2`.

mod cheb;
mod exchange;

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

pub use cheb::{chebyshev_coefficients, clenshaw, clenshaw_complex};
pub use exchange::{solve, solve_from};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    /// `y^(p/2)` with unit weight on `[a^2, 1]`.
    AbsXp,
    /// `y^(k-1/2)` with weight `y^-(k-1/2)` on `[a^2, 1]`; the error is the
    /// distance from `sgn x` to odd Laurent polynomials.
    SgnLaurent,
    /// `(b + y)^-s` with unit weight on `[-1, 1]`.
    AkhiezerPower,
}

#[derive(Debug, Clone)]
pub struct MinimaxProblem<T> {
    pub kind: ProblemKind,
    pub p: T,
    /// Inner endpoint. For `AkhiezerPower` this is the matching two-interval
    /// parameter, `a^2 = (b-1)/(b+1)`.
    pub a: T,
    pub k: u32,
    /// Degree parameter (`l` for `AkhiezerPower`).
    pub m: u32,
    pub s: T,
    pub b: T,
    /// Reduced interval.
    pub interval: (T, T),
}

/// Even two-interval problem for `|x|^p`, degree `2m` in `x`.
pub fn build_absxp<T: Real>(p: T, a: T, m: u32) -> Result<MinimaxProblem<T>> {
    if !(p > T::zero()) || !(T::lit(2.0 * m as f64) > p) {
        return invalid(format!("need 2m > p > 0, got p = {}, m = {m}", p.f64()));
    }
    if is_even_integer(p) {
        return invalid(format!("p = {} is an even integer, |x|^p is a polynomial", p.f64()));
    }
    build_power(p, a, m)
}

/// Like [`build_absxp`] but for any finite real exponent, including
/// negative ones and even integers.
pub fn build_power<T: Real>(p: T, a: T, m: u32) -> Result<MinimaxProblem<T>> {
    check_a(a)?;
    if !p.is_finite() {
        return invalid("p must be finite");
    }
    Ok(MinimaxProblem {
        kind: ProblemKind::AbsXp,
        p,
        a,
        k: 0,
        m,
        s: T::zero(),
        b: T::zero(),
        interval: (a * a, T::one()),
    })
}

/// Best approximation of `sgn x` on `[-1,-a] u [a,1]` by Laurent polynomials
/// of degree `(2k-1, 2m-1)`.
pub fn build_sgn_laurent<T: Real>(k: u32, a: T, m: u32) -> Result<MinimaxProblem<T>> {
    if k < 1 || m < 1 {
        return invalid(format!("need k >= 1 and m >= 1, got k = {k}, m = {m}"));
    }
    check_a(a)?;
    Ok(MinimaxProblem {
        kind: ProblemKind::SgnLaurent,
        p: T::int(2 * k as i64 - 1),
        a,
        k,
        m,
        s: T::zero(),
        b: T::zero(),
        interval: (a * a, T::one()),
    })
}

/// Best approximation of `(b + x)^-s` on `[-1, 1]` by polynomials of degree `l`.
pub fn build_akhiezer<T: Real>(s: T, b: T, l: u32) -> Result<MinimaxProblem<T>> {
    if !(b > T::one()) || !b.is_finite() {
        return invalid(format!("need b > 1, got {}", b.f64()));
    }
    if s == T::zero() || !s.is_finite() {
        return invalid("s must be finite and nonzero");
    }
    let one = T::one();
    Ok(MinimaxProblem {
        kind: ProblemKind::AkhiezerPower,
        p: -(s + s),
        a: ((b - one) / (b + one)).sqrt(),
        k: 0,
        m: l,
        s,
        b,
        interval: (-one, one),
    })
}

fn check_a<T: Real>(a: T) -> Result<()> {
    if !(a > T::zero() && a < T::one()) {
        return invalid(format!("a must lie in (0, 1), got {}", a.f64()));
    }
    Ok(())
}

fn is_even_integer<T: Real>(p: T) -> bool {
    let h = p * T::lit(0.5);
    h == h.round()
}

impl<T: Real> MinimaxProblem<T> {
    /// Polynomial degree in the reduced variable.
    pub fn degree(&self) -> usize {
        match self.kind {
            ProblemKind::SgnLaurent => (self.m + self.k - 1) as usize,
            _ => self.m as usize,
        }
    }

    pub fn target(&self, y: T) -> T {
        match self.kind {
            ProblemKind::AbsXp => y.powf(self.p * T::lit(0.5)),
            ProblemKind::SgnLaurent => y.powf(self.half_power()),
            ProblemKind::AkhiezerPower => (self.b + y).powf(-self.s),
        }
    }

    pub fn weight(&self, y: T) -> T {
        match self.kind {
            ProblemKind::SgnLaurent => y.powf(-self.half_power()),
            _ => T::one(),
        }
    }

    /// Weighted deviation `w(y) (f(y) - p)` for a polynomial value `p`.
    pub fn deviation(&self, y: T, p: T) -> T {
        match self.kind {
            ProblemKind::SgnLaurent => T::one() - p * self.weight(y),
            _ => self.target(y) - p,
        }
    }

    fn half_power(&self) -> T {
        T::lit(self.k as f64 - 0.5)
    }

    /// Rough `log2` of the minimax error, from its geometric decay rate.
    pub fn log2_error_estimate(&self) -> f64 {
        let n = self.degree() as f64;
        let rate = match self.kind {
            ProblemKind::AkhiezerPower => {
                let b = self.b.f64();
                (b - (b * b - 1.0).sqrt()).ln()
            }
            _ => {
                let a = self.a.f64();
                ((1.0 - a) / (1.0 + a)).ln()
            }
        };
        let m = match self.kind {
            ProblemKind::SgnLaurent => self.m as f64,
            _ => n,
        };
        m * rate / std::f64::consts::LN_2
    }
}

/// Outcome of one Remez run.
#[derive(Debug, Clone)]
pub struct MinimaxSolution<T> {
    /// Chebyshev coefficients in `t = (2y - lo - hi) / (hi - lo)`.
    pub coeffs: Vec<T>,
    pub error_e: T,
    /// Equioscillation abscissae in the reduced variable.
    pub alternation: Vec<T>,
    pub signs: Vec<i8>,
    pub iterations: usize,
    /// `min |deviation| / max |deviation|` over the alternation set.
    pub levelling_ratio: T,
    pub interval: (T, T),
}

impl<T: Real> MinimaxSolution<T> {
    /// Polynomial value in the reduced variable.
    pub fn poly(&self, y: T) -> T {
        clenshaw(&self.coeffs, self.to_t(y))
    }

    pub fn poly_complex(&self, y: Complex<T>) -> Complex<T> {
        let (lo, hi) = self.interval;
        let t = (y * T::lit(2.0) - Complex::from(lo + hi)) / (hi - lo);
        clenshaw_complex(&self.coeffs, t)
    }

    fn to_t(&self, y: T) -> T {
        let (lo, hi) = self.interval;
        (y + y - lo - hi) / (hi - lo)
    }

    /// Weighted deviation at reduced abscissa `y`.
    pub fn deviation(&self, problem: &MinimaxProblem<T>, y: T) -> T {
        problem.deviation(y, self.poly(y))
    }
}

/// Extremal function in the original variable: `P(x^2)` for `AbsXp`,
/// `P(x^2) / x^(2k-1)` for `SgnLaurent` and `P(x)` for `AkhiezerPower`.
pub fn eval_solution<T: Real>(sol: &MinimaxSolution<T>, problem: &MinimaxProblem<T>, x: T) -> Result<T> {
    let v = eval_solution_complex(sol, problem, Complex::new(x, T::zero()))?;
    Ok(v.re)
}

pub fn eval_solution_complex<T: Real>(
    sol: &MinimaxSolution<T>,
    problem: &MinimaxProblem<T>,
    x: Complex<T>,
) -> Result<Complex<T>> {
    match problem.kind {
        ProblemKind::AbsXp => Ok(sol.poly_complex(x * x)),
        ProblemKind::AkhiezerPower => Ok(sol.poly_complex(x)),
        ProblemKind::SgnLaurent => {
            if x.re == T::zero() && x.im == T::zero() {
                return Err(Error::Pole(0.0));
            }
            let q = sol.poly_complex(x * x);
            Ok(q / x.powi(2 * problem.k as i32 - 1))
        }
    }
}

#[cfg(test)]
mod tests;
