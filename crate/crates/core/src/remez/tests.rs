use super::*;
use crate::config::PrecisionConfig;
use crate::prelude::*;
use proptest::prelude::*;

type D = DoubleDouble;

fn dd_cfg() -> PrecisionConfig {
    PrecisionConfig::new(106).unwrap()
}

fn d(x: f64) -> D {
    D::lit(x)
}

/// min over (alpha, beta) of max over [a, 1] of |1 - alpha x - beta / x|,
/// by nested golden sections on a dense grid.
fn brute_l11(a: f64) -> f64 {
    let xs: Vec<f64> = (0..=20_000).map(|i| a + (1.0 - a) * i as f64 / 20_000.0).collect();
    let sup = |al: f64, be: f64| xs.iter().map(|&x| (1.0 - al * x - be / x).abs()).fold(0.0, f64::max);
    let golden = |f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64| {
        let r = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..90 {
            let x1 = hi - r * (hi - lo);
            let x2 = lo + r * (hi - lo);
            if f(x1) < f(x2) {
                hi = x2;
            } else {
                lo = x1;
            }
        }
        let x = 0.5 * (lo + hi);
        (x, f(x))
    };
    let inner = |al: f64| golden(&|be| sup(al, be), -2.0, 3.0).1;
    golden(&inner, -2.0, 3.0).1
}

/// Discrete minimax of `f` by polynomials of degree `n` on a grid, posed as
/// a linear program; independent of the exchange.
fn lp_minimax(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    use minilp::{ComparisonOp, OptimizationDirection, Problem};
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let c: Vec<_> = (0..=n).map(|_| lp.add_var(0.0, (-1e3, 1e3))).collect();
    let e = lp.add_var(1.0, (0.0, 1e3));
    for i in 0..=4000 {
        let y = lo + (hi - lo) * i as f64 / 4000.0;
        let t = 2.0 * (y - lo) / (hi - lo) - 1.0;
        let row: Vec<_> = (0..=n).map(|j| (c[j], t.powi(j as i32))).collect();
        let mut up = row.clone();
        up.push((e, 1.0));
        lp.add_constraint(&up[..], ComparisonOp::Ge, f(y));
        let mut down: Vec<_> = row.iter().map(|&(v, x)| (v, -x)).collect();
        down.push((e, 1.0));
        lp.add_constraint(&down[..], ComparisonOp::Ge, -f(y));
    }
    lp.solve().unwrap().objective()
}

#[test]
fn builders_validate() {
    assert!(build_absxp(d(2.0), d(0.5), 1).is_err());
    assert!(build_absxp(d(4.0), d(0.5), 3).is_err());
    assert!(build_absxp(d(1.0), d(0.0), 3).is_err());
    assert!(build_absxp(d(3.0), d(0.5), 1).is_err());
    let p = build_absxp(d(1.0), d(0.5), 3).unwrap();
    assert_eq!(p.degree(), 3);
    assert_eq!(p.interval, (d(0.25), d(1.0)));
    let p = build_absxp(d(1.5), d(0.3), 5).unwrap();
    assert_eq!(p.degree(), 5);
    assert_eq!(p.interval.0, d(0.3) * d(0.3));
    assert!((p.target(d(0.5)) - d(0.5).powf(d(0.75))).abs() < d(1e-30));

    let q = build_sgn_laurent(1, d(0.5), 1).unwrap();
    assert_eq!(q.degree(), 1);
    assert!((q.weight(d(0.25)) - d(2.0)).abs() < d(1e-30));
    let q = build_sgn_laurent(2, d(0.6), 4).unwrap();
    assert_eq!(q.degree(), 5);
    assert!((q.target(d(0.25)) - d(0.125)).abs() < d(1e-30));
    assert!(build_sgn_laurent(0, d(0.5), 1).is_err());
    assert!(build_sgn_laurent(1, d(0.5), 0).is_err());

    let r = build_akhiezer(d(1.0), d(5.0) / d(3.0), 3).unwrap();
    assert!((r.a - d(0.5)).abs() < d(1e-30));
    assert!(build_akhiezer(d(1.0), d(1.0), 3).is_err());
    assert!(build_akhiezer(d(0.0), d(2.0), 3).is_err());
}

#[test]
fn laurent_degree_one_matches_brute_force() {
    let want = brute_l11(0.5);
    let sol = solve(&build_sgn_laurent(1, d(0.5), 1).unwrap(), &dd_cfg()).unwrap();
    let got = sol.error_e.f64();
    assert!(((got - want) / want).abs() < 1e-6, "{got} vs {want}");
}

#[test]
fn exact_targets_give_zero_error() {
    let cfg = dd_cfg();
    let sol = solve(&build_power(d(2.0), d(0.5), 1).unwrap(), &cfg).unwrap();
    assert!(sol.error_e.f64() < 1e-28);
    let sol = solve(&build_akhiezer(d(-1.0), d(2.0), 1).unwrap(), &cfg).unwrap();
    assert!(sol.error_e.f64() < 1e-28);
    assert!((sol.poly(d(0.3)) - d(2.0) - d(0.3)).abs().f64() < 1e-28);
}

#[test]
fn best_constant_for_monotone_target() {
    let sol = solve(&build_akhiezer(d(1.0), d(2.0), 0).unwrap(), &dd_cfg()).unwrap();
    assert!((sol.error_e - d(1.0) / d(3.0)).abs().f64() < 1e-28);
    assert_eq!(sol.alternation, vec![d(-1.0), d(1.0)]);
}

#[test]
fn equioscillation_structure() {
    let prob = build_absxp(d(1.5), d(0.5), 6).unwrap();
    let sol = solve(&prob, &dd_cfg()).unwrap();
    assert_eq!(sol.alternation.len(), 8);
    assert_eq!(sol.alternation[0], prob.interval.0);
    assert_eq!(sol.alternation[7], prob.interval.1);
    for j in 0..8 {
        let dev = sol.deviation(&prob, sol.alternation[j]);
        assert_eq!(dev.signum().f64() as i8, sol.signs[j]);
        assert!(((dev.abs() - sol.error_e) / sol.error_e).abs().f64() < 1e-13);
    }
    for w in sol.signs.windows(2) {
        assert_eq!(w[0], -w[1]);
    }
    assert!(sol.levelling_ratio.f64() > 1.0 - 1e-7 && sol.levelling_ratio <= D::one());
    // no larger deviation anywhere on a fine grid
    for i in 0..=3000 {
        let y = d(0.25) + d(0.75 * i as f64 / 3000.0);
        assert!(sol.deviation(&prob, y).abs() <= sol.error_e * d(1.0 + 1e-12));
    }
}

#[test]
fn geometric_rate_and_low_degree_oracle() {
    let cfg = dd_cfg();
    let e = |m| solve(&build_absxp(d(1.5), d(0.5), m).unwrap(), &cfg).unwrap().error_e.f64();
    let (e6, e7) = (e(6), e(7));
    assert!(e7 < e6);
    let ratio = e7 / e6;
    assert!((ratio - 1.0 / 3.0).abs() < 0.1, "{ratio}");
    let lp = lp_minimax(|y| y.powf(0.75), 0.25, 1.0, 2);
    assert!(((e(2) - lp) / lp).abs() < 1e-6, "{} vs {lp}", e(2));
}

#[test]
fn extremal_function_symmetry() {
    let cfg = dd_cfg();
    let p = build_sgn_laurent(2, d(0.5), 3).unwrap();
    let s = solve(&p, &cfg).unwrap();
    for x in [0.6, 0.77, 1.0, 2.5] {
        let (u, v) = (eval_solution(&s, &p, d(x)).unwrap(), eval_solution(&s, &p, d(-x)).unwrap());
        assert!((u + v).abs().f64() < 1e-25);
    }
    assert!(eval_solution(&s, &p, D::zero()).is_err());
    let y = s.alternation[2];
    let dev = D::one() - eval_solution(&s, &p, y.sqrt()).unwrap();
    assert!(((dev.abs() - s.error_e) / s.error_e).abs().f64() < 1e-12);

    let p = build_absxp(d(1.0), d(0.5), 4).unwrap();
    let s = solve(&p, &cfg).unwrap();
    for x in [0.6, 0.9, 3.0] {
        let (u, v) = (eval_solution(&s, &p, d(x)).unwrap(), eval_solution(&s, &p, d(-x)).unwrap());
        assert!((u - v).abs().f64() < 1e-25);
    }
}

#[test]
fn independent_of_initial_reference() {
    let cfg = dd_cfg();
    let p = build_sgn_laurent(1, d(0.4), 4).unwrap();
    let a = solve(&p, &cfg).unwrap();
    let n = p.degree();
    let (lo, hi) = p.interval;
    let uniform: Vec<D> = (0..n + 2).map(|j| lo + (hi - lo) * d(j as f64 / (n + 1) as f64)).collect();
    let b = solve_from(&p, uniform, &cfg).unwrap();
    assert!(((a.error_e - b.error_e) / a.error_e).abs().f64() < 1e-15);
    assert!(solve_from(&p, vec![lo, hi], &cfg).is_err());
}

#[test]
fn vallee_poussin_bracket() {
    let cfg = dd_cfg();
    let p = build_absxp(d(0.7), d(0.3), 5).unwrap();
    let s = solve(&p, &cfg).unwrap();
    let mut q = s.clone();
    for (j, c) in q.coeffs.iter_mut().enumerate() {
        *c = *c + d(1e-6 * ((j * 7 % 5) as f64 - 2.0));
    }
    let at_ref = s.alternation.iter().map(|&y| q.deviation(&p, y).abs()).fold(D::max_value(), |m, v| m.min(v));
    let sup = (0..=4000)
        .map(|i| q.deviation(&p, d(0.09) + d(0.91 * i as f64 / 4000.0)).abs())
        .fold(D::zero(), |m, v| m.max(v));
    assert!(at_ref <= s.error_e && s.error_e <= sup);
}

#[test]
fn laurent_error_decreases_in_a() {
    let cfg = dd_cfg();
    let e: Vec<D> = [0.3, 0.5, 0.7]
        .iter()
        .map(|&a| solve(&build_sgn_laurent(1, d(a), 5).unwrap(), &cfg).unwrap().error_e)
        .collect();
    assert!(e[0] > e[1] && e[1] > e[2]);
    let b: Vec<D> = e.iter().map(|l| l.recip().acosh()).collect();
    assert!(b[0] < b[1] && b[1] < b[2]);
}

#[test]
fn refuses_beyond_precision_budget() {
    let cfg = PrecisionConfig::new(64).unwrap();
    let p = build_absxp(1.5f64, 0.5, 30).unwrap();
    assert!(matches!(solve(&p, &cfg), Err(Error::PrecisionBudget { .. })));
}

#[test]
fn works_at_octuple_precision() {
    let cfg = PrecisionConfig::default();
    let p = build_absxp(Octuple::lit(1.5), Octuple::lit(0.5), 8).unwrap();
    let s = solve(&p, &cfg).unwrap();
    let lo = build_absxp(d(1.5), d(0.5), 8).unwrap();
    let sd = solve(&lo, &dd_cfg()).unwrap();
    assert!(((s.error_e.f64() - sd.error_e.f64()) / sd.error_e.f64()).abs() < 1e-15);
    assert!((Octuple::one() - s.levelling_ratio).f64() < 1e-17);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn error_non_increasing_in_degree(p in 0.2f64..3.8, a in 0.2f64..0.8, m in 2u32..6) {
        prop_assume!((p / 2.0 - (p / 2.0).round()).abs() > 0.05);
        let cfg = dd_cfg();
        let e0 = solve(&build_power(d(p), d(a), m).unwrap(), &cfg).unwrap();
        let e1 = solve(&build_power(d(p), d(a), m + 1).unwrap(), &cfg).unwrap();
        prop_assert!(e1.error_e <= e0.error_e);
    }

    #[test]
    fn deviations_level_on_alternation(k in 1u32..4, a in 0.2f64..0.8, m in 1u32..6) {
        let p = build_sgn_laurent(k, d(a), m).unwrap();
        let s = solve(&p, &dd_cfg()).unwrap();
        prop_assert_eq!(s.alternation.len(), p.degree() + 2);
        for (y, &sg) in s.alternation.iter().zip(&s.signs) {
            let dev = s.deviation(&p, *y);
            prop_assert_eq!(dev.signum().f64() as i8, sg);
            prop_assert!(((dev.abs() - s.error_e) / s.error_e).abs().f64() < 1e-13);
        }
    }
}
