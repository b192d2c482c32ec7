use bernstein_core::asymptotics::{
    a_from_b, b_from_a, b_minus_sqrt, compare, exact_change_of_variable, inverse_power_identity, recover_b, Family,
};
use bernstein_core::conformal::{
    ec_integral, eval_hk_boundary, eval_w_boundary, find_dk, lambda_constant, norm_integral, slit_residual_hk,
    slit_residual_w, yk_asymptotic, yk_closed_form, yk_integral,
};
use bernstein_core::conjecture::{curve_form_residual, grid_doubling_study, solve_fixed_point, FixedPointOptions};
use bernstein_core::curveverify::{curve_residual, profile_convergence, reconstruct_phase, sign_pattern_check};
use bernstein_core::remez::{build_absxp, build_akhiezer, build_sgn_laurent, solve, MinimaxProblem, ProblemKind};
use bernstein_core::scalar::{from_rational, parse_rational, Real};
use bernstein_core::specialfn::log_gamma;
use bernstein_core::{Error, PrecisionConfig, Result};
use serde_json::{json, Value};

use crate::args::{
    Command, ConformalArgs, ConjectureArgs, ConvertArgs, CurveArgs, FamilyArgs, FamilyName, MapName, ProfileArgs,
    SweepArgs,
};
use crate::report::{cell, f, num, nums, Table};

/// What a command produced. `failure` marks a numerical failure that still
/// comes with a report.
pub struct Body {
    pub result: Value,
    pub table: Table,
    pub failure: Option<String>,
}

impl Body {
    fn ok(result: Value, table: Table) -> Self {
        Body { result, table, failure: None }
    }
}

pub fn run<T: Real>(cmd: &Command, cfg: &PrecisionConfig, jobs: usize) -> Result<Body> {
    match cmd {
        Command::Solve(a) => solve_cmd::<T>(a, cfg),
        Command::Sweep(a) => sweep::<T>(a, cfg, jobs),
        Command::VerifyCurve(a) => verify_curve::<T>(a, cfg),
        Command::Profiles(a) => profiles::<T>(a, cfg, jobs),
        Command::Conformal(a) => conformal::<T>(a, cfg),
        Command::Conjecture(a) => conjecture::<T>(a, cfg),
        Command::Convert(a) => convert::<T>(a, cfg),
    }
}

fn bad<V>(msg: impl Into<String>) -> Result<V> {
    Err(Error::InvalidInput(msg.into()))
}

fn real<T: Real>(name: &str, s: &str) -> Result<T> {
    match T::parse_decimal(s.trim()) {
        Some(v) if v.is_finite() => Ok(v),
        _ => bad(format!("--{name}: cannot parse {s:?} as a number")),
    }
}

fn need<'a, V>(name: &str, v: &'a Option<V>) -> Result<&'a V> {
    v.as_ref().ok_or_else(|| Error::InvalidInput(format!("--{name} is required here")))
}

/// `8`, `5..20` (inclusive) or `6,8,10`.
pub fn degrees(s: &str) -> Result<Vec<u32>> {
    let int = |t: &str| {
        t.trim().parse::<u32>().map_err(|_| Error::InvalidInput(format!("--m: {t:?} is not a nonnegative integer")))
    };
    let ms: Vec<u32> = if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (int(lo)?, int(hi)?);
        if lo > hi {
            return bad(format!("--m: empty range {s}"));
        }
        (lo..=hi).collect()
    } else {
        s.split(',').map(int).collect::<Result<_>>()?
    };
    if ms.is_empty() {
        return bad("--m: no degrees given");
    }
    Ok(ms)
}

fn single_degree(s: &str) -> Result<u32> {
    match degrees(s)?.as_slice() {
        [m] => Ok(*m),
        _ => bad("--m: solve takes a single degree"),
    }
}

fn family<T: Real>(a: &FamilyArgs) -> Result<Family<T>> {
    Ok(match a.family {
        FamilyName::Absxp => Family::AbsXp { p: real("p", need("p", &a.p)?)?, a: real("a", need("a", &a.a)?)? },
        FamilyName::SgnLaurent => Family::SgnLaurent { k: *need("k", &a.k)?, a: real("a", need("a", &a.a)?)? },
        FamilyName::Akhiezer => {
            let b = match (&a.b, &a.a) {
                (Some(b), _) => real("b", b)?,
                (None, Some(x)) => b_from_a(real::<T>("a", x)?),
                (None, None) => return bad("--b (or --a) is required for the akhiezer family"),
            };
            Family::AkhiezerPower { s: real("s", need("s", &a.s)?)?, b }
        }
    })
}

fn problem<T: Real>(fam: Family<T>, m: u32) -> Result<MinimaxProblem<T>> {
    match fam {
        Family::AbsXp { p, a } => build_absxp(p, a, m),
        Family::SgnLaurent { k, a } => build_sgn_laurent(k, a, m),
        Family::AkhiezerPower { s, b } => build_akhiezer(s, b, m),
    }
}

fn log_grid<T: Real>(name: &str, lo: &str, hi: &str, n: usize) -> Result<Vec<T>> {
    let (lo, hi) = (real::<T>(&format!("{name}-min"), lo)?, real::<T>(&format!("{name}-max"), hi)?);
    if !(lo > T::zero() && hi > lo) || n < 2 {
        return bad(format!("{name} grid needs 0 < min < max and at least 2 points"));
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    let den = T::int(n as i64 - 1);
    Ok((0..n).map(|i| (l0 + (l1 - l0) * T::int(i as i64) / den).exp()).collect())
}

fn lin_grid<T: Real>(name: &str, lo: &str, hi: &str, n: usize) -> Result<Vec<T>> {
    let (lo, hi) = (real::<T>(&format!("{name}-min"), lo)?, real::<T>(&format!("{name}-max"), hi)?);
    if !(hi > lo) || n < 2 {
        return bad(format!("{name} grid needs min < max and at least 2 points"));
    }
    let den = T::int(n as i64 - 1);
    Ok((0..n).map(|i| lo + (hi - lo) * T::int(i as i64) / den).collect())
}

fn solve_cmd<T: Real>(args: &FamilyArgs, cfg: &PrecisionConfig) -> Result<Body> {
    let fam = family::<T>(args)?;
    let m = single_degree(&args.m)?;
    let prob = problem(fam, m)?;
    let sol = solve(&prob, cfg)?;
    let mut table = Table::new(&["y", "x", "sign", "deviation"]);
    let mut points = Vec::new();
    for (&y, &s) in sol.alternation.iter().zip(&sol.signs) {
        let x = if prob.kind == ProblemKind::AkhiezerPower { y } else { y.sqrt() };
        let dev = sol.deviation(&prob, y);
        table.push(vec![cell(y), cell(x), s.to_string(), cell(dev)]);
        points.push(json!({ "y": num(y), "x": num(x), "sign": s, "deviation": num(dev) }));
    }
    let mut result = json!({
        "family": fam.name(),
        "m": m,
        "error_E": num(sol.error_e),
        "levelling_ratio": num(sol.levelling_ratio),
        "iterations": sol.iterations,
        "interval": [num(sol.interval.0), num(sol.interval.1)],
        "chebyshev_coefficients": nums(&sol.coeffs),
        "alternation": points,
    });
    if let Family::SgnLaurent { .. } = fam {
        result["B"] = num(recover_b(sol.error_e));
    }
    Ok(Body::ok(result, table))
}

fn sweep<T: Real>(args: &SweepArgs, cfg: &PrecisionConfig, jobs: usize) -> Result<Body> {
    let fam = family::<T>(&args.family)?;
    let ms = degrees(&args.family.m)?;
    let rep = compare(fam, &ms, cfg, jobs)?;
    let laurent = matches!(fam, Family::SgnLaurent { .. });
    let mut header = vec!["m", "E"];
    if args.predict {
        header.extend(["predicted", "ratio"]);
        if laurent {
            header.push("b_gap");
        }
    }
    let mut table = Table::new(&header);
    let mut rows = Vec::new();
    for r in &rep.sweep {
        let mut line = vec![r.m.to_string(), cell(r.computed)];
        let mut row = json!({ "m": r.m, "E": num(r.computed) });
        if args.predict {
            line.extend([cell(r.predicted), cell(r.ratio)]);
            row["predicted"] = num(r.predicted);
            row["ratio"] = num(r.ratio);
            if let Some(g) = r.b_gap {
                line.push(cell(g));
                row["B"] = num(recover_b(r.computed));
                row["b_gap"] = num(g);
            }
        }
        table.push(line);
        rows.push(row);
    }
    let mut result = json!({ "family": fam.name(), "rows": rows });
    if args.predict {
        result["final_ratio"] = num(rep.final_ratio);
        result["final_distance"] = num(rep.final_distance);
        result["monotone"] = json!(rep.monotone());
        result["non_monotone_at"] = json!(rep.non_monotone_at);
    }
    Ok(Body::ok(result, table))
}

fn verify_curve<T: Real>(args: &CurveArgs, cfg: &PrecisionConfig) -> Result<Body> {
    let (p, a) = (real::<T>("p", &args.p)?, real::<T>("a", &args.a)?);
    let prob = build_absxp(p, a, args.m)?;
    let sol = solve(&prob, cfg)?;
    let ys = log_grid::<T>("y", &args.y_min, &args.y_max, args.points)?;
    let trace = reconstruct_phase(&sol, &prob, &ys)?;
    let res = curve_residual(&trace, sol.error_e, p)?;
    let mut table = Table::new(&["y", "u", "v", "residual"]);
    for i in 0..trace.y_grid.len() {
        table.push(vec![cell(trace.y_grid[i]), cell(trace.u[i]), cell(trace.v[i]), cell(res[i])]);
    }
    let max_res = res.iter().fold(T::zero(), |m, r| m.max(r.abs()));

    if args.t_points < 2 {
        return bad("--t-points must be at least 2");
    }
    let lim = T::lit(0.99);
    let den = T::int(args.t_points as i64 - 1);
    let mut patterns = Vec::new();
    let mut all_pass = true;
    for j in 0..args.t_points {
        let t = -lim + (lim + lim) * T::int(j as i64) / den;
        match sign_pattern_check(&sol, &prob, t) {
            Ok(sp) => {
                all_pass &= sp.passes();
                patterns.push(json!({
                    "t": num(t),
                    "passes": sp.passes(),
                    "exponents": sp.exponents.iter().map(|&x| f(x)).collect::<Vec<_>>(),
                    "coefficients": sp.coefficients.iter().map(|&x| f(x)).collect::<Vec<_>>(),
                    "signs": sp.signs,
                    "sign_changes": sp.sign_changes,
                    "expected_changes": sp.expected_changes,
                    "first_sign": sp.first_sign,
                    "expected_first": sp.expected_first,
                    "last_sign": sp.last_sign,
                    "expected_last": sp.expected_last,
                }));
            }
            Err(e) => {
                all_pass = false;
                patterns.push(json!({ "t": num(t), "passes": false, "error": e.to_string() }));
            }
        }
    }
    let result = json!({
        "p": num(p),
        "a": num(a),
        "m": args.m,
        "error_E": num(sol.error_e),
        "max_relative_residual": num(max_res),
        "refined_points": trace.y_grid.len() - ys.len(),
        "y": nums(&trace.y_grid),
        "u": nums(&trace.u),
        "v": nums(&trace.v),
        "residual": nums(&res),
        "branch_windings": trace.branch_windings,
        "sign_patterns": patterns,
        "sign_patterns_pass": all_pass,
    });
    Ok(Body::ok(result, table))
}

fn profiles<T: Real>(args: &ProfileArgs, cfg: &PrecisionConfig, jobs: usize) -> Result<Body> {
    let a = real::<T>("a", &args.a)?;
    let fam = match args.family {
        FamilyName::Absxp => Family::AbsXp { p: real("p", need("p", &args.p)?)?, a },
        FamilyName::SgnLaurent => Family::SgnLaurent { k: *need("k", &args.k)?, a },
        FamilyName::Akhiezer => return bad("profiles exist for absxp and sgn-laurent only"),
    };
    let ms = degrees(&args.m)?;
    let lambdas = lin_grid::<T>("lambda", &args.lambda_min, &args.lambda_max, args.points)?;
    let tab = profile_convergence(fam, &ms, &lambdas, cfg, jobs)?;
    let mut header = vec!["lambda".to_string(), "profile".to_string()];
    header.extend(tab.rows.iter().map(|r| format!("m{}", r.m)));
    let mut table = Table { header, rows: Vec::new() };
    for (i, &l) in tab.lambda_grid.iter().enumerate() {
        let mut line = vec![cell(l), cell(tab.profile[i])];
        line.extend(tab.rows.iter().map(|r| cell(r.rescaled[i])));
        table.push(line);
    }
    let rows: Vec<Value> = tab
        .rows
        .iter()
        .map(|r| {
            json!({
                "m": r.m,
                "sup_distance": num(r.sup_distance),
                "argmax_lambda": num(r.argmax_lambda),
                "rescaled": nums(&r.rescaled),
            })
        })
        .collect();
    let result = json!({
        "family": fam.name(),
        "lambda": nums(&tab.lambda_grid),
        "profile": nums(&tab.profile),
        "rows": rows,
    });
    Ok(Body::ok(result, table))
}

fn conformal<T: Real>(args: &ConformalArgs, cfg: &PrecisionConfig) -> Result<Body> {
    let xis = log_grid::<T>("xi", &args.xi_min, &args.xi_max, args.points)?;
    let mut table = Table::new(&["xi", "re", "im", "slit_residual"]);
    let mut samples = Vec::new();
    let mut push = |xi: T, re: T, im: T, r: T| {
        table.push(vec![cell(xi), cell(re), cell(im), cell(r)]);
        samples.push(json!({ "xi": num(xi), "re": num(re), "im": num(im), "slit_residual": num(r) }));
    };
    let mut result = match args.map {
        MapName::Hk => {
            let k = *need("k", &args.k)?;
            let d_k = find_dk::<T>(k, cfg)?;
            let closed = yk_closed_form::<T>(k, cfg)?;
            let asym = yk_asymptotic::<T>(k, cfg)?;
            let integral = yk_integral::<T>(k, d_k, cfg)?;
            for &xi in &xis {
                let s = eval_hk_boundary(k, xi, cfg)?;
                push(xi, s.value.re, s.value.im, slit_residual_hk(k, xi, cfg)?);
            }
            json!({
                "map": "hk",
                "k": k,
                "D_k": num(d_k),
                "Y_k": { "closed_form": num(closed), "asymptotic": num(asym), "integral": num(integral) },
            })
        }
        MapName::W => {
            let p = real::<T>("p", need("p", &args.p)?)?;
            let consts = lambda_constant(p, cfg)?;
            let (lambda, c) = (consts.lambda.unwrap_or_else(T::nan), consts.c.unwrap_or_else(T::nan));
            let lg = log_gamma(-p * T::lit(0.5), cfg)?.value;
            for &xi in &xis {
                let s = eval_w_boundary(p, lambda, xi, cfg)?;
                push(xi, s.value.re, s.value.im, slit_residual_w(p, lambda, xi, cfg)?);
            }
            json!({
                "map": "w",
                "p": num(p),
                "Lambda": num(lambda),
                "c": num(c),
                "norm_integral": num(norm_integral(p, lambda, cfg)?),
                "ec_integral": num(ec_integral(p, lambda, cfg)?),
                "exp_c_Lambda_abs_gamma": num((c + lambda.ln() + lg).exp()),
            })
        }
    };
    result["boundary"] = Value::Array(samples);
    Ok(Body::ok(result, table))
}

fn conjecture<T: Real>(args: &ConjectureArgs, cfg: &PrecisionConfig) -> Result<Body> {
    let (p, l) = (real::<T>("p", &args.p)?, real::<T>("l", &args.l)?);
    let opts = FixedPointOptions {
        x_max: args.x_max,
        nodes: args.nodes,
        theta: args.theta,
        max_iter: args.max_iter,
        residual_tol: Some(args.residual_tol),
        ..FixedPointOptions::default()
    };
    let run = solve_fixed_point(p, l, &opts, cfg)?;
    let st = &run.state;
    let mut table = Table::new(&["iteration", "residual", "step", "theta", "clamped"]);
    for r in &run.trace {
        table.push(vec![r.iteration.to_string(), f(r.residual), f(r.step), f(r.theta), r.clamped.to_string()]);
    }
    let mut result = json!({
        "p": num(p),
        "L": num(l),
        "converged": run.converged,
        "diverged": run.diverged,
        "iterations": run.iterations,
        "clamp_events": run.clamp_events,
        "residual_norm": num(st.residual_norm),
        "curve_form_residual": num(curve_form_residual(st)),
        "u0": num(st.u0()),
        "v0": num(st.v0()),
        "x": nums(&st.grid),
        "rho": nums(&st.rho),
        "rho_tilde": nums(&st.rho_tilde),
    });
    let mut failure = (!run.converged).then(|| {
        format!(
            "fixed-point iteration stopped after {} iterations with residual {:e}",
            run.iterations,
            st.residual_norm.f64()
        )
    });
    if args.order_study {
        let study = grid_doubling_study(p, l, &opts, cfg)?;
        result["order_study"] = json!({
            "nodes": study.nodes,
            "residuals": nums(&study.residuals),
            "differences": nums(&study.differences),
            "ratio": num(study.ratio),
            "all_converged": study.all_converged,
        });
        if !study.all_converged && failure.is_none() {
            failure = Some("a refined grid of the order study did not converge".into());
        }
    }
    Ok(Body { result, table, failure })
}

fn convert<T: Real>(args: &ConvertArgs, cfg: &PrecisionConfig) -> Result<Body> {
    let s = real::<T>("s", &args.s)?;
    let mut result = json!({ "s": num(s) });
    let a: T = match (&args.a, &args.b) {
        (Some(a_str), _) => {
            let exact = parse_rational(a_str.trim())
                .ok_or_else(|| Error::InvalidInput(format!("--a: cannot parse {a_str:?} as a number")))?;
            let (b, r) = exact_change_of_variable(&exact)?;
            result["exact"] =
                json!({ "a": exact.to_string(), "b": b.to_string(), "b_minus_sqrt_b2_minus_1": r.to_string() });
            from_rational(&exact)
        }
        (None, Some(b)) => {
            let b = real::<T>("b", b)?;
            if !(b > T::one()) {
                return bad("--b must exceed 1");
            }
            a_from_b(b)
        }
        (None, None) => return bad("give --a or --b"),
    };
    if !(a > T::zero() && a < T::one()) {
        return bad("a must lie in (0, 1)");
    }
    let b = b_from_a(a);
    result["a"] = num(a);
    result["b"] = num(b);
    result["b_minus_sqrt_b2_minus_1"] = num(b_minus_sqrt(a));
    result["p"] = num(-(s + s));
    result["factor_1_plus_b_pow_s"] = num((T::one() + b).powf(s));
    let mut table = Table::new(&["a", "b", "b_minus_sqrt_b2_minus_1"]);
    table.push(vec![cell(a), cell(b), cell(b_minus_sqrt(a))]);
    if let Some(l) = args.l {
        let (direct, conv) = inverse_power_identity(s, a, l, cfg)?;
        result["identity"] = json!({
            "l": l,
            "two_interval_error": num(direct),
            "converted_interval_error": num(conv),
            "relative_difference": num((direct / conv - T::one()).abs()),
        });
    }
    Ok(Body::ok(result, table))
}
