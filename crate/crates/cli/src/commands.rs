//! One function per subcommand, each turning validated settings into a
//! [`Report`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use u21zeta::dscoef::{ctilde, ctilde_ch, psi_full, psi_radial};
use u21zeta::exactmath::{to_f64, Rational};
use u21zeta::fockweil::{bargmann_oracle, phi_norm_sq, weil_coeff, DEFAULT_DEGREE_CAP};
use u21zeta::report::rel_diff;
use u21zeta::repparams::{
    blattner, case_of_lambda, dual_param, format_triple, formal_degree, CaseParams, CaseTag, DualPairCase, HCParam, RepError,
};
use u21zeta::suites::{run_suite, Suite, SuiteOptions};
use u21zeta::zetaeval::{
    c_squared_corrected, closed_form_disputed, matching_patterns, reduced_integrand, zeta_closed_form, zeta_closed_form_corrected, zeta_numeric,
    QuadratureConfig,
};

use crate::config::Settings;
use crate::output::{Cell, Report};
use crate::CliError;

fn hc_param(s: &Settings) -> Result<Option<HCParam>, CliError> {
    match s.lambda()? {
        None => Ok(None),
        Some(l) => HCParam::new(l).map(Some).map_err(|e| CliError::Input(explain(&e))),
    }
}

fn explain(e: &RepError) -> String {
    match e {
        RepError::NotRegular(_) => format!("{e}; a discrete-series parameter needs three distinct coordinates"),
        RepError::NotHalfOdd(_) => format!("{e}; every coordinate must be an odd multiple of 1/2"),
        RepError::NotCompactDominant(_) => format!("{e}; list the coordinates with lambda_1 > lambda_2"),
        RepError::NoCaseMatch(_) => format!("{e}; this discrete series has no joint-harmonic case in the table"),
        RepError::BoundaryParameter(_) => format!("{e}; the theta lift pairs it with no listed discrete series"),
        RepError::WrongSubcase { .. } => e.to_string(),
    }
}

fn params_text(p: &CaseParams) -> String {
    let names = p.tag().param_names();
    let v = p.values();
    (0..3).map(|k| format!("{}={}", names[k], v[k])).collect::<Vec<_>>().join(" ")
}

/// The c^2 pattern, if any, as (label, value).
fn pattern_of(l: &HCParam) -> Option<(String, Rational)> {
    let m = matching_patterns(l);
    let (p, v) = m.first()?;
    Some((p.to_string(), p.c_squared(*v)))
}

pub fn classify(s: &Settings) -> Result<Report, CliError> {
    let l = hc_param(s)?.ok_or_else(|| CliError::Input("--lambda is required".into()))?;
    let b = blattner(&l);
    let mut r = Report::new(
        "classify",
        &[
            "lambda",
            "chamber",
            "blattner",
            "r",
            "s",
            "dual",
            "formal_degree",
            "case",
            "subcase",
            "params",
            "zeta_closed",
            "pattern",
            "c_squared",
            "note",
        ],
    );
    let (case, note) = match case_of_lambda(&l) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(explain(&e))),
    };
    let pattern = pattern_of(&l);
    r.push(vec![
        l.to_string().into(),
        l.chamber().to_string().into(),
        format_triple(&b.weight).into(),
        b.r.into(),
        b.s.into(),
        dual_param(&l).to_string().into(),
        formal_degree(&l).into(),
        case.map(|c| c.tag().to_string()).into(),
        case.map(|c| c.subcase.to_string()).into(),
        case.map(|c| params_text(&c.params)).into(),
        case.map(|c| zeta_closed_form(&c).ratio).into(),
        pattern.as_ref().map(|p| p.0.clone()).into(),
        pattern.map(|p| p.1).into(),
        note.into(),
    ]);
    Ok(r)
}

pub fn coeff_ds(s: &Settings) -> Result<Report, CliError> {
    let l = hc_param(s)?.ok_or_else(|| CliError::Input("--lambda is required".into()))?;
    let t = s.t()?;
    let (k, kp) = s.k_pair()?;
    let b = blattner(&l);
    let ct: Vec<f64> = (0..=b.r).map(|i| ctilde(b.chamber, b.r, b.s, i, t)).collect();
    let v = psi_full(&b, t, &k, &kp);
    let mut r = Report::new("coeff-ds", &["lambda", "chamber", "r", "s", "t", "ctilde", "psi_radial", "psi_re", "psi_im"]);
    r.push(vec![
        l.to_string().into(),
        l.chamber().to_string().into(),
        b.r.into(),
        b.s.into(),
        t.into(),
        Cell::Floats(ct),
        psi_radial(b.chamber, b.r, b.s, t).into(),
        v.re.into(),
        v.im.into(),
    ]);
    Ok(r)
}

pub fn coeff_weil(s: &Settings) -> Result<Report, CliError> {
    let p = s.case_params()?;
    let t = s.t()?;
    let (k, kp) = s.k_pair()?;
    let w = weil_coeff(&p, t, &k, &kp);
    let norm = phi_norm_sq(&p);
    let mut r = Report::new("coeff-weil", &["case", "params", "t", "norm_sq", "coeff_re", "coeff_im", "coeff_abs", "oracle_re", "oracle_im", "oracle_rel_diff"]);
    let (mut ore, mut oim, mut odiff) = (None, None, None);
    if s.oracle == Some(true) {
        let o = bargmann_oracle(&p, t, &k, &kp, DEFAULT_DEGREE_CAP).map_err(|e| CliError::Input(e.to_string()))? / norm.to_f64();
        ore = Some(o.re);
        oim = Some(o.im);
        odiff = Some((o - w).norm() / o.norm().max(w.norm()).max(1e-300));
    }
    r.push(vec![
        p.tag().to_string().into(),
        params_text(&p).into(),
        t.into(),
        norm.to_string().into(),
        w.re.into(),
        w.im.into(),
        w.norm().into(),
        ore.into(),
        oim.into(),
        odiff.into(),
    ]);
    Ok(r)
}

fn resolve_case(s: &Settings) -> Result<DualPairCase, CliError> {
    if let Some(l) = hc_param(s)? {
        if s.case.is_some() {
            return Err(CliError::Input("give either --lambda or --case with parameters, not both".into()));
        }
        return case_of_lambda(&l).map_err(|e| CliError::Input(explain(&e)));
    }
    let p = s.case_params()?;
    DualPairCase::from_params(p).map_err(|e| CliError::Input(explain(&e)))
}

/// Plain Monte Carlo over (w, theta, theta') in (0,1) x (0,pi/2)^2 of the
/// phase-reduced integrand; returns (estimate, standard error).
fn monte_carlo(case: &DualPairCase, samples: usize, seed: u64) -> Result<(f64, f64), CliError> {
    let reduced = reduced_integrand(case).map_err(|e| CliError::Internal(e.to_string()))?;
    let b = case.blattner();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let w: f64 = 1.0 - rng.gen::<f64>();
        let (th, thp) = (rng.gen::<f64>() * half_pi, rng.gen::<f64>() * half_pi);
        let trig = [th.sin(), th.cos(), thp.sin(), thp.cos()];
        let radial = |h: u32| ctilde_ch(b.chamber, b.r, b.s, h as i64, 1.0 / w, (1.0 - w) * (1.0 + w));
        let f = reduced.eval(1.0 / w, trig, &radial) * (2.0 * th).sin() * (2.0 * thp).sin() * 2.0 * (1.0 - w * w) * w.powi(-5) * half_pi * half_pi;
        sum += f;
        sum_sq += f * f;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0);
    Ok((mean, (var / n).sqrt()))
}

pub fn zeta(s: &Settings) -> Result<Report, CliError> {
    let case = resolve_case(s)?;
    let cfg = s.quadrature()?;
    let mut cols = vec![
        "case",
        "subcase",
        "params",
        "lambda",
        "formal_degree",
        "zeta_closed",
        "zeta_numeric",
        "rel_error",
        "within_tol",
        "zeta_corrected",
        "disputed",
        "pattern",
        "c_squared",
        "c_squared_corrected",
    ];
    if s.monte_carlo.is_some() {
        cols.extend(["mc_estimate", "mc_stderr"]);
    }
    let mut r = Report::new("zeta", &cols);
    let exact = zeta_closed_form(&case).ratio;
    let numeric = zeta_numeric(&case, &cfg).map_err(|e| CliError::Internal(e.to_string()))?;
    let err = rel_diff(numeric, to_f64(&exact), 1e-300);
    let l = case.lambda();
    let pattern = pattern_of(&l);
    let mut row: Vec<Cell> = vec![
        case.tag().to_string().into(),
        case.subcase.to_string().into(),
        params_text(&case.params).into(),
        l.to_string().into(),
        formal_degree(&l).into(),
        exact.into(),
        numeric.into(),
        err.into(),
        (err <= cfg.tol).into(),
        zeta_closed_form_corrected(&case).ratio.into(),
        closed_form_disputed(&case).into(),
        pattern.as_ref().map(|p| p.0.clone()).into(),
        pattern.map(|p| p.1).into(),
        c_squared_corrected(&l).ok().into(),
    ];
    if let Some(n) = s.monte_carlo {
        if n == 0 {
            return Err(CliError::Input("--monte-carlo needs at least one sample".into()));
        }
        let (m, se) = monte_carlo(&case, n, s.seed.unwrap_or(0))?;
        row.extend([m.into(), se.into()]);
    }
    r.push(row);
    Ok(r)
}

pub fn verify(s: &Settings, suite: Suite) -> Result<Report, CliError> {
    let d = SuiteOptions::default();
    let opts = SuiteOptions {
        grid_max: s.grid_max.unwrap_or(d.grid_max),
        quadrature: s.quadrature()?,
        seed: s.seed.unwrap_or(d.seed),
        samples: s.samples.unwrap_or(d.samples),
    };
    if opts.grid_max > 40 {
        return Err(CliError::Input("--grid-max above 40 is not supported".into()));
    }
    let checks = run_suite(suite, &opts);
    let mut r = Report::new("verify", &["suite", "check", "status", "points", "failures", "worst", "tol", "first_failure"]);
    for c in &checks {
        r.push(vec![
            suite.name().into(),
            c.name.clone().into(),
            (if c.passed() { "PASS" } else { "FAIL" }).into(),
            (c.count as i64).into(),
            (c.failures as i64).into(),
            c.worst.into(),
            c.tol.into(),
            c.first_failure.clone().into(),
        ]);
    }
    r.passed = Some(checks.iter().all(|c| c.passed()));
    Ok(r)
}

fn table_row(tag: CaseTag, v: [u32; 3], numeric: Option<&QuadratureConfig>) -> Vec<Cell> {
    let head: Vec<Cell> = vec![tag.to_string().into(), v[0].into(), v[1].into(), v[2].into()];
    let blank = |status: String, n: usize| head.iter().cloned().chain([Cell::Text(status)]).chain(std::iter::repeat(Cell::Null).take(n)).collect();
    let width = if numeric.is_some() { 10 } else { 9 };
    let names = tag.param_names();
    let Some(p) = CaseParams::from_values(tag, v) else {
        return blank(format!("NotDominant: {} < {}", names[0], names[1]), width);
    };
    let case = match DualPairCase::from_params(p) {
        Ok(c) => c,
        Err(e @ RepError::BoundaryParameter(_)) => return blank(format!("BoundaryParameter: {e}"), width),
        Err(e) => return blank(e.to_string(), width),
    };
    let l = case.lambda();
    let d = formal_degree(&l);
    let z = zeta_closed_form(&case).ratio;
    let c2 = pattern_of(&l).map(|p| p.1);
    let mut row = head;
    row.extend::<[Cell; 10]>([
        "ok".into(),
        l.to_string().into(),
        l.chamber().to_string().into(),
        d.clone().into(),
        z.into(),
        c2.clone().into(),
        c2.as_ref().map(to_f64).into(),
        zeta_closed_form_corrected(&case).ratio.into(),
        (d * zeta_closed_form_corrected(&case).ratio).into(),
        closed_form_disputed(&case).into(),
    ]);
    if let Some(cfg) = numeric {
        row.push(zeta_numeric(&case, cfg).ok().into());
    }
    row
}

pub fn table(s: &Settings) -> Result<Report, CliError> {
    let tag = s.case_tag()?;
    let ranges = s.param_ranges(tag)?;
    let names = tag.param_names();
    let mut cols = vec![
        "case",
        names[0],
        names[1],
        names[2],
        "status",
        "lambda",
        "chamber",
        "formal_degree",
        "zeta_closed",
        "c_squared",
        "c_squared_decimal",
        "zeta_corrected",
        "c_squared_corrected",
        "disputed",
    ];
    let cfg = if s.numeric == Some(true) { Some(s.quadrature()?) } else { None };
    if cfg.is_some() {
        cols.push("zeta_numeric");
    }
    let cells: Vec<[u32; 3]> = ranges[0]
        .values()
        .flat_map(|x| ranges[1].values().flat_map(move |y| ranges[2].values().map(move |z| [x, y, z])))
        .collect();
    if cells.len() > 200_000 {
        return Err(CliError::Input(format!("{} grid cells requested; the limit is 200000", cells.len())));
    }
    // Ordered collect keeps grid order whatever the completion order.
    let rows: Vec<Vec<Cell>> = cells.par_iter().map(|v| table_row(tag, *v, cfg.as_ref())).collect();
    let mut r = Report::new("table", &cols);
    for row in rows {
        r.push(row);
    }
    Ok(r)
}
