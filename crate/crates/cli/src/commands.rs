//! The five commands.

use std::f64::consts::PI;

use fdtd_stab::analyzer::{
    classify_point, classify_point_2d, reproduce_argument_table, worst_case_verdict, Geometry, StabilityVerdict,
};
use fdtd_stab::schemes::{dimensionless_params, DimensionlessParams, MediumModel, SchemeId, Wavenumber};
use fdtd_stab::simulator::{empirical_verdict, harmonic_grid, run_growth_with, Grid};
use rayon::prelude::*;

use crate::config::{Command, RunConfig};
use crate::output::{emit_csv, real, GROWTH_COLUMNS, VERDICT_COLUMNS};
use crate::{verify, CliError, Outcome};

pub fn run_command(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    match cfg.command {
        Command::Analyze => analyze(cfg),
        Command::Scan => scan(cfg),
        Command::Simulate => simulate(cfg),
        Command::Verify => verify::verify(cfg),
        Command::Tables => tables(cfg),
    }
}

fn geometry(cfg: &RunConfig) -> Result<Geometry, CliError> {
    let (h_x, h_y) = cfg.steps_xy()?;
    Ok(match cfg.polarization {
        Some(polarization) if cfg.dim == 2 => Geometry::TwoD { h_x, h_y, polarization },
        _ => Geometry::OneD { h: h_x },
    })
}

fn wavenumber(cfg: &RunConfig, xi: f64, xi_y: Option<f64>) -> Result<Wavenumber, CliError> {
    let (h_x, h_y) = cfg.steps_xy()?;
    Ok(if cfg.dim == 2 {
        Wavenumber::two_d_steps(xi, xi_y.unwrap_or(xi), h_x, h_y)
    } else {
        Wavenumber::one_d(xi)
    })
}

fn classify(cfg: &RunConfig, scheme: SchemeId, p: &DimensionlessParams, wn: &Wavenumber) -> Result<StabilityVerdict, CliError> {
    let mut v = match cfg.polarization {
        Some(pol) if wn.is_2d() => classify_point_2d(scheme, p, wn, pol)?,
        _ => classify_point(scheme, p, wn)?,
    };
    v.worst_xi = Some(wn.xi_x);
    v.worst_xi_y = wn.xi_y;
    Ok(v)
}

pub fn verdict_row(scheme: SchemeId, m: &MediumModel, k: f64, h: f64, v: &StabilityVerdict) -> Vec<String> {
    let nu = match m {
        MediumModel::Debye { .. } => String::new(),
        MediumModel::Lorentz { nu, .. } => real(*nu),
    };
    vec![
        scheme.name().to_string(),
        real(m.eps_inf()),
        real(m.eps_s()),
        real(m.rate_parameter()),
        nu,
        real(k),
        real(h),
        v.worst_xi.map(real).unwrap_or_default(),
        real(v.q),
        v.stable.to_string(),
        v.argument.name().to_string(),
        real(v.max_root_modulus),
    ]
}

fn summary(v: &StabilityVerdict) -> String {
    format!(
        "{} [{}] q = {:.6e}, max |root| = {:.12}\n  {}",
        if v.stable { "STABLE" } else { "UNSTABLE" },
        v.argument,
        v.q,
        v.max_root_modulus,
        v.detail
    )
}

fn analyze(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let scheme = cfg.scheme_id()?;
    let medium = cfg.medium()?;
    scheme.check_medium(&medium)?;
    let k = cfg.k.expect("validated");
    let geo = geometry(cfg)?;
    let h = geo.h_x();
    let params = dimensionless_params(&medium, k, h)?;
    let verdict = match cfg.xi {
        Some(xi) => classify(cfg, scheme, &params, &wavenumber(cfg, xi, cfg.xi_y)?)?,
        None => worst_case_verdict(scheme, &medium, k, &geo)?,
    };
    println!("{scheme}, k = {k:e} s, h = {h:e} m, lambda = {:.6}: {}", params.lambda, summary(&verdict));
    let mut rows = vec![verdict_row(scheme, &medium, k, h, &verdict)];
    if cfg.empirical {
        let xi = verdict.worst_xi.unwrap_or(PI);
        let wn = wavenumber(cfg, xi, verdict.worst_xi_y)?;
        let grid = harmonic_grid(&wn, cfg.polarization.filter(|_| cfg.dim == 2))?;
        let report = run_growth_with(scheme, &params, grid, &wn, cfg.steps(), cfg.growth_criteria())?;
        let ev = empirical_verdict(&report);
        println!("simulator ({} steps): {}", cfg.steps(), summary(&ev));
        rows.push(verdict_row(scheme, &medium, k, h, &ev));
    }
    emit_csv(&VERDICT_COLUMNS, &rows, cfg.output.as_deref())?;
    Ok(Outcome::Success)
}

fn grid_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn scan(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let scheme = cfg.scheme_id()?;
    let medium = cfg.medium()?;
    scheme.check_medium(&medium)?;
    let c = medium.light_speed();
    let rows: Vec<Vec<String>> = if let Some(q_max) = cfg.q_max {
        // Sweep q at fixed k: λ is chosen per q at ξ = π (ξ = 0 for q = 0).
        let k = cfg.k.expect("validated");
        let qs = grid_points(cfg.q_min.unwrap_or(0.0), q_max, cfg.q_count);
        let base = dimensionless_params(&medium, k, 1.0)?;
        qs.par_iter()
            .map(|&q| {
                let (lambda, xi) = match (q == 0.0, cfg.dim) {
                    (true, _) => (0.5, 0.0),
                    (false, 2) => ((q / 8.0).sqrt(), PI),
                    (false, _) => (q.sqrt() / 2.0, PI),
                };
                let p = base.with_lambda(lambda);
                let wn = if cfg.dim == 2 { Wavenumber::two_d(xi, xi) } else { Wavenumber::one_d(xi) };
                let v = classify(cfg, scheme, &p, &wn)?;
                Ok(verdict_row(scheme, &medium, k, c * k / lambda, &v))
            })
            .collect::<Result<_, CliError>>()?
    } else {
        let ks = grid_points(cfg.k_min.expect("validated"), cfg.k_max.expect("validated"), cfg.k_count);
        let xis = grid_points(if cfg.xi_count == 1 { PI } else { 0.0 }, PI, cfg.xi_count);
        let h = geometry(cfg)?.h_x();
        let points: Vec<(f64, f64)> = ks.iter().flat_map(|&k| xis.iter().map(move |&x| (k, x))).collect();
        points
            .par_iter()
            .map(|&(k, xi)| {
                let p = dimensionless_params(&medium, k, h)?;
                let v = classify(cfg, scheme, &p, &wavenumber(cfg, xi, cfg.xi_y)?)?;
                Ok(verdict_row(scheme, &medium, k, h, &v))
            })
            .collect::<Result<_, CliError>>()?
    };
    let unstable = rows.iter().filter(|r| r[9] == "false").count();
    println!("{scheme}: {} points, {unstable} unstable", rows.len());
    emit_csv(&VERDICT_COLUMNS, &rows, cfg.output.as_deref())?;
    Ok(Outcome::Success)
}

fn simulate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let scheme = cfg.scheme_id()?;
    let medium = cfg.medium()?;
    scheme.check_medium(&medium)?;
    let k = cfg.k.expect("validated");
    let (h_x, _) = cfg.steps_xy()?;
    let params = dimensionless_params(&medium, k, h_x)?;
    let wn = wavenumber(cfg, cfg.xi.expect("validated"), cfg.xi_y)?;
    let grid = match (cfg.cells, cfg.polarization.filter(|_| cfg.dim == 2)) {
        (Some(n), None) => Grid::OneD { n },
        (Some(n), Some(polarization)) => Grid::TwoD { nx: n, ny: n, polarization },
        (None, pol) => harmonic_grid(&wn, pol)?,
    };
    let report = run_growth_with(scheme, &params, grid, &wn, cfg.steps(), cfg.growth_criteria())?;
    let ev = empirical_verdict(&report);
    let analytic = classify(cfg, scheme, &params, &wn)?;
    println!("{scheme} on {grid:?}, {} steps: {}", report.steps, summary(&ev));
    println!("analyzer: {}", summary(&analytic));
    let rows: Vec<Vec<String>> = report
        .norm_ratios
        .iter()
        .enumerate()
        .map(|(n, r)| vec![n.to_string(), real(r * report.initial_norm), real(*r)])
        .collect();
    emit_csv(&GROWTH_COLUMNS, &rows, cfg.output.as_deref())?;
    Ok(Outcome::Success)
}

pub const TABLE_COLUMNS: [&str; 8] = [
    "scheme",
    "regime",
    "expected_stable",
    "computed_stable",
    "expected_argument",
    "computed_argument",
    "verdict_match",
    "argument_match",
];

fn tables(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let schemes: Vec<SchemeId> = match cfg.scheme {
        Some(s) => vec![s],
        None => SchemeId::ALL.to_vec(),
    };
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for scheme in schemes {
        for row in reproduce_argument_table(scheme)? {
            let ok = row.verdict_matches();
            mismatches += usize::from(!ok);
            println!(
                "{:<15} {:<40} expected {:<8} [{}], computed {:<8} [{}]{}",
                scheme.name(),
                row.regime(),
                stability(row.expected_stable),
                row.expected_argument,
                stability(row.computed_stable()),
                row.computed_argument(),
                if ok { "" } else { "  MISMATCH" }
            );
            rows.push(vec![
                scheme.name().to_string(),
                row.regime(),
                row.expected_stable.to_string(),
                row.computed_stable().to_string(),
                row.expected_argument.name().to_string(),
                row.computed_argument().name().to_string(),
                ok.to_string(),
                row.argument_matches().to_string(),
            ]);
        }
    }
    println!("{} rows, {mismatches} verdict mismatches", rows.len());
    emit_csv(&TABLE_COLUMNS, &rows, cfg.output.as_deref())?;
    Ok(if mismatches == 0 { Outcome::Success } else { Outcome::Mismatch })
}

fn stability(stable: bool) -> &'static str {
    if stable { "stable" } else { "unstable" }
}
