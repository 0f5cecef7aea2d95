//! Analyzer against simulator over a stratified sample plan.
//!
//! Strata are (scheme, geometry, regime) with regimes stable, unstable and
//! just inside or outside the stability boundary in `q`. Each sample sits
//! at the largest-`q` harmonic of its grid, so every other mode the grid
//! carries is at least as stable as the sampled one.

use std::f64::consts::PI;

use fdtd_stab::analyzer::{classify_point, classify_point_2d};
use fdtd_stab::schemes::{
    courant_q, dimensionless_params, DimensionlessParams, MediumKind, MediumModel, Polarization, SchemeId,
    Wavenumber,
};
use fdtd_stab::simulator::{empirical_verdict, harmonic_grid, run_growth_with, GrowthCriteria};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::output::{emit_csv, real};
use crate::{CliError, Outcome};

const Q_SCAN_STEP: f64 = 0.005;
const Q_SCAN_MAX: f64 = 4.5;
const MAX_TRIES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Stable,
    Unstable,
    BelowBoundary,
    AboveBoundary,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Stable, Regime::Unstable, Regime::BelowBoundary, Regime::AboveBoundary];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Stable => "stable",
            Regime::Unstable => "unstable",
            Regime::BelowBoundary => "below-boundary",
            Regime::AboveBoundary => "above-boundary",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Layout {
    OneD,
    TwoD(Polarization),
}

impl Layout {
    pub const ALL: [Layout; 3] = [Layout::OneD, Layout::TwoD(Polarization::Te), Layout::TwoD(Polarization::Tm)];

    pub fn name(self) -> &'static str {
        match self {
            Layout::OneD => "1d",
            Layout::TwoD(Polarization::Te) => "2d-te",
            Layout::TwoD(Polarization::Tm) => "2d-tm",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub scheme: SchemeId,
    pub layout: Layout,
    pub regime: Regime,
    pub medium: MediumModel,
    pub k: f64,
    pub h: f64,
    pub wn: Wavenumber,
    pub q: f64,
    pub q_boundary: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct SampleResult {
    pub sample: Sample,
    pub analytic_stable: bool,
    pub empirical_stable: bool,
    pub in_margin: bool,
    pub max_root_modulus: f64,
    pub per_step_factor: f64,
    pub detail: String,
}

impl SampleResult {
    pub fn agrees(&self) -> bool {
        self.analytic_stable == self.empirical_stable
    }
}

fn stable_at_q(scheme: SchemeId, base: &DimensionlessParams, q: f64) -> Result<bool, CliError> {
    let (lambda, xi) = if q == 0.0 { (0.5, 0.0) } else { (q.sqrt() / 2.0, PI) };
    Ok(classify_point(scheme, &base.with_lambda(lambda), &Wavenumber::one_d(xi))?.stable)
}

/// The first `q > 0` where the 1D verdict turns unstable, or `None` if
/// the scheme is stable up to `Q_SCAN_MAX`.
pub fn q_boundary(scheme: SchemeId, base: &DimensionlessParams) -> Result<Option<f64>, CliError> {
    let n = (Q_SCAN_MAX / Q_SCAN_STEP).round() as usize;
    let mut lo = 0.0;
    for i in 1..=n {
        let q = i as f64 * Q_SCAN_STEP;
        if stable_at_q(scheme, base, q)? {
            lo = q;
            continue;
        }
        let mut hi = q;
        while hi - lo > 1e-9 * hi.max(1e-3) {
            let mid = 0.5 * (lo + hi);
            if stable_at_q(scheme, base, mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return Ok(Some(0.5 * (lo + hi)));
    }
    Ok(None)
}

fn presets(kind: MediumKind) -> [MediumModel; 2] {
    match kind {
        MediumKind::Debye => [MediumModel::water(), MediumModel::foam()],
        MediumKind::Lorentz => [MediumModel::material_a(), MediumModel::material_b()],
    }
}

/// The largest-`q` harmonic of an `n`-cell axis.
fn top_harmonic(n: usize) -> f64 {
    std::f64::consts::TAU * (n / 2) as f64 / n as f64
}

fn draw(
    rng: &mut ChaCha8Rng,
    scheme: SchemeId,
    layout: Layout,
    regime: Regime,
) -> Result<Option<Sample>, CliError> {
    let medium = presets(scheme.medium_kind())[rng.gen_range(0..2)];
    let tau = match medium {
        MediumModel::Debye { t_r, .. } => t_r,
        MediumModel::Lorentz { omega1, .. } => 1.0 / omega1,
    };
    let k = tau * 10f64.powf(rng.gen_range(-3.0..0.3));
    let base = dimensionless_params(&medium, k, 1.0)?;
    if !stable_at_q(scheme, &base, 0.0)? {
        return Ok(None);
    }
    let qb = q_boundary(scheme, &base)?;
    let q = match (regime, qb) {
        (Regime::Stable, None) => rng.gen_range(0.05..Q_SCAN_MAX),
        (Regime::Stable, Some(b)) if b > 0.1 => b * rng.gen_range(0.05..0.9),
        (Regime::Unstable, Some(b)) if b + 0.1 < Q_SCAN_MAX => rng.gen_range(b + 0.05..Q_SCAN_MAX.min(b + 1.0)),
        (Regime::BelowBoundary, Some(b)) if b > 0.1 => b - rng.gen_range(1.5e-3..1e-2),
        (Regime::AboveBoundary, Some(b)) if b < Q_SCAN_MAX => b + rng.gen_range(1.5e-3..1e-2),
        _ => return Ok(None),
    };
    // Odd grids put the top harmonic just below π.
    let n = *[4usize, 5, 7, 9, 11].get(rng.gen_range(0..5)).expect("in range");
    let c = medium.light_speed();
    let (wn, h) = match layout {
        Layout::OneD => {
            let xi = top_harmonic(n);
            let s = (0.5 * xi).sin();
            (Wavenumber::one_d(xi), c * k * 2.0 * s / q.sqrt())
        }
        Layout::TwoD(_) => {
            let m = *[4usize, 5, 7].get(rng.gen_range(0..3)).expect("in range");
            let (xi_x, xi_y) = (top_harmonic(n), top_harmonic(m));
            let (sx, sy) = ((0.5 * xi_x).sin(), (0.5 * xi_y).sin());
            let lambda = (q / (4.0 * (sx * sx + sy * sy))).sqrt();
            (Wavenumber::two_d(xi_x, xi_y), c * k / lambda)
        }
    };
    let p = dimensionless_params(&medium, k, h)?;
    Ok(Some(Sample { scheme, layout, regime, medium, k, h, q: courant_q(&p, &wn), wn, q_boundary: qb }))
}

pub fn sample_plan(schemes: &[SchemeId], samples: usize, seed: u64) -> Result<Vec<Sample>, CliError> {
    let strata: Vec<(SchemeId, Layout, Regime)> = schemes
        .iter()
        .flat_map(|&s| Layout::ALL.into_iter().flat_map(move |l| Regime::ALL.into_iter().map(move |r| (s, l, r))))
        .collect();
    let count = samples.max(strata.len());
    (0..count)
        .into_par_iter()
        .map(|i| {
            let (scheme, layout, regime) = strata[i % strata.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64));
            for _ in 0..MAX_TRIES {
                if let Some(s) = draw(&mut rng, scheme, layout, regime)? {
                    return Ok(s);
                }
            }
            Err(CliError::Config(format!(
                "no {} sample found for {scheme} {}",
                regime.name(),
                layout.name()
            )))
        })
        .collect()
}

pub fn evaluate(s: &Sample, steps: usize, criteria: GrowthCriteria, margin: f64) -> Result<SampleResult, CliError> {
    let p = dimensionless_params(&s.medium, s.k, s.h)?;
    let (analytic, pol) = match s.layout {
        Layout::OneD => (classify_point(s.scheme, &p, &s.wn)?, None),
        Layout::TwoD(pol) => (classify_point_2d(s.scheme, &p, &s.wn, pol)?, Some(pol)),
    };
    let grid = harmonic_grid(&s.wn, pol)?;
    let report = run_growth_with(s.scheme, &p, grid, &s.wn, steps, criteria)?;
    let ev = empirical_verdict(&report);
    Ok(SampleResult {
        in_margin: s.q_boundary.is_some_and(|b| (s.q - b).abs() < margin),
        analytic_stable: analytic.stable,
        empirical_stable: ev.stable,
        max_root_modulus: analytic.max_root_modulus,
        per_step_factor: report.per_step_factor,
        detail: format!("analyzer: {}; simulator: {}", analytic.detail, ev.detail),
        sample: s.clone(),
    })
}

pub const VERIFY_COLUMNS: [&str; 15] = [
    "scheme",
    "layout",
    "regime",
    "k",
    "h",
    "xi",
    "xi_y",
    "q",
    "q_boundary",
    "analytic_stable",
    "empirical_stable",
    "in_margin",
    "agree",
    "max_root_modulus",
    "per_step_factor",
];

fn schemes_of(cfg: &RunConfig) -> Vec<SchemeId> {
    cfg.scheme.map_or(SchemeId::ALL.to_vec(), |s| vec![s])
}

/// Draws the sample plan and evaluates every sample.
pub fn run_samples(cfg: &RunConfig) -> Result<Vec<SampleResult>, CliError> {
    let plan = sample_plan(&schemes_of(cfg), cfg.samples, cfg.seed)?;
    plan.par_iter()
        .map(|s| evaluate(s, cfg.steps(), cfg.growth_criteria(), cfg.margin))
        .collect()
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let schemes = schemes_of(cfg);
    let results = run_samples(cfg)?;
    let mut failures = 0;
    println!("{:<24} {:>8} {:>8} {:>8}", "scheme/layout", "agree", "disagree", "in band");
    for &scheme in &schemes {
        for layout in Layout::ALL {
            let cell: Vec<&SampleResult> =
                results.iter().filter(|r| r.sample.scheme == scheme && r.sample.layout == layout).collect();
            let band = cell.iter().filter(|r| r.in_margin).count();
            let agree = cell.iter().filter(|r| !r.in_margin && r.agrees()).count();
            let disagree = cell.iter().filter(|r| !r.in_margin && !r.agrees()).count();
            failures += disagree;
            println!("{:<24} {agree:>8} {disagree:>8} {band:>8}", format!("{}/{}", scheme.name(), layout.name()));
        }
    }
    for r in results.iter().filter(|r| !r.in_margin && !r.agrees()) {
        println!(
            "DISAGREE {} {} {} q = {:.6} (boundary {}), |z|max - 1 = {:.3e}, measured factor - 1 = {:.3e}: {}",
            r.sample.scheme,
            r.sample.layout.name(),
            r.sample.regime.name(),
            r.sample.q,
            r.sample.q_boundary.map_or("none".into(), |b| format!("{b:.6}")),
            r.max_root_modulus - 1.0,
            r.per_step_factor - 1.0,
            r.detail
        );
    }
    println!("{} samples, {failures} disagreements outside the margin band", results.len());
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            let s = &r.sample;
            vec![
                s.scheme.name().to_string(),
                s.layout.name().to_string(),
                s.regime.name().to_string(),
                real(s.k),
                real(s.h),
                real(s.wn.xi_x),
                s.wn.xi_y.map(real).unwrap_or_default(),
                real(s.q),
                s.q_boundary.map(real).unwrap_or_default(),
                r.analytic_stable.to_string(),
                r.empirical_stable.to_string(),
                r.in_margin.to_string(),
                r.agrees().to_string(),
                real(r.max_root_modulus),
                real(r.per_step_factor),
            ]
        })
        .collect();
    if let Some(path) = cfg.output.as_deref() {
        emit_csv(&VERIFY_COLUMNS, &rows, Some(path))?;
    }
    Ok(if failures == 0 { Outcome::Success } else { Outcome::Mismatch })
}
