//! Time-stepping of the five schemes on periodic grids.
//!
//! Fields are stored in the analyzer's normalized units (`c∞B`, `E`, `D`,
//! `P`, `kJ` relative to `ε₀ε∞`), one array per state variable. In 2D the
//! TE layout carries `E_z` with in-plane `B`, the TM layout `B_z` with
//! in-plane `E` and one set of constitutive variables per component.

mod kernel;

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::analyzer::{Argument, StabilityVerdict};
use crate::error::{invalid, Error, Result};
use crate::schemes::{courant_q, dimensionless_params, DimensionlessParams, MediumModel, Polarization, SchemeId, Wavenumber};
use kernel::Material;

/// Norm ratio above which a run counts as growing.
pub const GROWTH_RATIO: f64 = 1e3;
/// Per-step factor above which a run counts as growing.
pub const GROWTH_FACTOR: f64 = 1.0 + 1e-4;
/// Relative residual below which growth is reported as linear.
pub const LINEAR_FIT_TOL: f64 = 0.05;
pub const MIN_STEPS: usize = 100;
const MAX_GRID: usize = 4096;
const ENVELOPE_WINDOWS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grid {
    OneD { n: usize },
    TwoD { nx: usize, ny: usize, polarization: Polarization },
}

impl Grid {
    pub fn cells(&self) -> usize {
        match *self {
            Grid::OneD { n } => n,
            Grid::TwoD { nx, ny, .. } => nx * ny,
        }
    }

    fn dims(&self) -> (usize, usize) {
        match *self {
            Grid::OneD { n } => (n, 1),
            Grid::TwoD { nx, ny, .. } => (nx, ny),
        }
    }

    fn magnetic_count(&self) -> usize {
        match self {
            Grid::TwoD { polarization: Polarization::Te, .. } => 2,
            _ => 1,
        }
    }

    fn group_count(&self) -> usize {
        match self {
            Grid::TwoD { polarization: Polarization::Tm, .. } => 2,
            _ => 1,
        }
    }

    fn validate(&self) -> Result<()> {
        let (nx, ny) = self.dims();
        let ok = match self {
            Grid::OneD { .. } => nx >= 4,
            Grid::TwoD { .. } => nx >= 4 && ny >= 4,
        };
        if ok { Ok(()) } else { Err(invalid("grid sizes must be at least 4")) }
    }
}

/// Smallest grid on which `wn` is an exact harmonic.
pub fn harmonic_grid(wn: &Wavenumber, polarization: Option<Polarization>) -> Result<Grid> {
    let n_for = |xi: f64| {
        (4..=MAX_GRID)
            .find(|&n| mode_index(xi, n).is_some())
            .ok_or_else(|| invalid(format!("xi = {xi} is not a harmonic of any grid up to {MAX_GRID} cells")))
    };
    match (wn.xi_y, polarization) {
        (None, None) => Ok(Grid::OneD { n: n_for(wn.xi_x)? }),
        (Some(xi_y), Some(polarization)) => Ok(Grid::TwoD { nx: n_for(wn.xi_x)?, ny: n_for(xi_y)?, polarization }),
        (None, Some(_)) => Err(invalid("polarization given for a 1D wavenumber")),
        (Some(_), None) => Err(invalid("2D wavenumber needs a polarization")),
    }
}

/// `m` with `ξ = 2πm/n`, if there is one.
fn mode_index(xi: f64, n: usize) -> Option<i64> {
    let m = xi * n as f64 / std::f64::consts::TAU;
    let r = m.round();
    ((m - r).abs() <= 1e-9 * n as f64).then_some(r as i64)
}

/// Discrete fields of one scheme on a periodic grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldState {
    pub scheme: SchemeId,
    pub grid: Grid,
    /// One row-major array per variable, in the order of [`FieldState::labels`].
    pub fields: Vec<Vec<f64>>,
    pub time_index: usize,
}

impl FieldState {
    pub fn zeros(scheme: SchemeId, grid: Grid) -> Result<Self> {
        grid.validate()?;
        let count = grid.magnetic_count() + grid.group_count() * (scheme.state_len() - 1);
        Ok(Self { scheme, grid, fields: vec![vec![0.0; grid.cells()]; count], time_index: 0 })
    }

    pub fn labels(&self) -> Vec<String> {
        let group = &self.scheme.state_labels()[1..];
        match self.grid {
            Grid::OneD { .. } => self.scheme.state_labels().iter().map(|s| s.to_string()).collect(),
            Grid::TwoD { polarization: Polarization::Te, .. } => ["cBx", "cBy"]
                .into_iter()
                .map(String::from)
                .chain(group.iter().map(|s| format!("{s}z")))
                .collect(),
            Grid::TwoD { polarization: Polarization::Tm, .. } => std::iter::once("cBz".to_string())
                .chain(group.iter().map(|s| format!("{s}x")))
                .chain(group.iter().map(|s| format!("{s}y")))
                .collect(),
        }
    }

    /// Root mean square over all variables and cells.
    pub fn norm(&self) -> f64 {
        let total: usize = self.fields.iter().map(Vec::len).sum();
        let sum: f64 = self.fields.iter().flatten().map(|v| v * v).sum();
        (sum / total as f64).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.fields.iter().flatten().all(|v| v.is_finite())
    }

    /// Fourier amplitude `Σ u_j e^{−iξ·j}` of every variable, indexed by the
    /// array position (a staggered unknown at `j + ½` carries index `j`).
    pub fn mode_amplitudes(&self, wn: &Wavenumber) -> Vec<Complex64> {
        let (nx, ny) = self.grid.dims();
        let xi_y = wn.xi_y.unwrap_or(0.0);
        let phases: Vec<Complex64> = (0..ny)
            .flat_map(|j| (0..nx).map(move |i| Complex64::from_polar(1.0, -(wn.xi_x * i as f64 + xi_y * j as f64))))
            .collect();
        self.fields
            .iter()
            .map(|f| f.iter().zip(&phases).map(|(v, e)| e * v).sum())
            .collect()
    }
}

/// Position offset `(x, y)`, phase and weight of each variable, chosen so
/// the initial vector of Fourier amplitudes is generic.
fn profile(grid: &Grid, group: usize, index: usize) -> (f64, f64, f64, f64) {
    match (grid, index) {
        (Grid::OneD { .. }, 0) => (0.5, 0.0, 0.0, 1.0),
        (Grid::TwoD { polarization: Polarization::Te, .. }, 0) => (0.5, 0.0, 0.0, 1.0),
        (Grid::TwoD { polarization: Polarization::Te, .. }, 1) => (0.0, 0.5, 0.35, 1.0),
        (Grid::TwoD { polarization: Polarization::Tm, .. }, 0) => (0.5, 0.5, 0.0, 1.0),
        (Grid::TwoD { polarization: Polarization::Tm, .. }, v) => {
            // E_x lives at (i + ½, j), E_y at (i, j + ½). A quarter-period
            // lag between them splits the energy evenly between the
            // transverse and curl-free parts for any direction.
            let (comp, role) = ((v - 1) / group, ((v - 1) % group) as f64);
            let (ox, oy) = if comp == 0 { (0.5, 0.0) } else { (0.0, 0.5) };
            (ox, oy, 0.7 * (1.0 + role) + FRAC_PI_2 * comp as f64, 0.9 / (1.0 + 0.3 * role))
        }
        (_, v) => {
            let role = (v - grid.magnetic_count()) as f64;
            (0.0, 0.0, 0.7 * (1.0 + role), 0.9 / (1.0 + 0.3 * role))
        }
    }
}

/// A real sinusoid with wavenumber `wn` in every variable, with a half-cell
/// offset for staggered unknowns and distinct phases per variable.
pub fn init_plane_wave(scheme: SchemeId, grid: Grid, wn: &Wavenumber, amplitude: f64) -> Result<FieldState> {
    let mut state = FieldState::zeros(scheme, grid)?;
    let (nx, ny) = grid.dims();
    let xi_y = match (grid, wn.xi_y) {
        (Grid::OneD { .. }, None) => 0.0,
        (Grid::TwoD { .. }, Some(v)) => v,
        _ => return Err(invalid("wavenumber dimension does not match the grid")),
    };
    if mode_index(wn.xi_x, nx).is_none() || mode_index(xi_y, ny).is_none() {
        return Err(invalid(format!("wavenumber {wn:?} is not a harmonic of the {nx} x {ny} grid")));
    }
    if !(amplitude.is_finite() && amplitude != 0.0) {
        return Err(invalid("amplitude must be finite and non-zero"));
    }
    let group = scheme.state_len() - 1;
    for (v, field) in state.fields.iter_mut().enumerate() {
        let (ox, oy, theta, weight) = profile(&grid, group, v);
        for j in 0..ny {
            for i in 0..nx {
                let phase = wn.xi_x * (i as f64 + ox) + xi_y * (j as f64 + oy) + theta;
                field[j * nx + i] = amplitude * weight * phase.cos();
            }
        }
    }
    Ok(state)
}

/// One full cycle: Faraday update of the magnetic field, then the
/// constitutive and Ampère updates node by node.
pub fn step(state: &mut FieldState, params: &DimensionlessParams, aspect: f64) -> Result<()> {
    let mat = Material::new(state.scheme, *params);
    let (nx, ny) = state.grid.dims();
    let n = nx * ny;
    let lx = params.lambda;
    let ly = params.lambda * aspect;
    let group = state.scheme.state_len() - 1;
    let f = &mut state.fields;
    match state.grid {
        Grid::OneD { .. } => {
            let mut x_old = vec![0.0; n];
            if mat.needs_old_curl() {
                kernel::backward_x(&f[0], nx, lx, &mut x_old);
            }
            let (b, rest) = f.split_at_mut(1);
            kernel::forward_x_sub(&mut b[0], &rest[0], nx, lx);
            let mut x = vec![0.0; n];
            kernel::backward_x(&b[0], nx, lx, &mut x);
            apply(&mat, &mut rest[..group], &x, &x_old);
        }
        Grid::TwoD { polarization: Polarization::Te, .. } => {
            let curl = |bx: &[f64], by: &[f64]| {
                let mut x = vec![0.0; n];
                let mut y = vec![0.0; n];
                kernel::backward_x(bx, nx, lx, &mut x);
                kernel::backward_y(by, nx, ny, ly, &mut y);
                x.iter_mut().zip(&y).for_each(|(a, b)| *a += b);
                x
            };
            let x_old = if mat.needs_old_curl() { curl(&f[0], &f[1]) } else { vec![0.0; n] };
            let (b, rest) = f.split_at_mut(2);
            let (bx, by) = b.split_at_mut(1);
            kernel::forward_x_sub(&mut bx[0], &rest[0], nx, lx);
            kernel::forward_y_sub(&mut by[0], &rest[0], nx, ny, ly);
            let x = curl(&bx[0], &by[0]);
            apply(&mat, &mut rest[..group], &x, &x_old);
        }
        Grid::TwoD { polarization: Polarization::Tm, .. } => {
            // b ← b − (∂x e_y − ∂y e_x); e_x sees −∂y* b, e_y sees ∂x* b.
            let curls = |b: &[f64]| {
                let mut cx = vec![0.0; n];
                let mut cy = vec![0.0; n];
                kernel::backward_y(b, nx, ny, -ly, &mut cx);
                kernel::backward_x(b, nx, lx, &mut cy);
                (cx, cy)
            };
            let (old_x, old_y) = if mat.needs_old_curl() { curls(&f[0]) } else { (vec![0.0; n], vec![0.0; n]) };
            let (b, rest) = f.split_at_mut(1);
            let (ex_group, ey_group) = rest.split_at_mut(group);
            kernel::forward_x_sub(&mut b[0], &ey_group[0], nx, lx);
            kernel::forward_y_sub(&mut b[0], &ex_group[0], nx, ny, -ly);
            let (cx, cy) = curls(&b[0]);
            apply(&mat, ex_group, &cx, &old_x);
            apply(&mat, ey_group, &cy, &old_y);
        }
    }
    state.time_index += 1;
    if state.is_finite() { Ok(()) } else { Err(Error::Overflow(state.time_index)) }
}

fn apply(mat: &Material, group: &mut [Vec<f64>], x: &[f64], x_old: &[f64]) {
    let (e, aux) = group.split_first_mut().expect("non-empty group");
    let (a1, mut a2) = match aux {
        [a1] => (a1, None),
        [a1, a2] => (a1, Some(a2)),
        _ => unreachable!("groups hold two or three variables"),
    };
    for c in 0..e.len() {
        let v2 = a2.as_ref().map_or(0.0, |a| a[c]);
        let (ne, n1, n2) = mat.advance(e[c], a1[c], v2, x[c], x_old[c]);
        e[c] = ne;
        a1[c] = n1;
        if let Some(a) = a2.as_mut() {
            a[c] = n2;
        }
    }
}

/// Thresholds that turn a norm history into a verdict.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthCriteria {
    pub max_ratio: f64,
    pub max_factor: f64,
}

impl Default for GrowthCriteria {
    fn default() -> Self {
        Self { max_ratio: GROWTH_RATIO, max_factor: GROWTH_FACTOR }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    Bounded,
    Growing,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub steps: usize,
    /// Geometric mean growth per step over the last half of the run,
    /// measured on the norm envelope.
    pub per_step_factor: f64,
    pub max_norm_ratio: f64,
    pub verdict: Growth,
    pub overflow: bool,
    /// Growth is linear in the step count rather than exponential.
    pub linear: bool,
    /// Relative residual of a straight-line fit to the norm envelope.
    pub linear_fit_residual: f64,
    pub initial_norm: f64,
    /// Norm divided by the initial norm, one entry per step from 0.
    pub norm_ratios: Vec<f64>,
    pub q: f64,
    pub xi_x: f64,
    pub xi_y: Option<f64>,
}

/// Runs the plane wave `wn` on the smallest grid carrying it exactly.
pub fn run_growth(
    scheme: SchemeId,
    medium: &MediumModel,
    k: f64,
    h: f64,
    wn: &Wavenumber,
    polarization: Option<Polarization>,
    steps: usize,
) -> Result<GrowthReport> {
    scheme.check_medium(medium)?;
    let params = dimensionless_params(medium, k, h)?;
    let grid = harmonic_grid(wn, polarization)?;
    run_growth_on(scheme, &params, grid, wn, steps)
}

pub fn run_growth_on(
    scheme: SchemeId,
    params: &DimensionlessParams,
    grid: Grid,
    wn: &Wavenumber,
    steps: usize,
) -> Result<GrowthReport> {
    run_growth_with(scheme, params, grid, wn, steps, GrowthCriteria::default())
}

pub fn run_growth_with(
    scheme: SchemeId,
    params: &DimensionlessParams,
    grid: Grid,
    wn: &Wavenumber,
    steps: usize,
    criteria: GrowthCriteria,
) -> Result<GrowthReport> {
    if !(criteria.max_ratio > 1.0 && criteria.max_factor > 1.0) {
        return Err(invalid("growth thresholds must exceed 1"));
    }
    if steps < MIN_STEPS {
        return Err(invalid(format!("at least {MIN_STEPS} steps are needed, got {steps}")));
    }
    let mut state = init_plane_wave(scheme, grid, wn, 1.0)?;
    let n0 = state.norm();
    let mut ratios = Vec::with_capacity(steps + 1);
    ratios.push(1.0);
    let mut overflow = false;
    for _ in 0..steps {
        match step(&mut state, params, wn.aspect) {
            Ok(()) => ratios.push(state.norm() / n0),
            Err(Error::Overflow(_)) => {
                overflow = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(summarize(ratios, n0, overflow, steps, courant_q(params, wn), wn, criteria))
}

fn summarize(
    ratios: Vec<f64>,
    initial_norm: f64,
    overflow: bool,
    steps: usize,
    q: f64,
    wn: &Wavenumber,
    criteria: GrowthCriteria,
) -> GrowthReport {
    let last = ratios.len() - 1;
    let max_norm_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let per_step_factor = if overflow {
        max_norm_ratio.max(criteria.max_ratio).powf(1.0 / last.max(1) as f64)
    } else {
        let quarter = (last / 4).max(1);
        let peak = |r: std::ops::Range<usize>| ratios[r].iter().copied().fold(0.0, f64::max);
        let early = peak(quarter..2 * quarter);
        let late = peak(last + 1 - quarter..last + 1);
        let gap = (last + 1 - quarter) - quarter;
        if early > 0.0 {
            (late / early).powf(1.0 / gap as f64).max(f64::MIN_POSITIVE)
        } else {
            f64::MIN_POSITIVE
        }
    };
    let growing = overflow || max_norm_ratio > criteria.max_ratio || per_step_factor > criteria.max_factor;
    let (linear_fit_residual, linear) = if overflow {
        (f64::INFINITY, false)
    } else {
        linear_growth(&ratios)
    };
    GrowthReport {
        steps: last,
        per_step_factor,
        max_norm_ratio,
        verdict: if growing { Growth::Growing } else { Growth::Bounded },
        overflow,
        linear: growing && linear,
        linear_fit_residual,
        initial_norm,
        norm_ratios: ratios,
        q,
        xi_x: wn.xi_x,
        xi_y: wn.xi_y,
    }
    .with_steps(steps)
}

impl GrowthReport {
    fn with_steps(mut self, requested: usize) -> Self {
        if !self.overflow {
            self.steps = requested;
        }
        self
    }
}

/// Fits a line and an exponential to the windowed maxima of the norm and
/// reports the line's relative residual and whether it fits better with a
/// positive slope.
fn linear_growth(ratios: &[f64]) -> (f64, bool) {
    let w = (ratios.len() / ENVELOPE_WINDOWS).max(1);
    // A short trailing window would not reach its envelope.
    let pts: Vec<(f64, f64)> = ratios
        .chunks_exact(w)
        .enumerate()
        .map(|(c, chunk)| ((c * w) as f64 + 0.5 * chunk.len() as f64, chunk.iter().copied().fold(0.0, f64::max)))
        .collect();
    let Some((a, b)) = line_fit(&pts) else { return (f64::INFINITY, false) };
    let mean = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let rms = |f: &dyn Fn(f64) -> f64| {
        (pts.iter().map(|&(t, y)| (y - f(t)).powi(2)).sum::<f64>() / pts.len() as f64).sqrt() / mean
    };
    let lin_res = rms(&|t| a + b * t);
    let logs: Vec<(f64, f64)> = pts.iter().filter(|p| p.1 > 0.0).map(|&(t, y)| (t, y.ln())).collect();
    let exp_res = line_fit(&logs).map_or(f64::INFINITY, |(la, lb)| rms(&|t| (la + lb * t).exp()));
    (lin_res, b > 0.0 && lin_res < LINEAR_FIT_TOL && lin_res <= exp_res)
}

fn line_fit(pts: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let (st, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mt, my) = (st / n, sy / n);
    let (sxx, sxy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + (p.0 - mt).powi(2), b + (p.0 - mt) * (p.1 - my)));
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((my - slope * mt, slope))
}

/// Restates a growth report as a stability verdict.
pub fn empirical_verdict(report: &GrowthReport) -> StabilityVerdict {
    let detail = match (report.verdict, report.overflow, report.linear) {
        (Growth::Bounded, ..) => format!(
            "bounded over {} steps (max norm ratio {:.3e})",
            report.steps, report.max_norm_ratio
        ),
        (Growth::Growing, true, _) => format!("overflow after {} steps", report.steps),
        (Growth::Growing, false, true) => "Gⁿ-unbounded (polynomial growth)".to_string(),
        (Growth::Growing, false, false) => format!(
            "exponential growth, per-step factor {:.6}",
            report.per_step_factor
        ),
    };
    StabilityVerdict {
        stable: report.verdict == Growth::Bounded,
        argument: Argument::Empirical,
        detail,
        worst_xi: Some(report.xi_x),
        worst_xi_y: report.xi_y,
        q: report.q,
        max_root_modulus: report.per_step_factor,
    }
}
