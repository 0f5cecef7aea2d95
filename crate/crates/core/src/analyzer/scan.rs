use std::f64::consts::PI;

use rayon::prelude::*;

use super::{classify_point, classify_point_2d, critical_q, StabilityVerdict};
use crate::error::{invalid, Result};
use crate::schemes::{dimensionless_params, DimensionlessParams, MediumModel, Polarization, SchemeId, Wavenumber};

/// Uniform samples of `ξ` on `[0, π]` for 1D scans.
pub const XI_GRID: usize = 257;
/// Uniform samples per direction for 2D scans.
pub const XI_GRID_2D: usize = 65;

const COARSE_K: usize = 64;
const BISECT_REL: f64 = 1e-4;
const CANDIDATE_REL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geometry {
    OneD { h: f64 },
    TwoD { h_x: f64, h_y: f64, polarization: Polarization },
}

impl Geometry {
    pub fn h_x(&self) -> f64 {
        match *self {
            Geometry::OneD { h } => h,
            Geometry::TwoD { h_x, .. } => h_x,
        }
    }

    /// `λ_y / λ_x`, zero in 1D.
    fn aspect(&self) -> f64 {
        match *self {
            Geometry::OneD { .. } => 0.0,
            Geometry::TwoD { h_x, h_y, .. } => h_x / h_y,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        match *self {
            Geometry::OneD { h } if !ok(h) => Err(invalid(format!("h must be positive, got {h}"))),
            Geometry::TwoD { h_x, h_y, .. } if !ok(h_x) || !ok(h_y) => {
                Err(invalid(format!("h_x and h_y must be positive, got {h_x}, {h_y}")))
            }
            _ => Ok(()),
        }
    }
}

fn xi_for_q(q: f64, lambda_sq: f64) -> Option<f64> {
    let s = (q / (4.0 * lambda_sq)).sqrt();
    (s <= 1.0).then(|| 2.0 * s.asin())
}

/// The wavenumbers a scan visits: a uniform grid plus the points where `q`
/// hits one of its critical values.
pub fn xi_samples(scheme: SchemeId, params: &DimensionlessParams, geometry: &Geometry) -> Vec<(f64, Option<f64>)> {
    let lx2 = params.lambda * params.lambda;
    let critical = critical_q(scheme, params);
    match geometry {
        Geometry::OneD { .. } => {
            let mut out: Vec<_> = (0..XI_GRID).map(|i| (PI * i as f64 / (XI_GRID - 1) as f64, None)).collect();
            out.extend(critical.iter().filter_map(|&qc| xi_for_q(qc, lx2)).map(|x| (x, None)));
            out
        }
        Geometry::TwoD { .. } => {
            let ly2 = lx2 * geometry.aspect().powi(2);
            let n = XI_GRID_2D;
            let mut out = Vec::with_capacity(n * n + 3 * critical.len());
            for i in 0..n {
                for j in 0..n {
                    out.push((PI * i as f64 / (n - 1) as f64, Some(PI * j as f64 / (n - 1) as f64)));
                }
            }
            for &qc in &critical {
                if let Some(x) = xi_for_q(qc, lx2) {
                    out.push((x, Some(0.0)));
                }
                if let Some(y) = xi_for_q(qc, ly2) {
                    out.push((0.0, Some(y)));
                }
                if let Some(t) = xi_for_q(qc, lx2 + ly2) {
                    out.push((t, Some(t)));
                }
            }
            out
        }
    }
}

/// Stability over all wavenumbers for a physical time and space step.
pub fn worst_case_verdict(
    scheme: SchemeId,
    medium: &MediumModel,
    k: f64,
    geometry: &Geometry,
) -> Result<StabilityVerdict> {
    scheme.check_medium(medium)?;
    geometry.validate()?;
    let params = dimensionless_params(medium, k, geometry.h_x())?;
    let samples = xi_samples(scheme, &params, geometry);
    let verdicts = samples
        .par_iter()
        .map(|&(x, y)| {
            let mut v = match (y, geometry) {
                (Some(y), Geometry::TwoD { h_x, h_y, polarization }) => {
                    classify_point_2d(scheme, &params, &Wavenumber::two_d_steps(x, y, *h_x, *h_y), *polarization)?
                }
                _ => classify_point(scheme, &params, &Wavenumber::one_d(x))?,
            };
            v.worst_xi = Some(x);
            v.worst_xi_y = y;
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let unstable = verdicts.iter().filter(|v| !v.stable).count();
    let pool: Vec<&StabilityVerdict> = if unstable > 0 {
        verdicts.iter().filter(|v| !v.stable).collect()
    } else {
        verdicts.iter().collect()
    };
    let mut worst = pool[0];
    for v in &pool[1..] {
        if v.max_root_modulus > worst.max_root_modulus {
            worst = v;
        }
    }
    let mut out = worst.clone();
    out.detail = format!(
        "{unstable} of {} sampled wavenumbers unstable; deciding point: {}",
        verdicts.len(),
        worst.detail
    );
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    /// Largest stable time step found.
    pub k_star: f64,
    /// Whether `k_star` itself is stable (false for strict conditions).
    pub attained: bool,
    /// False when a stable time step was found above an unstable one.
    pub monotone: bool,
    pub lowest_unstable_k: Option<f64>,
    /// The closed-form critical time step the boundary landed on, if any.
    pub critical_k: Option<f64>,
    /// Upper end of the searched range, `2 h / c_∞`.
    pub k_max: f64,
    pub detail: String,
}

/// Time steps at which a stability condition can switch: the grid limits
/// `q = 2, 4` at the largest wavenumber and the medium's own time scales.
pub fn boundary_candidates(medium: &MediumModel, geometry: &Geometry) -> Vec<f64> {
    let c = medium.light_speed();
    let h = geometry.h_x();
    let spread = (1.0 + geometry.aspect().powi(2)).sqrt();
    let mut out: Vec<f64> = [2.0f64, 4.0].iter().map(|qc| h * qc.sqrt() / (2.0 * c * spread)).collect();
    let eps_prime = medium.eps_s() / medium.eps_inf();
    match *medium {
        MediumModel::Debye { t_r, .. } => out.push(2.0 * t_r),
        MediumModel::Lorentz { omega1, nu, .. } => {
            // ω = 2/(2ε′−1), 2/ε′, 1, 2 and δ = 1.
            for omega in [2.0 / (2.0 * eps_prime - 1.0), 2.0 / eps_prime, 1.0, 2.0] {
                out.push((2.0 * omega).sqrt() / omega1);
            }
            if nu > 0.0 {
                out.push(2.0 / nu);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Largest stable time step on `(0, 2h/c_∞]`.
///
/// A coarse scan locates the first unstable step; a closed-form candidate
/// inside the bracket is accepted when the verdict flips across it,
/// otherwise the bracket is bisected.
pub fn stability_boundary_k(scheme: SchemeId, medium: &MediumModel, geometry: &Geometry) -> Result<BoundaryReport> {
    scheme.check_medium(medium)?;
    geometry.validate()?;
    let k_max = 2.0 * geometry.h_x() / medium.light_speed();
    let stable_at = |k: f64| worst_case_verdict(scheme, medium, k, geometry).map(|v| v.stable);
    let coarse: Vec<f64> = (1..=COARSE_K).map(|i| k_max * i as f64 / COARSE_K as f64).collect();
    let flags = coarse.par_iter().map(|&k| stable_at(k)).collect::<Result<Vec<bool>>>()?;
    let Some(first) = flags.iter().position(|s| !s) else {
        return Ok(BoundaryReport {
            k_star: k_max,
            attained: true,
            monotone: true,
            lowest_unstable_k: None,
            critical_k: None,
            k_max,
            detail: "stable over the whole searched range".into(),
        });
    };
    let restabilized = flags[first..].iter().position(|s| *s).map(|i| coarse[first + i]);
    let monotone = restabilized.is_none();
    let mut lo = if first == 0 { 0.0 } else { coarse[first - 1] };
    let mut hi = coarse[first];

    let mut notes = Vec::new();
    if let Some(k) = restabilized {
        notes.push(format!("non-monotone: stable again at k = {k:e}"));
    }
    for kc in boundary_candidates(medium, geometry) {
        if kc < lo || kc > hi * (1.0 + 1e-9) {
            continue;
        }
        if stable_at(kc * (1.0 - CANDIDATE_REL))? && !stable_at(kc * (1.0 + CANDIDATE_REL))? {
            let attained = stable_at(kc)?;
            notes.push(format!("boundary at closed-form critical step {kc:e}"));
            return Ok(BoundaryReport {
                k_star: kc,
                attained,
                monotone,
                lowest_unstable_k: Some(coarse[first]),
                critical_k: Some(kc),
                k_max,
                detail: notes.join("; "),
            });
        }
    }
    while hi - lo > BISECT_REL * hi {
        if hi < k_max * 1e-9 {
            notes.push("unstable down to the smallest probed time step".into());
            break;
        }
        let mid = 0.5 * (lo + hi);
        if stable_at(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    notes.push(format!("bisected to [{lo:e}, {hi:e}]"));
    Ok(BoundaryReport {
        k_star: lo,
        attained: lo > 0.0,
        monotone: monotone && lo > 0.0,
        lowest_unstable_k: Some(coarse[first].min(hi)),
        critical_k: None,
        k_max,
        detail: notes.join("; "),
    })
}
