//! Stability verdicts for a scheme at one wavenumber, over all wavenumbers,
//! and as a function of the time step.
//!
//! A point is stable when the characteristic polynomial is simple von
//! Neumann. When it has multiple unit-circle roots instead, the powers of the
//! amplification matrix decide: non-defective unit eigenvalues keep them
//! bounded, defective ones make them grow linearly.

mod bounded;
mod scan;
mod tables;

use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::polyloc::{is_schur, is_simple_von_neumann, root_profile, Polynomial, RootProfile};
use crate::schemes::{
    amplification_matrix, char_poly_closed, courant_q, psi0_2d, DimensionlessParams, Polarization,
    SchemeId, Wavenumber,
};

pub use bounded::{eigenvalues, gn_bounded, BoundednessReport, UnitEigenvalue, EIGEN_CLUSTER_TOL, RANK_TOL};
pub use scan::{
    boundary_candidates, stability_boundary_k, worst_case_verdict, xi_samples, BoundaryReport, Geometry,
    XI_GRID, XI_GRID_2D,
};
pub use tables::{reproduce_argument_table, RowSample, TableRow};

/// Roots within this distance of the unit circle count as on it.
pub const CIRCLE_TOL: f64 = 1e-6;

/// Root moduli below `1 + MARGINAL_TOL` are rechecked on the matrix.
pub const MARGINAL_TOL: f64 = 1e-3;

/// A `q` this close to a degenerate value is moved onto it.
pub const RESONANCE_TOL: f64 = 1e-9;

/// Which argument settled a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Argument {
    TheoremSchur,
    TheoremVonNeumann,
    SubPolynomial,
    GForm,
    Eigenvectors,
    Empirical,
}

impl Argument {
    pub const ALL: [Argument; 6] = [
        Argument::TheoremSchur,
        Argument::TheoremVonNeumann,
        Argument::SubPolynomial,
        Argument::GForm,
        Argument::Eigenvectors,
        Argument::Empirical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Argument::TheoremSchur => "TheoremSchur",
            Argument::TheoremVonNeumann => "TheoremVonNeumann",
            Argument::SubPolynomial => "SubPolynomial",
            Argument::GForm => "GForm",
            Argument::Eigenvectors => "Eigenvectors",
            Argument::Empirical => "Empirical",
        }
    }

    /// Schur and von Neumann proofs establish the same root facts; tables
    /// compare arguments up to that distinction.
    pub fn same_family(self, other: Argument) -> bool {
        let root_theorem = |a| matches!(a, Argument::TheoremSchur | Argument::TheoremVonNeumann);
        self == other || (root_theorem(self) && root_theorem(other))
    }
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Argument {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Argument::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| invalid(format!("unknown argument '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub argument: Argument,
    pub detail: String,
    /// The deciding wavenumber of a scan (`ξ_x` in 2D).
    pub worst_xi: Option<f64>,
    pub worst_xi_y: Option<f64>,
    pub q: f64,
    pub max_root_modulus: f64,
}

/// The `q` values at which the scheme has repeated unit-circle roots for
/// some parameters: the grid limits and, in harmonic vacuum-like media, the
/// resonances.
pub fn critical_q(scheme: SchemeId, params: &DimensionlessParams) -> Vec<f64> {
    let mut out = vec![2.0, 4.0];
    let w = params.omega;
    if params.delta == 0.0 && params.eps_s_prime == 1.0 {
        match scheme {
            SchemeId::LorentzJoseph => out.push(2.0 * w / (1.0 + w)),
            SchemeId::LorentzKashiwa => out.push(4.0 * w / (2.0 + w)),
            SchemeId::LorentzYoung => out.push(2.0 * w),
            _ => {}
        }
    }
    out
}

fn snap(scheme: SchemeId, params: &DimensionlessParams, q: f64) -> Option<f64> {
    critical_q(scheme, params)
        .into_iter()
        .find(|qc| q > 0.0 && q != *qc && (q - qc).abs() <= RESONANCE_TOL * qc.max(1.0))
}

/// Tests for a root at one of `0, ±1, ±i`, the cases where a factor splits
/// off exactly.
fn exact_special_root(phi: &Polynomial) -> Option<&'static str> {
    let scale: f64 = phi.coeffs().iter().map(|c| c.norm()).sum();
    let tol = 1e-12 * scale;
    let points = [
        ("0", Complex64::new(0.0, 0.0)),
        ("1", Complex64::new(1.0, 0.0)),
        ("-1", Complex64::new(-1.0, 0.0)),
        ("i", Complex64::new(0.0, 1.0)),
        ("-i", Complex64::new(0.0, -1.0)),
    ];
    points.into_iter().find(|(_, z)| phi.eval(*z).norm() <= tol).map(|(name, _)| name)
}

fn describe_profile(p: &RootProfile) -> String {
    let circle: Vec<String> = p
        .on_circle
        .iter()
        .map(|(z, m)| format!("{:.6}{:+.6}i x{}", z.re, z.im, m))
        .collect();
    format!(
        "{} inside, {} outside, on circle [{}], max |z| = {:.12}",
        p.inside_count,
        p.outside_count,
        circle.join(", "),
        p.max_modulus
    )
}

/// Stability of a 1D scheme at one wavenumber.
pub fn classify_point(scheme: SchemeId, params: &DimensionlessParams, wn: &Wavenumber) -> Result<StabilityVerdict> {
    if wn.is_2d() {
        return Err(invalid("classify_point takes a 1D wavenumber; use classify_point_2d"));
    }
    let q = courant_q(params, wn);
    match snap(scheme, params, q) {
        Some(qc) => {
            let s = (0.5 * wn.xi_x).sin().abs();
            let snapped = params.with_lambda(qc.sqrt() / (2.0 * s));
            let mut v = classify_q(scheme, &snapped, wn, qc, true)?;
            v.detail = format!("q = {q:e} moved to degenerate value {qc}; {}", v.detail);
            Ok(v)
        }
        None => classify_q(scheme, params, wn, q, false),
    }
}

fn classify_q(
    scheme: SchemeId,
    params: &DimensionlessParams,
    wn: &Wavenumber,
    q: f64,
    force_matrix: bool,
) -> Result<StabilityVerdict> {
    let phi = char_poly_closed(scheme, params, q)?;
    let profile = root_profile(&phi, CIRCLE_TOL)?;
    let verdict = |stable, argument, detail: String| StabilityVerdict {
        stable,
        argument,
        detail,
        worst_xi: None,
        worst_xi_y: None,
        q,
        max_root_modulus: profile.max_modulus,
    };
    let svn = is_simple_von_neumann(&phi)?;
    if !force_matrix && svn.holds {
        if let Some(root) = exact_special_root(&phi) {
            return Ok(verdict(
                true,
                Argument::SubPolynomial,
                format!("simple von Neumann with exact factor at Z = {root}; {}", describe_profile(&profile)),
            ));
        }
        let schur = is_schur(&phi)?.holds;
        let argument = if schur { Argument::TheoremSchur } else { Argument::TheoremVonNeumann };
        let what = if schur { "Schur" } else { "simple von Neumann" };
        return Ok(verdict(true, argument, format!("{what}; {}", describe_profile(&profile))));
    }
    // Near a multiple root the polynomial roots lose half their digits while
    // non-defective matrix eigenvalues do not, so marginal cases go to the
    // matrix.
    let clear_growth = profile.outside_count > 0
        && !profile.has_multiple_circle_root()
        && profile.max_modulus > 1.0 + MARGINAL_TOL;
    if !force_matrix && clear_growth {
        let detail = format!(
            "not simple von Neumann ({:?}); {}",
            svn.trace.failure,
            describe_profile(&profile)
        );
        return Ok(verdict(false, Argument::TheoremVonNeumann, detail));
    }
    let g = amplification_matrix(scheme, params, wn)?;
    let report = gn_bounded(&g, CIRCLE_TOL)?;
    let unit: Vec<String> = report
        .unit_eigenvalues
        .iter()
        .map(|u| format!("{:.6}{:+.6}i alg {} geom {}", u.value.re, u.value.im, u.algebraic, u.geometric))
        .collect();
    let unit = unit.join(", ");
    if !report.outside.is_empty() {
        let detail = format!("eigenvalue outside the circle; unit eigenvalues [{unit}]");
        return Ok(verdict(false, Argument::TheoremVonNeumann, detail));
    }
    if report.gn_bounded {
        let multiple = report.unit_eigenvalues.iter().any(|u| u.algebraic > 1);
        let argument = if q == 0.0 && multiple {
            Argument::GForm
        } else if exact_special_root(&phi).is_some() {
            Argument::SubPolynomial
        } else if multiple {
            Argument::GForm
        } else {
            Argument::TheoremVonNeumann
        };
        Ok(verdict(true, argument, format!("G^n bounded; unit eigenvalues [{unit}]")))
    } else {
        Ok(verdict(
            false,
            Argument::Eigenvectors,
            format!("defective unit eigenvalue, G^n grows linearly; unit eigenvalues [{unit}]"),
        ))
    }
}

/// The 1D point with the same `q`, taken at `ξ = π`.
fn equivalent_1d(scheme: SchemeId, params: &DimensionlessParams, q: f64) -> Result<StabilityVerdict> {
    if q == 0.0 {
        return classify_point(scheme, params, &Wavenumber::one_d(0.0));
    }
    classify_point(scheme, &params.with_lambda(q.sqrt() / 2.0), &Wavenumber::one_d(std::f64::consts::PI))
}

/// Stability of a 2D scheme at one wavenumber.
///
/// The 2D amplification matrix splits into a transverse block, with
/// polynomial `φ₀(q_x + q_y)`, and a curl-free block, which for TM carries
/// the factor `ψ₀` of the field and auxiliary variables and is the `q = 0`
/// point of the 1D scheme. TE is decided by the transverse block alone; TM
/// needs both. The extra root `Z = 1` belongs to the magnetic field and is
/// simple within its block.
pub fn classify_point_2d(
    scheme: SchemeId,
    params: &DimensionlessParams,
    wn: &Wavenumber,
    polarization: Polarization,
) -> Result<StabilityVerdict> {
    if !wn.is_2d() {
        return Err(invalid("classify_point_2d takes a 2D wavenumber"));
    }
    let q = courant_q(params, wn);
    let mut transverse = equivalent_1d(scheme, params, q)?;
    transverse.q = q;
    if polarization == Polarization::Te {
        transverse.detail = format!("TE, transverse block: {}", transverse.detail);
        return Ok(transverse);
    }
    let curl_free = equivalent_1d(scheme, params, 0.0)?;
    let overlap = circle_overlap(scheme, params, q)?;
    let mut v = if transverse.stable && !curl_free.stable {
        StabilityVerdict {
            detail: format!("TM, curl-free block: {}", curl_free.detail),
            q,
            ..curl_free.clone()
        }
    } else {
        StabilityVerdict { detail: format!("TM, transverse block: {}", transverse.detail), ..transverse.clone() }
    };
    v.max_root_modulus = transverse.max_root_modulus.max(curl_free.max_root_modulus);
    if let Some(z) = overlap {
        v.detail.push_str(&format!(
            "; psi0 and phi0 share the unit root {:.6}{:+.6}i",
            z.re, z.im
        ));
    }
    Ok(v)
}

fn circle_overlap(scheme: SchemeId, params: &DimensionlessParams, q: f64) -> Result<Option<Complex64>> {
    let psi = psi0_2d(scheme, params);
    let phi = char_poly_closed(scheme, params, q)?;
    let a = root_profile(&psi, CIRCLE_TOL)?;
    let b = root_profile(&phi, CIRCLE_TOL)?;
    Ok(a
        .on_circle
        .iter()
        .find(|(z, _)| b.on_circle.iter().any(|(w, _)| (z - w).norm() <= 1e-6))
        .map(|(z, _)| *z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn at_q(scheme: SchemeId, p: DimensionlessParams, q: f64) -> StabilityVerdict {
        equivalent_1d(scheme, &p, q).unwrap()
    }

    #[test]
    fn debye_joseph_interior_is_schur() {
        let p = DimensionlessParams::debye(1.0, 0.1, 2.0).unwrap();
        for q in [0.3, 1.0, 2.5, 3.9] {
            let v = at_q(SchemeId::DebyeJoseph, p, q);
            assert!(v.stable);
            assert_eq!(v.argument, Argument::TheoremSchur);
        }
    }

    #[test]
    fn debye_young_unit_delta_splits() {
        let p = DimensionlessParams::debye(1.0, 1.0, 2.0).unwrap();
        for q in [0.5, 2.0, 4.0] {
            let v = at_q(SchemeId::DebyeYoung, p, q);
            assert!(v.stable, "{v:?}");
            assert_eq!(v.argument, Argument::SubPolynomial);
        }
    }

    #[test]
    fn lorentz_young_harmonic_resonance() {
        let p = DimensionlessParams::lorentz(1.0, 0.0, 0.5, 1.0).unwrap();
        let v = at_q(SchemeId::LorentzYoung, p, 1.0);
        assert!(!v.stable);
        assert_eq!(v.argument, Argument::Eigenvectors);
    }

    #[test]
    fn debye_joseph_vacuum_at_grid_limit() {
        let p = DimensionlessParams::debye(1.0, 0.3, 1.0).unwrap();
        let g = amplification_matrix(SchemeId::DebyeJoseph, &p, &Wavenumber::one_d(PI)).unwrap();
        assert!(!gn_bounded(&g, CIRCLE_TOL).unwrap().gn_bounded);
        let v = classify_point(SchemeId::DebyeJoseph, &p, &Wavenumber::one_d(PI)).unwrap();
        assert!(!v.stable);
        assert_eq!(v.argument, Argument::Eigenvectors);
    }

    #[test]
    fn zero_wavenumber_uses_g_form() {
        let p = DimensionlessParams::debye(0.7, 0.3, 5.0).unwrap();
        let v = classify_point(SchemeId::DebyeJoseph, &p, &Wavenumber::one_d(0.0)).unwrap();
        assert!(v.stable);
        assert_eq!(v.argument, Argument::GForm);
    }

    #[test]
    fn near_resonance_is_snapped() {
        let w = 0.5;
        let p = DimensionlessParams::lorentz(1.0, 0.0, w, 1.0).unwrap();
        let qc = 2.0 * w / (1.0 + w);
        let v = at_q(SchemeId::LorentzJoseph, p, qc * (1.0 + 1e-11));
        assert!(!v.stable);
        assert_eq!(v.argument, Argument::Eigenvectors);
        assert!(v.detail.contains("degenerate"));
    }

    #[test]
    fn te_small_q_stable_and_tm_resonance_unstable() {
        let p = DimensionlessParams::debye(0.1, 0.3, 2.0).unwrap();
        let wn = Wavenumber::two_d(0.2, 0.1);
        assert!(classify_point_2d(SchemeId::DebyeJoseph, &p, &wn, Polarization::Te).unwrap().stable);

        let w = 0.6;
        let qc = 2.0 * w / (1.0 + w);
        let xi = 2.0 * (qc / 8.0f64).sqrt().asin();
        let p = DimensionlessParams::lorentz(1.0, 0.0, w, 1.0).unwrap();
        let v = classify_point_2d(SchemeId::LorentzJoseph, &p, &Wavenumber::two_d(xi, xi), Polarization::Tm).unwrap();
        assert!(!v.stable);
        assert!(v.detail.contains("share the unit root"), "{}", v.detail);
    }

    #[test]
    fn tm_debye_young_example() {
        let p = DimensionlessParams::debye(0.5, 0.5, 2.0).unwrap();
        let v = classify_point_2d(SchemeId::DebyeYoung, &p, &Wavenumber::two_d(PI, 0.0), Polarization::Tm).unwrap();
        assert!((v.q - 1.0).abs() < 1e-12);
        assert!(v.stable);
    }

    #[test]
    fn argument_names_round_trip() {
        for a in Argument::ALL {
            assert_eq!(a.name().parse::<Argument>().unwrap(), a);
        }
        assert!(Argument::TheoremSchur.same_family(Argument::TheoremVonNeumann));
        assert!(!Argument::GForm.same_family(Argument::Eigenvectors));
    }
}
