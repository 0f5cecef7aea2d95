//! Scheme definitions: media, dimensionless parameters, amplification
//! matrices and characteristic polynomials for the five dispersive Yee
//! schemes.

mod closed;
mod matrix;

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

pub use closed::{char_poly_2d, char_poly_closed, closed_coeffs, psi0_2d, psi0_coeffs, Symbols};
pub use matrix::{amplification_matrix, char_poly_from_matrix, AmpMatrix};

/// Vacuum permittivity in F/m.
pub const EPS0: f64 = 8.8541878128e-12;
/// Vacuum permeability in H/m.
pub const MU0: f64 = 1.25663706212e-6;

/// Infinite-frequency light speed `1/√(ε₀ ε_∞ μ₀)` in m/s.
pub fn light_speed(eps_inf: f64) -> f64 {
    1.0 / (EPS0 * eps_inf * MU0).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MediumKind {
    Debye,
    Lorentz,
}

impl fmt::Display for MediumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MediumKind::Debye => "Debye",
            MediumKind::Lorentz => "Lorentz",
        })
    }
}

/// Physical description of a dispersive medium. Permittivities are relative,
/// times in seconds, frequencies in rad/s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MediumModel {
    Debye { eps_inf: f64, eps_s: f64, t_r: f64 },
    Lorentz { eps_inf: f64, eps_s: f64, omega1: f64, nu: f64 },
}

impl MediumModel {
    pub fn debye(eps_inf: f64, eps_s: f64, t_r: f64) -> Result<Self> {
        let m = MediumModel::Debye { eps_inf, eps_s, t_r };
        m.validate()?;
        Ok(m)
    }

    pub fn lorentz(eps_inf: f64, eps_s: f64, omega1: f64, nu: f64) -> Result<Self> {
        let m = MediumModel::Lorentz { eps_inf, eps_s, omega1, nu };
        m.validate()?;
        Ok(m)
    }

    /// Water: ε_∞ = 1.8, ε_s = 81, t_r = 9.4 ps.
    pub fn water() -> Self {
        MediumModel::Debye { eps_inf: 1.8, eps_s: 81.0, t_r: 9.4e-12 }
    }

    /// A low-contrast foam: ε_∞ = 1.01, ε_s = 1.16, t_r = 649.7 ps.
    pub fn foam() -> Self {
        MediumModel::Debye { eps_inf: 1.01, eps_s: 1.16, t_r: 6.497e-10 }
    }

    /// Optical-frequency Lorentz material: ε_∞ = 1, ε_s = 2.25,
    /// ω₁ = 4·10¹⁶ rad/s, ν = 0.56·10¹⁶ rad/s.
    pub fn material_a() -> Self {
        MediumModel::Lorentz { eps_inf: 1.0, eps_s: 2.25, omega1: 4e16, nu: 0.56e16 }
    }

    /// Microwave Lorentz material: ε_∞ = 1.5, ε_s = 3, ω₁ = 2π·50 GHz,
    /// ν = 10¹⁰ rad/s.
    pub fn material_b() -> Self {
        MediumModel::Lorentz {
            eps_inf: 1.5,
            eps_s: 3.0,
            omega1: 2.0 * std::f64::consts::PI * 5e10,
            nu: 1e10,
        }
    }

    pub fn kind(&self) -> MediumKind {
        match self {
            MediumModel::Debye { .. } => MediumKind::Debye,
            MediumModel::Lorentz { .. } => MediumKind::Lorentz,
        }
    }

    pub fn eps_inf(&self) -> f64 {
        match *self {
            MediumModel::Debye { eps_inf, .. } | MediumModel::Lorentz { eps_inf, .. } => eps_inf,
        }
    }

    pub fn eps_s(&self) -> f64 {
        match *self {
            MediumModel::Debye { eps_s, .. } | MediumModel::Lorentz { eps_s, .. } => eps_s,
        }
    }

    /// `t_r` for Debye media, `ω₁` for Lorentz media.
    pub fn rate_parameter(&self) -> f64 {
        match *self {
            MediumModel::Debye { t_r, .. } => t_r,
            MediumModel::Lorentz { omega1, .. } => omega1,
        }
    }

    /// Damping `ν`; zero for Debye media.
    pub fn nu(&self) -> f64 {
        match *self {
            MediumModel::Debye { .. } => 0.0,
            MediumModel::Lorentz { nu, .. } => nu,
        }
    }

    pub fn light_speed(&self) -> f64 {
        light_speed(self.eps_inf())
    }

    /// The same medium with `ε_s` replaced.
    pub fn with_eps_s(&self, eps_s: f64) -> Self {
        let mut m = *self;
        match &mut m {
            MediumModel::Debye { eps_s: e, .. } | MediumModel::Lorentz { eps_s: e, .. } => *e = eps_s,
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(invalid(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("eps_inf", self.eps_inf())?;
        positive("eps_s", self.eps_s())?;
        if self.eps_s() < self.eps_inf() {
            return Err(invalid(format!(
                "eps_s ({}) must not be smaller than eps_inf ({})",
                self.eps_s(),
                self.eps_inf()
            )));
        }
        match *self {
            MediumModel::Debye { t_r, .. } => positive("t_r", t_r),
            MediumModel::Lorentz { omega1, nu, .. } => {
                positive("omega1", omega1)?;
                if nu.is_finite() && nu >= 0.0 {
                    Ok(())
                } else {
                    Err(invalid(format!("nu must be non-negative and finite, got {nu}")))
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    DebyeJoseph,
    DebyeYoung,
    LorentzJoseph,
    LorentzKashiwa,
    LorentzYoung,
}

impl SchemeId {
    pub const ALL: [SchemeId; 5] = [
        SchemeId::DebyeJoseph,
        SchemeId::DebyeYoung,
        SchemeId::LorentzJoseph,
        SchemeId::LorentzKashiwa,
        SchemeId::LorentzYoung,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::DebyeJoseph => "debye-joseph",
            SchemeId::DebyeYoung => "debye-young",
            SchemeId::LorentzJoseph => "lorentz-joseph",
            SchemeId::LorentzKashiwa => "lorentz-kashiwa",
            SchemeId::LorentzYoung => "lorentz-young",
        }
    }

    pub fn medium_kind(self) -> MediumKind {
        match self {
            SchemeId::DebyeJoseph | SchemeId::DebyeYoung => MediumKind::Debye,
            _ => MediumKind::Lorentz,
        }
    }

    /// Size of the 1D state vector.
    pub fn state_len(self) -> usize {
        match self.medium_kind() {
            MediumKind::Debye => 3,
            MediumKind::Lorentz => 4,
        }
    }

    /// Names of the 1D state components in matrix order.
    pub fn state_labels(self) -> &'static [&'static str] {
        match self {
            SchemeId::DebyeJoseph => &["cB", "E", "D"],
            SchemeId::DebyeYoung => &["cB", "E", "P"],
            SchemeId::LorentzJoseph => &["cB", "E", "E_prev", "D"],
            SchemeId::LorentzKashiwa | SchemeId::LorentzYoung => &["cB", "E", "P", "kJ"],
        }
    }

    pub fn check_medium(self, medium: &MediumModel) -> Result<()> {
        if medium.kind() == self.medium_kind() {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                scheme: self.name(),
                expected: match self.medium_kind() {
                    MediumKind::Debye => "Debye",
                    MediumKind::Lorentz => "Lorentz",
                },
            })
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                invalid(format!(
                    "unknown scheme '{s}' (expected one of debye-joseph, debye-young, \
                     lorentz-joseph, lorentz-kashiwa, lorentz-young)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarization {
    Te,
    Tm,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::Te => "te",
            Polarization::Tm => "tm",
        })
    }
}

impl FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "te" => Ok(Polarization::Te),
            "tm" => Ok(Polarization::Tm),
            _ => Err(invalid(format!("unknown polarization '{s}' (expected te or tm)"))),
        }
    }
}

/// Dimensionless parameters of a scheme at one `(k, h)` pair.
///
/// `lambda` is the CFL number `c_∞ k / h`; `delta` the normalized time step
/// (`k/(2 t_r)` for Debye media, `ν k / 2` for Lorentz media); `omega` the
/// normalized squared frequency `ω₁² k² / 2` (zero for Debye media);
/// `eps_s_prime = ε_s / ε_∞` and `alpha = eps_s_prime − 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DimensionlessParams {
    pub lambda: f64,
    pub delta: f64,
    pub omega: f64,
    pub eps_s_prime: f64,
    pub alpha: f64,
}

impl DimensionlessParams {
    pub fn debye(lambda: f64, delta: f64, eps_s_prime: f64) -> Result<Self> {
        let p = Self { lambda, delta, omega: 0.0, eps_s_prime, alpha: eps_s_prime - 1.0 };
        p.check(MediumKind::Debye)?;
        Ok(p)
    }

    pub fn lorentz(lambda: f64, delta: f64, omega: f64, eps_s_prime: f64) -> Result<Self> {
        let p = Self { lambda, delta, omega, eps_s_prime, alpha: eps_s_prime - 1.0 };
        p.check(MediumKind::Lorentz)?;
        Ok(p)
    }

    /// `1 + δ + ω ε′_s / 2`, the leading coefficient of the Kashiwa scheme.
    pub fn big_delta(&self) -> f64 {
        1.0 + self.delta + 0.5 * self.omega * self.eps_s_prime
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self { lambda, ..*self }
    }

    fn check(&self, kind: MediumKind) -> Result<()> {
        let all_finite = [self.lambda, self.delta, self.omega, self.eps_s_prime]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(invalid("dimensionless parameters must be finite"));
        }
        if self.lambda <= 0.0 {
            return Err(invalid(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.eps_s_prime < 1.0 {
            return Err(invalid(format!(
                "eps_s_prime must be at least 1, got {}",
                self.eps_s_prime
            )));
        }
        match kind {
            MediumKind::Debye if self.delta <= 0.0 => {
                Err(invalid(format!("delta must be positive for Debye media, got {}", self.delta)))
            }
            MediumKind::Lorentz if self.delta < 0.0 => {
                Err(invalid(format!("delta must be non-negative, got {}", self.delta)))
            }
            MediumKind::Lorentz if self.omega <= 0.0 => {
                Err(invalid(format!("omega must be positive, got {}", self.omega)))
            }
            _ => Ok(()),
        }
    }
}

/// Maps a medium and a time/space step pair to dimensionless form.
pub fn dimensionless_params(medium: &MediumModel, k: f64, h: f64) -> Result<DimensionlessParams> {
    if !(k.is_finite() && k > 0.0) {
        return Err(invalid(format!("time step k must be positive and finite, got {k}")));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(invalid(format!("space step h must be positive and finite, got {h}")));
    }
    medium.validate()?;
    let lambda = medium.light_speed() * k / h;
    let eps_s_prime = medium.eps_s() / medium.eps_inf();
    match *medium {
        MediumModel::Debye { t_r, .. } => DimensionlessParams::debye(lambda, k / (2.0 * t_r), eps_s_prime),
        MediumModel::Lorentz { omega1, nu, .. } => DimensionlessParams::lorentz(
            lambda,
            0.5 * nu * k,
            0.5 * omega1 * omega1 * k * k,
            eps_s_prime,
        ),
    }
}

/// Spatial frequency of a Fourier mode, in radians per cell.
///
/// In 2D, `aspect = h_x / h_y` so that the CFL number along `y` is
/// `λ · aspect` when `λ` is taken along `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wavenumber {
    pub xi_x: f64,
    pub xi_y: Option<f64>,
    pub aspect: f64,
}

impl Wavenumber {
    pub fn one_d(xi: f64) -> Self {
        Self { xi_x: xi, xi_y: None, aspect: 1.0 }
    }

    pub fn two_d(xi_x: f64, xi_y: f64) -> Self {
        Self { xi_x, xi_y: Some(xi_y), aspect: 1.0 }
    }

    pub fn two_d_steps(xi_x: f64, xi_y: f64, h_x: f64, h_y: f64) -> Self {
        Self { xi_x, xi_y: Some(xi_y), aspect: h_x / h_y }
    }

    pub fn is_2d(&self) -> bool {
        self.xi_y.is_some()
    }
}

/// `4 λ² sin²(ξ/2)`.
pub fn q_of(lambda: f64, xi: f64) -> f64 {
    let s = (0.5 * xi).sin();
    4.0 * lambda * lambda * s * s
}

/// The Courant quantity `q`: `4λ² sin²(ξ/2)` in 1D and `q_x + q_y` in 2D.
pub fn courant_q(params: &DimensionlessParams, wn: &Wavenumber) -> f64 {
    let qx = q_of(params.lambda, wn.xi_x);
    match wn.xi_y {
        None => qx,
        Some(xi_y) => qx + q_of(params.lambda * wn.aspect, xi_y),
    }
}
