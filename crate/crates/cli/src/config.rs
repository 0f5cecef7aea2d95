//! Run configuration: a flat TOML document, validated per command.

use std::path::PathBuf;
use std::str::FromStr;

use fdtd_stab::analyzer::CIRCLE_TOL;
use fdtd_stab::schemes::{MediumKind, MediumModel, Polarization, SchemeId};
use fdtd_stab::simulator::{GrowthCriteria, GROWTH_FACTOR, MIN_STEPS};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_STEPS: usize = 5000;
/// Long enough to resolve per-step growth near the analyzer's circle
/// tolerance.
pub const VERIFY_STEPS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    Scan,
    Simulate,
    Verify,
    Tables,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Scan => "scan",
            Command::Simulate => "simulate",
            Command::Verify => "verify",
            Command::Tables => "tables",
        }
    }
}

fn default_dim() -> u8 {
    1
}
fn default_samples() -> usize {
    200
}
fn default_seed() -> u64 {
    1
}
fn default_margin() -> f64 {
    1e-3
}
fn default_k_count() -> usize {
    16
}
fn default_xi_count() -> usize {
    33
}
fn default_q_count() -> usize {
    46
}
fn is_default<T: PartialEq>(v: &T, d: fn() -> T) -> bool {
    *v == d()
}

/// Everything a command needs. Physical values are SI: permittivities
/// relative, times in s, frequencies in rad/s, lengths in m.
///
/// Defaults: `dim = 1`, `samples = 200`, `seed = 1`,
/// `margin = 1e-3`, `k_count = 16`, `xi_count = 33`, `q_count = 46`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_str")]
    pub scheme: Option<SchemeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_inf: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_y: Option<f64>,
    #[serde(default = "default_dim", skip_serializing_if = "is_default_dim")]
    pub dim: u8,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_str")]
    pub polarization: Option<Polarization>,
    /// Wavenumber in radians per cell; analyze without it scans all ξ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_y: Option<f64>,
    /// Time steps per run; 5000 by default, 100000 for verify.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Per-step growth above `1 + growth_tol` counts as unstable; 1e-4 by
    /// default, the analyzer's circle tolerance for verify.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default = "default_samples", skip_serializing_if = "is_default_samples")]
    pub samples: usize,
    #[serde(default = "default_seed", skip_serializing_if = "is_default_seed")]
    pub seed: u64,
    /// Half-width of the band around a stability boundary, in `q`, inside
    /// which verify does not count disagreements.
    #[serde(default = "default_margin", skip_serializing_if = "is_default_margin")]
    pub margin: f64,
    /// Also run the simulator in analyze.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empirical: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<f64>,
    #[serde(default = "default_k_count", skip_serializing_if = "is_default_k_count")]
    pub k_count: usize,
    #[serde(default = "default_xi_count", skip_serializing_if = "is_default_xi_count")]
    pub xi_count: usize,
    /// Setting `q_max` switches scan to a sweep over `q` at the given `k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_max: Option<f64>,
    #[serde(default = "default_q_count", skip_serializing_if = "is_default_q_count")]
    pub q_count: usize,
    /// Grid cells per axis for simulate; default is the smallest grid
    /// carrying ξ exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<usize>,
}

fn is_default_dim(v: &u8) -> bool {
    is_default(v, default_dim)
}
fn is_default_samples(v: &usize) -> bool {
    is_default(v, default_samples)
}
fn is_default_seed(v: &u64) -> bool {
    is_default(v, default_seed)
}
fn is_default_margin(v: &f64) -> bool {
    is_default(v, default_margin)
}
fn is_default_k_count(v: &usize) -> bool {
    is_default(v, default_k_count)
}
fn is_default_xi_count(v: &usize) -> bool {
    is_default(v, default_xi_count)
}
fn is_default_q_count(v: &usize) -> bool {
    is_default(v, default_q_count)
}

/// Serde through `Display`/`FromStr` for optional enum-like values.
mod opt_str {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map(Some).map_err(de::Error::custom)
    }
}

/// Parses and validates a TOML document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
    from_table(table)
}

pub fn from_table(table: toml::Table) -> Result<RunConfig, CliError> {
    let cfg: RunConfig = table.try_into().map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn to_toml(cfg: &RunConfig) -> String {
    toml::to_string(cfg).expect("run configurations serialize")
}

fn missing(field: &str, cfg: &RunConfig) -> CliError {
    CliError::Config(format!("missing field `{field}` required by `{}`", cfg.command.name()))
}

fn positive(field: &str, v: Option<f64>) -> Result<(), CliError> {
    match v {
        Some(x) if !(x.is_finite() && x > 0.0) => {
            Err(CliError::Config(format!("`{field}` must be positive and finite, got {x}")))
        }
        _ => Ok(()),
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        toml::Table::from_iter([("command".to_string(), toml::Value::String(command.name().into()))])
            .try_into()
            .expect("a bare command is a valid document")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("eps_inf", self.eps_inf),
            ("eps_s", self.eps_s),
            ("t_r", self.t_r),
            ("omega1", self.omega1),
            ("k", self.k),
            ("h", self.h),
            ("h_x", self.h_x),
            ("h_y", self.h_y),
            ("k_min", self.k_min),
            ("k_max", self.k_max),
            ("margin", Some(self.margin)),
            ("growth_tol", self.growth_tol),
        ] {
            positive(name, v)?;
        }
        if i64::try_from(self.seed).is_err() {
            return Err(CliError::Config(format!("`seed` must be at most {}, got {}", i64::MAX, self.seed)));
        }
        if !matches!(self.dim, 1 | 2) {
            return Err(CliError::Config(format!("`dim` must be 1 or 2, got {}", self.dim)));
        }
        if self.dim == 1 && (self.polarization.is_some() || self.xi_y.is_some() || self.h_y.is_some()) {
            return Err(CliError::Config("`polarization`, `xi_y` and `h_y` need `dim = 2`".into()));
        }
        match self.command {
            Command::Analyze | Command::Scan | Command::Simulate => {
                self.scheme_id()?;
                self.medium()?;
                if self.command != Command::Scan || self.q_max.is_some() {
                    self.k.ok_or_else(|| missing("k", self))?;
                }
                self.steps_xy()?;
                if self.dim == 2 && self.polarization.is_none() {
                    return Err(missing("polarization", self));
                }
            }
            Command::Verify | Command::Tables => {}
        }
        match self.command {
            Command::Simulate => {
                self.xi.ok_or_else(|| missing("xi", self))?;
                if self.dim == 2 {
                    self.xi_y.ok_or_else(|| missing("xi_y", self))?;
                }
            }
            Command::Scan => {
                if self.q_max.is_none() {
                    let (lo, hi) = (self.k_min.ok_or_else(|| missing("k_min", self))?, self.k_max.ok_or_else(|| missing("k_max", self))?);
                    if lo > hi {
                        return Err(CliError::Config("`k_min` must not exceed `k_max`".into()));
                    }
                    if self.k_count == 0 || self.xi_count == 0 {
                        return Err(CliError::Config("`k_count` and `xi_count` must be positive".into()));
                    }
                } else {
                    let lo = self.q_min.unwrap_or(0.0);
                    let hi = self.q_max.unwrap_or(0.0);
                    if !(lo >= 0.0 && hi >= lo && hi.is_finite()) || self.q_count == 0 {
                        return Err(CliError::Config("need 0 <= q_min <= q_max and q_count > 0".into()));
                    }
                }
            }
            Command::Verify if self.samples == 0 => {
                return Err(CliError::Config("`samples` must be positive".into()));
            }
            _ => {}
        }
        if self.steps() < MIN_STEPS {
            return Err(CliError::Config(format!("`steps` must be at least {MIN_STEPS}")));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        self.steps.unwrap_or(match self.command {
            Command::Verify => VERIFY_STEPS,
            _ => DEFAULT_STEPS,
        })
    }

    pub fn growth_criteria(&self) -> GrowthCriteria {
        let tol = self.growth_tol.unwrap_or(match self.command {
            Command::Verify => CIRCLE_TOL,
            _ => GROWTH_FACTOR - 1.0,
        });
        GrowthCriteria { max_factor: 1.0 + tol, ..GrowthCriteria::default() }
    }

    pub fn scheme_id(&self) -> Result<SchemeId, CliError> {
        self.scheme.ok_or_else(|| missing("scheme", self))
    }

    /// The medium for the configured scheme, named field by field.
    pub fn medium(&self) -> Result<MediumModel, CliError> {
        let scheme = self.scheme_id()?;
        let eps_inf = self.eps_inf.ok_or_else(|| missing("eps_inf", self))?;
        let eps_s = self.eps_s.ok_or_else(|| missing("eps_s", self))?;
        if eps_s < eps_inf {
            return Err(CliError::Config(format!(
                "`eps_s` ({eps_s}) must satisfy eps_s >= eps_inf ({eps_inf})"
            )));
        }
        let m = match scheme.medium_kind() {
            MediumKind::Debye => {
                if self.omega1.is_some() || self.nu.is_some() {
                    return Err(CliError::Config(format!("`omega1` and `nu` do not apply to {scheme}")));
                }
                MediumModel::debye(eps_inf, eps_s, self.t_r.ok_or_else(|| missing("t_r", self))?)?
            }
            MediumKind::Lorentz => {
                if self.t_r.is_some() {
                    return Err(CliError::Config(format!("`t_r` does not apply to {scheme}")));
                }
                MediumModel::lorentz(
                    eps_inf,
                    eps_s,
                    self.omega1.ok_or_else(|| missing("omega1", self))?,
                    self.nu.ok_or_else(|| missing("nu", self))?,
                )?
            }
        };
        Ok(m)
    }

    /// `(h_x, h_y)`; `h` stands for both when the axis values are absent.
    pub fn steps_xy(&self) -> Result<(f64, f64), CliError> {
        let h_x = self.h_x.or(self.h).ok_or_else(|| missing("h", self))?;
        let h_y = self.h_y.or(self.h).unwrap_or(h_x);
        Ok((h_x, h_y))
    }

    /// Fills the medium keys from a preset medium.
    pub fn set_medium(&mut self, m: &MediumModel) {
        self.eps_inf = Some(m.eps_inf());
        self.eps_s = Some(m.eps_s());
        match *m {
            MediumModel::Debye { t_r, .. } => self.t_r = Some(t_r),
            MediumModel::Lorentz { omega1, nu, .. } => {
                self.omega1 = Some(omega1);
                self.nu = Some(nu);
            }
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        [Command::Analyze, Command::Scan, Command::Simulate, Command::Verify, Command::Tables]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown command `{s}`")))
    }
}
