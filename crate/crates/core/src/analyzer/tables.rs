use std::f64::consts::PI;

use super::{classify_point, Argument, StabilityVerdict};
use crate::error::Result;
use crate::schemes::{DimensionlessParams, MediumKind, SchemeId, Wavenumber};

/// One regime of a scheme's proof table with the verdicts computed at
/// representative points inside it.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub scheme: SchemeId,
    /// `Some("an-harmonic")` or `Some("harmonic")` for Lorentz schemes.
    pub damping: Option<&'static str>,
    pub q: &'static str,
    pub eps_s: &'static str,
    /// The δ column (Debye–Young) or ω column (Lorentz–Young).
    pub extra: Option<&'static str>,
    pub expected_argument: Argument,
    pub expected_stable: bool,
    pub samples: Vec<RowSample>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RowSample {
    pub params: DimensionlessParams,
    pub q: f64,
    pub verdict: StabilityVerdict,
}

impl TableRow {
    pub fn regime(&self) -> String {
        let mut s = String::new();
        if let Some(d) = self.damping {
            s.push_str(&format!("{d}, "));
        }
        s.push_str(&format!("q {}, eps_s {} eps_inf", self.q, self.eps_s));
        if let Some(x) = self.extra {
            let name = if self.scheme.medium_kind() == MediumKind::Debye { "delta" } else { "omega" };
            s.push_str(&format!(", {name} {x}"));
        }
        s
    }

    /// Every sample has the expected verdict.
    pub fn verdict_matches(&self) -> bool {
        self.samples.iter().all(|s| s.verdict.stable == self.expected_stable)
    }

    /// Every sample's argument agrees up to the Schur/von Neumann distinction.
    pub fn argument_matches(&self) -> bool {
        self.samples.iter().all(|s| s.verdict.argument.same_family(self.expected_argument))
    }

    /// The argument reported at most samples.
    pub fn computed_argument(&self) -> Argument {
        let mut best = (self.expected_argument, 0);
        for a in Argument::ALL {
            let n = self.samples.iter().filter(|s| s.verdict.argument == a).count();
            if n > best.1 {
                best = (a, n);
            }
        }
        best.0
    }

    pub fn computed_stable(&self) -> bool {
        self.samples.iter().all(|s| s.verdict.stable)
    }
}

#[derive(Clone, Copy)]
enum Qs {
    At(&'static [f64]),
    /// The harmonic resonance of the scheme at ε′_s = 1.
    Resonance,
}

#[derive(Clone, Copy)]
enum Omegas {
    At(&'static [f64]),
    /// Fractions of `2/(2ε′_s − 1)`.
    OfBound(&'static [f64]),
}

struct Spec {
    damping: Option<&'static str>,
    q: &'static str,
    eps_s: &'static str,
    extra: Option<&'static str>,
    argument: Argument,
    stable: bool,
    deltas: &'static [f64],
    eps: &'static [f64],
    omegas: Omegas,
    qs: Qs,
}

const EQ: &[f64] = &[1.0];

fn debye(
    q: &'static str,
    eps_s: &'static str,
    extra: Option<&'static str>,
    argument: Argument,
    stable: bool,
    deltas: &'static [f64],
    eps: &'static [f64],
    qs: &'static [f64],
) -> Spec {
    Spec { damping: None, q, eps_s, extra, argument, stable, deltas, eps, omegas: Omegas::At(&[0.0]), qs: Qs::At(qs) }
}

#[allow(clippy::too_many_arguments)]
fn lorentz(
    harmonic: bool,
    q: &'static str,
    eps_s: &'static str,
    extra: Option<&'static str>,
    argument: Argument,
    stable: bool,
    eps: &'static [f64],
    omegas: Omegas,
    qs: Qs,
) -> Spec {
    let (damping, deltas): (_, &'static [f64]) =
        if harmonic { ("harmonic", &[0.0]) } else { ("an-harmonic", &[0.05, 0.5]) };
    Spec { damping: Some(damping), q, eps_s, extra, argument, stable, deltas, eps, omegas, qs }
}

fn specs(scheme: SchemeId) -> Vec<Spec> {
    use Argument::*;
    match scheme {
        SchemeId::DebyeJoseph => {
            let d: &[f64] = &[0.1, 0.3, 1.7];
            let gt: &[f64] = &[2.0, 45.0];
            vec![
                debye("]0,4[", ">", None, TheoremSchur, true, d, gt, &[0.5, 1.3, 3.9]),
                debye("]0,4[", "=", None, TheoremVonNeumann, true, d, EQ, &[0.5, 1.3, 3.9]),
                debye("0", ">=", None, GForm, true, d, &[1.0, 2.0, 45.0], &[0.0]),
                debye("4", ">", None, TheoremVonNeumann, true, d, gt, &[4.0]),
                debye("4", "=", None, Eigenvectors, false, d, EQ, &[4.0]),
            ]
        }
        SchemeId::DebyeYoung => {
            // δ = 1 has its own row.
            let d: &[f64] = &[0.1, 0.5, 3.0];
            let gt: &[f64] = &[1.16 / 1.01, 2.0, 45.0];
            vec![
                debye("]0,4]", ">", Some("]0,1["), TheoremSchur, true, &[0.1, 0.5, 0.9], gt, &[0.5, 1.3, 3.9, 4.0]),
                debye("]0,4[", "=", Some(">0"), TheoremVonNeumann, true, d, EQ, &[0.5, 1.3, 3.9]),
                debye("0", ">=", Some(">0"), GForm, true, d, &[1.0, 2.0, 45.0], &[0.0]),
                debye("]0,4]", ">", Some("1"), SubPolynomial, true, &[1.0], gt, &[0.5, 2.0, 4.0]),
                debye("4", "=", Some(">0"), Eigenvectors, false, d, EQ, &[4.0]),
            ]
        }
        SchemeId::LorentzJoseph => {
            let gt: &[f64] = &[2.25, 10.0];
            let ge: &[f64] = &[1.0, 2.25, 10.0];
            let w = Omegas::At(&[0.1, 1.0, 3.0]);
            vec![
                lorentz(false, "]0,2[", ">", None, TheoremSchur, true, gt, w, Qs::At(&[0.5, 1.5, 1.99])),
                lorentz(false, "]0,2]", "=", None, TheoremVonNeumann, true, EQ, w, Qs::At(&[0.5, 1.5, 1.99])),
                lorentz(false, "0", ">=", None, GForm, true, ge, w, Qs::At(&[0.0])),
                lorentz(false, "2", ">=", None, SubPolynomial, true, ge, w, Qs::At(&[2.0])),
                lorentz(true, "]0,2[", ">", None, TheoremVonNeumann, true, gt, w, Qs::At(&[0.5, 1.5, 1.99])),
                lorentz(true, "]0,2]", "=", None, SubPolynomial, false, EQ, Omegas::At(&[0.1, 0.5, 1.0, 3.0]), Qs::Resonance),
                lorentz(true, "0", ">=", None, GForm, true, ge, w, Qs::At(&[0.0])),
                lorentz(true, "2", ">=", None, SubPolynomial, true, ge, w, Qs::At(&[2.0])),
            ]
        }
        SchemeId::LorentzKashiwa => {
            let gt: &[f64] = &[2.25, 10.0];
            let ge: &[f64] = &[1.0, 2.25, 10.0];
            let w = Omegas::At(&[0.1, 0.5, 2.0]);
            vec![
                lorentz(false, "]0,4[", ">", None, TheoremSchur, true, gt, w, Qs::At(&[0.5, 1.3, 3.9])),
                lorentz(false, "]0,4[", "=", None, TheoremVonNeumann, true, EQ, w, Qs::At(&[0.5, 1.3, 3.9])),
                lorentz(false, "0", ">=", None, GForm, true, ge, w, Qs::At(&[0.0])),
                lorentz(false, "4", ">=", None, Eigenvectors, false, ge, w, Qs::At(&[4.0])),
                lorentz(true, "]0,4[", ">=", None, TheoremVonNeumann, true, ge, w, Qs::At(&[0.5, 1.5, 3.0, 3.9])),
                lorentz(true, "0", ">=", None, GForm, true, ge, w, Qs::At(&[0.0])),
                lorentz(true, "4", ">=", None, Eigenvectors, false, ge, w, Qs::At(&[4.0])),
            ]
        }
        SchemeId::LorentzYoung => {
            // ε′_s = 1.5 and 2.5 put the bound 2/(2ε′_s − 1) at 1 and 0.5 exactly.
            let gt: &[f64] = &[1.5, 2.5];
            let below = Omegas::OfBound(&[0.2, 0.9, 1.0]);
            let strictly_below = Omegas::OfBound(&[0.2, 0.9]);
            let at = Omegas::OfBound(&[1.0]);
            let two = Omegas::At(&[2.0]);
            let q_open = Qs::At(&[0.5, 1.5, 1.99]);
            let q_closed = Qs::At(&[0.5, 1.5, 2.0]);
            let q2 = Qs::At(&[2.0]);
            let q0 = Qs::At(&[0.0]);
            let b = Some("<= 2/(2eps'-1)");
            let lt_b = Some("< 2/(2eps'-1)");
            let eq_b = Some("= 2/(2eps'-1)");
            vec![
                lorentz(false, "]0,2[", ">", b, TheoremSchur, true, gt, below, q_open),
                lorentz(false, "2", ">", lt_b, TheoremSchur, true, gt, strictly_below, q2),
                lorentz(false, "]0,2]", "=", Some("< 2"), TheoremVonNeumann, true, EQ, Omegas::At(&[0.1, 1.0, 1.9]), q_closed),
                lorentz(false, "]0,2]", "=", Some("= 2"), SubPolynomial, true, EQ, two, q_closed),
                lorentz(false, "2", ">", eq_b, TheoremVonNeumann, true, gt, at, q2),
                lorentz(false, "0", ">=", b, GForm, true, &[1.0, 1.5, 2.5], Omegas::OfBound(&[0.5, 1.0]), q0),
                lorentz(true, "]0,2[", ">", b, TheoremVonNeumann, true, gt, below, q_open),
                lorentz(true, "2", ">", lt_b, TheoremVonNeumann, true, gt, strictly_below, q2),
                lorentz(true, "]0,2]", "=", Some("< 2"), Eigenvectors, false, EQ, Omegas::At(&[0.1, 0.5, 0.9]), Qs::Resonance),
                lorentz(true, "]0,2]", "=", Some("= 2"), TheoremVonNeumann, true, EQ, two, Qs::At(&[0.5, 1.0, 2.0])),
                lorentz(true, "2", ">", eq_b, Eigenvectors, false, gt, at, q2),
                lorentz(true, "0", ">", b, GForm, true, gt, Omegas::OfBound(&[0.5, 1.0]), q0),
                lorentz(true, "0", "=", lt_b, GForm, true, EQ, Omegas::At(&[0.5, 1.0, 1.9]), q0),
                lorentz(true, "0", "=", eq_b, Eigenvectors, false, EQ, two, q0),
            ]
        }
    }
}

fn resonance(scheme: SchemeId, omega: f64) -> f64 {
    match scheme {
        SchemeId::LorentzJoseph => 2.0 * omega / (1.0 + omega),
        SchemeId::LorentzKashiwa => 4.0 * omega / (2.0 + omega),
        _ => 2.0 * omega,
    }
}

/// Evaluates every regime of the scheme's proof table at representative
/// points: `ξ = π` with `λ = √q / 2`, or `ξ = 0` for `q = 0`.
pub fn reproduce_argument_table(scheme: SchemeId) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for spec in specs(scheme) {
        let mut samples = Vec::new();
        for &delta in spec.deltas {
            for &eps in spec.eps {
                let omegas: Vec<f64> = match spec.omegas {
                    Omegas::At(v) => v.to_vec(),
                    Omegas::OfBound(f) => f.iter().map(|x| x * 2.0 / (2.0 * eps - 1.0)).collect(),
                };
                for &omega in &omegas {
                    let qs: Vec<f64> = match spec.qs {
                        Qs::At(v) => v.to_vec(),
                        Qs::Resonance => vec![resonance(scheme, omega)],
                    };
                    for &q in &qs {
                        let (lambda, xi) = if q == 0.0 { (0.5, 0.0) } else { (q.sqrt() / 2.0, PI) };
                        let params = match scheme.medium_kind() {
                            MediumKind::Debye => DimensionlessParams::debye(lambda, delta, eps)?,
                            MediumKind::Lorentz => DimensionlessParams::lorentz(lambda, delta, omega, eps)?,
                        };
                        let verdict = classify_point(scheme, &params, &Wavenumber::one_d(xi))?;
                        samples.push(RowSample { params, q, verdict });
                    }
                }
            }
        }
        rows.push(TableRow {
            scheme,
            damping: spec.damping,
            q: spec.q,
            eps_s: spec.eps_s,
            extra: spec.extra,
            expected_argument: spec.argument,
            expected_stable: spec.stable,
            samples,
        });
    }
    Ok(rows)
}
