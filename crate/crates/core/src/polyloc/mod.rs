//! Root location of complex polynomials relative to the unit circle.
//!
//! The decision procedures follow the classical reduction
//! `φ_{m+1}(z) = (φ_m*(0) φ_m(z) − φ_m(0) φ_m*(z)) / z`, which lowers the degree
//! by at least one at every level. [`root_profile`] is an independent oracle
//! built on companion-matrix eigenvalues.
//!
//! Floating-point policy: every level is rescaled so its largest coefficient
//! has unit modulus. The comparison `|φ(0)|` against `|φ*(0)|` is made on
//! squared moduli, and values closer than `BOUNDARY_TOL · max(1, |φ*(0)|²)`
//! count as equal. A reduced polynomial whose coefficients all fall below
//! `ZERO_TOL` is the zero polynomial. Both thresholds widen when the rounding
//! carried by a level exceeds them, which happens after near cancellations.
//! That rounding is measured by running the reduction in lockstep on copies
//! of the input perturbed at the level of a few ulps.

mod poly;
mod roots;

pub mod exact;

use num_complex::Complex64;

use crate::error::{invalid, Result};

pub use poly::{Polynomial, TRIM_TOL};
pub use roots::{cluster_points, polynomial_roots, root_profile, RootProfile, CLUSTER_TOL};

/// Relative tolerance on squared moduli for the boundary comparison.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Coefficients of a reduced (normalized) polynomial at or below this size
/// are treated as zero.
pub const ZERO_TOL: f64 = 1e-12;

/// Multiplier applied to the measured rounding spread before it is used as a
/// tolerance.
const SAFETY: f64 = 16.0;

/// How `|φ_m(0)|²` compares with `|φ_m*(0)|²` at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    /// Equal within the boundary tolerance.
    Equal,
    Greater,
}

/// One level of the reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceLevel {
    pub degree: usize,
    /// `|φ_m(0)|²` after normalization.
    pub head_sq: f64,
    /// `|φ_m*(0)|²` after normalization.
    pub conj_head_sq: f64,
    /// Width of the band treated as equality at this level.
    pub tolerance: f64,
    pub comparison: Comparison,
}

/// Why a recursion stopped with a negative answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    /// `|φ_m(0)| > |φ_m*(0)|` at the given level.
    HeadTooLarge { level: usize },
    /// `|φ_m(0)| = |φ_m*(0)|` where strict inequality is required.
    BoundaryEquality { level: usize },
    /// The reduced polynomial vanished and the derivative of the level
    /// polynomial is not Schur.
    DerivativeNotSchur { level: usize },
    /// The reduced polynomial lost more than one degree.
    DegreeDrop { level: usize },
}

/// Record of a reduction run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RecursionTrace {
    pub levels: Vec<TraceLevel>,
    pub failure: Option<Failure>,
    /// Level at which the reduced polynomial vanished and the derivative test
    /// took over.
    pub derivative_branch_at: Option<usize>,
    /// Trace of the derivative Schur test, when it ran.
    pub derivative_trace: Option<Box<RecursionTrace>>,
}

impl RecursionTrace {
    /// True when some level was decided by the tolerance band rather than a
    /// clear inequality.
    pub fn touched_boundary(&self) -> bool {
        self.levels.iter().any(|l| l.comparison == Comparison::Equal)
            || self
                .derivative_trace
                .as_ref()
                .is_some_and(|t| t.touched_boundary())
    }
}

/// Outcome of a decision procedure together with its trace.
#[derive(Clone, Debug, PartialEq)]
pub struct Decision {
    pub holds: bool,
    pub trace: RecursionTrace,
}

/// The conjugate polynomial `c_p* + c_{p−1}* z + ⋯ + c₀* z^p`.
pub fn conjugate_poly(p: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() {
        return Err(invalid("conjugate of the zero polynomial"));
    }
    Ok(Polynomial::from_raw(
        p.coeffs().iter().rev().map(|c| c.conj()).collect(),
    ))
}

fn compare(head_sq: f64, conj_head_sq: f64, tol: f64) -> Comparison {
    if head_sq < conj_head_sq - tol {
        Comparison::Less
    } else if head_sq > conj_head_sq + tol {
        Comparison::Greater
    } else {
        Comparison::Equal
    }
}

/// Relative size of the coefficient perturbations carried by the shadow
/// copies.
const SHADOW_PERTURBATION: f64 = 8.0 * f64::EPSILON;

/// A normalized level polynomial together with shadow copies that started
/// from coefficient-wise perturbed inputs. The spread between the main chain
/// and its shadows measures how much rounding the current level carries.
struct Level {
    poly: Polynomial,
    shadows: Vec<Polynomial>,
}

fn perturbed(p: &Polynomial, pattern: usize) -> Polynomial {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let sign = if (i * 7 + pattern * 3) % 5 < 2 { -1.0 } else { 1.0 };
            let rot = if (i + pattern).is_multiple_of(2) { 1.0 } else { -1.0 };
            c * Complex64::new(1.0 + sign * SHADOW_PERTURBATION, rot * SHADOW_PERTURBATION)
        })
        .collect();
    Polynomial::from_raw(coeffs)
}

fn reduction_numerator(c: &[Complex64]) -> Vec<Complex64> {
    let deg = c.len() - 1;
    let head = c[0];
    let conj_head = c[deg].conj();
    // Coefficient i of the numerator is conj(c_p) c_i − c_0 conj(c_{p−i});
    // the constant term cancels identically.
    (1..=deg)
        .map(|i| conj_head * c[i] - head * c[deg - i].conj())
        .collect()
}

fn gap(p: &Polynomial) -> f64 {
    let c = p.coeffs();
    c[c.len() - 1].norm_sqr() - c[0].norm_sqr()
}

impl Level {
    fn start(p: &Polynomial) -> Self {
        let poly = p.normalized();
        let shadows = (0..2).map(|k| perturbed(&poly, k).normalized()).collect();
        Self { poly, shadows }
    }

    fn info(&self) -> TraceLevel {
        let c = self.poly.coeffs();
        let head_sq = c[0].norm_sqr();
        let conj_head_sq = c[c.len() - 1].norm_sqr();
        let main_gap = conj_head_sq - head_sq;
        let spread = self
            .shadows
            .iter()
            .filter(|s| s.coeffs().len() == c.len())
            .map(|s| (gap(s) - main_gap).abs())
            .fold(0.0, f64::max);
        let tolerance = (BOUNDARY_TOL * conj_head_sq.max(1.0)).max(SAFETY * spread);
        TraceLevel {
            degree: c.len() - 1,
            head_sq,
            conj_head_sq,
            tolerance,
            comparison: compare(head_sq, conj_head_sq, tolerance),
        }
    }

    /// Reduces the level polynomial. Trailing coefficients that do not stand
    /// out from the shadow spread (or `ZERO_TOL`) are dropped and the result
    /// is renormalized.
    fn reduce(&self) -> Level {
        let mut out = reduction_numerator(self.poly.coeffs());
        let shadow_out: Vec<Vec<Complex64>> = self
            .shadows
            .iter()
            .filter(|s| s.coeffs().len() == self.poly.coeffs().len())
            .map(|s| reduction_numerator(s.coeffs()))
            .collect();
        let spread = shadow_out
            .iter()
            .flat_map(|s| s.iter().zip(&out).map(|(a, b)| (a - b).norm()))
            .fold(0.0, f64::max);
        let cutoff = ZERO_TOL.max(SAFETY * spread);
        while out.last().is_some_and(|v| v.norm() <= cutoff) {
            out.pop();
        }
        let len = out.len();
        let poly = Polynomial::from_raw(out).normalized();
        let shadows = shadow_out
            .into_iter()
            .map(|mut s| {
                s.truncate(len);
                Polynomial::from_raw(s).normalized()
            })
            .collect();
        Level { poly, shadows }
    }

    fn derivative(&self) -> Level {
        Level {
            poly: self.poly.derivative().normalized(),
            shadows: self
                .shadows
                .iter()
                .map(|s| s.derivative().normalized())
                .collect(),
        }
    }
}

/// One step of the reduction. The input is rescaled to unit maximum
/// coefficient first, so the result is determined up to a positive factor.
pub fn reduce_step(p: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() {
        return Err(invalid("reduction of the zero polynomial"));
    }
    if p.degree() == Some(0) {
        return Ok(Polynomial::zero());
    }
    Ok(Level::start(p).reduce().poly)
}

/// Decides whether every root lies strictly inside the unit circle.
pub fn is_schur(p: &Polynomial) -> Result<Decision> {
    if p.is_zero() {
        return Err(invalid("Schur test on the zero polynomial"));
    }
    Ok(schur_inner(Level::start(p)))
}

fn schur_inner(mut cur: Level) -> Decision {
    let mut trace = RecursionTrace::default();
    let mut level = 0;
    loop {
        if cur.poly.degree() == Some(0) {
            return Decision { holds: true, trace };
        }
        let info = cur.info();
        let cmp = info.comparison;
        let deg = info.degree;
        trace.levels.push(info);
        match cmp {
            Comparison::Greater => {
                trace.failure = Some(Failure::HeadTooLarge { level });
                return Decision { holds: false, trace };
            }
            Comparison::Equal => {
                trace.failure = Some(Failure::BoundaryEquality { level });
                return Decision { holds: false, trace };
            }
            Comparison::Less => {}
        }
        let next = cur.reduce();
        if next.poly.degree() != Some(deg - 1) {
            trace.failure = Some(Failure::DegreeDrop { level });
            return Decision { holds: false, trace };
        }
        cur = next;
        level += 1;
    }
}

/// Decides whether every root lies in the closed unit disk with the roots on
/// the circle simple.
///
/// A level with `|φ_m(0)| = |φ_m*(0)|` whose reduction does not vanish is
/// rejected: such a polynomial has a root pair `r, 1/r̄` off the circle.
pub fn is_simple_von_neumann(p: &Polynomial) -> Result<Decision> {
    if p.is_zero() {
        return Err(invalid("von Neumann test on the zero polynomial"));
    }
    let mut trace = RecursionTrace::default();
    let mut cur = Level::start(p);
    let mut level = 0;
    loop {
        if cur.poly.degree() == Some(0) {
            return Ok(Decision { holds: true, trace });
        }
        let info = cur.info();
        let cmp = info.comparison;
        trace.levels.push(info);
        if cmp == Comparison::Greater {
            trace.failure = Some(Failure::HeadTooLarge { level });
            return Ok(Decision { holds: false, trace });
        }
        let next = cur.reduce();
        if next.poly.is_zero() {
            trace.derivative_branch_at = Some(level);
            let sub = schur_inner(cur.derivative());
            let holds = sub.holds;
            trace.derivative_trace = Some(Box::new(sub.trace));
            if !holds {
                trace.failure = Some(Failure::DerivativeNotSchur { level });
            }
            return Ok(Decision { holds, trace });
        }
        if cmp == Comparison::Equal {
            trace.failure = Some(Failure::BoundaryEquality { level });
            return Ok(Decision { holds: false, trace });
        }
        cur = next;
        level += 1;
    }
}
