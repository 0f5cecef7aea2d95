use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyloc::cluster_points;
use crate::schemes::AmpMatrix;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-8;

/// Computed eigenvalues closer than this are one eigenvalue.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct UnitEigenvalue {
    pub value: Complex64,
    pub algebraic: usize,
    pub geometric: usize,
}

impl UnitEigenvalue {
    pub fn is_defective(&self) -> bool {
        self.geometric < self.algebraic
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundednessReport {
    pub unit_eigenvalues: Vec<UnitEigenvalue>,
    /// Eigenvalues with modulus above `1 + tol`.
    pub outside: Vec<Complex64>,
    pub gn_bounded: bool,
}

pub fn eigenvalues(g: &AmpMatrix) -> Result<Vec<Complex64>> {
    let schur = g
        .entries
        .clone()
        .try_schur(1e-15, 10_000)
        .ok_or_else(|| Error::NumericalFailure("eigen-solve of the amplification matrix did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Decides whether the powers of `G` stay bounded: no eigenvalue outside the
/// circle and every unit-modulus eigenvalue non-defective.
pub fn gn_bounded(g: &AmpMatrix, tol: f64) -> Result<BoundednessReport> {
    let eigs = eigenvalues(g)?;
    let outside: Vec<Complex64> = eigs.iter().copied().filter(|e| e.norm() > 1.0 + tol).collect();
    let mut unit_eigenvalues = Vec::new();
    for (mu, algebraic) in cluster_points(&eigs, EIGEN_CLUSTER_TOL) {
        if (mu.norm() - 1.0).abs() > tol {
            continue;
        }
        let geometric = if algebraic == 1 { 1 } else { null_dim(g, mu)?.min(algebraic) };
        unit_eigenvalues.push(UnitEigenvalue { value: mu, algebraic, geometric });
    }
    unit_eigenvalues.sort_by(|a, b| a.value.arg().total_cmp(&b.value.arg()));
    let gn_bounded = outside.is_empty() && unit_eigenvalues.iter().all(|u| !u.is_defective());
    Ok(BoundednessReport { unit_eigenvalues, outside, gn_bounded })
}

fn null_dim(g: &AmpMatrix, mu: Complex64) -> Result<usize> {
    let n = g.dim();
    let mut m = g.entries.clone();
    for i in 0..n {
        m[(i, i)] -= mu;
    }
    let sv = m
        .try_svd(false, false, 1e-15, 10_000)
        .ok_or_else(|| Error::NumericalFailure("singular value decomposition did not converge".into()))?
        .singular_values;
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return Ok(n);
    }
    Ok(sv.iter().filter(|s| **s <= RANK_TOL * largest).count())
}
