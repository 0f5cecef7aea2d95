//! Exact rational evaluation of the reduction for real-coefficient
//! polynomials.
//!
//! Used as a reference for the floating-point path at parameter values that
//! sit exactly on degeneracies of the recursion.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};

use crate::error::{invalid, Result};

/// Real polynomial with exact rational coefficients in ascending powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Converts each double exactly. Fails on non-finite input.
    pub fn from_f64(coeffs: &[f64]) -> Result<Self> {
        coeffs
            .iter()
            .map(|&c| BigRational::from_f64(c).ok_or_else(|| invalid("non-finite coefficient")))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn from_ratios(pairs: &[(i64, i64)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// `(φ*(0) φ(z) − φ(0) φ*(z)) / z` computed exactly.
pub fn reduce_step(p: &RationalPoly) -> Result<RationalPoly> {
    let c = p.coeffs();
    if c.is_empty() {
        return Err(invalid("reduction of the zero polynomial"));
    }
    let deg = c.len() - 1;
    Ok(RationalPoly::new(
        (1..=deg)
            .map(|i| &c[deg] * &c[i] - &c[0] * &c[deg - i])
            .collect(),
    ))
}

fn compare_heads(c: &[BigRational]) -> Ordering {
    c[0].abs().cmp(&c[c.len() - 1].abs())
}

/// Exact Schur test: all roots strictly inside the unit circle.
pub fn is_schur(p: &RationalPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(invalid("Schur test on the zero polynomial"));
    }
    let mut cur = p.clone();
    loop {
        let deg = cur.degree().unwrap_or(0);
        if deg == 0 {
            return Ok(true);
        }
        if compare_heads(cur.coeffs()) != Ordering::Less {
            return Ok(false);
        }
        let next = reduce_step(&cur)?;
        if next.degree() != Some(deg - 1) {
            return Ok(false);
        }
        cur = next;
    }
}

/// Exact simple von Neumann test.
pub fn is_simple_von_neumann(p: &RationalPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(invalid("von Neumann test on the zero polynomial"));
    }
    let mut cur = p.clone();
    loop {
        if cur.degree() == Some(0) {
            return Ok(true);
        }
        let cmp = compare_heads(cur.coeffs());
        if cmp == Ordering::Greater {
            return Ok(false);
        }
        let next = reduce_step(&cur)?;
        if next.is_zero() {
            return is_schur(&cur.derivative());
        }
        if cmp == Ordering::Equal {
            return Ok(false);
        }
        cur = next;
    }
}
