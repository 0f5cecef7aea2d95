use std::fmt;

use num_complex::Complex64;

/// Trailing coefficients at or below this fraction of the largest coefficient
/// are dropped on construction.
pub const TRIM_TOL: f64 = 4.0 * f64::EPSILON;

/// Complex polynomial with coefficients in ascending powers.
///
/// The coefficient list is trimmed so that the last entry is the leading
/// coefficient; the zero polynomial has an empty list.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cutoff = TRIM_TOL * max;
        while let Some(last) = coeffs.last() {
            if last.norm() <= cutoff {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    /// Builds a polynomial without trimming anything but exact zeros.
    pub(crate) fn from_raw(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monic polynomial with the given roots, repeated roots listed
    /// once per multiplicity.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        Self::from_raw(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeffs.first().copied().unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_raw(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_raw(out)
    }

    /// Divides by the leading coefficient. `None` for the zero polynomial.
    pub fn monic(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lead = self.leading();
        Some(Self::from_raw(self.coeffs.iter().map(|&c| c / lead).collect()))
    }

    /// Scales so that the largest coefficient has unit modulus.
    pub(crate) fn normalized(&self) -> Self {
        let m = self.max_abs();
        if m == 0.0 {
            return Self::zero();
        }
        Self::from_raw(self.coeffs.iter().map(|&c| c / m).collect())
    }

    /// Largest coefficient-wise distance after normalizing both sides to
    /// monic form, measured relative to the largest monic coefficient.
    pub fn monic_distance(&self, other: &Self) -> f64 {
        match (self.monic(), other.monic()) {
            (Some(a), Some(b)) if a.coeffs.len() == b.coeffs.len() => {
                let scale = a.max_abs().max(b.max_abs()).max(1.0);
                a.coeffs
                    .iter()
                    .zip(&b.coeffs)
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max)
                    / scale
            }
            (None, None) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == Complex64::new(0.0, 0.0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            match i {
                0 => {}
                1 => write!(f, "·Z")?,
                _ => write!(f, "·Z^{i}")?,
            }
        }
        Ok(())
    }
}
