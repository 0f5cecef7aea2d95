//! Per-cell update rules and the staggered curl stencils.

use crate::schemes::{DimensionlessParams, SchemeId};

/// Update coefficients of the constitutive part of a scheme, fixed for a run.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Material {
    scheme: SchemeId,
    p: DimensionlessParams,
}

impl Material {
    pub(crate) fn new(scheme: SchemeId, p: DimensionlessParams) -> Self {
        Self { scheme, p }
    }

    /// Whether the update needs the curl of the previous magnetic field.
    pub(crate) fn needs_old_curl(&self) -> bool {
        self.scheme == SchemeId::LorentzJoseph
    }

    /// Advances `(E, aux₁, aux₂)` at one node given the curl term `x` of the
    /// new magnetic field (Ampère reads `E ← E − x` in vacuum) and `x_old`
    /// of the previous one.
    #[inline]
    pub(crate) fn advance(&self, e: f64, a1: f64, a2: f64, x: f64, x_old: f64) -> (f64, f64, f64) {
        let DimensionlessParams { delta: d, omega: w, eps_s_prime: eps, alpha, .. } = self.p;
        match self.scheme {
            SchemeId::DebyeJoseph => {
                let d_new = a1 - x;
                let e_new = ((1.0 - d * eps) * e + (1.0 + d) * d_new - (1.0 - d) * a1) / (1.0 + d * eps);
                (e_new, d_new, 0.0)
            }
            SchemeId::DebyeYoung => {
                let p_new = ((1.0 - d) * a1 + 2.0 * d * alpha * e) / (1.0 + d);
                let e_new = ((1.0 - d * alpha) * e - x + 2.0 * d * p_new) / (1.0 + d * alpha);
                (e_new, p_new, 0.0)
            }
            SchemeId::LorentzJoseph => {
                // a1 = E at the previous step, a2 = D.
                let d_prev = a2 + x_old;
                let d_new = a2 - x;
                let num = 2.0 * e - (1.0 - d + w * eps) * a1
                    + 2.0 * w * a2
                    + (1.0 + w) * (d_new - 2.0 * a2 + d_prev)
                    + d * (d_new - d_prev);
                (num / (1.0 + d + w * eps), e, d_new)
            }
            SchemeId::LorentzKashiwa => {
                let big = self.p.big_delta();
                let j_new = (w * alpha * (2.0 * e - x) - 2.0 * w * a1 + (2.0 - big) * a2) / big;
                let p_new = a1 + 0.5 * (a2 + j_new);
                (e - x - (p_new - a1), p_new, j_new)
            }
            SchemeId::LorentzYoung => {
                let j_new = ((1.0 - d) * a2 + 2.0 * w * (alpha * e - a1)) / (1.0 + d);
                (e - x - j_new, a1 + j_new, j_new)
            }
        }
    }
}

#[inline]
pub(crate) fn prev(i: usize, n: usize) -> usize {
    if i == 0 { n - 1 } else { i - 1 }
}

#[inline]
pub(crate) fn next(i: usize, n: usize) -> usize {
    if i + 1 == n { 0 } else { i + 1 }
}

/// `λ (b_j − b_{j−1})` along a line of a row-major `nx × ny` array.
pub(crate) fn backward_x(b: &[f64], nx: usize, lam: f64, out: &mut [f64]) {
    for (row_b, row_o) in b.chunks_exact(nx).zip(out.chunks_exact_mut(nx)) {
        for i in 0..nx {
            row_o[i] = lam * (row_b[i] - row_b[prev(i, nx)]);
        }
    }
}

pub(crate) fn backward_y(b: &[f64], nx: usize, ny: usize, lam: f64, out: &mut [f64]) {
    for j in 0..ny {
        let (r, rp) = (j * nx, prev(j, ny) * nx);
        for i in 0..nx {
            out[r + i] = lam * (b[r + i] - b[rp + i]);
        }
    }
}

/// `b ← b − λ (e_{i+1} − e_i)` along x.
pub(crate) fn forward_x_sub(b: &mut [f64], e: &[f64], nx: usize, lam: f64) {
    for (row_b, row_e) in b.chunks_exact_mut(nx).zip(e.chunks_exact(nx)) {
        for i in 0..nx {
            row_b[i] -= lam * (row_e[next(i, nx)] - row_e[i]);
        }
    }
}

pub(crate) fn forward_y_sub(b: &mut [f64], e: &[f64], nx: usize, ny: usize, lam: f64) {
    for j in 0..ny {
        let (r, rn) = (j * nx, next(j, ny) * nx);
        for i in 0..nx {
            b[r + i] -= lam * (e[rn + i] - e[r + i]);
        }
    }
}
