use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{DimensionlessParams, SchemeId, Wavenumber};
use crate::error::{invalid, Result};
use crate::polyloc::Polynomial;

/// Amplification matrix of a 1D scheme acting on the Fourier amplitudes of
/// the state vector, with the component order given by `labels`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmpMatrix {
    pub entries: DMatrix<Complex64>,
    pub labels: &'static [&'static str],
}

impl AmpMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn identity(n: usize) -> Self {
        Self { entries: DMatrix::identity(n, n), labels: &[] }
    }
}

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Builds the amplification matrix for the mode `U_j = U e^{iξj}`, where the
/// magnetic unknown at `j + ½` carries index `j`.
pub fn amplification_matrix(
    scheme: SchemeId,
    params: &DimensionlessParams,
    wn: &Wavenumber,
) -> Result<AmpMatrix> {
    if wn.is_2d() {
        return Err(invalid("amplification matrices are built for 1D wavenumbers only"));
    }
    let xi = wn.xi_x;
    let lam = params.lambda;
    let e_xi = Complex64::from_polar(1.0, xi);
    // Faraday row: b ← b − λ(e^{iξ} − 1) E.
    let faraday = -(e_xi - 1.0) * lam;
    // Discrete curl of b seen from the E node.
    let curl = (1.0 - e_xi.conj()) * lam;
    let q = super::q_of(lam, xi);
    let d = params.delta;
    let w = params.omega;
    let eps = params.eps_s_prime;
    let a = params.alpha;
    let m = match scheme {
        SchemeId::DebyeJoseph => {
            let s = 1.0 + d * eps;
            DMatrix::from_row_slice(
                3,
                3,
                &[
                    re(1.0), faraday, re(0.0),
                    -curl * (1.0 + d) / s, re(((1.0 - d * eps) - (1.0 + d) * q) / s), re(2.0 * d / s),
                    -curl, re(-q), re(1.0),
                ],
            )
        }
        SchemeId::DebyeYoung => {
            let s = 1.0 + d * a;
            let r = (1.0 - d) / (1.0 + d);
            DMatrix::from_row_slice(
                3,
                3,
                &[
                    re(1.0), faraday, re(0.0),
                    -curl / s,
                    re((1.0 + d - d * a + 3.0 * d * d * a - (1.0 + d) * q) / ((1.0 + d) * s)),
                    re(r * 2.0 * d / s),
                    re(0.0), re(2.0 * d * a / (1.0 + d)), re(r),
                ],
            )
        }
        SchemeId::LorentzJoseph => {
            let big_a = 1.0 + d + w * eps;
            DMatrix::from_row_slice(
                4,
                4,
                &[
                    re(1.0), faraday, re(0.0), re(0.0),
                    -curl * (2.0 * d / big_a),
                    re((2.0 - q * (1.0 + d + w)) / big_a),
                    re(-(1.0 - d + w * eps) / big_a),
                    re(2.0 * w / big_a),
                    re(0.0), re(1.0), re(0.0), re(0.0),
                    -curl, re(-q), re(0.0), re(1.0),
                ],
            )
        }
        SchemeId::LorentzKashiwa => {
            let dd = params.big_delta();
            let hwa = 0.5 * w * a;
            DMatrix::from_row_slice(
                4,
                4,
                &[
                    re(1.0), faraday, re(0.0), re(0.0),
                    -curl * ((dd - hwa) / dd),
                    re((dd - q * dd - (2.0 - q) * hwa) / dd),
                    re(w / dd),
                    re(-1.0 / dd),
                    -curl * (hwa / dd),
                    re((2.0 - q) * hwa / dd),
                    re((dd - w) / dd),
                    re(1.0 / dd),
                    -curl * (w * a / dd),
                    re((2.0 - q) * w * a / dd),
                    re(-2.0 * w / dd),
                    re((2.0 - dd) / dd),
                ],
            )
        }
        SchemeId::LorentzYoung => {
            let p1 = 1.0 + d;
            DMatrix::from_row_slice(
                4,
                4,
                &[
                    re(1.0), faraday, re(0.0), re(0.0),
                    -curl,
                    re(((1.0 - q) * p1 - 2.0 * w * a) / p1),
                    re(2.0 * w / p1),
                    re(-(1.0 - d) / p1),
                    re(0.0), re(2.0 * w * a / p1), re((p1 - 2.0 * w) / p1), re((1.0 - d) / p1),
                    re(0.0), re(2.0 * w * a / p1), re(-2.0 * w / p1), re((1.0 - d) / p1),
                ],
            )
        }
    };
    Ok(AmpMatrix { entries: m, labels: scheme.state_labels() })
}

/// Monic characteristic polynomial `det(Z I − G)`.
///
/// The coefficient of `Z^{n−k}` is `(−1)^k` times the sum of the principal
/// `k × k` minors of `G`, each expanded by cofactors. Summing signed products
/// of entries keeps the rounding relative to the size of those products,
/// which stays accurate when entries are large but the spectrum is of unit
/// size.
pub fn char_poly_from_matrix(g: &AmpMatrix) -> Result<Polynomial> {
    let a = &g.entries;
    let n = a.nrows();
    if n != a.ncols() {
        return Err(invalid("characteristic polynomial of a non-square matrix"));
    }
    if n > 10 {
        return Err(invalid("characteristic polynomial limited to 10 x 10 matrices"));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = idx.len();
        let minor = cofactor_det(a, &idx, &idx);
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        coeffs[n - k] += minor * sign;
    }
    Ok(Polynomial::from_raw(coeffs))
}

fn cofactor_det(a: &DMatrix<Complex64>, rows: &[usize], cols: &[usize]) -> Complex64 {
    match rows.len() {
        0 => Complex64::new(1.0, 0.0),
        1 => a[(rows[0], cols[0])],
        _ => {
            let r = rows[0];
            let rest = &rows[1..];
            let mut sum = Complex64::new(0.0, 0.0);
            let mut sub: Vec<usize> = Vec::with_capacity(cols.len() - 1);
            for (j, &c) in cols.iter().enumerate() {
                let v = a[(r, c)];
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                sub.clear();
                sub.extend(cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x));
                let term = v * cofactor_det(a, rest, &sub);
                if j % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            sum
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_gives_cube_of_z_minus_one() {
        let p = char_poly_from_matrix(&AmpMatrix::identity(3)).unwrap();
        assert_eq!(p, Polynomial::from_real(&[-1.0, 3.0, -3.0, 1.0]));
    }

    #[test]
    fn debye_joseph_zero_wavenumber() {
        let p = DimensionlessParams::debye(0.8, 0.3, 2.0).unwrap();
        let g = amplification_matrix(SchemeId::DebyeJoseph, &p, &Wavenumber::one_d(0.0)).unwrap();
        let s = 1.0 + 0.6;
        let expect = [
            [1.0, 0.0, 0.0],
            [0.0, (1.0 - 0.6) / s, 0.6 / s],
            [0.0, 0.0, 1.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!((g.entries[(i, j)] - re(expect[i][j])).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn lorentz_young_zero_wavenumber_decouples_b() {
        let p = DimensionlessParams::lorentz(0.8, 0.2, 0.5, 2.0).unwrap();
        let g = amplification_matrix(SchemeId::LorentzYoung, &p, &Wavenumber::one_d(0.0)).unwrap();
        for i in 1..4 {
            assert_eq!(g.entries[(i, 0)], re(0.0));
            assert_eq!(g.entries[(0, i)], re(0.0));
        }
    }

    #[test]
    fn rejects_2d_wavenumber() {
        let p = DimensionlessParams::debye(0.8, 0.3, 2.0).unwrap();
        assert!(amplification_matrix(SchemeId::DebyeJoseph, &p, &Wavenumber::two_d(0.1, 0.2)).is_err());
    }
}
