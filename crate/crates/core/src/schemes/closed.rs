use num_complex::Complex64;
use num_traits::{FromPrimitive, Num};

use super::{courant_q, DimensionlessParams, Polarization, SchemeId, Wavenumber};
use crate::error::{invalid, Result};
use crate::polyloc::Polynomial;

/// The scalar symbols entering the closed-form polynomials. Generic so the
/// same formulas serve floating-point and exact rational evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbols<T> {
    pub delta: T,
    pub omega: T,
    pub eps_s_prime: T,
    pub q: T,
}

impl Symbols<f64> {
    pub fn new(params: &DimensionlessParams, q: f64) -> Self {
        Self {
            delta: params.delta,
            omega: params.omega,
            eps_s_prime: params.eps_s_prime,
            q,
        }
    }
}

fn n<T: FromPrimitive>(v: i64) -> T {
    T::from_i64(v).expect("small integer constant")
}

/// Coefficients of the 1D characteristic polynomial in ascending powers,
/// with the normalization in which the leading coefficient is positive.
pub fn closed_coeffs<T>(scheme: SchemeId, s: &Symbols<T>) -> Vec<T>
where
    T: Num + Clone + FromPrimitive,
{
    let one: T = T::one();
    let two: T = n(2);
    let d = s.delta.clone();
    let w = s.omega.clone();
    let e = s.eps_s_prime.clone();
    let q = s.q.clone();
    match scheme {
        SchemeId::DebyeJoseph => {
            let de = d.clone() * e;
            vec![
                de.clone() - one.clone(),
                n::<T>(3) - de.clone() - (one.clone() - d.clone()) * q.clone(),
                (one.clone() + d) * q - n::<T>(3) - de.clone(),
                one + de,
            ]
        }
        SchemeId::DebyeYoung => {
            let a = e - one.clone();
            let da = d.clone() * a;
            let three_dda = n::<T>(3) * d.clone() * da.clone();
            vec![
                T::zero() - (one.clone() - da.clone()) * (one.clone() - d.clone()),
                n::<T>(3) - d.clone() - da.clone() + three_dda.clone()
                    - (one.clone() - d.clone()) * q.clone(),
                (one.clone() + d.clone()) * q
                    - (n::<T>(3) + d.clone() + da.clone() + three_dda),
                (one.clone() + da) * (one + d),
            ]
        }
        SchemeId::LorentzJoseph => {
            let we = w.clone() * e;
            let a = one.clone() + d.clone() + we.clone();
            vec![
                one.clone() - d.clone() + we.clone(),
                (one.clone() - d.clone() + w.clone()) * q.clone()
                    - (n::<T>(4) - two.clone() * d.clone() + two.clone() * we.clone()),
                n::<T>(6) + two.clone() * we.clone() - two.clone() * q.clone(),
                (one + d.clone() + w) * q - (n::<T>(4) + two.clone() * d + two * we),
                a,
            ]
        }
        SchemeId::LorentzKashiwa => {
            let half_we = w.clone() * e.clone() / two.clone();
            let half_w = w.clone() / two.clone();
            vec![
                one.clone() - d.clone() + half_we.clone(),
                (one.clone() - d.clone() + half_w.clone()) * q.clone()
                    - (n::<T>(4) - two.clone() * d.clone()),
                n::<T>(6) - w.clone() * e + (w - two.clone()) * q.clone(),
                (one.clone() + d.clone() + half_w) * q - (n::<T>(4) + two * d.clone()),
                one + d + half_we,
            ]
        }
        SchemeId::LorentzYoung => {
            let two_we = two.clone() * w.clone() * e;
            vec![
                one.clone() - d.clone(),
                (one.clone() - d.clone()) * q.clone()
                    - (n::<T>(4) - two.clone() * d.clone() - two_we.clone()),
                two.clone() * (n::<T>(3) - two_we.clone() + (w - one.clone()) * q.clone()),
                (one.clone() + d.clone()) * q - (n::<T>(4) + two * d.clone() - two_we),
                one + d,
            ]
        }
    }
}

/// Coefficients of the extra TM factor in ascending powers: the
/// characteristic polynomial of the curl-free field and its auxiliary
/// variables, equal to `φ₀(q = 0) / (Z − 1)²`.
pub fn psi0_coeffs<T>(scheme: SchemeId, s: &Symbols<T>) -> Vec<T>
where
    T: Num + Clone + FromPrimitive,
{
    let one: T = T::one();
    let two: T = n(2);
    let d = s.delta.clone();
    let w = s.omega.clone();
    let e = s.eps_s_prime.clone();
    match scheme {
        SchemeId::DebyeJoseph => {
            let de = d * e;
            vec![de.clone() - one.clone(), one + de]
        }
        SchemeId::DebyeYoung => {
            let da = d.clone() * (e - one.clone());
            vec![
                T::zero() - (one.clone() - d.clone()) * (one.clone() - da.clone()),
                (one.clone() + d) * (one + da),
            ]
        }
        SchemeId::LorentzJoseph => {
            let we = w * e;
            vec![
                one.clone() - d.clone() + we.clone(),
                T::zero() - two,
                one + d + we,
            ]
        }
        SchemeId::LorentzKashiwa => {
            let we = w * e;
            let half_we = we.clone() / two.clone();
            vec![
                one.clone() - d.clone() + half_we.clone(),
                we - two,
                one + d + half_we,
            ]
        }
        SchemeId::LorentzYoung => vec![
            one.clone() - d.clone(),
            two * (w * e - one.clone()),
            one + d,
        ],
    }
}

fn to_poly(v: Vec<f64>) -> Polynomial {
    Polynomial::new(v.into_iter().map(|c| Complex64::new(c, 0.0)).collect())
}

/// The closed-form 1D characteristic polynomial at Courant quantity `q`.
pub fn char_poly_closed(scheme: SchemeId, params: &DimensionlessParams, q: f64) -> Result<Polynomial> {
    if !(q.is_finite() && q >= 0.0) {
        return Err(invalid(format!("q must be non-negative and finite, got {q}")));
    }
    Ok(to_poly(closed_coeffs(scheme, &Symbols::new(params, q))))
}

/// The extra factor of the 2D TM polynomial (degree 1 for Debye schemes,
/// degree 2 for Lorentz schemes).
pub fn psi0_2d(scheme: SchemeId, params: &DimensionlessParams) -> Polynomial {
    to_poly(psi0_coeffs(scheme, &Symbols::new(params, 0.0)))
}

/// `(Z − 1) φ₀(q_x + q_y)` for TE and `(Z − 1) ψ₀ φ₀(q_x + q_y)` for TM.
pub fn char_poly_2d(
    scheme: SchemeId,
    params: &DimensionlessParams,
    wn: &Wavenumber,
    polarization: Polarization,
) -> Result<Polynomial> {
    if !wn.is_2d() {
        return Err(invalid("char_poly_2d needs a 2D wavenumber"));
    }
    let phi = char_poly_closed(scheme, params, courant_q(params, wn))?;
    let z_minus_one = Polynomial::from_real(&[-1.0, 1.0]);
    let base = z_minus_one.mul(&phi);
    Ok(match polarization {
        Polarization::Te => base,
        Polarization::Tm => base.mul(&psi0_2d(scheme, params)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyloc::root_profile;

    #[test]
    fn debye_joseph_sample() {
        let p = DimensionlessParams::debye(1.0, 0.5, 2.0).unwrap();
        let phi = char_poly_closed(SchemeId::DebyeJoseph, &p, 1.0).unwrap();
        assert_eq!(phi, Polynomial::from_real(&[0.0, 1.5, -2.5, 2.0]));
    }

    #[test]
    fn debye_joseph_vacuum_has_unit_root() {
        let p = DimensionlessParams::debye(1.0, 0.3, 1.0).unwrap();
        let phi = char_poly_closed(SchemeId::DebyeJoseph, &p, 0.0).unwrap();
        assert_eq!(phi, Polynomial::from_real(&[-0.7, 2.7, -3.3, 1.3]));
        let sum: f64 = phi.coeffs().iter().map(|c| c.re).sum();
        assert!(sum.abs() < 1e-15);
    }

    #[test]
    fn kashiwa_harmonic_roots_on_circle() {
        let p = DimensionlessParams::lorentz(1.0, 0.0, 1.0, 1.0).unwrap();
        let phi = char_poly_closed(SchemeId::LorentzKashiwa, &p, 0.0).unwrap();
        assert_eq!(phi, Polynomial::from_real(&[1.5, -4.0, 5.0, -4.0, 1.5]));
        let prof = root_profile(&phi, 1e-6).unwrap();
        assert_eq!(prof.inside_count + prof.outside_count, 0);
        // Z = 1 is a double root; the other pair is simple.
        assert_eq!(prof.on_circle.iter().map(|r| r.1).sum::<usize>(), 4);
    }

    #[test]
    fn psi0_examples() {
        let p = DimensionlessParams::debye(1.0, 0.5, 2.0).unwrap();
        assert_eq!(psi0_2d(SchemeId::DebyeJoseph, &p), Polynomial::from_real(&[0.0, 2.0]));
        let lj = DimensionlessParams::lorentz(1.0, 0.0, 0.7, 1.5).unwrap();
        let psi = psi0_2d(SchemeId::LorentzJoseph, &lj);
        let c = psi.coeffs();
        assert!((c[0].re - c[2].re).abs() < 1e-15);
    }

    #[test]
    fn degrees_2d() {
        let p = DimensionlessParams::debye(0.5, 0.5, 2.0).unwrap();
        let wn = Wavenumber::two_d(1.0, 2.0);
        let te = char_poly_2d(SchemeId::DebyeJoseph, &p, &wn, Polarization::Te).unwrap();
        let tm = char_poly_2d(SchemeId::DebyeJoseph, &p, &wn, Polarization::Tm).unwrap();
        assert_eq!(te.degree(), Some(4));
        assert_eq!(tm.degree(), Some(5));
        assert!(te.eval(Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }
}
