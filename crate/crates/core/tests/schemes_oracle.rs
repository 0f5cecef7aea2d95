use fdtd_stab::polyloc::{exact, reduce_step, Polynomial};
use fdtd_stab::schemes::{
    amplification_matrix, char_poly_2d, char_poly_closed, char_poly_from_matrix, closed_coeffs,
    courant_q, psi0_2d, DimensionlessParams, MediumKind, Polarization, SchemeId, Symbols,
    Wavenumber,
};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_params(rng: &mut ChaCha8Rng, scheme: SchemeId) -> DimensionlessParams {
    let lambda = rng.gen_range(0.05..1.5);
    let eps = if rng.gen_bool(0.2) { 1.0 } else { rng.gen_range(1.0..100.0) };
    match scheme.medium_kind() {
        MediumKind::Debye => DimensionlessParams::debye(lambda, rng.gen_range(0.01..3.0), eps).unwrap(),
        MediumKind::Lorentz => {
            let delta = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..3.0) };
            DimensionlessParams::lorentz(lambda, delta, rng.gen_range(0.01..5.0), eps).unwrap()
        }
    }
}

#[test]
fn closed_form_matches_matrix_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for scheme in SchemeId::ALL {
        for _ in 0..1000 {
            let p = random_params(&mut rng, scheme);
            let wn = Wavenumber::one_d(rng.gen_range(0.0..std::f64::consts::TAU));
            let g = amplification_matrix(scheme, &p, &wn).unwrap();
            let from_matrix = char_poly_from_matrix(&g).unwrap();
            let closed = char_poly_closed(scheme, &p, courant_q(&p, &wn)).unwrap();
            let dist = closed.monic_distance(&from_matrix);
            assert!(dist < 1e-10, "{scheme} {p:?} {wn:?}: distance {dist:e}");
        }
    }
}

#[test]
fn closed_form_coefficients_are_real_with_positive_lead() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for scheme in SchemeId::ALL {
        for _ in 0..200 {
            let p = random_params(&mut rng, scheme);
            let phi = char_poly_closed(scheme, &p, rng.gen_range(0.0..9.0)).unwrap();
            assert!(phi.coeffs().iter().all(|c| c.im == 0.0));
            assert!(phi.leading().re > 0.0);
        }
    }
}

#[test]
fn psi0_is_the_curl_free_factor() {
    // φ₀(q = 0) = (Z − 1)² ψ₀ for every scheme.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let square = Polynomial::from_real(&[1.0, -2.0, 1.0]);
    for scheme in SchemeId::ALL {
        for _ in 0..200 {
            let p = random_params(&mut rng, scheme);
            let phi0 = char_poly_closed(scheme, &p, 0.0).unwrap();
            let product = square.mul(&psi0_2d(scheme, &p));
            assert!(phi0.monic_distance(&product) < 1e-12, "{scheme} {p:?}");
        }
    }
}

#[test]
fn yee_factor_in_vacuum_limit() {
    let yee = |q: f64| Polynomial::from_real(&[1.0, q - 2.0, 1.0]);
    for (scheme, p) in [
        (SchemeId::DebyeJoseph, DimensionlessParams::debye(1.0, 0.4, 1.0).unwrap()),
        (SchemeId::DebyeYoung, DimensionlessParams::debye(1.0, 0.4, 1.0).unwrap()),
    ] {
        for q in [0.0, 0.7, 2.5, 4.0] {
            let phi = char_poly_closed(scheme, &p, q).unwrap();
            let rest = psi0_2d(scheme, &p);
            assert!(phi.monic_distance(&yee(q).mul(&rest)) < 1e-13, "{scheme} q={q}");
        }
    }
}

/// The Debye–Young update written as explicit per-step equations and applied
/// to unit vectors gives the amplification matrix column by column.
#[test]
fn debye_young_matrix_from_explicit_updates() {
    let (delta, alpha, lam, xi) = (0.1, 1.0, 0.5, std::f64::consts::FRAC_PI_2);
    let p = DimensionlessParams::debye(lam, delta, 1.0 + alpha).unwrap();
    let g = amplification_matrix(SchemeId::DebyeYoung, &p, &Wavenumber::one_d(xi)).unwrap();
    let e = Complex64::from_polar(1.0, xi);
    for col in 0..3 {
        let mut u = [Complex64::new(0.0, 0.0); 3];
        u[col] = Complex64::new(1.0, 0.0);
        let [b0, e0, p0] = u;
        let b1 = b0 - (e - 1.0) * e0 * lam;
        // Ampère with the polarization current J = (P^{n+½} − P^{n−½}) / k.
        let p1 = ((1.0 - delta) * p0 + 2.0 * delta * alpha * e0) / (1.0 + delta);
        let curl = -(1.0 - e.conj()) * b1 * lam;
        let e1 = ((1.0 - delta * alpha) * e0 + curl + 2.0 * delta * p1) / (1.0 + delta * alpha);
        for (row, v) in [b1, e1, p1].into_iter().enumerate() {
            assert!((g.entries[(row, col)] - v).norm() < 1e-14, "entry ({row},{col})");
        }
    }
}

#[test]
fn exact_reduction_of_debye_joseph_sample() {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let s = Symbols { delta: r(1, 2), omega: r(0, 1), eps_s_prime: r(2, 1), q: r(1, 1) };
    let c = exact::RationalPoly::new(closed_coeffs(SchemeId::DebyeJoseph, &s));
    assert_eq!(c, exact::RationalPoly::from_ratios(&[(0, 1), (3, 2), (-5, 2), (2, 1)]));
    let reduced = exact::reduce_step(&c).unwrap();
    assert_eq!(reduced, exact::RationalPoly::from_ratios(&[(3, 1), (-5, 1), (4, 1)]));

    let p = DimensionlessParams::debye(1.0, 0.5, 2.0).unwrap();
    let float = reduce_step(&char_poly_closed(SchemeId::DebyeJoseph, &p, 1.0).unwrap()).unwrap();
    let expect = Polynomial::from_real(&reduced.to_f64());
    assert!(float.monic_distance(&expect) < 1e-15);
}

#[test]
fn two_d_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for scheme in SchemeId::ALL {
        for _ in 0..500 {
            let p = random_params(&mut rng, scheme);
            let wn = Wavenumber::two_d_steps(
                rng.gen_range(0.0..6.3),
                rng.gen_range(0.0..6.3),
                1.0,
                rng.gen_range(0.5..2.0),
            );
            let q = courant_q(&p, &wn);
            let phi = char_poly_closed(scheme, &p, q).unwrap();
            let zm1 = Polynomial::from_real(&[-1.0, 1.0]);
            let te = char_poly_2d(scheme, &p, &wn, Polarization::Te).unwrap();
            let tm = char_poly_2d(scheme, &p, &wn, Polarization::Tm).unwrap();
            assert!(te.monic_distance(&zm1.mul(&phi)) < 1e-10);
            assert!(tm.monic_distance(&zm1.mul(&psi0_2d(scheme, &p)).mul(&phi)) < 1e-10);
            assert_eq!(te.degree().unwrap(), phi.degree().unwrap() + 1);
        }
    }
}
