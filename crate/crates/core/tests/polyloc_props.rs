use fdtd_stab::polyloc::{
    conjugate_poly, exact, is_schur, is_simple_von_neumann, reduce_step, root_profile, Polynomial,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Root kinds drawn for the oracle comparison. Off-circle roots keep a margin
/// of at least 1e-6 from the circle.
fn random_roots(rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let degree = rng.gen_range(1..=8);
    let mut roots: Vec<Complex64> = Vec::with_capacity(degree);
    while roots.len() < degree {
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = match rng.gen_range(0..10) {
            0..=3 => Complex64::from_polar(rng.gen_range(0.0..1.0 - 1e-6), theta),
            4..=5 => Complex64::from_polar(rng.gen_range(1.0 + 1e-6..3.0), theta),
            6..=7 => Complex64::from_polar(1.0, theta),
            8 if !roots.is_empty() => roots[rng.gen_range(0..roots.len())],
            _ => Complex64::from_polar(rng.gen_range(0.0..0.99), theta),
        };
        roots.push(r);
    }
    roots
}

fn oracle(roots: &[Complex64]) -> (bool, bool) {
    let on = |r: &Complex64| (r.norm() - 1.0).abs() < 1e-9;
    let schur = roots.iter().all(|r| r.norm() < 1.0 - 1e-9);
    let disk = roots.iter().all(|r| r.norm() < 1.0 + 1e-9);
    let simple = roots.iter().enumerate().all(|(i, r)| {
        !on(r) || roots.iter().enumerate().all(|(j, s)| i == j || (r - s).norm() > 1e-9)
    });
    (schur, disk && simple)
}

#[test]
fn recursion_matches_known_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for _ in 0..10_000 {
        let roots = random_roots(&mut rng);
        let p = Polynomial::from_roots(&roots);
        let (schur, svn) = oracle(&roots);
        let got_schur = is_schur(&p).unwrap().holds;
        let got_svn = is_simple_von_neumann(&p).unwrap().holds;
        if got_schur != schur || got_svn != svn {
            failures.push((roots, schur, svn, got_schur, got_svn));
        }
    }
    assert!(failures.is_empty(), "{} disagreements, first: {:?}", failures.len(), failures.first());
}

#[test]
fn exact_path_agrees_with_float_on_real_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let deg = rng.gen_range(1..=6);
        let coeffs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-4i32..=4) as f64 / 2.0).collect();
        let p = Polynomial::from_real(&coeffs);
        if p.is_zero() || p.degree() == Some(0) {
            continue;
        }
        let q = exact::RationalPoly::from_f64(&coeffs).unwrap();
        assert_eq!(
            is_schur(&p).unwrap().holds,
            exact::is_schur(&q).unwrap(),
            "schur mismatch for {coeffs:?}"
        );
        assert_eq!(
            is_simple_von_neumann(&p).unwrap().holds,
            exact::is_simple_von_neumann(&q).unwrap(),
            "von Neumann mismatch for {coeffs:?}"
        );
    }
}

fn complex_coeffs() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 1..9)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

proptest! {
    #[test]
    fn reduction_lowers_degree(coeffs in complex_coeffs()) {
        let p = Polynomial::new(coeffs);
        prop_assume!(!p.is_zero());
        let r = reduce_step(&p).unwrap();
        prop_assert!(r.is_zero() || r.degree() < p.degree());
    }

    #[test]
    fn conjugation_is_an_involution(coeffs in complex_coeffs()) {
        let p = Polynomial::new(coeffs);
        prop_assume!(!p.is_zero() && p.constant_term().norm() > 0.0);
        let back = conjugate_poly(&conjugate_poly(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn schur_implies_von_neumann(coeffs in complex_coeffs()) {
        let p = Polynomial::new(coeffs);
        prop_assume!(!p.is_zero());
        if is_schur(&p).unwrap().holds {
            prop_assert!(is_simple_von_neumann(&p).unwrap().holds);
        }
    }

    #[test]
    fn verdicts_are_scale_invariant(
        coeffs in complex_coeffs(),
        mag in 1e-3..1e3f64,
        arg in 0.0..std::f64::consts::TAU,
    ) {
        let p = Polynomial::new(coeffs);
        prop_assume!(!p.is_zero());
        let s = p.scale(Complex64::from_polar(mag, arg));
        prop_assert_eq!(is_schur(&p).unwrap().holds, is_schur(&s).unwrap().holds);
        prop_assert_eq!(
            is_simple_von_neumann(&p).unwrap().holds,
            is_simple_von_neumann(&s).unwrap().holds
        );
    }

    #[test]
    fn profile_accounts_for_every_root(coeffs in complex_coeffs()) {
        let p = Polynomial::new(coeffs);
        prop_assume!(!p.is_zero());
        let prof = root_profile(&p, 1e-6).unwrap();
        prop_assert_eq!(Some(prof.degree()), p.degree());
        for (r, _) in &prof.on_circle {
            prop_assert!((r.norm() - 1.0).abs() <= 1e-6);
        }
    }
}
