use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Polynomial;
use crate::error::{invalid, Error, Result};

/// Roots closer than this are counted as one root with multiplicity.
pub const CLUSTER_TOL: f64 = 1e-7;

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;
const NEWTON_STEPS: usize = 3;

/// Location of the roots of a polynomial relative to the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct RootProfile {
    pub inside_count: usize,
    pub outside_count: usize,
    /// Clusters on the unit circle, each as (mean root, multiplicity).
    pub on_circle: Vec<(Complex64, usize)>,
    pub circle_tolerance: f64,
    pub max_modulus: f64,
}

impl RootProfile {
    pub fn degree(&self) -> usize {
        self.inside_count + self.outside_count + self.on_circle.iter().map(|r| r.1).sum::<usize>()
    }

    pub fn has_multiple_circle_root(&self) -> bool {
        self.on_circle.iter().any(|r| r.1 > 1)
    }

    /// All roots in the closed disk, circle roots simple.
    pub fn is_simple_von_neumann(&self) -> bool {
        self.outside_count == 0 && !self.has_multiple_circle_root()
    }

    pub fn is_schur(&self) -> bool {
        self.outside_count == 0 && self.on_circle.is_empty()
    }
}

/// All roots of `p`, repeated by multiplicity, from the eigenvalues of the
/// companion matrix followed by a few guarded Newton steps.
pub fn polynomial_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let monic = p
        .monic()
        .ok_or_else(|| invalid("roots of the zero polynomial"))?;
    let c = monic.coeffs();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    // Exact zero roots are split off so the companion matrix stays small.
    let zeros = c.iter().take_while(|v| **v == Complex64::new(0.0, 0.0)).count();
    let c = &c[zeros..];
    let m = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if m == 0 {
        return Ok(roots);
    }
    let reduced = Polynomial::from_raw(c.to_vec());
    let deriv = reduced.derivative();
    // QR iteration can stall on structured companions such as polynomials
    // in Z²; moving the origin breaks the structure.
    for shift in SHIFTS {
        let s = Complex64::new(shift, 0.0);
        let shifted = taylor_shift(c, s);
        let lead = shifted[m];
        if let Some(eigs) = companion_eigenvalues(&shifted, lead) {
            roots.extend(eigs.into_iter().map(|z| polish(&reduced, &deriv, z + s)));
            return Ok(roots);
        }
    }
    Err(Error::NumericalFailure("companion eigen-solve did not converge".into()))
}

const SHIFTS: [f64; 3] = [0.0, 0.125, -0.3125];

fn companion_eigenvalues(c: &[Complex64], lead: Complex64) -> Option<Vec<Complex64>> {
    let m = c.len() - 1;
    let mut comp = DMatrix::<Complex64>::zeros(m, m);
    for i in 1..m {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..m {
        comp[(i, m - 1)] = -c[i] / lead;
    }
    let (_, t) = comp.try_schur(SCHUR_EPS, SCHUR_MAX_ITER)?.unpack();
    Some((0..m).map(|i| t[(i, i)]).collect())
}

/// Coefficients of `p(w + s)` by repeated synthetic division.
fn taylor_shift(c: &[Complex64], s: Complex64) -> Vec<Complex64> {
    let mut a = c.to_vec();
    if s == Complex64::new(0.0, 0.0) {
        return a;
    }
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let next = a[j + 1];
            a[j] += s * next;
        }
    }
    a
}

fn polish(p: &Polynomial, dp: &Polynomial, mut z: Complex64) -> Complex64 {
    let mut res = p.eval(z).norm();
    for _ in 0..NEWTON_STEPS {
        let d = dp.eval(z);
        if d.norm() == 0.0 || res == 0.0 {
            break;
        }
        let cand = z - p.eval(z) / d;
        let cand_res = p.eval(cand).norm();
        if !(cand_res < res) {
            break;
        }
        z = cand;
        res = cand_res;
    }
    z
}

/// Groups points closer than `tol` (single linkage) and returns each group
/// as (mean, size).
pub fn cluster_points(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += roots[i];
                g.2 += 1;
            }
            None => groups.push((r, roots[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, sum, m)| (sum / m as f64, m))
        .collect()
}

/// Counts roots inside and outside the unit circle and lists the circle
/// roots with their multiplicities.
pub fn root_profile(p: &Polynomial, circle_tolerance: f64) -> Result<RootProfile> {
    if p.is_zero() {
        return Err(invalid("root profile of the zero polynomial"));
    }
    if !(circle_tolerance > 0.0) {
        return Err(invalid("circle tolerance must be positive"));
    }
    let roots = polynomial_roots(p)?;
    let mut profile = RootProfile {
        inside_count: 0,
        outside_count: 0,
        on_circle: Vec::new(),
        circle_tolerance,
        max_modulus: roots.iter().map(|r| r.norm()).fold(0.0, f64::max),
    };
    for (r, m) in cluster_points(&roots, CLUSTER_TOL) {
        let modulus = r.norm();
        if (modulus - 1.0).abs() <= circle_tolerance {
            profile.on_circle.push((r, m));
        } else if modulus < 1.0 {
            profile.inside_count += m;
        } else {
            profile.outside_count += m;
        }
    }
    profile
        .on_circle
        .sort_by(|a, b| a.0.arg().total_cmp(&b.0.arg()));
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_roots_are_inside() {
        let p = Polynomial::from_real(&[0.0, 0.0, 0.0, 1.0]);
        let prof = root_profile(&p, 1e-9).unwrap();
        assert_eq!(prof.inside_count, 3);
        assert!(prof.on_circle.is_empty());
    }

    #[test]
    fn constructed_circle_roots() {
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)]);
        let prof = root_profile(&p, 1e-9).unwrap();
        assert_eq!(prof.inside_count, 1);
        assert_eq!(prof.outside_count, 0);
        assert_eq!(prof.on_circle.len(), 2);
        assert!(prof.on_circle.iter().all(|r| r.1 == 1));
        assert!((prof.on_circle[0].0 - c(1.0, 0.0)).norm() < 1e-12);
        assert!((prof.on_circle[1].0 - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn double_root_is_clustered() {
        let w = Complex64::from_polar(1.0, 0.9);
        let p = Polynomial::from_roots(&[w, w, w.conj(), w.conj()]);
        let prof = root_profile(&p, 1e-6).unwrap();
        assert_eq!(prof.on_circle.len(), 2);
        assert!(prof.on_circle.iter().all(|r| r.1 == 2));
        assert_eq!(prof.degree(), 4);
    }

    #[test]
    fn even_polynomial_with_stalling_companion() {
        let p = Polynomial::from_real(&[3.2, 0.0, 1.5, 0.0, 3.3]);
        let roots = polynomial_roots(&p).unwrap();
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!(p.eval(r).norm() < 1e-12);
        }
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let coeffs = [c(1.0, 0.0), c(-2.0, 1.0), c(0.5, 0.0), c(3.0, 0.0)];
        let s = c(0.125, 0.0);
        let shifted = Polynomial::from_raw(taylor_shift(&coeffs, s));
        let p = Polynomial::from_raw(coeffs.to_vec());
        let w = c(0.3, -0.7);
        assert!((shifted.eval(w) - p.eval(w + s)).norm() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(root_profile(&Polynomial::zero(), 1e-9).is_err());
        assert!(root_profile(&Polynomial::from_real(&[1.0, 1.0]), 0.0).is_err());
    }
}
