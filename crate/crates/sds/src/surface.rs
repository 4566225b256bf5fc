//! The generating profile f(z) = sqrt((z1-z)(z-z0)) * omega(z) of the
//! surface of revolution, its exact derivatives, the induced metric, and
//! geodesic distances from the poles.
//!
//! All distance integrals carry an inverse-square-root endpoint singularity
//! in sqrt(f'^2 + 1); the substitution z = pole + span*sin^2(u) removes it
//! exactly, leaving an analytic integrand for Gauss-Legendre quadrature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::quad::{integrate_adaptive, QuadResult};
use crate::num::series::{poly_derive, poly_eval, poly_mul};

/// Relative tolerance used for all geodesic-distance quadratures.
const DIST_TOL: f64 = 1e-12;

/// The polynomial factor omega(z) of the profile, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfilePolynomial {
    coefficients: Vec<f64>,
}

impl ProfilePolynomial {
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidProfile("omega needs at least one coefficient".into()));
        }
        if coefficients.len() > 1 && *coefficients.last().unwrap() == 0.0 {
            return Err(Error::InvalidProfile("leading coefficient of omega must be nonzero".into()));
        }
        Ok(ProfilePolynomial { coefficients })
    }

    pub fn constant(c: f64) -> Self {
        ProfilePolynomial { coefficients: vec![c] }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation; compensated (error-free transformation) summation
    /// above degree 8 to keep pole-adjacent derivative formulas stable.
    pub fn eval(&self, z: f64) -> f64 {
        if self.degree() <= 8 {
            poly_eval(&self.coefficients, z)
        } else {
            compensated_horner(&self.coefficients, z)
        }
    }

    pub fn derivative(&self) -> ProfilePolynomial {
        ProfilePolynomial { coefficients: poly_derive(&self.coefficients) }
    }
}

/// Compensated Horner scheme: evaluates with roughly twice the working
/// precision by accumulating the rounding error of each step.
fn compensated_horner(c: &[f64], x: f64) -> f64 {
    let mut s = *c.last().unwrap();
    let mut comp = 0.0;
    for &ci in c.iter().rev().skip(1) {
        // product with error term
        let p = s * x;
        let ep = s.mul_add(x, -p);
        // sum with error term
        let t = p + ci;
        let bb = t - p;
        let es = (p - (t - bb)) + (ci - bb);
        s = t;
        comp = comp * x + (ep + es);
    }
    s + comp
}

/// Which pole of the surface. The delta potential sits at the left pole z0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pole {
    Left,
    Right,
}

/// Profile data (z0, z1, omega) together with the cached coefficient
/// polynomials of W = f^2 and its z-derivatives, used by every closed form.
#[derive(Debug, Clone)]
pub struct SurfaceProfile {
    z0: f64,
    z1: f64,
    omega: ProfilePolynomial,
    omega_d1: ProfilePolynomial,
    omega_d2: ProfilePolynomial,
    /// W = (z1-z)(z-z0) * omega^2, exact polynomial coefficients.
    w: Vec<f64>,
    w1: Vec<f64>,
    w2: Vec<f64>,
    /// R = W'^2 + 4W, so that sqrt(f'^2+1) = sqrt(R)/(2 sqrt(W)).
    r: Vec<f64>,
    meridian: QuadResult,
}

impl SurfaceProfile {
    pub fn new(z0: f64, z1: f64, omega: ProfilePolynomial) -> Result<Self> {
        if !(z0 < z1) {
            return Err(Error::InvalidProfile(format!("need z0 < z1, got z0 = {z0}, z1 = {z1}")));
        }
        // B = (z1 - z)(z - z0) = -z^2 + (z0+z1) z - z0 z1
        let b = vec![-z0 * z1, z0 + z1, -1.0];
        let w = poly_mul(&b, &poly_mul(omega.coefficients(), omega.coefficients()));
        let w1 = poly_derive(&w);
        let w2 = poly_derive(&w1);
        let mut r = poly_mul(&w1, &w1);
        for (ri, wi) in r.iter_mut().zip(&w) {
            *ri += 4.0 * wi;
        }
        let omega_d1 = omega.derivative();
        let omega_d2 = omega_d1.derivative();
        // t = z0 + span sin^2 u removes both endpoint singularities:
        // integrand dt = sqrt(R(t)) / omega(t) du on [0, pi/2]
        let meridian_integrand = |u: f64| {
            let t = z0 + (z1 - z0) * u.sin().powi(2);
            poly_eval(&r, t).max(0.0).sqrt() / omega.eval(t)
        };
        let meridian = integrate_adaptive(&meridian_integrand, 0.0, std::f64::consts::FRAC_PI_2, DIST_TOL)?;
        Ok(SurfaceProfile { z0, z1, omega, omega_d1, omega_d2, w, w1, w2, r, meridian })
    }

    /// The round unit 3-sphere profile: omega = 1 on [-1, 1].
    pub fn unit_sphere() -> Self {
        SurfaceProfile::new(-1.0, 1.0, ProfilePolynomial::constant(1.0)).unwrap()
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }

    pub fn span(&self) -> f64 {
        self.z1 - self.z0
    }

    pub fn omega(&self) -> &ProfilePolynomial {
        &self.omega
    }

    /// Coefficients of W = f^2 (exact polynomial).
    pub fn w_coefficients(&self) -> &[f64] {
        &self.w
    }

    /// Leading profile coefficient at a pole: f ~ a0 sqrt(|z - z_pole|).
    pub fn pole_coefficient(&self, pole: Pole) -> f64 {
        let zp = match pole {
            Pole::Left => self.z0,
            Pole::Right => self.z1,
        };
        self.span().sqrt() * self.omega.eval(zp)
    }

    /// f alone; valid on the closed interval [z0, z1].
    pub fn f(&self, z: f64) -> Result<f64> {
        if z < self.z0 || z > self.z1 {
            return Err(Error::domain("eval_profile", format!("z = {z} outside [{}, {}]", self.z0, self.z1)));
        }
        Ok(((self.z1 - z) * (z - self.z0)).max(0.0).sqrt() * self.omega.eval(z))
    }

    /// Closed-form (f, f', f''). Derivatives diverge like |z - pole|^(-1/2),
    /// so z must be strictly interior.
    pub fn eval_profile(&self, z: f64) -> Result<(f64, f64, f64)> {
        if z <= self.z0 || z >= self.z1 {
            return Err(Error::domain(
                "eval_profile",
                format!("derivatives need z strictly inside ({}, {}); got z = {z}", self.z0, self.z1),
            ));
        }
        let b = (self.z1 - z) * (z - self.z0);
        let bp = self.z0 + self.z1 - 2.0 * z;
        let om = self.omega.eval(z);
        let om1 = self.omega_d1.eval(z);
        let om2 = self.omega_d2.eval(z);
        let sq = b.sqrt();
        let f = sq * om;
        // N = B' om + 2 B om',  f' = N / (2 sqrt B)
        let n = bp * om + 2.0 * b * om1;
        let fp = n / (2.0 * sq);
        // N' = B'' om + 3 B' om' + 2 B om'' with B'' = -2
        let np = -2.0 * om + 3.0 * bp * om1 + 2.0 * b * om2;
        let fpp = (2.0 * b * np - n * bp) / (4.0 * b * sq);
        Ok((f, fp, fpp))
    }

    /// sqrt(f'^2 + 1) from the exact rational form R/(4W); strictly interior.
    pub fn metric_factor(&self, z: f64) -> f64 {
        let r = poly_eval(&self.r, z);
        let w = poly_eval(&self.w, z);
        (r / (4.0 * w)).sqrt()
    }

    /// Total meridian length L = integral of sqrt(f'^2+1) over [z0, z1],
    /// computed once at construction.
    pub fn meridian_length(&self) -> QuadResult {
        self.meridian
    }

    /// Geodesic distance from a pole along the meridian, d(z, pole).
    ///
    /// Uses the sin^2 substitution at the singular end; for z in the far
    /// half of the domain the integral is taken from the other pole and
    /// subtracted from the meridian length, so the integrand stays analytic.
    pub fn geodesic_distance_from_pole(&self, z: f64, pole: Pole) -> Result<f64> {
        if z < self.z0 || z > self.z1 {
            return Err(Error::domain(
                "geodesic_distance_from_pole",
                format!("z = {z} outside [{}, {}]", self.z0, self.z1),
            ));
        }
        let mid = 0.5 * (self.z0 + self.z1);
        match pole {
            Pole::Left => {
                if z <= mid {
                    self.partial_distance_left(z)
                } else {
                    let total = self.meridian_length()?.value;
                    Ok(total - self.partial_distance_right(z)?)
                }
            }
            Pole::Right => {
                if z >= mid {
                    self.partial_distance_right(z)
                } else {
                    let total = self.meridian_length()?.value;
                    Ok(total - self.partial_distance_left(z)?)
                }
            }
        }
    }

    /// d(z, z0) for z in the left half: t = z0 + (z - z0) sin^2 u.
    fn partial_distance_left(&self, z: f64) -> Result<f64> {
        let dz = z - self.z0;
        if dz == 0.0 {
            return Ok(0.0);
        }
        let root_dz = dz.sqrt();
        let f = |u: f64| {
            let s = u.sin();
            let t = self.z0 + dz * s * s;
            let r = poly_eval(&self.r, t).max(0.0).sqrt();
            r * root_dz * u.cos() / ((self.z1 - t).sqrt() * self.omega.eval(t))
        };
        Ok(integrate_adaptive(&f, 0.0, std::f64::consts::FRAC_PI_2, DIST_TOL)?.value)
    }

    /// d(z, z1) for z in the right half: t = z1 - (z1 - z) sin^2 u.
    fn partial_distance_right(&self, z: f64) -> Result<f64> {
        let dz = self.z1 - z;
        if dz == 0.0 {
            return Ok(0.0);
        }
        let root_dz = dz.sqrt();
        let f = |u: f64| {
            let s = u.sin();
            let t = self.z1 - dz * s * s;
            let r = poly_eval(&self.r, t).max(0.0).sqrt();
            r * root_dz * u.cos() / ((t - self.z0).sqrt() * self.omega.eval(t))
        };
        Ok(integrate_adaptive(&f, 0.0, std::f64::consts::FRAC_PI_2, DIST_TOL)?.value)
    }

    /// Inverts d(., pole) on the meridian: the z with d(z, pole) = target.
    pub fn z_at_distance(&self, target: f64, pole: Pole) -> Result<f64> {
        let total = self.meridian_length()?.value;
        if target < 0.0 || target > total {
            return Err(Error::domain(
                "z_at_distance",
                format!("distance {target} outside [0, {total}]"),
            ));
        }
        let (mut lo, mut hi) = (self.z0, self.z1);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let d = self.geodesic_distance_from_pole(mid, pole)?;
            let too_far = d > target;
            let mid_is_right_of_target = match pole {
                Pole::Left => too_far,
                Pole::Right => !too_far,
            };
            if mid_is_right_of_target {
                hi = mid;
            } else {
                lo = mid;
            }
            if (hi - lo) <= 1e-14 * self.span() {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Metric components at (z, theta) with the azimuthal angle suppressed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricAtPoint {
    pub g_zz: f64,
    pub g_theta_theta: f64,
    pub g_phi_phi: f64,
    pub sqrt_g: f64,
}

/// Diagonal metric of the surface of revolution at (z, theta).
pub fn metric_at(profile: &SurfaceProfile, z: f64, theta: f64) -> Result<MetricAtPoint> {
    if theta.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::domain("metric_at", format!("need |theta| < pi/2, got {theta}")));
    }
    let (f, fp, _) = profile.eval_profile(z)?;
    let g_zz = fp * fp + 1.0;
    let g_theta_theta = f * f;
    let ct = theta.cos();
    let g_phi_phi = f * f * ct * ct;
    let sqrt_g = f * f * g_zz.sqrt() * ct;
    Ok(MetricAtPoint { g_zz, g_theta_theta, g_phi_phi, sqrt_g })
}

/// Outcome of the admissibility check of a profile.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub z0_lt_z1: bool,
    /// Minimum of omega over [z0, z1] and its location.
    pub min_omega: f64,
    pub min_omega_at: f64,
    /// Minimum of f over the sampled interior and its location.
    pub min_f_interior: f64,
    pub min_f_at: f64,
    pub violations: Vec<String>,
}

/// Checks the standing assumptions: z0 < z1 and omega > 0 on [z0, z1]
/// (hence f > 0 on the interior). Sampling: 512 uniform points plus every
/// real root of omega' inside the domain, located by sign-change bracketing.
pub fn validate_profile(profile: &SurfaceProfile) -> ValidationReport {
    let z0 = profile.z0();
    let z1 = profile.z1();
    let mut violations = Vec::new();
    let z0_lt_z1 = z0 < z1;
    if !z0_lt_z1 {
        violations.push(format!("z0 = {z0} is not left of z1 = {z1}"));
    }

    let mut candidates: Vec<f64> = (0..=512).map(|i| z0 + (z1 - z0) * i as f64 / 512.0).collect();
    // stationary points of omega catch dips between uniform samples
    let omega_d1 = profile.omega().derivative();
    if omega_d1.degree() > 0 || omega_d1.coefficients()[0] != 0.0 {
        let n_scan = 512;
        let mut prev_z = z0;
        let mut prev_v = omega_d1.eval(prev_z);
        for i in 1..=n_scan {
            let z = z0 + (z1 - z0) * i as f64 / n_scan as f64;
            let v = omega_d1.eval(z);
            if prev_v == 0.0 {
                candidates.push(prev_z);
            } else if prev_v.signum() != v.signum() {
                if let Ok(root) = crate::num::roots::bisect(&|x| omega_d1.eval(x), prev_z, z, 1e-13) {
                    candidates.push(root);
                }
            }
            prev_z = z;
            prev_v = v;
        }
    }

    let mut min_omega = f64::INFINITY;
    let mut min_omega_at = z0;
    for &z in &candidates {
        let v = profile.omega().eval(z);
        if v < min_omega {
            min_omega = v;
            min_omega_at = z;
        }
    }
    if min_omega <= 0.0 {
        violations.push(format!("omega(z) = {min_omega:.6e} <= 0 near z = {min_omega_at:.6}"));
    }

    let mut min_f = f64::INFINITY;
    let mut min_f_at = z0;
    for &z in &candidates {
        if z <= z0 || z >= z1 {
            continue;
        }
        let v = profile.f(z).unwrap_or(f64::NEG_INFINITY);
        if v < min_f {
            min_f = v;
            min_f_at = z;
        }
    }
    if min_f <= 0.0 {
        violations.push(format!("f(z) = {min_f:.6e} <= 0 near z = {min_f_at:.6}"));
    }

    ValidationReport {
        pass: violations.is_empty(),
        z0_lt_z1,
        min_omega,
        min_omega_at,
        min_f_interior: min_f,
        min_f_at,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn tilted() -> SurfaceProfile {
        SurfaceProfile::new(-1.0, 1.0, ProfilePolynomial::new(vec![1.0, 0.3]).unwrap()).unwrap()
    }

    #[test]
    fn sphere_profile_closed_forms() {
        let s = SurfaceProfile::unit_sphere();
        let (f, fp, fpp) = s.eval_profile(0.0).unwrap();
        assert_abs_diff_eq!(f, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fp, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fpp, -1.0, epsilon = 1e-15);

        let (f, fp, fpp) = s.eval_profile(0.6).unwrap();
        assert_abs_diff_eq!(f, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(fp, -0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(fpp, -1.953125, epsilon = 1e-12);
    }

    #[test]
    fn derivative_matches_central_difference() {
        // finite-difference oracle, step 1e-5
        let p = tilted();
        let z = 0.25;
        let h = 1e-5;
        let (_, fp, fpp) = p.eval_profile(z).unwrap();
        let fd1 = (p.f(z + h).unwrap() - p.f(z - h).unwrap()) / (2.0 * h);
        let fd2 = (p.f(z + h).unwrap() - 2.0 * p.f(z).unwrap() + p.f(z - h).unwrap()) / (h * h);
        assert_abs_diff_eq!(fp, fd1, epsilon = 1e-8);
        assert_abs_diff_eq!(fpp, fd2, epsilon = 1e-5);
    }

    #[test]
    fn derivatives_rejected_at_poles() {
        let s = SurfaceProfile::unit_sphere();
        assert!(s.eval_profile(-1.0).is_err());
        assert!(s.eval_profile(1.0).is_err());
        assert!(s.f(-1.0).unwrap() == 0.0);
    }

    #[test]
    fn profile_recomputation_identity() {
        let p = tilted();
        for i in 1..40 {
            let z = -1.0 + 2.0 * i as f64 / 40.0;
            let direct = ((1.0 - z) * (z + 1.0)).sqrt() * (1.0 + 0.3 * z);
            assert_relative_eq!(p.f(z).unwrap(), direct, max_relative = 1e-14);
        }
    }

    #[test]
    fn metric_on_sphere() {
        let s = SurfaceProfile::unit_sphere();
        let m = metric_at(&s, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(m.g_zz, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.g_theta_theta, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.g_phi_phi, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.sqrt_g, 1.0, epsilon = 1e-14);

        let m = metric_at(&s, 0.6, 0.0).unwrap();
        assert_abs_diff_eq!(m.g_theta_theta, 0.64, epsilon = 1e-14);
        assert_abs_diff_eq!(m.g_zz, 1.5625, epsilon = 1e-12);
    }

    #[test]
    fn metric_composes_from_eval_profile() {
        let p = tilted();
        let theta = std::f64::consts::FRAC_PI_6;
        let m = metric_at(&p, 0.0, theta).unwrap();
        let (f, fp, _) = p.eval_profile(0.0).unwrap();
        assert_relative_eq!(m.sqrt_g, f * f * (fp * fp + 1.0).sqrt() * theta.cos(), max_relative = 1e-14);
        assert!(metric_at(&p, 1.5, 0.0).is_err());
    }

    #[test]
    fn sphere_distances() {
        let s = SurfaceProfile::unit_sphere();
        let half = s.geodesic_distance_from_pole(0.0, Pole::Left).unwrap();
        assert_relative_eq!(half, std::f64::consts::FRAC_PI_2, max_relative = 1e-11);
        let full = s.geodesic_distance_from_pole(1.0, Pole::Left).unwrap();
        assert_relative_eq!(full, std::f64::consts::PI, max_relative = 1e-11);
        // closed form: acos(0.99)
        let near = s.geodesic_distance_from_pole(-0.99, Pole::Left).unwrap();
        assert_relative_eq!(near, 0.141539473324427, max_relative = 1e-10);
        // near-pole law d ~ a0 sqrt(z - z0), a0 = sqrt(2)
        let a0 = s.pole_coefficient(Pole::Left);
        assert_abs_diff_eq!(a0, 2.0f64.sqrt(), epsilon = 1e-15);
        assert!((near / (a0 * 0.01f64.sqrt()) - 1.0).abs() < 5e-3);
    }

    #[test]
    fn meridian_symmetry() {
        for p in [SurfaceProfile::unit_sphere(), tilted()] {
            let l_left = p.geodesic_distance_from_pole(p.z1(), Pole::Left).unwrap();
            let l_right = p.geodesic_distance_from_pole(p.z0(), Pole::Right).unwrap();
            assert_relative_eq!(l_left, l_right, max_relative = 1e-9);
            assert_relative_eq!(l_left, p.meridian_length().unwrap().value, max_relative = 1e-11);
        }
    }

    #[test]
    fn near_pole_asymptote_improves() {
        let p = tilted();
        let a0 = p.pole_coefficient(Pole::Left);
        let mut prev_err = f64::INFINITY;
        for dz in [1e-4, 1e-6] {
            let d = p.geodesic_distance_from_pole(-1.0 + dz, Pole::Left).unwrap();
            let err = (d / (a0 * dz.sqrt()) - 1.0).abs();
            assert!(err < 1e-2, "ratio error {err} at dz = {dz}");
            assert!(err < prev_err);
            prev_err = err;
        }
    }

    #[test]
    fn distance_inversion_roundtrip() {
        let p = tilted();
        let l = p.meridian_length().unwrap().value;
        for frac in [0.1, 0.35, 0.6, 0.9] {
            let z = p.z_at_distance(frac * l, Pole::Left).unwrap();
            let d = p.geodesic_distance_from_pole(z, Pole::Left).unwrap();
            assert_relative_eq!(d, frac * l, max_relative = 1e-9);
        }
    }

    #[test]
    fn validation_examples() {
        assert!(validate_profile(&SurfaceProfile::unit_sphere()).pass);

        let r = validate_profile(&tilted());
        assert!(r.pass);
        assert_abs_diff_eq!(r.min_omega, 0.7, epsilon = 1e-12);

        // omega = z vanishes at 0
        let bad = SurfaceProfile::new(-1.0, 1.0, ProfilePolynomial::new(vec![0.0, 1.0]).unwrap()).unwrap();
        let r = validate_profile(&bad);
        assert!(!r.pass);
        assert!(r.min_omega <= 0.0);
        assert!(r.min_omega_at <= 0.0 + 1e-2 || r.min_omega_at >= -1.0);
    }

    #[test]
    fn polynomial_constructor_contracts() {
        assert!(ProfilePolynomial::new(vec![]).is_err());
        assert!(ProfilePolynomial::new(vec![1.0, 0.0]).is_err());
        assert!(ProfilePolynomial::new(vec![0.5]).is_ok());
    }

    #[test]
    fn compensated_horner_high_degree() {
        // degree 12 with alternating coefficients; compare against Horner in
        // f64 at a benign point, they must agree closely
        let coeffs: Vec<f64> = (0..13).map(|i| if i % 2 == 0 { 1.0 } else { -0.5 }).collect();
        let p = ProfilePolynomial::new(coeffs.clone()).unwrap();
        let direct = poly_eval(&coeffs, 0.37);
        assert_relative_eq!(p.eval(0.37), direct, max_relative = 1e-13);
    }
}
