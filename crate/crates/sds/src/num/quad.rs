//! Gauss-Legendre quadrature with panel-doubling error control.
//!
//! All endpoint-singular integrals in this crate are first transformed to
//! analytic integrands (sin^2 substitution in the surface module), so plain
//! Gauss-Legendre converges at spectral rate and panel doubling gives a
//! reliable error estimate.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on Legendre polynomials.
    pub fn new(n: usize) -> GaussLegendre {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev-based initial guess
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_deriv(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, d) = legendre_with_deriv(n, x);
            dp = d;
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
            let (_, d) = legendre_with_deriv(n, 0.0);
            weights[n / 2] = 2.0 / (d * d);
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrates f over [a, b] with a single panel.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: &F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + h * x);
        }
        acc * h
    }
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule32() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(32))
}

/// Integral value with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// Integrates an analytic integrand over [a, b], doubling the panel count
/// until two successive refinements agree to `rel_tol` (relative, with an
/// absolute floor). Errors out if convergence stalls.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<QuadResult> {
    let rule = rule32();
    let mut panels = 1usize;
    let mut prev = rule.integrate(a, b, f);
    for _ in 0..12 {
        panels *= 2;
        let mut acc = 0.0;
        let step = (b - a) / panels as f64;
        for i in 0..panels {
            let x0 = a + step * i as f64;
            acc += rule.integrate(x0, x0 + step, f);
        }
        let err = (acc - prev).abs();
        let scale = acc.abs().max(1e-300);
        if err <= rel_tol * scale + 1e-300 {
            return Ok(QuadResult { value: acc, error_estimate: err });
        }
        prev = acc;
    }
    Err(Error::numerical(
        "integrate_adaptive",
        format!("no convergence after {panels} panels; last correction {:.3e}", prev),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let rule = GaussLegendre::new(8);
        // degree 15 is exact for 8 nodes
        let v = rule.integrate(0.0, 1.0, &|x: f64| x.powi(15));
        assert!((v - 1.0 / 16.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_matches_closed_form() {
        let r = integrate_adaptive(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-13).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!(r.error_estimate < 1e-10);
    }

    #[test]
    fn oscillatory_integrand_converges() {
        let r = integrate_adaptive(&|x: f64| (40.0 * x).cos(), 0.0, 1.0, 1e-12).unwrap();
        let exact = (40.0f64).sin() / 40.0;
        assert!((r.value - exact).abs() < 1e-11);
    }
}
