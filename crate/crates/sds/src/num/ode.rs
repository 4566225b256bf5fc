//! Adaptive Dormand-Prince 5(4) integrator for small fixed-dimension systems.

use crate::error::{Error, Result};

/// Integration options.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    /// Initial step size guess; sign is taken from the integration direction.
    pub initial_step: Option<f64>,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { rel_tol: 1e-10, abs_tol: 1e-12, max_steps: 2_000_000, initial_step: None }
    }
}

/// One accepted integration step.
#[derive(Debug, Clone, Copy)]
pub struct OdeSample<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
}

/// Result of an integration run.
#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub t_end: f64,
    pub y_end: [f64; N],
    pub steps: usize,
    /// Accepted-step samples, recorded only when requested.
    pub samples: Vec<OdeSample<N>>,
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates dy/dt = f(t, y) from t0 to t1 (either direction).
///
/// `record` = true stores every accepted step in `samples`; `stops` lists
/// interior points the integrator must land on exactly (they are also
/// recorded). `stops` must be sorted in the direction of integration.
pub fn integrate<const N: usize, F>(
    f: &F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    opts: &OdeOptions,
    record: bool,
    stops: &[f64],
) -> Result<OdeSolution<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let dir = (t1 - t0).signum();
    if dir == 0.0 {
        return Ok(OdeSolution { t_end: t0, y_end: y0, steps: 0, samples: vec![] });
    }
    let span = (t1 - t0).abs();
    let mut h = opts.initial_step.unwrap_or(span / 100.0).abs().min(span) * dir;
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut samples = Vec::new();
    if record {
        samples.push(OdeSample { t, y });
    }
    let mut stop_iter = stops.iter().copied().peekable();
    let mut steps = 0usize;

    while (t1 - t) * dir > 0.0 {
        if steps >= opts.max_steps {
            return Err(Error::numerical("ode_integrate", format!("exceeded {} steps at t = {t:.6e}", opts.max_steps)));
        }
        // do not step past the next mandatory stop or the endpoint
        let mut target = t1;
        while let Some(&s) = stop_iter.peek() {
            if (s - t) * dir <= 1e-14 * span {
                stop_iter.next();
            } else {
                if (s - t1) * dir < 0.0 {
                    target = s;
                }
                break;
            }
        }
        let h_unclamped = h;
        if (t + h - target) * dir > 0.0 {
            h = target - t;
        }
        let h_abs_min = span * 1e-15;
        if h.abs() < h_abs_min {
            return Err(Error::numerical("ode_integrate", format!("step size underflow at t = {t:.6e}")));
        }

        let y2 = add_scaled(&y, &[(h * A21, &k1)]);
        let k2 = f(t + h / 5.0, &y2);
        let y3 = add_scaled(&y, &[(h * A31, &k1), (h * A32, &k2)]);
        let k3 = f(t + 3.0 * h / 10.0, &y3);
        let y4 = add_scaled(&y, &[(h * A41, &k1), (h * A42, &k2), (h * A43, &k3)]);
        let k4 = f(t + 4.0 * h / 5.0, &y4);
        let y5 = add_scaled(&y, &[(h * A51, &k1), (h * A52, &k2), (h * A53, &k3), (h * A54, &k4)]);
        let k5 = f(t + 8.0 * h / 9.0, &y5);
        let y6 = add_scaled(&y, &[(h * A61, &k1), (h * A62, &k2), (h * A63, &k3), (h * A64, &k4), (h * A65, &k5)]);
        let k6 = f(t + h, &y6);
        let ynew = add_scaled(&y, &[(h * B1, &k1), (h * B3, &k3), (h * B4, &k4), (h * B5, &k5), (h * B6, &k6)]);
        let k7 = f(t + h, &ynew);

        // embedded 4th-order error estimate
        let mut err = 0.0f64;
        for i in 0..N {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(ynew[i].abs());
            err += (e / sc) * (e / sc);
        }
        err = (err / N as f64).sqrt();

        if err <= 1.0 {
            t += h;
            y = ynew;
            k1 = k7;
            steps += 1;
            if record {
                samples.push(OdeSample { t, y });
            }
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        // grow from the unclamped step so landing on a stop does not
        // permanently shrink the step size
        h = if err <= 1.0 { h_unclamped * factor } else { h * factor };
    }

    Ok(OdeSolution { t_end: t, y_end: y, steps, samples })
}

fn add_scaled<const N: usize>(y: &[f64; N], terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += c * k[i];
        }
    }
    out
}
