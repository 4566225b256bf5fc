//! Bracketed scalar root finding: bisection, Brent, and safeguarded Newton.

use crate::error::{Error, Result};

/// Plain bisection to a relative x-tolerance. The bracket must change sign.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, rel_tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::numerical("bisect", format!("no sign change on [{a:.6e}, {b:.6e}]")));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || (b - a).abs() <= rel_tol * m.abs().max(1e-300) {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Brent's method (inverse quadratic interpolation with bisection fallback).
pub fn brent<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, rel_tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::numerical("brent", format!("no sign change on [{a:.6e}, {b:.6e}]")));
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut mflag = true;
    let mut d = c;
    for _ in 0..200 {
        let tol = rel_tol * b.abs().max(1e-300);
        if fb == 0.0 || (b - a).abs() <= tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let cond1 = !((s > lo.min(b) && s < lo.max(b)) || (s > b.min(lo) && s < b.max(lo)));
        let cond2 = mflag && (s - b).abs() >= (b - c).abs() / 2.0;
        let cond3 = !mflag && (s - b).abs() >= (c - d).abs() / 2.0;
        let cond4 = mflag && (b - c).abs() < tol;
        let cond5 = !mflag && (c - d).abs() < tol;
        if cond1 || cond2 || cond3 || cond4 || cond5 {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa.signum() != fs.signum() {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Ok(b)
}

/// Newton iteration constrained to a sign-changing bracket; falls back to
/// bisection whenever the Newton step leaves the bracket. Converges on the
/// residual |f| rather than the step size.
pub fn newton_bracketed<F, D>(f: &F, df: &D, a: f64, b: f64, residual_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut lo = a;
    let mut hi = b;
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::numerical("newton_bracketed", format!("no sign change on [{a:.6e}, {b:.6e}]")));
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..120 {
        let fx = f(x);
        if fx.abs() <= residual_tol {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let dfx = df(x);
        let step = if dfx != 0.0 { fx / dfx } else { f64::INFINITY };
        let xn = x - step;
        x = if xn.is_finite() && xn > lo.min(hi) && xn < lo.max(hi) { xn } else { 0.5 * (lo + hi) };
    }
    Err(Error::numerical("newton_bracketed", format!("residual tolerance {residual_tol:.1e} not reached")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cos_root() {
        let r = brent(&|x: f64| x.cos(), 1.0, 2.0, 1e-14).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn newton_hits_residual_tolerance() {
        let f = |x: f64| x * x - 2.0;
        let df = |x: f64| 2.0 * x;
        let r = newton_bracketed(&f, &df, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2.0f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_unbracketed_input() {
        assert!(bisect(&|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }
}
