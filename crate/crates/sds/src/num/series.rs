//! Polynomial coefficient arithmetic and truncated power series, used to
//! build Frobenius data at the regular singular points.
//!
//! Coefficient vectors are ascending: `c[0] + c[1] x + c[2] x^2 + ...`.

/// Multiplies two coefficient vectors exactly (full product).
pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Derivative of a coefficient vector.
pub fn poly_derive(a: &[f64]) -> Vec<f64> {
    if a.len() <= 1 {
        return vec![0.0];
    }
    a.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect()
}

/// Evaluates by Horner's rule.
pub fn poly_eval(a: &[f64], x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Taylor-shifts coefficients: returns b with sum b_k t^k = sum a_k (c + t)^k.
pub fn poly_shift(a: &[f64], c: f64) -> Vec<f64> {
    // repeated synthetic division by (x - c), in place
    let mut out = a.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let w = c * out[j + 1];
            out[j] += w;
        }
    }
    out
}

/// Flips the argument sign: a(x) -> a(-x).
pub fn poly_flip(a: &[f64]) -> Vec<f64> {
    a.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { -c } else { c }).collect()
}

/// Truncated power series product of length `len`.
pub fn series_mul(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for i in 0..a.len().min(len) {
        for j in 0..b.len().min(len - i) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Truncated power series quotient a/b of length `len`; b[0] must be nonzero.
pub fn series_div(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    assert!(b[0] != 0.0, "series division by a series with zero constant term");
    let mut out = vec![0.0; len];
    for n in 0..len {
        let mut acc = if n < a.len() { a[n] } else { 0.0 };
        for k in 1..=n.min(b.len() - 1) {
            acc -= b[k] * out[n - k];
        }
        out[n] = acc / b[0];
    }
    out
}

/// Truncated linear combination a + s*b.
pub fn series_axpy(a: &[f64], s: f64, b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, o) in out.iter_mut().enumerate() {
        let av = if i < a.len() { a[i] } else { 0.0 };
        let bv = if i < b.len() { b[i] } else { 0.0 };
        *o = av + s * bv;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matches_direct_expansion() {
        // (x+2)^2 + 3 = x^2 + 4x + 7 shifted by c=2 from a(x) = x^2 + 3
        let a = [3.0, 0.0, 1.0];
        let s = poly_shift(&a, 2.0);
        assert_eq!(s, vec![7.0, 4.0, 1.0]);
    }

    #[test]
    fn series_div_inverts_mul() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [2.0, -1.0, 0.5];
        let prod = series_mul(&a, &b, 6);
        let back = series_div(&prod, &b, 4);
        for (x, y) in back.iter().zip(a.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn flip_negates_odd_terms() {
        assert_eq!(poly_flip(&[1.0, 2.0, 3.0]), vec![1.0, -2.0, 3.0]);
    }
}
