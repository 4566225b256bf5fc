//! Double-double arithmetic (an unevaluated sum of two f64, ~32 significant
//! digits). Used where ascending power series suffer catastrophic
//! cancellation, e.g. Bessel series at moderate argument.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// pi to double-double precision.
    pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
    /// Euler-Mascheroni constant to double-double precision.
    pub const EULER_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    #[inline]
    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        let e = e + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> Dd {
        self.div(Dd::from_f64(rhs))
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_tracks_roundoff() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(1e-20);
        let s = a.add(b);
        assert_eq!(s.hi, 1.0);
        assert_eq!(s.lo, 1e-20);
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = Dd::from_f64(3.0).div_f64(7.0);
        let b = a.mul_f64(7.0);
        assert!((b.to_f64() - 3.0).abs() < 1e-30);
    }

    #[test]
    fn pi_constant_is_consistent() {
        // hi is the f64 nearest pi, lo the residual
        assert_eq!(Dd::PI.hi, std::f64::consts::PI);
        assert!(Dd::PI.lo.abs() < f64::EPSILON);
    }
}
