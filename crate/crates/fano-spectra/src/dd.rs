//! Double-double arithmetic (~106-bit mantissa) for the root-polish
//! escalation step. Only the operations the polisher needs are provided.

use num_complex::Complex64;

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
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

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Dd {
        let (p, e) = two_prod(self.hi, other);
        let e = e + self.lo * other;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Division with two refinement steps.
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ONE: CDd = CDd {
        re: Dd { hi: 1.0, lo: 0.0 },
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_c64(z: Complex64) -> CDd {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    #[inline]
    pub fn sub(self, o: CDd) -> CDd {
        CDd {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    #[inline]
    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    pub fn mul_f64(self, s: f64) -> CDd {
        CDd {
            re: self.re.mul_f64(s),
            im: self.im.mul_f64(s),
        }
    }

    pub fn div(self, o: CDd) -> CDd {
        let denom = o.re.mul(o.re).add(o.im.mul(o.im));
        let num = self.mul(CDd {
            re: o.re,
            im: o.im.neg(),
        });
        CDd {
            re: num.re.div(denom),
            im: num.im.div(denom),
        }
    }

    pub fn powu(self, mut exp: u32) -> CDd {
        let mut base = self;
        let mut acc = CDd::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            exp >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_keeps_low_order_bits() {
        // 1e16 + 1 is not representable in f64 but is in double-double.
        let x = Dd::from_f64(1e16).add(Dd::from_f64(1.0));
        assert_eq!(x.hi, 1e16);
        assert_eq!(x.lo, 1.0);
        assert_eq!(x.sub(Dd::from_f64(1e16)).to_f64(), 1.0);
    }

    #[test]
    fn mul_is_exact_for_representable_products() {
        // 3^34 needs 54 bits; hi + lo reconstructs it exactly.
        let three = Dd::from_f64(3.0);
        let mut p = Dd::from_f64(1.0);
        for _ in 0..34 {
            p = p.mul(three);
        }
        let exact: i128 = 3i128.pow(34);
        let reconstructed = p.hi as i128 + p.lo as i128;
        assert_eq!(reconstructed, exact);
    }

    #[test]
    fn div_roundtrips() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(3.0);
        let q = a.div(b);
        let back = q.mul(b);
        assert!((back.to_f64() - 1.0).abs() < 1e-30);
        assert!(back.sub(Dd::from_f64(1.0)).hi.abs() < 1e-30);
    }

    #[test]
    fn complex_powu_matches_f64_at_low_precision() {
        let z = Complex64::new(0.93, 0.41);
        let zd = CDd::from_c64(z).powu(34);
        let zf = z.powu(34);
        assert!((zd.to_c64() - zf).norm() < 1e-12 * zf.norm());
    }

    #[test]
    fn complex_div_inverse() {
        let z = CDd::from_c64(Complex64::new(1.25, -0.75));
        let w = CDd::ONE.div(z).mul(z);
        assert!((w.to_c64() - Complex64::ONE).norm() < 1e-30);
    }
}
