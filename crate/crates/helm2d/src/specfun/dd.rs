//! Double-double ("compensated") arithmetic.
//!
//! The power/logarithmic series for cylinder functions cancel catastrophically
//! for moderate |z| (the largest term is ~e^|z| while the result can be O(1)
//! or smaller), so the series accumulators carry ~31 significant digits as an
//! unevaluated sum hi + lo of two doubles. Only the error-free transforms
//! below are used, so the pair stays a faithful 106-bit value.
//!
//! `two_prod` relies on `f64::mul_add` being a *fused* multiply-add; that is
//! guaranteed by IEEE semantics of `mul_add` whether it lowers to a hardware
//! instruction or the (slow but exact) libm fallback.

/// Error-free sum: returns (s, e) with s = fl(a+b) and a + b = s + e exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product: a*b = p + e exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest double.
    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi, lo }
    }

    /// Quotient by an exactly representable double (used for factorial-type
    /// term ratios, so b is an integer well below 2^53).
    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p1, p2) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p1);
        let q2 = (s + (e + self.lo - p2)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    /// Full double-double division.
    #[inline]
    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul_f64(q2));
        let q3 = r.hi / b.hi;
        Dd::from_f64(q1).add_f64(q2).add_f64(q3)
    }

    /// 1/b to double-double accuracy.
    #[inline]
    pub fn recip_f64(b: f64) -> Dd {
        Dd::ONE.div_f64(b)
    }

    /// √self for self > 0: f64 seed plus one Newton step carried in
    /// double-double, which squares the seed's relative error.
    #[inline]
    pub fn sqrt(self) -> Dd {
        let s = self.hi.sqrt();
        self.div_f64(s).add_f64(s).mul_f64(0.5)
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };

    #[inline]
    pub fn new(re: Dd, im: Dd) -> Cdd {
        Cdd { re, im }
    }

    #[inline]
    pub fn from_c64(z: num_complex::Complex64) -> Cdd {
        Cdd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    #[inline]
    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.value(), self.im.value())
    }

    /// Rough magnitude (hi parts only) for convergence tests.
    #[inline]
    pub fn mag(self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }

    #[inline]
    pub fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    #[inline]
    pub fn sub(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    #[inline]
    pub fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    pub fn mul_dd(self, s: Dd) -> Cdd {
        Cdd { re: self.re.mul(s), im: self.im.mul(s) }
    }

    #[inline]
    pub fn mul_f64(self, s: f64) -> Cdd {
        Cdd { re: self.re.mul_f64(s), im: self.im.mul_f64(s) }
    }

    #[inline]
    pub fn div_f64(self, s: f64) -> Cdd {
        Cdd { re: self.re.div_f64(s), im: self.im.div_f64(s) }
    }

    /// 1/z for an exact double-precision complex z.
    #[inline]
    pub fn recip_c64(z: num_complex::Complex64) -> Cdd {
        let (r2, e2) = two_prod(z.re, z.re);
        let (i2, f2) = two_prod(z.im, z.im);
        let d = Dd::new(r2, e2).add(Dd::new(i2, f2));
        Cdd {
            re: Dd::from_f64(z.re).div(d),
            im: Dd::from_f64(-z.im).div(d),
        }
    }

    /// 1/self in full double-double arithmetic.
    #[inline]
    pub fn recip(self) -> Cdd {
        let d = self.re.mul(self.re).add(self.im.mul(self.im));
        Cdd { re: self.re.div(d), im: self.im.neg().div(d) }
    }

    /// Principal square root, valid for Re(self) > 0 (the only case the
    /// callers need).  Uses x = √((r + a)/2), y = b/(2x) with r = |self|,
    /// which is well conditioned in the right half plane.
    pub fn sqrt_right_half(self) -> Cdd {
        let r = self.re.mul(self.re).add(self.im.mul(self.im)).sqrt();
        let x = r.add(self.re).mul_f64(0.5).sqrt();
        let y = self.im.div(x).mul_f64(0.5);
        Cdd { re: x, im: y }
    }

    /// Principal logarithm, valid for Re(self) >= 1 (callers pass arguments
    /// with real part at least 1 and modulus at most ~10).
    ///
    /// Algorithm: four successive square roots pull the argument close to 1
    /// while staying in the right half plane, so the principal branch is
    /// preserved and no argument reduction is needed.  Then with
    /// t = (u - 1)/(u + 1) the atanh series ln u = 2 Σ_{k odd} t^k / k
    /// converges geometrically (|t| ≲ 0.09 after the reductions), and the
    /// final result is scaled back by 2^4.
    pub fn ln_right_half(self) -> Cdd {
        let mut u = self;
        for _ in 0..4 {
            u = u.sqrt_right_half();
        }
        let num = u.sub(Cdd::ONE);
        let den = u.add(Cdd::ONE);
        let t = num.mul(den.recip());
        let t2 = t.mul(t);
        let mut term = t;
        let mut sum = t;
        for k in 1..40u32 {
            term = term.mul(t2);
            let contrib = term.div_f64((2 * k + 1) as f64);
            sum = sum.add(contrib);
            if contrib.mag() < 1e-34 * sum.mag() {
                break;
            }
        }
        sum.mul_f64(32.0)
    }
}
