//! Minimal double-double arithmetic for compensated evaluation.

use num_complex::Complex64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = fast_two_sum(s, e + self.lo + o.lo);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = fast_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub fn from_c64(z: Complex64) -> Self {
        DdComplex {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn mul_c64(self, z: Complex64) -> Self {
        DdComplex {
            re: self.re.mul_f64(z.re).add(self.im.mul_f64(z.im).neg()),
            im: self.re.mul_f64(z.im).add(self.im.mul_f64(z.re)),
        }
    }

    pub fn add_c64(self, z: Complex64) -> Self {
        DdComplex {
            re: self.re.add(Dd::from_f64(z.re)),
            im: self.im.add(Dd::from_f64(z.im)),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }
}

/// `a / b` by Smith's algorithm, safe when `|b|²` would overflow or underflow.
pub(crate) fn cdiv(a: Complex64, b: Complex64) -> Complex64 {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        Complex64::new((a.re + a.im * r) / d, (a.im - a.re * r) / d)
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        Complex64::new((a.re * r + a.im) / d, (a.im * r - a.re) / d)
    }
}

/// Horner evaluation of `Σ c_k z^k` carried in double-double.
pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = match coeffs.last() {
        Some(&c) => DdComplex::from_c64(c),
        None => return Complex64::new(0.0, 0.0),
    };
    for &c in coeffs.iter().rev().skip(1) {
        acc = acc.mul_c64(z).add_c64(c);
    }
    acc.to_c64()
}

/// `exp(sign · z²)` with the square formed exactly, so the only rounding is
/// in the elementary functions themselves.
pub(crate) fn exp_signed_square(z: Complex64, sign: f64) -> Complex64 {
    let re = Dd::from_product(z.re, z.re).add(Dd::from_product(z.im, z.im).neg());
    let im = Dd::from_product(2.0 * z.re, z.im);
    let (re, im) = (re.mul_f64(sign), im.mul_f64(sign));
    let scale = re.hi.exp() * (1.0 + re.lo);
    let phase = Complex64::new(0.0, im.hi).exp() * Complex64::new(1.0, im.lo);
    phase * scale
}
