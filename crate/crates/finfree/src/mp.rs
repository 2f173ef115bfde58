//! Multiprecision complex numbers over `rug::Float` and the precision schedule.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use rug::{Float, Rational};

pub const MIN_PREC: u32 = 64;
pub const PREC_ENV: &str = "FINFREE_PREC_BITS";

/// 256 bits up to degree 100, then 128 more bits per additional 100 degrees.
/// `FINFREE_PREC_BITS` overrides the schedule.
pub fn default_precision(degree: usize) -> u32 {
    if let Some(p) = env_precision() {
        return p;
    }
    schedule(degree)
}

pub fn schedule(degree: usize) -> u32 {
    let extra = degree.saturating_sub(100).div_ceil(100) as u32;
    256 + 128 * extra
}

pub fn env_precision() -> Option<u32> {
    std::env::var(PREC_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|p| p.max(MIN_PREC))
}

pub fn fl(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x)
}

pub fn flq(prec: u32, x: &Rational) -> Float {
    Float::with_val(prec, x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cf {
    pub re: Float,
    pub im: Float,
}

impl Cf {
    pub fn zero(prec: u32) -> Self {
        Cf { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn new(re: Float, im: Float) -> Self {
        Cf { re, im }
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        Cf { re, im: Float::new(prec) }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Cf { re: fl(prec, re), im: fl(prec, im) }
    }

    pub fn from_c64(prec: u32, z: Complex64) -> Self {
        Self::from_f64(prec, z.re, z.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn conj(&self) -> Self {
        Cf { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        Cf { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        Cf { re: Float::with_val(p, &self.re / &d), im: Float::with_val(p, -(Float::with_val(p, &self.im / &d))) }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &Cf {
    type Output = Cf;
    fn add(self, o: &Cf) -> Cf {
        let p = self.prec();
        Cf { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &Cf {
    type Output = Cf;
    fn sub(self, o: &Cf) -> Cf {
        let p = self.prec();
        Cf { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &Cf {
    type Output = Cf;
    fn mul(self, o: &Cf) -> Cf {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cf { re, im }
    }
}

impl Div for &Cf {
    type Output = Cf;
    fn div(self, o: &Cf) -> Cf {
        let p = self.prec();
        let d = o.norm_sqr();
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        Cf { re: re / &d, im: im / &d }
    }
}

impl Neg for &Cf {
    type Output = Cf;
    fn neg(self) -> Cf {
        let p = self.prec();
        Cf { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_matches_documented_steps() {
        assert_eq!(schedule(10), 256);
        assert_eq!(schedule(100), 256);
        assert_eq!(schedule(101), 384);
        assert_eq!(schedule(299), 512);
        assert_eq!(schedule(900), 1280);
    }

    #[test]
    fn complex_field_ops() {
        let a = Cf::from_f64(128, 1.0, 2.0);
        let b = Cf::from_f64(128, -3.0, 0.5);
        let q = &(&a * &b) / &b;
        assert!((q.to_c64() - Complex64::new(1.0, 2.0)).norm() < 1e-30);
        assert!((a.recip().to_c64() - Complex64::new(0.2, -0.4)).norm() < 1e-30);
        assert_eq!((&a - &a).to_c64(), Complex64::new(0.0, 0.0));
    }
}
