//! Closed-form limit densities for `r = 2` and support endpoints.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use quadrature::double_exponential;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::rat::{pow, to_f64};

const QUAD_TOL: f64 = 1e-13;
const PREC: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Kind {
    /// Jacobi-Piñeiro Type I, `θ = n_1/|n|`, support `[-c*, 0]`.
    JacobiTypeOne,
    /// Jacobi-Piñeiro Type II, support `[0, 1]`.
    JacobiTypeTwo,
}

/// Limit density of a two-component Jacobi-Piñeiro family with constant parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityModel {
    kind: Kind,
    pub theta: f64,
    pub lo: f64,
    pub hi: f64,
    /// `ν = (1/θ)(1/θ - 1)` for Type I, `θ(1-θ)` for Type II.
    pub nu: f64,
    pub kappa: f64,
    /// Length of the support; infinite on the Type I diagonal.
    pub c_star: f64,
    pub c_star_exact: Option<Rational>,
    prefactor: f64,
}

impl DensityModel {
    pub fn jp_type_one_r2(theta: &Rational) -> Result<Self> {
        let t = to_f64(theta);
        if *theta <= 0 || *theta > Rational::from((1, 2)) {
            return Err(Error::ThetaOutOfRange(t));
        }
        let nu = (1.0 / t) * (1.0 / t - 1.0);
        let (c_star, exact, kappa) = if *theta == Rational::from((1, 2)) {
            (f64::INFINITY, None, 1.0)
        } else {
            let c = jp_type_one_c_star(theta)?;
            let cf = to_f64(&c);
            (cf, Some(c), 1.0 + 1.0 / cf)
        };
        Ok(DensityModel {
            kind: Kind::JacobiTypeOne,
            theta: t,
            lo: -c_star,
            hi: 0.0,
            nu,
            kappa,
            c_star,
            c_star_exact: exact,
            prefactor: 3f64.sqrt() / (2.0 * PI) * (nu / 2.0).cbrt(),
        })
    }

    pub fn jp_type_two_r2(theta: &Rational) -> Result<Self> {
        let t = to_f64(theta);
        if *theta <= 0 || *theta > Rational::from((1, 2)) {
            return Err(Error::ThetaOutOfRange(t));
        }
        let p = t * (1.0 - t);
        let kappa = 4.0 * (1.0 - p).powi(3) / (27.0 * p * p);
        Ok(DensityModel {
            kind: Kind::JacobiTypeTwo,
            theta: t,
            lo: 0.0,
            hi: 1.0,
            nu: p,
            kappa,
            c_star: 1.0,
            c_star_exact: Some(Rational::from(1)),
            prefactor: 3f64.sqrt() / (2.0 * PI) * (p / 2.0).cbrt(),
        })
    }

    /// Density at `x`; zero outside the open support.
    pub fn density(&self, x: f64) -> f64 {
        match self.kind {
            Kind::JacobiTypeOne if x < 0.0 && -x < self.c_star => self.f(-x, self.c_star + x),
            Kind::JacobiTypeTwo if x > 0.0 && x < 1.0 => self.f(x, 1.0 - x),
            _ => 0.0,
        }
    }

    /// Leading coefficient of the `|x|^{-2/3}` singularity at the origin.
    pub fn origin_coefficient(&self) -> f64 {
        3f64.sqrt() * self.nu.cbrt() / (2.0 * PI)
    }

    /// Limit of `density · √(1-x)` at `x → 1` (Type II only).
    pub fn edge_coefficient(&self) -> Option<f64> {
        (self.kind == Kind::JacobiTypeTwo).then(|| (1.0 - self.nu).sqrt() / PI)
    }

    /// Density in the distance `t` from the origin, with `rem = L - t` passed
    /// separately to keep precision near the far edge.
    fn f(&self, t: f64, rem: f64) -> f64 {
        self.g(t, rem) / t.powf(2.0 / 3.0)
    }

    /// `f · t^{2/3}`, bounded at `t = 0`.
    fn g(&self, t: f64, rem: f64) -> f64 {
        match self.kind {
            Kind::JacobiTypeOne => {
                let s1 = (1.0 + t).sqrt();
                let (w, diff) = if self.c_star.is_finite() {
                    let w = (rem / self.c_star).sqrt();
                    // (1 + t) - rem/c* = t (1 + 1/c*)
                    (w, t * (1.0 + 1.0 / self.c_star) / (s1 + w))
                } else {
                    (1.0, t / (s1 + 1.0))
                };
                self.prefactor * ((s1 + w).cbrt() - diff.cbrt()) / s1
            }
            Kind::JacobiTypeTwo => {
                let s1 = (1.0 + (self.kappa - 1.0) * t).sqrt();
                let w = rem.sqrt();
                let diff = self.kappa * t / (s1 + w);
                self.prefactor * ((s1 + w).cbrt() + diff.cbrt()) / w
            }
        }
    }

    fn extent(&self) -> f64 {
        match self.kind {
            Kind::JacobiTypeOne => self.c_star,
            Kind::JacobiTypeTwo => 1.0,
        }
    }

    /// `∫ f` over distances `[a, b]` from the origin.
    ///
    /// Near the origin `t = s^3` removes the `t^{-2/3}` singularity; near the
    /// far edge `t = L - v^2` removes the square-root behaviour.
    fn integrate_distance(&self, a: f64, b: f64) -> f64 {
        let big = self.extent();
        let (a, b) = (a.max(0.0), b.min(big));
        if a >= b {
            return 0.0;
        }
        let mid = if big.is_finite() { big / 2.0 } else { 1.0 };
        let mut total = 0.0;
        if a < mid {
            let top = b.min(mid);
            let h = |s: f64| {
                let t = s * s * s;
                3.0 * self.g(t, big - t)
            };
            total += double_exponential::integrate(h, a.cbrt(), top.cbrt(), QUAD_TOL).integral;
        }
        if b > mid {
            let lo = a.max(mid);
            if big.is_finite() {
                let h = |v: f64| {
                    let t = big - v * v;
                    2.0 * v * self.f(t, v * v)
                };
                total += double_exponential::integrate(h, (big - b).sqrt(), (big - lo).sqrt(), QUAD_TOL).integral;
            } else {
                // t = 1/v^2 on the unbounded tail
                let h = |v: f64| if v == 0.0 { 0.0 } else { 2.0 * self.f(1.0 / (v * v), f64::INFINITY) / (v * v * v) };
                let vb = if b.is_finite() { 1.0 / b.sqrt() } else { 0.0 };
                total += double_exponential::integrate(h, vb, 1.0 / lo.sqrt(), QUAD_TOL).integral;
            }
        }
        total
    }

    pub fn mass(&self) -> f64 {
        self.integrate_distance(0.0, self.extent())
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self.kind {
            Kind::JacobiTypeOne => self.integrate_distance((-x).max(0.0), self.extent()),
            Kind::JacobiTypeTwo => self.integrate_distance(0.0, x),
        }
    }
}

/// `27 (θ(1-θ) / ((1-2θ)(2-θ)(1+θ)))^2`.
pub fn jp_type_one_c_star(theta: &Rational) -> Result<Rational> {
    if *theta <= 0 || *theta >= Rational::from((1, 2)) {
        return Err(Error::ThetaOutOfRange(to_f64(theta)));
    }
    let one = Rational::from(1);
    let num = theta * (one.clone() - theta);
    let den = (one.clone() - Rational::from(theta * 2u32)) * (Rational::from(2) - theta) * (one + theta);
    Ok(pow(&(num / den), 2) * 27u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointFamily {
    JpTypeOneR2,
    Ml1TypeOneR2,
    JpTypeTwoR2A,
    JpTypeTwoR2B,
    Ml1TypeTwoR2,
}

impl FromStr for EndpointFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "jp-i-r2" | "jp1-r2" => EndpointFamily::JpTypeOneR2,
            "ml1-i-r2" | "ml1-1-r2" => EndpointFamily::Ml1TypeOneR2,
            "jp-ii-r2-a" | "jp2-r2-a" => EndpointFamily::JpTypeTwoR2A,
            "jp-ii-r2-b" | "jp2-r2-b" => EndpointFamily::JpTypeTwoR2B,
            "ml1-ii-r2" | "ml1-2-r2" => EndpointFamily::Ml1TypeTwoR2,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        })
    }
}

impl fmt::Display for EndpointFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndpointFamily::JpTypeOneR2 => "jp-i-r2",
            EndpointFamily::Ml1TypeOneR2 => "ml1-i-r2",
            EndpointFamily::JpTypeTwoR2A => "jp-ii-r2-a",
            EndpointFamily::JpTypeTwoR2B => "jp-ii-r2-b",
            EndpointFamily::Ml1TypeTwoR2 => "ml1-ii-r2",
        })
    }
}

/// Which end of the support the constant describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Endpoint {
    pub family: EndpointFamily,
    /// Signed position of the endpoint.
    pub value: f64,
    pub exact: Option<Rational>,
    pub side: Side,
    /// The other end of the support.
    pub other: f64,
}

/// Exact square root of a non-negative rational, if it is one.
fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let (n, d) = (x.numer(), x.denom());
    if *n < 0 || !n.is_perfect_square() || !d.is_perfect_square() {
        return None;
    }
    Some(Rational::from((n.clone().sqrt(), d.clone().sqrt())))
}

/// `q = 1 - 3θ(1-θ)` and `g = 9θ(1-θ) - 2 + 2 q^{3/2}`, exact when `√q` is rational.
fn laguerre_core(theta: &Rational) -> (Float, Option<Rational>) {
    let one = Rational::from(1);
    let p = theta * (one.clone() - theta);
    let q = one - Rational::from(&p * 3u32);
    let base = Rational::from(&p * 9u32) - 2u32;
    let exact = rational_sqrt(&q).map(|s| base.clone() + Rational::from(&q * &s) * 2u32);
    let qf = Float::with_val(PREC, &q);
    let approx = Float::with_val(PREC, &base) + Float::with_val(PREC, qf.pow(Float::with_val(PREC, 1.5))) * 2u32;
    (approx, exact)
}

fn check_open_half(theta: &Rational) -> Result<()> {
    if *theta <= 0 || *theta >= 1 {
        return Err(Error::ThetaOutOfRange(to_f64(theta)));
    }
    Ok(())
}

/// Closed-form support endpoint of an `r = 2` family.
///
/// `param` is `θ` for the Type I families and the Laguerre Type II family, `A`
/// for `JpTypeTwoR2A` and `B` for `JpTypeTwoR2B`.
pub fn endpoint(family: EndpointFamily, param: &Rational) -> Result<Endpoint> {
    let one = Rational::from(1);
    let mk = |value: f64, exact: Option<Rational>, side: Side, other: f64| Endpoint { family, value, exact, side, other };
    match family {
        EndpointFamily::JpTypeOneR2 => {
            let c = jp_type_one_c_star(param)?;
            Ok(mk(-to_f64(&c), Some(-c), Side::Left, 0.0))
        }
        EndpointFamily::Ml1TypeOneR2 => {
            if *param <= 0 || *param >= Rational::from((1, 2)) {
                return Err(Error::ThetaOutOfRange(to_f64(param)));
            }
            let (g, exact) = laguerre_core(param);
            let den = param * pow(&(one.clone() - Rational::from(param * 2u32)), 2);
            let v = Float::with_val(PREC, &g / Float::with_val(PREC, &den));
            Ok(mk(-v.to_f64(), exact.map(|e| -(e / den)), Side::Left, 0.0))
        }
        EndpointFamily::JpTypeTwoR2A => {
            if *param < 0 {
                return Err(Error::InvalidParameters("A must be non-negative".into()));
            }
            let a = param;
            let v = pow(a, 3) * (a.clone() + 1u32)
                / (pow(&(a.clone() + Rational::from((3, 2))), 3) * (a.clone() + Rational::from((1, 2))));
            Ok(mk(to_f64(&v), Some(v), Side::Left, 1.0))
        }
        EndpointFamily::JpTypeTwoR2B => {
            if *param < 0 {
                return Err(Error::InvalidParameters("B must be non-negative".into()));
            }
            let b = param;
            let v = pow(&(b.clone() + 1u32), 2) * 27u32 / pow(&(Rational::from(b * 2u32) + 3u32), 3);
            Ok(mk(to_f64(&v), Some(v), Side::Right, 0.0))
        }
        EndpointFamily::Ml1TypeTwoR2 => {
            check_open_half(param)?;
            let (g, exact) = laguerre_core(param);
            let num = pow(&(param * (one - param)), 2) * 27u32;
            let v = Float::with_val(PREC, Float::with_val(PREC, &num) / &g);
            Ok(mk(v.to_f64(), exact.map(|e| num / e), Side::Right, 0.0))
        }
    }
}
