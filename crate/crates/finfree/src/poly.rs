//! Polynomials of ambient degree `n` stored through their signed elementary
//! symmetric coefficients: `p(x) = sum_j x^(n-j) (-1)^j e_j`.

use std::fmt;

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mp::Cf;
use crate::rat::{binomial, parse_rational, pow};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    e: Vec<Rational>,
}

impl Poly {
    /// Builds from `e_0..e_n`; the ambient degree is `e.len() - 1`.
    pub fn from_e(e: Vec<Rational>) -> Self {
        assert!(!e.is_empty(), "a polynomial needs at least e_0");
        Poly { e }
    }

    /// Builds from monomial coefficients `a_0..a_m` (coefficient of `x^k`), padded to ambient degree `n`.
    pub fn from_monomial(n: usize, a: &[Rational]) -> Self {
        assert!(a.len() <= n + 1, "monomial vector longer than the ambient degree allows");
        let e = (0..=n)
            .map(|j| {
                let k = n - j;
                let c = a.get(k).cloned().unwrap_or_default();
                if j % 2 == 1 { -c } else { c }
            })
            .collect();
        Poly { e }
    }

    pub fn zero(n: usize) -> Self {
        Poly { e: vec![Rational::new(); n + 1] }
    }

    /// `x^n`, the unit of the additive convolution.
    pub fn x_pow(n: usize) -> Self {
        let mut e = vec![Rational::new(); n + 1];
        e[0] = Rational::from(1);
        Poly { e }
    }

    /// `(x - alpha)^n`.
    pub fn linear_power(n: usize, alpha: &Rational) -> Self {
        let e = (0..=n).map(|j| Rational::from(binomial(n, j)) * pow(alpha, j)).collect();
        Poly { e }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        let mut a = vec![Rational::from(1)];
        for root in roots {
            let mut next = vec![Rational::new(); a.len() + 1];
            for (k, c) in a.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= Rational::from(c * root);
            }
            a = next;
        }
        Poly::from_monomial(roots.len(), &a)
    }

    pub fn n(&self) -> usize {
        self.e.len() - 1
    }

    pub fn e(&self) -> &[Rational] {
        &self.e
    }

    pub fn e_j(&self, j: usize) -> &Rational {
        &self.e[j]
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        let n = self.n();
        if k > n {
            return Rational::new();
        }
        let j = n - k;
        if j % 2 == 1 { Rational::from(-&self.e[j]) } else { self.e[j].clone() }
    }

    /// Monomial coefficients `a_0..a_n`.
    pub fn monomial(&self) -> Vec<Rational> {
        (0..=self.n()).map(|k| self.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|c| *c == 0)
    }

    /// Actual degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let n = self.n();
        self.e.iter().position(|c| *c != 0).map(|j| n - j)
    }

    /// Same polynomial viewed at a different ambient degree.
    pub fn with_ambient(&self, m: usize) -> Result<Self> {
        if let Some(d) = self.degree() {
            if d > m {
                return Err(Error::DegreeMismatch { expected: m, got: d });
            }
        }
        Ok(Poly::from_monomial(m, &self.monomial()[..=self.degree().unwrap_or(0).min(m)]))
    }

    /// `alpha^n p(x / alpha)`: `e_j -> alpha^j e_j`.
    pub fn dilate(&self, alpha: &Rational) -> Result<Self> {
        if *alpha == 0 {
            return Err(Error::ZeroDilation);
        }
        let mut s = Rational::from(1);
        let e = self
            .e
            .iter()
            .map(|c| {
                let v = Rational::from(c * &s);
                s *= alpha;
                v
            })
            .collect();
        Ok(Poly { e })
    }

    /// `p(x - alpha)`.
    pub fn shift(&self, alpha: &Rational) -> Self {
        let n = self.n();
        let mut a = self.monomial();
        // Taylor shift by repeated synthetic division.
        let m = -alpha.clone();
        for i in 0..n {
            for k in (i..n).rev() {
                let t = Rational::from(&a[k + 1] * &m);
                a[k] += t;
            }
        }
        Poly::from_monomial(n, &a)
    }

    /// `x^n p(1/x)`: `e_j(p*) = (-1)^n e_(n-j)(p)`.
    pub fn reverse(&self) -> Self {
        let n = self.n();
        let e = (0..=n)
            .map(|j| {
                let c = self.e[n - j].clone();
                if n % 2 == 1 { -c } else { c }
            })
            .collect();
        Poly { e }
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for k in (0..=self.n()).rev() {
            acc *= x;
            acc += self.coeff(k);
        }
        acc
    }

    /// Exact evaluation at `re + i im`.
    pub fn evaluate_complex(&self, re: &Rational, im: &Rational) -> (Rational, Rational) {
        let (mut ar, mut ai) = (Rational::new(), Rational::new());
        for k in (0..=self.n()).rev() {
            let nr = Rational::from(&ar * re) - Rational::from(&ai * im);
            let ni = Rational::from(&ar * im) + Rational::from(&ai * re);
            ar = nr + self.coeff(k);
            ai = ni;
        }
        (ar, ai)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Poly { e: self.e.iter().map(|x| Rational::from(x * c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Result<Self> {
        self.same_n(other)?;
        Ok(Poly { e: self.e.iter().zip(&other.e).map(|(a, b)| Rational::from(a + b)).collect() })
    }

    pub fn sub(&self, other: &Poly) -> Result<Self> {
        self.same_n(other)?;
        Ok(Poly { e: self.e.iter().zip(&other.e).map(|(a, b)| Rational::from(a - b)).collect() })
    }

    /// Ordinary product, ambient degree `n + m`.
    pub fn mul(&self, other: &Poly) -> Self {
        let a = self.monomial();
        let b = other.monomial();
        let mut c = vec![Rational::new(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] += Rational::from(x * y);
            }
        }
        Poly::from_monomial(self.n() + other.n(), &c)
    }

    /// Exact division, failing when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Self> {
        let dd = divisor.degree().ok_or(Error::ZeroLeading)?;
        let mut rem = self.monomial();
        let d = divisor.monomial();
        let lead = d[dd].clone();
        let top = self.degree().unwrap_or(0);
        if top < dd {
            if self.is_zero() {
                return Ok(Poly::zero(self.n().saturating_sub(dd)));
            }
            return Err(Error::InvalidParameters("division leaves a remainder".into()));
        }
        let mut quot = vec![Rational::new(); top - dd + 1];
        for k in (0..=top - dd).rev() {
            let c = Rational::from(&rem[k + dd] / &lead);
            for (i, dv) in d.iter().enumerate().take(dd + 1) {
                rem[k + i] -= Rational::from(&c * dv);
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| *c != 0) {
            return Err(Error::InvalidParameters("division leaves a remainder".into()));
        }
        Ok(Poly::from_monomial(self.n() - dd, &quot))
    }

    pub fn derivative(&self) -> Result<Self> {
        let n = self.n();
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let a = self.monomial();
        let d: Vec<Rational> = (1..=n).map(|k| Rational::from(&a[k] * k as u64)).collect();
        Ok(Poly::from_monomial(n - 1, &d))
    }

    /// Divides by the leading coefficient of the actual degree.
    pub fn monic(&self) -> Result<Self> {
        let d = self.degree().ok_or(Error::ZeroLeading)?;
        let lead = self.coeff(d);
        let p = self.scale(&Rational::from(lead.recip_ref()));
        p.with_ambient(d)
    }

    /// Returns `lambda` with `self = lambda * other`, if it exists and is nonzero.
    pub fn ratio_to(&self, other: &Poly) -> Option<Rational> {
        if self.n() != other.n() {
            return None;
        }
        let j = other.e.iter().position(|c| *c != 0)?;
        let lambda = Rational::from(&self.e[j] / &other.e[j]);
        if lambda == 0 {
            return None;
        }
        self.e
            .iter()
            .zip(&other.e)
            .all(|(a, b)| *a == Rational::from(b * &lambda))
            .then_some(lambda)
    }

    /// `self ≃ other`: equal up to a nonzero scalar.
    pub fn proportional(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero() && self.n() == other.n();
        }
        self.ratio_to(other).is_some()
    }

    pub fn to_float(&self, prec: u32) -> FloatPoly {
        FloatPoly { a: self.monomial().iter().map(|c| Float::with_val(prec, c)).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial literal serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let lit: PolyJson = serde_json::from_str(s)?;
        lit.try_into()
    }

    fn same_n(&self, other: &Poly) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DegreeMismatch { expected: self.n(), got: other.n() });
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..=self.n()).rev() {
            let c = self.coeff(k);
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = Rational::from(c.abs_ref());
            match k {
                0 => write!(f, "{a}")?,
                _ if a == 1 => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The JSON literal `{"n": N, "e": ["p/q", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub e: Vec<String>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson { n: p.n(), e: p.e.iter().map(|c| c.to_string()).collect() }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;
    fn try_from(lit: PolyJson) -> Result<Poly> {
        if lit.e.len() != lit.n + 1 {
            return Err(Error::Parse(format!("expected {} coefficients, found {}", lit.n + 1, lit.e.len())));
        }
        let e = lit.e.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok(Poly { e })
    }
}

/// Monomial-basis polynomial with multiprecision float coefficients, used for
/// root finding and numeric evaluation only.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    a: Vec<Float>,
}

impl FloatPoly {
    pub fn from_monomial(a: Vec<Float>) -> Self {
        assert!(!a.is_empty());
        FloatPoly { a }
    }

    pub fn prec(&self) -> u32 {
        self.a[0].prec()
    }

    pub fn coeffs(&self) -> &[Float] {
        &self.a
    }

    pub fn degree(&self) -> Option<usize> {
        self.a.iter().rposition(|c| !c.is_zero())
    }

    /// Strips vanishing leading coefficients.
    pub fn trimmed(&self) -> Self {
        let d = self.degree().unwrap_or(0);
        FloatPoly { a: self.a[..=d].to_vec() }
    }

    pub fn eval_real(&self, x: &Float) -> Float {
        let p = self.prec();
        let mut acc = Float::new(p);
        for c in self.a.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval(&self, z: &Cf) -> Cf {
        let p = self.prec();
        let mut acc = Cf::zero(p);
        for c in self.a.iter().rev() {
            acc = &acc * z;
            acc.re += c;
        }
        acc
    }

    /// Value and first derivative by Horner.
    pub fn eval_with_derivative(&self, z: &Cf) -> (Cf, Cf) {
        let p = self.prec();
        let mut v = Cf::zero(p);
        let mut d = Cf::zero(p);
        for c in self.a.iter().rev() {
            d = &(&d * z) + &v;
            v = &v * z;
            v.re += c;
        }
        (v, d)
    }

    /// `sum |a_k| |z|^k`, the natural scale of rounding error in Horner evaluation.
    pub fn abs_eval(&self, r: &Float) -> Float {
        let p = self.prec();
        let mut acc = Float::new(p);
        for c in self.a.iter().rev() {
            acc *= r;
            acc += Float::with_val(p, c.abs_ref());
        }
        acc
    }

    /// `p(x - alpha)`.
    pub fn shift(&self, alpha: &Float) -> Self {
        let mut a = self.a.clone();
        let n = a.len() - 1;
        let m = Float::with_val(self.prec(), -alpha);
        for i in 0..n {
            for k in (i..n).rev() {
                let t = Float::with_val(self.prec(), &a[k + 1] * &m);
                a[k] += t;
            }
        }
        FloatPoly { a }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, r};

    fn p_x2_3x_2() -> Poly {
        Poly::from_monomial(2, &[r(2), r(-3), r(1)])
    }

    #[test]
    fn conventions() {
        let p = p_x2_3x_2();
        assert_eq!(p.e(), &[r(1), r(3), r(2)]);
        assert_eq!(Poly::from_roots(&[r(1), r(2)]), p);
        assert_eq!(Poly::linear_power(2, &r(1)), Poly::from_monomial(2, &[r(1), r(-2), r(1)]));
    }

    #[test]
    fn dilate_examples() {
        let p = p_x2_3x_2();
        assert_eq!(p.dilate(&r(1)).unwrap(), p);
        let l = Poly::from_monomial(1, &[r(-1), r(1)]);
        assert_eq!(l.dilate(&r(2)).unwrap(), Poly::from_monomial(1, &[r(-2), r(1)]));
        assert!(matches!(p.dilate(&r(0)), Err(Error::ZeroDilation)));
        assert_eq!(p.dilate(&r(2)).unwrap().dilate(&r(3)).unwrap(), p.dilate(&r(6)).unwrap());
    }

    #[test]
    fn shift_examples() {
        let sq = Poly::from_monomial(2, &[r(0), r(0), r(1)]);
        assert_eq!(sq.shift(&r(1)), Poly::from_monomial(2, &[r(1), r(-2), r(1)]));
        let p = p_x2_3x_2();
        assert_eq!(p.shift(&r(0)), p);
        assert_eq!(p.shift(&r(-1)), Poly::from_monomial(2, &[r(0), r(-1), r(1)]));
    }

    #[test]
    fn reverse_examples() {
        let p = p_x2_3x_2();
        assert_eq!(p.reverse(), Poly::from_monomial(2, &[r(1), r(-3), r(2)]));
        assert_eq!(p.reverse().reverse(), p);
        let c = Poly::from_monomial(3, &[r(-1), r(0), r(0), r(1)]);
        assert_eq!(c.reverse(), Poly::from_monomial(3, &[r(1), r(0), r(0), r(-1)]));
    }

    #[test]
    fn evaluate_examples() {
        let p = p_x2_3x_2();
        assert_eq!(p.evaluate(&r(1)), 0);
        assert_eq!(p.evaluate(&r(0)), 2);
        assert_eq!(p.evaluate_complex(&r(0), &r(1)), (r(1), r(-3)));
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let p = Poly::from_e(vec![r(1), q(-3, 7), q(22, 9), r(0)]);
        let s = p.to_json();
        assert_eq!(s, r#"{"n":3,"e":["1","-3/7","22/9","0"]}"#);
        assert_eq!(Poly::from_json(&s).unwrap(), p);
        assert!(Poly::from_json(r#"{"n":2,"e":["1"]}"#).is_err());
    }

    #[test]
    fn division_and_derivative() {
        let p = Poly::from_roots(&[r(1), r(2), q(1, 3)]);
        let d = Poly::from_roots(&[r(2)]);
        assert_eq!(p.div_exact(&d).unwrap(), Poly::from_roots(&[r(1), q(1, 3)]));
        assert!(p.div_exact(&Poly::from_roots(&[r(5)])).is_err());
        let dp = p_x2_3x_2().derivative().unwrap();
        assert_eq!(dp, Poly::from_monomial(1, &[r(-3), r(2)]));
    }

    #[test]
    fn ambient_degree_and_proportionality() {
        let p = Poly::from_monomial(4, &[r(2), r(-3), r(1)]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.monic().unwrap(), p_x2_3x_2());
        assert!(p.scale(&q(-5, 2)).proportional(&p));
        assert_eq!(p.scale(&q(-5, 2)).ratio_to(&p), Some(q(-5, 2)));
        assert!(!p.proportional(&p.shift(&r(1))));
        assert_eq!(p_x2_3x_2().to_string(), "x^2 - 3*x + 2");
    }

    #[test]
    fn float_backend_matches_exact() {
        let p = Poly::from_roots(&[r(1), q(-2, 3), r(5)]);
        let fp = p.to_float(128);
        let z = Cf::from_f64(128, 0.5, -1.25);
        let (v, _) = fp.eval_with_derivative(&z);
        let (er, ei) = p.evaluate_complex(&q(1, 2), &q(-5, 4));
        assert!(Float::with_val(128, &v.re - &er).abs() < 1e-30);
        assert!(Float::with_val(128, &v.im - &ei).abs() < 1e-30);
        let shifted = fp.shift(&Float::with_val(128, 0.25));
        let x = Float::with_val(128, 1.5);
        let lhs = shifted.eval_real(&x);
        let rhs = fp.eval_real(&Float::with_val(128, &x - 0.25));
        assert!(Float::with_val(128, lhs - rhs).abs() < 1e-30);
    }
}
