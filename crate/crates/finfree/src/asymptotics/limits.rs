//! Rational S-transforms of hypergeometric limits and the limit objects of the
//! multiple orthogonal families.

use std::fmt;

use num_complex::Complex64;
use rug::Rational;

use super::curve::{moments_from_curve, AlgebraicCurve};
use super::series::{free_mult, ser_inv, ser_mul, FormalMomentSeries};
use crate::error::{Error, Result};
use crate::mop::Family;
use crate::rat::{pow, to_f64};

/// Violations of the standing assumptions on `(A, B)`; reported, never fatal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    NumeratorInGap { index: usize },
    DenominatorAtMinusOne { index: usize },
    Coincident { numerator: usize, denominator: usize },
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::NumeratorInGap { index } => write!(f, "A[{index}] in [-1,0)"),
            Degeneracy::DenominatorAtMinusOne { index } => write!(f, "B[{index}] = -1"),
            Degeneracy::Coincident { numerator, denominator } => write!(f, "A[{numerator}] = B[{denominator}]"),
        }
    }
}

/// `S(z) = scale · Π (z + A_i + 1) / Π (z + B_j + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSTransform {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub scale: Rational,
}

impl RationalSTransform {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Self {
        RationalSTransform { a, b, scale: Rational::from(1) }
    }

    pub fn with_scale(mut self, scale: Rational) -> Self {
        self.scale = scale;
        self
    }

    pub fn flags(&self) -> Vec<Degeneracy> {
        let mut out = vec![];
        for (i, a) in self.a.iter().enumerate() {
            if *a >= -1 && *a < 0 {
                out.push(Degeneracy::NumeratorInGap { index: i });
            }
        }
        for (j, b) in self.b.iter().enumerate() {
            if *b == -1 {
                out.push(Degeneracy::DenominatorAtMinusOne { index: j });
            }
        }
        for (i, a) in self.a.iter().enumerate() {
            for (j, b) in self.b.iter().enumerate() {
                if a == b {
                    out.push(Degeneracy::Coincident { numerator: i, denominator: j });
                }
            }
        }
        out
    }

    pub fn is_degenerate(&self) -> bool {
        !self.flags().is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalSTransform {
            a: self.a.iter().chain(&o.a).cloned().collect(),
            b: self.b.iter().chain(&o.b).cloned().collect(),
            scale: Rational::from(&self.scale * &o.scale),
        }
    }

    /// Cancels common factors and sorts, so equal functions compare equal.
    pub fn reduced(&self) -> Self {
        let mut a = self.a.clone();
        let mut b = vec![];
        for x in &self.b {
            match a.iter().position(|y| y == x) {
                Some(p) => {
                    a.remove(p);
                }
                None => b.push(x.clone()),
            }
        }
        a.sort();
        b.sort();
        RationalSTransform { a, b, scale: self.scale.clone() }
    }

    pub fn same_function(&self, o: &Self) -> bool {
        self.reduced() == o.reduced()
    }

    /// `S*(w) = 1 / S(-w-1)`, the S-transform of the reversed measure.
    pub fn reversed(&self) -> Self {
        let sign = if (self.a.len() + self.b.len()).is_multiple_of(2) { 1 } else { -1 };
        RationalSTransform {
            a: self.b.iter().map(|x| Rational::from(-x) - 1u32).collect(),
            b: self.a.iter().map(|x| Rational::from(-x) - 1u32).collect(),
            scale: Rational::from(sign) / self.scale.clone(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let num: Complex64 = self.a.iter().map(|a| z + to_f64(a) + 1.0).product();
        let den: Complex64 = self.b.iter().map(|b| z + to_f64(b) + 1.0).product();
        num / den * to_f64(&self.scale)
    }

    /// Taylor coefficients of `S(p z + q)` at `z = 0` up to `z^order`.
    pub fn series_affine(&self, p: &Rational, q: &Rational, order: usize) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::new(); order + 1];
        out[0] = self.scale.clone();
        for a in &self.a {
            let f = [Rational::from(q + a) + 1u32, p.clone()];
            out = ser_mul(&out, &f, order);
        }
        for b in &self.b {
            let f = [Rational::from(q + b) + 1u32, p.clone()];
            if f[0] == 0 {
                return Err(Error::InvalidParameters("S-transform has a pole at the expansion point".into()));
            }
            out = ser_mul(&out, &ser_inv(&f, order)?, order);
        }
        Ok(out)
    }

    pub fn series(&self, order: usize) -> Result<Vec<Rational>> {
        self.series_affine(&Rational::from(1), &Rational::new(), order)
    }

    /// Moments `m_1..m_K` by reverting `M` from the S-series.
    pub fn moments(&self, order: usize) -> Result<Vec<Rational>> {
        if order == 0 {
            return Ok(vec![]);
        }
        Ok(FormalMomentSeries::from_s(&self.series(order - 1)?)?.into_moments())
    }

    /// `y Π (y + B_j) - scale · u (y - 1) Π (y + A_i)` for `y = u G(u)`.
    pub fn curve(&self) -> AlgebraicCurve {
        let lin = |c: &Rational| AlgebraicCurve::linear(Rational::from(1), Rational::new(), c.clone());
        let left = AlgebraicCurve::y().mul(&AlgebraicCurve::product(self.b.iter().map(lin).collect::<Vec<_>>().iter()));
        let right = AlgebraicCurve::u()
            .mul(&lin(&Rational::from(-1)))
            .mul(&AlgebraicCurve::product(self.a.iter().map(lin).collect::<Vec<_>>().iter()))
            .scale(&self.scale);
        left.sub(&right)
    }
}

/// The S-transform of a limit of `F(-n, a_n; b_n; n^{t-s} x)` with `a_n/n → A`, `b_n/n → B`.
pub fn s_limit_hyper(a: &[Rational], b: &[Rational]) -> RationalSTransform {
    RationalSTransform::new(a.to_vec(), b.to_vec())
}

pub fn curve_from_limits(a: &[Rational], b: &[Rational]) -> AlgebraicCurve {
    s_limit_hyper(a, b).curve()
}

/// Relation `F(w, z) = 0` satisfied by `w = S(z)` for the argument `c x + d`.
///
/// Polynomial in `w` (first slot) and `z` (second slot).
pub fn curve_shifted(s: &RationalSTransform, c: &Rational, d: &Rational) -> Result<AlgebraicCurve> {
    if *c == 0 {
        return Err(Error::ZeroScale);
    }
    let (w, z) = (AlgebraicCurve::y(), AlgebraicCurve::u());
    let zw = z.mul(&w);
    let factor = |p: &Rational| {
        // d z w + c (z + 1 + p)
        zw.scale(d).add(&AlgebraicCurve::linear(Rational::new(), c.clone(), c * (Rational::from(p + 1u32))))
    };
    let mut left = w.clone();
    for b in &s.b {
        left = left.mul(&factor(b));
    }
    let mut right = w.scale(d).add(&AlgebraicCurve::constant(c.clone()));
    for a in &s.a {
        right = right.mul(&factor(a));
    }
    // c^{t-s}: move negative powers to the left
    let (t, sn) = (s.b.len(), s.a.len());
    if t >= sn {
        right = right.scale(&pow(c, t - sn));
    } else {
        left = left.scale(&pow(c, sn - t));
    }
    Ok(left.scale(&s.scale.clone().recip()).sub(&right))
}

/// `S(z) · S_rev(-z-1) = 1` to order `z^order`.
pub fn s_reverse_check(s: &RationalSTransform, s_rev: &RationalSTransform, order: usize) -> bool {
    let one = Rational::from(1);
    let (Ok(a), Ok(b)) = (s.series(order), s_rev.series_affine(&-one.clone(), &-one.clone(), order)) else {
        return false;
    };
    let prod = ser_mul(&a, &b, order);
    prod[0] == 1 && prod[1..].iter().all(|x| *x == 0)
}

/// Limit parameters of a family along a ray `n_i / |n| → θ_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitParams {
    /// `α_i / |n| → A_i`; the Laguerre families of the second kind read `a[0]`.
    pub a: Vec<Rational>,
    /// `β / |n| → B`.
    pub beta: Rational,
    pub theta: Vec<Rational>,
    pub c: Vec<Rational>,
    /// One-based index of the Type I component.
    pub i: usize,
}

impl LimitParams {
    /// Parameters independent of `n`: all `A_i = 0`, `B = 0`.
    pub fn constant(theta: Vec<Rational>) -> Self {
        let r = theta.len();
        LimitParams { a: vec![Rational::new(); r], beta: Rational::new(), theta, c: vec![], i: 1 }
    }

    pub fn with_a(mut self, a: Vec<Rational>) -> Self {
        self.a = a;
        self
    }

    pub fn with_beta(mut self, beta: Rational) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_c(mut self, c: Vec<Rational>) -> Self {
        self.c = c;
        self
    }

    pub fn with_index(mut self, i: usize) -> Self {
        self.i = i;
        self
    }

    pub fn r(&self) -> usize {
        self.theta.len()
    }

    fn validate(&self, family: Family) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameters(m.to_string()));
        let r = self.r();
        if r == 0 || self.theta.iter().any(|t| *t <= 0) {
            return bad("θ must be a non-empty vector of positive entries");
        }
        if self.theta.iter().sum::<Rational>() != 1 {
            return bad("θ must sum to one");
        }
        let needs_a = match family {
            Family::Ml2I | Family::Ml2II => 1,
            _ => r,
        };
        if self.a.len() < needs_a || self.a.iter().any(|a| *a < 0) || self.beta < 0 {
            return bad("A must have one non-negative entry per component and B must be non-negative");
        }
        if family.is_type_one() && !(1..=r).contains(&self.i) {
            return bad("component index out of range");
        }
        if matches!(family, Family::Ml2I | Family::Ml2II) {
            if self.c.len() != r || self.c.iter().any(|c| *c <= 0) {
                return bad("c needs one positive entry per component");
            }
            for (j, cj) in self.c.iter().enumerate() {
                if self.c[..j].contains(cj) {
                    return Err(Error::DuplicateC);
                }
            }
        }
        Ok(())
    }
}

/// How the finite polynomials are rescaled before taking the limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scaling {
    None,
    /// `p(n_i x)`.
    Component,
    /// `p(|n| x)`.
    Total,
}

impl Scaling {
    pub fn factor(self, n: &[usize], i: usize) -> usize {
        match self {
            Scaling::None => 1,
            Scaling::Component => n[i - 1],
            Scaling::Total => n.iter().sum(),
        }
    }
}

/// `R(w) = Σ ρ_j / (w - s_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleSum {
    pub terms: Vec<(Rational, Rational)>,
}

impl PoleSum {
    /// Free cumulants `κ_1..κ_K`.
    pub fn cumulants(&self, order: usize) -> Vec<Rational> {
        (0..order)
            .map(|k| {
                self.terms
                    .iter()
                    .map(|(rho, s)| -(rho / pow(s, k + 1)))
                    .sum()
            })
            .collect()
    }
}

/// Limit object of one family.
#[derive(Clone, Debug)]
pub struct FamilyLimit {
    pub family: Family,
    /// Relation for `y = u G(u)` of the limit of the rescaled zero measures.
    pub curve: AlgebraicCurve,
    /// Rational S-transform, when the family has one; for the Jacobi Type II
    /// family this belongs to the mixture `(B δ_0 + μ) / (1 + B)`.
    pub s_transform: Option<RationalSTransform>,
    /// R-transform of a free-additive factor and an S-factor applied after it.
    pub r_transform: Option<(PoleSum, Option<RationalSTransform>)>,
    pub scaling: Scaling,
    pub flags: Vec<Degeneracy>,
    beta: Rational,
}

impl FamilyLimit {
    pub fn moments(&self, order: usize) -> Result<Vec<Rational>> {
        moments_from_curve(&self.curve, order)
    }

    /// The same moments through the transform data instead of the curve.
    pub fn moments_via_transform(&self, order: usize) -> Result<Vec<Rational>> {
        if let Some(s) = &self.s_transform {
            let m = s.moments(order)?;
            let mix = Rational::from(1) + &self.beta;
            return Ok(m.into_iter().map(|x| x * &mix).collect());
        }
        if let Some((r, post)) = &self.r_transform {
            let m = FormalMomentSeries::from_r(&r.cumulants(order));
            return match post {
                Some(s) => {
                    let f = FormalMomentSeries::new(s.moments(order)?);
                    Ok(free_mult(&m, &f)?.into_moments())
                }
                None => Ok(m.into_moments()),
            };
        }
        Err(Error::InvalidParameters(format!("no transform data for {}", self.family)))
    }
}

fn lin_y(c: Rational) -> AlgebraicCurve {
    AlgebraicCurve::linear(Rational::from(1), Rational::new(), c)
}

/// Limit S-transform, curve or R-data of a multiple orthogonal family.
pub fn family_curves(family: Family, p: &LimitParams) -> Result<FamilyLimit> {
    p.validate(family)?;
    let r = p.r();
    let one = || Rational::from(1);
    let mut out = FamilyLimit {
        family,
        curve: AlgebraicCurve::zero(),
        s_transform: None,
        r_transform: None,
        scaling: Scaling::None,
        flags: vec![],
        beta: Rational::new(),
    };
    match family {
        Family::JpI | Family::Ml1I => {
            let i = p.i - 1;
            let (ai, ti) = (&p.a[i], &p.theta[i]);
            let mut a = vec![];
            let mut b = vec![];
            for j in 0..r {
                if j == i {
                    if family == Family::JpI {
                        a.push(Rational::from(ai + &p.beta) + 1u32);
                    }
                    b.push(ai.clone());
                } else {
                    a.push(Rational::from(ai - &p.a[j]) - &p.theta[j]);
                    b.push(Rational::from(ai - &p.a[j]));
                }
            }
            let s = RationalSTransform::new(
                a.into_iter().map(|x| x / ti.clone()).collect(),
                b.into_iter().map(|x| x / ti.clone()).collect(),
            );
            out.curve = s.curve();
            out.flags = s.flags();
            out.s_transform = Some(s);
            if family == Family::Ml1I {
                out.scaling = Scaling::Component;
            }
        }
        Family::JpII => {
            let mix = one() + &p.beta;
            let s = RationalSTransform::new(
                (0..r).map(|j| Rational::from(&p.a[j] + &p.theta[j]) / mix.clone()).collect(),
                (0..r).map(|j| p.a[j].clone() / mix.clone()).collect(),
            );
            out.curve = s.curve().subst_y(&(one() / mix.clone()), &(p.beta.clone() / mix.clone()));
            out.flags = s.flags();
            out.s_transform = Some(s);
            out.beta = p.beta.clone();
        }
        Family::Ml1II => {
            let (y, u) = (AlgebraicCurve::y(), AlgebraicCurve::u());
            let mut left = u.clone();
            let mut right = u.sub(&y);
            for j in 0..r {
                let base = y.sub(&u);
                left = left.mul(&base.add(&AlgebraicCurve::constant(Rational::from(&p.a[j] + &p.theta[j]))));
                right = right.mul(&base.add(&AlgebraicCurve::constant(p.a[j].clone())));
            }
            out.curve = left.sub(&right);
            out.scaling = Scaling::Total;
        }
        Family::Ml2I => {
            let i = p.i - 1;
            let ti = &p.theta[i];
            let terms: Vec<(Rational, Rational)> = (0..r)
                .map(|j| {
                    if j == i {
                        (-(Rational::from(&p.a[0] + 1u32) / ti.clone()), p.c[i].clone())
                    } else {
                        (Rational::from(&p.theta[j] / ti), Rational::from(&p.c[i] - &p.c[j]))
                    }
                })
                .collect();
            // Y = u G with G^{-1}(y) = 1/y + Σ ρ_j/(y - s_j):
            // Y Π(Y - s_j u) = Π(Y - s_j u) + Y Σ ρ_j Π_{k≠j}(Y - s_k u)
            let y = AlgebraicCurve::y();
            let fac: Vec<AlgebraicCurve> =
                terms.iter().map(|(_, s)| AlgebraicCurve::linear(one(), -s.clone(), Rational::new())).collect();
            let full = AlgebraicCurve::product(fac.iter());
            let mut sum = AlgebraicCurve::zero();
            for (j, (rho, _)) in terms.iter().enumerate() {
                let rest = AlgebraicCurve::product(fac.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, f)| f));
                sum = sum.add(&rest.scale(rho));
            }
            out.curve = y.mul(&full).sub(&full).sub(&y.mul(&sum));
            out.r_transform = Some((PoleSum { terms }, None));
            out.scaling = Scaling::Component;
        }
        Family::Ml2II => {
            let big_a = &p.a[0];
            let ya = lin_y(big_a.clone());
            let fac: Vec<AlgebraicCurve> = p
                .c
                .iter()
                .map(|c| AlgebraicCurve::linear(Rational::from(-1), c.clone(), -big_a.clone()))
                .collect();
            let mut sum = AlgebraicCurve::zero();
            for j in 0..r {
                let rest = AlgebraicCurve::product(fac.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, f)| f));
                sum = sum.add(&rest.scale(&p.theta[j]));
            }
            out.curve = ya.mul(&sum).sub(&lin_y(Rational::from(-1)).mul(&AlgebraicCurve::product(fac.iter())));
            let terms = p.theta.iter().zip(&p.c).map(|(t, c)| (-t.clone(), c.clone())).collect();
            let post = RationalSTransform::new(vec![Rational::new()], vec![big_a.clone()]);
            out.flags = post.flags();
            out.r_transform = Some((PoleSum { terms }, Some(post)));
            out.scaling = Scaling::Total;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::moments_from_cumulants_nc;
    use crate::rat::{q, r};

    fn mp() -> AlgebraicCurve {
        AlgebraicCurve::from_coeffs(vec![vec![r(0), r(1)], vec![r(0), r(-1)], vec![r(1)]])
    }

    #[test]
    fn standard_limits() {
        let one = s_limit_hyper(&[], &[]);
        assert_eq!(one.series(4).unwrap(), vec![r(1), r(0), r(0), r(0), r(0)]);
        assert!(one.moments(5).unwrap().iter().all(|m| *m == 1));
        let mp_s = s_limit_hyper(&[], &[r(0)]);
        assert_eq!(mp_s.series(3).unwrap(), vec![r(1), r(-1), r(1), r(-1)]);
        assert!(mp_s.curve().proportional(&mp()));
        assert_eq!(mp_s.moments(4).unwrap(), vec![r(1), r(2), r(5), r(14)]);
        let two_f0 = s_limit_hyper(&[r(0)], &[]);
        assert_eq!(two_f0.series(2).unwrap(), vec![r(1), r(1), r(0)]);
        // y = u (y - 1)
        let delta = curve_from_limits(&[], &[]);
        assert_eq!(delta.to_string(), "-u*y + y + u");
    }

    #[test]
    fn flags_follow_the_assumptions() {
        let s = RationalSTransform::new(vec![q(-1, 2), r(2)], vec![r(-1), r(2)]);
        let f = s.flags();
        assert!(f.contains(&Degeneracy::NumeratorInGap { index: 0 }));
        assert!(f.contains(&Degeneracy::DenominatorAtMinusOne { index: 0 }));
        assert!(f.contains(&Degeneracy::Coincident { numerator: 1, denominator: 1 }));
        assert!(!RationalSTransform::new(vec![r(0)], vec![r(1)]).is_degenerate());
    }

    #[test]
    fn curve_and_series_moments_agree() {
        let cases = [
            RationalSTransform::new(vec![r(2), q(1, 3)], vec![r(0), q(5, 2)]),
            RationalSTransform::new(vec![r(3)], vec![r(1), r(4)]),
            RationalSTransform::new(vec![r(1), r(2), r(3)], vec![q(1, 2)]).with_scale(q(2, 3)),
        ];
        for s in &cases {
            assert_eq!(s.moments(6).unwrap(), moments_from_curve(&s.curve(), 6).unwrap(), "{s:?}");
        }
    }

    #[test]
    fn reversal_identity() {
        let delta = RationalSTransform::new(vec![], vec![]).with_scale(q(1, 3));
        assert!(s_reverse_check(&delta, &delta.reversed(), 6));
        assert_eq!(delta.reversed().scale, r(3));
        let dual = s_limit_hyper(&[r(2)], &[]);
        let rev = dual.reversed();
        // 1 / (2 - w)
        assert_eq!(rev.eval(Complex64::new(0.5, 0.0)), Complex64::new(1.0 / 1.5, 0.0));
        assert!(s_reverse_check(&dual, &rev, 6));
        let s = RationalSTransform::new(vec![q(3, 2), r(4)], vec![q(1, 3)]).with_scale(q(5, 7));
        assert!(s_reverse_check(&s, &s.reversed(), 6));
        assert!(!s_reverse_check(&s, &s, 6));
    }

    #[test]
    fn shifted_relation() {
        // c = 1, d = 0 reduces to w = S(z)
        let s = s_limit_hyper(&[r(1)], &[r(0), r(2)]);
        let plain = curve_shifted(&s, &r(1), &r(0)).unwrap();
        for z in [q(1, 3), r(2)] {
            let w = s.series_affine(&r(0), &z, 0).unwrap()[0].clone();
            assert_eq!(plain.eval_exact(&w, &z), 0);
        }
        assert!(matches!(curve_shifted(&s, &r(0), &r(1)), Err(Error::ZeroScale)));
        // general c, d: compare with the S-series of the pushed-forward moments
        let (c, d) = (q(-3, 2), q(1, 2));
        let mt = s.moments(8).unwrap();
        // X = (X~ - d) / c
        let mut m = vec![];
        for k in 1..=8usize {
            let mut acc = Rational::new();
            for j in 0..=k {
                let mj = if j == 0 { r(1) } else { mt[j - 1].clone() };
                let binom = Rational::from(crate::rat::binomial(k, j));
                acc += binom * mj * pow(&-d.clone(), k - j);
            }
            m.push(acc / pow(&c, k));
        }
        let sw = FormalMomentSeries::new(m).s_coeffs().unwrap();
        let f = curve_shifted(&s, &c, &d).unwrap();
        // F(S(z), z) as a series in z must vanish to order 6
        let mut total = vec![Rational::new(); 7];
        let mut wp = vec![r(1)];
        for j in 0..=f.deg_y() {
            for l in 0..=f.deg_u() {
                let co = f.coeff(j, l);
                for (k, x) in wp.iter().enumerate() {
                    if k + l <= 6 {
                        total[k + l] += Rational::from(&co * x);
                    }
                }
            }
            wp = ser_mul(&wp, &sw, 6);
        }
        assert!(total.iter().all(|x| *x == 0), "{total:?}");
    }

    #[test]
    fn jacobi_type_one_cubic() {
        let p = LimitParams::constant(vec![q(1, 3), q(2, 3)]);
        let lim = family_curves(Family::JpI, &p).unwrap();
        let s = lim.s_transform.clone().unwrap();
        assert_eq!(s.a, vec![r(3), r(-2)]);
        assert_eq!(s.b, vec![r(0), r(0)]);
        // y^3 = u (y^3 - 7 y + 6), ν = 6
        let cubic = AlgebraicCurve::from_coeffs(vec![
            vec![r(0), r(-6)],
            vec![r(0), r(7)],
            vec![r(0), r(0)],
            vec![r(1), r(-1)],
        ]);
        assert!(lim.curve.proportional(&cubic), "{}", lim.curve);
        assert_eq!(lim.moments(6).unwrap(), lim.moments_via_transform(6).unwrap());
    }

    #[test]
    fn laguerre_bridge_for_type_one() {
        let p = LimitParams::constant(vec![q(1, 4), q(3, 4)]).with_a(vec![q(1, 5), q(1, 10)]).with_index(2);
        let jp = family_curves(Family::JpI, &p).unwrap().s_transform.unwrap();
        let ml = family_curves(Family::Ml1I, &p).unwrap().s_transform.unwrap();
        let ai = jp.a[1].clone();
        let bridge = RationalSTransform::new(vec![], vec![ai]);
        assert!(jp.mul(&bridge).same_function(&ml));
    }

    #[test]
    fn laguerre_type_two_reduce_to_marchenko_pastur() {
        let p = LimitParams::constant(vec![r(1)]);
        let ml1 = family_curves(Family::Ml1II, &p).unwrap();
        assert!(ml1.curve.proportional(&mp()));
        let ml2 = family_curves(Family::Ml2II, &p.clone().with_c(vec![r(1)])).unwrap();
        assert!(ml2.curve.proportional(&mp()));
        let (rt, _) = ml2.r_transform.as_ref().unwrap();
        assert!(rt.cumulants(5).iter().all(|k| *k == 1));
        let oracle = moments_from_cumulants_nc(&vec![r(1); 5], 5).unwrap();
        assert_eq!(ml2.moments_via_transform(5).unwrap(), oracle);
        assert_eq!(ml2.moments(5).unwrap(), oracle);
    }

    #[test]
    fn laguerre_type_two_r2_cubic() {
        // y^3 - 2u y^2 + (u+1) u y + u (θ(1-θ) - u) = 0 with the cancelled top degree
        let th = q(1, 3);
        let p = LimitParams::constant(vec![th.clone(), r(1) - th.clone()]);
        let c = family_curves(Family::Ml1II, &p).unwrap().curve;
        let expect = AlgebraicCurve::from_coeffs(vec![
            vec![r(0), q(2, 9), r(-1)],
            vec![r(0), r(1), r(1)],
            vec![r(0), r(-2)],
            vec![r(1)],
        ]);
        assert!(c.proportional(&expect), "{c}");
    }

    #[test]
    fn transform_routes_agree_for_every_family() {
        let th = vec![q(2, 5), q(3, 5)];
        let p = LimitParams::constant(th)
            .with_a(vec![q(1, 4), q(1, 2)])
            .with_beta(q(1, 3))
            .with_c(vec![r(1), r(3)]);
        for fam in [Family::JpI, Family::Ml1I, Family::JpII, Family::Ml2I, Family::Ml2II] {
            let lim = family_curves(fam, &p).unwrap();
            assert_eq!(lim.moments(5).unwrap(), lim.moments_via_transform(5).unwrap(), "{fam}");
        }
    }

    #[test]
    fn validation() {
        let p = LimitParams::constant(vec![q(1, 2), q(1, 3)]);
        assert!(family_curves(Family::JpI, &p).is_err());
        let p = LimitParams::constant(vec![q(1, 2), q(1, 2)]).with_c(vec![r(1), r(1)]);
        assert!(matches!(family_curves(Family::Ml2II, &p), Err(Error::DuplicateC)));
        let p = LimitParams::constant(vec![q(1, 2), q(1, 2)]).with_index(3);
        assert!(family_curves(Family::Ml1I, &p).is_err());
    }
}
