//! Bivariate rational polynomials `F(y, u)` describing `y = u G(u)`.

use std::fmt;

use num_complex::Complex64;
use rug::Rational;

use super::series::ser_mul;
use crate::error::{Error, Result};
use crate::rat::to_f64;

/// `F(y, u) = Σ coef[j][l] y^j u^l`, kept rectangular and trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicCurve {
    coef: Vec<Vec<Rational>>,
}

impl AlgebraicCurve {
    pub fn from_coeffs(coef: Vec<Vec<Rational>>) -> Self {
        let mut c = AlgebraicCurve { coef };
        c.normalize();
        c
    }

    pub fn zero() -> Self {
        AlgebraicCurve { coef: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![vec![c]])
    }

    pub fn y() -> Self {
        Self::from_coeffs(vec![vec![Rational::new()], vec![Rational::from(1)]])
    }

    pub fn u() -> Self {
        Self::from_coeffs(vec![vec![Rational::new(), Rational::from(1)]])
    }

    /// `a·y + b·u + c`.
    pub fn linear(a: Rational, b: Rational, c: Rational) -> Self {
        Self::from_coeffs(vec![vec![c, b], vec![a]])
    }

    fn normalize(&mut self) {
        let w = self.coef.iter().map(Vec::len).max().unwrap_or(0);
        for row in &mut self.coef {
            row.resize(w, Rational::new());
        }
        while self.coef.last().is_some_and(|r| r.iter().all(|x| *x == 0)) {
            self.coef.pop();
        }
        while !self.coef.is_empty() && self.coef.iter().all(|r| r.last().is_none_or(|x| *x == 0)) {
            for row in &mut self.coef {
                row.pop();
            }
        }
        if self.coef.first().is_some_and(Vec::is_empty) {
            self.coef.clear();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_empty()
    }

    pub fn deg_y(&self) -> usize {
        self.coef.len().saturating_sub(1)
    }

    pub fn deg_u(&self) -> usize {
        self.coef.first().map_or(0, |r| r.len().saturating_sub(1))
    }

    pub fn coeff(&self, j: usize, l: usize) -> Rational {
        self.coef.get(j).and_then(|r| r.get(l)).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.coef
    }

    pub fn add(&self, o: &Self) -> Self {
        let (dy, du) = (self.coef.len().max(o.coef.len()), self.deg_u().max(o.deg_u()) + 1);
        let coef = (0..dy).map(|j| (0..du).map(|l| self.coeff(j, l) + o.coeff(j, l)).collect()).collect();
        Self::from_coeffs(coef)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_coeffs(self.coef.iter().map(|r| r.iter().map(|x| Rational::from(x * s)).collect()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (dy, du) = (self.deg_y() + o.deg_y() + 1, self.deg_u() + o.deg_u() + 1);
        let mut coef = vec![vec![Rational::new(); du]; dy];
        for (j1, r1) in self.coef.iter().enumerate() {
            for (l1, a) in r1.iter().enumerate().filter(|(_, a)| **a != 0) {
                for (j2, r2) in o.coef.iter().enumerate() {
                    for (l2, b) in r2.iter().enumerate().filter(|(_, b)| **b != 0) {
                        coef[j1 + j2][l1 + l2] += Rational::from(a * b);
                    }
                }
            }
        }
        Self::from_coeffs(coef)
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a AlgebraicCurve>) -> Self {
        factors.into_iter().fold(Self::constant(Rational::from(1)), |acc, f| acc.mul(f))
    }

    /// `F(α y + β, u)`.
    pub fn subst_y(&self, alpha: &Rational, beta: &Rational) -> Self {
        let lin = Self::linear(alpha.clone(), Rational::new(), beta.clone());
        let mut out = Self::zero();
        let mut pw = Self::constant(Rational::from(1));
        for row in &self.coef {
            let slice = Self::from_coeffs(vec![row.clone()]);
            out = out.add(&pw.mul(&slice));
            pw = pw.mul(&lin);
        }
        out
    }

    /// Swaps the roles of `y` and `u`.
    pub fn transpose(&self) -> Self {
        let coef = (0..=self.deg_u()).map(|l| (0..=self.deg_y()).map(|j| self.coeff(j, l)).collect()).collect();
        Self::from_coeffs(coef)
    }

    /// Coefficients in `y` at a fixed `u`, lowest first.
    pub fn y_poly_at(&self, u: Complex64) -> Vec<Complex64> {
        self.coef
            .iter()
            .map(|row| row.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * u + to_f64(c)))
            .collect()
    }

    pub fn eval(&self, y: Complex64, u: Complex64) -> Complex64 {
        self.y_poly_at(u).iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * y + c)
    }

    pub fn eval_exact(&self, y: &Rational, u: &Rational) -> Rational {
        self.coef.iter().rev().fold(Rational::new(), |acc, row| {
            let at_u = row.iter().rev().fold(Rational::new(), |a, c| a * u + c);
            acc * y + at_u
        })
    }

    /// Equality up to a non-zero rational factor.
    pub fn proportional(&self, o: &Self) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        if self.deg_y() != o.deg_y() || self.deg_u() != o.deg_u() {
            return false;
        }
        let (j, l) = self
            .coef
            .iter()
            .enumerate()
            .find_map(|(j, r)| r.iter().position(|x| *x != 0).map(|l| (j, l)))
            .unwrap();
        if o.coeff(j, l) == 0 {
            return false;
        }
        let ratio = o.coeff(j, l) / self.coeff(j, l);
        self.scale(&ratio) == *o
    }

    /// Rescales so the leading coefficient (highest `y`, then `u`) is one.
    pub fn monic(&self) -> Self {
        match self.coef.last().and_then(|r| r.iter().rev().find(|x| **x != 0)) {
            Some(lead) => self.scale(&Rational::from(1 / lead)),
            None => self.clone(),
        }
    }
}

impl fmt::Display for AlgebraicCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(usize, usize, &Rational)> = vec![];
        for (j, row) in self.coef.iter().enumerate() {
            for (l, c) in row.iter().enumerate().filter(|(_, c)| **c != 0) {
                terms.push((j, l, c));
            }
        }
        terms.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (k, (j, l, c)) in terms.iter().enumerate() {
            let neg = **c < 0;
            let abs = Rational::from(c.abs_ref());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match (*j, *l) {
                (0, 0) => String::new(),
                (j, 0) => pow_str("y", j),
                (0, l) => pow_str("u", l),
                (j, l) => format!("{}*{}", pow_str("u", l), pow_str("y", j)),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn pow_str(v: &str, k: usize) -> String {
    if k == 1 { v.to_string() } else { format!("{v}^{k}") }
}

/// Moments `m_1..m_K` of the branch `y = 1 + m_1/u + m_2/u^2 + ...`.
///
/// With `t = 1/u` and `L` the top `u`-degree, `t^L F(Y, 1/t)` is matched order
/// by order; the branch is simple when `P_L(1) = 0 != P_L'(1)`, `P_L` being the
/// coefficient of `u^L`.
pub fn moments_from_curve(curve: &AlgebraicCurve, order: usize) -> Result<Vec<Rational>> {
    if curve.is_zero() {
        return Err(Error::BranchDegenerate);
    }
    let top = curve.deg_u();
    let pl: Vec<Rational> = (0..=curve.deg_y()).map(|j| curve.coeff(j, top)).collect();
    let p_at_1: Rational = pl.iter().sum();
    let d0: Rational = pl.iter().enumerate().map(|(j, c)| Rational::from(c * j as u64)).sum();
    if p_at_1 != 0 || d0 == 0 {
        return Err(Error::BranchDegenerate);
    }
    let mut ys = vec![Rational::new(); order + 1];
    ys[0] = Rational::from(1);
    for k in 1..=order {
        let h = residual_series(curve, &ys, k);
        ys[k] = -Rational::from(&h[k] / &d0);
    }
    Ok(ys[1..].to_vec())
}

/// Coefficients of `t^L F(Y(t), 1/t)` to order `k`.
fn residual_series(curve: &AlgebraicCurve, ys: &[Rational], k: usize) -> Vec<Rational> {
    let top = curve.deg_u();
    let mut out = vec![Rational::new(); k + 1];
    let mut pw = vec![Rational::new(); k + 1];
    pw[0] = Rational::from(1);
    for j in 0..=curve.deg_y() {
        for l in 0..=top {
            let c = curve.coeff(j, l);
            let shift = top - l;
            if c == 0 || shift > k {
                continue;
            }
            for (i, p) in pw.iter().enumerate().take(k + 1 - shift) {
                out[i + shift] += Rational::from(&c * p);
            }
        }
        pw = ser_mul(&pw, &ys[..=k.min(ys.len() - 1)], k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::moments_from_cumulants_nc;
    use crate::rat::{q, r};

    pub(crate) fn mp_curve() -> AlgebraicCurve {
        // y^2 - u y + u
        AlgebraicCurve::from_coeffs(vec![vec![r(0), r(1)], vec![r(0), r(-1)], vec![r(1)]])
    }

    #[test]
    fn arithmetic_and_display() {
        let c = AlgebraicCurve::y().mul(&AlgebraicCurve::y()).sub(&AlgebraicCurve::u().mul(&AlgebraicCurve::y()))
            .add(&AlgebraicCurve::u());
        assert_eq!(c, mp_curve());
        assert_eq!(c.to_string(), "y^2 - u*y + u");
        assert_eq!(c.deg_y(), 2);
        assert_eq!(c.deg_u(), 1);
        let s = c.subst_y(&r(2), &r(1));
        assert_eq!(s.eval_exact(&r(1), &r(3)), c.eval_exact(&r(3), &r(3)));
        assert!(c.proportional(&c.scale(&q(-3, 7))));
        assert!(!c.proportional(&c.add(&AlgebraicCurve::constant(r(1)))));
        assert_eq!(c.transpose().transpose(), c);
    }

    #[test]
    fn marchenko_pastur_moments_are_catalan() {
        let m = moments_from_curve(&mp_curve(), 6).unwrap();
        let oracle = moments_from_cumulants_nc(&vec![r(1); 6], 6).unwrap();
        assert_eq!(m, oracle);
        assert_eq!(m[..4], [r(1), r(2), r(5), r(14)]);
    }

    #[test]
    fn point_mass_curve() {
        // y = u (y - 1)
        let c = AlgebraicCurve::from_coeffs(vec![vec![r(0), r(1)], vec![r(1), r(-1)]]);
        assert!(moments_from_curve(&c, 5).unwrap().iter().all(|m| *m == 1));
    }

    #[test]
    fn degenerate_branch_rejected() {
        // (y-1)^2 u + y has a double root at y = 1
        let c = AlgebraicCurve::from_coeffs(vec![vec![r(0), r(1)], vec![r(1), r(-2)], vec![r(0), r(1)]]);
        assert!(matches!(moments_from_curve(&c, 3), Err(Error::BranchDegenerate)));
        let d = AlgebraicCurve::from_coeffs(vec![vec![r(0), r(1)], vec![r(1), r(1)]]);
        assert!(matches!(moments_from_curve(&d, 3), Err(Error::BranchDegenerate)));
    }
}
