//! High-precision Gauss rules for Jacobi weights on `[0, 1]` and scaled
//! Laguerre weights on `[0, ∞)`.
//!
//! Nodes are the zeros of the classical orthogonal polynomial of the weight;
//! weights solve the moment equations `Σ w_i x_i^k = μ_k`, `k < N`, against
//! closed-form moments. The rule is exact for polynomials of degree `< 2N`.

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::hypergeom::{hyper_poly, HyperSpec};
use crate::poly::FloatPoly;
use crate::rat::rising;
use crate::roots::find_roots;

#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
    prec: u32,
}

impl GaussRule {
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(&Float) -> Float) -> Float {
        let mut s = Float::with_val(self.prec, 0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += Float::with_val(self.prec, f(x) * w);
        }
        s
    }

    pub fn integrate_poly(&self, p: &FloatPoly) -> Float {
        self.integrate(|x| p.eval_real(x))
    }
}

/// Rule for `x^α (1-x)^β` on `[0, 1]`.
pub fn gauss_jacobi01(n: usize, alpha: &Rational, beta: &Rational, prec: u32) -> Result<GaussRule> {
    if *alpha <= -1 || *beta <= -1 {
        return Err(Error::QuadratureFailure(format!("Jacobi exponents must exceed -1, got {alpha}, {beta}")));
    }
    let work = work_prec(prec, n);
    // shifted Jacobi polynomial 2F1(-N, N+α+β+1; α+1; x)
    let spec = HyperSpec::new(n, vec![Rational::from(alpha + beta) + (n as u64 + 1)], vec![Rational::from(alpha + 1u32)]);
    let nodes = real_nodes(&spec, work)?;
    let g = |x: Rational| Float::with_val(work, x).gamma();
    let mu0 = g(Rational::from(alpha + 1u32)) * g(Rational::from(beta + 1u32)) / g(Rational::from(alpha + beta) + 2u32);
    let ab2 = Rational::from(alpha + beta) + 2u32;
    let a1 = Rational::from(alpha + 1u32);
    let moments: Vec<Float> = (0..n)
        .map(|k| Float::with_val(work, &mu0 * Float::with_val(work, rising(&a1, k) / rising(&ab2, k))))
        .collect();
    finish(nodes, moments, prec)
}

/// Rule for `x^α e^{-c x}` on `[0, ∞)`.
pub fn gauss_laguerre(n: usize, alpha: &Rational, c: &Rational, prec: u32) -> Result<GaussRule> {
    if *alpha <= -1 || *c <= 0 {
        return Err(Error::QuadratureFailure(format!("Laguerre weight needs α > -1 and c > 0, got {alpha}, {c}")));
    }
    let work = work_prec(prec, n);
    let spec = HyperSpec::new(n, vec![], vec![Rational::from(alpha + 1u32)]).with_scale(c.clone());
    let nodes = real_nodes(&spec, work)?;
    let a1 = Rational::from(alpha + 1u32);
    let cf = Float::with_val(work, c);
    let mu0 = Float::with_val(work, &a1).gamma() / Float::with_val(work, cf.pow(Float::with_val(work, &a1)));
    let moments: Vec<Float> = (0..n)
        .map(|k| {
            let r = rising(&a1, k) / crate::rat::pow(c, k);
            Float::with_val(work, &mu0 * Float::with_val(work, r))
        })
        .collect();
    finish(nodes, moments, prec)
}

fn work_prec(prec: u32, n: usize) -> u32 {
    prec + 64 + 16 * n as u32
}

fn real_nodes(spec: &HyperSpec, work: u32) -> Result<Vec<Float>> {
    let p = hyper_poly(spec)?;
    let roots = find_roots(&p, work)?;
    if !roots.is_real(1e-30) {
        return Err(Error::QuadratureFailure("orthogonal polynomial has non-real zeros".into()));
    }
    Ok(roots.real_parts())
}

fn finish(nodes: Vec<Float>, moments: Vec<Float>, prec: u32) -> Result<GaussRule> {
    let n = nodes.len();
    let work = nodes.first().map_or(prec, Float::prec);
    // A[k][i] = x_i^k, each row scaled by 1/μ_k to keep entries moderate
    let mut a: Vec<Vec<Float>> = Vec::with_capacity(n);
    let mut pw: Vec<Float> = vec![Float::with_val(work, 1); n];
    for mu in &moments {
        a.push(pw.iter().map(|p| Float::with_val(work, p / mu)).collect());
        for (p, x) in pw.iter_mut().zip(&nodes) {
            *p *= x;
        }
    }
    let w = solve_linear(a, vec![Float::with_val(work, 1); n])?;
    if w.iter().any(|x| *x <= 0) {
        return Err(Error::QuadratureFailure("non-positive Gauss weight".into()));
    }
    Ok(GaussRule {
        nodes: nodes.into_iter().map(|x| Float::with_val(prec, x)).collect(),
        weights: w.into_iter().map(|x| Float::with_val(prec, x)).collect(),
        prec,
    })
}

/// Gaussian elimination with partial pivoting.
pub fn solve_linear(mut a: Vec<Vec<Float>>, mut rhs: Vec<Float>) -> Result<Vec<Float>> {
    let n = rhs.len();
    let work = rhs.first().map_or(64, Float::prec);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].clone().abs().partial_cmp(&a[j][col].clone().abs()).unwrap())
            .ok_or(Error::QuadratureFailure("empty system".into()))?;
        if a[piv][col].is_zero() {
            return Err(Error::QuadratureFailure("singular linear system".into()));
        }
        a.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..n {
            let f = Float::with_val(work, &a[row][col] / &a[col][col]);
            if f.is_zero() {
                continue;
            }
            for k in col..n {
                let t = Float::with_val(work, &f * &a[col][k]);
                a[row][k] -= t;
            }
            let t = Float::with_val(work, &f * &rhs[col]);
            rhs[row] -= t;
        }
    }
    let mut w = vec![Float::with_val(work, 0); n];
    for row in (0..n).rev() {
        let mut s = rhs[row].clone();
        for k in row + 1..n {
            s -= Float::with_val(work, &a[row][k] * &w[k]);
        }
        w[row] = Float::with_val(work, s / &a[row][row]);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, r};

    #[test]
    fn jacobi_rule_is_exact_to_degree_2n_minus_1() {
        let (a, b) = (q(1, 2), r(1));
        let rule = gauss_jacobi01(8, &a, &b, 256).unwrap();
        // ∫ x^{k+1/2} (1-x) dx = 1/(k+3/2) - 1/(k+5/2)
        for k in 0..16 {
            let got = rule.integrate(|x| Float::with_val(256, x.pow(k)));
            let kk = Rational::from(k);
            let exact = Rational::from(1) / (kk.clone() + q(3, 2)) - Rational::from(1) / (kk + q(5, 2));
            let err = Float::with_val(256, got - Float::with_val(256, &exact)).abs();
            assert!(err < Float::with_val(256, Float::i_exp(1, -200)), "k={k}");
        }
    }

    #[test]
    fn laguerre_rule_integrates_gamma_moments() {
        let rule = gauss_laguerre(10, &q(1, 3), &r(2), 256).unwrap();
        for k in 0..20u32 {
            let got = rule.integrate(|x| Float::with_val(256, x.pow(k)));
            let s = Float::with_val(256, Rational::from(k) + q(4, 3));
            let exact = s.clone().gamma() / Float::with_val(256, 2).pow(s);
            let rel = Float::with_val(256, (got - &exact) / &exact).abs();
            assert!(rel < Float::with_val(256, Float::i_exp(1, -200)), "k={k}");
        }
    }
}
