//! Multiprecision root extraction (Aberth–Ehrlich), empirical root
//! distributions, real-rootedness and interlacing verdicts.

use std::cmp::Ordering;

use num_complex::Complex64;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::mp::Cf;
use crate::poly::{FloatPoly, Poly};

pub const MAX_ITER: usize = 1000;

/// Roots of a polynomial, repeated by multiplicity, sorted by real then imaginary part.
#[derive(Clone, Debug)]
pub struct RootMultiset {
    roots: Vec<Cf>,
    prec: u32,
}

impl RootMultiset {
    pub fn new(mut roots: Vec<Cf>, prec: u32) -> Self {
        roots.sort_by(|a, b| {
            a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
        });
        RootMultiset { roots, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Cf] {
        &self.roots
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.roots.iter().map(Cf::to_c64).collect()
    }

    /// Largest `|Im λ| / (1 + |λ|)`.
    pub fn imag_margin(&self) -> f64 {
        self.roots
            .iter()
            .map(|z| {
                let a = Float::with_val(53, z.im.abs_ref()).to_f64();
                a / (1.0 + z.abs().to_f64())
            })
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self, tau: f64) -> bool {
        self.imag_margin() <= tau
    }

    /// Sorted real parts at full precision.
    pub fn real_parts(&self) -> Vec<Float> {
        let mut v: Vec<Float> = self.roots.iter().map(|z| z.re.clone()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        v
    }

    pub fn real_parts_f64(&self) -> Vec<f64> {
        self.real_parts().iter().map(Float::to_f64).collect()
    }

    /// Groups roots closer than `rel * (1 + |λ|)`; returns `(centre, multiplicity)`.
    pub fn clusters(&self, rel: f64) -> Vec<(Complex64, usize)> {
        let mut out: Vec<(Complex64, usize)> = Vec::new();
        for z in self.to_c64() {
            match out.iter_mut().find(|(c, m)| ((*c / *m as f64) - z).norm() <= rel * (1.0 + z.norm())) {
                Some((c, m)) => {
                    *c += z;
                    *m += 1;
                }
                None => out.push((z, 1)),
            }
        }
        out.into_iter().map(|(c, m)| (c / m as f64, m)).collect()
    }
}

/// All roots of the actual-degree part of `p` at `prec` bits.
pub fn find_roots(p: &Poly, prec: u32) -> Result<RootMultiset> {
    let d = p.degree().ok_or(Error::ZeroLeading)?;
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    find_roots_float(&p.to_float(prec).trimmed(), MAX_ITER)
}

/// Aberth–Ehrlich iteration with Gauss–Seidel updates.
///
/// Exact zero roots are split off first. Starting points lie on circles whose
/// radii come from the upper convex hull of `log |a_k|`, which copes with the
/// wide coefficient ranges of hypergeometric polynomials.
pub fn find_roots_float(fp: &FloatPoly, max_iter: usize) -> Result<RootMultiset> {
    let prec = fp.prec();
    let a = fp.coeffs();
    let d = fp.degree().ok_or(Error::ZeroLeading)?;
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let zeros = a.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots: Vec<Cf> = (0..zeros).map(|_| Cf::zero(prec)).collect();
    let core = FloatPoly::from_monomial(a[zeros..=d].to_vec());
    let m = d - zeros;
    if m == 0 {
        return Ok(RootMultiset::new(roots, prec));
    }
    if m == 1 {
        let c = core.coeffs();
        let r = Float::with_val(prec, -(Float::with_val(prec, &c[0] / &c[1])));
        roots.push(Cf::real(r));
        return Ok(RootMultiset::new(roots, prec));
    }
    let mut z = initial_guesses(&core, prec);
    let stop_exp = -(prec as i32) + 24;
    let tiny = Float::with_val(prec, Float::i_exp(1, stop_exp));
    let mut done = vec![false; m];
    let mut iter = 0;
    while done.iter().any(|x| !x) {
        iter += 1;
        if iter > max_iter {
            let worst = worst_residual(&core, &z);
            return Err(Error::NonConvergence { iterations: max_iter, residual: worst });
        }
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (v, dv) = core.eval_with_derivative(&z[i]);
            let scale = core.abs_eval(&z[i].abs());
            if Float::with_val(prec, v.abs() / &scale) <= tiny {
                done[i] = true;
                continue;
            }
            let ratio = &v / &dv;
            let mut s = Cf::zero(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s = &s + &(&z[i] - zj).recip();
                }
            }
            let mut denom = &ratio * &s;
            denom.re = Float::with_val(prec, 1 - &denom.re);
            denom.im = Float::with_val(prec, -&denom.im);
            let w = &ratio / &denom;
            if !w.is_finite() {
                // coincident iterates: nudge and retry
                z[i].im += Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 4));
                continue;
            }
            z[i] = &z[i] - &w;
            let zn = z[i].abs();
            if Float::with_val(prec, w.abs() / (zn + 1u32)) <= tiny {
                done[i] = true;
            }
        }
    }
    // final acceptance: residual within 2^(-prec/2) of the rounding scale
    let accept = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2));
    for zi in &z {
        let v = core.eval(zi).abs();
        let scale = core.abs_eval(&zi.abs());
        if Float::with_val(prec, v / scale) > accept {
            return Err(Error::NonConvergence { iterations: iter, residual: worst_residual(&core, &z) });
        }
    }
    roots.extend(z);
    Ok(RootMultiset::new(roots, prec))
}

fn worst_residual(core: &FloatPoly, z: &[Cf]) -> f64 {
    z.iter()
        .map(|zi| {
            let v = core.eval(zi).abs();
            let s = core.abs_eval(&zi.abs());
            Float::with_val(53, v / s).to_f64()
        })
        .fold(0.0, f64::max)
}

fn initial_guesses(core: &FloatPoly, prec: u32) -> Vec<Cf> {
    let c = core.coeffs();
    let m = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, Float::with_val(64, x.abs_ref()).ln().to_f64()))
        .collect();
    // upper convex hull in (k, log|a_k|)
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (p.1 - y1) - (y2 - y1) * (p.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(m);
    let two_pi = std::f64::consts::TAU;
    for w in hull.windows(2) {
        let (k1, y1) = w[0];
        let (k2, y2) = w[1];
        let cnt = k2 - k1;
        let log_r = (y1 - y2) / cnt as f64;
        let sigma = 0.7;
        for j in 0..cnt {
            let theta = two_pi * j as f64 / cnt as f64 + two_pi * k2 as f64 / m as f64 + sigma;
            let re = Float::with_val(prec, log_r).exp() * theta.cos();
            let im = Float::with_val(prec, log_r).exp() * theta.sin();
            out.push(Cf::new(Float::with_val(prec, re), Float::with_val(prec, im)));
        }
    }
    out
}

/// Normalized counting measure of the roots.
#[derive(Clone, Debug)]
pub struct EmpiricalDistribution {
    roots: RootMultiset,
}

impl EmpiricalDistribution {
    pub fn new(roots: RootMultiset) -> Self {
        EmpiricalDistribution { roots }
    }

    pub fn roots(&self) -> &RootMultiset {
        &self.roots
    }

    pub fn n(&self) -> usize {
        self.roots.len()
    }

    /// `m_1..m_order` at the roots' precision.
    pub fn moments(&self, order: usize) -> Vec<Cf> {
        let prec = self.roots.prec();
        let n = Float::with_val(prec, self.n());
        let mut sums = vec![Cf::zero(prec); order];
        for z in self.roots.roots() {
            let mut pw = Cf::real(Float::with_val(prec, 1));
            for s in sums.iter_mut() {
                pw = &pw * z;
                *s = &*s + &pw;
            }
        }
        sums.iter().map(|s| Cf::new(Float::with_val(prec, &s.re / &n), Float::with_val(prec, &s.im / &n))).collect()
    }

    pub fn moments_c64(&self, order: usize) -> Vec<Complex64> {
        self.moments(order).iter().map(Cf::to_c64).collect()
    }
}

pub fn empirical(p: &Poly, prec: u32) -> Result<EmpiricalDistribution> {
    Ok(EmpiricalDistribution::new(find_roots(p, prec)?))
}

/// Exact moments `m_k = p_k / n` from Newton's identities on the coefficients.
pub fn newton_moments(p: &Poly, order: usize) -> Result<Vec<Rational>> {
    let n = p.n();
    if *p.e_j(0) == 0 {
        return Err(Error::ZeroLeading);
    }
    let e: Vec<Rational> = (0..=n).map(|j| Rational::from(p.e_j(j) / p.e_j(0))).collect();
    let ek = |i: usize| if i <= n { e[i].clone() } else { Rational::new() };
    let mut ps: Vec<Rational> = vec![Rational::new(); order + 1];
    for k in 1..=order {
        let mut v = Rational::new();
        for i in 1..k {
            let t = ek(i) * &ps[k - i];
            if i % 2 == 1 { v += t } else { v -= t }
        }
        let t = ek(k) * k as u64;
        if k % 2 == 1 { v += t } else { v -= t }
        ps[k] = v;
    }
    Ok(ps[1..].iter().map(|x| Rational::from(x / n as u64)).collect())
}

/// Real-rootedness verdict with the margin `max |Im λ| / (1 + |λ|)`.
pub fn is_real_rooted(p: &Poly, prec: u32, tau: f64) -> Result<(bool, f64)> {
    let r = find_roots(p, prec)?;
    let margin = r.imag_margin();
    Ok((margin <= tau, margin))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Strict,
    Weak,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InterlacingCase {
    EqualDegree,
    DegreeDrop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InterlacingVerdict {
    pub relation: Relation,
    pub case: InterlacingCase,
}

impl InterlacingVerdict {
    pub fn holds(&self) -> bool {
        self.relation != Relation::None
    }
}

/// `p ≼ q` on sorted real roots: `λ1(p) ≤ λ1(q) ≤ λ2(p) ≤ ...`, with `q`
/// of the same length or one shorter. Comparisons inside `tol` count as ties.
pub fn interlaces(p_roots: &[Float], q_roots: &[Float], tol: f64) -> Result<InterlacingVerdict> {
    let tol = Float::with_val(p_roots.first().map_or(64, Float::prec), tol);
    chain_verdict(p_roots, q_roots, |a, b| {
        let d = Float::with_val(a.prec(), b - a);
        if d > tol {
            Ordering::Less
        } else if d < -tol.clone() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Exact version for rational roots.
pub fn interlaces_exact(p_roots: &[Rational], q_roots: &[Rational]) -> Result<InterlacingVerdict> {
    chain_verdict(p_roots, q_roots, |a, b| a.cmp(b))
}

pub fn interlaces_f64(p_roots: &[f64], q_roots: &[f64], tol: f64) -> Result<InterlacingVerdict> {
    chain_verdict(p_roots, q_roots, |a, b| {
        if b - a > tol {
            Ordering::Less
        } else if a - b > tol {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn chain_verdict<T>(p: &[T], q: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> Result<InterlacingVerdict> {
    let (n, m) = (p.len(), q.len());
    if n.abs_diff(m) > 1 {
        return Err(Error::DegreeGapTooLarge { p: n, q: m });
    }
    let case = if m == n { InterlacingCase::EqualDegree } else { InterlacingCase::DegreeDrop };
    if m > n {
        return Ok(InterlacingVerdict { relation: Relation::None, case });
    }
    let mut chain: Vec<&T> = Vec::with_capacity(n + m);
    for i in 0..n {
        chain.push(&p[i]);
        if i < m {
            chain.push(&q[i]);
        }
    }
    let mut strict = true;
    for w in chain.windows(2) {
        match cmp(w[0], w[1]) {
            Ordering::Less => {}
            Ordering::Equal => strict = false,
            Ordering::Greater => return Ok(InterlacingVerdict { relation: Relation::None, case }),
        }
    }
    let relation = if strict { Relation::Strict } else { Relation::Weak };
    Ok(InterlacingVerdict { relation, case })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HistBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub density: f64,
}

/// Uniform bins on `[lo, hi]` over the real parts; density is `count / (n width)`.
pub fn histogram(values: &[f64], bins: usize, lo: f64, hi: f64) -> Vec<HistBin> {
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in values {
        if x < lo || x > hi {
            continue;
        }
        let i = (((x - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let n = values.len().max(1) as f64;
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| HistBin {
            lo: lo + i as f64 * width,
            hi: lo + (i + 1) as f64 * width,
            count: c,
            density: c as f64 / (n * width),
        })
        .collect()
}

/// Kolmogorov–Smirnov distance between the empirical CDF of `values` and `cdf`.
///
/// Ties are grouped and the model is also sampled just left of each atom, so
/// discontinuous model CDFs are handled.
pub fn ks_distance_values(values: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < v.len() {
        let x = v[i];
        let mut j = i;
        while j < v.len() && v[j] == x {
            j += 1;
        }
        let left = cdf(next_down(x));
        d = d.max((i as f64 / n - left).abs()).max((j as f64 / n - cdf(x)).abs());
        i = j;
    }
    d
}

fn next_down(x: f64) -> f64 {
    if x.is_nan() || x == f64::NEG_INFINITY {
        return x;
    }
    if x == 0.0 {
        return -f64::from_bits(1);
    }
    let b = x.to_bits();
    f64::from_bits(if x > 0.0 { b - 1 } else { b + 1 })
}

/// KS distance for a real spectrum; complex spectra are rejected.
pub fn ks_distance(dist: &EmpiricalDistribution, cdf: impl Fn(f64) -> f64, tau: f64) -> Result<f64> {
    if !dist.roots().is_real(tau) {
        return Err(Error::NonRealRoots);
    }
    Ok(ks_distance_values(&dist.roots().real_parts_f64(), cdf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::{hyper_poly, HyperSpec};
    use crate::rat::{q, r};

    fn close(a: &Float, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn simple_roots() {
        let p = Poly::from_roots(&[r(1), r(2)]);
        let rs = find_roots(&p, 128).unwrap().real_parts();
        assert!(close(&rs[0], 1.0, 1e-30) && close(&rs[1], 2.0, 1e-30));
        let p = hyper_poly(&HyperSpec::new(2, vec![], vec![r(1)])).unwrap();
        let rs = find_roots(&p, 128).unwrap().real_parts();
        assert!(close(&rs[0], 2.0 - 2f64.sqrt(), 1e-15) && close(&rs[1], 2.0 + 2f64.sqrt(), 1e-15));
        let quad = find_roots(&Poly::linear_power(4, &r(1)), 256).unwrap();
        // a fourfold root is only resolved to about 2^(-p/4); its centroid is far better
        let cl = quad.clusters(2f64.powi(-32));
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].1, 4);
        assert!((cl[0].0 - Complex64::new(1.0, 0.0)).norm() < 2f64.powi(-50));
    }

    #[test]
    fn zero_roots_split_off() {
        let p = Poly::from_roots(&[r(0), r(0), q(3, 2)]);
        let rs = find_roots(&p, 128).unwrap().real_parts_f64();
        assert_eq!(rs[..2], [0.0, 0.0]);
        assert!((rs[2] - 1.5).abs() < 1e-30);
    }

    #[test]
    fn moments_agree_with_newton() {
        let p = Poly::from_roots(&[r(1), r(2)]);
        assert_eq!(newton_moments(&p, 2).unwrap(), vec![q(3, 2), q(5, 2)]);
        let p = Poly::from_roots(&[q(1, 3), r(-2), r(5), q(7, 4), r(0), r(-1), q(9, 2), r(3), q(-1, 5), r(2)]);
        let exact = newton_moments(&p, 6).unwrap();
        let em = empirical(&p, 256).unwrap().moments(6);
        for (e, m) in exact.iter().zip(&em) {
            let d = Float::with_val(256, &m.re - e).abs();
            let ea = Float::with_val(256, e).abs();
            assert!(d < Float::with_val(256, Float::i_exp(1, -64)) * (ea + 1u32));
        }
        let pt = Poly::linear_power(5, &q(2, 3));
        assert_eq!(newton_moments(&pt, 3).unwrap(), vec![q(2, 3), q(4, 9), q(8, 27)]);
    }

    #[test]
    fn real_rootedness() {
        let p = Poly::from_monomial(2, &[r(1), r(0), r(1)]);
        assert!(!is_real_rooted(&p, 128, 1e-10).unwrap().0);
        let jac = hyper_poly(&HyperSpec::new(4, vec![r(10)], vec![q(1, 2)])).unwrap();
        assert!(is_real_rooted(&jac, 256, 1e-30).unwrap().0);
        // (x-1)^2 (x^2 + 1e-30): imaginary parts 1e-15
        let tiny = Rational::from((1, 1)) / Rational::from(rug::Integer::u_pow_u(10, 30));
        let p = Poly::linear_power(2, &r(1)).mul(&Poly::from_monomial(2, &[tiny, r(0), r(1)]));
        assert!(is_real_rooted(&p, 256, 1e-10).unwrap().0);
        assert!(!is_real_rooted(&p, 256, 1e-20).unwrap().0);
    }

    #[test]
    fn interlacing_examples() {
        let f = |v: &[i64]| v.iter().map(|&x| r(x)).collect::<Vec<_>>();
        let v = interlaces_exact(&f(&[1, 3]), &f(&[2])).unwrap();
        assert_eq!(v, InterlacingVerdict { relation: Relation::Strict, case: InterlacingCase::DegreeDrop });
        let v = interlaces_exact(&f(&[1, 3]), &f(&[2, 4])).unwrap();
        assert_eq!(v.case, InterlacingCase::EqualDegree);
        assert!(v.holds());
        assert_eq!(interlaces_exact(&f(&[1, 4]), &f(&[2, 3])).unwrap().relation, Relation::None);
        assert_eq!(interlaces_exact(&f(&[1, 3]), &f(&[1, 4])).unwrap().relation, Relation::Weak);
        assert!(matches!(interlaces_exact(&f(&[1, 3, 5]), &f(&[2])), Err(Error::DegreeGapTooLarge { .. })));
        let fl = |v: &[f64]| v.iter().map(|&x| Float::with_val(128, x)).collect::<Vec<_>>();
        assert_eq!(interlaces(&fl(&[1.0, 3.0]), &fl(&[1.0 + 1e-25, 4.0]), 1e-20).unwrap().relation, Relation::Weak);
    }

    #[test]
    fn precision_doubling_is_stable() {
        let p = hyper_poly(&HyperSpec::new(12, vec![q(7, 3)], vec![q(1, 2)])).unwrap();
        let a = find_roots(&p, 128).unwrap();
        let b = find_roots(&p, 256).unwrap();
        for x in a.roots() {
            let d = b.roots().iter().map(|y| (x - y).abs().to_f64()).fold(f64::MAX, f64::min);
            assert!(d < 2f64.powi(-64), "{d}");
        }
    }

    #[test]
    fn ks_and_histogram() {
        let n = 200;
        let vals: Vec<f64> = (1..=n).map(|k| k as f64 / n as f64).collect();
        let d = ks_distance_values(&vals, |x| x.clamp(0.0, 1.0));
        assert!(d <= 1.0 / n as f64 + 1e-12);
        let tied = vec![0.5; 10];
        assert!((ks_distance_values(&tied, |x| x.clamp(0.0, 1.0)) - 0.5).abs() < 1e-12);
        assert!(ks_distance_values(&tied, |x| if x >= 0.5 { 1.0 } else { 0.0 }) <= 0.1);
        let h = histogram(&vals, 4, 0.0, 1.0);
        assert_eq!(h.iter().map(|b| b.count).sum::<usize>(), n);
        assert!((h[0].density - 0.98).abs() < 1e-12);
    }
}
