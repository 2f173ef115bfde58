//! Truncated power series and the moment, Cauchy, R- and S-transforms built on them.
//!
//! Series are coefficient vectors `c[k]` of `w^k`, truncated at a stated order.
//! Moment sequences are stored as `m[k-1] = m_k`.

use crate::error::{Error, Result};
use crate::field::Field;

pub fn ser_mul<T: Field>(a: &[T], b: &[T], order: usize) -> Vec<T> {
    let mut out = vec![T::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

pub fn ser_inv<T: Field>(a: &[T], order: usize) -> Result<Vec<T>> {
    let a0 = match a.first() {
        Some(x) if !x.is_zero() => x.clone(),
        _ => return Err(Error::InvalidParameters("series inverse needs a non-zero constant term".into())),
    };
    let mut out = vec![T::zero(); order + 1];
    out[0] = T::one().div(&a0);
    for k in 1..=order {
        let mut s = T::zero();
        for j in 1..=k.min(a.len() - 1) {
            s = s.add(&a[j].mul(&out[k - j]));
        }
        out[k] = s.neg().div(&a0);
    }
    Ok(out)
}

/// `f(g(w))` for `g(0) = 0`.
pub fn ser_compose<T: Field>(f: &[T], g: &[T], order: usize) -> Vec<T> {
    let mut out = vec![T::zero(); order + 1];
    for c in f.iter().take(order + 1).rev() {
        out = ser_mul(&out, g, order);
        out[0] = out[0].add(c);
    }
    out
}

/// Compositional inverse of `f` with `f(0) = 0`, `f'(0) != 0`.
pub fn ser_reverse<T: Field>(f: &[T], order: usize) -> Result<Vec<T>> {
    let f1 = match f.get(1) {
        Some(x) if !x.is_zero() && f[0].is_zero() => x.clone(),
        _ => return Err(Error::InvalidParameters("series is not invertible under composition".into())),
    };
    let mut g = vec![T::zero(); order + 1];
    if order == 0 {
        return Ok(g);
    }
    g[1] = T::one().div(&f1);
    for k in 2..=order {
        let c = ser_compose(f, &g, k);
        g[k] = g[k].sub(&c[k].div(&f1));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalMomentSeries<T> {
    m: Vec<T>,
}

/// Cauchy, R and S coefficients of one moment sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesBridge<T> {
    /// `G(u) = Σ g_k u^{-k-1}`, `g_0 = 1`.
    pub cauchy: Vec<T>,
    /// `R(w) = Σ r[k] w^k`, so `r[k]` is the free cumulant `κ_{k+1}`.
    pub r: Vec<T>,
    /// `S(z) = Σ s[k] z^k` for `k < K`.
    pub s: Vec<T>,
}

impl<T: Field> FormalMomentSeries<T> {
    pub fn new(m: Vec<T>) -> Self {
        FormalMomentSeries { m }
    }

    pub fn order(&self) -> usize {
        self.m.len()
    }

    pub fn moments(&self) -> &[T] {
        &self.m
    }

    pub fn into_moments(self) -> Vec<T> {
        self.m
    }

    /// `M(z)` with its zero constant term.
    pub fn m_series(&self) -> Vec<T> {
        std::iter::once(T::zero()).chain(self.m.iter().cloned()).collect()
    }

    pub fn cauchy(&self) -> Vec<T> {
        std::iter::once(T::one()).chain(self.m.iter().cloned()).collect()
    }

    /// Free cumulants `κ_1..κ_K` from `(zM+z) R(zM+z) = M`.
    pub fn r_coeffs(&self) -> Result<Vec<T>> {
        let k = self.order();
        if k == 0 {
            return Ok(vec![]);
        }
        let mut phi = vec![T::zero(), T::one()];
        phi.extend(self.m.iter().take(k - 1).cloned());
        let psi = ser_reverse(&phi, k)?;
        let c = ser_compose(&self.m_series(), &psi, k);
        Ok(c[1..].to_vec())
    }

    pub fn from_r(kappa: &[T]) -> Self {
        let k = kappa.len();
        let rw: Vec<T> = std::iter::once(T::zero()).chain(kappa.iter().cloned()).collect();
        let mut m = vec![T::zero(); k + 1];
        for _ in 0..k {
            let mut phi = vec![T::zero(), T::one()];
            phi.extend(m[1..k].iter().cloned());
            m = ser_compose(&rw, &phi, k);
        }
        FormalMomentSeries { m: m[1..].to_vec() }
    }

    /// `S(z) = (z+1)/z · M^{-1}(z)`, known to order `K-1`.
    pub fn s_coeffs(&self) -> Result<Vec<T>> {
        let k = self.order();
        if k == 0 {
            return Ok(vec![]);
        }
        if self.m[0].is_zero() {
            return Err(Error::VanishingFirstMoment);
        }
        let chi = ser_reverse(&self.m_series(), k)?;
        Ok((0..k).map(|j| chi[j + 1].add(&chi[j])).collect())
    }

    /// Inverse of [`Self::s_coeffs`]; `s` carries `K` coefficients.
    pub fn from_s(s: &[T]) -> Result<Self> {
        let k = s.len();
        if k == 0 {
            return Ok(FormalMomentSeries { m: vec![] });
        }
        if s[0].is_zero() {
            return Err(Error::InvalidParameters("S-transform vanishes at the origin".into()));
        }
        // χ(w) = w S(w) / (1 + w)
        let mut chi = vec![T::zero(); k + 1];
        for n in 1..=k {
            let mut acc = T::zero();
            for (j, sj) in s.iter().enumerate().take(n) {
                let t = if (n - 1 - j) % 2 == 0 { sj.clone() } else { sj.neg() };
                acc = acc.add(&t);
            }
            chi[n] = acc;
        }
        let m = ser_reverse(&chi, k)?;
        Ok(FormalMomentSeries { m: m[1..].to_vec() })
    }
}

pub fn series_bridge<T: Field>(m: &FormalMomentSeries<T>) -> Result<SeriesBridge<T>> {
    Ok(SeriesBridge { cauchy: m.cauchy(), r: m.r_coeffs()?, s: m.s_coeffs()? })
}

pub fn free_add<T: Field>(a: &FormalMomentSeries<T>, b: &FormalMomentSeries<T>) -> Result<FormalMomentSeries<T>> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    let (ra, rb) = (a.r_coeffs()?, b.r_coeffs()?);
    let r: Vec<T> = ra.iter().zip(&rb).map(|(x, y)| x.add(y)).collect();
    Ok(FormalMomentSeries::from_r(&r))
}

pub fn free_mult<T: Field>(a: &FormalMomentSeries<T>, b: &FormalMomentSeries<T>) -> Result<FormalMomentSeries<T>> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    let k = a.order();
    if k == 0 {
        return Ok(a.clone());
    }
    let s = ser_mul(&a.s_coeffs()?, &b.s_coeffs()?, k - 1);
    FormalMomentSeries::from_s(&s)
}
