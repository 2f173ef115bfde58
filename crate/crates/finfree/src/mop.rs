//! Jacobi–Piñeiro and multiple Laguerre (first and second kind) polynomials
//! of Type I and Type II, their convolution decompositions, and a quadrature
//! check of the defining orthogonality conditions.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::conv::{add_conv, add_conv_all, mult_conv, mult_conv_all};
use crate::error::{Error, Result};
use crate::hypergeom::{hyper_poly, pfq_series, series_mul, HyperSpec};
use crate::poly::{FloatPoly, Poly};
use crate::quad::{gauss_jacobi01, gauss_laguerre, solve_linear, GaussRule};
use crate::roots::{find_roots, interlaces};
use crate::rat::{as_integer, falling, pow, r, rising};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    JpI,
    JpII,
    Ml1I,
    Ml1II,
    Ml2I,
    Ml2II,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::JpI, Family::JpII, Family::Ml1I, Family::Ml1II, Family::Ml2I, Family::Ml2II];

    pub fn is_type_one(self) -> bool {
        matches!(self, Family::JpI | Family::Ml1I | Family::Ml2I)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::JpI => "jp1",
            Family::JpII => "jp2",
            Family::Ml1I => "ml1-1",
            Family::Ml1II => "ml1-2",
            Family::Ml2I => "ml2-1",
            Family::Ml2II => "ml2-2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.to_ascii_lowercase().replace('_', "-");
        Ok(match t.as_str() {
            "jp1" | "jp-i" | "jp1-typei" | "jp-typei" => Family::JpI,
            "jp2" | "jp-ii" | "jp2-typeii" | "jp-typeii" => Family::JpII,
            "ml1-1" | "ml1-i" | "ml1-typei" => Family::Ml1I,
            "ml1-2" | "ml1-ii" | "ml1-typeii" => Family::Ml1II,
            "ml2-1" | "ml2-i" | "ml2-typei" => Family::Ml2I,
            "ml2-2" | "ml2-ii" | "ml2-typeii" => Family::Ml2II,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        })
    }
}

/// Multi-index with positive entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(n: Vec<usize>) -> Result<Self> {
        if n.is_empty() || n.contains(&0) {
            return Err(Error::InvalidParameters(format!("multi-index entries must be positive, got {n:?}")));
        }
        Ok(MultiIndex(n))
    }

    /// Step-line index of size `total` over `r` components, larger entries last.
    pub fn step_line(total: usize, r: usize) -> Result<Self> {
        let base = total / r;
        let extra = total % r;
        MultiIndex::new((0..r).map(|j| base + usize::from(j >= r - extra)).collect())
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn plus_e(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    pub fn minus_e(&self, i: usize) -> Result<Self> {
        let mut v = self.0.clone();
        v[i] -= 1;
        MultiIndex::new(v)
    }

    pub fn is_step_line(&self) -> bool {
        self.0.windows(2).all(|w| w[1] >= w[0] && w[1] - w[0] <= 1) && self.0.last().unwrap() - self.0[0] <= 1
    }
}

/// Family, parameters and index choice for one MOP instance.
#[derive(Clone, Debug, PartialEq)]
pub struct MopSpec {
    pub family: Family,
    /// One entry per weight for JP/ML1; a single entry for ML2.
    pub alpha: Vec<Rational>,
    pub beta: Rational,
    pub c: Vec<Rational>,
}

impl MopSpec {
    pub fn jp(type_one: bool, alpha: Vec<Rational>, beta: Rational) -> Self {
        let family = if type_one { Family::JpI } else { Family::JpII };
        MopSpec { family, alpha, beta, c: vec![] }
    }

    pub fn ml1(type_one: bool, alpha: Vec<Rational>) -> Self {
        let family = if type_one { Family::Ml1I } else { Family::Ml1II };
        MopSpec { family, alpha, beta: Rational::new(), c: vec![] }
    }

    pub fn ml2(type_one: bool, alpha: Rational, c: Vec<Rational>) -> Self {
        let family = if type_one { Family::Ml2I } else { Family::Ml2II };
        MopSpec { family, alpha: vec![alpha], beta: Rational::new(), c }
    }

    pub fn r(&self) -> usize {
        match self.family {
            Family::Ml2I | Family::Ml2II => self.c.len(),
            _ => self.alpha.len(),
        }
    }

    pub fn validate(&self, n: &MultiIndex) -> Result<()> {
        if n.r() != self.r() {
            return Err(Error::InvalidParameters(format!("multi-index has {} entries for {} weights", n.r(), self.r())));
        }
        match self.family {
            Family::Ml2I | Family::Ml2II => {
                if self.alpha.len() != 1 || self.alpha[0] <= -1 {
                    return Err(Error::InvalidParameters("ML2 needs a single α > -1".into()));
                }
                if self.c.iter().any(|c| *c <= 0) {
                    return Err(Error::InvalidParameters("ML2 needs c_j > 0".into()));
                }
                for (i, a) in self.c.iter().enumerate() {
                    if self.c[..i].contains(a) {
                        return Err(Error::DuplicateC);
                    }
                }
            }
            _ => {
                if self.alpha.iter().any(|a| *a <= -1) {
                    return Err(Error::InvalidParameters("α_j must exceed -1".into()));
                }
                for (i, a) in self.alpha.iter().enumerate() {
                    for b in &self.alpha[..i] {
                        if Rational::from(a - b).is_integer() {
                            return Err(Error::InvalidParameters(format!("α differences must be non-integer ({a}, {b})")));
                        }
                    }
                }
                if matches!(self.family, Family::JpI | Family::JpII) && self.beta <= -1 {
                    return Err(Error::InvalidParameters("β must exceed -1".into()));
                }
            }
        }
        Ok(())
    }

    /// The family polynomial; `i` (0-based) selects the Type I component.
    pub fn polynomial(&self, n: &MultiIndex, i: usize) -> Result<Poly> {
        self.validate(n)?;
        match self.family {
            Family::JpI => jp_type1(n, &self.alpha, &self.beta, i),
            Family::JpII => jp_type2(n, &self.alpha, &self.beta),
            Family::Ml1I => ml1_type1(n, &self.alpha, i),
            Family::Ml1II => ml1_type2(n, &self.alpha),
            Family::Ml2I => ml2_type1(n, &self.alpha[0], &self.c, i),
            Family::Ml2II => ml2_type2(n, &self.alpha[0], &self.c),
        }
    }

    /// The convolution representation of the same polynomial (up to a scalar).
    pub fn decomposition(&self, n: &MultiIndex, i: usize) -> Result<Poly> {
        self.validate(n)?;
        match self.family {
            Family::JpI => mult_conv_all(&jp_type1_blocks(n, &self.alpha, &self.beta, i)?, n.get(i) - 1),
            Family::JpII => {
                if as_integer(&self.beta).is_some_and(|b| b >= 0) {
                    jp_type2_decomposition(n, &self.alpha, &self.beta)
                } else {
                    jp_type2_reversed(n, &self.alpha, &self.beta)
                }
            }
            Family::Ml1I => mult_conv_all(&ml1_type1_blocks(n, &self.alpha, i)?, n.get(i) - 1),
            Family::Ml1II => Ok(ml1_type2_reversed(n, &self.alpha)?.reverse()),
            Family::Ml2I => ml2_type1_kdf_form(n, &self.alpha[0], &self.c, i),
            Family::Ml2II => ml2_type2_factored(n, &self.alpha[0], &self.c),
        }
    }

    fn rule(&self, j: usize, nodes: usize, prec: u32) -> Result<GaussRule> {
        match self.family {
            Family::JpI | Family::JpII => gauss_jacobi01(nodes, &self.alpha[j], &self.beta, prec),
            Family::Ml1I | Family::Ml1II => gauss_laguerre(nodes, &self.alpha[j], &r(1), prec),
            Family::Ml2I | Family::Ml2II => gauss_laguerre(nodes, &self.alpha[0], &self.c[j], prec),
        }
    }

    /// `w_j(x)` for `x` inside the support.
    pub fn weight(&self, j: usize, x: &Float) -> Float {
        let p = x.prec();
        match self.family {
            Family::JpI | Family::JpII => {
                let a = Float::with_val(p, x.pow(Float::with_val(p, &self.alpha[j])));
                let b = Float::with_val(p, 1 - x).pow(Float::with_val(p, &self.beta));
                Float::with_val(p, a * b)
            }
            Family::Ml1I | Family::Ml1II => {
                let a = Float::with_val(p, x.pow(Float::with_val(p, &self.alpha[j])));
                Float::with_val(p, a * Float::with_val(p, -x).exp())
            }
            Family::Ml2I | Family::Ml2II => {
                let a = Float::with_val(p, x.pow(Float::with_val(p, &self.alpha[0])));
                let cx = Float::with_val(p, x * &self.c[j]);
                Float::with_val(p, a * Float::with_val(p, -cx).exp())
            }
        }
    }
}

fn sum_except(n: &MultiIndex, alpha: &[Rational], i: usize, f: impl Fn(&Rational, usize) -> Rational) -> Vec<Rational> {
    (0..n.r()).filter(|&j| j != i).map(|j| f(&alpha[j], n.get(j))).collect()
}

fn check_index(n: &MultiIndex, i: usize) -> Result<()> {
    if i >= n.r() {
        return Err(Error::InvalidParameters(format!("component {} out of range 1..={}", i + 1, n.r())));
    }
    Ok(())
}

/// Type I Jacobi–Piñeiro component `i` in hypergeometric normalization (constant term 1).
pub fn jp_type1(n: &MultiIndex, alpha: &[Rational], beta: &Rational, i: usize) -> Result<Poly> {
    check_index(n, i)?;
    let ai = &alpha[i];
    let mut a = vec![Rational::from(ai + beta) + n.total() as u64];
    a.extend(sum_except(n, alpha, i, |aj, nj| Rational::from(ai + 1u32) - aj - nj as u64));
    let mut b = vec![Rational::from(ai + 1u32)];
    b.extend(sum_except(n, alpha, i, |aj, _| Rational::from(ai + 1u32) - aj));
    hyper_poly(&HyperSpec::new(n.get(i) - 1, a, b))
}

/// The `₂F₁` blocks whose `⊠` product is the Type I Jacobi–Piñeiro component.
pub fn jp_type1_blocks(n: &MultiIndex, alpha: &[Rational], beta: &Rational, i: usize) -> Result<Vec<Poly>> {
    check_index(n, i)?;
    let m = n.get(i) - 1;
    let ai = &alpha[i];
    (0..n.r())
        .map(|j| {
            let spec = if j == i {
                HyperSpec::new(m, vec![Rational::from(ai + beta) + n.total() as u64], vec![Rational::from(ai + 1u32)])
            } else {
                let d = Rational::from(ai - &alpha[j]);
                HyperSpec::new(m, vec![d.clone() - n.get(j) as u64 + 1u32], vec![d + 1u32])
            };
            hyper_poly(&spec)
        })
        .collect()
}

/// Normalizing constant of the Type I Jacobi–Piñeiro component (float, involves Γ).
pub fn jp_type1_constant(n: &MultiIndex, alpha: &[Rational], beta: &Rational, i: usize, prec: u32) -> Float {
    let tot = n.total() as u64;
    let g = |x: Rational| Float::with_val(prec, x).gamma();
    let mut num = g(Rational::from(&alpha[i] + beta) + tot);
    let mut den = g(Rational::from(beta + tot)) * g(Rational::from(&alpha[i] + 1u32));
    den *= Float::with_val(prec, crate::rat::factorial(n.get(i) - 1));
    for k in 0..n.r() {
        num *= Float::with_val(prec, rising(&(Rational::from(&alpha[k] + beta) + tot), n.get(k)));
        if k != i {
            den *= Float::with_val(prec, rising(&Rational::from(&alpha[k] - &alpha[i]), n.get(k)));
        }
    }
    let c = Float::with_val(prec, num / den);
    if (n.total() - 1) % 2 == 1 { -c } else { c }
}

/// Type I multiple Laguerre (first kind) component `i`, hypergeometric normalization.
pub fn ml1_type1(n: &MultiIndex, alpha: &[Rational], i: usize) -> Result<Poly> {
    check_index(n, i)?;
    let ai = &alpha[i];
    let a = sum_except(n, alpha, i, |aj, nj| Rational::from(ai + 1u32) - aj - nj as u64);
    let mut b = vec![Rational::from(ai + 1u32)];
    b.extend(sum_except(n, alpha, i, |aj, _| Rational::from(ai + 1u32) - aj));
    hyper_poly(&HyperSpec::new(n.get(i) - 1, a, b))
}

pub fn ml1_type1_blocks(n: &MultiIndex, alpha: &[Rational], i: usize) -> Result<Vec<Poly>> {
    check_index(n, i)?;
    let m = n.get(i) - 1;
    let ai = &alpha[i];
    (0..n.r())
        .map(|j| {
            let spec = if j == i {
                HyperSpec::new(m, vec![], vec![Rational::from(ai + 1u32)])
            } else {
                let d = Rational::from(ai - &alpha[j]);
                HyperSpec::new(m, vec![d.clone() - n.get(j) as u64 + 1u32], vec![d + 1u32])
            };
            hyper_poly(&spec)
        })
        .collect()
}

pub fn ml1_type1_constant(n: &MultiIndex, alpha: &[Rational], i: usize, prec: u32) -> Float {
    let mut den = Float::with_val(prec, &alpha[i] + Rational::from(1)).gamma();
    den *= Float::with_val(prec, crate::rat::factorial(n.get(i) - 1));
    for k in (0..n.r()).filter(|&k| k != i) {
        den *= Float::with_val(prec, rising(&Rational::from(&alpha[k] - &alpha[i]), n.get(k)));
    }
    let c = Float::with_val(prec, den.recip());
    if (n.total() - 1) % 2 == 1 { -c } else { c }
}

/// Laguerre factor `₁F₁(-n_i+1; α_i+β+|n|; x)` linking the two Type I families.
pub fn laguerre_bridge_factor(n: &MultiIndex, alpha: &[Rational], beta: &Rational, i: usize) -> Result<Poly> {
    check_index(n, i)?;
    let b = Rational::from(&alpha[i] + beta) + n.total() as u64;
    hyper_poly(&HyperSpec::new(n.get(i) - 1, vec![], vec![b]))
}

/// Truncation at degree `deg` of a power-series product that is known to be a
/// polynomial; a nonzero tail is reported as an error.
fn polynomial_product(a: &[Rational], b: &[Rational], deg: usize) -> Result<Poly> {
    let tail = 4;
    let prod = series_mul(a, b, deg + tail);
    if prod[deg + 1..].iter().any(|c| *c != 0) {
        return Err(Error::InvalidParameters("series product does not terminate at the expected degree".into()));
    }
    Ok(Poly::from_monomial(deg, &prod[..=deg]))
}

/// Monic Type II Jacobi–Piñeiro polynomial of degree `|n|`, any `β > -1`.
///
/// `(1-x)^β P` is an `r+1Fr` series, so `P` is that series times `(1-x)^{-β}`.
pub fn jp_type2(n: &MultiIndex, alpha: &[Rational], beta: &Rational) -> Result<Poly> {
    let tot = n.total();
    let order = tot + 4;
    let mut a = vec![Rational::from(-beta) - tot as u64];
    a.extend((0..n.r()).map(|j| Rational::from(&alpha[j] + n.get(j) as u64) + 1u32));
    let b: Vec<Rational> = alpha.iter().map(|x| Rational::from(x + 1u32)).collect();
    let f = pfq_series(&a, &b, &r(1), order)?;
    let binom = pfq_series(std::slice::from_ref(beta), &[], &r(1), order)?;
    polynomial_product(&f, &binom, tot)?.monic()
}

/// Integer-`β` route: `⊠` of the `₂F₁` blocks at degree `|n|+β`, then `(1-x)^β` divided out.
pub fn jp_type2_decomposition(n: &MultiIndex, alpha: &[Rational], beta: &Rational) -> Result<Poly> {
    let b = as_integer(beta).filter(|b| *b >= 0).ok_or(Error::NonIntegerBetaPath)? as usize;
    let m = n.total() + b;
    let blocks = (0..n.r())
        .map(|j| {
            let a = Rational::from(&alpha[j] + n.get(j) as u64) + 1u32;
            hyper_poly(&HyperSpec::new(m, vec![a], vec![Rational::from(&alpha[j] + 1u32)]))
        })
        .collect::<Result<Vec<_>>>()?;
    let prod = mult_conv_all(&blocks, m)?;
    prod.div_exact(&Poly::linear_power(b, &r(1)))
}

/// Reversed representation valid for any `β`:
/// `p* ⊠ [F(-N; 1-β-N; -N x) ⊞ (F(-N; β+1; N x) ⊠ q)]*`.
pub fn jp_type2_reversed(n: &MultiIndex, alpha: &[Rational], beta: &Rational) -> Result<Poly> {
    let tot = n.total();
    let nn = Rational::from(tot);
    let p = hyper_poly(&HyperSpec::new(tot, vec![r(1)], vec![]).with_scale(-Rational::from(nn.recip_ref())))?;
    let left = hyper_poly(&HyperSpec::new(tot, vec![], vec![Rational::from(1 - beta) - tot as u64]).with_scale(-nn.clone()))?;
    let right = hyper_poly(&HyperSpec::new(tot, vec![], vec![Rational::from(beta + 1u32)]).with_scale(nn))?;
    let qa: Vec<Rational> = alpha.iter().map(|a| Rational::from(-a) - tot as u64).collect();
    let qb: Vec<Rational> = (0..n.r()).map(|j| Rational::from(-&alpha[j]) - (tot + n.get(j)) as u64).collect();
    let q = hyper_poly(&HyperSpec::new(tot, qa, qb).with_scale(r(-1)))?;
    let inner = add_conv(&left, &mult_conv(&right, &q, tot)?, tot)?;
    mult_conv(&p.reverse(), &inner.reverse(), tot)
}

/// Monic Type II multiple Laguerre (first kind) polynomial of degree `|n|`,
/// from `e^x · rFr(α+n+1; α+1; -x)`.
pub fn ml1_type2(n: &MultiIndex, alpha: &[Rational]) -> Result<Poly> {
    let tot = n.total();
    let order = tot + 4;
    let a: Vec<Rational> = (0..n.r()).map(|j| Rational::from(&alpha[j] + n.get(j) as u64) + 1u32).collect();
    let b: Vec<Rational> = alpha.iter().map(|x| Rational::from(x + 1u32)).collect();
    let f = pfq_series(&a, &b, &r(-1), order)?;
    let exp = pfq_series(&[], &[], &r(1), order)?;
    polynomial_product(&f, &exp, tot)?.monic()
}

/// Reciprocal representation `F(-N,1;;x) ⊠ F(-N, -N-α; -N-n-α; x+1)`, proportional to `p*`.
pub fn ml1_type2_reversed(n: &MultiIndex, alpha: &[Rational]) -> Result<Poly> {
    let tot = n.total();
    let f20 = hyper_poly(&HyperSpec::new(tot, vec![r(1)], vec![]))?;
    let qa: Vec<Rational> = alpha.iter().map(|a| Rational::from(-a) - tot as u64).collect();
    let qb: Vec<Rational> = (0..n.r()).map(|j| Rational::from(-&alpha[j]) - (tot + n.get(j)) as u64).collect();
    let shifted = hyper_poly(&HyperSpec::new(tot, qa, qb).with_shift(r(1)))?;
    mult_conv(&f20, &shifted, tot)
}

/// `₁F₁` blocks of the Type I multiple Laguerre (second kind) component `i`.
pub fn ml2_type1_blocks(n: &MultiIndex, alpha: &Rational, c: &[Rational], i: usize) -> Result<Vec<Poly>> {
    check_index(n, i)?;
    let m = n.get(i) - 1;
    let ni = n.get(i) as i64;
    (0..n.r())
        .map(|j| {
            let spec = if j == i {
                let b = Rational::from(alpha + 1u32) + (n.total() - n.get(i)) as u64;
                HyperSpec::new(m, vec![], vec![b]).with_scale(c[i].clone())
            } else {
                HyperSpec::new(m, vec![], vec![r(2 - ni - n.get(j) as i64)]).with_scale(Rational::from(&c[i] - &c[j]))
            };
            hyper_poly(&spec)
        })
        .collect()
}

/// Type I multiple Laguerre (second kind) component `i` as the `⊞` of its blocks.
pub fn ml2_type1(n: &MultiIndex, alpha: &Rational, c: &[Rational], i: usize) -> Result<Poly> {
    add_conv_all(&ml2_type1_blocks(n, alpha, c, i)?, n.get(i) - 1)
}

/// The undilated factorization `q_i ⊠ (q_0 ⊞ q_j ...)` with `q_i = F(-m;;-c_i x)`.
pub fn ml2_type1_kdf_form(n: &MultiIndex, alpha: &Rational, c: &[Rational], i: usize) -> Result<Poly> {
    check_index(n, i)?;
    let m = n.get(i) - 1;
    let ni = n.get(i) as i64;
    let qi = hyper_poly(&HyperSpec::new(m, vec![], vec![]).with_scale(-c[i].clone()))?;
    let b0 = Rational::from(alpha + 1u32) + (n.total() - n.get(i)) as u64;
    let mut parts = vec![hyper_poly(&HyperSpec::new(m, vec![], vec![b0]).with_scale(r(-1)))?];
    for j in (0..n.r()).filter(|&j| j != i) {
        let s = -(Rational::from(&c[i] - &c[j]) / &c[i]);
        parts.push(hyper_poly(&HyperSpec::new(m, vec![], vec![r(2 - ni - n.get(j) as i64)]).with_scale(s))?);
    }
    mult_conv(&qi, &add_conv_all(&parts, m)?, m)
}

/// Monic Type II multiple Laguerre (second kind) polynomial from the explicit sum:
/// `e_K = (N+α)^{(K)} e_K(Π (x - 1/c_j)^{n_j})`.
pub fn ml2_type2(n: &MultiIndex, alpha: &Rational, c: &[Rational]) -> Result<Poly> {
    let tot = n.total();
    let base = ml2_point_masses(n, c);
    let top = Rational::from(alpha + tot as u64);
    Ok(Poly::from_e((0..=tot).map(|k| falling(&top, k) * base.e_j(k)).collect()))
}

/// `Π (x - 1/c_j)^{n_j}`.
pub fn ml2_point_masses(n: &MultiIndex, c: &[Rational]) -> Poly {
    (0..n.r()).fold(Poly::x_pow(0), |acc, j| acc.mul(&Poly::linear_power(n.get(j), &Rational::from(c[j].recip_ref()))))
}

/// `(α+N)^{(N)} F(-N; α+1; x) ⊠ Π (x - 1/c_j)^{n_j}`.
pub fn ml2_type2_factored(n: &MultiIndex, alpha: &Rational, c: &[Rational]) -> Result<Poly> {
    let tot = n.total();
    let lag = hyper_poly(&HyperSpec::new(tot, vec![], vec![Rational::from(alpha + 1u32)]))?;
    let pref = falling(&Rational::from(alpha + tot as u64), tot);
    mult_conv(&lag.scale(&pref), &ml2_point_masses(n, c), tot)
}

/// `q^{(α)} ⊠ (p_1 ⊞ ... ⊞ p_r)` with `e_k(p_j) = N^{(k)} n_j^{(k)} / (k! c_j^k)`.
pub fn ml2_type2_sum_form(n: &MultiIndex, alpha: &Rational, c: &[Rational]) -> Result<Poly> {
    let tot = n.total();
    let blocks: Vec<Poly> = (0..n.r())
        .map(|j| {
            Poly::from_e(
                (0..=tot)
                    .map(|k| {
                        let num = Rational::from(crate::rat::falling_int(tot, k) * crate::rat::falling_int(n.get(j), k));
                        num / Rational::from(crate::rat::factorial(k)) / pow(&c[j], k)
                    })
                    .collect(),
            )
        })
        .collect();
    let pref = falling(&Rational::from(alpha + tot as u64), tot) / Rational::from(crate::rat::factorial(tot));
    let q = hyper_poly(&HyperSpec::new(tot, vec![r(1)], vec![Rational::from(alpha + 1u32)]))?.scale(&pref);
    mult_conv(&q, &add_conv_all(&blocks, tot)?, tot)
}

/// Coefficient polynomials `A_{n,1..r}` of the Type I function, each carrying
/// its relative normalization.
///
/// JP and ML1 use the closed-form constants; ML2 has none in closed form, so
/// the relative scalars are fixed from the first `r-1` orthogonality
/// conditions and the remaining conditions are left for verification.
pub fn type1_vector(spec: &MopSpec, n: &MultiIndex, prec: u32) -> Result<Vec<FloatPoly>> {
    spec.validate(n)?;
    let r = n.r();
    let scaled = |p: Poly, c: Float| -> FloatPoly {
        let fp = p.to_float(prec);
        FloatPoly::from_monomial(fp.coeffs().iter().map(|a| Float::with_val(prec, a * &c)).collect())
    };
    match spec.family {
        Family::JpI => (0..r)
            .map(|j| Ok(scaled(jp_type1(n, &spec.alpha, &spec.beta, j)?, jp_type1_constant(n, &spec.alpha, &spec.beta, j, prec))))
            .collect(),
        Family::Ml1I => (0..r)
            .map(|j| Ok(scaled(ml1_type1(n, &spec.alpha, j)?, ml1_type1_constant(n, &spec.alpha, j, prec))))
            .collect(),
        Family::Ml2I => {
            let polys = (0..r).map(|j| ml2_type1(n, &spec.alpha[0], &spec.c, j)).collect::<Result<Vec<_>>>()?;
            let fl: Vec<FloatPoly> = polys.iter().map(|p| p.to_float(prec)).collect();
            if r == 1 {
                return Ok(fl);
            }
            let nodes = 2 * n.total() + 20;
            let rules = (0..r).map(|j| spec.rule(j, nodes, prec)).collect::<Result<Vec<_>>>()?;
            let moment = |k: usize, j: usize| rules[j].integrate(|x| Float::with_val(prec, x.pow(k as u32)) * fl[j].eval_real(x));
            let a: Vec<Vec<Float>> = (0..r - 1).map(|k| (1..r).map(|j| moment(k, j)).collect()).collect();
            let b: Vec<Float> = (0..r - 1).map(|k| -moment(k, 0)).collect();
            let lam = solve_linear(a, b)?;
            let mut out = vec![fl[0].clone()];
            for (j, l) in lam.into_iter().enumerate() {
                out.push(scaled(polys[j + 1].clone(), l));
            }
            Ok(out)
        }
        _ => Err(Error::InvalidParameters(format!("{} is not a Type I family", spec.family))),
    }
}

/// `Q_n(x) = Σ A_j(x) w_j(x)` at each grid point.
pub fn type1_function_eval(spec: &MopSpec, n: &MultiIndex, xs: &[Float], prec: u32) -> Result<Vec<Float>> {
    let a = type1_vector(spec, n, prec)?;
    Ok(xs
        .iter()
        .map(|x| {
            let x = Float::with_val(prec, x);
            a.iter().enumerate().fold(Float::with_val(prec, 0), |acc, (j, aj)| acc + aj.eval_real(&x) * spec.weight(j, &x))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalityReport {
    pub family: Family,
    /// Largest `|<f, x^k>_w| / (|f|_w |x^k|_w)` over the vanishing conditions.
    pub max_residual: f64,
    /// Same ratio for the Type I normalization moment `k = |n|-1`.
    pub normalization: Option<f64>,
    pub conditions: usize,
}

pub const MAX_VERIFY_SIZE: usize = 12;

/// Checks the defining orthogonality conditions with Gauss rules of
/// `2|n| + 20` nodes. Residuals are scale-free Cauchy–Schwarz ratios.
pub fn verify_orthogonality(spec: &MopSpec, n: &MultiIndex, prec: u32) -> Result<OrthogonalityReport> {
    spec.validate(n)?;
    if n.total() > MAX_VERIFY_SIZE {
        return Err(Error::InvalidParameters(format!("|n| = {} exceeds the verification limit {MAX_VERIFY_SIZE}", n.total())));
    }
    let r = n.r();
    let nodes = 2 * n.total() + 20;
    let rules = (0..r).map(|j| spec.rule(j, nodes, prec)).collect::<Result<Vec<_>>>()?;
    let xk = |x: &Float, k: usize| Float::with_val(prec, x.pow(k as u32));
    let norm = |rule: &GaussRule, f: &dyn Fn(&Float) -> Float| rule.integrate(|x| Float::with_val(prec, f(x).square())).sqrt();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    if spec.family.is_type_one() {
        let a = type1_vector(spec, n, prec)?;
        let ratio = |k: usize| -> f64 {
            let mut num = Float::with_val(prec, 0);
            let mut den = Float::with_val(prec, 0);
            for j in 0..r {
                num += rules[j].integrate(|x| xk(x, k) * a[j].eval_real(x));
                den += norm(&rules[j], &|x| a[j].eval_real(x)) * norm(&rules[j], &|x| xk(x, k));
            }
            Float::with_val(prec, num.abs() / den).to_f64()
        };
        for k in 0..n.total() - 1 {
            worst = worst.max(ratio(k));
            count += 1;
        }
        Ok(OrthogonalityReport { family: spec.family, max_residual: worst, normalization: Some(ratio(n.total() - 1)), conditions: count })
    } else {
        let p = spec.polynomial(n, 0)?.to_float(prec);
        for (j, rule) in rules.iter().enumerate() {
            let pn = norm(rule, &|x| p.eval_real(x));
            for k in 0..n.get(j) {
                let num = rule.integrate(|x| xk(x, k) * p.eval_real(x));
                let den = Float::with_val(prec, &pn * norm(rule, &|x| xk(x, k)));
                worst = worst.max(Float::with_val(prec, num.abs() / den).to_f64());
                count += 1;
            }
        }
        Ok(OrthogonalityReport { family: spec.family, max_residual: worst, normalization: None, conditions: count })
    }
}

/// Sorted real zeros, or `None` when some zero is off the real line.
pub fn real_zeros(p: &Poly, prec: u32) -> Result<Option<Vec<Float>>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Some(vec![]));
    }
    let roots = find_roots(p, prec)?;
    Ok(roots.is_real(ROOT_TOL).then(|| roots.real_parts()))
}

/// Tolerance for real-rootedness and interlacing ties at 256 bits.
pub const ROOT_TOL: f64 = 1e-20;

/// `p ≼ q` on real zeros; `None` if either has non-real zeros.
pub fn zero_interlacing(p: &Poly, q: &Poly, prec: u32) -> Result<Option<bool>> {
    match (real_zeros(p, prec)?, real_zeros(q, prec)?) {
        (Some(a), Some(b)) => Ok(Some(interlaces(&a, &b, ROOT_TOL)?.holds())),
        _ => Ok(None),
    }
}

/// The interval `Δ_r` holding the Type I zeros: `(lo, hi)` with `None` for infinite ends.
pub fn type1_zero_interval(family: Family, r: usize) -> (Option<f64>, Option<f64>) {
    match (family, r) {
        (Family::JpI, 1) => (Some(0.0), Some(1.0)),
        (_, 1) => (Some(0.0), None),
        (_, r) if r % 2 == 0 => (None, Some(0.0)),
        _ => (Some(0.0), None),
    }
}

fn inside(zeros: &[Float], (lo, hi): (Option<f64>, Option<f64>)) -> bool {
    zeros.iter().all(|z| lo.is_none_or(|l| *z > l) && hi.is_none_or(|h| *z < h))
}

/// Window `max α - 1 < α_i < min(α_j + n_j) - n_i + 1` under which the Type I
/// zeros lie in `Δ_r`.
pub fn type1_window_holds(alpha: &[Rational], n: &MultiIndex, i: usize) -> bool {
    let top = alpha.iter().max().unwrap();
    let lo = Rational::from(top - 1u32);
    let hi = (0..n.r()).map(|j| Rational::from(&alpha[j] + n.get(j) as u64)).min().unwrap() - n.get(i) as u64 + 1u32;
    alpha[i] > lo && alpha[i] < hi
}

/// Weaker window (one index `j` relaxed by 1 on both sides) implying only real zeros.
pub fn type1_weak_window_holds(alpha: &[Rational], n: &MultiIndex, i: usize) -> bool {
    let ai = &alpha[i];
    let ni = n.get(i) as u64;
    (0..n.r()).filter(|&j| j != i).any(|j| {
        let near = *ai > Rational::from(&alpha[j] - 2u32) && *ai < Rational::from(&alpha[j] + n.get(j) as u64) - ni + 2u32;
        let rest = (0..n.r()).filter(|&k| k != i && k != j);
        let lo_ok = rest.clone().all(|k| *ai > Rational::from(&alpha[k] - 1u32));
        let hi_ok = rest.clone().all(|k| *ai < Rational::from(&alpha[k] + n.get(k) as u64) - ni + 1u32);
        near && lo_ok && hi_ok
    })
}

/// Outcome of checking the Type I zero-location and monotonicity theorems.
///
/// Claims are only asserted when `hypotheses` is true; the checks are still
/// reported otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeOneVerdict {
    pub family: Family,
    pub i: usize,
    pub hypotheses: bool,
    pub weak_hypotheses: bool,
    pub real_rooted: bool,
    pub in_interval: bool,
    /// Zeros move with `α ↦ α + t` in the direction fixed by the parity of `r`.
    pub alpha_monotonicity: Option<bool>,
    /// Same for `β ↦ β + t` (Jacobi–Piñeiro only).
    pub beta_monotonicity: Option<bool>,
    /// `P_{n,i} ≼ P^{(α+e_i; β+1)}_{n-e_i,i}`, from the derivative relation.
    pub derivative_interlacing: Option<bool>,
}

impl TypeOneVerdict {
    pub fn claims_hold(&self) -> bool {
        !self.hypotheses
            || (self.real_rooted
                && self.in_interval
                && [self.alpha_monotonicity, self.beta_monotonicity, self.derivative_interlacing].iter().all(|c| c.unwrap_or(true)))
    }
}

fn shifted(alpha: &[Rational], t: &Rational) -> Vec<Rational> {
    alpha.iter().map(|a| Rational::from(a + t)).collect()
}

/// Zero location and monotonicity of a Type I JP or ML1 component, `0 < t ≤ 2`.
pub fn theorem_suite_zero_location(spec: &MopSpec, n: &MultiIndex, i: usize, t: &Rational, prec: u32) -> Result<TypeOneVerdict> {
    if !matches!(spec.family, Family::JpI | Family::Ml1I) {
        return Err(Error::InvalidParameters(format!("no zero-location theorem for {}", spec.family)));
    }
    if *t <= 0 || *t > 2 {
        return Err(Error::InvalidParameters(format!("t = {t} outside (0, 2]")));
    }
    let p = spec.polynomial(n, i)?;
    let zeros = real_zeros(&p, prec)?;
    let even = n.r().is_multiple_of(2);
    let moved = MopSpec { alpha: shifted(&spec.alpha, t), ..spec.clone() };
    let p_alpha = moved.polynomial(n, i)?;
    let alpha_monotonicity = if even { zero_interlacing(&p_alpha, &p, prec)? } else { zero_interlacing(&p, &p_alpha, prec)? };
    let (beta_monotonicity, bumped) = if spec.family == Family::JpI {
        let p_beta = MopSpec { beta: Rational::from(&spec.beta + t), ..spec.clone() }.polynomial(n, i)?;
        let mono = if even { zero_interlacing(&p, &p_beta, prec)? } else { zero_interlacing(&p_beta, &p, prec)? };
        (mono, Rational::from(&spec.beta + 1u32))
    } else {
        (None, spec.beta.clone())
    };
    let derivative_interlacing = if n.get(i) >= 2 {
        let mut alpha = spec.alpha.clone();
        alpha[i] += 1u32;
        let d = MopSpec { alpha, beta: bumped, ..spec.clone() }.polynomial(&n.minus_e(i)?, i)?;
        zero_interlacing(&p, &d, prec)?
    } else {
        None
    };
    Ok(TypeOneVerdict {
        family: spec.family,
        i,
        hypotheses: type1_window_holds(&spec.alpha, n, i),
        weak_hypotheses: type1_weak_window_holds(&spec.alpha, n, i),
        real_rooted: zeros.is_some(),
        in_interval: zeros.as_deref().is_some_and(|z| inside(z, type1_zero_interval(spec.family, n.r()))),
        alpha_monotonicity,
        beta_monotonicity,
        derivative_interlacing,
    })
}

/// Outcome of the Type II interlacing theorems.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeTwoVerdict {
    pub family: Family,
    pub real_rooted: bool,
    pub in_support: bool,
    /// `P_{n+e_i} ≼ P_n` (JP and ML1).
    pub index_interlacing: Option<bool>,
    /// `P_n ≼ P_n^{α+t e_i}` (JP and ML1) or `L^{α} ≼ L^{α+t}` (ML2).
    pub parameter_interlacing: Option<bool>,
    /// `P_n^{β+1} ≼ P_n^{β}` (JP with integer `β`).
    pub beta_interlacing: Option<bool>,
}

impl TypeTwoVerdict {
    pub fn claims_hold(&self) -> bool {
        self.real_rooted
            && self.in_support
            && [self.index_interlacing, self.parameter_interlacing, self.beta_interlacing].iter().all(|c| c.unwrap_or(true))
    }
}

/// Interlacing in the index and in the parameters for a Type II family, `0 ≤ t ≤ 2`.
///
/// The `α`-interlacing is skipped (`None`) when `α_i - α_j + t` is an integer.
pub fn theorem_suite_interlacing(spec: &MopSpec, n: &MultiIndex, i: usize, t: &Rational, prec: u32) -> Result<TypeTwoVerdict> {
    if spec.family.is_type_one() {
        return Err(Error::InvalidParameters(format!("{} is not a Type II family", spec.family)));
    }
    check_index(n, i)?;
    let p = spec.polynomial(n, 0)?;
    let zeros = real_zeros(&p, prec)?;
    let support = if spec.family == Family::JpII { (Some(0.0), Some(1.0)) } else { (Some(0.0), None) };
    let (index_interlacing, parameter_interlacing) = if spec.family == Family::Ml2II {
        let moved = MopSpec { alpha: shifted(&spec.alpha, t), ..spec.clone() }.polynomial(n, 0)?;
        (None, zero_interlacing(&p, &moved, prec)?)
    } else {
        let next = spec.polynomial(&n.plus_e(i), 0)?;
        let mut alpha = spec.alpha.clone();
        alpha[i] += t;
        let admissible = (0..n.r()).filter(|&j| j != i).all(|j| !Rational::from(&alpha[i] - &spec.alpha[j]).is_integer());
        let param = if admissible { zero_interlacing(&p, &MopSpec { alpha, ..spec.clone() }.polynomial(n, 0)?, prec)? } else { None };
        (zero_interlacing(&next, &p, prec)?, param)
    };
    let beta_interlacing = if spec.family == Family::JpII && spec.beta.is_integer() {
        let up = MopSpec { beta: Rational::from(&spec.beta + 1u32), ..spec.clone() }.polynomial(n, 0)?;
        zero_interlacing(&up, &p, prec)?
    } else {
        None
    };
    Ok(TypeTwoVerdict {
        family: spec.family,
        real_rooted: zeros.is_some(),
        in_support: zeros.as_deref().is_some_and(|z| inside(z, support)),
        index_interlacing,
        parameter_interlacing,
        beta_interlacing,
    })
}

/// Number of strict sign changes along a sequence of values (zeros skipped).
pub fn sign_changes(values: &[Float]) -> usize {
    let signs: Vec<bool> = values.iter().filter(|v| !v.is_zero()).map(|v| v.is_sign_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("jp1-typeI".parse::<Family>().unwrap(), Family::JpI);
        assert!("hermite".parse::<Family>().is_err());
    }

    #[test]
    fn step_line_indices() {
        assert_eq!(MultiIndex::step_line(7, 2).unwrap().entries(), &[3, 4]);
        assert_eq!(MultiIndex::step_line(9, 3).unwrap().entries(), &[3, 3, 3]);
        assert!(mi(&[3, 4]).is_step_line());
        assert!(!mi(&[4, 3]).is_step_line());
        assert!(MultiIndex::new(vec![2, 0]).is_err());
    }

    #[test]
    fn jp_type1_r1_is_jacobi() {
        let p = jp_type1(&mi(&[3]), &[q(1, 2)], &r(1), 0).unwrap();
        let want = hyper_poly(&HyperSpec::new(2, vec![q(1, 2) + 1u32 + 3u32], vec![q(3, 2)])).unwrap();
        assert_eq!(p, want);
        assert_eq!(jp_type1(&mi(&[1, 2]), &[q(1, 2), q(1, 3)], &r(0), 0).unwrap().n(), 0);
    }

    #[test]
    fn type1_decompositions_are_proportional() {
        let n = mi(&[3, 4]);
        let alpha = [q(1, 2), q(3, 7)];
        for i in 0..2 {
            let jp = jp_type1(&n, &alpha, &r(1), i).unwrap();
            let dec = mult_conv_all(&jp_type1_blocks(&n, &alpha, &r(1), i).unwrap(), n.get(i) - 1).unwrap();
            assert!(jp.proportional(&dec));
            let ml = ml1_type1(&n, &alpha, i).unwrap();
            let dec = mult_conv_all(&ml1_type1_blocks(&n, &alpha, i).unwrap(), n.get(i) - 1).unwrap();
            assert!(ml.proportional(&dec));
            let v = laguerre_bridge_factor(&n, &alpha, &r(1), i).unwrap();
            assert!(ml.proportional(&mult_conv(&v, &jp, n.get(i) - 1).unwrap()));
        }
    }

    #[test]
    fn jp_type2_routes_agree() {
        let n = mi(&[2, 2]);
        let alpha = [q(1, 2), q(3, 7)];
        let direct = jp_type2(&n, &alpha, &r(1)).unwrap();
        assert!(direct.proportional(&jp_type2_decomposition(&n, &alpha, &r(1)).unwrap()));
        assert!(direct.proportional(&jp_type2_reversed(&n, &alpha, &r(1)).unwrap()));
        let half = jp_type2(&n, &alpha, &q(1, 2)).unwrap();
        assert!(half.proportional(&jp_type2_reversed(&n, &alpha, &q(1, 2)).unwrap()));
        assert!(matches!(jp_type2_decomposition(&n, &alpha, &q(1, 2)), Err(Error::NonIntegerBetaPath)));
    }

    #[test]
    fn ml1_type2_reciprocal_form() {
        let n = mi(&[2, 3]);
        let alpha = [q(1, 2), q(3, 7)];
        let p = ml1_type2(&n, &alpha).unwrap();
        assert!(p.reverse().proportional(&ml1_type2_reversed(&n, &alpha).unwrap()));
        // r = 1 is the classical Laguerre polynomial
        let l = ml1_type2(&mi(&[3]), &[q(1, 2)]).unwrap();
        assert!(l.proportional(&hyper_poly(&HyperSpec::new(3, vec![], vec![q(3, 2)])).unwrap()));
    }

    #[test]
    fn ml2_type2_forms() {
        let n = mi(&[2, 2]);
        let (a, c) = (q(1, 2), [r(1), r(2)]);
        let direct = ml2_type2(&n, &a, &c).unwrap();
        let sign = Rational::from(if n.total() % 2 == 1 { -1 } else { 1 });
        assert_eq!(ml2_type2_factored(&n, &a, &c).unwrap(), direct.scale(&sign));
        assert!(direct.proportional(&ml2_type2_sum_form(&n, &a, &c).unwrap()));
    }

    #[test]
    fn ml2_type1_forms() {
        let n = mi(&[3, 2]);
        for i in 0..2 {
            let p = ml2_type1(&n, &q(1, 2), &[r(1), r(2)], i).unwrap();
            assert!(p.proportional(&ml2_type1_kdf_form(&n, &q(1, 2), &[r(1), r(2)], i).unwrap()));
        }
        // r = 1: a single 1F1 block
        let p = ml2_type1(&mi(&[3]), &q(1, 2), &[r(2)], 0).unwrap();
        let want = hyper_poly(&HyperSpec::new(2, vec![], vec![q(3, 2)]).with_scale(r(2))).unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn orthogonality_examples() {
        let cases = [
            MopSpec::jp(false, vec![q(1, 2), q(3, 7)], r(1)),
            MopSpec::jp(true, vec![q(1, 2), q(3, 7)], r(1)),
            MopSpec::ml1(true, vec![q(1, 2), q(3, 7)]),
            MopSpec::ml1(false, vec![q(1, 2), q(3, 7)]),
            MopSpec::ml2(true, q(1, 2), vec![r(1), r(2)]),
            MopSpec::ml2(false, q(1, 2), vec![r(1), r(2)]),
        ];
        for spec in &cases {
            for n in [mi(&[2, 2]), mi(&[2, 1])] {
                let rep = verify_orthogonality(spec, &n, 256).unwrap();
                assert!(rep.max_residual < 1e-25, "{} {:?}: {}", spec.family, n, rep.max_residual);
                if let Some(norm) = rep.normalization {
                    assert!(norm > 1e-10, "{} {:?}: normalization {norm}", spec.family, n);
                }
            }
        }
        let jacobi = MopSpec::jp(false, vec![q(1, 3)], r(0));
        assert!(verify_orthogonality(&jacobi, &mi(&[4]), 256).unwrap().max_residual < 1e-25);
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        let n = mi(&[2, 2]);
        assert!(MopSpec::jp(true, vec![q(1, 2), q(3, 2)], r(1)).validate(&n).is_err());
        assert!(MopSpec::jp(true, vec![q(1, 2), r(-2)], r(1)).validate(&n).is_err());
        assert!(matches!(MopSpec::ml2(false, q(1, 2), vec![r(1), r(1)]).validate(&n), Err(Error::DuplicateC)));
        assert!(MopSpec::ml1(false, vec![q(1, 2)]).validate(&n).is_err());
    }
}

#[cfg(test)]
mod theorem_tests {
    use super::*;
    use crate::rat::q;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn jp_type1_zero_location_and_monotonicity() {
        let spec = MopSpec::jp(true, vec![q(9, 20), q(1, 5)], r(1));
        let n = mi(&[3, 4]);
        for i in 0..2 {
            let v = theorem_suite_zero_location(&spec, &n, i, &r(1), 256).unwrap();
            assert!(v.hypotheses && v.claims_hold(), "{v:?}");
        }
    }

    #[test]
    fn odd_r_monotonicity() {
        let n = mi(&[3, 3, 3]);
        for spec in [MopSpec::jp(true, vec![q(7, 10), q(9, 20), q(1, 5)], q(1, 2)), MopSpec::ml1(true, vec![q(7, 10), q(9, 20), q(1, 5)])] {
            for i in 0..3 {
                let v = theorem_suite_zero_location(&spec, &n, i, &q(3, 2), 256).unwrap();
                assert!(v.hypotheses && v.claims_hold(), "{v:?}");
            }
        }
    }

    #[test]
    fn ml1_type1_zero_location() {
        let spec = MopSpec::ml1(true, vec![q(9, 20), q(1, 5)]);
        let v = theorem_suite_zero_location(&spec, &mi(&[3, 4]), 1, &r(1), 256).unwrap();
        assert!(v.hypotheses && v.claims_hold(), "{v:?}");
    }

    #[test]
    fn window_guard() {
        // α gap wider than the window
        let alpha = [q(5, 2), q(1, 3)];
        assert!(!type1_window_holds(&alpha, &mi(&[3, 3]), 1));
        let spec = MopSpec::jp(true, alpha.to_vec(), r(1));
        let v = theorem_suite_zero_location(&spec, &mi(&[3, 3]), 1, &r(1), 256).unwrap();
        assert!(!v.hypotheses && v.claims_hold());
    }

    #[test]
    fn type2_interlacing() {
        let n = mi(&[3, 3]);
        for spec in [
            MopSpec::jp(false, vec![q(1, 2), q(3, 7)], r(1)),
            MopSpec::ml1(false, vec![q(1, 2), q(3, 7)]),
            MopSpec::ml2(false, q(1, 2), vec![r(1), r(2)]),
        ] {
            for i in 0..2 {
                let v = theorem_suite_interlacing(&spec, &n, i, &r(1), 256).unwrap();
                assert!(v.claims_hold(), "{v:?}");
            }
        }
    }

    #[test]
    fn type1_function_sign_changes() {
        let spec = MopSpec::jp(true, vec![q(1, 2), q(3, 7)], r(1));
        let n = mi(&[2, 2]);
        let xs: Vec<Float> = (1..2000).map(|k| Float::with_val(256, k) / 2000u32).collect();
        let vals = type1_function_eval(&spec, &n, &xs, 256).unwrap();
        assert!(sign_changes(&vals) >= n.total() - 1);
    }
}
