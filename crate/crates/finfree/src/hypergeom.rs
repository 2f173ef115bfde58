//! Terminating generalized hypergeometric polynomials
//! `F(-n, a; b; (-1)^l (c x + d))` and their convolution identities.

use rug::Rational;

use crate::conv::{add_conv, add_conv_all, mult_conv};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{binomial, falling_int, is_nonpositive_int_above, pow, rising_all};

#[derive(Clone, Debug, PartialEq)]
pub struct HyperSpec {
    pub n: usize,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub scale: Rational,
    pub shift: Rational,
    /// Argument sign `(-1)^sign`, `sign` in {0, 1}.
    pub sign: u8,
}

impl HyperSpec {
    pub fn new(n: usize, a: Vec<Rational>, b: Vec<Rational>) -> Self {
        HyperSpec { n, a, b, scale: Rational::from(1), shift: Rational::new(), sign: 0 }
    }

    pub fn with_scale(mut self, scale: Rational) -> Self {
        if scale < 0 {
            self.sign ^= 1;
            self.scale = -scale;
        } else {
            self.scale = scale;
        }
        self
    }

    pub fn with_shift(mut self, shift: Rational) -> Self {
        self.shift = shift;
        self
    }

    pub fn with_sign(mut self, sign: u8) -> Self {
        self.sign = sign & 1;
        self
    }

    pub fn is_plain_argument(&self) -> bool {
        self.scale == 1 && self.shift == 0 && self.sign == 0
    }

    /// Signed argument multiplier `(-1)^l c`.
    pub fn signed_scale(&self) -> Rational {
        if self.sign == 1 { Rational::from(-&self.scale) } else { self.scale.clone() }
    }

    /// Denominators must avoid {0, -1, ..., -(n-1)}.
    ///
    /// The value `-n` is accepted: `(-n)_k` does not vanish for `k <= n`, so the
    /// terminating sum stays well defined.
    pub fn check_admissible(&self) -> Result<()> {
        if self.scale == 0 {
            return Err(Error::ZeroScale);
        }
        check_denominators(&self.b, self.n)
    }

    /// Degree is exactly `n` iff no numerator lies in {0, -1, ..., -(n-1)}.
    pub fn is_full_degree(&self) -> bool {
        self.n == 0 || !self.a.iter().any(|x| is_nonpositive_int_above(x, self.n - 1))
    }
}

pub(crate) fn check_denominators(b: &[Rational], n: usize) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    for x in b {
        if is_nonpositive_int_above(x, n - 1) {
            return Err(Error::InadmissibleDenominator { value: x.to_string(), n });
        }
    }
    Ok(())
}

/// Coefficients `t_0..t_order` of `pFq(a; b; z x)` as a power series in `x`.
pub fn pfq_series(a: &[Rational], b: &[Rational], z: &Rational, order: usize) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(order + 1);
    let mut t = Rational::from(1);
    out.push(t.clone());
    for k in 0..order {
        let mut den = Rational::from(k + 1);
        for x in b {
            den *= Rational::from(x + k as u64);
        }
        if den == 0 {
            return Err(Error::InadmissibleDenominator { value: format!("{b:?}"), n: order });
        }
        for x in a {
            t *= Rational::from(x + k as u64);
        }
        t *= z;
        t /= den;
        out.push(t.clone());
    }
    Ok(out)
}

/// Expands the terminating series into a polynomial of ambient degree `n`,
/// normalized so the series' constant term (in the argument) is 1.
pub fn hyper_poly(spec: &HyperSpec) -> Result<Poly> {
    spec.check_admissible()?;
    let n = spec.n;
    let mut a = vec![Rational::from(-(n as i64))];
    a.extend(spec.a.iter().cloned());
    let t = pfq_series(&a, &spec.b, &Rational::from(1), n)?;
    let s = spec.signed_scale();
    let mono: Vec<Rational> = if spec.shift == 0 {
        t.iter().enumerate().map(|(k, tk)| tk * pow(&s, k)).collect()
    } else {
        // (-1)^l (c x + d) = s x + s d / c, expanded binomially in x
        let d = Rational::from(&spec.shift * &s) / &spec.scale;
        let mut m = vec![Rational::new(); n + 1];
        for (k, tk) in t.iter().enumerate() {
            if *tk == 0 {
                continue;
            }
            for (i, slot) in m.iter_mut().enumerate().take(k + 1) {
                let c = Rational::from(binomial(k, i)) * pow(&s, i) * pow(&d, k - i);
                *slot += c * tk;
            }
        }
        m
    };
    Ok(Poly::from_monomial(n, &mono))
}

/// Parameters of the derivative: `n -> n-1`, `a -> a+1`, `b -> b+1`.
pub fn hyper_derivative(spec: &HyperSpec) -> Result<HyperSpec> {
    if spec.n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = spec.clone();
    out.n -= 1;
    out.a = spec.a.iter().map(|x| Rational::from(x + 1)).collect();
    out.b = spec.b.iter().map(|x| Rational::from(x + 1)).collect();
    Ok(out)
}

/// Parameter concatenation for the multiplicative convolution of two
/// plain-argument hypergeometric polynomials of the same degree.
///
/// `hyper_poly(result) = (-1)^n mult_conv(hyper_poly(s1), hyper_poly(s2))`: the
/// hypergeometric normalization fixes the constant term while the convolution
/// fixes the leading one.
pub fn hyper_mult_conv(s1: &HyperSpec, s2: &HyperSpec) -> Result<HyperSpec> {
    if s1.n != s2.n {
        return Err(Error::DegreeMismatch { expected: s1.n, got: s2.n });
    }
    if !s1.is_plain_argument() || !s2.is_plain_argument() {
        return Err(Error::InvalidParameters("multiplicative rule needs plain arguments".into()));
    }
    let mut a = s1.a.clone();
    a.extend(s2.a.iter().cloned());
    let mut b = s1.b.clone();
    b.extend(s2.b.iter().cloned());
    Ok(HyperSpec::new(s1.n, a, b))
}

/// Reciprocal polynomial as a hypergeometric spec:
/// `p* ≃ F(-n, 1-b-n; 1-a-n; (-1)^(i+j) x / s)` with `s` the signed scale.
pub fn hyper_reverse(spec: &HyperSpec) -> Result<HyperSpec> {
    if spec.shift != 0 {
        return Err(Error::InvalidParameters("reversal rule needs a zero shift".into()));
    }
    let n = spec.n as i64;
    let check = |x: &Rational| {
        if spec.n > 0 && is_nonpositive_int_above(x, spec.n - 1) {
            Err(Error::DegenerateNumerator { value: x.to_string() })
        } else {
            Ok(())
        }
    };
    spec.a.iter().try_for_each(check)?;
    let a = spec.b.iter().map(|x| Rational::from(1 - n) - x).collect();
    let b = spec.a.iter().map(|x| Rational::from(1 - n) - x).collect();
    let mut z = Rational::from(spec.signed_scale().recip_ref());
    if (spec.a.len() + spec.b.len()) % 2 == 1 {
        z = -z;
    }
    Ok(HyperSpec::new(spec.n, a, b).with_scale(z))
}

/// Symbol `A(t) = sum_k τ_k t^k` (order `n`) of the differential operator with
/// `A(d/dx) x^n ≃ hyper_poly(spec)`:
/// `A(t) = F(1-b-n; 1-a-n; (-1)^(i+j+l+1) t / c)`.
pub fn operator_symbol(spec: &HyperSpec) -> Result<Vec<Rational>> {
    spec.check_admissible()?;
    if spec.shift != 0 {
        return Err(Error::InvalidParameters("operator symbol needs a zero shift".into()));
    }
    let n = spec.n;
    if !spec.is_full_degree() {
        let bad = spec.a.iter().find(|x| is_nonpositive_int_above(x, n - 1)).unwrap();
        return Err(Error::DegenerateNumerator { value: bad.to_string() });
    }
    let num: Vec<Rational> = spec.b.iter().map(|x| Rational::from(1 - n as i64) - x).collect();
    let den: Vec<Rational> = spec.a.iter().map(|x| Rational::from(1 - n as i64) - x).collect();
    let mut z = Rational::from(spec.scale.recip_ref());
    if (spec.a.len() + spec.b.len() + spec.sign as usize + 1) % 2 == 1 {
        z = -z;
    }
    pfq_series(&num, &den, &z, n)
}

/// `sum_k τ_k D^k x^n`.
pub fn apply_symbol(symbol: &[Rational], n: usize) -> Poly {
    let e = (0..=n)
        .map(|k| {
            let t = symbol.get(k).cloned().unwrap_or_default() * falling_int(n, k);
            if k % 2 == 1 { -t } else { t }
        })
        .collect();
    Poly::from_e(e)
}

/// Truncated product of power series.
pub fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut c = vec![Rational::new(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            c[i + j] += Rational::from(x * y);
        }
    }
    c
}

/// Computes `p ⊞_n q` a second way, by applying the product of the two
/// operator symbols to `x^n`, and reports whether both agree up to a scalar.
pub fn additive_hg_verify(s1: &HyperSpec, s2: &HyperSpec) -> Result<bool> {
    if s1.n != s2.n {
        return Err(Error::DegreeMismatch { expected: s1.n, got: s2.n });
    }
    let n = s1.n;
    let direct = add_conv(&hyper_poly(s1)?, &hyper_poly(s2)?, n)?;
    let sym = series_mul(&operator_symbol(s1)?, &operator_symbol(s2)?, n);
    let via_ops = apply_symbol(&sym, n);
    Ok(direct.proportional(&via_ops))
}

/// Factor series `F(1-b-n; 1-a-n; (-1)^(i+j+l+1) x)` of the reversed-product
/// representation, truncated at degree `n`.
fn factor_series(spec: &HyperSpec) -> Result<Vec<Rational>> {
    if spec.scale != 1 || spec.shift != 0 {
        return Err(Error::InvalidParameters("factor series needs unit scale and zero shift".into()));
    }
    operator_symbol(spec)
}

/// Product `p(x)` of the factor series attached to `specs`, truncated at degree `n`.
pub fn factor_product(specs: &[HyperSpec]) -> Result<Poly> {
    let n = common_degree(specs)?;
    let mut acc = vec![Rational::from(1)];
    for s in specs {
        acc = series_mul(&acc, &factor_series(s)?, n);
    }
    acc.resize(n + 1, Rational::new());
    Ok(Poly::from_monomial(n, &acc))
}

/// For `p` the (degree `n`) product of the factor series, returns
/// `F(-n, 1;; x) ⊠_n (hyper_poly(s_1) ⊞_n ... ⊞_n hyper_poly(s_m))`, which is
/// proportional to `p*`.
pub fn reversed_product_representation(specs: &[HyperSpec]) -> Result<Poly> {
    let n = common_degree(specs)?;
    let p = factor_product(specs)?;
    if p.degree() != Some(n) {
        return Err(Error::DegreeDeficient { n });
    }
    let polys = specs.iter().map(hyper_poly).collect::<Result<Vec<_>>>()?;
    let sum = add_conv_all(&polys, n)?;
    let f20 = hyper_poly(&HyperSpec::new(n, vec![Rational::from(1)], vec![]))?;
    mult_conv(&f20, &sum, n)
}

fn common_degree(specs: &[HyperSpec]) -> Result<usize> {
    let n = specs.first().ok_or(Error::InvalidParameters("no factors".into()))?.n;
    if let Some(s) = specs.iter().find(|s| s.n != n) {
        return Err(Error::DegreeMismatch { expected: n, got: s.n });
    }
    Ok(n)
}

/// Leading coefficient of `hyper_poly(spec)` for plain-argument specs:
/// `(-1)^n prod (a)_n / prod (b)_n * s^n`, where the `(-n)_n / n!` factor is `(-1)^n`.
pub fn leading_coefficient(spec: &HyperSpec) -> Rational {
    let n = spec.n;
    let mut c = rising_all(&spec.a, n) / rising_all(&spec.b, n) * pow(&spec.signed_scale(), n);
    if n % 2 == 1 {
        c = -c;
    }
    c
}
