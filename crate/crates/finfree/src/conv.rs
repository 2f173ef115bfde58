//! Finite free multiplicative and additive convolutions.
//!
//! Both operations are defined relative to an ambient degree `n`, take exact
//! rational inputs only, and are bilinear.

use rug::Rational;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{binomial, factorial};

fn check(p: &Poly, n: usize) -> Result<()> {
    if p.n() != n {
        return Err(Error::DegreeMismatch { expected: n, got: p.n() });
    }
    Ok(())
}

/// `e_k(p ⊠ q) = e_k(p) e_k(q) / C(n, k)`.
pub fn mult_conv(p: &Poly, q: &Poly, n: usize) -> Result<Poly> {
    check(p, n)?;
    check(q, n)?;
    let e = (0..=n)
        .map(|k| Rational::from(p.e_j(k) * q.e_j(k)) / binomial(n, k))
        .collect();
    Ok(Poly::from_e(e))
}

/// `e_k(p ⊞ q) = n!/(n-k)! * sum_{i+j=k} e_i(p) e_j(q) (n-i)! (n-j)! / n!^2`.
pub fn add_conv(p: &Poly, q: &Poly, n: usize) -> Result<Poly> {
    check(p, n)?;
    check(q, n)?;
    // e_i / n^(i) with n^(i) = n!/(n-i)!
    let nf = factorial(n);
    let scaled = |x: &Poly| -> Vec<Rational> {
        (0..=n).map(|i| Rational::from(x.e_j(i) * factorial(n - i)) / &nf).collect()
    };
    let (sp, sq) = (scaled(p), scaled(q));
    let e = (0..=n)
        .map(|k| {
            let mut acc = Rational::new();
            for i in 0..=k {
                if sp[i] != 0 && sq[k - i] != 0 {
                    acc += Rational::from(&sp[i] * &sq[k - i]);
                }
            }
            acc * &nf / factorial(n - k)
        })
        .collect();
    Ok(Poly::from_e(e))
}

/// Folds `⊠_n` over a non-empty list.
pub fn mult_conv_all(ps: &[Poly], n: usize) -> Result<Poly> {
    fold(ps, n, mult_conv)
}

/// Folds `⊞_n` over a non-empty list.
pub fn add_conv_all(ps: &[Poly], n: usize) -> Result<Poly> {
    fold(ps, n, add_conv)
}

fn fold(ps: &[Poly], n: usize, op: fn(&Poly, &Poly, usize) -> Result<Poly>) -> Result<Poly> {
    let (first, rest) = ps.split_first().ok_or(Error::InvalidParameters("empty convolution".into()))?;
    check(first, n)?;
    rest.iter().try_fold(first.clone(), |acc, p| op(&acc, p, n))
}

/// `(Dil_α p) ⊠ q = p ⊠ (Dil_α q) = Dil_α(p ⊠ q)`, checked exactly.
pub fn check_identity_dilation_distribute(p: &Poly, q: &Poly, n: usize, alpha: &Rational) -> Result<bool> {
    let lhs = mult_conv(&p.dilate(alpha)?, q, n)?;
    let mid = mult_conv(p, &q.dilate(alpha)?, n)?;
    let rhs = mult_conv(p, q, n)?.dilate(alpha)?;
    Ok(lhs == mid && mid == rhs)
}

/// `(Dil_α p) ⊞ (Dil_α q) ≃ Dil_α(p ⊞ q)`.
pub fn check_identity_dilation_additive(p: &Poly, q: &Poly, n: usize, alpha: &Rational) -> Result<bool> {
    let lhs = add_conv(&p.dilate(alpha)?, &q.dilate(alpha)?, n)?;
    let rhs = add_conv(p, q, n)?.dilate(alpha)?;
    Ok(lhs.proportional(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, r};

    fn m(n: usize, a: &[i64]) -> Poly {
        Poly::from_monomial(n, &a.iter().map(|&x| r(x)).collect::<Vec<_>>())
    }

    #[test]
    fn mult_examples() {
        let p = m(2, &[1, -2, 1]);
        let qq = m(2, &[2, -3, 1]);
        assert_eq!(mult_conv(&p, &qq, 2).unwrap(), qq);
        let pp = Poly::from_roots(&[r(1), q(2, 3), r(-4)]);
        assert_eq!(mult_conv(&pp, &Poly::linear_power(3, &r(3)), 3).unwrap(), pp.dilate(&r(3)).unwrap());
        assert!(matches!(mult_conv(&p, &m(3, &[1, 0, 0, 1]), 2), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn add_examples() {
        let p = m(2, &[2, -3, 1]);
        assert_eq!(add_conv(&p, &Poly::x_pow(2), 2).unwrap(), p);
        let a = Poly::linear_power(3, &r(1));
        let b = Poly::linear_power(3, &r(2));
        assert_eq!(add_conv(&a, &b, 3).unwrap(), Poly::linear_power(3, &r(3)));
        let pp = Poly::from_roots(&[r(1), q(2, 3), r(-4), r(0)]);
        assert_eq!(add_conv(&pp, &Poly::linear_power(4, &r(-2)), 4).unwrap(), pp.shift(&r(-2)));
    }

    #[test]
    fn additive_zero_when_degrees_too_small() {
        let p = Poly::from_monomial(4, &[r(1), r(1)]);
        let qq = Poly::from_monomial(4, &[r(3), r(0), r(1)]);
        assert!(add_conv(&p, &qq, 4).unwrap().is_zero());
    }

    #[test]
    fn dilation_identities() {
        let p = Poly::from_roots(&[r(1), q(2, 3), r(-4), r(7), q(1, 5)]);
        let qq = Poly::from_roots(&[r(2), r(2), q(-1, 3), r(0), r(9)]);
        assert!(check_identity_dilation_distribute(&p, &qq, 5, &r(2)).unwrap());
        assert!(check_identity_dilation_distribute(&p, &qq, 5, &r(1)).unwrap());
        assert!(check_identity_dilation_additive(&p, &qq, 5, &q(-3, 2)).unwrap());
    }
}
