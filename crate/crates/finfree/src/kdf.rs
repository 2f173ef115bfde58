//! Multivariable Kampé de Fériet polynomials restricted to a line, and their
//! factorizations into finite free convolutions of hypergeometric polynomials.

use rug::Rational;

use crate::conv::{add_conv_all, mult_conv};
use crate::error::{Error, Result};
use crate::hypergeom::{check_denominators, hyper_poly, HyperSpec};
use crate::poly::Poly;
use crate::rat::{pow, rising_all};

#[derive(Clone, Debug, PartialEq)]
pub struct KdfSpec {
    pub n: usize,
    /// `a[0]`/`b[0]` act on the total index, `a[l]`/`b[l]` on variable `l`.
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Vec<Rational>>,
    /// Multipliers `c_1..c_r`.
    pub c: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KdfMode {
    /// Arguments `(c_1 x, ..., c_r x)`.
    AllScaled,
    /// Arguments `(c_1 x, c_2, ..., c_r)`.
    OneVariable,
}

impl KdfSpec {
    pub fn new(n: usize, a: Vec<Vec<Rational>>, b: Vec<Vec<Rational>>, c: Vec<Rational>) -> Result<Self> {
        if a.len() != c.len() + 1 || b.len() != c.len() + 1 {
            return Err(Error::InvalidParameters("need r+1 parameter tuples for r variables".into()));
        }
        if c.is_empty() {
            return Err(Error::InvalidParameters("need at least one variable".into()));
        }
        Ok(KdfSpec { n, a, b, c })
    }

    pub fn r(&self) -> usize {
        self.c.len()
    }

    fn check(&self) -> Result<()> {
        for t in &self.b {
            check_denominators(t, self.n)?;
        }
        Ok(())
    }
}

/// `(a_l)_m / (b_l)_m * z^m / m!` for `m <= n`.
fn variable_series(a: &[Rational], b: &[Rational], z: &Rational, n: usize) -> Vec<Rational> {
    crate::hypergeom::pfq_series(a, b, z, n).expect("denominators already checked")
}

fn convolve(x: &[Rational], y: &[Rational], n: usize) -> Vec<Rational> {
    crate::hypergeom::series_mul(x, y, n)
}

/// Direct expansion of the polynomial in `x`.
pub fn kdf_poly(spec: &KdfSpec, mode: KdfMode) -> Result<Poly> {
    spec.check()?;
    let n = spec.n;
    let mut a0 = vec![Rational::from(-(n as i64))];
    a0.extend(spec.a[0].iter().cloned());
    // T0(k) = (-n)_k (a0)_k / (b0)_k, no factorial
    let t0: Vec<Rational> = (0..=n).map(|k| rising_all(&a0, k) / rising_all(&spec.b[0], k)).collect();
    let r = spec.r();
    let mono = match mode {
        KdfMode::AllScaled => {
            let mut w = vec![Rational::from(1)];
            for l in 1..=r {
                w = convolve(&w, &variable_series(&spec.a[l], &spec.b[l], &spec.c[l - 1], n), n);
            }
            w.resize(n + 1, Rational::new());
            (0..=n).map(|k| Rational::from(&t0[k] * &w[k])).collect::<Vec<_>>()
        }
        KdfMode::OneVariable => {
            let u1 = variable_series(&spec.a[1], &spec.b[1], &spec.c[0], n);
            let mut w = vec![Rational::from(1)];
            for l in 2..=r {
                w = convolve(&w, &variable_series(&spec.a[l], &spec.b[l], &spec.c[l - 1], n), n);
            }
            w.resize(n + 1, Rational::new());
            (0..=n)
                .map(|l1| {
                    let mut s = Rational::new();
                    for k in l1..=n {
                        s += Rational::from(&t0[k] * &w[k - l1]);
                    }
                    s * &u1[l1]
                })
                .collect()
        }
    };
    Ok(Poly::from_monomial(n, &mono))
}

/// Convolution expression over hypergeometric leaves.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvExpr {
    Leaf(HyperSpec),
    Mult(Box<ConvExpr>, Box<ConvExpr>),
    Add(Vec<ConvExpr>),
    Reverse(Box<ConvExpr>),
}

impl ConvExpr {
    pub fn eval(&self, n: usize) -> Result<Poly> {
        match self {
            ConvExpr::Leaf(s) => hyper_poly(s),
            ConvExpr::Mult(x, y) => mult_conv(&x.eval(n)?, &y.eval(n)?, n),
            ConvExpr::Add(xs) => {
                let ps = xs.iter().map(|x| x.eval(n)).collect::<Result<Vec<_>>>()?;
                add_conv_all(&ps, n)
            }
            ConvExpr::Reverse(x) => Ok(x.eval(n)?.reverse()),
        }
    }
}

/// Leaf `F(-n, 1-b-n; 1-a-n; (-1)^(i+j) x / c)` whose coefficients are
/// `e_k = K C(n,k) (a)_k / (b)_k c^k`, together with `K`.
fn dual_leaf(n: usize, a: &[Rational], b: &[Rational], c: &Rational) -> (HyperSpec, Rational) {
    let shift = Rational::from(1 - n as i64);
    let na: Vec<Rational> = b.iter().map(|x| Rational::from(&shift - x)).collect();
    let nb: Vec<Rational> = a.iter().map(|x| Rational::from(&shift - x)).collect();
    let mut z = Rational::from(c.recip_ref());
    if (a.len() + b.len()) % 2 == 1 {
        z = -z;
    }
    // K = (-1)^n z^n (na)_n / (nb)_n
    let mut k = pow(&z, n) * rising_all(&na, n) / rising_all(&nb, n);
    if n % 2 == 1 {
        k = -k;
    }
    (HyperSpec::new(n, na, nb).with_scale(z), k)
}

/// Returns `(tree, lambda)` with `kdf_poly(spec, mode) = lambda * tree.eval(n)`.
///
/// All-scaled mode: `[q_0 ⊠ (q_1 ⊞ ... ⊞ q_r)]*`.
/// One-variable mode: `q_1 ⊠ (q_0 ⊞ q_2 ⊞ ... ⊞ q_r)`.
pub fn kdf_factorize(spec: &KdfSpec, mode: KdfMode) -> Result<(ConvExpr, Rational)> {
    if let Some(i) = spec.c.iter().position(|c| *c == 0) {
        return Err(Error::ZeroMultiplier { index: i + 1 });
    }
    spec.check()?;
    let n = spec.n;
    let r = spec.r();
    match mode {
        KdfMode::AllScaled => {
            let (q0, k0) = dual_leaf(n, &spec.a[0], &spec.b[0], &Rational::from(1));
            let mut kk = k0;
            let mut adds = Vec::with_capacity(r);
            for l in 1..=r {
                let (ql, kl) = dual_leaf(n, &spec.a[l], &spec.b[l], &spec.c[l - 1]);
                kk *= kl;
                adds.push(ConvExpr::Leaf(ql));
            }
            if kk == 0 {
                return Err(Error::DegreeDeficient { n });
            }
            let inner = ConvExpr::Mult(Box::new(ConvExpr::Leaf(q0)), Box::new(ConvExpr::Add(adds)));
            Ok((ConvExpr::Reverse(Box::new(inner)), Rational::from(kk.recip_ref())))
        }
        KdfMode::OneVariable => {
            let q0 = HyperSpec::new(n, spec.a[0].clone(), spec.b[0].clone()).with_sign(1);
            let q1 = HyperSpec::new(n, spec.a[1].clone(), spec.b[1].clone()).with_scale(-spec.c[0].clone());
            let mut kk = Rational::from(if n % 2 == 1 { -1 } else { 1 });
            let mut adds = vec![ConvExpr::Leaf(q0)];
            for l in 2..=r {
                let (ql, kl) = dual_leaf(n, &spec.a[l], &spec.b[l], &spec.c[l - 1]);
                kk *= kl;
                adds.push(ConvExpr::Leaf(ql));
            }
            if kk == 0 {
                return Err(Error::DegreeDeficient { n });
            }
            let tree = ConvExpr::Mult(Box::new(ConvExpr::Leaf(q1)), Box::new(ConvExpr::Add(adds)));
            Ok((tree, Rational::from(kk.recip_ref())))
        }
    }
}

/// Checks the reciprocal relation between two KdF polynomials obtained by
/// combining both factorizations (requires `(-1)^(i_0+j_0) = (-1)^(i_1+j_1)`):
/// the all-scaled polynomial at `(s c_1 x, c_2 x, ...)`, reversed, is
/// proportional to the one-variable polynomial with swapped, reflected
/// parameters at `(s x / c_1, -c_2 / c_1, ...)`, `s = (-1)^(i_1+j_1)`.
///
/// The sign of the remaining multipliers is forced by the two factorizations:
/// the one-variable leaves carry a dilation by `-1/c_1` on the first additive
/// factor, so the others must match it.
pub fn kdf_reciprocal_relation(spec: &KdfSpec) -> Result<bool> {
    let parity = |l: usize| (spec.a[l].len() + spec.b[l].len()) % 2;
    if parity(0) != parity(1) {
        return Err(Error::InvalidParameters("parity condition of the reciprocal relation fails".into()));
    }
    let n = spec.n;
    let s = Rational::from(if parity(1) == 1 { -1 } else { 1 });
    let mut left = spec.clone();
    left.c[0] = Rational::from(&s * &spec.c[0]);
    let lhs = kdf_poly(&left, KdfMode::AllScaled)?.reverse();

    let refl = |t: &[Rational]| -> Vec<Rational> { t.iter().map(|x| Rational::from(1 - n as i64) - x).collect() };
    let mut a = vec![refl(&spec.b[1]), refl(&spec.b[0])];
    let mut b = vec![refl(&spec.a[1]), refl(&spec.a[0])];
    a.extend(spec.a[2..].iter().cloned());
    b.extend(spec.b[2..].iter().cloned());
    let mut c = vec![s / &spec.c[0]];
    c.extend(spec.c[1..].iter().map(|x| Rational::from(-x) / &spec.c[0]));
    let right = KdfSpec::new(n, a, b, c)?;
    let rhs = kdf_poly(&right, KdfMode::OneVariable)?;
    Ok(lhs.proportional(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, r};

    fn check(spec: &KdfSpec, mode: KdfMode) {
        let direct = kdf_poly(spec, mode).unwrap();
        let (tree, lambda) = kdf_factorize(spec, mode).unwrap();
        assert_eq!(tree.eval(spec.n).unwrap().scale(&lambda), direct, "{spec:?} {mode:?}");
    }

    #[test]
    fn single_variable_is_hypergeometric() {
        let spec = KdfSpec::new(3, vec![vec![q(1, 2)], vec![r(3)]], vec![vec![q(7, 3)], vec![]], vec![r(1)]).unwrap();
        let merged = HyperSpec::new(3, vec![q(1, 2), r(3)], vec![q(7, 3)]);
        assert_eq!(kdf_poly(&spec, KdfMode::AllScaled).unwrap(), hyper_poly(&merged).unwrap());
        assert_eq!(kdf_poly(&spec, KdfMode::OneVariable).unwrap(), hyper_poly(&merged).unwrap());
        let (tree, _) = kdf_factorize(&spec, KdfMode::AllScaled).unwrap();
        assert!(matches!(tree, ConvExpr::Reverse(_)));
        check(&spec, KdfMode::AllScaled);
        check(&spec, KdfMode::OneVariable);
    }

    #[test]
    fn two_variables_brute_force() {
        let spec = KdfSpec::new(2, vec![vec![], vec![], vec![]], vec![vec![r(1)], vec![], vec![]], vec![r(1), r(1)]).unwrap();
        // sum_{l1+l2<=2} (-2)_{l1+l2}/(1)_{l1+l2} x^{l1+l2}/(l1! l2!)
        let expect = Poly::from_monomial(2, &[r(1), r(-4), r(2)]);
        assert_eq!(kdf_poly(&spec, KdfMode::AllScaled).unwrap(), expect);
        check(&spec, KdfMode::AllScaled);
    }

    #[test]
    fn factorizations_three_variables() {
        let spec = KdfSpec::new(
            3,
            vec![vec![q(5, 2)], vec![q(1, 3)], vec![], vec![q(-7, 4), r(2)]],
            vec![vec![q(9, 5)], vec![], vec![q(3, 2)], vec![q(11, 3)]],
            vec![r(2), q(-1, 3), q(5, 4)],
        )
        .unwrap();
        check(&spec, KdfMode::AllScaled);
        check(&spec, KdfMode::OneVariable);
    }

    #[test]
    fn zero_multiplier_rejected() {
        let spec = KdfSpec::new(2, vec![vec![], vec![], vec![]], vec![vec![], vec![], vec![]], vec![r(1), r(0)]).unwrap();
        assert!(matches!(kdf_factorize(&spec, KdfMode::AllScaled), Err(Error::ZeroMultiplier { index: 2 })));
    }

    #[test]
    fn reciprocal_relation_instance() {
        let spec = KdfSpec::new(
            3,
            vec![vec![q(5, 2)], vec![q(1, 3), q(2, 7)], vec![q(3, 5)]],
            vec![vec![q(9, 5), q(4, 3)], vec![q(13, 6)], vec![q(3, 2)]],
            vec![q(3, 2), q(-2, 3)],
        )
        .unwrap();
        assert!(kdf_reciprocal_relation(&spec).unwrap());
        let one = KdfSpec::new(3, spec.a[..2].to_vec(), spec.b[..2].to_vec(), spec.c[..1].to_vec()).unwrap();
        assert!(kdf_reciprocal_relation(&one).unwrap());
    }
}
