//! Set partitions, non-crossing partitions, the Kreweras complement, Möbius
//! inversion and finite free cumulants.

use std::collections::HashMap;

use rug::Rational;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::rat::{factorial, falling_int, pow};

pub const MAX_ENUM: usize = 12;

/// Partition of `{1..k}`; blocks are sorted and ordered by their minima.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; k + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidParameters("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > k || seen[x] {
                    return Err(Error::InvalidParameters(format!("element {x} repeated or out of range")));
                }
                seen[x] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidParameters("blocks do not cover 1..k".into()));
        }
        Ok(Self::normalized(k, blocks))
    }

    fn normalized(k: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        SetPartition { k, blocks }
    }

    /// All singletons.
    pub fn minimal(k: usize) -> Self {
        SetPartition { k, blocks: (1..=k).map(|x| vec![x]).collect() }
    }

    /// One block.
    pub fn maximal(k: usize) -> Self {
        SetPartition { k, blocks: if k == 0 { vec![] } else { vec![(1..=k).collect()] } }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    fn labels(&self) -> Vec<usize> {
        let mut lab = vec![0; self.k + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                lab[x] = i;
            }
        }
        lab
    }

    pub fn is_noncrossing(&self) -> bool {
        let lab = self.labels();
        let k = self.k;
        for a in 1..=k {
            for b in a + 1..=k {
                if lab[b] == lab[a] {
                    continue;
                }
                for c in b + 1..=k {
                    if lab[c] != lab[a] {
                        continue;
                    }
                    for d in c + 1..=k {
                        if lab[d] == lab[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.k != other.k {
            return false;
        }
        let lab = other.labels();
        self.blocks.iter().all(|b| b.iter().all(|&x| lab[x] == lab[b[0]]))
    }

    fn from_growth(rgs: &[usize]) -> Self {
        let nb = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); nb];
        for (i, &g) in rgs.iter().enumerate() {
            blocks[g].push(i + 1);
        }
        SetPartition { k: rgs.len(), blocks }
    }
}

fn guard(k: usize) -> Result<()> {
    if k > MAX_ENUM {
        return Err(Error::TooLarge { k, max: MAX_ENUM });
    }
    Ok(())
}

/// All set partitions of `{1..k}` via restricted growth strings.
pub fn enumerate_partitions(k: usize) -> Result<Vec<SetPartition>> {
    guard(k)?;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    fn rec(i: usize, max: usize, rgs: &mut [usize], out: &mut Vec<SetPartition>) {
        if i == rgs.len() {
            out.push(SetPartition::from_growth(rgs));
            return;
        }
        for g in 0..=max + 1 {
            rgs[i] = g;
            rec(i + 1, max.max(g), rgs, out);
        }
    }
    if k == 0 {
        return Ok(vec![SetPartition::minimal(0)]);
    }
    rgs[0] = 0;
    rec(1, 0, &mut rgs, &mut out);
    Ok(out)
}

/// Non-crossing partitions of `{1..k}`, built recursively from the block of 1.
pub fn enumerate_nc(k: usize) -> Result<Vec<SetPartition>> {
    guard(k)?;
    Ok(nc_on(1, k).into_iter().map(|b| SetPartition::normalized(k, b)).collect())
}

/// Non-crossing partitions of the interval `lo..=hi` as raw block lists.
fn nc_on(lo: usize, hi: usize) -> Vec<Vec<Vec<usize>>> {
    if lo > hi {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    // choose the block containing lo: lo = b_0 < b_1 < ... ; gaps are filled independently
    let rest: Vec<usize> = (lo + 1..=hi).collect();
    let m = rest.len();
    for mask in 0u32..(1u32 << m) {
        let mut block = vec![lo];
        block.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| rest[i]));
        let mut gaps = Vec::new();
        for w in block.windows(2) {
            gaps.push((w[0] + 1, w[1] - 1));
        }
        gaps.push((block[block.len() - 1] + 1, hi));
        let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![block.clone()]];
        for &(a, b) in &gaps {
            let sub = nc_on(a, b);
            let mut next = Vec::with_capacity(partial.len() * sub.len());
            for p in &partial {
                for s in &sub {
                    let mut q = p.clone();
                    q.extend(s.iter().cloned());
                    next.push(q);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

/// Möbius function of the refinement lattice by recursive inversion of zeta:
/// `μ(σ,σ) = 1`, `μ(σ,π) = -Σ_{σ ≤ ρ < π} μ(σ,ρ)`.
pub fn mobius(sigma: &SetPartition, pi: &SetPartition) -> Result<i64> {
    if !sigma.refines(pi) {
        return Err(Error::NotComparable);
    }
    guard(sigma.k)?;
    let all = enumerate_partitions(sigma.k)?;
    let interval: Vec<&SetPartition> = all.iter().filter(|r| sigma.refines(r) && r.refines(pi)).collect();
    let top = interval.iter().position(|r| *r == pi).expect("pi lies in its own interval");
    let mut memo = vec![None; interval.len()];
    Ok(mobius_rec(sigma, top, &interval, &mut memo))
}

fn mobius_rec(sigma: &SetPartition, i: usize, interval: &[&SetPartition], memo: &mut [Option<i64>]) -> i64 {
    if interval[i] == sigma {
        return 1;
    }
    if let Some(v) = memo[i] {
        return v;
    }
    let mut s = 0;
    for j in 0..interval.len() {
        if j != i && interval[j].refines(interval[i]) {
            s += mobius_rec(sigma, j, interval, memo);
        }
    }
    memo[i] = Some(-s);
    -s
}

/// Closed form `μ(0_k, π) = Π_B (-1)^(|B|-1) (|B|-1)!`.
pub fn mobius_from_bottom(pi: &SetPartition) -> i64 {
    pi.blocks.iter().map(|b| {
        let m = b.len() as i64 - 1;
        let f: i64 = (1..=m).product();
        if m % 2 == 0 { f } else { -f }
    }).product()
}

/// Kreweras complement, computed as the cycle decomposition of `π^{-1} γ`
/// with `γ = (1 2 ... k)` and each block read as an increasing cycle.
pub fn kreweras(pi: &SetPartition) -> Result<SetPartition> {
    if !pi.is_noncrossing() {
        return Err(Error::InvalidParameters("Kreweras complement needs a non-crossing partition".into()));
    }
    let k = pi.k;
    let mut inv = vec![0usize; k + 1];
    for b in &pi.blocks {
        for (i, &x) in b.iter().enumerate() {
            let next = b[(i + 1) % b.len()];
            inv[next] = x;
        }
    }
    let perm: Vec<usize> = (0..=k).map(|i| if i == 0 { 0 } else { inv[i % k + 1] }).collect();
    let mut seen = vec![false; k + 1];
    let mut blocks = Vec::new();
    for s in 1..=k {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = perm[x];
        }
        blocks.push(cyc);
    }
    Ok(SetPartition::normalized(k, blocks))
}

fn product_over<T: Field>(pi: &SetPartition, r: &[T]) -> T {
    pi.blocks.iter().fold(T::one(), |acc, b| acc.mul(&r[b.len() - 1]))
}

/// `m_k = Σ_{π ∈ NC(k)} r_π` for `k = 1..=order`; `r[j-1]` holds `r_j`.
pub fn moments_from_cumulants_nc<T: Field>(r: &[T], order: usize) -> Result<Vec<T>> {
    if r.len() < order {
        return Err(Error::InvalidParameters("cumulant sequence too short".into()));
    }
    (1..=order)
        .map(|k| Ok(enumerate_nc(k)?.iter().fold(T::zero(), |acc, p| acc.add(&product_over(p, r)))))
        .collect()
}

/// Inverse of [`moments_from_cumulants_nc`] by triangular solve.
pub fn cumulants_from_moments_nc<T: Field>(m: &[T], order: usize) -> Result<Vec<T>> {
    if m.len() < order {
        return Err(Error::InvalidParameters("moment sequence too short".into()));
    }
    let mut r: Vec<T> = Vec::with_capacity(order);
    for k in 1..=order {
        r.push(T::zero());
        let rest = enumerate_nc(k)?
            .iter()
            .filter(|p| p.len() > 1)
            .fold(T::zero(), |acc, p| acc.add(&product_over(p, &r)));
        r[k - 1] = m[k - 1].sub(&rest);
    }
    Ok(r)
}

/// `r_j(θ) = Σ_{π ∈ NC(j)} r_π(α) r_{K(π)}(β)`.
pub fn multiplicative_cumulant_product<T: Field>(ra: &[T], rb: &[T], order: usize) -> Result<Vec<T>> {
    if ra.len() < order || rb.len() < order {
        return Err(Error::InvalidParameters("cumulant sequence too short".into()));
    }
    (1..=order)
        .map(|j| {
            let mut acc = T::zero();
            for p in enumerate_nc(j)? {
                let kp = kreweras(&p)?;
                acc = acc.add(&product_over(&p, ra).mul(&product_over(&kp, rb)));
            }
            Ok(acc)
        })
        .collect()
}

/// Integer partitions of `j` as non-increasing part lists.
pub fn integer_partitions(j: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(j, j, &mut Vec::new(), &mut out);
    out
}

/// `Σ_{π ∈ P(j)} n^{|π|} μ(0_j, π) κ_π / j!`, grouped by block-size type.
///
/// A type `λ` contributes `n^{ℓ(λ)} Π_i (-1)^{λ_i-1} κ_{λ_i}/λ_i / Π_s m_s!`.
fn grouped_sum(n: usize, kappa: &[Rational], j: usize, skip_top: bool) -> Rational {
    let nq = Rational::from(n);
    let mut acc = Rational::new();
    for lam in integer_partitions(j) {
        if skip_top && lam.len() == 1 {
            continue;
        }
        let mut term = pow(&nq, lam.len());
        let mut mult: HashMap<usize, usize> = HashMap::new();
        for &part in &lam {
            *mult.entry(part).or_default() += 1;
            term *= &kappa[part - 1];
            term /= part as u64;
            if part % 2 == 0 {
                term = -term;
            }
        }
        for m in mult.values() {
            term /= factorial(*m);
        }
        acc += term;
    }
    acc
}

/// Finite free cumulants `κ_1..κ_m` (`m <= n`) of a degree-`n` polynomial,
/// normalized to be monic, solving
/// `e_j = n^(j)/(n^j j!) Σ_{π ∈ P(j)} n^{|π|} μ(0_j, π) κ_π` triangularly.
pub fn finite_free_cumulants(p: &Poly, m: usize) -> Result<Vec<Rational>> {
    let n = p.n();
    if *p.e_j(0) == 0 {
        return Err(Error::DegreeMismatch { expected: n, got: p.degree().unwrap_or(0) });
    }
    if m > n {
        return Err(Error::InvalidParameters(format!("at most {n} cumulants exist in degree {n}")));
    }
    let e0 = p.e_j(0).clone();
    let nq = Rational::from(n);
    let mut kappa = vec![Rational::new(); m];
    for j in 1..=m {
        // e_j n^j / n^(j) = grouped sum, whose single-block term is n (-1)^(j-1) κ_j / j
        let lhs = Rational::from(p.e_j(j) / &e0) * pow(&nq, j) / falling_int(n, j);
        let rest = grouped_sum(n, &kappa, j, true);
        let mut k = (lhs - rest) * j as u64 / n as u64;
        if j % 2 == 0 {
            k = -k;
        }
        kappa[j - 1] = k;
    }
    Ok(kappa)
}

/// Inverse map: the monic degree-`n` polynomial with cumulants `κ_1..κ_n`.
pub fn poly_from_finite_cumulants(n: usize, kappa: &[Rational]) -> Result<Poly> {
    if kappa.len() != n {
        return Err(Error::DegreeMismatch { expected: n, got: kappa.len() });
    }
    let nq = Rational::from(n);
    let e = (0..=n)
        .map(|j| {
            if j == 0 {
                Rational::from(1)
            } else {
                grouped_sum(n, kappa, j, false) * falling_int(n, j) / pow(&nq, j)
            }
        })
        .collect();
    Ok(Poly::from_e(e))
}

/// Reference implementation summing over all set partitions with the
/// recursively computed Möbius function.
pub fn poly_from_finite_cumulants_bruteforce(n: usize, kappa: &[Rational]) -> Result<Poly> {
    let nq = Rational::from(n);
    let mut e = vec![Rational::from(1)];
    for j in 1..=n {
        let bottom = SetPartition::minimal(j);
        let mut s = Rational::new();
        for pi in enumerate_partitions(j)? {
            let mu = mobius(&bottom, &pi)?;
            s += pow(&nq, pi.len()) * mu * product_over(&pi, kappa);
        }
        e.push(s * falling_int(n, j) / pow(&nq, j) / factorial(j));
    }
    Ok(Poly::from_e(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, r};

    fn part(k: usize, b: &[&[usize]]) -> SetPartition {
        SetPartition::new(k, b.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_nc(3).unwrap().len(), 5);
        assert_eq!(enumerate_nc(4).unwrap().len(), 14);
        assert_eq!(enumerate_nc(6).unwrap().len(), 132);
        assert_eq!(enumerate_partitions(3).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(4).unwrap().len(), 15);
        assert!(matches!(enumerate_partitions(13), Err(Error::TooLarge { .. })));
        // the NC list agrees with the crossing filter
        let filtered = enumerate_partitions(6).unwrap().into_iter().filter(|p| p.is_noncrossing()).count();
        assert_eq!(filtered, 132);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(&SetPartition::minimal(1), &SetPartition::minimal(1)).unwrap(), 1);
        assert_eq!(mobius(&SetPartition::minimal(2), &SetPartition::maximal(2)).unwrap(), -1);
        assert_eq!(mobius(&SetPartition::minimal(4), &SetPartition::maximal(4)).unwrap(), -6);
        assert!(matches!(
            mobius(&part(3, &[&[1, 2], &[3]]), &part(3, &[&[1, 3], &[2]])),
            Err(Error::NotComparable)
        ));
        let all = enumerate_partitions(4).unwrap();
        for s in &all {
            for p in &all {
                if s != p && s.refines(p) {
                    let sum: i64 = all
                        .iter()
                        .filter(|x| s.refines(x) && x.refines(p))
                        .map(|x| mobius(s, x).unwrap())
                        .sum();
                    assert_eq!(sum, 0);
                }
            }
            assert_eq!(mobius(&SetPartition::minimal(4), s).unwrap(), mobius_from_bottom(s));
        }
    }

    #[test]
    fn kreweras_examples() {
        assert_eq!(kreweras(&SetPartition::minimal(3)).unwrap(), SetPartition::maximal(3));
        assert_eq!(kreweras(&SetPartition::maximal(3)).unwrap(), SetPartition::minimal(3));
        assert_eq!(kreweras(&part(3, &[&[1, 2], &[3]])).unwrap(), part(3, &[&[1], &[2, 3]]));
        for p in enumerate_nc(5).unwrap() {
            let kp = kreweras(&p).unwrap();
            assert!(kp.is_noncrossing());
            assert_eq!(p.len() + kp.len(), 6);
        }
        assert!(kreweras(&part(4, &[&[1, 3], &[2, 4]])).is_err());
    }

    #[test]
    fn nc_moments() {
        let ones = vec![r(1); 4];
        let free_poisson = vec![r(1), r(1), r(0), r(0)];
        assert_eq!(moments_from_cumulants_nc(&free_poisson, 3).unwrap(), vec![r(1), r(2), r(4)]);
        assert_eq!(moments_from_cumulants_nc(&ones, 4).unwrap(), vec![r(1), r(2), r(5), r(14)]);
        let point = vec![q(3, 2), r(0), r(0), r(0)];
        assert_eq!(moments_from_cumulants_nc(&point, 4).unwrap(), vec![q(3, 2), q(9, 4), q(27, 8), q(81, 16)]);
        let rr = vec![q(1, 2), q(-3, 7), r(2), q(5, 3), r(-1), q(1, 9)];
        let m = moments_from_cumulants_nc(&rr, 6).unwrap();
        assert_eq!(cumulants_from_moments_nc(&m, 6).unwrap(), rr);
    }

    #[test]
    fn kreweras_product() {
        let ra = vec![q(1, 2), q(-3, 7), r(2), q(5, 3), r(-1)];
        let rb = vec![r(3), q(1, 4), q(-2, 5), r(1), q(7, 2)];
        let delta1 = vec![r(1), r(0), r(0), r(0), r(0)];
        assert_eq!(multiplicative_cumulant_product(&ra, &delta1, 5).unwrap(), ra);
        assert_eq!(
            multiplicative_cumulant_product(&ra, &rb, 5).unwrap(),
            multiplicative_cumulant_product(&rb, &ra, 5).unwrap()
        );
    }

    #[test]
    fn finite_cumulants() {
        let p = Poly::linear_power(3, &r(2));
        assert_eq!(finite_free_cumulants(&p, 3).unwrap(), vec![r(2), r(0), r(0)]);
        let p = Poly::from_roots(&[r(1), q(2, 3), r(-4), r(7), q(1, 5)]);
        let k = finite_free_cumulants(&p, 5).unwrap();
        assert_eq!(k[0], Rational::from(p.e_j(1) / 5u32));
        assert_eq!(poly_from_finite_cumulants(5, &k).unwrap(), p);
        assert_eq!(poly_from_finite_cumulants_bruteforce(5, &k).unwrap(), p);
    }
}
