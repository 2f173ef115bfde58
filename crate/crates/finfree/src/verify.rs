//! Self-check suites: randomized exact identities, transform consistency,
//! orthogonality, zero interlacing and the limit-measure reproductions.
//!
//! Every suite is deterministic for a fixed seed.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use crate::asymptotics::{
    endpoint, family_curves, moments_from_curve, s_limit_hyper, stieltjes_density, AlgebraicCurve, DensityModel,
    EndpointFamily, FormalMomentSeries, LimitParams,
};
use crate::conv::{add_conv, check_identity_dilation_additive, check_identity_dilation_distribute, mult_conv};
use crate::error::{Error, Result};
use crate::hypergeom::{
    additive_hg_verify, factor_product, hyper_derivative, hyper_mult_conv, hyper_poly, reversed_product_representation,
    HyperSpec,
};
use crate::kdf::{kdf_factorize, kdf_poly, KdfMode, KdfSpec};
use crate::mop::{
    theorem_suite_interlacing, theorem_suite_zero_location, type1_window_holds, verify_orthogonality, Family, MopSpec,
    MultiIndex,
};
use crate::partitions::{
    cumulants_from_moments_nc, finite_free_cumulants, moments_from_cumulants_nc, multiplicative_cumulant_product,
    poly_from_finite_cumulants,
};
use crate::poly::Poly;
use crate::rat::{q, r, to_f64};
use crate::roots::{find_roots, ks_distance_values, newton_moments};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Cumulants,
    Orthogonality,
    JacobiZeros,
    MarchenkoPastur,
    Endpoints,
    Moments,
    Interlacing,
    Densities,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Identities,
        Suite::Cumulants,
        Suite::Orthogonality,
        Suite::JacobiZeros,
        Suite::MarchenkoPastur,
        Suite::Endpoints,
        Suite::Moments,
        Suite::Interlacing,
        Suite::Densities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Cumulants => "cumulants",
            Suite::Orthogonality => "orthogonality",
            Suite::JacobiZeros => "jp1-zeros",
            Suite::MarchenkoPastur => "mp",
            Suite::Endpoints => "endpoints",
            Suite::Moments => "moments",
            Suite::Interlacing => "interlacing",
            Suite::Densities => "densities",
        }
    }

    /// Size bound used when none is given: degree, `|n|` or truncation order.
    pub fn default_n(self) -> usize {
        match self {
            Suite::Identities => 8,
            Suite::Cumulants | Suite::Orthogonality => 6,
            Suite::Interlacing => 9,
            _ => 0,
        }
    }

    pub fn default_draws(self) -> usize {
        match self {
            Suite::Identities => 100,
            Suite::Interlacing => 20,
            Suite::Cumulants => 50,
            _ => 1,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub n: usize,
    pub draws: usize,
    pub seed: u64,
    pub prec: u32,
}

impl SuiteOptions {
    pub fn for_suite(suite: Suite) -> Self {
        SuiteOptions { n: suite.default_n(), draws: suite.default_draws(), seed: 20240501, prec: 256 }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Identities => identities(opts),
        Suite::Cumulants => cumulants(opts)?,
        Suite::Orthogonality => orthogonality(opts)?,
        Suite::JacobiZeros => jacobi_zeros(opts)?,
        Suite::MarchenkoPastur => marchenko_pastur()?,
        Suite::Endpoints => endpoints(opts)?,
        Suite::Moments => moment_convergence()?,
        Suite::Interlacing => interlacing(opts),
        Suite::Densities => densities()?,
    };
    Ok(SuiteReport { suite, checks })
}

struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64) -> Self {
        Draw(ChaCha8Rng::seed_from_u64(seed))
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.0.gen_range(lo..=hi)
    }

    fn size(&mut self, lo: usize, hi: usize) -> usize {
        self.0.gen_range(lo..=hi)
    }

    fn rat(&mut self) -> Rational {
        q(self.int(-9, 9), self.int(1, 6))
    }

    fn nonzero(&mut self) -> Rational {
        loop {
            let x = self.rat();
            if x != 0 {
                return x;
            }
        }
    }

    /// Non-integer rational, so hypergeometric parameters are always admissible.
    fn generic(&mut self) -> Rational {
        let den = [2, 3, 5, 7][self.size(0, 3)];
        loop {
            let num = self.int(-20, 20);
            if num % den != 0 {
                return q(num, den);
            }
        }
    }

    /// Rational in `(lo, hi)` with denominator up to 12.
    fn between(&mut self, lo: &Rational, hi: &Rational) -> Rational {
        let den = self.int(2, 12);
        let t = q(self.int(1, den - 1), den);
        Rational::from(hi - lo) * t + lo
    }

    fn tuple(&mut self, max: usize) -> Vec<Rational> {
        let len = self.size(0, max);
        (0..len).map(|_| self.generic()).collect()
    }

    fn poly(&mut self, n: usize) -> Poly {
        let mut a: Vec<Rational> = (0..n).map(|_| self.rat()).collect();
        a.push(self.nonzero());
        Poly::from_monomial(n, &a)
    }

    fn spec(&mut self, n: usize) -> HyperSpec {
        HyperSpec::new(n, self.tuple(2), self.tuple(2))
    }

    fn multi_index(&mut self, r: usize, max_total: usize) -> MultiIndex {
        loop {
            let n: Vec<usize> = (0..r).map(|_| self.size(1, max_total - r + 1)).collect();
            if n.iter().sum::<usize>() <= max_total {
                return MultiIndex::new(n).unwrap();
            }
        }
    }
}

/// Runs `draws` admissible trials; `None` from `f` means the draw is skipped.
fn tally(name: &str, draws: usize, mut f: impl FnMut() -> Result<Option<bool>>) -> Check {
    let (mut done, mut fails, mut attempts) = (0, 0, 0);
    let mut first_error = None;
    while done < draws {
        attempts += 1;
        if attempts > 50 * draws.max(1) {
            return Check::new(name, false, format!("only {done} admissible draws in {attempts} attempts"));
        }
        match f() {
            Ok(Some(ok)) => {
                done += 1;
                fails += usize::from(!ok);
            }
            Ok(None) => {}
            Err(e) => {
                done += 1;
                fails += 1;
                first_error.get_or_insert(e.to_string());
            }
        }
    }
    let mut detail = format!("{fails} failures in {done} draws");
    if let Some(e) = first_error {
        detail.push_str(&format!(" (first error: {e})"));
    }
    Check::new(name, fails == 0, detail)
}

fn identities(opts: &SuiteOptions) -> Vec<Check> {
    let nmax = opts.n.max(1);
    let draws = opts.draws;
    let mut g = Draw::new(opts.seed);
    let mut out = vec![];
    out.push(tally("mult-conv with (x-a)^n dilates", draws, || {
        let n = g.size(1, nmax);
        let (p, a) = (g.poly(n), g.nonzero());
        Ok(Some(mult_conv(&p, &Poly::linear_power(n, &a), n)? == p.dilate(&a)?))
    }));
    out.push(tally("dilation commutes with mult-conv", draws, || {
        let n = g.size(1, nmax);
        let (p, qq, a) = (g.poly(n), g.poly(n), g.nonzero());
        Ok(Some(check_identity_dilation_distribute(&p, &qq, n, &a)?))
    }));
    out.push(tally("dilations compose", draws, || {
        let n = g.size(1, nmax);
        let (p, a, b) = (g.poly(n), g.nonzero(), g.nonzero());
        Ok(Some(p.dilate(&a)?.dilate(&b)? == p.dilate(&Rational::from(&a * &b))?))
    }));
    out.push(tally("dilation distributes over add-conv", draws, || {
        let n = g.size(1, nmax);
        let (p, qq, a) = (g.poly(n), g.poly(n), g.nonzero());
        Ok(Some(check_identity_dilation_additive(&p, &qq, n, &a)?))
    }));
    out.push(tally("add-conv with (x-a)^n shifts", draws, || {
        let n = g.size(1, nmax);
        let (p, a) = (g.poly(n), g.rat());
        Ok(Some(add_conv(&p, &Poly::linear_power(n, &a), n)? == p.shift(&a)))
    }));
    out.push(tally("bilinearity", draws, || {
        let n = g.size(1, nmax);
        let (p, qq, s, a) = (g.poly(n), g.poly(n), g.poly(n), g.rat());
        let comb = p.scale(&a).add(&qq)?;
        let mult = mult_conv(&comb, &s, n)? == mult_conv(&p, &s, n)?.scale(&a).add(&mult_conv(&qq, &s, n)?)?;
        let add = add_conv(&comb, &s, n)? == add_conv(&p, &s, n)?.scale(&a).add(&add_conv(&qq, &s, n)?)?;
        Ok(Some(mult && add))
    }));
    out.push(tally("commutativity and associativity", draws, || {
        let n = g.size(1, nmax);
        let (p, qq, s) = (g.poly(n), g.poly(n), g.poly(n));
        let mut ok = mult_conv(&p, &qq, n)? == mult_conv(&qq, &p, n)? && add_conv(&p, &qq, n)? == add_conv(&qq, &p, n)?;
        ok &= mult_conv(&mult_conv(&p, &qq, n)?, &s, n)? == mult_conv(&p, &mult_conv(&qq, &s, n)?, n)?;
        ok &= add_conv(&add_conv(&p, &qq, n)?, &s, n)? == add_conv(&p, &add_conv(&qq, &s, n)?, n)?;
        Ok(Some(ok))
    }));
    out.push(tally("hypergeometric derivative", draws, || {
        let n = g.size(1, nmax);
        let s = g.spec(n);
        Ok(Some(hyper_poly(&s)?.derivative()?.proportional(&hyper_poly(&hyper_derivative(&s)?)?)))
    }));
    out.push(tally("multiplicative rule for hypergeometric polynomials", draws, || {
        let n = g.size(1, nmax);
        let (s1, s2) = (g.spec(n), g.spec(n));
        let sign = r(if n.is_multiple_of(2) { 1 } else { -1 });
        let direct = mult_conv(&hyper_poly(&s1)?, &hyper_poly(&s2)?, n)?.scale(&sign);
        Ok(Some(hyper_poly(&hyper_mult_conv(&s1, &s2)?)? == direct))
    }));
    out.push(tally("additive rule via operator symbols", draws, || {
        let n = g.size(1, nmax);
        let s1 = g.spec(n).with_sign(g.size(0, 1) as u8);
        let s2 = g.spec(n).with_sign(g.size(0, 1) as u8);
        Ok(Some(additive_hg_verify(&s1, &s2)?))
    }));
    out.push(tally("reversed product representation", draws, || {
        let n = g.size(1, nmax);
        let specs: Vec<HyperSpec> = (0..g.size(1, 2)).map(|_| g.spec(n)).collect();
        match reversed_product_representation(&specs) {
            Ok(rhs) => Ok(Some(rhs.proportional(&factor_product(&specs)?.reverse()))),
            Err(Error::DegreeDeficient { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }));
    out.push(tally("Kampé de Fériet factorizations", draws, || {
        let n = g.size(1, nmax);
        let rr = g.size(1, 3);
        let a = (0..=rr).map(|_| g.tuple(1)).collect();
        let b = (0..=rr).map(|_| g.tuple(1)).collect();
        let c = (0..rr).map(|_| g.nonzero()).collect();
        let spec = KdfSpec::new(n, a, b, c)?;
        let mode = if g.size(0, 1) == 0 { KdfMode::AllScaled } else { KdfMode::OneVariable };
        match kdf_factorize(&spec, mode) {
            Ok((tree, lambda)) => Ok(Some(tree.eval(n)?.scale(&lambda) == kdf_poly(&spec, mode)?)),
            Err(Error::DegreeDeficient { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }));
    out
}

fn cumulants(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let nmax = opts.n.max(1);
    let mut g = Draw::new(opts.seed ^ 0x5eed);
    let mut out = vec![];
    out.push(tally("finite free cumulants add under add-conv", opts.draws, || {
        let n = g.size(1, nmax);
        let (p, qq) = (g.poly(n).monic()?, g.poly(n).monic()?);
        let (kp, kq) = (finite_free_cumulants(&p, n)?, finite_free_cumulants(&qq, n)?);
        let ks = finite_free_cumulants(&add_conv(&p, &qq, n)?, n)?;
        let sum: Vec<Rational> = kp.iter().zip(&kq).map(|(a, b)| Rational::from(a + b)).collect();
        Ok(Some(ks == sum && poly_from_finite_cumulants(n, &ks)? == add_conv(&p, &qq, n)?))
    }));
    out.push(tally("non-crossing moment-cumulant roundtrip to order 6", opts.draws, || {
        let m: Vec<Rational> = (0..6).map(|_| g.rat()).collect();
        let kappa = cumulants_from_moments_nc(&m, 6)?;
        let series = FormalMomentSeries::new(m.clone()).r_coeffs()?;
        Ok(Some(moments_from_cumulants_nc(&kappa, 6)? == m && series == kappa))
    }));
    // Kreweras rule against S-multiplication, Marchenko-Pastur times point masses
    let mp: Vec<Rational> = vec![r(1); 4];
    let mut ok = true;
    let mut detail = String::new();
    for c in [r(2), q(1, 3), q(-5, 2)] {
        let delta = FormalMomentSeries::new((1..=4).map(|k| crate::rat::pow(&c, k)).collect());
        let via_s = crate::asymptotics::free_mult(&FormalMomentSeries::from_r(&mp), &delta)?.r_coeffs()?;
        let via_k = multiplicative_cumulant_product(&mp, &delta.r_coeffs()?, 4)?;
        if via_s != via_k {
            ok = false;
            detail = format!("mismatch at c = {c}");
        }
    }
    out.push(Check::new("Kreweras product rule matches S-multiplication", ok, if ok { "3 point masses, order 4".into() } else { detail }));
    out.push(tally("Kreweras product rule for random measures", opts.draws, || {
        let ma: Vec<Rational> = (0..4).map(|_| g.nonzero()).collect();
        let mb: Vec<Rational> = (0..4).map(|_| g.nonzero()).collect();
        let (fa, fb) = (FormalMomentSeries::new(ma), FormalMomentSeries::new(mb));
        let via_s = crate::asymptotics::free_mult(&fa, &fb)?.r_coeffs()?;
        Ok(Some(via_s == multiplicative_cumulant_product(&fa.r_coeffs()?, &fb.r_coeffs()?, 4)?))
    }));
    Ok(out)
}

/// Multi-indices with `|n| ≤ max` used by the orthogonality suite.
fn small_indices(r: usize, max: usize) -> Vec<MultiIndex> {
    let mut out = vec![];
    let mut cur = vec![1usize; r];
    loop {
        if cur.iter().sum::<usize>() <= max {
            out.push(MultiIndex::new(cur.clone()).unwrap());
        }
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            cur[k] += 1;
            if cur[k] <= max {
                break;
            }
            cur[k] = 1;
            k += 1;
        }
    }
}

pub const ORTHOGONALITY_TOL: f64 = 1e-25;

fn orthogonality(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let max = opts.n.max(2);
    let specs = [
        MopSpec::jp(true, vec![q(1, 2), q(3, 7)], r(1)),
        MopSpec::jp(false, vec![q(1, 2), q(3, 7)], r(1)),
        MopSpec::ml1(true, vec![q(1, 2), q(3, 7)]),
        MopSpec::ml1(false, vec![q(1, 2), q(3, 7)]),
        MopSpec::ml2(true, q(1, 2), vec![r(1), r(2)]),
        MopSpec::ml2(false, q(1, 2), vec![r(1), r(2)]),
        MopSpec::jp(true, vec![q(1, 3), q(5, 4), q(-1, 2)], q(2, 3)),
        MopSpec::jp(false, vec![q(1, 3), q(5, 4), q(-1, 2)], q(2, 3)),
        MopSpec::ml1(true, vec![q(1, 3), q(5, 4), q(-1, 2)]),
        MopSpec::ml1(false, vec![q(1, 3), q(5, 4), q(-1, 2)]),
        MopSpec::ml2(true, q(1, 3), vec![r(1), q(5, 2), r(4)]),
        MopSpec::ml2(false, q(1, 3), vec![r(1), q(5, 2), r(4)]),
    ];
    let mut out = vec![];
    for family in Family::ALL {
        let mut worst: f64 = 0.0;
        let mut weakest_norm = f64::INFINITY;
        let mut count = 0;
        for spec in specs.iter().filter(|s| s.family == family) {
            for n in small_indices(spec.r(), max) {
                let rep = verify_orthogonality(spec, &n, opts.prec)?;
                worst = worst.max(rep.max_residual);
                if let Some(v) = rep.normalization {
                    weakest_norm = weakest_norm.min(v);
                }
                count += 1;
            }
        }
        let norm_ok = !family.is_type_one() || weakest_norm > 1e-10;
        let mut detail = format!("{count} multi-indices, max residual {worst:.3e}");
        if family.is_type_one() {
            detail.push_str(&format!(", min normalization ratio {weakest_norm:.3e}"));
        }
        out.push(Check::new(family.name(), worst < ORTHOGONALITY_TOL && norm_ok, detail));
    }
    Ok(out)
}

/// Zeros of the Type I Jacobi-Piñeiro component at `n = (300, 600)`, `i = 1`.
pub fn jp1_zero_sample(prec: u32) -> Result<(Vec<f64>, f64)> {
    let spec = MopSpec::jp(true, vec![q(1, 2), q(3, 7)], r(1));
    let p = spec.polynomial(&MultiIndex::new(vec![300, 600])?, 0)?;
    let roots = find_roots(&p, prec)?;
    Ok((roots.real_parts_f64(), roots.imag_margin()))
}

fn jacobi_zeros(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let prec = opts.prec.max(crate::mp::schedule(299));
    let (roots, margin) = jp1_zero_sample(prec)?;
    let min = roots.iter().cloned().fold(f64::INFINITY, f64::min);
    let model = DensityModel::jp_type_one_r2(&q(1, 3))?;
    let ks = ks_distance_values(&roots, |x| model.cdf(x));
    let mut out = vec![
        Check::new("degree 299", roots.len() == 299, format!("{} zeros", roots.len())),
        Check::new("all zeros real", margin < crate::mop::ROOT_TOL, format!("imaginary margin {margin:.3e}")),
        Check::new("all zeros negative", roots.iter().all(|x| *x < 0.0), format!("largest {:.6e}", roots.iter().cloned().fold(f64::NEG_INFINITY, f64::max))),
        Check::new("smallest zero -2.2 ± 0.1", (min + 2.2).abs() <= 0.1, format!("{min:.6}")),
        Check::new("KS distance to the limit CDF ≤ 0.05", ks <= 0.05, format!("{ks:.5}")),
    ];
    let c = model.c_star_exact.clone().unwrap_or_default();
    out.push(Check::new("c* = 2.43", c == q(243, 100), format!("{c}")));
    Ok(out)
}

fn mp_curve() -> AlgebraicCurve {
    AlgebraicCurve::from_coeffs(vec![vec![r(0), r(1)], vec![r(0), r(-1)], vec![r(1)]])
}

fn marchenko_pastur() -> Result<Vec<Check>> {
    let s = s_limit_hyper(&[], &[r(0)]);
    let series = s.series(6)?;
    let alternating = series.iter().enumerate().all(|(k, c)| *c == if k % 2 == 0 { 1 } else { -1 });
    let curve = s.curve();
    let oracle = moments_from_cumulants_nc(&vec![r(1); 4], 4)?;
    let via_s = s.moments(4)?;
    let via_curve = moments_from_curve(&curve, 4)?;
    let xs = [-0.05, 0.05, 2.0, 3.95, 4.05];
    let d = stieltjes_density(&curve, &xs, 1e-3)?;
    let support_ok = d[0].density.abs() < 1e-10 && d[4].density.abs() < 1e-10 && d[1].density > 0.0 && d[3].density > 0.0;
    let at2 = d[2].density;
    Ok(vec![
        Check::new("S(z) = 1/(z+1)", alternating, format!("{:?}", series.iter().map(|x| x.to_string()).collect::<Vec<_>>())),
        Check::new("curve y^2 - u y + u", curve.proportional(&mp_curve()), curve.to_string()),
        Check::new("support [0, 4]", support_ok, format!("density at -0.05, 0.05, 3.95, 4.05: {:.2e} {:.4} {:.4} {:.2e}", d[0].density, d[1].density, d[3].density, d[4].density)),
        Check::new(
            "moments 1, 2, 5, 14",
            via_s == oracle && via_curve == oracle && oracle == [r(1), r(2), r(5), r(14)],
            via_s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ").to_string(),
        ),
        Check::new("density(2) = 1/(2π)", (at2 - 1.0 / (2.0 * PI)).abs() <= 1e-8, format!("{at2:.12}")),
    ])
}

fn endpoints(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let half = endpoint(EndpointFamily::Ml1TypeTwoR2, &q(1, 2))?;
    let tiny = endpoint(EndpointFamily::Ml1TypeTwoR2, &q(1, 100_000_000))?;
    let trend: Vec<f64> = [q(1, 100), q(1, 10_000), q(1, 1_000_000)]
        .iter()
        .map(|t| endpoint(EndpointFamily::Ml1TypeTwoR2, t).map(|e| e.value))
        .collect::<Result<_>>()?;
    let approaching = trend.windows(2).all(|w| (w[1] - 4.0).abs() < (w[0] - 4.0).abs());
    // largest zero of L^{(0, 1/3)}_{(64,64)}(128 x)
    let spec = MopSpec::ml1(false, vec![r(0), q(1, 3)]);
    let p = spec.polynomial(&MultiIndex::new(vec![64, 64])?, 0)?;
    let zeros = find_roots(&p, opts.prec.max(crate::mp::schedule(128)))?.real_parts_f64();
    let largest = zeros.iter().cloned().fold(f64::NEG_INFINITY, f64::max) / 128.0;
    let rel = (largest - 3.375).abs() / 3.375;
    let b0 = endpoint(EndpointFamily::JpTypeTwoR2B, &r(0))?;
    let a0 = endpoint(EndpointFamily::JpTypeTwoR2A, &r(0))?;
    Ok(vec![
        Check::new("c*(1/2) = 27/8", half.exact == Some(q(27, 8)), format!("{:?}", half.exact.map(|x| x.to_string()))),
        Check::new("c*(θ) → 4 as θ → 0", (tiny.value - 4.0).abs() < 1e-6 && approaching, format!("{:.9} at θ = 1e-8", tiny.value)),
        Check::new("largest zero at n = (64, 64) within 5% of 27/8", rel < 0.05, format!("{largest:.5} ({:.2}%)", 100.0 * rel)),
        Check::new("b*(0) = 1", b0.exact == Some(r(1)), format!("{}", b0.value)),
        Check::new("a*(0) = 0", a0.exact == Some(r(0)), format!("{}", a0.value)),
    ])
}

/// One family of the moment-convergence suite.
pub struct MomentCase {
    pub family: Family,
    pub spec: MopSpec,
    pub params: LimitParams,
    /// Multi-indices in increasing size.
    pub indices: Vec<MultiIndex>,
    pub i: usize,
}

pub fn moment_cases() -> Vec<MomentCase> {
    let diag = |n: usize| MultiIndex::new(vec![n / 2, n / 2]).unwrap();
    let sizes = [32usize, 64, 128];
    let half = LimitParams::constant(vec![q(1, 2), q(1, 2)]);
    vec![
        MomentCase {
            family: Family::JpI,
            spec: MopSpec::jp(true, vec![q(1, 2), q(3, 7)], r(1)),
            params: LimitParams::constant(vec![q(1, 4), q(3, 4)]),
            indices: sizes.iter().map(|n| MultiIndex::new(vec![n / 4, 3 * n / 4]).unwrap()).collect(),
            // the diagonal has no moment limit; the longer component converges fastest
            i: 2,
        },
        MomentCase {
            family: Family::JpII,
            spec: MopSpec::jp(false, vec![q(1, 2), q(3, 7)], r(1)),
            params: half.clone(),
            indices: sizes.iter().map(|&n| diag(n)).collect(),
            i: 1,
        },
        MomentCase {
            family: Family::Ml1II,
            spec: MopSpec::ml1(false, vec![q(1, 2), q(3, 7)]),
            params: half.clone(),
            indices: sizes.iter().map(|&n| diag(n)).collect(),
            i: 1,
        },
        MomentCase {
            family: Family::Ml2II,
            spec: MopSpec::ml2(false, q(1, 2), vec![r(1), r(2)]),
            params: half.with_a(vec![r(0)]).with_c(vec![r(1), r(2)]),
            indices: sizes.iter().map(|&n| diag(n)).collect(),
            i: 1,
        },
    ]
}

/// Relative errors `|m_k(p_n) - m_k| / |m_k|`, `k = 1..=order`, per multi-index.
pub fn moment_errors(case: &MomentCase, order: usize) -> Result<Vec<Vec<f64>>> {
    let lim = family_curves(case.family, &case.params.clone().with_index(case.i))?;
    let exact = lim.moments(order)?;
    case.indices
        .iter()
        .map(|n| {
            let p = case.spec.polynomial(n, case.i - 1)?;
            let m = newton_moments(&p, order)?;
            let s = Rational::from(lim.scaling.factor(n.entries(), case.i));
            Ok((0..order)
                .map(|k| {
                    let scaled = &m[k] / crate::rat::pow(&s, k + 1);
                    to_f64(&((scaled - &exact[k]) / &exact[k])).abs()
                })
                .collect())
        })
        .collect()
}

fn moment_convergence() -> Result<Vec<Check>> {
    let mut out = vec![];
    for case in moment_cases() {
        let errs = moment_errors(&case, 3)?;
        let monotone = (0..3).all(|k| errs.windows(2).all(|w| w[1][k] < w[0][k]));
        let last = errs.last().map_or(f64::INFINITY, |e| e.iter().cloned().fold(0.0, f64::max));
        let detail = errs
            .iter()
            .zip(&case.indices)
            .map(|(e, n)| format!("{:?}: {}", n.entries(), e.iter().map(|x| format!("{x:.2e}")).collect::<Vec<_>>().join(" ")))
            .collect::<Vec<_>>()
            .join("; ");
        out.push(Check::new(case.family.name(), monotone && last < 0.05, detail));
    }
    Ok(out)
}

fn interlacing(opts: &SuiteOptions) -> Vec<Check> {
    let max = opts.n.max(4);
    let draws = opts.draws;
    let prec = opts.prec;
    let mut g = Draw::new(opts.seed ^ 0x11);
    let mut out = vec![];
    for family in [Family::JpI, Family::Ml1I] {
        out.push(tally(&format!("{} zero location and monotonicity", family.name()), draws, || {
            let rr = g.size(2, 3);
            let n = g.multi_index(rr, max);
            let alpha: Vec<Rational> = (0..rr).map(|_| g.between(&r(0), &r(3))).collect();
            if !distinct_mod_integers(&alpha) {
                return Ok(None);
            }
            let i = g.size(0, rr - 1);
            if !type1_window_holds(&alpha, &n, i) {
                return Ok(None);
            }
            let t = g.between(&r(0), &r(2));
            let spec = match family {
                Family::JpI => MopSpec::jp(true, alpha, g.between(&r(-1), &r(3))),
                _ => MopSpec::ml1(true, alpha),
            };
            let v = theorem_suite_zero_location(&spec, &n, i, &t, prec)?;
            Ok(Some(v.claims_hold()))
        }));
    }
    for family in [Family::JpII, Family::Ml1II, Family::Ml2II] {
        out.push(tally(&format!("{} interlacing", family.name()), draws, || {
            let rr = g.size(2, 3);
            // the index step n + e_i stays within |n| ≤ max
            let n = g.multi_index(rr, max - 1);
            let i = g.size(0, rr - 1);
            let t = g.between(&r(0), &r(2));
            let spec = match family {
                Family::Ml2II => {
                    let mut c: Vec<Rational> = vec![];
                    while c.len() < rr {
                        let x = g.between(&r(0), &r(4));
                        if !c.contains(&x) {
                            c.push(x);
                        }
                    }
                    MopSpec::ml2(false, g.between(&r(-1), &r(3)), c)
                }
                _ => {
                    let alpha: Vec<Rational> = (0..rr).map(|_| g.between(&r(-1), &r(3))).collect();
                    if !distinct_mod_integers(&alpha) {
                        return Ok(None);
                    }
                    if family == Family::JpII {
                        let beta = if g.size(0, 1) == 0 { r(g.int(0, 3)) } else { g.between(&r(-1), &r(3)) };
                        MopSpec::jp(false, alpha, beta)
                    } else {
                        MopSpec::ml1(false, alpha)
                    }
                }
            };
            let v = theorem_suite_interlacing(&spec, &n, i, &t, prec)?;
            Ok(Some(v.claims_hold()))
        }));
    }
    out
}

fn distinct_mod_integers(alpha: &[Rational]) -> bool {
    (0..alpha.len()).all(|a| (0..a).all(|b| !Rational::from(&alpha[a] - &alpha[b]).is_integer()))
}

/// Least-squares slope of `log f` against `log t`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|(t, f)| (t.ln(), f.ln())).collect();
    let n = logs.len() as f64;
    let (mx, my) = logs.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    let (sxy, sxx) = logs.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    sxy / sxx
}

fn logspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k).map(|j| (lo.ln() + (hi.ln() - lo.ln()) * j as f64 / (k - 1) as f64).exp()).collect()
}

pub const DENSITY_TOL: f64 = 1e-6;

fn densities() -> Result<Vec<Check>> {
    let mut out = vec![];
    let third = q(1, 3);
    let two_comp = |t: &Rational| LimitParams::constant(vec![t.clone(), r(1) - t.clone()]);
    let jp1 = DensityModel::jp_type_one_r2(&third)?;
    let lim = family_curves(Family::JpI, &two_comp(&third))?;
    let xs: Vec<f64> = (0..=200).map(|k| -0.99 * jp1.c_star + (0.99 - 0.01) * jp1.c_star * k as f64 / 200.0).collect();
    let gap = stieltjes_density(&lim.curve, &xs, 1e-3)?
        .iter()
        .map(|s| (s.density - jp1.density(s.x)).abs())
        .fold(0.0, f64::max);
    out.push(Check::new("jp1 θ=1/3 solver vs closed form", gap < DENSITY_TOL, format!("max gap {gap:.3e}")));
    let mut models = vec![("jp1 θ=1/3", jp1.clone())];
    for t in [q(1, 3), q(1, 2)] {
        let m = DensityModel::jp_type_two_r2(&t)?;
        let lim = family_curves(Family::JpII, &two_comp(&t))?;
        let xs: Vec<f64> = (0..=200).map(|k| 0.01 + 0.98 * k as f64 / 200.0).collect();
        let gap = stieltjes_density(&lim.curve, &xs, 1e-3)?
            .iter()
            .map(|s| (s.density - m.density(s.x)).abs())
            .fold(0.0, f64::max);
        out.push(Check::new(&format!("jp2 θ={t} solver vs closed form"), gap < DENSITY_TOL, format!("max gap {gap:.3e}")));
        models.push((if t == q(1, 3) { "jp2 θ=1/3" } else { "jp2 θ=1/2" }, m));
    }
    for (name, m) in &models {
        let mass = m.mass();
        out.push(Check::new(&format!("{name} mass"), (mass - 1.0).abs() <= DENSITY_TOL, format!("{mass:.12}")));
    }
    let ts = logspace(1e-8, 1e-6, 9);
    for (name, m) in &models {
        let sign = if name.starts_with("jp1") { -1.0 } else { 1.0 };
        let slope = log_log_slope(&ts.iter().map(|t| (*t, m.density(sign * t))).collect::<Vec<_>>());
        out.push(Check::new(&format!("{name} exponent at 0"), (slope + 2.0 / 3.0).abs() <= 0.05, format!("{slope:.4}")));
    }
    for (name, m) in models.iter().skip(1) {
        let slope = log_log_slope(&ts.iter().map(|t| (*t, m.density(1.0 - t))).collect::<Vec<_>>());
        out.push(Check::new(&format!("{name} exponent at 1"), (slope + 0.5).abs() <= 0.05, format!("{slope:.4}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_identity_run() {
        let opts = SuiteOptions { n: 4, draws: 5, ..SuiteOptions::for_suite(Suite::Identities) };
        let rep = run_suite(Suite::Identities, &opts).unwrap();
        for c in &rep.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn slope_of_a_power() {
        let pts: Vec<(f64, f64)> = logspace(1e-3, 1.0, 5).into_iter().map(|t| (t, 3.0 * t.powf(-0.5))).collect();
        assert!((log_log_slope(&pts) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn index_enumeration() {
        let v = small_indices(2, 4);
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|n| n.total() <= 4));
    }
}
