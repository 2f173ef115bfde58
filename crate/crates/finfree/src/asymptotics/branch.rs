//! Continuation of the physical branch `y → 1` (as `u → ∞`) and Stieltjes inversion.

use num_complex::Complex64;
use rayon::prelude::*;

use super::curve::{moments_from_curve, AlgebraicCurve};
use crate::error::{Error, Result};
use crate::rat::to_f64;

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX: usize = 40;
/// Floor for the imaginary part when the target lies on the real axis.
const IM_FLOOR: f64 = 1e-12;
const NEG_TOL: f64 = 1e-8;

fn horner(p: &[Complex64], y: Complex64) -> (Complex64, Complex64) {
    let mut f = Complex64::new(0.0, 0.0);
    let mut df = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        df = df * y + f;
        f = f * y + c;
    }
    (f, df)
}

/// Newton from `y0`; returns the root and the iteration count.
fn newton(p: &[Complex64], y0: Complex64) -> Option<(Complex64, usize)> {
    let mut y = y0;
    for it in 1..=NEWTON_MAX {
        let (f, df) = horner(p, y);
        if df.norm() == 0.0 || !df.is_finite() {
            return None;
        }
        let dy = f / df;
        y -= dy;
        if !y.is_finite() {
            return None;
        }
        if dy.norm() <= NEWTON_TOL * (1.0 + y.norm()) {
            return Some((y, it));
        }
    }
    None
}

/// All roots of a small dense polynomial by Durand-Kerner, polished by Newton.
fn all_roots(p: &[Complex64]) -> Vec<Complex64> {
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let deg = match p.iter().rposition(|c| c.norm() > 1e-14 * scale) {
        Some(d) if d > 0 => d,
        _ => return vec![],
    };
    let monic: Vec<Complex64> = p[..=deg].iter().map(|c| c / p[deg]).collect();
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for k in 0..deg {
            let (f, _) = horner(&monic, z[k]);
            let den: Complex64 = (0..deg).filter(|&j| j != k).map(|j| z[k] - z[j]).product();
            if den.norm() == 0.0 {
                z[k] += Complex64::new(1e-8, 1e-8);
                worst = f64::INFINITY;
                continue;
            }
            let dz = f / den;
            z[k] -= dz;
            worst = worst.max(dz.norm() / (1.0 + z[k].norm()));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z.into_iter().map(|y| newton(p, y).map_or(y, |(r, _)| r)).collect()
}

/// The root nearest to `pred`, provided it is clearly closer than any other root.
fn nearest_isolated_root(p: &[Complex64], pred: Complex64) -> Option<Complex64> {
    let mut roots = all_roots(p);
    roots.sort_by(|a, b| (a - pred).norm().total_cmp(&(b - pred).norm()));
    let first = *roots.first()?;
    match roots.get(1) {
        Some(second) if (first - pred).norm() > 0.25 * (second - pred).norm() => None,
        _ => Some(first),
    }
}

/// Branch tracker along `u = x + i·σ·τ`, `τ` decreasing geometrically.
struct Tracker<'a> {
    curve: &'a AlgebraicCurve,
    x: f64,
    sign: f64,
    tau: f64,
    y: Complex64,
    prev: Option<(f64, Complex64)>,
    ratio: f64,
}

impl<'a> Tracker<'a> {
    fn start(curve: &'a AlgebraicCurve, x: f64, sign: f64, seed_moments: &[f64]) -> Result<Self> {
        let tau = 1e4 * (1.0 + x.abs());
        let at = |tau: f64| {
            let u = Complex64::new(x, sign * tau);
            let guess = seed_moments
                .iter()
                .enumerate()
                .fold(Complex64::new(1.0, 0.0), |acc, (k, m)| acc + *m / u.powi(k as i32 + 1));
            newton(&curve.y_poly_at(u), guess).map(|(y, _)| y).ok_or(Error::BranchJump { re: u.re, im: u.im })
        };
        let prev = Some((2.0 * tau, at(2.0 * tau)?));
        Ok(Tracker { curve, x, sign, tau, y: at(tau)?, prev, ratio: 1.5 })
    }

    fn u(&self, tau: f64) -> Complex64 {
        Complex64::new(self.x, self.sign * tau)
    }

    /// Advances until `τ = target`.
    fn descend(&mut self, target: f64) -> Result<()> {
        while self.tau > target {
            let next = (self.tau / self.ratio).max(target);
            let pred = match self.prev {
                Some((tp, yp)) => {
                    let s = (next.ln() - self.tau.ln()) / (self.tau.ln() - tp.ln());
                    self.y + (self.y - yp) * s
                }
                None => self.y,
            };
            let u = self.u(next);
            let accepted = nearest_isolated_root(&self.curve.y_poly_at(u), pred);
            match accepted {
                Some(y) => {
                    self.prev = Some((self.tau, self.y));
                    self.tau = next;
                    self.y = y;
                    self.ratio = (self.ratio * 1.25).min(2.0);
                }
                None => {
                    self.ratio = self.ratio.sqrt();
                    if self.ratio < 1.0 + 1e-9 {
                        return Err(Error::BranchJump { re: u.re, im: u.im });
                    }
                }
            }
        }
        Ok(())
    }
}

fn seed_moments(curve: &AlgebraicCurve) -> Result<Vec<f64>> {
    Ok(moments_from_curve(curve, 3)?.iter().map(to_f64).collect())
}

fn solve_one(curve: &AlgebraicCurve, u: Complex64, seeds: &[f64]) -> Result<Complex64> {
    let sign = if u.im < 0.0 { -1.0 } else { 1.0 };
    let mut t = Tracker::start(curve, u.re, sign, seeds)?;
    let target = u.im.abs().max(IM_FLOOR);
    t.descend(target)?;
    if u.im == 0.0 {
        return newton(&curve.y_poly_at(u), t.y).map(|(y, _)| y).ok_or(Error::BranchJump { re: u.re, im: 0.0 });
    }
    Ok(t.y)
}

/// Values of `y = u G(u)` on the physical branch at each point of `us`.
///
/// Each point is continued independently from `Re u + i·R`, `R` large, so the
/// grid is processed in parallel. Real points are reached from above.
pub fn solve_curve_branch(curve: &AlgebraicCurve, us: &[Complex64]) -> Result<Vec<Complex64>> {
    let seeds = seed_moments(curve)?;
    us.par_iter().map(|&u| solve_one(curve, u, &seeds)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensitySample {
    pub x: f64,
    pub density: f64,
    /// Richardson estimate before the polish at `ε = 0`.
    pub extrapolated: f64,
}

/// `-Im y(x + i0) / (π x)` by continuation to `x + iε`, `x + iε/2`, Richardson
/// extrapolation and a Newton polish on the real axis seeded by the result.
pub fn stieltjes_density(curve: &AlgebraicCurve, xs: &[f64], eps: f64) -> Result<Vec<DensitySample>> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameters(format!("ε must be positive, got {eps}")));
    }
    let seeds = seed_moments(curve)?;
    xs.par_iter()
        .map(|&x| {
            if x == 0.0 {
                return Err(Error::InvalidParameters("the inversion formula is singular at x = 0".into()));
            }
            let mut t = Tracker::start(curve, x, 1.0, &seeds)?;
            t.descend(eps)?;
            let y1 = t.y;
            t.descend(eps / 2.0)?;
            let y2 = t.y;
            let yr = y2 * 2.0 - y1;
            let polished = newton(&curve.y_poly_at(Complex64::new(x, 0.0)), yr)
                .map(|(y, _)| y)
                .filter(|y| (y - yr).norm() <= 10.0 * (y2 - y1).norm() + 1e-9 * (1.0 + yr.norm()) && (y.im * yr.im >= 0.0 || y.im.abs() <= 1e-12 * (1.0 + y.norm())));
            let dens = |y: Complex64| -y.im / (std::f64::consts::PI * x);
            let extrapolated = dens(yr);
            let density = polished.map_or(extrapolated, dens);
            if density < -NEG_TOL {
                return Err(Error::NegativeDensity { x, value: density });
            }
            Ok(DensitySample { x, density, extrapolated })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::r;

    fn mp_curve() -> AlgebraicCurve {
        AlgebraicCurve::from_coeffs(vec![vec![r(0), r(1)], vec![r(0), r(-1)], vec![r(1)]])
    }

    #[test]
    fn marchenko_pastur_branch_at_five() {
        let y = solve_curve_branch(&mp_curve(), &[Complex64::new(5.0, 0.0)]).unwrap()[0];
        assert!((y.re - (5.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(y.im.abs() < 1e-12);
    }

    #[test]
    fn point_mass_branch_everywhere() {
        let c = AlgebraicCurve::from_coeffs(vec![vec![r(0), r(1)], vec![r(1), r(-1)]]);
        let us = [Complex64::new(0.3, 0.2), Complex64::new(-2.0, -1.0), Complex64::new(4.0, 0.0)];
        for (u, y) in us.iter().zip(solve_curve_branch(&c, &us).unwrap()) {
            assert!((y - u / (u - 1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn marchenko_pastur_density() {
        let xs = [0.5, 1.0, 2.0, 3.5, 4.5, -0.5];
        let d = stieltjes_density(&mp_curve(), &xs, 1e-3).unwrap();
        for s in &d {
            let exact = if s.x > 0.0 && s.x < 4.0 {
                (s.x * (4.0 - s.x)).sqrt() / (2.0 * std::f64::consts::PI * s.x)
            } else {
                0.0
            };
            assert!((s.density - exact).abs() < 1e-10, "x={} {} vs {}", s.x, s.density, exact);
        }
        assert!((d[2].density - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-12);
    }
}
