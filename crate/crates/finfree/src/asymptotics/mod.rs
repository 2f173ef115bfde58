//! Transform algebra and limit zero distributions: moment/R/S series, rational
//! S-transforms of hypergeometric limits, algebraic curves for `y = u G(u)`,
//! Stieltjes inversion and closed-form densities.

mod branch;
mod curve;
mod density;
mod limits;
mod series;

pub use branch::{solve_curve_branch, stieltjes_density, DensitySample};
pub use curve::{moments_from_curve, AlgebraicCurve};
pub use density::{endpoint, DensityModel, Endpoint, EndpointFamily, Side};
pub use limits::{
    curve_from_limits, curve_shifted, family_curves, s_limit_hyper, s_reverse_check, Degeneracy, FamilyLimit,
    LimitParams, PoleSum, RationalSTransform, Scaling,
};
pub use series::{
    free_add, free_mult, ser_compose, ser_inv, ser_mul, ser_reverse, series_bridge, FormalMomentSeries, SeriesBridge,
};

/// Default truncation order for series work.
pub const DEFAULT_ORDER: usize = 8;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mop::Family;
    use crate::rat::{q, r};
    use num_complex::Complex64;

    fn max_gap(curve: &AlgebraicCurve, model: &DensityModel, xs: &[f64]) -> f64 {
        let got = stieltjes_density(curve, xs, 1e-3).unwrap();
        got.iter().map(|s| (s.density - model.density(s.x)).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn jacobi_type_one_solver_matches_closed_form() {
        let th = q(1, 3);
        let lim = family_curves(Family::JpI, &LimitParams::constant(vec![th.clone(), r(1) - th.clone()])).unwrap();
        let model = DensityModel::jp_type_one_r2(&th).unwrap();
        let xs: Vec<f64> = (0..=100).map(|k| -2.4 + 2.35 * k as f64 / 100.0).collect();
        assert!(max_gap(&lim.curve, &model, &xs) < 1e-6);
        // Cardano value at u = -1 against the branch solver
        let y = solve_curve_branch(&lim.curve, &[Complex64::new(-1.0, 0.0)]).unwrap()[0];
        assert!(lim.curve.eval(y, Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(y.im.abs() > 0.0);
    }

    #[test]
    fn jacobi_type_two_solver_matches_closed_form() {
        for th in [q(1, 3), q(1, 2)] {
            let lim =
                family_curves(Family::JpII, &LimitParams::constant(vec![th.clone(), r(1) - th.clone()])).unwrap();
            let model = DensityModel::jp_type_two_r2(&th).unwrap();
            let xs: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
            let gap = max_gap(&lim.curve, &model, &xs);
            assert!(gap < 1e-6, "θ={th}: {gap}");
        }
    }
}
