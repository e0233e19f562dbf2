//! Desk-scale falsification of non-uniqueness: the misfit curve
//! m(n') = ‖F(n') − F(n_true)‖² over a real grid of candidate indices.
//! Below k0_effective the curve must vanish only at the truth.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::forward::{far_field_single, modal_coefficients, BallMedium, ScatteringConfig};
use crate::geom::Point;
use crate::inverse::InverseError;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProbePoint {
    pub n: f64,
    pub misfit: f64,
}

/// Evaluates m(n') over the grid for a known ball geometry and a (possibly
/// complex) true index. The grid values are real candidate indices.
pub fn uniqueness_probe(
    cfg: &ScatteringConfig,
    center: &Point,
    radius: f64,
    n_true: Complex64,
    n_grid: &[f64],
    directions: &[Point],
) -> Result<Vec<ProbePoint>, InverseError> {
    let med_true = BallMedium::constant(*center, radius, n_true)?;
    let mc_true = modal_coefficients(cfg, &med_true, 1e-12)?;
    let truth: Vec<Complex64> = directions
        .iter()
        .map(|xhat| far_field_single(&mc_true, cfg, &med_true, xhat))
        .collect();

    let grid_values = crate::numerics::parallel_map(n_grid, |&n| {
        let med = BallMedium::constant(*center, radius, Complex64::new(n, 0.0))?;
        let mc = modal_coefficients(cfg, &med, 1e-12)?;
        let misfit: f64 = directions
            .iter()
            .zip(&truth)
            .map(|(xhat, t)| (far_field_single(&mc, cfg, &med, xhat) - t).norm_sqr())
            .sum();
        Ok::<f64, InverseError>(misfit)
    });
    n_grid
        .iter()
        .zip(grid_values)
        .map(|(&n, m)| Ok(ProbePoint { n, misfit: m? }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{fibonacci_sphere, Dimension};
    use crate::ite::k0_bounds;

    #[test]
    fn misfit_vanishes_only_at_truth() {
        let n_star: f64 = 3.0;
        let report = k0_bounds(1.0, Dimension::Three, n_star);
        let k = 0.5 * report.k0_effective;
        let cfg = ScatteringConfig::new(k, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
        let truth = 1.5;
        // grid contains the truth exactly
        let grid: Vec<f64> = (0..200).map(|i| 0.1 + (n_star - 0.1) * i as f64 / 199.0).collect();
        let mut grid = grid;
        grid[96] = truth;
        let dirs = fibonacci_sphere(32);
        let curve = uniqueness_probe(
            &cfg,
            &[0.0; 3],
            1.0,
            Complex64::new(truth, 0.0),
            &grid,
            &dirs,
        )
        .unwrap();
        let at_truth = curve.iter().find(|p| p.n == truth).unwrap();
        assert!(at_truth.misfit < 1e-28);
        let mut zero_count = 0;
        for p in &curve {
            if p.misfit < 1e-10 {
                zero_count += 1;
                assert_eq!(p.n, truth, "spurious zero at n' = {}", p.n);
            }
        }
        assert_eq!(zero_count, 1);
        // away from the truth the curve is bounded below with margin
        let min_away = curve
            .iter()
            .filter(|p| (p.n - truth).abs() > 0.05)
            .map(|p| p.misfit)
            .fold(f64::INFINITY, f64::min);
        assert!(min_away > 1e-10, "margin {min_away}");
    }

    #[test]
    fn large_k_probe_still_positive_away_from_truth() {
        // far above k0: observed (not guaranteed) uniqueness evidence
        let cfg = ScatteringConfig::new(3.0, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
        let truth = 1.4;
        let grid: Vec<f64> = (0..60).map(|i| 0.2 + 2.6 * i as f64 / 59.0).collect();
        let dirs = fibonacci_sphere(32);
        let curve =
            uniqueness_probe(&cfg, &[0.0; 3], 1.0, Complex64::new(truth, 0.0), &grid, &dirs)
                .unwrap();
        for p in &curve {
            if (p.n - truth).abs() > 0.05 {
                assert!(p.misfit > 1e-10, "m({}) = {}", p.n, p.misfit);
            }
        }
    }
}
