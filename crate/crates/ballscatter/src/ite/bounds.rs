//! Poincaré constant of the ball, the k₀ thresholds, and the auxiliary
//! source-problem bound.
//!
//! C₁(Ω) is the optimal constant in ∫|w|² ≤ C₁∫|∇w|² for w vanishing on
//! ∂Ω, i.e. 1/λ₁ of the Dirichlet Laplacian. For balls λ₁ = (x₁/R)² where
//! x₁ is the first zero of j₀ (= π) in 3D or of J₀ (≈ 2.405) in 2D; both
//! zeros are located by root-finding on the implemented Bessel functions
//! rather than hard-coded.

use num_complex::Complex64;

use super::{BoundReport, IteError};
use crate::forward::Dimension;
use crate::numerics::{bracket_and_refine, radial_rule};
use crate::specialfn::{cyl_bessel_j, sph_bessel_j};

fn radial_mode_fn(dim: Dimension, x: f64) -> f64 {
    match dim {
        Dimension::Three => sph_bessel_j(0, Complex64::new(x, 0.0)).re,
        Dimension::Two => cyl_bessel_j(0, Complex64::new(x, 0.0)).re,
    }
}

/// Eigenvalues λ_j of the radial Dirichlet Laplacian on the ball of radius
/// R: (x_j/R)² with x_j the zeros of j₀ (3D) or J₀ (2D), found numerically.
pub fn dirichlet_radial_eigenvalues(radius: f64, dim: Dimension, count: usize) -> Vec<f64> {
    assert!(radius > 0.0 && count >= 1);
    // zeros are ~π apart; scan generously past the last one
    let hi = (count as f64 + 2.0) * std::f64::consts::PI;
    let grid = (hi * 40.0).ceil() as usize;
    let roots = bracket_and_refine(|x| radial_mode_fn(dim, x), 0.4, hi, grid, 1e-13);
    assert!(
        roots.len() >= count,
        "expected at least {count} radial zeros below {hi}"
    );
    roots
        .iter()
        .take(count)
        .map(|r| (r.root / radius).powi(2))
        .collect()
}

/// Optimal Poincaré constant of the ball, C₁ = 1/λ₁.
pub fn poincare_constant(radius: f64, dim: Dimension) -> f64 {
    1.0 / dirichlet_radial_eigenvalues(radius, dim, 1)[0]
}

/// Assembles the two lower-bound thresholds:
/// k0_lemma = 1/(2√C₁) (the source-problem bound) and
/// k0_thm = 1/(√(2C)·n*) with C = √2·C₁ (the eigenvalue-free threshold);
/// k0_effective is the conservative minimum of the two.
pub fn k0_bounds(radius: f64, dim: Dimension, n_star: f64) -> BoundReport {
    assert!(radius > 0.0 && n_star > 0.0);
    let c1 = poincare_constant(radius, dim);
    let c = std::f64::consts::SQRT_2 * c1;
    let k0_lemma = 1.0 / (2.0 * c1.sqrt());
    let k0_thm = 1.0 / ((2.0 * c).sqrt() * n_star);
    BoundReport {
        c1,
        c,
        k0_lemma,
        k0_thm,
        k0_effective: k0_lemma.min(k0_thm),
    }
}

/// Solves Δw + k²w = f, w|∂Ω = 0 for a radial source given by coefficients
/// in the radial Dirichlet eigenbasis (w_j = f_j/(k² − λ_j)) and returns
/// (‖w‖/‖f‖, √2·C₁). The ratio is guaranteed below the bound for
/// k < k0_lemma; outside that regime the bound is not claimed.
pub fn lemma32_verify(
    radius: f64,
    dim: Dimension,
    k: f64,
    f_coeffs: &[f64],
) -> Result<(f64, f64), IteError> {
    if f_coeffs.is_empty() || f_coeffs.len() > 50 {
        return Err(IteError::InvalidInput(format!(
            "source must have 1..=50 eigenbasis coefficients, got {}",
            f_coeffs.len()
        )));
    }
    if !(k > 0.0) {
        return Err(IteError::InvalidInput(format!("need k > 0, got {k}")));
    }
    let lambdas = dirichlet_radial_eigenvalues(radius, dim, f_coeffs.len());
    for (j, &lam) in lambdas.iter().enumerate() {
        if (k * k - lam).abs() < 1e-12 {
            return Err(IteError::ResonantWavenumber { mode: j + 1, k });
        }
    }
    let w_coeffs: Vec<f64> = f_coeffs
        .iter()
        .zip(&lambdas)
        .map(|(&fj, &lam)| fj / (k * k - lam))
        .collect();

    let eval = |coeffs: &[f64], r: f64| -> f64 {
        coeffs
            .iter()
            .zip(&lambdas)
            .map(|(&cj, &lam)| cj * radial_mode_fn(dim, lam.sqrt() * r))
            .sum()
    };
    let rule = radial_rule(radius, dim, 60 + 6 * f_coeffs.len());
    let norm_sq = |coeffs: &[f64]| -> f64 {
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&r, &w)| w * eval(coeffs, r).powi(2))
            .sum()
    };
    let ratio = (norm_sq(&w_coeffs) / norm_sq(f_coeffs)).sqrt();
    let bound = std::f64::consts::SQRT_2 * poincare_constant(radius, dim);
    Ok((ratio, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::SplitMix64;
    use std::f64::consts::PI;

    #[test]
    fn poincare_three_dimensional_is_one_over_pi_squared() {
        let c1 = poincare_constant(1.0, Dimension::Three);
        assert!((c1 - 1.0 / (PI * PI)).abs() < 1e-10, "C1 = {c1}");
    }

    #[test]
    fn poincare_two_dimensional_uses_first_bessel_zero() {
        // first positive zero of J0, frozen literature value
        let j01 = 2.404_825_557_695_773;
        let c1 = poincare_constant(1.0, Dimension::Two);
        assert!((c1 - 1.0 / (j01 * j01)).abs() < 1e-10, "C1 = {c1}");
    }

    #[test]
    fn poincare_dilation_scaling() {
        for dim in [Dimension::Two, Dimension::Three] {
            let c_r = poincare_constant(0.7, dim);
            let c_2r = poincare_constant(1.4, dim);
            assert!((c_2r - 4.0 * c_r).abs() < 1e-10 * c_2r);
        }
    }

    #[test]
    fn bound_report_reference_values() {
        // R = 1, 3D, n* = 2: k0_lemma = π/2, k0_thm = π/(2^{3/4}·2)
        let rep = k0_bounds(1.0, Dimension::Three, 2.0);
        assert!((rep.k0_lemma - PI / 2.0).abs() < 1e-10);
        let expected_thm = PI / (2.0_f64.powf(0.75) * 2.0);
        assert!((rep.k0_thm - expected_thm).abs() < 1e-10, "{}", rep.k0_thm);
        assert!((rep.c - std::f64::consts::SQRT_2 * rep.c1).abs() < 1e-15);
        assert_eq!(rep.k0_effective, rep.k0_lemma.min(rep.k0_thm));
    }

    #[test]
    fn bounds_monotone_in_contrast_and_radius() {
        let base = k0_bounds(1.0, Dimension::Three, 2.0);
        let big_n = k0_bounds(1.0, Dimension::Three, 1e6);
        assert!(big_n.k0_thm < 1e-5);
        assert_eq!(big_n.k0_effective, big_n.k0_thm);
        assert!(big_n.k0_effective < base.k0_effective);
        let big_r = k0_bounds(10.0, Dimension::Three, 2.0);
        assert!(big_r.k0_effective < base.k0_effective);
        // doubling the radius halves k0_lemma
        let twice = k0_bounds(2.0, Dimension::Three, 2.0);
        assert!((twice.k0_lemma - base.k0_lemma / 2.0).abs() < 1e-10);
    }

    #[test]
    fn single_mode_source_closed_form() {
        for dim in [Dimension::Two, Dimension::Three] {
            let rep = k0_bounds(1.0, dim, 2.0);
            let k = rep.k0_lemma / 2.0;
            let (ratio, bound) = lemma32_verify(1.0, dim, k, &[1.0]).unwrap();
            let lambda1 = 1.0 / rep.c1;
            let closed = 1.0 / (lambda1 - k * k).abs();
            assert!((ratio - closed).abs() < 1e-9 * closed, "{dim:?}: {ratio} vs {closed}");
            assert!(ratio <= bound);
        }
    }

    #[test]
    fn random_sources_respect_the_bound() {
        let mut rng = SplitMix64::new(0x1e_44a);
        for trial in 0..10 {
            let coeffs: Vec<f64> = (0..20).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
            let rep = k0_bounds(1.0, Dimension::Three, 2.0);
            let k = 0.9 * rep.k0_lemma;
            let (ratio, bound) = lemma32_verify(1.0, Dimension::Three, k, &coeffs).unwrap();
            assert!(ratio <= bound, "trial {trial}: {ratio} > {bound}");
        }
    }

    #[test]
    fn outside_the_small_k_regime_the_bound_is_not_claimed() {
        // k just above √λ₁ resonates with the first mode: ratio blows past
        // the bound, showing the k < k₀ hypothesis is sharp in kind
        let rep = k0_bounds(1.0, Dimension::Three, 2.0);
        let lambda1 = 1.0 / rep.c1;
        let k = 1.01 * lambda1.sqrt();
        let (ratio, bound) = lemma32_verify(1.0, Dimension::Three, k, &[1.0]).unwrap();
        assert!(ratio > bound, "{ratio} should exceed {bound}");
    }

    #[test]
    fn resonant_wavenumber_is_detected() {
        let lambdas = dirichlet_radial_eigenvalues(1.0, Dimension::Three, 3);
        let k = lambdas[1].sqrt();
        assert!(matches!(
            lemma32_verify(1.0, Dimension::Three, k, &[0.3, 0.5, 0.2]),
            Err(IteError::ResonantWavenumber { .. })
        ));
    }

    #[test]
    fn three_dimensional_zeros_are_multiples_of_pi() {
        let lambdas = dirichlet_radial_eigenvalues(1.0, Dimension::Three, 5);
        for (j, &lam) in lambdas.iter().enumerate() {
            let expected = ((j + 1) as f64 * PI).powi(2);
            assert!((lam - expected).abs() < 1e-8 * expected, "j={j}");
        }
    }
}
