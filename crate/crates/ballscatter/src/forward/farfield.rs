//! Far-field pattern u_inf: the angular amplitude of the leading outgoing
//! term u^s ~ e^{ikr} r^{-(N-1)/2} u_inf(x̂).
//!
//! Replacing the Hankel functions by their outgoing asymptotics gives
//!
//! 3D:  u_inf(x̂) = (-i/k) e^{-ik x̂·z} Σ (2m+1) A_m P_m(x̂·d)
//! 2D:  u_inf(x̂) = sqrt(2/(πk)) e^{-iπ/4} e^{-ik x̂·z} Σ ε_m A_m cos(mθ)
//!
//! The dimension-dependent constants are pinned by the large-radius
//! extraction oracle: |u^s(r x̂) r^{(N-1)/2} e^{-ikr} - u_inf(x̂)| -> 0 at
//! rate O(1/r), which the tests verify for both dimensions.

use num_complex::Complex64;

use super::{BallMedium, Dimension, FarFieldPattern, ForwardError, ModalCoefficients, ScatteringConfig};
use crate::geom::{dot, norm, Point};
use crate::specialfn::{cos_multiples_seq, legendre_p_seq};

/// u_inf at a single observation direction.
pub fn far_field_single(
    coeffs: &ModalCoefficients,
    cfg: &ScatteringConfig,
    med: &BallMedium,
    xhat: &Point,
) -> Complex64 {
    let c = dot(xhat, &cfg.d).clamp(-1.0, 1.0);
    let m_max = coeffs.truncation;
    let angular_sum = match cfg.dim {
        Dimension::Three => {
            let p = legendre_p_seq(m_max, c);
            (0..=m_max)
                .map(|m| (2 * m + 1) as f64 * coeffs.exterior[m] * p[m])
                .sum::<Complex64>()
        }
        Dimension::Two => {
            let t = cos_multiples_seq(m_max, c);
            (0..=m_max)
                .map(|m| if m == 0 { 1.0 } else { 2.0 } * coeffs.exterior[m] * t[m])
                .sum::<Complex64>()
        }
    };
    let recenter = (-Complex64::i() * cfg.k * dot(xhat, &med.center)).exp();
    let front = match cfg.dim {
        Dimension::Three => -Complex64::i() / cfg.k,
        Dimension::Two => {
            let amp = (2.0 / (std::f64::consts::PI * cfg.k)).sqrt();
            amp * (-Complex64::i() * std::f64::consts::FRAC_PI_4).exp()
        }
    };
    front * recenter * angular_sum
}

/// Samples u_inf over a direction set.
pub fn far_field(
    coeffs: &ModalCoefficients,
    cfg: &ScatteringConfig,
    med: &BallMedium,
    directions: &[Point],
) -> Result<FarFieldPattern, ForwardError> {
    for d in directions {
        if (norm(d) - 1.0).abs() > 1e-12 {
            return Err(ForwardError::InvalidInput(format!(
                "observation direction {d:?} is not unit length"
            )));
        }
    }
    let values = directions
        .iter()
        .map(|xhat| far_field_single(coeffs, cfg, med, xhat))
        .collect();
    FarFieldPattern::new(directions.to_vec(), values, *cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{
        fibonacci_sphere, modal_coefficients, scattered_field, translate_phase, uniform_circle,
        BallMedium,
    };
    use crate::geom::scale;
    use crate::numerics::gauss_legendre;

    fn cfg3(k: f64) -> ScatteringConfig {
        ScatteringConfig::new(k, [0.0, 0.0, 1.0], Dimension::Three).unwrap()
    }

    fn cfg2(k: f64) -> ScatteringConfig {
        ScatteringConfig::new(k, [1.0, 0.0, 0.0], Dimension::Two).unwrap()
    }

    #[test]
    fn zero_pattern_without_contrast() {
        let cfg = cfg3(1.0);
        let med = BallMedium::constant([0.0; 3], 1.0, 1.0.into()).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        let pat = far_field(&mc, &cfg, &med, &fibonacci_sphere(16)).unwrap();
        assert!(pat.values.iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn large_radius_extraction_oracle() {
        // |u^s(r x̂) r^{(N-1)/2} e^{-ikr} - u_inf| must fall like 1/r
        for (cfg, med) in [
            (
                cfg3(1.0),
                BallMedium::constant([0.0; 3], 1.0, Complex64::new(2.0, 0.0)).unwrap(),
            ),
            (
                cfg2(1.0),
                BallMedium::constant([0.0; 3], 1.0, Complex64::new(1.5, 0.1)).unwrap(),
            ),
        ] {
            let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
            let xhat = match cfg.dim {
                Dimension::Three => [0.48, 0.6, 0.64],
                Dimension::Two => [0.6, 0.8, 0.0],
            };
            let uinf = far_field_single(&mc, &cfg, &med, &xhat);
            let pw = (cfg.dim.ambient() as f64 - 1.0) / 2.0;
            let mut errs = Vec::new();
            for &r in &[1.0e3, 2.0e3] {
                let x = scale(&xhat, r);
                let us = scattered_field(&mc, &cfg, &med, &x).unwrap();
                let extracted = us * r.powf(pw) * (-Complex64::i() * cfg.k * r).exp();
                errs.push((extracted - uinf).norm());
            }
            let rate = (errs[0] / errs[1]).log2();
            assert!(
                (0.8..=1.2).contains(&rate),
                "{:?}: extraction rate {rate}, errs {errs:?}",
                cfg.dim
            );
        }
    }

    #[test]
    fn centered_pattern_depends_only_on_angle() {
        let cfg = cfg3(1.3);
        let med = BallMedium::constant([0.0; 3], 1.0, Complex64::new(1.9, 0.0)).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        // pairs of directions with identical x̂·d (d = e_z): same polar angle
        let c = 0.41_f64;
        let s = (1.0 - c * c).sqrt();
        let mut worst: f64 = 0.0;
        let v0 = far_field_single(&mc, &cfg, &med, &[s, 0.0, c]);
        for i in 1..8 {
            let phi = i as f64 * 0.7;
            let xhat = [s * phi.cos(), s * phi.sin(), c];
            let v = far_field_single(&mc, &cfg, &med, &xhat);
            worst = worst.max((v - v0).norm());
        }
        assert!(worst < 1e-11, "rotation asymmetry {worst}");
    }

    #[test]
    fn translation_phase_law_between_two_solves() {
        // pattern of the ball at z equals the centered pattern times
        // e^{ikz·d} e^{-ikz·x̂}, verified against two independent solves
        for (cfg, dirs) in [
            (cfg3(1.1), fibonacci_sphere(24)),
            (cfg2(0.9), uniform_circle(24)),
        ] {
            let n = Complex64::new(1.6, 0.0);
            let z = match cfg.dim {
                Dimension::Three => [0.4, -0.3, 0.25],
                Dimension::Two => [0.4, -0.3, 0.0],
            };
            let centered = BallMedium::constant([0.0; 3], 0.8, n).unwrap();
            let shifted = BallMedium::constant(z, 0.8, n).unwrap();
            let mc0 = modal_coefficients(&cfg, &centered, 1e-12).unwrap();
            let mcz = modal_coefficients(&cfg, &shifted, 1e-12).unwrap();
            let ph = translate_phase(&cfg, &z);
            for xhat in &dirs {
                let v0 = far_field_single(&mc0, &cfg, &centered, xhat);
                let vz = far_field_single(&mcz, &cfg, &shifted, xhat);
                let predicted =
                    v0 * ph * (-Complex64::i() * cfg.k * dot(xhat, &z)).exp();
                assert!(
                    (vz - predicted).norm() < 1e-12 * vz.norm().max(1e-12),
                    "{:?}",
                    cfg.dim
                );
            }
        }
    }

    #[test]
    fn optical_theorem_three_dimensional() {
        // Im u_inf(d) = (k/4π) ∫ |u_inf|² dσ for real n in 3D; the centered
        // pattern is a polynomial in cosθ, so Gauss quadrature is exact
        for &(k, n_re, radius) in &[(1.0, 2.0, 1.0), (2.0, 1.5, 0.8), (0.7, 2.5, 1.2)] {
            let cfg = cfg3(k);
            let med = BallMedium::constant([0.0; 3], radius, Complex64::new(n_re, 0.0)).unwrap();
            let mc = modal_coefficients(&cfg, &med, 1e-13).unwrap();
            let forward = far_field_single(&mc, &cfg, &med, &cfg.d);
            let rule = gauss_legendre(2 * mc.truncation + 4);
            let integral: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&c, &w)| {
                    let s = (1.0 - c * c).max(0.0).sqrt();
                    let xhat = [s, 0.0, c];
                    w * far_field_single(&mc, &cfg, &med, &xhat).norm_sqr()
                })
                .sum::<f64>()
                * 2.0
                * std::f64::consts::PI;
            let lhs = forward.im;
            let rhs = k / (4.0 * std::f64::consts::PI) * integral;
            assert!(
                (lhs - rhs).abs() <= 1e-8 * rhs.abs().max(1e-12),
                "k={k} n={n_re}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn soundsoft_limit_of_large_absorption() {
        // |n| -> infinity along the positive imaginary direction approaches
        // the sound-soft pattern (qualitative: misfit decreases)
        let cfg = cfg3(1.0);
        let dirs = fibonacci_sphere(32);
        let soft = BallMedium::sound_soft([0.0; 3], 1.0).unwrap();
        let soft_pat = far_field(
            &modal_coefficients(&cfg, &soft, 1e-12).unwrap(),
            &cfg,
            &soft,
            &dirs,
        )
        .unwrap();
        let mut previous = f64::INFINITY;
        for &im in &[10.0, 100.0, 1000.0] {
            let med = BallMedium::constant([0.0; 3], 1.0, Complex64::new(0.0, im)).unwrap();
            let pat = far_field(
                &modal_coefficients(&cfg, &med, 1e-12).unwrap(),
                &cfg,
                &med,
                &dirs,
            )
            .unwrap();
            let misfit = pat.misfit(&soft_pat);
            assert!(misfit < previous, "im={im}: {misfit} !< {previous}");
            previous = misfit;
        }
    }
}
