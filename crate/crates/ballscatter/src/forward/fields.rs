//! Pointwise evaluation of the scattered and transmitted series.
//!
//! 3D:  u^s(x) = Σ i^m (2m+1) A_m h_m^{(1)}(k|x-z|) P_m(cosθ)
//! 2D:  u^s(x) = Σ ε_m i^m A_m H_m^{(1)}(k|x-z|) cos(mθ),  ε_0 = 1, ε_m = 2
//!
//! with θ the angle between the incident direction d and x - z, evaluated
//! through the clamped inner product (no acos needed: P_m and cos(mθ) take
//! cosθ directly).

use num_complex::Complex64;

use super::coefficients::{outgoing_pair, regular_pair, singular_pair};
use super::{BallMedium, Dimension, ForwardError, ModalCoefficients, Profile, ScatteringConfig};
use crate::geom::{dot, norm, sub, Point};
use crate::specialfn::{cos_multiples_seq, legendre_p_seq};

fn i_pow(m: usize) -> Complex64 {
    match m % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Series weight together with the angular factor: i^m (2m+1) P_m(c) in 3D,
/// ε_m i^m cos(mθ) in 2D.
fn angular_weights(dim: Dimension, m_max: usize, c: f64) -> Vec<Complex64> {
    match dim {
        Dimension::Three => {
            let p = legendre_p_seq(m_max, c);
            (0..=m_max)
                .map(|m| i_pow(m) * (2 * m + 1) as f64 * p[m])
                .collect()
        }
        Dimension::Two => {
            let t = cos_multiples_seq(m_max, c);
            (0..=m_max)
                .map(|m| i_pow(m) * if m == 0 { 1.0 } else { 2.0 } * t[m])
                .collect()
        }
    }
}

fn local_frame(cfg: &ScatteringConfig, med: &BallMedium, x: &Point) -> (f64, f64) {
    let rel = sub(x, &med.center);
    let r = norm(&rel);
    let c = if r > 0.0 {
        (dot(&rel, &cfg.d) / r).clamp(-1.0, 1.0)
    } else {
        1.0
    };
    (r, c)
}

/// Scattered field u^s at a point strictly outside the ball.
pub fn scattered_field(
    coeffs: &ModalCoefficients,
    cfg: &ScatteringConfig,
    med: &BallMedium,
    x: &Point,
) -> Result<Complex64, ForwardError> {
    exterior_series(coeffs, cfg, med, x, false)
}

/// Radial derivative ∂u^s/∂r (r = |x-z|) at an exterior point.
pub fn scattered_field_dr(
    coeffs: &ModalCoefficients,
    cfg: &ScatteringConfig,
    med: &BallMedium,
    x: &Point,
) -> Result<Complex64, ForwardError> {
    exterior_series(coeffs, cfg, med, x, true)
}

fn exterior_series(
    coeffs: &ModalCoefficients,
    cfg: &ScatteringConfig,
    med: &BallMedium,
    x: &Point,
    derivative: bool,
) -> Result<Complex64, ForwardError> {
    let (r, c) = local_frame(cfg, med, x);
    if r <= med.radius {
        return Err(ForwardError::PointNotExterior {
            dist: r,
            radius: med.radius,
        });
    }
    let m_max = coeffs.truncation;
    let w = angular_weights(cfg.dim, m_max, c);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..=m_max {
        let (h, hp) = outgoing_pair(cfg.dim, m, cfg.k * r);
        let radial = if derivative { cfg.k * hp } else { h };
        acc += w[m] * coeffs.exterior[m] * radial;
    }
    Ok(acc)
}

/// Transmitted field inside the ball (constant or layered profile).
pub fn transmitted_field(
    coeffs: &ModalCoefficients,
    cfg: &ScatteringConfig,
    med: &BallMedium,
    x: &Point,
) -> Result<Complex64, ForwardError> {
    interior_series(coeffs, cfg, med, x, false)
}

/// Radial derivative of the transmitted field.
pub fn transmitted_field_dr(
    coeffs: &ModalCoefficients,
    cfg: &ScatteringConfig,
    med: &BallMedium,
    x: &Point,
) -> Result<Complex64, ForwardError> {
    interior_series(coeffs, cfg, med, x, true)
}

fn interior_series(
    coeffs: &ModalCoefficients,
    cfg: &ScatteringConfig,
    med: &BallMedium,
    x: &Point,
    derivative: bool,
) -> Result<Complex64, ForwardError> {
    let (r, c) = local_frame(cfg, med, x);
    if r >= med.radius {
        return Err(ForwardError::PointNotInterior {
            dist: r,
            radius: med.radius,
        });
    }
    let m_max = coeffs.truncation;
    let w = angular_weights(cfg.dim, m_max, c);
    let mut acc = Complex64::new(0.0, 0.0);
    match &med.profile {
        Profile::SoundSoft => return Err(ForwardError::NoInteriorField),
        Profile::Constant(n) => {
            let z = cfg.k * n * r;
            for m in 0..=m_max {
                let (j, jp) = regular_pair(cfg.dim, m, z);
                let radial = if derivative { cfg.k * n * jp } else { j };
                acc += w[m] * coeffs.interior[m] * radial;
            }
        }
        Profile::Layered(_) => {
            let layers = coeffs
                .layers
                .as_ref()
                .expect("layered coefficients carry a per-layer basis");
            let layer = layers
                .iter()
                .find(|l| r <= l.outer_radius)
                .unwrap_or_else(|| layers.last().unwrap());
            let innermost = layer.outer_radius == layers[0].outer_radius;
            let z = cfg.k * layer.n * r;
            for m in 0..=m_max {
                let (f, fp) = regular_pair(cfg.dim, m, z);
                let (g, gp) = if innermost {
                    (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
                } else {
                    singular_pair(cfg.dim, m, z)
                };
                let val = layer.regular[m] * f + layer.singular[m] * g;
                let der = cfg.k * layer.n * (layer.regular[m] * fp + layer.singular[m] * gp);
                acc += w[m] * if derivative { der } else { val };
            }
        }
    }
    Ok(acc)
}

/// Truncated Jacobi-Anger expansion of the plane wave about `center`:
/// e^{ikz·d} Σ i^m (2m+1) j_m(k|x-z|) P_m(cosθ) in 3D (cylindrical analog in
/// 2D). Converges to e^{ikx·d}; mainly a test utility.
pub fn jacobi_anger_check(
    cfg: &ScatteringConfig,
    center: &Point,
    x: &Point,
    m_trunc: usize,
) -> Complex64 {
    let ph = super::translate_phase(cfg, center);
    let rel = sub(x, center);
    let r = norm(&rel);
    if r == 0.0 {
        return ph;
    }
    let c = (dot(&rel, &cfg.d) / r).clamp(-1.0, 1.0);
    let w = angular_weights(cfg.dim, m_trunc, c);
    let z = Complex64::new(cfg.k * r, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, wm) in w.iter().enumerate() {
        let (j, _) = regular_pair(cfg.dim, m, z);
        acc += wm * j;
    }
    ph * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{modal_coefficients, Layer};
    use crate::geom::add;
    use crate::numerics::{empirical_order, fd_helmholtz_residual};

    fn cfg3(k: f64) -> ScatteringConfig {
        ScatteringConfig::new(k, [0.0, 0.0, 1.0], Dimension::Three).unwrap()
    }

    fn cfg2(k: f64) -> ScatteringConfig {
        ScatteringConfig::new(k, [1.0, 0.0, 0.0], Dimension::Two).unwrap()
    }

    fn plane_wave(cfg: &ScatteringConfig, x: &Point) -> Complex64 {
        (Complex64::i() * cfg.k * dot(x, &cfg.d)).exp()
    }

    #[test]
    fn no_contrast_scatters_nothing() {
        let cfg = cfg3(1.0);
        let med = BallMedium::constant([0.0; 3], 1.0, 1.0.into()).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        let v = scattered_field(&mc, &cfg, &med, &[2.0, 0.5, 1.0]).unwrap();
        assert!(v.norm() < 1e-15);
        // total interior field equals the incident wave
        let x = [0.2, -0.1, 0.3];
        let u = transmitted_field(&mc, &cfg, &med, &x).unwrap();
        assert!((u - plane_wave(&cfg, &x)).norm() < 1e-12);
    }

    #[test]
    fn exterior_point_inside_is_domain_error() {
        let cfg = cfg3(1.0);
        let med = BallMedium::constant([0.0; 3], 1.0, Complex64::new(2.0, 0.0)).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        assert!(matches!(
            scattered_field(&mc, &cfg, &med, &[0.5, 0.0, 0.0]),
            Err(ForwardError::PointNotExterior { .. })
        ));
        assert!(matches!(
            transmitted_field(&mc, &cfg, &med, &[2.0, 0.0, 0.0]),
            Err(ForwardError::PointNotInterior { .. })
        ));
    }

    #[test]
    fn truncation_tail_is_negligible_far_out() {
        use crate::forward::modal_coefficients_up_to;
        let cfg = cfg3(1.0);
        let med = BallMedium::constant([0.0; 3], 1.0, Complex64::new(2.0, 0.0)).unwrap();
        let auto = modal_coefficients(&cfg, &med, 1e-12).unwrap();
        let longer = modal_coefficients_up_to(&cfg, &med, auto.truncation * 2 + 6).unwrap();
        let x = [0.0, 3.0, 9.5]; // |x| = 10R roughly
        let a = scattered_field(&auto, &cfg, &med, &x).unwrap();
        let b = scattered_field(&longer, &cfg, &med, &x).unwrap();
        assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-14));
    }

    #[test]
    fn interface_continuity_both_dimensions() {
        for (cfg, med) in [
            (
                cfg3(1.4),
                BallMedium::constant([0.1, -0.2, 0.05], 0.9, Complex64::new(1.8, 0.0)).unwrap(),
            ),
            (
                cfg2(2.2),
                BallMedium::constant([0.2, 0.1, 0.0], 0.7, Complex64::new(1.5, 0.2)).unwrap(),
            ),
        ] {
            let mc = modal_coefficients(&cfg, &med, 1e-13).unwrap();
            // a couple of directions on the interface
            let dirs: Vec<Point> = match cfg.dim {
                Dimension::Three => vec![
                    [0.0, 0.0, 1.0],
                    [0.6, -0.64, 0.48],
                    [-0.8, 0.6, 0.0],
                ],
                Dimension::Two => vec![[1.0, 0.0, 0.0], [-0.28, 0.96, 0.0], [0.0, -1.0, 0.0]],
            };
            for dir in dirs {
                let dhat = crate::geom::scale(&dir, 1.0 / norm(&dir));
                let eps = 1e-8 * med.radius;
                let x_in = add(&med.center, &crate::geom::scale(&dhat, med.radius - eps));
                let x_out = add(&med.center, &crate::geom::scale(&dhat, med.radius + eps));
                let u_in = transmitted_field(&mc, &cfg, &med, &x_in).unwrap();
                let u_out = plane_wave(&cfg, &x_out)
                    + scattered_field(&mc, &cfg, &med, &x_out).unwrap();
                assert!(
                    (u_in - u_out).norm() < 1e-6 * u_out.norm().max(1.0),
                    "value jump {} at {dir:?}",
                    (u_in - u_out).norm()
                );
            }
        }
    }

    #[test]
    fn interior_pde_residual_second_order() {
        let cfg = cfg3(1.2);
        let n = Complex64::new(1.7, 0.0);
        let med = BallMedium::constant([0.0; 3], 1.0, n).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-13).unwrap();
        let field = |p: &Point| transmitted_field(&mc, &cfg, &med, p).unwrap();
        let x = [0.2, 0.1, -0.3];
        let r1 = fd_helmholtz_residual(&field, &x, cfg.dim, cfg.k, n, 2e-2).norm();
        let r2 = fd_helmholtz_residual(&field, &x, cfg.dim, cfg.k, n, 1e-2).norm();
        let order = empirical_order(r1, r2);
        assert!((1.8..=2.2).contains(&order), "order {order}");
    }

    #[test]
    fn exterior_pde_residual_second_order() {
        let cfg = cfg2(1.5);
        let med = BallMedium::constant([0.0; 3], 0.8, Complex64::new(2.0, 0.0)).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-13).unwrap();
        let field = |p: &Point| scattered_field(&mc, &cfg, &med, p).unwrap();
        let x = [1.5, 0.9, 0.0];
        let r1 = fd_helmholtz_residual(&field, &x, cfg.dim, cfg.k, 1.0.into(), 2e-2).norm();
        let r2 = fd_helmholtz_residual(&field, &x, cfg.dim, cfg.k, 1.0.into(), 1e-2).norm();
        let order = empirical_order(r1, r2);
        assert!((1.8..=2.2).contains(&order), "order {order}");
    }

    #[test]
    fn radiation_condition_decay() {
        // r^{(N-1)/2} (du^s/dr - ik u^s) decreases with r
        for (cfg, med) in [
            (
                cfg3(1.0),
                BallMedium::constant([0.0; 3], 1.0, Complex64::new(2.0, 0.0)).unwrap(),
            ),
            (
                cfg2(1.0),
                BallMedium::constant([0.0; 3], 1.0, Complex64::new(1.6, 0.0)).unwrap(),
            ),
        ] {
            let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
            let dir = match cfg.dim {
                Dimension::Three => [0.48, 0.6, 0.64],
                Dimension::Two => [0.6, 0.8, 0.0],
            };
            let pw = (cfg.dim.ambient() as f64 - 1.0) / 2.0;
            let mut previous = f64::INFINITY;
            for &r in &[50.0, 100.0, 200.0] {
                let x = crate::geom::scale(&dir, r);
                let us = scattered_field(&mc, &cfg, &med, &x).unwrap();
                let dus = scattered_field_dr(&mc, &cfg, &med, &x).unwrap();
                let sommerfeld = r.powf(pw) * (dus - Complex64::i() * cfg.k * us).norm();
                assert!(
                    sommerfeld < previous,
                    "Sommerfeld quantity must decrease: {sommerfeld} at r={r}"
                );
                previous = sommerfeld;
            }
        }
    }

    #[test]
    fn jacobi_anger_reproduces_plane_wave() {
        for cfg in [cfg3(1.0), cfg2(1.0)] {
            let z = [0.3, -0.1, if cfg.dim == Dimension::Three { 0.2 } else { 0.0 }];
            // x = z: only the m = 0 term survives
            let v = jacobi_anger_check(&cfg, &z, &z, 10);
            let ph = super::super::translate_phase(&cfg, &z);
            assert!((v - ph).norm() < 1e-14);
            // k|x-z| = 5 with M = 40 reproduces the exponential to 1e-12
            let x = add(&z, &[3.0, 0.0, if cfg.dim == Dimension::Three { 4.0 } else { 0.0 }]);
            let v = jacobi_anger_check(&cfg, &z, &x, 40);
            let exact = plane_wave(&cfg, &x);
            assert!((v - exact).norm() < 1e-12, "{:?}", cfg.dim);
        }
    }

    #[test]
    fn jacobi_anger_tail_superexponential() {
        let cfg = cfg3(1.0);
        let z = [0.0; 3];
        let x = [0.0, 3.0, 4.0]; // k|x-z| = 5
        let exact = plane_wave(&cfg, &x);
        // past M ~ e k r / 2 ≈ 7 the truncation error collapses fast
        let e10 = (jacobi_anger_check(&cfg, &z, &x, 10) - exact).norm();
        let e14 = (jacobi_anger_check(&cfg, &z, &x, 14) - exact).norm();
        let e18 = (jacobi_anger_check(&cfg, &z, &x, 18) - exact).norm();
        assert!(e14 < e10 * 1e-2);
        assert!(e18 < e14 * 1e-2);
    }

    #[test]
    fn layered_interior_satisfies_pde_per_layer() {
        use crate::forward::layered_modal_coefficients;
        let cfg = cfg3(1.3);
        let n1 = Complex64::new(1.8, 0.0);
        let n2 = Complex64::new(1.3, 0.0);
        let med = BallMedium::new(
            [0.0; 3],
            1.0,
            Profile::Layered(vec![
                Layer {
                    outer_radius: 0.5,
                    n: n1,
                },
                Layer {
                    outer_radius: 1.0,
                    n: n2,
                },
            ]),
        )
        .unwrap();
        let mc = layered_modal_coefficients(&cfg, &med, 1e-13).unwrap();
        let field = |p: &Point| transmitted_field(&mc, &cfg, &med, p).unwrap();
        // inner layer point with index n1
        let x_in = [0.15, 0.1, 0.2];
        let r1 = fd_helmholtz_residual(&field, &x_in, cfg.dim, cfg.k, n1, 2e-2).norm();
        let r2 = fd_helmholtz_residual(&field, &x_in, cfg.dim, cfg.k, n1, 1e-2).norm();
        assert!((1.8..=2.2).contains(&empirical_order(r1, r2)));
        // outer layer point with index n2
        let x_out = [0.4, 0.45, 0.35];
        let r1 = fd_helmholtz_residual(&field, &x_out, cfg.dim, cfg.k, n2, 2e-2).norm();
        let r2 = fd_helmholtz_residual(&field, &x_out, cfg.dim, cfg.k, n2, 1e-2).norm();
        assert!((1.8..=2.2).contains(&empirical_order(r1, r2)));
        // interface continuity across both boundaries
        for &(rad, _n) in &[(0.5f64, n1), (1.0, n2)] {
            let dir = [0.6, -0.64, 0.48];
            let eps = 1e-8;
            let inner_pt = crate::geom::scale(&dir, rad - eps);
            let u_in = transmitted_field(&mc, &cfg, &med, &inner_pt).unwrap();
            let u_out = if rad < med.radius {
                let outer_pt = crate::geom::scale(&dir, rad + eps);
                transmitted_field(&mc, &cfg, &med, &outer_pt).unwrap()
            } else {
                let outer_pt = crate::geom::scale(&dir, rad + eps);
                plane_wave(&cfg, &outer_pt) + scattered_field(&mc, &cfg, &med, &outer_pt).unwrap()
            };
            assert!(
                (u_in - u_out).norm() < 1e-6 * u_out.norm().max(1.0),
                "jump at r={rad}"
            );
        }
    }
}
