//! Randomized forward-solver sweep: interface continuity and far-field
//! extraction across the parameter box (fixed seed), beyond the hand-picked
//! validation configurations.

use ballscatter::forward::{
    far_field_single, modal_coefficients, scattered_field, transmitted_field, BallMedium,
    Dimension, ScatteringConfig,
};
use ballscatter::geom::{add, dot, scale, Point};
use ballscatter::numerics::SplitMix64;
use num_complex::Complex64;

fn unit_dir(rng: &mut SplitMix64, dim: Dimension) -> Point {
    match dim {
        Dimension::Two => {
            let t = rng.uniform_in(0.0, std::f64::consts::TAU);
            [t.cos(), t.sin(), 0.0]
        }
        Dimension::Three => {
            let c = rng.uniform_in(-1.0, 1.0);
            let s = (1.0 - c * c).sqrt();
            let t = rng.uniform_in(0.0, std::f64::consts::TAU);
            [s * t.cos(), s * t.sin(), c]
        }
    }
}

#[test]
fn random_media_interface_and_extraction() {
    let mut rng = SplitMix64::new(0xF0_44D);
    for trial in 0..40 {
        let dim = if rng.next_f64() < 0.5 {
            Dimension::Two
        } else {
            Dimension::Three
        };
        let k = rng.uniform_in(0.3, 2.5);
        let radius = rng.uniform_in(0.4, 1.6);
        let n = Complex64::new(rng.uniform_in(1.1, 2.8), rng.uniform_in(0.0, 0.4));
        let center = match dim {
            Dimension::Two => [rng.uniform_in(-0.5, 0.5), rng.uniform_in(-0.5, 0.5), 0.0],
            Dimension::Three => [
                rng.uniform_in(-0.5, 0.5),
                rng.uniform_in(-0.5, 0.5),
                rng.uniform_in(-0.5, 0.5),
            ],
        };
        let d = unit_dir(&mut rng, dim);
        let cfg = ScatteringConfig::new(k, d, dim).unwrap();
        let med = BallMedium::constant(center, radius, n).unwrap();
        let mc = modal_coefficients(&cfg, &med, 1e-13).unwrap();

        // interface continuity at a random boundary direction
        let bdir = unit_dir(&mut rng, dim);
        let delta = 1e-13 * radius;
        let x_in = add(&center, &scale(&bdir, radius - delta));
        let x_out = add(&center, &scale(&bdir, radius + delta));
        let incident = (Complex64::i() * k * dot(&x_out, &cfg.d)).exp();
        let u_in = transmitted_field(&mc, &cfg, &med, &x_in).unwrap();
        let u_out = incident + scattered_field(&mc, &cfg, &med, &x_out).unwrap();
        let jump = (u_in - u_out).norm() / u_out.norm().max(1.0);
        assert!(
            jump < 1e-8,
            "trial {trial} ({dim:?} k={k:.3} R={radius:.3} n={n:.3}): jump {jump:.3e}"
        );

        // extraction against the far field at a random observation direction
        let xhat = unit_dir(&mut rng, dim);
        let uinf = far_field_single(&mc, &cfg, &med, &xhat);
        let pw = (dim.ambient() as f64 - 1.0) / 2.0;
        let mut errs = Vec::new();
        for factor in [1.0e3, 2.0e3] {
            let r = factor * radius;
            let x = scale(&xhat, r);
            let us = scattered_field(&mc, &cfg, &med, &x).unwrap();
            errs.push((us * r.powf(pw) * (-Complex64::i() * k * r).exp() - uinf).norm());
        }
        let rate = (errs[0] / errs[1]).log2();
        assert!(
            (0.7..=1.3).contains(&rate),
            "trial {trial}: extraction rate {rate:.3}, errs {errs:?}"
        );
    }
}
