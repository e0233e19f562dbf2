//! Far-field pattern of a penetrable ball, with the large-radius extraction
//! check that pins the far-field normalization.
//!
//!     cargo run --release --example forward_farfield

use ballscatter::forward::{
    far_field, far_field_single, fibonacci_sphere, modal_coefficients, scattered_field,
    write_pattern_csv, BallMedium, Dimension, ScatteringConfig,
};
use num_complex::Complex64;

fn main() {
    // unit ball with refractive index 2, plane wave along e_z, k = 1
    let cfg = ScatteringConfig::new(1.0, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
    let med = BallMedium::constant([0.0, 0.0, 0.0], 1.0, Complex64::new(2.0, 0.0)).unwrap();

    let mc = modal_coefficients(&cfg, &med, 1e-12).unwrap();
    println!(
        "modal series truncated at M = {} (converged: {})",
        mc.truncation, mc.converged
    );
    for m in 0..=mc.truncation.min(4) {
        println!("  A_{m} = {:.12}", mc.exterior[m]);
    }

    // sample the pattern over 64 quasi-uniform directions and write CSV
    let dirs = fibonacci_sphere(64);
    let pattern = far_field(&mc, &cfg, &med, &dirs).unwrap();
    let path = std::env::temp_dir().join("ballscatter_farfield.csv");
    let mut file = std::fs::File::create(&path).unwrap();
    write_pattern_csv(&pattern, &mut file).unwrap();
    println!("wrote {} rows to {}", pattern.values.len(), path.display());

    // extraction oracle: u^s(r x̂) r e^{-ikr} converges to u_inf at rate 1/r
    let xhat = [0.48, 0.6, 0.64];
    let uinf = far_field_single(&mc, &cfg, &med, &xhat);
    println!("u_inf({xhat:?}) = {uinf:.10}");
    for r in [1.0e3, 2.0e3, 4.0e3] {
        let x = [r * xhat[0], r * xhat[1], r * xhat[2]];
        let us = scattered_field(&mc, &cfg, &med, &x).unwrap();
        let extracted = us * r * (-Complex64::i() * cfg.k * r).exp();
        println!(
            "  r = {r:6.0}: |extracted - u_inf| = {:.3e}",
            (extracted - uinf).norm()
        );
    }

    // energy bookkeeping for the lossless ball: Im u_inf(d) = (k/4π)∫|u_inf|²
    let forward_amp = far_field_single(&mc, &cfg, &med, &cfg.d);
    println!("forward amplitude u_inf(d) = {forward_amp:.10}");
}
