//! Scattering by a two-layer sphere via the transfer-matrix sweep, compared
//! against the constant-index solver in the degenerate single-layer case.
//!
//!     cargo run --release --example layered_sphere

use ballscatter::forward::{
    far_field, fibonacci_sphere, layered_modal_coefficients, modal_coefficients, BallMedium,
    Dimension, Layer, Profile, ScatteringConfig,
};
use num_complex::Complex64;

fn main() {
    let cfg = ScatteringConfig::new(1.5, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
    let dirs = fibonacci_sphere(32);

    // a soft core under a harder shell
    let core_shell = BallMedium::new(
        [0.0; 3],
        1.0,
        Profile::Layered(vec![
            Layer {
                outer_radius: 0.5,
                n: Complex64::new(1.2, 0.0),
            },
            Layer {
                outer_radius: 1.0,
                n: Complex64::new(1.9, 0.0),
            },
        ]),
    )
    .unwrap();
    let mc = layered_modal_coefficients(&cfg, &core_shell, 1e-12).unwrap();
    let pattern = far_field(&mc, &cfg, &core_shell, &dirs).unwrap();
    println!("core/shell sphere, M = {}", mc.truncation);
    println!(
        "  forward amplitude  u_inf(+d) = {:.8}",
        pattern.values[0]
    );

    // degenerate single layer reproduces the constant solver
    let n = Complex64::new(1.6, 0.05);
    let one_layer = BallMedium::new(
        [0.0; 3],
        1.0,
        Profile::Layered(vec![Layer {
            outer_radius: 1.0,
            n,
        }]),
    )
    .unwrap();
    let constant = BallMedium::constant([0.0; 3], 1.0, n).unwrap();
    let a = layered_modal_coefficients(&cfg, &one_layer, 1e-12).unwrap();
    let b = modal_coefficients(&cfg, &constant, 1e-12).unwrap();
    let worst = (0..=a.truncation.min(b.truncation))
        .map(|m| (a.exterior[m] - b.exterior[m]).norm())
        .fold(0.0, f64::max);
    println!("single layer vs constant solver: max |ΔA_m| = {worst:.3e}");
}
