//! Recover a radial layered profile (known geometry, unknown layer indices)
//! from one far-field measurement.
//!
//!     cargo run --release --example invert_layered

use ballscatter::forward::{
    far_field, fibonacci_sphere, layered_modal_coefficients, BallMedium, Dimension, Layer,
    Profile, ScatteringConfig,
};
use ballscatter::inverse::{
    invert_layered_profile, InverseBounds, InverseModel, InversionTask, RecoveredModel,
};
use num_complex::Complex64;

fn main() {
    let truth = [Complex64::new(1.8, 0.0), Complex64::new(1.3, 0.0)];
    let cfg = ScatteringConfig::new(3.0, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
    let layers: Vec<Layer> = truth
        .iter()
        .enumerate()
        .map(|(l, &n)| Layer {
            outer_radius: (l + 1) as f64 / 2.0,
            n,
        })
        .collect();
    let med = BallMedium::new([0.0; 3], 1.0, Profile::Layered(layers)).unwrap();
    let mc = layered_modal_coefficients(&cfg, &med, 1e-12).unwrap();
    let data = far_field(&mc, &cfg, &med, &fibonacci_sphere(64)).unwrap();

    let task = InversionTask {
        data,
        model: InverseModel::LayeredRadial {
            center: [0.0; 3],
            radius: 1.0,
            layers: 2,
        },
        bounds: InverseBounds {
            n_re: (0.8, 2.5),
            n_im: (0.0, 0.4),
            center: None,
            radius: None,
        },
        noise_level: 0.0,
        multistart: 6,
        seed: 29,
    };
    let res = invert_layered_profile(&task).unwrap();
    let RecoveredModel::LayeredRadial { layers } = res.model else {
        unreachable!()
    };
    println!("truth layers: {:?}", truth);
    for (l, (got, want)) in layers.iter().zip(&truth).enumerate() {
        println!(
            "  layer {l}: recovered {got:.9}  (|error| = {:.2e})",
            (got - want).norm()
        );
    }
    println!("misfit {:.3e}, best start {}", res.misfit, res.best_start);
    for w in &res.warnings {
        println!("note: {w}");
    }
}
