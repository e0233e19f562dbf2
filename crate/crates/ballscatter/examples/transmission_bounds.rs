//! The Poincaré-based lower-bound machinery: C₁ from Bessel zeros, the two
//! k₀ thresholds, and the source-problem bound ‖w‖ ≤ √2·C₁‖f‖ checked on
//! random radial sources.
//!
//!     cargo run --release --example transmission_bounds

use ballscatter::forward::Dimension;
use ballscatter::ite::{k0_bounds, lemma32_verify, poincare_constant};
use ballscatter::numerics::SplitMix64;

fn main() {
    for dim in [Dimension::Three, Dimension::Two] {
        let c1 = poincare_constant(1.0, dim);
        println!("{dim:?}: C1(unit ball) = {c1:.12}  (1/λ1, λ1 = {:.6})", 1.0 / c1);
    }

    let report = k0_bounds(1.0, Dimension::Three, 2.0);
    println!(
        "\nR = 1, 3D, n* = 2:\n  C1 = {:.9}\n  C  = {:.9}\n  k0_lemma = {:.9}\n  k0_thm = {:.9}\n  k0_effective = {:.9}",
        report.c1, report.c, report.k0_lemma, report.k0_thm, report.k0_effective
    );

    // the source problem Δw + k²w = f, w|∂Ω = 0 stays bounded below k0_lemma
    println!("\nsource-problem ratios ‖w‖/‖f‖ against the bound √2·C1 = {:.6}:", report.c);
    let mut rng = SplitMix64::new(42);
    for factor in [0.3, 0.6, 0.9] {
        let k = factor * report.k0_lemma;
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..20).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
            let (ratio, _) = lemma32_verify(1.0, Dimension::Three, k, &coeffs).unwrap();
            worst = worst.max(ratio);
        }
        println!("  k = {:.3} k0_lemma: worst ratio over 20 sources = {worst:.6}", factor);
    }

    // outside the small-k regime the bound is genuinely lost
    let lambda1 = 1.0 / report.c1;
    let k_outside = 1.01 * lambda1.sqrt();
    let (ratio, bound) = lemma32_verify(1.0, Dimension::Three, k_outside, &[1.0]).unwrap();
    println!(
        "\nk = 1.01·√λ1 (outside the regime): ratio = {ratio:.3} vs bound {bound:.3} — bound not claimed"
    );
}
