//! The misfit curve m(n') = ‖F(n') − F(n_true)‖² over a grid of candidate
//! indices: below k₀ it vanishes only at the truth, a desk-scale view of
//! the single-measurement uniqueness mechanism.
//!
//!     cargo run --release --example uniqueness_probe

use ballscatter::forward::{fibonacci_sphere, Dimension, ScatteringConfig};
use ballscatter::inverse::uniqueness_probe;
use ballscatter::ite::k0_bounds;
use num_complex::Complex64;

fn main() {
    let n_star = 3.0;
    let truth = 1.5;
    let report = k0_bounds(1.0, Dimension::Three, n_star);
    let k = 0.5 * report.k0_effective;
    println!("k = {k:.4} (half of k0_effective = {:.4})", report.k0_effective);

    let cfg = ScatteringConfig::new(k, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
    let grid: Vec<f64> = (0..101).map(|i| 0.1 + (n_star - 0.1) * i as f64 / 100.0).collect();
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

    // a crude console plot of log10 m(n')
    let floor = -30.0;
    for p in curve.iter().step_by(4) {
        let level = p.misfit.max(10f64.powf(floor)).log10();
        let bars = ((level - floor) * 1.8).max(0.0) as usize;
        println!("  n' = {:5.2}  log10 m = {:7.2} {}", p.n, level, "#".repeat(bars));
    }
    let (best_n, best_m) = curve
        .iter()
        .map(|p| (p.n, p.misfit))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    println!("\nminimum at n' = {best_n} with m = {best_m:.3e} (truth = {truth})");
}
