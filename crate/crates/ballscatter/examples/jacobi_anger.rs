//! Jacobi-Anger expansion of a plane wave about an arbitrary center, and
//! its super-exponential truncation tail.
//!
//!     cargo run --release --example jacobi_anger

use ballscatter::forward::{jacobi_anger_check, Dimension, ScatteringConfig};
use ballscatter::geom::dot;
use num_complex::Complex64;

fn main() {
    let cfg = ScatteringConfig::new(1.0, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
    let z = [0.3, -0.1, 0.2];
    let x = [3.3, -0.1, 4.2]; // k|x-z| = 5
    let exact = (Complex64::i() * cfg.k * dot(&x, &cfg.d)).exp();

    println!("plane wave e^{{ik x·d}} at x = {x:?}: {exact:.12}");
    println!("truncated expansion about z = {z:?}:");
    for m in [2usize, 4, 6, 8, 10, 14, 18, 24, 40] {
        let approx = jacobi_anger_check(&cfg, &z, &x, m);
        println!("  M = {m:2}: error {:.3e}", (approx - exact).norm());
    }
    println!("(the tail collapses super-exponentially once M exceeds ~ e·k|x-z|/2 ≈ 7)");
}
