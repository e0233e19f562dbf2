//! Deterministic quasi-uniform direction sets.

use crate::geom::Point;

/// Fibonacci sphere: n quasi-uniform unit vectors on S², deterministic.
pub fn fibonacci_sphere(n: usize) -> Vec<Point> {
    assert!(n >= 1);
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|j| {
            let z = 1.0 - (2.0 * j as f64 + 1.0) / n as f64;
            let s = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * j as f64;
            let p = [s * phi.cos(), s * phi.sin(), z];
            let inv = 1.0 / crate::geom::norm(&p);
            [p[0] * inv, p[1] * inv, p[2] * inv]
        })
        .collect()
}

/// n equally spaced unit vectors on the circle.
pub fn uniform_circle(n: usize) -> Vec<Point> {
    assert!(n >= 1);
    (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            [theta.cos(), theta.sin(), 0.0]
        })
        .collect()
}
