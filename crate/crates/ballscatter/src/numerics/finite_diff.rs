//! Finite-difference Helmholtz residual (Δ_h u + k² n² u).

use num_complex::Complex64;

use crate::geom::{Dimension, Point};

/// Central-difference Helmholtz residual at `x`:
/// (Δ_h u)(x) + k² n_local² u(x), using the 2N+1 point stencil with step h.
/// Vanishes at rate O(h²) on exact solutions of Δu + k²n²u = 0.
pub fn fd_helmholtz_residual(
    field: &dyn Fn(&Point) -> Complex64,
    x: &Point,
    dim: Dimension,
    k: f64,
    n_local: Complex64,
    h: f64,
) -> Complex64 {
    assert!(h > 0.0, "stencil step must be positive");
    let center = field(x);
    let mut laplacian = Complex64::new(0.0, 0.0);
    for axis in 0..dim.ambient() {
        let mut plus = *x;
        let mut minus = *x;
        plus[axis] += h;
        minus[axis] -= h;
        laplacian += (field(&plus) + field(&minus) - 2.0 * center) / (h * h);
    }
    laplacian + k * k * n_local * n_local * center
}

/// log2 of the residual ratio between steps h and h/2; equals the empirical
/// convergence order.
pub fn empirical_order(residual_h: f64, residual_h2: f64) -> f64 {
    (residual_h / residual_h2).log2()
}
