//! Interior transmission eigenvalues of a ball: scan, eigenfunctions, and
//! the Green's-identity consistency check at each refined eigenvalue.
//!
//!     cargo run --release --example ite_spectrum

use ballscatter::forward::Dimension;
use ballscatter::ite::{
    greens_identity_residual, ite_eigenfunctions, k0_bounds, scan_spectrum, ITEProblem,
};
use num_complex::Complex64;

fn main() {
    let n = Complex64::new(2.0, 0.0);
    let n_tilde = Complex64::new(1.0, 0.0);
    let prob = ITEProblem::new(1.0, Dimension::Three, n, n_tilde, 0.5, 10.0, 3).unwrap();

    let bounds = k0_bounds(prob.radius, prob.dim, 2.0);
    println!(
        "k0_lemma = {:.6}, k0_thm = {:.6}, k0_effective = {:.6}",
        bounds.k0_lemma, bounds.k0_thm, bounds.k0_effective
    );

    let spectrum = scan_spectrum(&prob);
    println!(
        "found {} eigenvalues on [{}, {}] for m <= {}:",
        spectrum.entries.len(),
        prob.k_lo,
        prob.k_hi,
        prob.m_max
    );
    for entry in spectrum.entries.iter().take(8) {
        let greens = greens_identity_residual(&prob, entry.m, entry.k).unwrap();
        let fns = ite_eigenfunctions(&prob, entry.m, entry.k).unwrap();
        let w_boundary = fns.w_radial(prob.radius).norm();
        println!(
            "  m = {}, k = {:.9}  |D| = {:.2e}  Green's residual = {:.2e}  |w(R)| = {:.2e}",
            entry.m, entry.k, entry.residual, greens, w_boundary
        );
    }
    if let Some(first) = spectrum.entries.first() {
        println!(
            "smallest eigenvalue {:.6} sits above k0_effective {:.6}, as the lower bound demands",
            first.k, bounds.k0_effective
        );
    }
}
