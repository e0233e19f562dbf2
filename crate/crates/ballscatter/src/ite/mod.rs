//! Interior transmission eigenvalues on balls and the k₀ lower bound.
//!
//! For a ball with two constant indices n ≠ ñ, separation of variables
//! reduces the interior transmission system
//!
//! ```text
//! Δu + k² n² u = 0,  Δv + k² ñ² v = 0  in Ω,
//! u = v,  ∂u/∂ν = ∂v/∂ν              on ∂Ω
//! ```
//!
//! to one scalar determinant per mode,
//!
//! ```text
//! D_m(k) = j_m(knR)·kñ·j_m'(kñR) − j_m(kñR)·kn·j_m'(knR),
//! ```
//!
//! whose positive zeros are the eigenvalues (cylindrical functions in 2D).
//! Discreteness of the spectrum for *variable* index pairs holds under
//! additional hypotheses on the perturbation ε = ñ − n (bounded between
//! two positive constants below the background level, with a fixed sign in
//! a neighborhood of the boundary); that general machinery is consumed as
//! a known result and only radially symmetric instances are computed here,
//! where discreteness is evident from the determinant's analyticity.
//! The module also provides the Poincaré-based machinery showing the real
//! spectrum is empty below an explicit k₀: the auxiliary source problem
//! Δw + k²w = f with w|∂Ω = 0 satisfies ‖w‖ ≤ √2·C₁‖f‖ for k < 1/(2√C₁),
//! and combining it with the Green's-identity chain yields the threshold
//! k₀ < 1/(√(2C)·n*), C = √2·C₁.

mod bounds;
mod determinant;
mod eigenfunctions;

pub use bounds::{dirichlet_radial_eigenvalues, k0_bounds, lemma32_verify, poincare_constant};
pub use determinant::{modal_ite_determinant, scan_spectrum, scan_spectrum_with_grid};
pub use eigenfunctions::{
    angular_l2_factor, greens_identity_residual, greens_identity_residual_with_order,
    ite_eigenfunctions, IteEigenfunctions,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Dimension;

#[derive(Debug, Error)]
pub enum IteError {
    #[error("inadmissible index pair: {0}")]
    InadmissiblePair(String),
    #[error("k = {k} is not an eigenvalue of mode m = {mode} (relative determinant {rel:.3e})")]
    NotAnEigenvalue { mode: usize, k: f64, rel: f64 },
    #[error("wavenumber k = {k} resonates with radial Dirichlet mode {mode} (|k² − λ| < 1e-12)")]
    ResonantWavenumber { mode: usize, k: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// The interior transmission eigenvalue problem on a ball: two constant
/// indices on the same geometry, a scan interval in k, and the largest
/// angular mode to examine.
#[derive(Debug, Clone, Copy)]
pub struct ITEProblem {
    pub radius: f64,
    pub dim: Dimension,
    pub n: Complex64,
    pub n_tilde: Complex64,
    pub k_lo: f64,
    pub k_hi: f64,
    pub m_max: usize,
}

impl ITEProblem {
    pub fn new(
        radius: f64,
        dim: Dimension,
        n: Complex64,
        n_tilde: Complex64,
        k_lo: f64,
        k_hi: f64,
        m_max: usize,
    ) -> Result<Self, IteError> {
        if !(radius > 0.0) {
            return Err(IteError::InvalidInput(format!(
                "radius must be positive, got {radius}"
            )));
        }
        if !(k_lo >= 0.0 && k_lo < k_hi) {
            return Err(IteError::InvalidInput(format!(
                "need 0 <= k_lo < k_hi, got [{k_lo}, {k_hi}]"
            )));
        }
        for (label, v) in [("n", n), ("n_tilde", n_tilde)] {
            if v.norm() == 0.0 {
                return Err(IteError::InadmissiblePair(format!("{label} must be nonzero")));
            }
            if v.im < 0.0 {
                return Err(IteError::InadmissiblePair(format!(
                    "{label} must have nonnegative imaginary part, got {v}"
                )));
            }
        }
        if (n - n_tilde).norm() < 1e-14 {
            return Err(IteError::InadmissiblePair(
                "the two indices must differ (n != n_tilde)".into(),
            ));
        }
        Ok(Self {
            radius,
            dim,
            n,
            n_tilde,
            k_lo,
            k_hi,
            m_max,
        })
    }

    pub fn is_real_pair(&self) -> bool {
        self.n.im == 0.0 && self.n_tilde.im == 0.0
    }
}

/// One refined eigenvalue: angular mode, wavenumber, determinant residual
/// |D_m(k)| at the refined root.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct SpectrumEntry {
    pub m: usize,
    pub k: f64,
    pub residual: f64,
}

/// Eigenvalues found on a scan interval, sorted by k.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct ITESpectrum {
    pub entries: Vec<SpectrumEntry>,
}

/// The Poincaré constant C₁, the constant C = √2·C₁, and the two lower
/// bounds on the first interior transmission eigenvalue.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub k0_lemma: f64,
    pub k0_thm: f64,
    pub k0_effective: f64,
}
