//! Forward and inverse acoustic scattering by penetrable balls and discs.
//!
//! The crate solves the time-harmonic Helmholtz transmission problem
//! `Δu + k² n²(x) u = 0` for a plane wave hitting a ball (3D) or disc (2D)
//! with a constant or radially layered refractive index, by separation of
//! variables into Bessel/Hankel modal series. On top of the forward map it
//! provides:
//!
//! * far-field patterns and their CSV/JSON serialization ([`forward`]),
//! * the interior transmission eigenvalue problem on balls, with the
//!   Poincaré-based lower bound `k₀` below which the real spectrum is
//!   provably empty ([`ite`]),
//! * single-measurement inversion: recover a constant index at small `k`,
//!   recover center/radius/index at any `k`, or recover a radial layered
//!   profile, all from one incident direction ([`inverse`]).
//!
//! Note the sign convention: the refractive index enters the Helmholtz
//! equation **squared** (`k² n² u`). Data produced under the more common
//! `k² n u` convention must be converted (`n ↦ √n`) before use.
//!
//! Start with the runnable examples (`cargo run --example forward_farfield`,
//! `ite_spectrum`, `invert_ball`, ...); the `ballscatter` binary offers the
//! same capabilities as batch subcommands operating on JSON/CSV files.

pub mod forward;
pub mod geom;
pub mod inverse;
pub mod ite;
pub mod manifest;
pub mod numerics;
pub mod specialfn;
pub mod validate;

pub use forward::{
    far_field, modal_coefficients, scattered_field, transmitted_field, BallMedium, Dimension,
    FarFieldPattern, ModalCoefficients, Profile, ScatteringConfig,
};
pub use inverse::{InversionResult, InversionTask};
pub use ite::{BoundReport, ITEProblem, ITESpectrum};
