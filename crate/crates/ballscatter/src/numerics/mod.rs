//! Shared numerical infrastructure: Gauss quadrature on intervals and balls,
//! sign-change root scans, finite-difference Helmholtz residuals, and a
//! multistart Levenberg-Marquardt least-squares driver.

mod finite_diff;
mod least_squares;
mod linalg;
mod parallel;
mod quadrature;
mod rng;
mod roots;

pub use finite_diff::{empirical_order, fd_helmholtz_residual};
pub use least_squares::{least_squares_minimize, LsqOptions, LsqSolution, NonConvergence};
pub use linalg::{solve_dense, sym_eigenvalues};
pub use parallel::{parallel_map, set_worker_cap, worker_cap};
pub use quadrature::{ball_quadrature, gauss_legendre, radial_rule, BallRule, QuadDomain, QuadratureRule};
pub use rng::SplitMix64;
pub use roots::{bracket_and_refine, BracketedRoot};
