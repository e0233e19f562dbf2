//! Bessel-family special functions and Legendre polynomials.
//!
//! Everything the modal series formulas need: spherical `j_m`, `y_m`,
//! `h_m^{(1)}` (complex argument where required), their cylindrical
//! counterparts `J_m`, `Y_m`, `H_m^{(1)}`, Legendre polynomials and odd
//! double factorials.
//!
//! Accuracy contract: at least 12 significant digits for `|x| ≤ 100` and
//! order `m ≤ 80`; beyond that range the routines stay well-defined but
//! degrade gracefully (arguments above 1e4 are unsupported). All functions
//! are pure and panic on domain violations (`x ≤ 0` where a positive real
//! argument is required, `|t| > 1` for Legendre, even/nonpositive double
//! factorials); invalid user input is expected to be rejected earlier, at
//! the configuration boundary.

mod cylindrical;
mod factorial;
mod legendre;
mod spherical;

pub use cylindrical::{
    cyl_bessel_j, cyl_bessel_j_prime, cyl_bessel_j_seq, cyl_bessel_y, cyl_bessel_y_prime,
    cyl_hankel1, cyl_hankel1_prime, cyl_jy_real_seq, cyl_neumann_seq_complex, CylJySeq,
};
pub use factorial::{double_factorial, ln_double_factorial};
pub use legendre::{cos_multiples_seq, legendre_p, legendre_p_seq};
pub use spherical::{
    sph_bessel_j, sph_bessel_j_prime, sph_bessel_j_prime_seq, sph_bessel_j_seq, sph_hankel1,
    sph_hankel1_prime, sph_hankel1_seq, sph_neumann, sph_neumann_seq,
};
