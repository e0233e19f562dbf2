//! Eigenfunction reconstruction and the Green's-identity test.
//!
//! At a refined root of D_m the null vector gives the eigenpair
//! u = c_u f_m(k n r)·Y, v = c_v f_m(k ñ r)·Y with c_u = f_m(kñR),
//! c_v = f_m(knR) (value continuity is then exact; derivative continuity
//! holds up to the determinant residual). The substitution
//! w = (u − v)/(k²(ñ² − n²)) satisfies Δw + k²n²w = v with w and ∂w/∂ν
//! vanishing on the boundary, and multiplying by v̄ and integrating yields
//!
//! ```text
//! ∫|v|² dx = k²(n² − conj(ñ)²) ∫ v̄ w dx,
//! ```
//!
//! whose relative mismatch is the quantity reported here.

use num_complex::Complex64;

use super::{IteError, ITEProblem};
use crate::forward::Dimension;
use crate::geom::Point;
use crate::ite::determinant::{determinant_scale, modal_ite_determinant};
use crate::numerics::{ball_quadrature, radial_rule};
use crate::specialfn::{cyl_bessel_j, cyl_bessel_j_prime, legendre_p, sph_bessel_j, sph_bessel_j_prime};

const EIGEN_REL_TOL: f64 = 1e-6;

/// L² norm of the angular factor: ∫_{S²} P_m(cosθ)² dσ = 4π/(2m+1) in 3D,
/// ∫ cos²(mφ) dφ = π (2π for m = 0) in 2D.
pub fn angular_l2_factor(m: usize, dim: Dimension) -> f64 {
    match dim {
        Dimension::Three => 4.0 * std::f64::consts::PI / (2 * m + 1) as f64,
        Dimension::Two => {
            if m == 0 {
                2.0 * std::f64::consts::PI
            } else {
                std::f64::consts::PI
            }
        }
    }
}

/// The two members of an interior transmission eigenpair, as radial profiles
/// scaled so that ‖v‖_{L²(Ω)} = 1.
#[derive(Debug, Clone)]
pub struct IteEigenfunctions {
    pub m: usize,
    pub k: f64,
    pub dim: Dimension,
    pub radius: f64,
    pub n: Complex64,
    pub n_tilde: Complex64,
    pub c_u: Complex64,
    pub c_v: Complex64,
}

impl IteEigenfunctions {
    fn radial(&self, scale: Complex64, index: Complex64, r: f64) -> Complex64 {
        let z = index * self.k * r;
        match self.dim {
            Dimension::Three => scale * sph_bessel_j(self.m, z),
            Dimension::Two => scale * cyl_bessel_j(self.m, z),
        }
    }

    fn radial_dr(&self, scale: Complex64, index: Complex64, r: f64) -> Complex64 {
        let z = index * self.k * r;
        let kn = index * self.k;
        match self.dim {
            Dimension::Three => scale * kn * sph_bessel_j_prime(self.m, z),
            Dimension::Two => scale * kn * cyl_bessel_j_prime(self.m, z),
        }
    }

    pub fn u_radial(&self, r: f64) -> Complex64 {
        self.radial(self.c_u, self.n, r)
    }

    pub fn v_radial(&self, r: f64) -> Complex64 {
        self.radial(self.c_v, self.n_tilde, r)
    }

    pub fn u_radial_dr(&self, r: f64) -> Complex64 {
        self.radial_dr(self.c_u, self.n, r)
    }

    pub fn v_radial_dr(&self, r: f64) -> Complex64 {
        self.radial_dr(self.c_v, self.n_tilde, r)
    }

    /// w = (u − v)/(k²(ñ² − n²)), the boundary-flat auxiliary profile.
    pub fn w_radial(&self, r: f64) -> Complex64 {
        (self.u_radial(r) - self.v_radial(r)) / self.w_denominator()
    }

    pub fn w_radial_dr(&self, r: f64) -> Complex64 {
        (self.u_radial_dr(r) - self.v_radial_dr(r)) / self.w_denominator()
    }

    fn w_denominator(&self) -> Complex64 {
        self.k * self.k * (self.n_tilde * self.n_tilde - self.n * self.n)
    }

    fn angular(&self, x: &Point) -> f64 {
        let r = crate::geom::norm(x);
        match self.dim {
            Dimension::Three => {
                let c = if r > 0.0 { (x[2] / r).clamp(-1.0, 1.0) } else { 1.0 };
                legendre_p(self.m, c)
            }
            Dimension::Two => {
                let phi = x[1].atan2(x[0]);
                (self.m as f64 * phi).cos()
            }
        }
    }

    /// Full eigenfunction u at a point of the centered ball.
    pub fn u_field(&self, x: &Point) -> Complex64 {
        self.u_radial(crate::geom::norm(x)) * self.angular(x)
    }

    pub fn v_field(&self, x: &Point) -> Complex64 {
        self.v_radial(crate::geom::norm(x)) * self.angular(x)
    }

    pub fn w_field(&self, x: &Point) -> Complex64 {
        self.w_radial(crate::geom::norm(x)) * self.angular(x)
    }
}

/// Builds the eigenpair at a refined root k_star; errors if the determinant
/// magnitude is not negligible against its natural scale.
pub fn ite_eigenfunctions(
    prob: &ITEProblem,
    m: usize,
    k_star: f64,
) -> Result<IteEigenfunctions, IteError> {
    let det = modal_ite_determinant(prob, m, k_star).norm();
    let scale = determinant_scale(prob, m, k_star).max(1e-300);
    if det / scale > EIGEN_REL_TOL {
        return Err(IteError::NotAnEigenvalue {
            mode: m,
            k: k_star,
            rel: det / scale,
        });
    }
    let zn = prob.n * k_star * prob.radius;
    let zt = prob.n_tilde * k_star * prob.radius;
    let (f_n, f_t) = match prob.dim {
        Dimension::Three => (sph_bessel_j(m, zn), sph_bessel_j(m, zt)),
        Dimension::Two => (cyl_bessel_j(m, zn), cyl_bessel_j(m, zt)),
    };
    let mut fns = IteEigenfunctions {
        m,
        k: k_star,
        dim: prob.dim,
        radius: prob.radius,
        n: prob.n,
        n_tilde: prob.n_tilde,
        c_u: f_t,
        c_v: f_n,
    };
    // normalize ‖v‖_{L²(Ω)} = 1 by ball quadrature
    let rule = ball_quadrature(prob.radius, prob.dim, 80, 2 * m + 8);
    let norm_sq = rule.integrate(|p| fns.v_field(p).norm_sqr());
    let inv = 1.0 / norm_sq.sqrt();
    fns.c_u *= inv;
    fns.c_v *= inv;
    Ok(fns)
}

/// Relative mismatch of the Green's-identity chain at a refined eigenvalue,
/// evaluated by radial Gauss quadrature (the angular factor is closed-form
/// and common to both sides).
pub fn greens_identity_residual(prob: &ITEProblem, m: usize, k_star: f64) -> Result<f64, IteError> {
    greens_identity_residual_with_order(prob, m, k_star, 240)
}

pub fn greens_identity_residual_with_order(
    prob: &ITEProblem,
    m: usize,
    k_star: f64,
    radial_order: usize,
) -> Result<f64, IteError> {
    let fns = ite_eigenfunctions(prob, m, k_star)?;
    let rule = radial_rule(prob.radius, prob.dim, radial_order);
    let ang = angular_l2_factor(m, prob.dim);
    let lhs: f64 = ang
        * rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&r, &w)| w * fns.v_radial(r).norm_sqr())
            .sum::<f64>();
    let cross: Complex64 = ang
        * rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&r, &w)| w * fns.v_radial(r).conj() * fns.w_radial(r))
            .sum::<Complex64>();
    let factor = k_star * k_star
        * (prob.n * prob.n - (prob.n_tilde * prob.n_tilde).conj());
    let rhs = factor * cross;
    Ok((Complex64::new(lhs, 0.0) - rhs).norm() / lhs)
}
