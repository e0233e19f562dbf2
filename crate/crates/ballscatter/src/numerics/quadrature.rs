//! Gauss-Legendre rules and product rules on balls/discs.

use crate::geom::{Dimension, Point};

#[derive(Debug, Clone, PartialEq)]
pub enum QuadDomain {
    /// The reference interval, or a mapped copy [lo, hi].
    Interval { lo: f64, hi: f64 },
    /// Radial rule on [0, R] with the r^{N-1} Jacobian folded into the
    /// weights, so that the weights sum to R^N / N.
    Radial { radius: f64, dim: Dimension },
}

/// One-dimensional quadrature rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub domain: QuadDomain,
}

impl QuadratureRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn measure(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Gauss-Legendre rule of the given order on [-1, 1]; exact for polynomials
/// of degree <= 2·order - 1. Nodes by Newton iteration on P_order.
pub fn gauss_legendre(order: usize) -> QuadratureRule {
    assert!(order >= 1, "quadrature order must be >= 1");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton on the recurrence
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    QuadratureRule {
        nodes,
        weights,
        domain: QuadDomain::Interval { lo: -1.0, hi: 1.0 },
    }
}

/// Affine image of a reference rule on [lo, hi].
pub fn mapped_interval(order: usize, lo: f64, hi: f64) -> QuadratureRule {
    let base = gauss_legendre(order);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    QuadratureRule {
        nodes: base.nodes.iter().map(|&x| mid + half * x).collect(),
        weights: base.weights.iter().map(|&w| w * half).collect(),
        domain: QuadDomain::Interval { lo, hi },
    }
}

/// Radial rule on [0, R] with the surface-measure Jacobian r^{N-1} already
/// in the weights: Σ w_i g(r_i) ≈ ∫_0^R g(r) r^{N-1} dr.
pub fn radial_rule(radius: f64, dim: Dimension, order: usize) -> QuadratureRule {
    assert!(radius > 0.0, "radius must be positive");
    let base = mapped_interval(order, 0.0, radius);
    let weights = base
        .nodes
        .iter()
        .zip(&base.weights)
        .map(|(&r, &w)| match dim {
            Dimension::Two => w * r,
            Dimension::Three => w * r * r,
        })
        .collect();
    QuadratureRule {
        nodes: base.nodes,
        weights,
        domain: QuadDomain::Radial { radius, dim },
    }
}

/// Product quadrature on the ball B_R (3D) or disc (2D): radial Gauss times
/// Gauss in cos(theta) times uniform azimuth (3D), or radial Gauss times
/// uniform angles (2D). Weights sum to the ball volume.
#[derive(Debug, Clone)]
pub struct BallRule {
    pub points: Vec<Point>,
    pub weights: Vec<f64>,
    pub dim: Dimension,
    pub radius: f64,
}

impl BallRule {
    pub fn integrate(&self, f: impl Fn(&Point) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, &w)| w * f(p))
            .sum()
    }

    pub fn measure(&self) -> f64 {
        self.weights.iter().sum()
    }
}

pub fn ball_quadrature(
    radius: f64,
    dim: Dimension,
    radial_order: usize,
    angular_order: usize,
) -> BallRule {
    assert!(radius > 0.0 && radial_order >= 1 && angular_order >= 1);
    let radial = radial_rule(radius, dim, radial_order);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    match dim {
        Dimension::Two => {
            let n_phi = angular_order.max(2);
            let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
            for (&r, &wr) in radial.nodes.iter().zip(&radial.weights) {
                for l in 0..n_phi {
                    let phi = w_phi * l as f64;
                    points.push([r * phi.cos(), r * phi.sin(), 0.0]);
                    weights.push(wr * w_phi);
                }
            }
        }
        Dimension::Three => {
            let polar = gauss_legendre(angular_order); // in c = cos(theta)
            let n_phi = (2 * angular_order).max(4);
            let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
            for (&r, &wr) in radial.nodes.iter().zip(&radial.weights) {
                for (&c, &wc) in polar.nodes.iter().zip(&polar.weights) {
                    let s = (1.0 - c * c).max(0.0).sqrt();
                    for l in 0..n_phi {
                        let phi = w_phi * l as f64;
                        points.push([r * s * phi.cos(), r * s * phi.sin(), r * c]);
                        weights.push(wr * wc * w_phi);
                    }
                }
            }
        }
    }
    BallRule {
        points,
        weights,
        dim,
        radius,
    }
}
