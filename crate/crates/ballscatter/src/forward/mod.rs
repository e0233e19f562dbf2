//! The forward scattering map for penetrable balls and discs.
//!
//! A plane wave `e^{ik x·d}` hits a ball `B_R(z)` with refractive index `n`
//! (constant, radially layered, or a sound-soft obstacle). Separation of
//! variables turns the transmission problem into independent 2x2 systems per
//! mode; the exterior series uses outgoing Hankel functions, the interior
//! series regular Bessel functions. The refractive index enters squared:
//! the interior equation is `Δu + k² n² u = 0`.

mod coefficients;
mod csv;
mod directions;
mod farfield;
mod fields;

pub use coefficients::{layered_modal_coefficients, modal_coefficients, modal_coefficients_up_to};
pub use csv::{read_pattern_csv, write_pattern_csv};
pub use directions::{fibonacci_sphere, uniform_circle};
pub use farfield::{far_field, far_field_single};
pub use fields::{
    jacobi_anger_check, scattered_field, scattered_field_dr, transmitted_field,
    transmitted_field_dr,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::geom::Dimension;
use crate::geom::{dot, norm, point_from_slice, point_to_vec, Point};

#[derive(Debug, Error)]
pub enum ForwardError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("modal system singular at mode m={mode}, k={k} (|det|={det_mag:.3e}): k is a resonance of the representation, perturb it")]
    SingularModalSystem { mode: usize, k: f64, det_mag: f64 },
    #[error("point at distance {dist} from the center is not strictly outside the ball (R={radius})")]
    PointNotExterior { dist: f64, radius: f64 },
    #[error("point at distance {dist} from the center is not strictly inside the ball (R={radius})")]
    PointNotInterior { dist: f64, radius: f64 },
    #[error("sound-soft obstacle carries no interior field")]
    NoInteriorField,
    #[error("layered transfer sweep ill-conditioned at interface {interface} (cond ~ {cond:.3e})")]
    IllConditionedLayering { interface: usize, cond: f64 },
}

/// Incident plane wave: wavenumber, direction, ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringConfig {
    pub k: f64,
    pub d: Point,
    pub dim: Dimension,
}

impl ScatteringConfig {
    pub fn new(k: f64, d: Point, dim: Dimension) -> Result<Self, ForwardError> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(ForwardError::InvalidInput(format!(
                "wavenumber must be positive and finite, got {k}"
            )));
        }
        if (norm(&d) - 1.0).abs() > 1e-12 {
            return Err(ForwardError::InvalidInput(format!(
                "incident direction must be unit length to 1e-12, |d| = {}",
                norm(&d)
            )));
        }
        if dim == Dimension::Two && d[2] != 0.0 {
            return Err(ForwardError::InvalidInput(
                "2D incident direction must have zero third component".into(),
            ));
        }
        Ok(Self { k, d, dim })
    }
}

/// Radial refractive profile of the scatterer.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Constant(Complex64),
    /// Concentric layers; `outer_radius` strictly increasing, last one = R.
    Layered(Vec<Layer>),
    /// Impenetrable obstacle with a homogeneous Dirichlet condition.
    SoundSoft,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub outer_radius: f64,
    pub n: Complex64,
}

/// A penetrable ball (or disc) `B_R(z)`, or its sound-soft variant.
#[derive(Debug, Clone, PartialEq)]
pub struct BallMedium {
    pub center: Point,
    pub radius: f64,
    pub profile: Profile,
}

fn check_index(n: Complex64) -> Result<(), ForwardError> {
    if n.norm() == 0.0 {
        return Err(ForwardError::InvalidInput(
            "refractive index must be nonzero".into(),
        ));
    }
    if n.im < 0.0 {
        return Err(ForwardError::InvalidInput(format!(
            "refractive index must have Im n >= 0 (absorbing media), got {n}"
        )));
    }
    Ok(())
}

impl BallMedium {
    pub fn new(center: Point, radius: f64, profile: Profile) -> Result<Self, ForwardError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(ForwardError::InvalidInput(format!(
                "radius must be positive, got {radius}"
            )));
        }
        match &profile {
            Profile::Constant(n) => check_index(*n)?,
            Profile::Layered(layers) => {
                if layers.is_empty() {
                    return Err(ForwardError::InvalidInput(
                        "layered profile needs at least one layer".into(),
                    ));
                }
                let mut prev = 0.0;
                for layer in layers {
                    check_index(layer.n)?;
                    if layer.outer_radius <= prev {
                        return Err(ForwardError::InvalidInput(
                            "layer breakpoints must be strictly increasing".into(),
                        ));
                    }
                    prev = layer.outer_radius;
                }
                if (prev - radius).abs() > 1e-12 * radius {
                    return Err(ForwardError::InvalidInput(format!(
                        "outermost layer radius {prev} must equal the ball radius {radius}"
                    )));
                }
            }
            Profile::SoundSoft => {}
        }
        Ok(Self {
            center,
            radius,
            profile,
        })
    }

    pub fn constant(center: Point, radius: f64, n: Complex64) -> Result<Self, ForwardError> {
        Self::new(center, radius, Profile::Constant(n))
    }

    pub fn sound_soft(center: Point, radius: f64) -> Result<Self, ForwardError> {
        Self::new(center, radius, Profile::SoundSoft)
    }
}

/// Truncated modal expansion: exterior coefficients `A_m`, interior `B_m`
/// (empty for sound-soft), and the per-layer basis for layered media.
#[derive(Debug, Clone)]
pub struct ModalCoefficients {
    pub truncation: usize,
    pub exterior: Vec<Complex64>,
    pub interior: Vec<Complex64>,
    pub layers: Option<Vec<LayerModal>>,
    /// False only if the series hit the hard cap before the tail test.
    pub converged: bool,
}

/// Interior radial basis of one layer: regular·f_m(k n r) + singular·g_m(k n r)
/// with (f, g) = (j, y) in 3D and (J, Y) in 2D; `singular` vanishes innermost.
#[derive(Debug, Clone)]
pub struct LayerModal {
    pub outer_radius: f64,
    pub n: Complex64,
    pub regular: Vec<Complex64>,
    pub singular: Vec<Complex64>,
}

/// The phase factor `e^{ik z·d}` carried by every modal right-hand side.
pub fn translate_phase(cfg: &ScatteringConfig, center: &Point) -> Complex64 {
    (Complex64::i() * cfg.k * dot(center, &cfg.d)).exp()
}

/// Sampled far-field pattern u_inf(x̂) for one incident wave.
#[derive(Debug, Clone)]
pub struct FarFieldPattern {
    pub directions: Vec<Point>,
    pub values: Vec<Complex64>,
    pub config: ScatteringConfig,
}

impl FarFieldPattern {
    pub fn new(
        directions: Vec<Point>,
        values: Vec<Complex64>,
        config: ScatteringConfig,
    ) -> Result<Self, ForwardError> {
        if directions.len() != values.len() {
            return Err(ForwardError::InvalidInput(
                "directions and values must have equal length".into(),
            ));
        }
        for d in &directions {
            if (norm(d) - 1.0).abs() > 1e-12 {
                return Err(ForwardError::InvalidInput(format!(
                    "observation direction {d:?} is not unit length"
                )));
            }
        }
        for i in 0..directions.len() {
            for j in i + 1..directions.len() {
                if norm(&crate::geom::sub(&directions[i], &directions[j])) < 1e-14 {
                    return Err(ForwardError::InvalidInput(format!(
                        "observation directions {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(Self {
            directions,
            values,
            config,
        })
    }

    /// Discrete l² misfit against another pattern on the same directions.
    pub fn misfit(&self, other: &FarFieldPattern) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum()
    }
}

/// The JSON document describing one scattering problem (config + medium).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub dimension: Dimension,
    pub k: f64,
    pub d: Vec<f64>,
    pub center: Vec<f64>,
    pub radius: f64,
    pub profile: ProfileDocument,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProfileDocument {
    Constant { n: Complex64 },
    Layered { layers: Vec<LayerDocument> },
    SoundSoft,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerDocument {
    pub r: f64,
    pub n: Complex64,
}

impl ProblemDocument {
    pub fn split(&self) -> Result<(ScatteringConfig, BallMedium), ForwardError> {
        let d = point_from_slice(&self.d, self.dimension).map_err(ForwardError::InvalidInput)?;
        let center =
            point_from_slice(&self.center, self.dimension).map_err(ForwardError::InvalidInput)?;
        let cfg = ScatteringConfig::new(self.k, d, self.dimension)?;
        let profile = match &self.profile {
            ProfileDocument::Constant { n } => Profile::Constant(*n),
            ProfileDocument::SoundSoft => Profile::SoundSoft,
            ProfileDocument::Layered { layers } => Profile::Layered(
                layers
                    .iter()
                    .map(|l| Layer {
                        outer_radius: l.r,
                        n: l.n,
                    })
                    .collect(),
            ),
        };
        let medium = BallMedium::new(center, self.radius, profile)?;
        Ok((cfg, medium))
    }

    pub fn from_parts(cfg: &ScatteringConfig, medium: &BallMedium) -> Self {
        let profile = match &medium.profile {
            Profile::Constant(n) => ProfileDocument::Constant { n: *n },
            Profile::SoundSoft => ProfileDocument::SoundSoft,
            Profile::Layered(layers) => ProfileDocument::Layered {
                layers: layers
                    .iter()
                    .map(|l| LayerDocument {
                        r: l.outer_radius,
                        n: l.n,
                    })
                    .collect(),
            },
        };
        Self {
            dimension: cfg.dim,
            k: cfg.k,
            d: point_to_vec(&cfg.d, cfg.dim),
            center: point_to_vec(&medium.center, cfg.dim),
            radius: medium.radius,
            profile,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_rejects_non_unit_direction() {
        assert!(ScatteringConfig::new(1.0, [1.0, 1.0, 0.0], Dimension::Two).is_err());
        assert!(ScatteringConfig::new(-1.0, [1.0, 0.0, 0.0], Dimension::Two).is_err());
        assert!(ScatteringConfig::new(1.0, [1.0, 0.0, 0.0], Dimension::Three).is_ok());
    }

    #[test]
    fn medium_rejects_negative_absorption_and_bad_layers() {
        let c = [0.0; 3];
        assert!(BallMedium::constant(c, 1.0, Complex64::new(1.5, -0.1)).is_err());
        assert!(BallMedium::constant(c, 0.0, Complex64::new(1.5, 0.0)).is_err());
        let layers = vec![
            Layer {
                outer_radius: 0.7,
                n: Complex64::new(1.5, 0.0),
            },
            Layer {
                outer_radius: 0.4,
                n: Complex64::new(1.2, 0.0),
            },
        ];
        assert!(BallMedium::new(c, 1.0, Profile::Layered(layers)).is_err());
    }

    #[test]
    fn translate_phase_basics() {
        let cfg = ScatteringConfig::new(2.0, [0.0, 0.0, 1.0], Dimension::Three).unwrap();
        assert_eq!(translate_phase(&cfg, &[0.0; 3]), Complex64::new(1.0, 0.0));
        // z perpendicular to d
        let ph = translate_phase(&cfg, &[0.7, -0.3, 0.0]);
        assert!((ph - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        // general z keeps unit modulus
        let ph = translate_phase(&cfg, &[0.7, -0.3, 0.9]);
        assert!((ph.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn problem_document_round_trip() {
        let json = r#"{
            "dimension": 3, "k": 1.0, "d": [0.0, 0.0, 1.0],
            "center": [0.0, 0.0, 0.0], "radius": 1.0,
            "profile": {"type": "constant", "n": [2.0, 0.0]}
        }"#;
        let doc: ProblemDocument = serde_json::from_str(json).unwrap();
        let (cfg, med) = doc.split().unwrap();
        assert_eq!(cfg.k, 1.0);
        assert_eq!(med.radius, 1.0);
        let back = ProblemDocument::from_parts(&cfg, &med);
        let s = serde_json::to_string(&back).unwrap();
        let again: ProblemDocument = serde_json::from_str(&s).unwrap();
        assert_eq!(again.split().unwrap(), (cfg, med));
    }

    #[test]
    fn soundsoft_document_tag() {
        let json = r#"{
            "dimension": 2, "k": 1.0, "d": [1.0, 0.0],
            "center": [0.0, 0.0], "radius": 0.5,
            "profile": {"type": "soundsoft"}
        }"#;
        let doc: ProblemDocument = serde_json::from_str(json).unwrap();
        let (_, med) = doc.split().unwrap();
        assert_eq!(med.profile, Profile::SoundSoft);
        let s = serde_json::to_string(&doc).unwrap();
        assert!(s.contains("\"type\":\"soundsoft\""));
    }

    #[test]
    fn pattern_rejects_duplicate_directions() {
        let cfg = ScatteringConfig::new(1.0, [1.0, 0.0, 0.0], Dimension::Two).unwrap();
        let dirs = vec![[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]];
        let vals = vec![Complex64::new(0.0, 0.0); 2];
        assert!(FarFieldPattern::new(dirs, vals, cfg).is_err());
    }
}
