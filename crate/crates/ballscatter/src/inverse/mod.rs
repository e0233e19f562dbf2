//! Inversion from a single far-field measurement (one incident direction,
//! one wavenumber, all observation directions).
//!
//! Three model classes, each backed by a uniqueness statement:
//!
//! * constant index with known geometry — unique for k below the `k0`
//!   threshold of [`crate::ite::k0_bounds`];
//! * unknown ball and constant index — unique at any fixed k; the center
//!   is located first by exploiting that a correctly recentred pattern
//!   depends on the observation direction only through x̂·d;
//! * radial layered profile with known center — unique at any fixed k by
//!   rotation invariance.
//!
//! All recoveries minimize the discrete l² misfit between the measured and
//! predicted patterns with the multistart Levenberg-Marquardt driver.

mod ball_and_n;
mod constant_n;
mod layered;
mod probe;

pub use ball_and_n::invert_ball_and_n;
pub use constant_n::invert_constant_n;
pub use layered::invert_layered_profile;
pub use probe::{uniqueness_probe, ProbePoint};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forward::{Dimension, FarFieldPattern, ScatteringConfig};
use crate::geom::{point_from_slice, Point};

#[derive(Debug, Error)]
pub enum InverseError {
    #[error("invalid task: {0}")]
    InvalidTask(String),
    #[error("optimization did not converge: {0}")]
    NonConvergence(#[from] crate::numerics::NonConvergence),
    #[error("far-field data is below the detectability floor; no scatterer present")]
    DegenerateData,
    #[error(transparent)]
    Forward(#[from] crate::forward::ForwardError),
}

/// What is being recovered, plus whatever geometry is known in advance.
#[derive(Debug, Clone, PartialEq)]
pub enum InverseModel {
    /// Known ball, unknown constant complex index.
    ConstantN { center: Point, radius: f64 },
    /// Unknown center, radius and constant complex index.
    BallAndN,
    /// Known ball, unknown per-layer indices on uniform breakpoints.
    LayeredRadial {
        center: Point,
        radius: f64,
        layers: usize,
    },
}

/// Box constraints on the unknowns. `n_re`/`n_im` apply to every recovered
/// index (all layers share the box); `center`/`radius` are required for the
/// BallAndN model only.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseBounds {
    pub n_re: (f64, f64),
    pub n_im: (f64, f64),
    pub center: Option<Vec<(f64, f64)>>,
    pub radius: Option<(f64, f64)>,
}

impl InverseBounds {
    fn check_interval(label: &str, (lo, hi): (f64, f64)) -> Result<(), InverseError> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(InverseError::InvalidTask(format!(
                "{label} bounds must be finite with lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), InverseError> {
        Self::check_interval("n_re", self.n_re)?;
        Self::check_interval("n_im", self.n_im)?;
        if self.n_im.0 < 0.0 {
            return Err(InverseError::InvalidTask(
                "n_im lower bound must be >= 0 (admissible absorbing media)".into(),
            ));
        }
        if let Some(c) = &self.center {
            for (axis, &b) in c.iter().enumerate() {
                Self::check_interval(&format!("center[{axis}]"), b)?;
            }
        }
        if let Some(r) = self.radius {
            Self::check_interval("radius", r)?;
            if r.0 <= 0.0 {
                return Err(InverseError::InvalidTask(
                    "radius bounds must be positive".into(),
                ));
            }
        }
        Ok(())
    }

    /// Largest |n| over the box corners (the n* of the admissible class).
    pub fn n_star(&self) -> f64 {
        let re = self.n_re.0.abs().max(self.n_re.1.abs());
        let im = self.n_im.0.abs().max(self.n_im.1.abs());
        (re * re + im * im).sqrt()
    }
}

/// A fully assembled inversion problem.
#[derive(Debug, Clone)]
pub struct InversionTask {
    pub data: FarFieldPattern,
    pub model: InverseModel,
    pub bounds: InverseBounds,
    pub noise_level: f64,
    pub multistart: usize,
    pub seed: u64,
}

impl InversionTask {
    pub fn validate(&self) -> Result<(), InverseError> {
        self.bounds.validate()?;
        let dim = self.data.config.dim;
        let unknowns = match &self.model {
            InverseModel::ConstantN { .. } => 2,
            InverseModel::BallAndN => dim.ambient() + 3,
            InverseModel::LayeredRadial { layers, .. } => 2 * layers,
        };
        if self.data.directions.len() < unknowns {
            return Err(InverseError::InvalidTask(format!(
                "{} data directions cannot constrain {} real unknowns",
                self.data.directions.len(),
                unknowns
            )));
        }
        match &self.model {
            InverseModel::BallAndN => {
                let c = self.bounds.center.as_ref().ok_or_else(|| {
                    InverseError::InvalidTask("BallAndN needs center bounds".into())
                })?;
                if c.len() != dim.ambient() {
                    return Err(InverseError::InvalidTask(format!(
                        "center bounds need {} axes, got {}",
                        dim.ambient(),
                        c.len()
                    )));
                }
                if self.bounds.radius.is_none() {
                    return Err(InverseError::InvalidTask(
                        "BallAndN needs radius bounds".into(),
                    ));
                }
            }
            InverseModel::LayeredRadial { layers, .. } => {
                if *layers == 0 {
                    return Err(InverseError::InvalidTask(
                        "layer count must be at least 1".into(),
                    ));
                }
            }
            InverseModel::ConstantN { radius, .. } => {
                if *radius <= 0.0 {
                    return Err(InverseError::InvalidTask("radius must be positive".into()));
                }
            }
        }
        Ok(())
    }
}

/// Recovered parameters per model class.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RecoveredModel {
    ConstantN { n: Complex64 },
    BallAndN {
        center: Vec<f64>,
        radius: f64,
        n: Complex64,
    },
    LayeredRadial { layers: Vec<Complex64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InversionResult {
    pub model: RecoveredModel,
    pub misfit: f64,
    pub iterations: usize,
    pub starts_tried: usize,
    pub best_start: usize,
    /// True iff the hypotheses of the underlying uniqueness statement were
    /// verified on the input (e.g. k below k0_effective for ConstantN).
    pub guarantee: bool,
    pub warnings: Vec<String>,
}

/// JSON wire format of an inversion task: the measurement config plus model,
/// bounds and optimizer knobs. The pattern itself arrives separately as CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDocument {
    pub config: TaskConfig,
    pub model: ModelDocument,
    pub bounds: BoundsDocument,
    #[serde(default)]
    pub noise_level: f64,
    #[serde(default)]
    pub multistart: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskConfig {
    pub dimension: Dimension,
    pub k: f64,
    pub d: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelDocument {
    ConstantN { center: Vec<f64>, radius: f64 },
    BallAndN,
    LayeredRadial {
        center: Vec<f64>,
        radius: f64,
        layers: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDocument {
    pub n_re: (f64, f64),
    pub n_im: (f64, f64),
    #[serde(default)]
    pub center: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    pub radius: Option<(f64, f64)>,
}

pub const DEFAULT_MULTISTART: usize = 8;
pub const DEFAULT_SEED: u64 = 0x5CA7_7E12;

impl TaskDocument {
    /// Combines the task description with a parsed far-field pattern.
    pub fn into_task(self, values_csv: &mut dyn std::io::BufRead) -> Result<InversionTask, InverseError> {
        let d = point_from_slice(&self.config.d, self.config.dimension)
            .map_err(InverseError::InvalidTask)?;
        let cfg = ScatteringConfig::new(self.config.k, d, self.config.dimension)?;
        let data = crate::forward::read_pattern_csv(values_csv, cfg)?;
        let model = match self.model {
            ModelDocument::ConstantN { center, radius } => InverseModel::ConstantN {
                center: point_from_slice(&center, cfg.dim).map_err(InverseError::InvalidTask)?,
                radius,
            },
            ModelDocument::BallAndN => InverseModel::BallAndN,
            ModelDocument::LayeredRadial {
                center,
                radius,
                layers,
            } => InverseModel::LayeredRadial {
                center: point_from_slice(&center, cfg.dim).map_err(InverseError::InvalidTask)?,
                radius,
                layers,
            },
        };
        let task = InversionTask {
            data,
            model,
            bounds: InverseBounds {
                n_re: self.bounds.n_re,
                n_im: self.bounds.n_im,
                center: self.bounds.center,
                radius: self.bounds.radius,
            },
            noise_level: self.noise_level,
            multistart: self.multistart.unwrap_or(DEFAULT_MULTISTART),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
        };
        task.validate()?;
        Ok(task)
    }
}

/// Dispatches on the model class.
pub fn invert(task: &InversionTask) -> Result<InversionResult, InverseError> {
    match task.model {
        InverseModel::ConstantN { .. } => invert_constant_n(task),
        InverseModel::BallAndN => invert_ball_and_n(task),
        InverseModel::LayeredRadial { .. } => invert_layered_profile(task),
    }
}

/// Residual vector between a predicted pattern and the measured values,
/// interleaving real and imaginary parts.
pub(crate) fn pattern_residual(predicted: &[Complex64], measured: &[Complex64]) -> Vec<f64> {
    let mut r = Vec::with_capacity(2 * measured.len());
    for (p, m) in predicted.iter().zip(measured) {
        r.push(p.re - m.re);
        r.push(p.im - m.im);
    }
    r
}
