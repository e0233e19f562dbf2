//! Points, directions and the ambient dimension.
//!
//! Points are stored as `[f64; 3]` regardless of dimension; 2D problems keep
//! the third component at zero. All dot products run over the full triple, so
//! 2D and 3D code paths share the same arithmetic.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Ambient dimension of the scattering problem. Only 2 and 3 are meaningful
/// for the modal series, so anything else is rejected at parse time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Two,
    Three,
}

impl Dimension {
    pub fn ambient(self) -> usize {
        match self {
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.ambient() as u8)
    }
}

impl<'de> Deserialize<'de> for Dimension {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match u8::deserialize(d)? {
            2 => Ok(Dimension::Two),
            3 => Ok(Dimension::Three),
            other => Err(D::Error::custom(format!(
                "dimension must be 2 or 3, got {other}"
            ))),
        }
    }
}

pub type Point = [f64; 3];

pub fn dot(a: &Point, b: &Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: &Point) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &Point, b: &Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add(a: &Point, b: &Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scale(a: &Point, s: f64) -> Point {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Converts an N-component coordinate list into a padded point. Errors if the
/// length disagrees with the dimension.
pub fn point_from_slice(coords: &[f64], dim: Dimension) -> Result<Point, String> {
    if coords.len() != dim.ambient() {
        return Err(format!(
            "expected {} coordinates, got {}",
            dim.ambient(),
            coords.len()
        ));
    }
    let mut p = [0.0; 3];
    p[..coords.len()].copy_from_slice(coords);
    Ok(p)
}

/// The first `dim` components, for serialization.
pub fn point_to_vec(p: &Point, dim: Dimension) -> Vec<f64> {
    p[..dim.ambient()].to_vec()
}
