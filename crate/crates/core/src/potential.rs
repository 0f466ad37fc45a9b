//! Radial potential profiles shared by all solvers.
//!
//! Every profile is a function of the distance from the origin; the 1D chain
//! evaluates it at `|z|`, the 2D and 3D solvers at the radius. Depths are
//! signed (negative = attractive well).

use serde::{Deserialize, Serialize};

use crate::{Result, SpinSymError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialProfile {
    /// `depth / (1 + exp((r - radius) / diffuseness))`.
    WoodsSaxon {
        depth: f64,
        radius: f64,
        diffuseness: f64,
    },
    /// `depth` inside `radius`, zero outside.
    SquareWell { depth: f64, radius: f64 },
    /// `depth * exp(-(r / width)^2)`.
    Gaussian { depth: f64, width: f64 },
    /// `strength * r^2`.
    Harmonic { strength: f64 },
    /// The same value everywhere; used for flat branches and free-particle
    /// checks.
    Constant { value: f64 },
}

impl PotentialProfile {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(SpinSymError::InvalidParameter { reason });
        match *self {
            PotentialProfile::WoodsSaxon {
                radius,
                diffuseness,
                ..
            } => {
                if radius <= 0.0 {
                    return bad(format!("Woods-Saxon radius must be positive, got {radius}"));
                }
                if diffuseness <= 0.0 {
                    return bad(format!(
                        "Woods-Saxon diffuseness must be positive, got {diffuseness}"
                    ));
                }
            }
            PotentialProfile::SquareWell { radius, .. } => {
                if radius <= 0.0 {
                    return bad(format!("square-well radius must be positive, got {radius}"));
                }
            }
            PotentialProfile::Gaussian { width, .. } => {
                if width <= 0.0 {
                    return bad(format!("Gaussian width must be positive, got {width}"));
                }
            }
            PotentialProfile::Harmonic { .. } | PotentialProfile::Constant { .. } => {}
        }
        Ok(())
    }

    pub fn eval(&self, r: f64) -> f64 {
        let r = r.abs();
        match *self {
            PotentialProfile::WoodsSaxon {
                depth,
                radius,
                diffuseness,
            } => depth / (1.0 + ((r - radius) / diffuseness).exp()),
            PotentialProfile::SquareWell { depth, radius } => {
                if r < radius {
                    depth
                } else {
                    0.0
                }
            }
            PotentialProfile::Gaussian { depth, width } => {
                let x = r / width;
                depth * (-x * x).exp()
            }
            PotentialProfile::Harmonic { strength } => strength * r * r,
            PotentialProfile::Constant { value } => value,
        }
    }

    /// Radial derivative. For the square well the distributional spike at the
    /// edge is not representable; callers needing derivatives should use a
    /// smooth profile (see [`PotentialProfile::is_smooth`]).
    pub fn deriv(&self, r: f64) -> f64 {
        let r = r.abs();
        match *self {
            PotentialProfile::WoodsSaxon {
                depth,
                radius,
                diffuseness,
            } => {
                let e = ((r - radius) / diffuseness).exp();
                -depth * e / (diffuseness * (1.0 + e) * (1.0 + e))
            }
            PotentialProfile::SquareWell { .. } => 0.0,
            PotentialProfile::Gaussian { depth, width } => {
                let x = r / width;
                depth * (-x * x).exp() * (-2.0 * r / (width * width))
            }
            PotentialProfile::Harmonic { strength } => 2.0 * strength * r,
            PotentialProfile::Constant { .. } => 0.0,
        }
    }

    pub fn is_smooth(&self) -> bool {
        !matches!(self, PotentialProfile::SquareWell { .. })
    }

    /// Value far outside the well (the asymptotic plateau). Unbounded
    /// profiles (harmonic) have none.
    pub fn asymptotic_value(&self) -> Option<f64> {
        match self {
            PotentialProfile::Harmonic { strength } if *strength != 0.0 => None,
            PotentialProfile::Constant { value } => Some(*value),
            _ => Some(0.0),
        }
    }

    /// A profile scaled by `factor` (used by the symmetry-breaking scans).
    pub fn scaled(&self, factor: f64) -> Self {
        match *self {
            PotentialProfile::WoodsSaxon {
                depth,
                radius,
                diffuseness,
            } => PotentialProfile::WoodsSaxon {
                depth: factor * depth,
                radius,
                diffuseness,
            },
            PotentialProfile::SquareWell { depth, radius } => PotentialProfile::SquareWell {
                depth: factor * depth,
                radius,
            },
            PotentialProfile::Gaussian { depth, width } => PotentialProfile::Gaussian {
                depth: factor * depth,
                width,
            },
            PotentialProfile::Harmonic { strength } => PotentialProfile::Harmonic {
                strength: factor * strength,
            },
            PotentialProfile::Constant { value } => PotentialProfile::Constant {
                value: factor * value,
            },
        }
    }
}
