//! Uniform meshes for the radial and axial solvers.

use serde::{Deserialize, Serialize};

use crate::{Result, SpinSymError};

/// Uniform radial mesh with `n` points from `r_min` (strictly positive, just
/// off the coordinate singularity) to `r_max` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !r_min.is_finite() || r_min <= 0.0 {
            return Err(SpinSymError::InvalidGrid {
                reason: format!("r_min must be positive, got {r_min}"),
            });
        }
        if !r_max.is_finite() || r_max <= r_min {
            return Err(SpinSymError::InvalidGrid {
                reason: format!("r_max ({r_max}) must exceed r_min ({r_min})"),
            });
        }
        if n < 16 {
            return Err(SpinSymError::InvalidGrid {
                reason: format!("need at least 16 radial points, got {n}"),
            });
        }
        Ok(Self { r_min, r_max, n })
    }

    pub fn step(&self) -> f64 {
        (self.r_max - self.r_min) / (self.n - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.r_min + self.step() * i as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Same span with every interval halved (for convergence studies).
    pub fn refined(&self) -> Self {
        Self {
            r_min: self.r_min,
            r_max: self.r_max,
            n: 2 * self.n - 1,
        }
    }
}

/// Uniform axial mesh with `n` sites from `z_min` to `z_max` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxialGrid {
    pub z_min: f64,
    pub z_max: f64,
    pub n: usize,
}

impl AxialGrid {
    pub fn new(z_min: f64, z_max: f64, n: usize) -> Result<Self> {
        if !z_min.is_finite() || !z_max.is_finite() || z_max <= z_min {
            return Err(SpinSymError::InvalidGrid {
                reason: format!("z_max ({z_max}) must exceed z_min ({z_min})"),
            });
        }
        if n < 16 {
            return Err(SpinSymError::InvalidGrid {
                reason: format!("need at least 16 axial sites, got {n}"),
            });
        }
        Ok(Self { z_min, z_max, n })
    }

    pub fn step(&self) -> f64 {
        (self.z_max - self.z_min) / (self.n - 1) as f64
    }

    /// Integer site `j` (0-based).
    pub fn site(&self, j: usize) -> f64 {
        self.z_min + self.step() * j as f64
    }

    /// Half site between integer sites `j` and `j + 1`.
    pub fn half_site(&self, j: usize) -> f64 {
        self.z_min + self.step() * (j as f64 + 0.5)
    }

    pub fn refined(&self) -> Self {
        Self {
            z_min: self.z_min,
            z_max: self.z_max,
            n: 2 * self.n - 1,
        }
    }
}
