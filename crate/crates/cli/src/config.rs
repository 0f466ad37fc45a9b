//! On-disk run configuration.
//!
//! One TOML file drives every subcommand: the algebra sweep plus one solver
//! scenario per dimension, with `dimension` selecting which solver the
//! `spectrum` / `doublets` / `scan-breaking` commands run. Every field has a
//! documented default, so an empty file — or no `--config` at all — performs
//! the stock demonstration runs. The full structure round-trips losslessly
//! through TOML; unknown keys are rejected rather than ignored.

use serde::{Deserialize, Serialize};
use spinsym::axial1d::Axial1DProblem;
use spinsym::grid::{AxialGrid, RadialGrid};
use spinsym::planar2d::{Planar2DProblem, TensorBranch2D};
use spinsym::potential::PotentialProfile;
use spinsym::radial3d::SymmetryScenario;
use spinsym::report::Dimension;
use spinsym::symmetry::Branch;

/// Root of the run configuration file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Which solver the `spectrum`, `doublets` and `scan-breaking` commands
    /// drive: `"3d"`, `"1d"` or `"2d"`.
    pub dimension: Dimension,
    /// Seed for the randomized plane-wave sweep (`verify-algebra`).
    pub seed: u64,
    /// Output directory for data files; `--out` overrides it.
    pub out_dir: String,
    pub algebra: AlgebraConfig,
    pub radial3d: Radial3dConfig,
    pub axial1d: Axial1dConfig,
    pub planar2d: Planar2dConfig,
    pub breaking: BreakingConfig,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dimension: Dimension::Radial3d,
            seed: 42,
            out_dir: "out".into(),
            algebra: AlgebraConfig::default(),
            radial3d: Radial3dConfig::default(),
            axial1d: Axial1dConfig::default(),
            planar2d: Planar2dConfig::default(),
            breaking: BreakingConfig::default(),
            tolerances: Tolerances::default(),
        }
    }
}

/// Randomized verification of the exact spinor algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgebraConfig {
    /// Number of random plane-wave contexts in the sweep.
    pub contexts: usize,
    /// Residual bound for every commutator / SU(2) / projector identity.
    pub tolerance: f64,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        Self {
            contexts: 100,
            tolerance: 1e-12,
        }
    }
}

/// The 3D coupled-channel scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Radial3dConfig {
    pub scenario: SymmetryScenario,
    /// Relativistic angular channels to solve. The default covers the two
    /// doublets (1, -2) and (2, -3) of the spin branch.
    pub kappa_set: Vec<i32>,
    pub grid: RadialGrid,
    /// Energy window scanned for bound states (inside the asymptotic gap).
    pub window: (f64, f64),
}

impl Default for Radial3dConfig {
    fn default() -> Self {
        Self {
            scenario: SymmetryScenario::woods_saxon_default(Branch::Spin),
            kappa_set: vec![1, -2, 2, -3],
            grid: RadialGrid::new(1e-6, 20.0, 4000).expect("default grid"),
            window: (-1.75, -0.35),
        }
    }
}

/// The 1D staggered-chain scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Axial1dConfig {
    pub problem: Axial1DProblem,
    pub window: (f64, f64),
}

impl Default for Axial1dConfig {
    fn default() -> Self {
        Self {
            problem: Axial1DProblem::square_well_default(),
            window: (-0.9, 0.9),
        }
    }
}

/// The 2D radial scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Planar2dConfig {
    pub problem: Planar2DProblem,
    /// Doubled angular quantum numbers 2 m_j (odd integers).
    pub mj_twice_set: Vec<i32>,
    pub window: (f64, f64),
}

impl Default for Planar2dConfig {
    fn default() -> Self {
        Self {
            problem: Planar2DProblem::woods_saxon_default(),
            mj_twice_set: vec![1, -1, 3, -3, 5, -5],
            window: (-0.85, 0.85),
        }
    }
}

/// Parameters of the `scan-breaking` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BreakingConfig {
    /// Deformation amplitudes, strictly increasing and positive.
    pub amplitudes: Vec<f64>,
    /// 3D channel whose doublet is tracked while the symmetry is lifted.
    pub kappa: i32,
    /// Shape of the 3D deformation; the active well profile when omitted.
    pub profile: Option<PotentialProfile>,
}

impl Default for BreakingConfig {
    fn default() -> Self {
        Self {
            amplitudes: vec![0.05, 0.1, 0.2],
            kappa: 1,
            profile: None,
        }
    }
}

/// Pass/fail thresholds applied by the commands. Defaults reflect what the
/// default scenarios achieve with a healthy margin; they are checks on the
/// implementation, not knobs to silence failures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Partner-level splitting bound for exact-symmetry 3D and 1D doublets.
    pub doublet: f64,
    /// Splitting bound for the 2D angular-channel doublets, limited by the
    /// per-channel integrator truncation rather than round-off.
    pub doublet_planar: f64,
    /// Required minimum splitting at the largest breaking amplitude.
    pub breaking_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            doublet: 1e-8,
            doublet_planar: 1e-8,
            breaking_floor: 1e-3,
        }
    }
}

impl RunConfig {
    /// Structural validation with field-path error messages. Anything caught
    /// here is a configuration error (exit code 2), as opposed to a solver
    /// failure at run time.
    pub fn validate(&self) -> Result<(), String> {
        if self.algebra.contexts == 0 {
            return Err("algebra.contexts: must be at least 1".into());
        }
        positive(self.algebra.tolerance, "algebra.tolerance")?;
        positive(self.tolerances.doublet, "tolerances.doublet")?;
        positive(self.tolerances.doublet_planar, "tolerances.doublet_planar")?;
        positive(self.tolerances.breaking_floor, "tolerances.breaking_floor")?;
        self.validate_radial3d()?;
        self.validate_axial1d()?;
        self.validate_planar2d()?;
        self.validate_breaking()
    }

    fn validate_radial3d(&self) -> Result<(), String> {
        let c = &self.radial3d;
        c.scenario
            .active
            .validate()
            .map_err(|e| format!("radial3d.scenario.active: {e}"))?;
        if let Some(b) = &c.scenario.breaking {
            b.profile
                .validate()
                .map_err(|e| format!("radial3d.scenario.breaking.profile: {e}"))?;
            if !b.amplitude.is_finite() {
                return Err("radial3d.scenario.breaking.amplitude: must be finite".into());
            }
        }
        // Grids deserialize field-by-field, so re-run the constructor checks.
        RadialGrid::new(c.grid.r_min, c.grid.r_max, c.grid.n)
            .map_err(|e| format!("radial3d.grid: {e}"))?;
        window_ok(c.window, "radial3d.window")?;
        if c.kappa_set.is_empty() {
            return Err("radial3d.kappa_set: must name at least one channel".into());
        }
        if c.kappa_set.contains(&0) {
            return Err(
                "radial3d.kappa_set: kappa = 0 does not label a relativistic angular channel; \
                 use nonzero integers"
                    .into(),
            );
        }
        Ok(())
    }

    fn validate_axial1d(&self) -> Result<(), String> {
        let c = &self.axial1d;
        c.problem
            .v_active
            .validate()
            .map_err(|e| format!("axial1d.problem.v_active: {e}"))?;
        AxialGrid::new(c.problem.grid.z_min, c.problem.grid.z_max, c.problem.grid.n)
            .map_err(|e| format!("axial1d.problem.grid: {e}"))?;
        if let Some(a) = c.problem.breaking_amplitude {
            if !a.is_finite() {
                return Err("axial1d.problem.breaking_amplitude: must be finite".into());
            }
        }
        window_ok(c.window, "axial1d.window")
    }

    fn validate_planar2d(&self) -> Result<(), String> {
        let c = &self.planar2d;
        c.problem
            .v_2v
            .validate()
            .map_err(|e| format!("planar2d.problem.v_2v: {e}"))?;
        if let TensorBranch2D::Broken { v_z } = &c.problem.tensor {
            v_z.validate()
                .map_err(|e| format!("planar2d.problem.tensor.v_z: {e}"))?;
        }
        RadialGrid::new(c.problem.grid.r_min, c.problem.grid.r_max, c.problem.grid.n)
            .map_err(|e| format!("planar2d.problem.grid: {e}"))?;
        window_ok(c.window, "planar2d.window")?;
        if c.mj_twice_set.is_empty() {
            return Err("planar2d.mj_twice_set: must name at least one channel".into());
        }
        if let Some(bad) = c.mj_twice_set.iter().find(|m| *m % 2 == 0) {
            return Err(format!(
                "planar2d.mj_twice_set: {bad} is even; entries are doubled half-integral \
                 angular momenta and must be odd"
            ));
        }
        Ok(())
    }

    fn validate_breaking(&self) -> Result<(), String> {
        let c = &self.breaking;
        if c.amplitudes.is_empty() {
            return Err("breaking.amplitudes: must contain at least one amplitude".into());
        }
        for a in &c.amplitudes {
            if !(a.is_finite() && *a > 0.0) {
                return Err(format!(
                    "breaking.amplitudes: {a} is not a positive finite value"
                ));
            }
        }
        if c.amplitudes.windows(2).any(|w| w[1] <= w[0]) {
            return Err("breaking.amplitudes: must be strictly increasing".into());
        }
        if c.kappa == 0 {
            return Err(
                "breaking.kappa: kappa = 0 does not label a relativistic angular channel".into(),
            );
        }
        if let Some(p) = &c.profile {
            p.validate().map_err(|e| format!("breaking.profile: {e}"))?;
        }
        Ok(())
    }
}

fn positive(value: f64, field: &str) -> Result<(), String> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(format!(
            "{field}: must be a positive finite value, got {value}"
        ))
    }
}

fn window_ok(window: (f64, f64), field: &str) -> Result<(), String> {
    if window.0.is_finite() && window.1.is_finite() && window.0 < window.1 {
        Ok(())
    } else {
        Err(format!(
            "{field}: ({}, {}) is not an increasing finite energy window",
            window.0, window.1
        ))
    }
}
