//! Independent Schroedinger-type cross-check for the bound-state solvers.
//!
//! When one branch potential is constant (value `c`), the Schroedinger-like
//! component `u` of every bound solution satisfies a second-order equation of
//! the fixed form
//!
//! ```text
//! -u'' + [centrifugal(x) + (E - c) V(x)] u = (E - c) E u,
//! ```
//!
//! where `V` is the varying branch potential and the centrifugal term depends
//! on the geometry. Discretizing the left-hand side by plain three-point
//! finite differences gives a real symmetric tridiagonal matrix `T(E)` whose
//! eigenvalues `theta_n(E)` depend on the energy only through the scalar
//! factor `(E - c)`. A bound energy must therefore satisfy the
//! self-consistency condition
//!
//! ```text
//! g_n(E) = theta_n(E) - (E - c) E = 0,
//! ```
//!
//! with `n` the node count of the eigenvector. The roots are located by a
//! sign-change scan over the requested window followed by bisection. This
//! route shares no code with the shooting/staggered solvers (different
//! discretization, different eigenvalue technology), which is what makes it a
//! meaningful oracle.
//!
//! A naive fixed-point iteration (freeze `E` in `T`, diagonalize, repeat)
//! looks simpler but diverges for deep wells: the map has slope of order
//! `|<V>| / |2E - c|`, which easily exceeds one. The bracketed scan has no
//! such restriction.

use crate::linalg::SymTridiag;
use crate::potential::PotentialProfile;
use crate::{Result, SpinSymError};

/// Varying branch potential as it enters the oracle equation:
/// `V(x) = scale * profile(x) + offset`.
#[derive(Clone, Debug)]
pub struct EffectivePotential {
    pub profile: PotentialProfile,
    pub scale: f64,
    pub offset: f64,
}

impl EffectivePotential {
    pub fn plain(profile: PotentialProfile) -> Self {
        Self {
            profile,
            scale: 1.0,
            offset: 0.0,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.scale * self.profile.eval(r) + self.offset
    }
}

/// Discretization geometry of the oracle eigenproblem.
#[derive(Clone, Debug)]
pub enum OracleGeometry {
    /// Uniform sites on `[start, end]`, Dirichlet at both ends, centrifugal
    /// `l_eff (l_eff + 1) / r^2`.
    Radial3d { l_eff: i32 },
    /// Uniform sites on `[start, end]`, Dirichlet at both ends, no
    /// centrifugal term (flat geometry).
    AxialSites,
    /// Cell-centered cylindrical mesh `rho_j = (j + 1/2) delta` on
    /// `(0, end]`, natural (zero-flux) condition at the axis, Dirichlet at
    /// the rim, centrifugal `l^2 / rho^2`. The radial measure is absorbed by
    /// the similarity transform `w = sqrt(rho) u`, which keeps the matrix
    /// symmetric without changing node counts.
    Cylindrical { l: i32 },
}

/// The oracle eigenproblem: geometry, mesh, potential, constant branch value.
#[derive(Clone, Debug)]
pub struct OracleProblem {
    pub geometry: OracleGeometry,
    pub start: f64,
    pub end: f64,
    /// Number of mesh sites (cells for the cylindrical geometry).
    pub n: usize,
    pub potential: EffectivePotential,
    pub c_const: f64,
}

/// One self-consistent level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleLevel {
    pub nodes: usize,
    pub energy: f64,
}

const SCAN_POINTS: usize = 240;
const BISECT_TOL: f64 = 1e-11;

impl OracleProblem {
    pub fn radial3d(
        grid: crate::grid::RadialGrid,
        l_eff: i32,
        potential: EffectivePotential,
        c_const: f64,
    ) -> Self {
        Self {
            geometry: OracleGeometry::Radial3d { l_eff },
            start: grid.r_min,
            end: grid.r_max,
            n: grid.n,
            potential,
            c_const,
        }
    }

    pub fn axial(
        grid: crate::grid::AxialGrid,
        potential: EffectivePotential,
        c_const: f64,
    ) -> Self {
        Self {
            geometry: OracleGeometry::AxialSites,
            start: grid.z_min,
            end: grid.z_max,
            n: grid.n,
            potential,
            c_const,
        }
    }

    pub fn cylindrical(
        rho_max: f64,
        cells: usize,
        l: i32,
        potential: EffectivePotential,
        c_const: f64,
    ) -> Self {
        Self {
            geometry: OracleGeometry::Cylindrical { l },
            start: 0.0,
            end: rho_max,
            n: cells,
            potential,
            c_const,
        }
    }

    /// Same problem with every mesh interval halved.
    pub fn refine(&self) -> Self {
        let mut fine = self.clone();
        fine.n = match self.geometry {
            OracleGeometry::Cylindrical { .. } => 2 * self.n,
            _ => 2 * self.n - 1,
        };
        fine
    }

    /// Assemble `T(E)`.
    pub fn tridiag(&self, energy: f64) -> SymTridiag {
        let ec = energy - self.c_const;
        match self.geometry {
            OracleGeometry::Radial3d { l_eff } => {
                let delta = (self.end - self.start) / (self.n - 1) as f64;
                let inv2 = 1.0 / (delta * delta);
                let cf = (l_eff * (l_eff + 1)) as f64;
                let m = self.n - 2; // interior sites
                let mut diag = Vec::with_capacity(m);
                for i in 1..self.n - 1 {
                    let r = self.start + delta * i as f64;
                    diag.push(2.0 * inv2 + cf / (r * r) + ec * self.potential.eval(r));
                }
                SymTridiag::new(diag, vec![-inv2; m - 1])
            }
            OracleGeometry::AxialSites => {
                let delta = (self.end - self.start) / (self.n - 1) as f64;
                let inv2 = 1.0 / (delta * delta);
                let m = self.n - 2;
                let mut diag = Vec::with_capacity(m);
                for i in 1..self.n - 1 {
                    let z = self.start + delta * i as f64;
                    diag.push(2.0 * inv2 + ec * self.potential.eval(z));
                }
                SymTridiag::new(diag, vec![-inv2; m - 1])
            }
            OracleGeometry::Cylindrical { l } => {
                let cells = self.n;
                let delta = self.end / cells as f64;
                let inv2 = 1.0 / (delta * delta);
                let cf = (l * l) as f64;
                let rho = |j: f64| (j + 0.5) * delta;
                let mut diag = Vec::with_capacity(cells);
                let mut off = Vec::with_capacity(cells - 1);
                for j in 0..cells {
                    let rj = rho(j as f64);
                    // Face radii; the inner face of cell 0 sits on the axis
                    // and carries zero flux. The outer face of the last cell
                    // is the Dirichlet rim, half a spacing from the cell
                    // center, so its flux uses the half-distance gradient
                    // (factor 2); anything else shifts the wall by delta/2
                    // and degrades convergence to first order.
                    let r_in = j as f64 * delta;
                    let r_out = (j + 1) as f64 * delta;
                    let outer_weight = if j + 1 == cells { 2.0 * r_out } else { r_out };
                    diag.push(
                        (r_in + outer_weight) / rj * inv2
                            + cf / (rj * rj)
                            + ec * self.potential.eval(rj),
                    );
                    if j + 1 < cells {
                        let rnext = rho(j as f64 + 1.0);
                        off.push(-r_out * inv2 / (rj * rnext).sqrt());
                    }
                }
                SymTridiag::new(diag, off)
            }
        }
    }

    /// Self-consistency mismatch `g_n(E)` for a given node count.
    pub fn mismatch(&self, nodes: usize, energy: f64) -> f64 {
        let t = self.tridiag(energy);
        t.eigenvalue_k(nodes) - (energy - self.c_const) * energy
    }

    /// All self-consistent energies with the given node count inside the
    /// window, by sign-change scan plus bisection.
    pub fn levels_for_nodes(&self, nodes: usize, window: (f64, f64)) -> Result<Vec<f64>> {
        let (lo, hi) = ordered_window(window)?;
        let mut roots = Vec::new();
        let mut prev_e = lo;
        let mut prev_g = self.mismatch(nodes, lo);
        for k in 1..=SCAN_POINTS {
            let e = lo + (hi - lo) * k as f64 / SCAN_POINTS as f64;
            let g = self.mismatch(nodes, e);
            if prev_g == 0.0 {
                roots.push(prev_e);
            } else if prev_g * g < 0.0 {
                roots.push(self.bisect(nodes, prev_e, e, prev_g)?);
            }
            prev_e = e;
            prev_g = g;
        }
        Ok(roots)
    }

    fn bisect(&self, nodes: usize, mut lo: f64, mut hi: f64, g_lo: f64) -> Result<f64> {
        let sign_lo = g_lo.signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= BISECT_TOL * mid.abs().max(1.0) {
                return Ok(mid);
            }
            let g = self.mismatch(nodes, mid);
            if g == 0.0 {
                return Ok(mid);
            }
            if g.signum() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(SpinSymError::IterationDiverged {
            context: format!("bisection stalled for node count {nodes} in [{lo}, {hi}]"),
        })
    }

    /// Full spectrum in the window: every node count with at least one root,
    /// sorted by energy. Stops raising the node count once `theta_n` exceeds
    /// the target curve everywhere in the window (it is monotone in `n`).
    pub fn spectrum(&self, window: (f64, f64)) -> Result<Vec<OracleLevel>> {
        let (lo, hi) = ordered_window(window)?;
        let dim = self.tridiag(0.5 * (lo + hi)).n();
        let mut out = Vec::new();
        for nodes in 0..dim.min(64) {
            let mut any_below = false;
            for k in 0..=16 {
                let e = lo + (hi - lo) * k as f64 / 16.0;
                if self.mismatch(nodes, e) <= 0.0 {
                    any_below = true;
                    break;
                }
            }
            if !any_below {
                break;
            }
            for e in self.levels_for_nodes(nodes, (lo, hi))? {
                out.push(OracleLevel { nodes, energy: e });
            }
        }
        out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Ok(out)
    }

    /// Spectrum with one Richardson extrapolation step, `(4 E_fine -
    /// E_coarse) / 3` (the discretization error is O(delta^2)). The coarse
    /// mesh is scanned exhaustively; each root is then re-located on the
    /// half-step mesh by a bracketed search around its coarse position —
    /// halving the step moves a root by O(delta^2), far less than the root
    /// spacing, so the nearest fine root is the same continuum level and an
    /// exhaustive rescan would only repeat the work. Levels that resolve on
    /// only one mesh (window-edge stragglers, or two seeds collapsing onto
    /// one fine root) are dropped.
    pub fn spectrum_richardson(&self, window: (f64, f64)) -> Result<Vec<OracleLevel>> {
        let (lo_w, hi_w) = ordered_window(window)?;
        let coarse = self.spectrum(window)?;
        let fine = self.refine();
        let mut out = Vec::new();
        let node_counts: Vec<usize> = {
            let mut n: Vec<usize> = coarse.iter().map(|l| l.nodes).collect();
            n.sort_unstable();
            n.dedup();
            n
        };
        for nodes in node_counts {
            let mut paired: Vec<(f64, f64)> = Vec::new(); // (coarse, fine)
            for c in coarse.iter().filter(|l| l.nodes == nodes) {
                if let Some(root) = fine.local_root(nodes, c.energy, (lo_w, hi_w))? {
                    paired.push((c.energy, root));
                }
            }
            // Two coarse seeds landing on the same fine root mean one level
            // exists on the coarse mesh only: keep the closer pairing.
            paired.sort_by(|a, b| {
                a.1.total_cmp(&b.1)
                    .then((a.0 - a.1).abs().total_cmp(&(b.0 - b.1).abs()))
            });
            paired.dedup_by(|b, a| (a.1 - b.1).abs() <= 1e-9 * (1.0 + a.1.abs()));
            for (c, f) in paired {
                out.push(OracleLevel {
                    nodes,
                    energy: (4.0 * f - c) / 3.0,
                });
            }
        }
        out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Ok(out)
    }

    /// Root of `g_nodes` nearest `seed`, searched in geometrically growing
    /// brackets clamped to `window`. `None` when no sign change appears up to
    /// the largest bracket: the level has no counterpart on this mesh inside
    /// the window.
    fn local_root(&self, nodes: usize, seed: f64, window: (f64, f64)) -> Result<Option<f64>> {
        let (lo_w, hi_w) = window;
        let scale = 1.0 + seed.abs();
        let mut half = 1e-4 * scale;
        let max_half = 0.05 * scale;
        loop {
            let lo = (seed - half).max(lo_w);
            let hi = (seed + half).min(hi_w);
            if hi > lo {
                let g_lo = self.mismatch(nodes, lo);
                if g_lo == 0.0 {
                    return Ok(Some(lo));
                }
                let g_hi = self.mismatch(nodes, hi);
                if g_hi == 0.0 {
                    return Ok(Some(hi));
                }
                if g_lo * g_hi < 0.0 {
                    return self.bisect(nodes, lo, hi, g_lo).map(Some);
                }
            }
            if half >= max_half || (seed - half <= lo_w && seed + half >= hi_w) {
                return Ok(None);
            }
            half *= 4.0;
        }
    }
}

fn ordered_window(window: (f64, f64)) -> Result<(f64, f64)> {
    if !window.0.is_finite() || !window.1.is_finite() || window.1 <= window.0 {
        return Err(SpinSymError::InvalidParameter {
            reason: format!(
                "energy window ({}, {}) is not an increasing finite pair",
                window.0, window.1
            ),
        });
    }
    Ok(window)
}
