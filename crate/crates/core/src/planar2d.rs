//! Circularly symmetric 2D Dirac problem with a mass-like branch.
//!
//! The planar Hamiltonian `H = alpha_1 p_x + alpha_2 p_y + V_2v + V_z alpha_3`
//! carries no `p_z` and no `beta`, so `gamma^5 = Sigma_3 alpha_3` commutes
//! with it exactly — that is the residual U(1) of this geometry (`Sigma_3`
//! alone is conserved only inside the `alpha_3`-projected subspaces; its raw
//! commutator with the kinetic term is `-2i (p_x alpha_2 - p_y alpha_1)`).
//! In a chiral sector the four-spinor problem collapses to the 2-component
//! graphene-like Hamiltonian `h = sigma . p_perp + sigma_3 V_z + V_2v`, and
//! the two sectors are antiunitarily equivalent (`sigma_1 K`), so solving one
//! sector captures the whole spectrum.
//!
//! Rotational invariance conserves `j = L_3 + sigma_3 / 2`. Writing the
//! sector spinor as `(u(rho) e^{i m phi}, i v(rho) e^{i (m+1) phi})` with
//! `m = m_j - 1/2` gives the real first-order radial system
//!
//! ```text
//! u' =  (m / rho) u       - (E - V_minus) v
//! v' = -((m+1) / rho) v   + (E - V_plus)  u
//! ```
//!
//! with `V_pm = V_2v +- V_z`. When one branch is constant the other
//! component obeys a closed second-order equation with centrifugal index
//! `m^2` (constant `V_minus`) or `(m+1)^2` (constant `V_plus`), which is what
//! the disc-geometry oracle discretizes independently. The centrifugal index
//! is even in `m` (resp. `m+1`), producing exact two-fold degeneracies
//! between angular channels — the planar analog of the spin doublet.

use serde::{Deserialize, Serialize};

use crate::grid::RadialGrid;
use crate::oracle::{EffectivePotential, OracleLevel, OracleProblem};
use crate::potential::PotentialProfile;
use crate::shooting::{ChannelProblem, ShootingEngine};
use crate::spinor::SpinorMatrix;
use crate::symmetry::Branch;
use crate::{Result, SpinSymError};

/// How the mass-like branch `V_z` tracks the vector branch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum TensorBranch2D {
    /// `V_z = V_2v + C`: `V_minus = -C` constant (spin-type relation).
    Plus,
    /// `V_z = -V_2v + C`: `V_plus = +C` constant (pseudospin-type relation).
    Minus,
    /// Independent mass profile; no exact relation, no oracle, no doublets.
    Broken { v_z: PotentialProfile },
}

/// The planar problem: vector profile, mass-branch relation, disc mesh.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Planar2DProblem {
    pub v_2v: PotentialProfile,
    pub tensor: TensorBranch2D,
    pub c_const: f64,
    pub grid: RadialGrid,
}

impl Planar2DProblem {
    pub fn new(
        v_2v: PotentialProfile,
        tensor: TensorBranch2D,
        c_const: f64,
        grid: RadialGrid,
    ) -> Result<Self> {
        v_2v.validate()?;
        if let TensorBranch2D::Broken { v_z } = &tensor {
            v_z.validate()?;
        }
        Ok(Self {
            v_2v,
            tensor,
            c_const,
            grid,
        })
    }

    /// Default planar demonstration: a smooth flat-bottomed dot on the vector
    /// branch with `V_z = V_2v + 1`, which opens the asymptotic gap (-1, 1).
    pub fn woods_saxon_default() -> Self {
        Self {
            v_2v: PotentialProfile::WoodsSaxon {
                depth: -4.0,
                radius: 2.0,
                diffuseness: 0.25,
            },
            tensor: TensorBranch2D::Plus,
            c_const: 1.0,
            grid: RadialGrid::new(1e-6, 30.0, 3000).unwrap(),
        }
    }

    pub fn branch(&self) -> Option<Branch> {
        match self.tensor {
            TensorBranch2D::Plus => Some(Branch::Spin),
            TensorBranch2D::Minus => Some(Branch::Pseudospin),
            TensorBranch2D::Broken { .. } => None,
        }
    }

    pub fn v_z(&self, rho: f64) -> f64 {
        match &self.tensor {
            TensorBranch2D::Plus => self.v_2v.eval(rho) + self.c_const,
            TensorBranch2D::Minus => -self.v_2v.eval(rho) + self.c_const,
            TensorBranch2D::Broken { v_z } => v_z.eval(rho),
        }
    }

    pub fn v_plus(&self, rho: f64) -> f64 {
        self.v_2v.eval(rho) + self.v_z(rho)
    }

    pub fn v_minus(&self, rho: f64) -> f64 {
        self.v_2v.eval(rho) - self.v_z(rho)
    }

    /// Orbital index `m` of the upper sector component for a channel label
    /// `2 m_j` (must be odd).
    pub fn orbital_index(&self, mj_twice: i32) -> Result<i32> {
        if mj_twice.rem_euclid(2) != 1 {
            return Err(SpinSymError::InvalidParameter {
                reason: format!("2 m_j must be an odd integer, got {mj_twice}"),
            });
        }
        Ok((mj_twice - 1) / 2)
    }

    /// Centrifugal index of the closed second-order equation for this
    /// channel, valid only under an exact relation.
    pub fn oracle_l(&self, mj_twice: i32) -> Result<i32> {
        let m = self.orbital_index(mj_twice)?;
        match self.tensor {
            TensorBranch2D::Plus => Ok(m.abs()),
            TensorBranch2D::Minus => Ok((m + 1).abs()),
            TensorBranch2D::Broken { .. } => Err(SpinSymError::InvalidParameter {
                reason: "a broken relation admits no closed second-order reduction".into(),
            }),
        }
    }

    /// The angular channel degenerate with `mj_twice` (same centrifugal
    /// index), or `None` for the self-conjugate channel.
    pub fn doublet_partner(&self, mj_twice: i32) -> Option<i32> {
        let partner = match self.tensor {
            TensorBranch2D::Plus => 2 - mj_twice,
            TensorBranch2D::Minus => -2 - mj_twice,
            TensorBranch2D::Broken { .. } => return None,
        };
        (partner != mj_twice).then_some(partner)
    }

    /// Independent disc-geometry eigenproblem for this channel.
    pub fn oracle(&self, mj_twice: i32) -> Result<OracleProblem> {
        let l = self.oracle_l(mj_twice)?;
        let (offset, c_oracle) = match self.tensor {
            TensorBranch2D::Plus => (self.c_const, -self.c_const),
            TensorBranch2D::Minus => (-self.c_const, self.c_const),
            TensorBranch2D::Broken { .. } => unreachable!("oracle_l rejected broken"),
        };
        Ok(OracleProblem::cylindrical(
            self.grid.r_max,
            self.grid.n,
            l,
            EffectivePotential {
                profile: self.v_2v.clone(),
                scale: 2.0,
                offset,
            },
            c_oracle,
        ))
    }
}

/// Radial system of one angular channel as seen by the shooting engine.
struct PlanarChannel<'a> {
    problem: &'a Planar2DProblem,
    m: i32,
}

impl ChannelProblem for PlanarChannel<'_> {
    fn coefficients(&self, energy: f64, rho: f64) -> [[f64; 2]; 2] {
        let m = self.m as f64;
        [
            [m / rho, -(energy - self.problem.v_minus(rho))],
            [energy - self.problem.v_plus(rho), -(m + 1.0) / rho],
        ]
    }

    /// Leading regular series: `u ~ rho^|m|` dominates for `m >= 0`,
    /// `v ~ rho^|m+1|` for `m <= -1`; the subleading coefficient follows from
    /// the indicial recursion.
    fn start_values(&self, energy: f64, rho0: f64) -> [f64; 2] {
        let m = self.m as f64;
        if self.m >= 0 {
            let dp = energy - self.problem.v_plus(rho0);
            [1.0, rho0 * dp / (2.0 * m + 2.0)]
        } else {
            let dm = energy - self.problem.v_minus(rho0);
            [rho0 * dm / (2.0 * m), 1.0]
        }
    }

    /// Exact decaying eigendirection of the frozen coefficient matrix at the
    /// rim. Smooth in the energy, so the matching defect cannot pick up
    /// spurious kinks from a branch switch between asymptotic forms.
    fn outer_values(&self, energy: f64, rho_end: f64) -> Option<[f64; 2]> {
        let dm = energy - self.problem.v_minus(rho_end);
        let dp = energy - self.problem.v_plus(rho_end);
        let k2 = -dm * dp;
        if k2 <= 0.0 {
            return None;
        }
        let nu = (2.0 * self.m as f64 + 1.0) / (2.0 * rho_end);
        let s = (k2 + nu * nu).sqrt();
        // (M - mu I) y = 0 with mu = -1/(2 rho) - s; the second entry
        // nu + s is bounded away from zero, so this form is well conditioned.
        let y = [dm, nu + s];
        let norm = (y[0] * y[0] + y[1] * y[1]).sqrt();
        Some([y[0] / norm, y[1] / norm])
    }

    fn effective_k2(&self, energy: f64, rho: f64) -> f64 {
        let dm = energy - self.problem.v_minus(rho);
        let dp = energy - self.problem.v_plus(rho);
        let nu = (2.0 * self.m as f64 + 1.0) / (2.0 * rho);
        dm * dp - nu * nu
    }

    fn node_component(&self) -> usize {
        match self.problem.tensor {
            TensorBranch2D::Minus => 1,
            _ => 0,
        }
    }
}

/// One planar bound level.
#[derive(Clone, Debug)]
pub struct PlanarSolution {
    pub mj_twice: i32,
    /// Orbital index of the upper component (`m = m_j - 1/2`).
    pub orbital: i32,
    /// Interior nodes of the relation-dominant component.
    pub nodes: usize,
    pub energy: f64,
    pub grid: RadialGrid,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Bound states of a single angular channel, sorted by node count.
pub fn solve_channel(
    problem: &Planar2DProblem,
    mj_twice: i32,
    window: (f64, f64),
) -> Result<Vec<PlanarSolution>> {
    let m = problem.orbital_index(mj_twice)?;
    let mut engine = ShootingEngine::new(problem.grid);
    engine.substeps = 2;
    let channel = PlanarChannel { problem, m };
    let mut states: Vec<PlanarSolution> = engine
        .solve(&channel, window)?
        .into_iter()
        .map(|s| PlanarSolution {
            mj_twice,
            orbital: m,
            nodes: s.nodes,
            energy: s.energy,
            grid: problem.grid,
            u: s.wave.iter().map(|y| y[0]).collect(),
            v: s.wave.iter().map(|y| y[1]).collect(),
        })
        .collect();
    states.sort_by(|a, b| a.nodes.cmp(&b.nodes).then(a.energy.total_cmp(&b.energy)));
    Ok(states)
}

/// Bound states over a set of angular channels, sorted by energy. An empty
/// result (e.g. a pure vector well, where no exterior decay direction exists
/// at any gap energy) is a genuine absence, not an error.
pub fn solve_2d_radial(
    problem: &Planar2DProblem,
    mj_twice_set: &[i32],
    window: (f64, f64),
) -> Result<Vec<PlanarSolution>> {
    let mut states = Vec::new();
    for &mj in mj_twice_set {
        states.extend(solve_channel(problem, mj, window)?);
    }
    states.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.mj_twice.cmp(&b.mj_twice))
    });
    Ok(states)
}

/// Independent disc-geometry spectrum for one channel (Richardson-refined).
pub fn schrodinger_oracle_2d(
    problem: &Planar2DProblem,
    mj_twice: i32,
    window: (f64, f64),
) -> Result<Vec<OracleLevel>> {
    problem.oracle(mj_twice)?.spectrum_richardson(window)
}

/// One matched planar doublet: the same node count in the `mj_twice` channel
/// and in its equal-centrifugal-index partner channel.
#[derive(Clone, Copy, Debug)]
pub struct PlanarDoubletPair {
    pub mj_twice: i32,
    pub partner_mj_twice: i32,
    pub nodes: usize,
    pub energy: f64,
    pub partner_energy: f64,
}

impl PlanarDoubletPair {
    pub fn splitting(&self) -> f64 {
        (self.energy - self.partner_energy).abs()
    }
}

/// Solve a channel and its partner and pair the levels by node count; levels
/// without a same-node partner (window-edge stragglers) are dropped.
pub fn planar_doublet_pairs(
    problem: &Planar2DProblem,
    mj_twice: i32,
    window: (f64, f64),
) -> Result<Vec<PlanarDoubletPair>> {
    let partner =
        problem
            .doublet_partner(mj_twice)
            .ok_or_else(|| SpinSymError::InvalidParameter {
                reason: format!(
                    "2 m_j = {mj_twice} labels a self-conjugate channel with no partner"
                ),
            })?;
    let own = solve_channel(problem, mj_twice, window)?;
    let other = solve_channel(problem, partner, window)?;
    let mut pairs = Vec::new();
    for s in &own {
        if let Some(p) = other.iter().find(|p| p.nodes == s.nodes) {
            pairs.push(PlanarDoubletPair {
                mj_twice,
                partner_mj_twice: partner,
                nodes: s.nodes,
                energy: s.energy,
                partner_energy: p.energy,
            });
        }
    }
    Ok(pairs)
}

/// Maximum relative residual of the closed second-order equation for the
/// dominant component of a solved state,
///
/// ```text
/// -u'' - u'/rho + [l^2 / rho^2] u + (E - c) V(rho) u - (E - c) E u = 0,
/// ```
///
/// with `(l, V, c)` as in the oracle mapping. Valid only under an exact
/// relation — the elimination has no first-derivative remainder precisely
/// because one branch is constant.
pub fn residual_second_order_2d(sol: &PlanarSolution, problem: &Planar2DProblem) -> Result<f64> {
    let l = problem.oracle_l(sol.mj_twice)? as f64;
    // The two exact branches differ only in which component dominates, the
    // sign of the tensor term, and the sign of the constant.
    let (w, z_sign, c): (&[f64], f64, f64) = match problem.tensor {
        TensorBranch2D::Plus => (&sol.u, 1.0, -problem.c_const),
        TensorBranch2D::Minus => (&sol.v, -1.0, problem.c_const),
        TensorBranch2D::Broken { .. } => unreachable!("oracle_l rejected broken"),
    };
    let v_of = |rho: f64| problem.v_2v.eval(rho) + z_sign * problem.v_z(rho);
    let grid = sol.grid;
    let h = grid.step();
    let e = sol.energy;
    let ec = e - c;

    let peak = w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut terms_peak = 0.0f64;
    let mut rows: Vec<(f64, f64)> = Vec::new();
    for i in 2..grid.n - 2 {
        let rho = grid.point(i);
        // Skip the stencil rows hugging the coordinate singularity: there the
        // component behaves as a power of rho with h/rho = O(1) and the
        // finite differences measure their own truncation error, not the
        // solution. See the matching guard in the spherical residual.
        if rho < 32.0 * h {
            continue;
        }
        if w[i].abs() < 1e-6 * peak {
            continue;
        }
        let d1 = (w[i - 2] - 8.0 * w[i - 1] + 8.0 * w[i + 1] - w[i + 2]) / (12.0 * h);
        let d2 = (-w[i - 2] + 16.0 * w[i - 1] - 30.0 * w[i] + 16.0 * w[i + 1] - w[i + 2])
            / (12.0 * h * h);
        let centri = l * l / (rho * rho) * w[i];
        let first = d1 / rho;
        let quad = ec * (v_of(rho) - e) * w[i];
        let residual = -d2 - first + centri + quad;
        let scale = d2.abs() + first.abs() + centri.abs() + quad.abs();
        terms_peak = terms_peak.max(scale);
        rows.push((residual.abs(), scale));
    }
    let floor = 1e-2 * terms_peak;
    Ok(rows
        .iter()
        .map(|(res, scale)| res / (scale + floor))
        .fold(0.0, f64::max))
}

/// The 4x4 planar Hamiltonian symbol at radius `rho` and transverse momentum
/// `p_perp` (there is no `p_z` anywhere in this geometry, which is what makes
/// the axis-aligned weak condition hold by construction).
pub fn planar_hamiltonian_symbol(
    problem: &Planar2DProblem,
    rho: f64,
    p_perp: [f64; 2],
) -> SpinorMatrix {
    SpinorMatrix::alpha(1).scale_re(p_perp[0])
        + SpinorMatrix::alpha(2).scale_re(p_perp[1])
        + SpinorMatrix::unit().scale_re(problem.v_2v.eval(rho))
        + SpinorMatrix::alpha(3).scale_re(problem.v_z(rho))
}

/// Residuals of the planar U(1) structure at one `(rho, p_perp)` sample.
#[derive(Clone, Copy, Debug)]
pub struct U1Check {
    /// `max |[H, gamma^5]|` — the conserved generator; exactly zero.
    pub gamma5_residual: f64,
    /// `max |P_+ [H, Sigma_3] P_+|` with `P_pm = (1 pm alpha_3)/2` — `Sigma_3`
    /// is conserved within each projected subspace; exactly zero.
    pub projected_sigma3_residual: f64,
    /// `max |[H, Sigma_3]|` without projection: `2 |p_perp|`. Kept as an
    /// honesty term — the unprojected commutator does not vanish.
    pub raw_sigma3_residual: f64,
}

pub fn check_u1_symmetry(problem: &Planar2DProblem, rho: f64, p_perp: [f64; 2]) -> U1Check {
    let h = planar_hamiltonian_symbol(problem, rho, p_perp);
    let gamma5 = SpinorMatrix::gamma5();
    let sigma3 = SpinorMatrix::sigma(3);
    let p_plus = (SpinorMatrix::unit() + SpinorMatrix::alpha(3)).scale_re(0.5);
    let comm = h.commutator(&sigma3);
    U1Check {
        gamma5_residual: h.commutator(&gamma5).max_abs(),
        projected_sigma3_residual: (p_plus * comm * p_plus).max_abs(),
        raw_sigma3_residual: comm.max_abs(),
    }
}
