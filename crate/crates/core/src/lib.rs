//! Spin and pseudospin symmetry structure of the Dirac Hamiltonian
//! `H = alpha . p + V`, where the potential `V = V_v 1 + V_O O` splits along a
//! Hermitian involution `O` into branch potentials `V_pm = V_v pm V_O`.
//!
//! The crate has two halves:
//!
//! * **Exact spinor algebra** ([`spinor`], [`coupling`], [`symmetry`]):
//!   enumerate which couplings `O` admit an SU(2) symmetry when one branch
//!   potential is held constant, build the conserved generators on plane-wave
//!   states, and verify the commutation/SU(2)/projector relations to
//!   round-off.
//! * **Bound-state solvers** ([`radial3d`], [`axial1d`], [`planar2d`]):
//!   demonstrate the resulting degeneracy patterns numerically in three, one
//!   and two spatial dimensions, each cross-checked against an independently
//!   discretized Schroedinger-type eigenproblem ([`oracle`]).

pub mod axial1d;
pub mod coupling;
pub mod grid;
pub mod linalg;
pub mod oracle;
pub mod planar2d;
pub mod potential;
pub mod radial3d;
pub mod report;
pub mod shooting;
pub mod spinor;
pub mod symmetry;

pub use coupling::{check_coupling_conditions, strict_coupling_candidates, ConditionReport};
pub use spinor::{Cplx, SpinorMatrix};
pub use symmetry::{Branch, PlaneWaveContext, SymmetryReport};

use thiserror::Error;

/// Errors shared across the algebra and solver layers.
#[derive(Debug, Error)]
pub enum SpinSymError {
    /// The coupling matrix passed in does not satisfy the structural
    /// conditions (involution, anticommutation with alpha) required for the
    /// branch projectors to make sense.
    #[error("coupling matrix is not an admissible involution: {reason}")]
    InvalidCoupling { reason: String },

    /// Helicity-style generators are undefined at zero momentum.
    #[error(
        "plane-wave momentum too small (|p| = {p_norm:.3e}); generators are singular at p = 0"
    )]
    ZeroMomentum { p_norm: f64 },

    /// Direction-dependent couplings need a nonzero direction vector.
    #[error("direction vector has near-zero norm ({norm:.3e})")]
    InvalidLambda { norm: f64 },

    /// A matrix handed to the weak-coupling checker matches none of the
    /// recognized families.
    #[error("coupling matrix not recognized as lambda.alpha or i beta lambda.alpha")]
    UnrecognizedCoupling,

    /// The second-order reduction divides by E - V on the inactive branch;
    /// refuse to evaluate it where that factor vanishes.
    #[error(
        "E - V crosses zero near r = {r:.6} (|E - V| = {gap:.3e}); second-order form is singular"
    )]
    SingularDenominator { r: f64, gap: f64 },

    /// Eigenvalue search window contained no sign change / no root.
    #[error("no bound state found in energy window ({lo}, {hi})")]
    NoStateFound { lo: f64, hi: f64 },

    /// A located state has not decayed by the outer grid edge: the classical
    /// turning point sits too close to (or beyond) r_max and the wave is
    /// unreliable. Enlarge the grid.
    #[error(
        "wave tail at r_max = {r_max} is {tail:.3e} of the peak; turning point too close to the grid edge"
    )]
    TurningPointOutsideGrid { r_max: f64, tail: f64 },

    /// Self-consistency loop for the energy-dependent eigenproblem failed to
    /// settle; reported defensively instead of looping forever.
    #[error("self-consistent eigenvalue search failed to converge: {context}")]
    IterationDiverged { context: String },

    /// A first-order lattice discretization has produced a spurious
    /// site-alternating eigenvector (fermion doubling); the staggered layout
    /// is supposed to exclude these, so this signals a stencil bug.
    #[error(
        "eigenvector at E = {energy} alternates sign on {flip_fraction:.2} of the sites; spurious doubler state"
    )]
    DoublingDetected { energy: f64, flip_fraction: f64 },

    /// Mesh parameters that cannot support the requested discretization.
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },

    /// Configuration values outside the physically meaningful range.
    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },
}

pub type Result<T> = std::result::Result<T, SpinSymError>;
