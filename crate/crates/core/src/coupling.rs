//! Admissibility conditions for the matrix coupling `O` in a potential
//! `V = V_v 1 + V_O O`.
//!
//! A coupling supports an SU(2) symmetry algebra on one potential branch when
//!
//! 1. `O` is a Hermitian involution, `O^2 = 1`,
//! 2. `O` anticommutes with every `alpha_i` (so the kinetic term maps one
//!    branch projector onto the other), and
//! 3. `O` commutes with every spin matrix `Sigma_i`.
//!
//! Scanning the sixteen-dimensional gamma-product basis shows conditions 1-3
//! single out exactly two matrices up to sign: `gamma^0` and
//! `i gamma^0 gamma^5`. Condition 3 is not independent: any product of an odd
//! number of distinct gamma matrices that anticommutes with all `alpha_i`
//! automatically commutes with the `Sigma_i`; the report therefore also
//! classifies the distinct-gamma parity of the matrix.
//!
//! Two further *direction-dependent* families satisfy the conditions only on
//! states with constrained momentum: `lambda.alpha` (requires
//! `lambda . p psi = 0`) and `i beta lambda.alpha` (requires
//! `lambda x p psi = 0`), with the rotation axis pinned to `lambda` in both
//! cases. [`weak_coupling_check`] evaluates those relaxed conditions.

use crate::spinor::{gamma_basis, SpinorMatrix};
use crate::{Result, SpinSymError};

/// Outcome of testing a matrix against the coupling conditions.
///
/// For the strict check the three booleans are matrix identities. For the
/// weak (direction-dependent) check the same fields are reused with the
/// relaxed meaning: `anticommutes_with_alpha` reports whether the momentum
/// constraint holds for the supplied plane-wave momentum, and
/// `commutes_with_sigma` whether the requested rotation axis is admissible.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    /// `O^2 = 1` within tolerance.
    pub involutory: bool,
    /// `{alpha_i, O} = 0` for i = 1, 2, 3 (strict), or the momentum
    /// constraint contracted with the supplied `p` (weak).
    pub anticommutes_with_alpha: bool,
    /// `[O, Sigma_i] = 0` for i = 1, 2, 3 (strict), or the rotation-axis
    /// constraint for the supplied axis (weak).
    pub commutes_with_sigma: bool,
    /// Parity of the number of distinct gamma factors in the expansion of
    /// `O`: `Some(true)` if every contributing basis element has an odd
    /// count, `Some(false)` if every one is even, `None` if mixed.
    pub odd_gamma_count: Option<bool>,
    /// Largest residual entry over all evaluated conditions.
    pub max_residual: f64,
}

impl ConditionReport {
    /// All three structural conditions hold.
    pub fn satisfied(&self) -> bool {
        self.involutory && self.anticommutes_with_alpha && self.commutes_with_sigma
    }
}

/// Strict check of the three coupling conditions as matrix identities.
///
/// The input is expected to be Hermitian; Hermiticity is not part of the
/// report because every candidate produced by [`strict_coupling_candidates`]
/// is Hermitian by construction.
pub fn check_coupling_conditions(o: &SpinorMatrix, tol: f64) -> ConditionReport {
    let unit = SpinorMatrix::unit();
    let r_inv = (*o * *o).max_abs_diff(&unit);
    let mut r_anti: f64 = 0.0;
    let mut r_comm: f64 = 0.0;
    for i in 1..=3 {
        r_anti = r_anti.max(o.anticommutator(&SpinorMatrix::alpha(i)).max_abs());
        r_comm = r_comm.max(o.commutator(&SpinorMatrix::sigma(i)).max_abs());
    }
    ConditionReport {
        involutory: r_inv <= tol,
        anticommutes_with_alpha: r_anti <= tol,
        commutes_with_sigma: r_comm <= tol,
        odd_gamma_count: gamma_parity(o, 1e-12),
        max_residual: r_inv.max(r_anti).max(r_comm),
    }
}

/// Expand `o` over the gamma-product basis and classify the distinct-gamma
/// parity of the contributing elements.
fn gamma_parity(o: &SpinorMatrix, tol: f64) -> Option<bool> {
    let mut saw_odd = false;
    let mut saw_even = false;
    for e in gamma_basis() {
        // Basis elements satisfy Tr(B_a^dagger B_b) = 4 delta_ab.
        let coeff = (e.matrix.adjoint() * *o).trace() / 4.0;
        if coeff.norm() > tol {
            if e.gamma_count % 2 == 1 {
                saw_odd = true;
            } else {
                saw_even = true;
            }
        }
    }
    match (saw_odd, saw_even) {
        (true, false) => Some(true),
        (false, true) => Some(false),
        _ => None,
    }
}

/// A Hermitian coupling matrix satisfying all strict conditions.
#[derive(Clone, Debug)]
pub struct CouplingCandidate {
    /// Canonical name, e.g. `"gamma0"` or `"i_gamma0_gamma5"`.
    pub name: String,
    pub matrix: SpinorMatrix,
    /// Number of distinct gamma factors of the underlying basis element.
    pub gamma_count: u8,
}

/// Scan the Hermitized gamma-product basis for couplings satisfying the
/// strict conditions *exactly* (all entries are Gaussian integers, so the
/// residuals of true identities are bit-zero).
pub fn strict_coupling_candidates() -> Vec<CouplingCandidate> {
    let mut out = Vec::new();
    for e in gamma_basis() {
        let (m, name) = e.hermitized();
        let report = check_coupling_conditions(&m, 0.0);
        if report.satisfied() {
            out.push(CouplingCandidate {
                name,
                matrix: m,
                gamma_count: e.gamma_count,
            });
        }
    }
    out
}

/// Look up a strict candidate by its canonical name.
pub fn candidate_by_name(name: &str) -> Option<CouplingCandidate> {
    strict_coupling_candidates()
        .into_iter()
        .find(|c| c.name == name)
}

/// The two direction-dependent coupling families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakFamily {
    /// `O = lambda_hat . alpha`; a symmetry on states with momentum
    /// transverse to `lambda` (`lambda . p psi = 0`).
    AlphaAlongAxis,
    /// `O = i beta (lambda_hat . alpha) = i gamma . lambda_hat`; a symmetry
    /// on states with momentum parallel to `lambda` (`lambda x p psi = 0`).
    BetaAlphaAlongAxis,
}

/// Result of the relaxed, direction-dependent conditions.
#[derive(Clone, Debug)]
pub struct WeakCouplingReport {
    pub family: WeakFamily,
    pub conditions: ConditionReport,
}

/// Build the `lambda_hat . alpha` coupling for a direction `lambda`.
pub fn alpha_along_axis(lambda: [f64; 3]) -> Result<SpinorMatrix> {
    let hat = unit_vector(lambda)?;
    Ok(SpinorMatrix::dot3(hat, SpinorMatrix::alpha))
}

/// Build the `i beta lambda_hat . alpha` coupling for a direction `lambda`.
pub fn beta_alpha_along_axis(lambda: [f64; 3]) -> Result<SpinorMatrix> {
    let hat = unit_vector(lambda)?;
    let l_alpha = SpinorMatrix::dot3(hat, SpinorMatrix::alpha);
    Ok((SpinorMatrix::beta() * l_alpha).scale(num_complex::Complex::new(0.0, 1.0)))
}

/// Check the direction-dependent coupling conditions for `o` against a
/// direction `lambda`, a plane-wave momentum `p`, and a rotation axis.
///
/// The booleans in the returned report carry the relaxed meaning documented
/// on [`ConditionReport`]; residuals are the actual matrix residuals of the
/// kinetic anticommutator `{alpha . p, O}` (or its commutator analogue) and
/// the generator commutator `[O, axis . Sigma]`, so they scale with `|p|`
/// and `|axis|`.
pub fn weak_coupling_check(
    o: &SpinorMatrix,
    lambda: [f64; 3],
    p: [f64; 3],
    rotation_axis: [f64; 3],
    tol: f64,
) -> Result<WeakCouplingReport> {
    let family = {
        let along = alpha_along_axis(lambda)?;
        let beta_along = beta_alpha_along_axis(lambda)?;
        if o.max_abs_diff(&along) <= 1e-12 || o.max_abs_diff(&-along) <= 1e-12 {
            WeakFamily::AlphaAlongAxis
        } else if o.max_abs_diff(&beta_along) <= 1e-12 || o.max_abs_diff(&-beta_along) <= 1e-12 {
            WeakFamily::BetaAlphaAlongAxis
        } else {
            return Err(SpinSymError::UnrecognizedCoupling);
        }
    };

    let r_inv = (*o * *o).max_abs_diff(&SpinorMatrix::unit());
    // Kinetic-term condition, evaluated as the exact matrix residual with the
    // physical momentum: {alpha . p, O} = 2 (lambda_hat . p) for the alpha
    // family, and proportional to (lambda_hat x p) . Sigma for the beta-alpha
    // family. Either way the residual vanishes iff the momentum constraint
    // holds.
    let alpha_p = SpinorMatrix::dot3(p, SpinorMatrix::alpha);
    let r_mom = alpha_p.anticommutator(o).max_abs();
    // Rotation-axis condition: [O, axis . Sigma] vanishes iff axis || lambda.
    let axis_sigma = SpinorMatrix::dot3(rotation_axis, SpinorMatrix::sigma);
    let r_axis = o.commutator(&axis_sigma).max_abs();

    Ok(WeakCouplingReport {
        family,
        conditions: ConditionReport {
            involutory: r_inv <= tol,
            anticommutes_with_alpha: r_mom <= tol,
            commutes_with_sigma: r_axis <= tol,
            odd_gamma_count: gamma_parity(o, 1e-12),
            max_residual: r_inv.max(r_mom).max(r_axis),
        },
    })
}

fn unit_vector(v: [f64; 3]) -> Result<[f64; 3]> {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if norm < 1e-12 {
        return Err(SpinSymError::InvalidLambda { norm });
    }
    Ok([v[0] / norm, v[1] / norm, v[2] / norm])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_scan_finds_exactly_the_two_known_couplings() {
        let candidates = strict_coupling_candidates();
        assert_eq!(candidates.len(), 2);
        assert_eq!(candidates[0].name, "gamma0");
        assert_eq!(candidates[0].matrix, SpinorMatrix::gamma(0));
        assert_eq!(candidates[0].gamma_count, 1);
        assert_eq!(candidates[1].name, "i_gamma0_gamma5");
        let expected = (SpinorMatrix::gamma(0) * SpinorMatrix::gamma5())
            .scale(num_complex::Complex::new(0.0, 1.0));
        assert_eq!(candidates[1].matrix, expected);
        assert_eq!(candidates[1].gamma_count, 3);
        for c in &candidates {
            let report = check_coupling_conditions(&c.matrix, 0.0);
            assert!(report.satisfied());
            assert_eq!(report.max_residual, 0.0);
            assert_eq!(report.odd_gamma_count, Some(true));
        }
    }

    #[test]
    fn gamma5_is_rejected_with_large_residual() {
        let report = check_coupling_conditions(&SpinorMatrix::gamma5(), 1e-12);
        assert!(report.involutory);
        assert!(!report.anticommutes_with_alpha);
        assert!(!report.satisfied());
        // {alpha_i, gamma5} = 2 gamma5 alpha_i has entries of magnitude 2.
        assert!(report.max_residual > 0.1);
        assert_eq!(report.max_residual, 2.0);
    }

    #[test]
    fn identity_and_sigma_are_rejected() {
        let report = check_coupling_conditions(&SpinorMatrix::unit(), 0.0);
        assert!(report.involutory && !report.anticommutes_with_alpha);
        assert_eq!(report.odd_gamma_count, Some(false));
        let report = check_coupling_conditions(&SpinorMatrix::sigma(3), 0.0);
        assert!(report.involutory);
        assert!(!report.anticommutes_with_alpha);
        assert!(!report.commutes_with_sigma); // [Sigma_3, Sigma_1] != 0
    }

    #[test]
    fn mixed_parity_is_flagged() {
        let o = SpinorMatrix::gamma(0) + SpinorMatrix::alpha(1);
        let report = check_coupling_conditions(&o, 0.0);
        assert_eq!(report.odd_gamma_count, None);
    }

    #[test]
    fn weak_alpha_family_requires_transverse_momentum_and_parallel_axis() {
        let o = alpha_along_axis([0.0, 0.0, 1.0]).unwrap();
        assert_eq!(o, SpinorMatrix::alpha(3));

        // Transverse momentum, axis along lambda: all conditions hold.
        let ok = weak_coupling_check(&o, [0.0, 0.0, 1.0], [0.3, 0.0, 0.0], [0.0, 0.0, 1.0], 1e-12)
            .unwrap();
        assert_eq!(ok.family, WeakFamily::AlphaAlongAxis);
        assert!(ok.conditions.satisfied());
        assert_eq!(ok.conditions.max_residual, 0.0);
        assert_eq!(ok.conditions.odd_gamma_count, Some(false));

        // Longitudinal momentum breaks the kinetic condition: residual 2|p_z|.
        let bad_p =
            weak_coupling_check(&o, [0.0, 0.0, 1.0], [0.0, 0.0, 0.5], [0.0, 0.0, 1.0], 1e-12)
                .unwrap();
        assert!(!bad_p.conditions.anticommutes_with_alpha);
        assert_eq!(bad_p.conditions.max_residual, 1.0);

        // Perpendicular rotation axis: [alpha_3, Sigma_1] = 2i alpha_2.
        let bad_axis =
            weak_coupling_check(&o, [0.0, 0.0, 1.0], [0.3, 0.0, 0.0], [1.0, 0.0, 0.0], 1e-12)
                .unwrap();
        assert!(!bad_axis.conditions.commutes_with_sigma);
        assert_eq!(bad_axis.conditions.max_residual, 2.0);
    }

    #[test]
    fn weak_beta_alpha_family_requires_longitudinal_momentum() {
        let o = beta_alpha_along_axis([0.0, 0.0, 1.0]).unwrap();
        // i beta alpha_3 = i gamma^3: a single (odd) gamma factor.
        let ok = weak_coupling_check(&o, [0.0, 0.0, 1.0], [0.0, 0.0, 0.7], [0.0, 0.0, 1.0], 1e-12)
            .unwrap();
        assert_eq!(ok.family, WeakFamily::BetaAlphaAlongAxis);
        assert!(ok.conditions.satisfied());
        assert_eq!(ok.conditions.odd_gamma_count, Some(true));

        // Transverse momentum component k_x leaves residual 2|k_x|.
        let bad = weak_coupling_check(&o, [0.0, 0.0, 1.0], [0.2, 0.0, 0.7], [0.0, 0.0, 1.0], 1e-12)
            .unwrap();
        assert!(!bad.conditions.anticommutes_with_alpha);
        assert!((bad.conditions.max_residual - 0.4).abs() < 1e-15);
    }

    #[test]
    fn weak_check_rejects_zero_direction_and_unknown_matrices() {
        let err = alpha_along_axis([0.0, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, SpinSymError::InvalidLambda { .. }));

        let err = weak_coupling_check(
            &SpinorMatrix::gamma(0),
            [0.0, 0.0, 1.0],
            [0.1, 0.0, 0.0],
            [0.0, 0.0, 1.0],
            1e-12,
        )
        .unwrap_err();
        assert!(matches!(err, SpinSymError::UnrecognizedCoupling));
    }
}
