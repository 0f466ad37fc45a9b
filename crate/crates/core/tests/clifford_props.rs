//! Structural properties of the spinor-matrix layer: Clifford relations,
//! basis orthogonality, product identities, and the coupling-condition scan.
//!
//! Everything here is integer-valued matrix algebra, so most assertions
//! demand bit-exact zeros; the seeded random checks allow only the rounding
//! of a handful of f64 products.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinsym::coupling::{check_coupling_conditions, strict_coupling_candidates};
use spinsym::spinor::gamma_basis;
use spinsym::symmetry::build_projectors;
use spinsym::{Cplx, SpinorMatrix};

fn metric(mu: usize, nu: usize) -> f64 {
    if mu != nu {
        0.0
    } else if mu == 0 {
        1.0
    } else {
        -1.0
    }
}

#[test]
fn clifford_relations_hold_bit_exactly() {
    for mu in 0..4 {
        for nu in 0..4 {
            let anti = SpinorMatrix::gamma(mu).anticommutator(&SpinorMatrix::gamma(nu));
            let expected = SpinorMatrix::unit().scale_re(2.0 * metric(mu, nu));
            assert_eq!(anti.max_abs_diff(&expected), 0.0, "{{g{mu}, g{nu}}}");
        }
    }
    for i in 1..=3 {
        for j in 1..=3 {
            let anti = SpinorMatrix::alpha(i).anticommutator(&SpinorMatrix::alpha(j));
            let expected = SpinorMatrix::unit().scale_re(if i == j { 2.0 } else { 0.0 });
            assert_eq!(anti.max_abs_diff(&expected), 0.0, "{{a{i}, a{j}}}");
        }
        let anti = SpinorMatrix::alpha(i).anticommutator(&SpinorMatrix::beta());
        assert_eq!(anti.max_abs(), 0.0, "{{a{i}, beta}}");
    }
    // gamma5 anticommutes with every gamma^mu and squares to one.
    for mu in 0..4 {
        let anti = SpinorMatrix::gamma5().anticommutator(&SpinorMatrix::gamma(mu));
        assert_eq!(anti.max_abs(), 0.0);
    }
    let g5sq = SpinorMatrix::gamma5() * SpinorMatrix::gamma5();
    assert_eq!(g5sq.max_abs_diff(&SpinorMatrix::unit()), 0.0);
}

#[test]
fn spin_matrices_close_su2_and_commute_with_beta() {
    let eps = |i: usize, j: usize, k: usize| -> f64 {
        match (i, j, k) {
            (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
            (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
            _ => 0.0,
        }
    };
    for i in 1..=3 {
        // Sigma_i = gamma5 alpha_i, and it commutes with beta.
        let product = SpinorMatrix::gamma5() * SpinorMatrix::alpha(i);
        assert_eq!(product.max_abs_diff(&SpinorMatrix::sigma(i)), 0.0);
        assert_eq!(
            SpinorMatrix::beta()
                .commutator(&SpinorMatrix::sigma(i))
                .max_abs(),
            0.0
        );
        for j in 1..=3 {
            let comm = SpinorMatrix::sigma(i).commutator(&SpinorMatrix::sigma(j));
            let mut expected = SpinorMatrix::zero();
            for k in 1..=3 {
                expected =
                    expected + SpinorMatrix::sigma(k).scale(Cplx::new(0.0, 2.0 * eps(i, j, k)));
            }
            assert_eq!(comm.max_abs_diff(&expected), 0.0, "[S{i}, S{j}]");
        }
    }
}

#[test]
fn hermitized_basis_is_orthogonal_and_hermitian() {
    let basis = gamma_basis();
    assert_eq!(basis.len(), 16);
    let matrices: Vec<SpinorMatrix> = basis.iter().map(|e| e.hermitized().0).collect();
    for (a, ma) in matrices.iter().enumerate() {
        assert!(ma.is_hermitian(0.0), "basis element {a} fails Hermiticity");
        for (b, mb) in matrices.iter().enumerate() {
            let overlap = (ma.adjoint() * *mb).trace();
            let expected = if a == b { 4.0 } else { 0.0 };
            assert_eq!(overlap, Cplx::new(expected, 0.0), "Tr(B{a}^H B{b})");
        }
    }
}

/// (alpha . A)(alpha . B) = (A . B) 1 + i Sigma . (A x B), checked over 100
/// seeded directions. The only inexactness is f64 rounding of the dot and
/// cross products.
#[test]
fn alpha_product_identity_over_seeded_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let a: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let b: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
        let lhs =
            SpinorMatrix::dot3(a, SpinorMatrix::alpha) * SpinorMatrix::dot3(b, SpinorMatrix::alpha);
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let rhs = SpinorMatrix::unit().scale_re(dot)
            + SpinorMatrix::dot3(cross, SpinorMatrix::sigma).scale(Cplx::new(0.0, 1.0));
        worst = worst.max(lhs.max_abs_diff(&rhs));
        // Special case B = A: (alpha . A)^2 = |A|^2.
        let sq =
            SpinorMatrix::dot3(a, SpinorMatrix::alpha) * SpinorMatrix::dot3(a, SpinorMatrix::alpha);
        let norm = SpinorMatrix::unit().scale_re(a.iter().map(|x| x * x).sum());
        worst = worst.max(sq.max_abs_diff(&norm));
    }
    assert!(worst < 1e-13, "worst identity residual {worst:.3e}");
}

#[test]
fn coupling_scan_finds_the_two_admissible_matrices() {
    let candidates = strict_coupling_candidates();
    let names: Vec<&str> = candidates.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["gamma0", "i_gamma0_gamma5"]);
    for c in &candidates {
        let report = check_coupling_conditions(&c.matrix, 0.0);
        assert!(report.satisfied());
        assert_eq!(report.max_residual, 0.0);
    }
    // The rest of the sixteen-element basis must be rejected.
    let mut rejected = 0;
    for e in gamma_basis() {
        let (m, name) = e.hermitized();
        if !candidates.iter().any(|c| c.name == name) {
            assert!(!check_coupling_conditions(&m, 1e-12).satisfied(), "{name}");
            rejected += 1;
        }
    }
    assert_eq!(rejected, 14);
}

#[test]
fn branch_projectors_are_bit_exact_for_both_couplings() {
    for c in strict_coupling_candidates() {
        let (p_plus, p_minus) = build_projectors(&c.matrix).unwrap();
        assert_eq!((p_plus * p_plus).max_abs_diff(&p_plus), 0.0);
        assert_eq!((p_minus * p_minus).max_abs_diff(&p_minus), 0.0);
        assert_eq!((p_plus * p_minus).max_abs(), 0.0);
        assert_eq!((p_plus + p_minus).max_abs_diff(&SpinorMatrix::unit()), 0.0);
        assert!(p_plus.is_hermitian(0.0) && p_minus.is_hermitian(0.0));
        // O itself is recovered as the projector difference.
        assert_eq!((p_plus - p_minus).max_abs_diff(&c.matrix), 0.0);
    }
}
