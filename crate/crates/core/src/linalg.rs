//! Small dense and structured eigensolvers.
//!
//! Two problems recur throughout the crate: diagonalizing a 4x4 complex
//! Hermitian plane-wave Hamiltonian, and extracting a handful of eigenvalues
//! from large real symmetric tridiagonal matrices produced by second-order
//! finite differences. Both are solved here without pulling in a full LAPACK
//! binding: the 4x4 case goes through the standard real 8x8 embedding
//! `H = A + iB  ->  [[A, -B], [B, A]]`, and the tridiagonal case uses Sturm
//! sequence bisection plus inverse iteration.

use nalgebra::{SMatrix, SymmetricEigen};
use num_complex::Complex;

use crate::spinor::{Cplx, SpinorMatrix};

/// Eigendecomposition of a 4x4 complex Hermitian matrix.
///
/// Eigenvalues are returned in ascending order together with an orthonormal
/// set of complex eigenvectors. The matrix is symmetrized internally
/// (Hermitian part taken) so tiny anti-Hermitian round-off in the input is
/// harmless; pass a genuinely non-Hermitian matrix and the result is
/// meaningless.
pub fn hermitian_eigen4(m: &SpinorMatrix) -> ([f64; 4], [[Cplx; 4]; 4]) {
    // Hermitian part, split into real symmetric A and real antisymmetric B.
    let h = (m.0 + m.0.adjoint()) * Complex::new(0.5, 0.0);
    let mut real8 = SMatrix::<f64, 8, 8>::zeros();
    for r in 0..4 {
        for c in 0..4 {
            let a = h[(r, c)].re;
            let b = h[(r, c)].im;
            real8[(r, c)] = a;
            real8[(r + 4, c + 4)] = a;
            real8[(r, c + 4)] = -b;
            real8[(r + 4, c)] = b;
        }
    }
    let eig = SymmetricEigen::new(real8);

    // Each complex eigenpair appears twice in the embedding: (x; y) and
    // (-y; x) both map onto the same complex line x + iy. Walk the real
    // eigenpairs in ascending order and keep the four that expose new complex
    // directions, projecting out what has already been accepted.
    let mut order: Vec<usize> = (0..8).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut values = [0.0; 4];
    let mut vectors = [[Complex::new(0.0, 0.0); 4]; 4];
    let mut accepted = 0usize;
    for &idx in &order {
        if accepted == 4 {
            break;
        }
        let col = eig.eigenvectors.column(idx);
        let mut v = [Complex::new(0.0, 0.0); 4];
        for r in 0..4 {
            v[r] = Complex::new(col[r], col[r + 4]);
        }
        for prev in vectors.iter().take(accepted) {
            let overlap: Cplx = (0..4).map(|r| prev[r].conj() * v[r]).sum();
            for r in 0..4 {
                v[r] -= overlap * prev[r];
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // A phase copy of an already-accepted vector projects to ~0; a new
        // direction keeps norm ~1.
        if norm > 0.5 {
            for z in &mut v {
                *z /= norm;
            }
            values[accepted] = eig.eigenvalues[idx];
            vectors[accepted] = v;
            accepted += 1;
        }
    }
    assert_eq!(
        accepted, 4,
        "embedding failed to yield four complex eigenpairs"
    );
    (values, vectors)
}

/// Real symmetric tridiagonal matrix, stored as its diagonal and
/// subdiagonal. `offdiag.len()` must equal `diag.len() - 1`.
#[derive(Clone, Debug)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert_eq!(offdiag.len() + 1, diag.len(), "offdiagonal length mismatch");
        Self { diag, offdiag }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence via the
    /// LDL^T pivots of `T - x I`).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0usize;
        let mut d = self.diag[0] - x;
        if d == 0.0 {
            d = -f64::MIN_POSITIVE;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.n() {
            let e = self.offdiag[i - 1];
            d = (self.diag[i] - x) - e * e / d;
            if d == 0.0 {
                d = -f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval guaranteed to contain the whole spectrum (Gershgorin).
    pub fn spectrum_bounds(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th eigenvalue (0-based, ascending), resolved by bisection to
    /// near machine precision.
    pub fn eigenvalue_k(&self, k: usize) -> f64 {
        assert!(k < self.n());
        let (mut lo, mut hi) = self.spectrum_bounds();
        // Widen marginally so strict inequalities cannot exclude endpoints.
        let pad = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        lo -= pad;
        hi += pad;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= f64::EPSILON * (1.0 + mid.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// All eigenvalues in the open interval `(lo, hi)`, ascending.
    pub fn eigenvalues_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let k_lo = self.count_below(lo);
        let k_hi = self.count_below(hi);
        (k_lo..k_hi).map(|k| self.eigenvalue_k(k)).collect()
    }

    /// Eigenvector for an eigenvalue approximation `lambda`, by inverse
    /// iteration with a partially pivoted tridiagonal solve. Returns a
    /// normalized vector.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.n();
        let mut v: Vec<f64> = (0..n)
            .map(|i| {
                // Fixed deterministic start vector with no special symmetry.
                let t = (i as f64 + 1.0) * 0.754_877_666_246_693;
                (t - t.floor()) - 0.5
            })
            .collect();
        normalize(&mut v);
        for _ in 0..4 {
            let mut w = self.solve_shifted(lambda, &v);
            normalize(&mut w);
            v = w;
        }
        // Fix overall sign: first significantly nonzero component positive.
        let scale = v.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        if let Some(&first) = v.iter().find(|x| x.abs() > 1e-8 * scale) {
            if first < 0.0 {
                for x in &mut v {
                    *x = -*x;
                }
            }
        }
        v
    }

    /// Solve `(T - lambda I) w = b` by Gaussian elimination with partial
    /// pivoting (fill-in limited to a second superdiagonal).
    fn solve_shifted(&self, lambda: f64, b: &[f64]) -> Vec<f64> {
        let n = self.n();
        // Row i carries (main[i], upper1[i], upper2[i]) at columns
        // (i, i+1, i+2); the trailing entries of upper1/upper2 stay zero.
        let mut main: Vec<f64> = self.diag.iter().map(|&d| d - lambda).collect();
        let mut upper1 = vec![0.0; n];
        let mut upper2 = vec![0.0; n];
        upper1[..n - 1].copy_from_slice(&self.offdiag[..n - 1]);
        let mut rhs = b.to_vec();
        let tiny = 1e-300;

        for i in 0..n - 1 {
            // Row i+1 still holds its original column-i entry.
            let mut sub = self.offdiag[i];
            if sub.abs() > main[i].abs() {
                std::mem::swap(&mut main[i], &mut sub);
                std::mem::swap(&mut upper1[i], &mut main[i + 1]);
                std::mem::swap(&mut upper2[i], &mut upper1[i + 1]);
                rhs.swap(i, i + 1);
            }
            let m = sub / safe(main[i], tiny);
            main[i + 1] -= m * upper1[i];
            upper1[i + 1] -= m * upper2[i];
            rhs[i + 1] -= m * rhs[i];
        }

        // Back substitution.
        let mut w = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= upper1[i] * w[i + 1];
            }
            if i + 2 < n {
                s -= upper2[i] * w[i + 2];
            }
            w[i] = s / safe(main[i], tiny);
        }
        w
    }
}

fn safe(x: f64, tiny: f64) -> f64 {
    if x.abs() < tiny {
        tiny.copysign(if x == 0.0 { 1.0 } else { x })
    } else {
        x
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    #[test]
    fn eigen4_on_frozen_plane_wave_hamiltonian() {
        // H = alpha_3 + 2 * P_minus(gamma^0) has eigenvalues 1 -+ sqrt(2),
        // each twice (momentum e_z, potential depth 2 on the lower branch).
        let p_minus = (SpinorMatrix::unit() - SpinorMatrix::gamma(0)).scale_re(0.5);
        let h = SpinorMatrix::alpha(3) + p_minus.scale_re(2.0);
        let (vals, vecs) = hermitian_eigen4(&h);
        let lo = 1.0 - 2.0f64.sqrt();
        let hi = 1.0 + 2.0f64.sqrt();
        for (v, expected) in vals.iter().zip([lo, lo, hi, hi]) {
            assert!((v - expected).abs() < 1e-12, "eigenvalue {v} vs {expected}");
        }
        // Residuals and orthonormality.
        for k in 0..4 {
            let hv = h.apply(vecs[k]);
            for r in 0..4 {
                let res = hv[r] - vecs[k][r] * Complex::new(vals[k], 0.0);
                assert!(res.norm() < 1e-12);
            }
            for j in 0..4 {
                let dot: Cplx = (0..4).map(|r| vecs[j][r].conj() * vecs[k][r]).sum();
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((dot - Complex::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigen4_handles_fully_degenerate_and_random_hermitian() {
        // Identity: fourfold degeneracy.
        let (vals, vecs) = hermitian_eigen4(&SpinorMatrix::unit());
        for v in vals {
            assert!((v - 1.0).abs() < 1e-14);
        }
        for j in 0..4 {
            for k in 0..4 {
                let dot: Cplx = (0..4).map(|r| vecs[j][r].conj() * vecs[k][r]).sum();
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((dot - Complex::new(expected, 0.0)).norm() < 1e-12);
            }
        }
        // A fixed dense Hermitian matrix with distinct eigenvalues.
        let m = SpinorMatrix::gamma(0).scale_re(0.7)
            + SpinorMatrix::alpha(1).scale_re(0.3)
            + SpinorMatrix::sigma(2).scale_re(-1.1)
            + (SpinorMatrix::gamma(0) * SpinorMatrix::gamma5()).scale(Complex::new(0.0, 0.4))
            + SpinorMatrix::unit().scale_re(0.2);
        assert!(m.is_hermitian(1e-15));
        let (vals, vecs) = hermitian_eigen4(&m);
        for k in 0..4 {
            let hv = m.apply(vecs[k]);
            for r in 0..4 {
                let res = hv[r] - vecs[k][r] * Complex::new(vals[k], 0.0);
                assert!(res.norm() < 1e-12);
            }
        }
        assert!(vals.windows(2).all(|w| w[0] <= w[1] + 1e-14));
    }

    #[test]
    fn tridiag_matches_dirichlet_laplacian_formula() {
        // -u'' on (0, 1) with u(0) = u(1) = 0, n interior points:
        // eigenvalues (2/h^2)(1 - cos(k pi h)), k = 1..n.
        let n = 200;
        let h = 1.0 / (n as f64 + 1.0);
        let t = SymTridiag::new(vec![2.0 / (h * h); n], vec![-1.0 / (h * h); n - 1]);
        let (lo, hi) = t.spectrum_bounds();
        assert!(lo <= 0.0 && hi >= 4.0 / (h * h) - 1.0);
        for k in 0..5 {
            let exact = 2.0 / (h * h) * (1.0 - ((k as f64 + 1.0) * std::f64::consts::PI * h).cos());
            let computed = t.eigenvalue_k(k);
            assert!(
                (computed - exact).abs() < 1e-9 * (1.0 + exact.abs()),
                "k={k}: {computed} vs {exact}"
            );
        }
        let window = t.eigenvalues_in(
            0.0,
            2.0 / (h * h) * (1.0 - (5.5 * std::f64::consts::PI * h).cos()),
        );
        assert_eq!(window.len(), 5);
    }

    #[test]
    fn tridiag_eigenvector_by_inverse_iteration() {
        let n = 150;
        let h = 1.0 / (n as f64 + 1.0);
        let t = SymTridiag::new(vec![2.0 / (h * h); n], vec![-1.0 / (h * h); n - 1]);
        let lambda = t.eigenvalue_k(2); // third mode ~ sin(3 pi x)
        let v = t.eigenvector(lambda);
        // Residual || (T - lambda) v ||_inf should be tiny.
        let mut res: f64 = 0.0;
        for i in 0..n {
            let mut s = (t.diag[i] - lambda) * v[i];
            if i > 0 {
                s += t.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                s += t.offdiag[i] * v[i + 1];
            }
            res = res.max(s.abs());
        }
        assert!(res < 1e-6 * (2.0 / (h * h)), "residual {res}");
        // Shape check against sin(3 pi x), up to sign already fixed.
        let amp = (2.0 * h).sqrt();
        for i in (0..n).step_by(10) {
            let x = (i as f64 + 1.0) * h;
            let expected = amp * (3.0 * std::f64::consts::PI * x).sin();
            assert!((v[i] - expected).abs() < 1e-3 * amp.max(1.0), "node {i}");
        }
    }

    #[test]
    fn tridiag_agrees_with_dense_solver_on_small_random_matrix() {
        let diag = vec![0.3, -1.2, 2.5, 0.9, -0.4, 1.7];
        let off = vec![0.8, -0.6, 1.1, 0.2, -1.3];
        let t = SymTridiag::new(diag.clone(), off.clone());
        let mut dense = DMatrix::<f64>::zeros(6, 6);
        for i in 0..6 {
            dense[(i, i)] = diag[i];
            if i + 1 < 6 {
                dense[(i, i + 1)] = off[i];
                dense[(i + 1, i)] = off[i];
            }
        }
        let mut dense_eigs: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
        dense_eigs.sort_by(f64::total_cmp);
        for (k, &dense_k) in dense_eigs.iter().enumerate().take(6) {
            let bisected = t.eigenvalue_k(k);
            assert!(
                (bisected - dense_k).abs() < 1e-10,
                "k={k}: {bisected} vs {dense_k}"
            );
        }
        assert_eq!(t.count_below(dense_eigs[2] + 1e-9), 3);
        assert_eq!(t.count_below(dense_eigs[2] - 1e-9), 2);
    }
}
