//! Exact 4x4 spinor-matrix algebra in the standard (Dirac) representation.
//!
//! Every structural matrix built here has entries in {0, ±1, ±i}. Products and
//! sums of such entries are exactly representable in `f64`, so the identities
//! checked by the coupling-condition scanner hold bit-exactly: a relation that
//! is true algebraically evaluates to a residual of exactly zero. Floating
//! point only becomes approximate once momenta and potential values enter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix4;
use num_complex::Complex;

pub type Cplx = Complex<f64>;

const I: Cplx = Complex::new(0.0, 1.0);
const ONE: Cplx = Complex::new(1.0, 0.0);
const ZERO: Cplx = Complex::new(0.0, 0.0);

/// Dense 4x4 complex matrix acting on Dirac spinors.
#[derive(Clone, Copy, PartialEq)]
pub struct SpinorMatrix(pub Matrix4<Cplx>);

impl SpinorMatrix {
    pub fn zero() -> Self {
        SpinorMatrix(Matrix4::zeros())
    }

    pub fn unit() -> Self {
        SpinorMatrix(Matrix4::identity())
    }

    /// Build from four rows of four entries each.
    pub fn from_rows(rows: [[Cplx; 4]; 4]) -> Self {
        SpinorMatrix(Matrix4::from_fn(|r, c| rows[r][c]))
    }

    /// Assemble from 2x2 blocks [[a, b], [c, d]] of complex entries.
    fn from_blocks(
        a: [[Cplx; 2]; 2],
        b: [[Cplx; 2]; 2],
        c: [[Cplx; 2]; 2],
        d: [[Cplx; 2]; 2],
    ) -> Self {
        SpinorMatrix(Matrix4::from_fn(|r, col| match (r / 2, col / 2) {
            (0, 0) => a[r][col],
            (0, 1) => b[r][col - 2],
            (1, 0) => c[r - 2][col],
            (1, 1) => d[r - 2][col - 2],
            _ => unreachable!(),
        }))
    }

    /// gamma^mu for mu in 0..=3 (Dirac representation).
    pub fn gamma(mu: usize) -> Self {
        assert!(mu <= 3, "gamma index must be 0..=3");
        let z = pauli_zero();
        match mu {
            0 => Self::from_blocks(pauli_unit(), z, z, neg2(pauli_unit())),
            k => Self::from_blocks(z, pauli(k), neg2(pauli(k)), z),
        }
    }

    /// gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3.
    pub fn gamma5() -> Self {
        let z = pauli_zero();
        Self::from_blocks(z, pauli_unit(), pauli_unit(), z)
    }

    /// alpha_k = gamma^0 gamma^k for k in 1..=3.
    pub fn alpha(k: usize) -> Self {
        assert!((1..=3).contains(&k), "alpha index must be 1..=3");
        let z = pauli_zero();
        Self::from_blocks(z, pauli(k), pauli(k), z)
    }

    /// Spin matrix Sigma_k = gamma^5 alpha_k = diag(sigma_k, sigma_k).
    pub fn sigma(k: usize) -> Self {
        assert!((1..=3).contains(&k), "sigma index must be 1..=3");
        let z = pauli_zero();
        Self::from_blocks(pauli(k), z, z, pauli(k))
    }

    /// beta = gamma^0.
    pub fn beta() -> Self {
        Self::gamma(0)
    }

    /// Contraction v . M over a matrix triple, e.g. alpha . p or Sigma . eps.
    pub fn dot3(v: [f64; 3], triple: fn(usize) -> SpinorMatrix) -> Self {
        let mut out = Matrix4::zeros();
        for (k, &vk) in v.iter().enumerate() {
            out += triple(k + 1).0 * Complex::new(vk, 0.0);
        }
        SpinorMatrix(out)
    }

    pub fn scale(&self, s: Cplx) -> Self {
        SpinorMatrix(self.0 * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex::new(s, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        SpinorMatrix(self.0.adjoint())
    }

    pub fn trace(&self) -> Cplx {
        self.0.trace()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        SpinorMatrix(self.0 * other.0 - other.0 * self.0)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        SpinorMatrix(self.0 * other.0 + other.0 * self.0)
    }

    /// Largest entry magnitude; the residual norm used throughout.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Apply to a spinor given as a column of four complex amplitudes.
    pub fn apply(&self, v: [Cplx; 4]) -> [Cplx; 4] {
        let mut out = [ZERO; 4];
        for (r, out_r) in out.iter_mut().enumerate() {
            for (c, &vc) in v.iter().enumerate() {
                *out_r += self.0[(r, c)] * vc;
            }
        }
        out
    }
}

impl Add for SpinorMatrix {
    type Output = SpinorMatrix;
    fn add(self, rhs: Self) -> Self {
        SpinorMatrix(self.0 + rhs.0)
    }
}

impl Sub for SpinorMatrix {
    type Output = SpinorMatrix;
    fn sub(self, rhs: Self) -> Self {
        SpinorMatrix(self.0 - rhs.0)
    }
}

impl Mul for SpinorMatrix {
    type Output = SpinorMatrix;
    fn mul(self, rhs: Self) -> Self {
        SpinorMatrix(self.0 * rhs.0)
    }
}

impl Neg for SpinorMatrix {
    type Output = SpinorMatrix;
    fn neg(self) -> Self {
        SpinorMatrix(-self.0)
    }
}

impl fmt::Debug for SpinorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..4 {
            write!(f, "[")?;
            for c in 0..4 {
                let z = self.0[(r, c)];
                write!(f, " {:+.1}{:+.1}i", z.re, z.im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

fn pauli_zero() -> [[Cplx; 2]; 2] {
    [[ZERO, ZERO], [ZERO, ZERO]]
}

fn pauli_unit() -> [[Cplx; 2]; 2] {
    [[ONE, ZERO], [ZERO, ONE]]
}

fn neg2(b: [[Cplx; 2]; 2]) -> [[Cplx; 2]; 2] {
    [[-b[0][0], -b[0][1]], [-b[1][0], -b[1][1]]]
}

fn pauli(k: usize) -> [[Cplx; 2]; 2] {
    match k {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("pauli index must be 1..=3"),
    }
}

/// One element of the 16-dimensional product basis of the gamma algebra.
#[derive(Clone)]
pub struct BasisElement {
    /// The raw product (before Hermitization).
    pub matrix: SpinorMatrix,
    pub label: String,
    /// Number of distinct gamma^mu factors in the product (0, 1, 2, 3 or 4).
    pub gamma_count: u8,
}

impl BasisElement {
    /// Hermitian form with a canonical phase: anti-Hermitian elements are
    /// multiplied by i, and the overall sign is fixed so that the first
    /// nonzero entry in row-major order has positive real part (or, if purely
    /// imaginary, positive imaginary part).
    pub fn hermitized(&self) -> (SpinorMatrix, String) {
        let (mut m, mut label) = if self.matrix.is_hermitian(0.0) {
            (self.matrix, self.label.clone())
        } else {
            (self.matrix.scale(I), format!("i_{}", self.label))
        };
        debug_assert!(m.is_hermitian(0.0));
        'outer: for r in 0..4 {
            for c in 0..4 {
                let z = m.0[(r, c)];
                if z != ZERO {
                    if z.re < 0.0 || (z.re == 0.0 && z.im < 0.0) {
                        m = -m;
                        label = format!("neg_{label}");
                    }
                    break 'outer;
                }
            }
        }
        (m, label)
    }
}

/// The 16 linearly independent products {1, gamma^mu, sigma^{mu nu},
/// gamma^mu gamma^5, gamma^5}, each tagged with its distinct-gamma count.
pub fn gamma_basis() -> Vec<BasisElement> {
    let mut basis = Vec::with_capacity(16);
    basis.push(BasisElement {
        matrix: SpinorMatrix::unit(),
        label: "unit".into(),
        gamma_count: 0,
    });
    for mu in 0..4 {
        basis.push(BasisElement {
            matrix: SpinorMatrix::gamma(mu),
            label: format!("gamma{mu}"),
            gamma_count: 1,
        });
    }
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            // sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu] = i gamma^mu gamma^nu.
            let m = (SpinorMatrix::gamma(mu) * SpinorMatrix::gamma(nu)).scale(I);
            basis.push(BasisElement {
                matrix: m,
                label: format!("sigma{mu}{nu}"),
                gamma_count: 2,
            });
        }
    }
    for mu in 0..4 {
        basis.push(BasisElement {
            matrix: SpinorMatrix::gamma(mu) * SpinorMatrix::gamma5(),
            label: format!("gamma{mu}_gamma5"),
            gamma_count: 3,
        });
    }
    basis.push(BasisElement {
        matrix: SpinorMatrix::gamma5(),
        label: "gamma5".into(),
        gamma_count: 4,
    });
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cplx {
        Complex::new(re, im)
    }

    #[test]
    fn sigma3_is_diag_1_m1_1_m1() {
        let s3 = SpinorMatrix::sigma(3);
        let expected = SpinorMatrix::from_rows([
            [c(1.0, 0.0), ZERO, ZERO, ZERO],
            [ZERO, c(-1.0, 0.0), ZERO, ZERO],
            [ZERO, ZERO, c(1.0, 0.0), ZERO],
            [ZERO, ZERO, ZERO, c(-1.0, 0.0)],
        ]);
        assert_eq!(s3, expected);
        // Sigma_k really is gamma^5 alpha_k.
        for k in 1..=3 {
            assert_eq!(
                SpinorMatrix::gamma5() * SpinorMatrix::alpha(k),
                SpinorMatrix::sigma(k)
            );
        }
    }

    #[test]
    fn clifford_relations_hold_exactly() {
        let eta = [1.0, -1.0, -1.0, -1.0];
        for (mu, &eta_mu) in eta.iter().enumerate() {
            for nu in 0..4 {
                let anti = SpinorMatrix::gamma(mu).anticommutator(&SpinorMatrix::gamma(nu));
                let expected = if mu == nu {
                    SpinorMatrix::unit().scale_re(2.0 * eta_mu)
                } else {
                    SpinorMatrix::zero()
                };
                assert_eq!(anti, expected, "anticommutator of gamma{mu}, gamma{nu}");
            }
        }
        // gamma^5 anticommutes with every gamma^mu and squares to one.
        for mu in 0..4 {
            assert_eq!(
                SpinorMatrix::gamma5().anticommutator(&SpinorMatrix::gamma(mu)),
                SpinorMatrix::zero()
            );
        }
        assert_eq!(
            SpinorMatrix::gamma5() * SpinorMatrix::gamma5(),
            SpinorMatrix::unit()
        );
    }

    #[test]
    fn alpha_and_sigma_su2_structure() {
        // [Sigma_i, Sigma_j] = 2i eps_ijk Sigma_k, and likewise [alpha_i, alpha_j] = 2i eps_ijk Sigma_k.
        let eps = [(1, 2, 3, 1.0), (2, 3, 1, 1.0), (3, 1, 2, 1.0)];
        for &(i, j, k, s) in &eps {
            let comm = SpinorMatrix::sigma(i).commutator(&SpinorMatrix::sigma(j));
            assert_eq!(comm, SpinorMatrix::sigma(k).scale(c(0.0, 2.0 * s)));
            let comm_a = SpinorMatrix::alpha(i).commutator(&SpinorMatrix::alpha(j));
            assert_eq!(comm_a, SpinorMatrix::sigma(k).scale(c(0.0, 2.0 * s)));
        }
        // Frozen example: [alpha_3, Sigma_1] = 2i alpha_2.
        let comm = SpinorMatrix::alpha(3).commutator(&SpinorMatrix::sigma(1));
        assert_eq!(comm, SpinorMatrix::alpha(2).scale(c(0.0, 2.0)));
        // {alpha_1, gamma^5} = 2 gamma^5 alpha_1.
        let anti = SpinorMatrix::alpha(1).anticommutator(&SpinorMatrix::gamma5());
        assert_eq!(
            anti,
            (SpinorMatrix::gamma5() * SpinorMatrix::alpha(1)).scale_re(2.0)
        );
    }

    #[test]
    fn basis_is_trace_orthogonal_and_counts_are_fixed() {
        let basis = gamma_basis();
        assert_eq!(basis.len(), 16);
        for (a, ea) in basis.iter().enumerate() {
            for (b, eb) in basis.iter().enumerate() {
                let t = (ea.matrix.adjoint() * eb.matrix).trace();
                let expected = if a == b { c(4.0, 0.0) } else { ZERO };
                assert_eq!(
                    t, expected,
                    "trace pairing of {} with {}",
                    ea.label, eb.label
                );
            }
        }
        let mut counts = [0usize; 5];
        for e in &basis {
            counts[e.gamma_count as usize] += 1;
        }
        assert_eq!(counts, [1, 4, 6, 4, 1]);
    }

    #[test]
    fn hermitization_is_canonical() {
        for e in gamma_basis() {
            let (h, label) = e.hermitized();
            assert!(h.is_hermitian(0.0), "{label} not Hermitian");
            // A fixed set of elements picks up an overall sign under the
            // first-entry phase rule: i * (i gamma^0 gamma^k) = -alpha_k
            // (flipped back for k = 1, 3 whose leading entry is real), and
            // gamma^2 gamma^5 whose leading entry is -i.
            if label.starts_with("neg_") {
                let expected = ["neg_i_sigma01", "neg_i_sigma03", "neg_gamma2_gamma5"];
                assert!(
                    expected.contains(&label.as_str()),
                    "unexpected sign flip for {label}"
                );
            }
        }
        // sigma^{0k} lands on +/- alpha_k; the sign is a phase convention and
        // every condition checked downstream is insensitive to it.
        for (k, sign) in [(1usize, 1.0), (2, -1.0), (3, 1.0)] {
            let e = gamma_basis()
                .into_iter()
                .find(|e| e.label == format!("sigma0{k}"))
                .unwrap();
            assert_eq!(e.hermitized().0, SpinorMatrix::alpha(k).scale_re(sign));
        }
        // The axial-timelike element lands exactly on i gamma^0 gamma^5.
        let axial = gamma_basis()
            .into_iter()
            .find(|e| e.label == "gamma0_gamma5")
            .unwrap();
        let (h, label) = axial.hermitized();
        assert_eq!(label, "i_gamma0_gamma5");
        let expected = (SpinorMatrix::gamma(0) * SpinorMatrix::gamma5()).scale(I);
        assert_eq!(h, expected);
        assert_eq!(h.0[(0, 2)], c(0.0, 1.0));
        assert_eq!(h.0[(2, 0)], c(0.0, -1.0));
    }

    #[test]
    fn alpha_dot_identity_on_unit_vectors() {
        // (alpha.A)(alpha.B) = A.B + i (A x B).Sigma, exact on integer vectors.
        let a = [1.0, 0.0, 0.0];
        let b = [0.0, 1.0, 0.0];
        let lhs =
            SpinorMatrix::dot3(a, SpinorMatrix::alpha) * SpinorMatrix::dot3(b, SpinorMatrix::alpha);
        let rhs = SpinorMatrix::sigma(3).scale(I); // A.B = 0, A x B = e_z
        assert_eq!(lhs, rhs);
    }
}
