//! Dense complex operator algebra: tensor products, partial trace and
//! transpose, Hermitian spectra, canonical bipartite operators and seeded
//! random generators.

mod eig;
pub mod linalg;
mod matrix;
pub mod random;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eig::{hermitian_eigs_tol, HermitianEigen};
pub use matrix::{kron, kron_all, CMatrix};
pub(crate) use matrix::{ONE, ZERO};
pub use random::{random_channel, random_state, random_unitary, rng_from_seed, SeededRng};

/// Numerical tolerances shared by the checks in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Hermiticity (max entrywise deviation).
    pub herm: f64,
    /// Negative eigenvalue allowance for positivity.
    pub psd: f64,
    /// Unit-trace deviation.
    pub tr: f64,
    /// Kraus completeness / trace preservation.
    pub tp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-9,
            psd: 1e-9,
            tr: 1e-9,
            tp: 1e-9,
        }
    }
}

/// Which tensor factor of a bipartite operator an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Subsystem dimensions `(d1, d2)` of a bipartite operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimPair {
    pub first: usize,
    pub second: usize,
}

impl DimPair {
    pub fn new(first: usize, second: usize) -> Self {
        Self { first, second }
    }

    pub fn total(&self) -> usize {
        self.first * self.second
    }

    fn check_square(&self, m: &CMatrix) -> Result<()> {
        if !m.is_square() || m.rows() != self.total() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator does not match subsystem dimensions ({}, {})",
                m.rows(),
                m.cols(),
                self.first,
                self.second
            )));
        }
        Ok(())
    }
}

/// Density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(mat: CMatrix, tol: &Tolerances) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch("density matrix must be square".into()));
        }
        let deviation = mat.hermiticity_defect();
        if deviation > tol.herm {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > tol.tr || tr.im.abs() > tol.tr {
            return Err(Error::Precondition(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        let (is_psd, min_eig) = min_eig_psd(&mat, tol.psd)?;
        if !is_psd {
            return Err(Error::NotPsd { min_eig });
        }
        Ok(Self { mat })
    }

    pub(crate) fn new_unchecked(mat: CMatrix) -> Self {
        Self { mat }
    }

    /// Pure state `|v><v|` from a unit ket.
    pub fn pure(ket: &CMatrix) -> Result<Self> {
        if ket.cols() != 1 {
            return Err(Error::DimensionMismatch("pure state needs a column vector".into()));
        }
        Self::new(CMatrix::projector(ket), &Tolerances::default())
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self::new_unchecked(CMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }
}

impl AsRef<CMatrix> for DensityMatrix {
    fn as_ref(&self) -> &CMatrix {
        &self.mat
    }
}

/// Traces out subsystem `which`, returning the operator on the other factor.
pub fn partial_trace(m: &CMatrix, dims: DimPair, which: Subsystem) -> Result<CMatrix> {
    dims.check_square(m)?;
    let (d1, d2) = (dims.first, dims.second);
    Ok(match which {
        Subsystem::Second => CMatrix::from_fn(d1, d1, |a, c| {
            (0..d2).map(|b| m[(a * d2 + b, c * d2 + b)]).sum()
        }),
        Subsystem::First => CMatrix::from_fn(d2, d2, |b, e| {
            (0..d1).map(|a| m[(a * d2 + b, a * d2 + e)]).sum()
        }),
    })
}

/// Transposes tensor factor `which` in place of the full operator.
pub fn partial_transpose(m: &CMatrix, dims: DimPair, which: Subsystem) -> Result<CMatrix> {
    dims.check_square(m)?;
    let d2 = dims.second;
    let n = dims.total();
    Ok(CMatrix::from_fn(n, n, |r, c| {
        let (a, b) = (r / d2, r % d2);
        let (a2, b2) = (c / d2, c % d2);
        match which {
            Subsystem::Second => m[(a * d2 + b2, a2 * d2 + b)],
            Subsystem::First => m[(a2 * d2 + b, a * d2 + b2)],
        }
    }))
}

/// Eigen-decomposition with the default Hermiticity tolerance.
pub fn hermitian_eigs(m: &CMatrix) -> Result<HermitianEigen> {
    hermitian_eigs_tol(m, Tolerances::default().herm)
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigs(m)?.values)
}

/// Smallest eigenvalue of a Hermitian matrix and whether it clears `-tol`.
pub fn min_eig_psd(m: &CMatrix, tol: f64) -> Result<(bool, f64)> {
    let eig = hermitian_eigs(m)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    Ok((min >= -tol, min))
}

/// `|phi_d> = d^{-1/2} sum_i |i>|i>` as a `d^2 x 1` column.
pub fn max_entangled(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!(
            "maximally entangled state needs d >= 2, got {d}"
        )));
    }
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = CMatrix::zeros(d * d, 1);
    for i in 0..d {
        v[(i * d + i, 0)] = amp;
    }
    Ok(v)
}

/// Swap operator `F = sum_{ij} |i>|j><j|<i|` on `C^d (x) C^d`.
pub fn swap_operator(d: usize) -> CMatrix {
    let n = d * d;
    let mut f = CMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            f[(i * d + j, j * d + i)] = ONE;
        }
    }
    f
}

/// Projection of a Hermitian matrix onto the PSD cone (eigenvalue clipping).
pub fn project_psd(m: &CMatrix) -> Result<CMatrix> {
    Ok(hermitian_eigs(m)?.map_spectrum(|x| x.max(0.0)))
}

/// Hermitian square root of a PSD matrix; negative eigenvalues clip to zero.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    Ok(hermitian_eigs(m)?.map_spectrum(|x| x.max(0.0).sqrt()))
}

/// Inverse square root of a positive definite matrix.
pub fn inv_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eigs(m)?;
    if let Some(&min) = eig.values.first() {
        if min <= 0.0 {
            return Err(Error::NotPsd { min_eig: min });
        }
    }
    Ok(eig.map_spectrum(|x| 1.0 / x.sqrt()))
}

/// Trace norm of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pauli_x() -> CMatrix {
        CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    fn pauli_z() -> CMatrix {
        CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
    }

    #[test]
    fn kron_identity_and_diagonal() {
        assert_eq!(kron(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
        let k = kron(&CMatrix::diag_real(&[1.0, 2.0]), &CMatrix::diag_real(&[3.0, 4.0]));
        assert_eq!(k, CMatrix::diag_real(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn kron_matches_entrywise_definition() {
        let (x, z) = (pauli_x(), pauli_z());
        let k = kron(&x, &z);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(k[(i * 2 + p, j * 2 + q)], x[(i, j)] * z[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_trace_of_product_state() {
        let mut rng = rng_from_seed(1);
        for d in 2..=4 {
            let rho = random::random_state_with(d, &mut rng).into_matrix();
            let sigma = random::random_hermitian_with(d, &mut rng);
            let pt = partial_trace(&kron(&rho, &sigma), DimPair::new(d, d), Subsystem::Second).unwrap();
            assert!(pt.distance(&rho.scale(sigma.trace())) < 1e-12);
        }
    }

    #[test]
    fn marginals_of_max_entangled_are_maximally_mixed() {
        for d in 2..=6 {
            let phi = max_entangled(d).unwrap();
            assert_abs_diff_eq!(phi.frobenius_norm(), 1.0, epsilon = 1e-14);
            let proj = CMatrix::projector(&phi);
            let mixed = CMatrix::identity(d).scale_real(1.0 / d as f64);
            for which in [Subsystem::First, Subsystem::Second] {
                let m = partial_trace(&proj, DimPair::new(d, d), which).unwrap();
                assert!(m.distance(&mixed) < 1e-14);
            }
        }
        let phi2 = max_entangled(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (z, e) in phi2.as_slice().iter().zip([s, 0.0, 0.0, s]) {
            assert_abs_diff_eq!(z.re, e, epsilon = 1e-15);
            assert_eq!(z.im, 0.0);
        }
        assert!(max_entangled(1).is_err());
    }

    #[test]
    fn partial_trace_matches_four_index_sum() {
        let mut rng = rng_from_seed(2);
        let m = random::random_hermitian_with(6, &mut rng);
        let (d1, d2) = (2, 3);
        let t2 = partial_trace(&m, DimPair::new(d1, d2), Subsystem::Second).unwrap();
        let t1 = partial_trace(&m, DimPair::new(d1, d2), Subsystem::First).unwrap();
        for a in 0..d1 {
            for c in 0..d1 {
                let mut s = Complex64::new(0.0, 0.0);
                for b in 0..d2 {
                    for e in 0..d2 {
                        if b == e {
                            s += m[(a * d2 + b, c * d2 + e)];
                        }
                    }
                }
                assert!((t2[(a, c)] - s).norm() < 1e-14);
            }
        }
        for b in 0..d2 {
            for e in 0..d2 {
                let mut s = Complex64::new(0.0, 0.0);
                for a in 0..d1 {
                    for c in 0..d1 {
                        if a == c {
                            s += m[(a * d2 + b, c * d2 + e)];
                        }
                    }
                }
                assert!((t1[(b, e)] - s).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn partial_trace_dimension_errors() {
        let m = CMatrix::identity(6);
        assert!(partial_trace(&m, DimPair::new(2, 2), Subsystem::First).is_err());
        assert!(partial_transpose(&m, DimPair::new(4, 2), Subsystem::Second).is_err());
        assert!(partial_trace(&CMatrix::zeros(4, 2), DimPair::new(2, 2), Subsystem::First).is_err());
    }

    #[test]
    fn partial_transpose_product_and_involution() {
        let mut rng = rng_from_seed(3);
        let rho = random::random_state_with(2, &mut rng).into_matrix();
        let sigma = random::random_state_with(3, &mut rng).into_matrix();
        let dims = DimPair::new(2, 3);
        let pt = partial_transpose(&kron(&rho, &sigma), dims, Subsystem::Second).unwrap();
        assert!(pt.distance(&kron(&rho, &sigma.transpose())) < 1e-15);
        let pt1 = partial_transpose(&kron(&rho, &sigma), dims, Subsystem::First).unwrap();
        assert!(pt1.distance(&kron(&rho.transpose(), &sigma)) < 1e-15);
        let m = random::ginibre(6, 6, &mut rng);
        let back = partial_transpose(&partial_transpose(&m, dims, Subsystem::First).unwrap(), dims, Subsystem::First).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn partial_transpose_of_bell_projector_is_half_swap() {
        let proj = CMatrix::projector(&max_entangled(2).unwrap());
        let pt = partial_transpose(&proj, DimPair::new(2, 2), Subsystem::Second).unwrap();
        assert!(pt.distance(&swap_operator(2).scale_real(0.5)) < 1e-15);
        let vals = eigenvalues(&pt).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (v, e) in vals.iter().zip(expected) {
            assert_abs_diff_eq!(*v, e, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigs_known_spectra() {
        let e = hermitian_eigs(&CMatrix::diag_real(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        let e = hermitian_eigs(&pauli_x()).unwrap();
        assert_abs_diff_eq!(e.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn eigs_reconstruct_random_hermitian() {
        let mut rng = rng_from_seed(4);
        let m = random::random_hermitian_with(8, &mut rng);
        let e = hermitian_eigs(&m).unwrap();
        assert!(e.reconstruct().distance(&m) < 1e-10);
        let v = &e.vectors;
        assert!((&v.adjoint() * v).distance(&CMatrix::identity(8)) < 1e-10);
    }

    #[test]
    fn min_eig_examples() {
        let (ok, min) = min_eig_psd(&CMatrix::identity(3).scale_real(1.0 / 3.0), 1e-9).unwrap();
        assert!(ok);
        assert_abs_diff_eq!(min, 1.0 / 3.0, epsilon = 1e-14);
        let (ok, min) = min_eig_psd(&swap_operator(2).scale_real(0.5), 1e-9).unwrap();
        assert!(!ok);
        assert_abs_diff_eq!(min, -0.5, epsilon = 1e-14);
        let (ok, min) = min_eig_psd(&CMatrix::zeros(3, 3), 1e-9).unwrap();
        assert!(ok);
        assert_eq!(min, 0.0);
        let not_herm = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(min_eig_psd(&not_herm, 1e-9).is_err());
    }

    #[test]
    fn swap_operator_properties() {
        let f2 = swap_operator(2);
        let expected = CMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(f2, expected);
        let mut rng = rng_from_seed(5);
        for d in 2..=4 {
            let f = swap_operator(d);
            assert_eq!(&f * &f, CMatrix::identity(d * d));
            assert!(f.is_hermitian(0.0));
            let u = random::random_ket_with(d, &mut rng);
            let v = random::random_ket_with(d, &mut rng);
            assert!((&f * &kron(&u, &v)).distance(&kron(&v, &u)) < 1e-15);
            // F^Gamma = d |phi_d><phi_d|, checked entrywise.
            let pt = partial_transpose(&f, DimPair::new(d, d), Subsystem::Second).unwrap();
            for r in 0..d * d {
                for c in 0..d * d {
                    let (i, j) = (r / d, r % d);
                    let (k, l) = (c / d, c % d);
                    let expected = if i == j && k == l { 1.0 } else { 0.0 };
                    assert_eq!(pt[(r, c)], Complex64::new(expected, 0.0));
                }
            }
        }
    }

    #[test]
    fn density_matrix_validation() {
        let tol = Tolerances::default();
        assert!(DensityMatrix::new(CMatrix::identity(2).scale_real(0.5), &tol).is_ok());
        assert!(DensityMatrix::new(CMatrix::identity(2), &tol).is_err());
        assert!(DensityMatrix::new(CMatrix::diag_real(&[1.5, -0.5]), &tol).is_err());
    }
}
