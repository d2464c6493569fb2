//! Dense factorizations backed by `nalgebra` (SVD, pseudo-inverse, solves).

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

/// Relative singular-value cutoff for numerical rank decisions.
pub const PINV_RCOND: f64 = 1e-10;

fn to_na(m: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

fn from_na(m: &DMatrix<Complex64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let tall = if m.rows() < m.cols() { m.adjoint() } else { m.clone() };
    let mut s: Vec<f64> = to_na(&tall).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Ratio of largest to smallest singular value (infinite when singular).
pub fn condition_number(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

fn svd_pinv(m: &CMatrix, rcond: f64) -> CMatrix {
    let svd = to_na(m).svd(true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = rcond * sigma_max;
    let u = svd.u.as_ref().expect("left singular vectors requested");
    let v_t = svd.v_t.as_ref().expect("right singular vectors requested");
    let mut out = DMatrix::<Complex64>::zeros(m.cols(), m.rows());
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= cutoff || s == 0.0 {
            continue;
        }
        let inv = 1.0 / s;
        for i in 0..m.cols() {
            // V = v_t^dagger
            let vik = v_t[(k, i)].conj() * inv;
            if vik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..m.rows() {
                out[(i, j)] += vik * u[(j, k)].conj();
            }
        }
    }
    from_na(&out)
}

/// `(M^dagger M)^+ M^dagger` from a Hermitian eigendecomposition.
fn gram_pinv(m: &CMatrix, rcond: f64) -> CMatrix {
    let gram = (&m.adjoint() * m).hermitian_part();
    let eig = super::hermitian_eigs(&gram).expect("Gram matrix is Hermitian");
    let top = eig.values.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = (rcond * top.sqrt()).powi(2).max(top * 1e-13);
    let inv = eig.map_spectrum(|x| if x > cutoff { 1.0 / x } else { 0.0 });
    &inv * &m.adjoint()
}

/// Moore-Penrose pseudo-inverse; singular values below `rcond * sigma_max`
/// are treated as zero.
///
/// The SVD runs on the tall orientation and the result is checked against
/// `M M^+ M = M`; on failure the Gram-matrix route is used instead.
pub fn pseudo_inverse(m: &CMatrix, rcond: f64) -> CMatrix {
    if m.rows() < m.cols() {
        return pseudo_inverse(&m.adjoint(), rcond).adjoint();
    }
    let p = svd_pinv(m, rcond);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    if (&(m * &p) * m).distance(m) <= 1e-9 * scale {
        return p;
    }
    gram_pinv(m, rcond)
}

/// Numerical rank with the same cutoff rule as [`pseudo_inverse`].
pub fn rank(m: &CMatrix, rcond: f64) -> usize {
    let s = singular_values(m);
    let cutoff = rcond * s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&x| x > cutoff && x > 0.0).count()
}

/// Inverse of a square matrix.
pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "cannot invert a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    to_na(m)
        .try_inverse()
        .map(|inv| from_na(&inv))
        .ok_or(Error::NotInvertible {
            condition: f64::INFINITY,
        })
}

/// Orthonormalizes the columns of `m` (thin QR via modified Gram-Schmidt)
/// and fixes the phase so that every diagonal entry of R is real positive.
///
/// Returns `None` if the columns are numerically dependent.
pub fn orthonormalize_columns(m: &CMatrix) -> Option<CMatrix> {
    let (rows, cols) = m.shape();
    let mut q = m.clone();
    for j in 0..cols {
        for k in 0..j {
            let mut proj = Complex64::new(0.0, 0.0);
            for i in 0..rows {
                proj += q[(i, k)].conj() * q[(i, j)];
            }
            for i in 0..rows {
                let qik = q[(i, k)];
                q[(i, j)] -= proj * qik;
            }
        }
        let norm = (0..rows).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for i in 0..rows {
            q[(i, j)] /= norm;
        }
    }
    // Re-orthogonalize once: MGS alone loses orthogonality at the 1e-14 level.
    for j in 0..cols {
        for k in 0..j {
            let mut proj = Complex64::new(0.0, 0.0);
            for i in 0..rows {
                proj += q[(i, k)].conj() * q[(i, j)];
            }
            for i in 0..rows {
                let qik = q[(i, k)];
                q[(i, j)] -= proj * qik;
            }
        }
        let norm = (0..rows).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..rows {
            q[(i, j)] /= norm;
        }
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinv_of_rank_one() {
        let m = CMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]);
        let p = pseudo_inverse(&m, PINV_RCOND);
        let expected = CMatrix::from_real_rows(&[&[0.25, 0.25], &[0.25, 0.25]]);
        assert!(p.distance(&expected) < 1e-12);
        assert_eq!(rank(&m, PINV_RCOND), 1);
    }

    #[test]
    fn inverse_and_condition() {
        let m = CMatrix::diag_real(&[2.0, 0.5]);
        assert!((condition_number(&m) - 4.0).abs() < 1e-12);
        let inv = inverse(&m).unwrap();
        assert!(inv.distance(&CMatrix::diag_real(&[0.5, 2.0])) < 1e-14);
        assert!(inverse(&CMatrix::zeros(2, 2)).is_err());
    }

    fn penrose_defect(m: &CMatrix, p: &CMatrix) -> f64 {
        (&(m * p) * m).distance(m) + (&(p * m) * p).distance(p)
    }

    #[test]
    fn both_pinv_routes_satisfy_penrose() {
        let mut rng = crate::opalg::rng_from_seed(3);
        let a = crate::opalg::random::ginibre(12, 5, &mut rng);
        let b = crate::opalg::random::ginibre(5, 30, &mut rng);
        let wide = &a * &b;
        for m in [wide.clone(), wide.adjoint()] {
            assert!(penrose_defect(&m, &pseudo_inverse(&m, PINV_RCOND)) < 1e-10);
            let g = if m.rows() >= m.cols() { gram_pinv(&m, PINV_RCOND) } else { gram_pinv(&m.adjoint(), PINV_RCOND).adjoint() };
            assert!(penrose_defect(&m, &g) < 1e-8);
        }
        assert_eq!(rank(&wide, PINV_RCOND), 5);
    }
}
