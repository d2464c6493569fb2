//! Seeded random unitaries, isometries, channels and states.
//!
//! Every generator takes either a `u64` seed or a caller-owned RNG; the same
//! seed always reproduces bit-identical output.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linalg::orthonormalize_columns;
use super::matrix::CMatrix;
use super::DensityMatrix;
use crate::channel::Channel;
use crate::error::{Error, Result};

/// RNG used throughout the crate.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-random isometry `rows x cols` (`rows >= cols`).
pub fn random_isometry_with(rows: usize, cols: usize, rng: &mut impl Rng) -> Result<CMatrix> {
    if cols == 0 || rows < cols {
        return Err(Error::InvalidDimension(format!(
            "no isometry from dimension {cols} into dimension {rows}"
        )));
    }
    loop {
        // Gram-Schmidt with positive R diagonal is the phase-fixed QR.
        if let Some(q) = orthonormalize_columns(&ginibre(rows, cols, rng)) {
            return Ok(q);
        }
    }
}

pub fn random_unitary_with(d: usize, rng: &mut impl Rng) -> CMatrix {
    random_isometry_with(d, d, rng).expect("square isometry exists for d >= 1")
}

/// Haar-random `d x d` unitary.
pub fn random_unitary(d: usize, seed: u64) -> CMatrix {
    random_unitary_with(d, &mut rng_from_seed(seed))
}

pub fn random_channel_with(
    d_in: usize,
    d_out: usize,
    kraus_count: usize,
    rng: &mut impl Rng,
) -> Result<Channel> {
    if d_in == 0 || d_out == 0 || kraus_count == 0 {
        return Err(Error::InvalidDimension(
            "random channel needs positive dimensions and at least one Kraus operator".into(),
        ));
    }
    let v = random_isometry_with(kraus_count * d_out, d_in, rng)?;
    let kraus = (0..kraus_count)
        .map(|k| CMatrix::from_fn(d_out, d_in, |i, j| v[(k * d_out + i, j)]))
        .collect();
    Channel::new(d_in, d_out, kraus)
}

/// Channel whose stacked Kraus operators form a Haar-random isometry.
///
/// Requires `kraus_count * d_out >= d_in`.
pub fn random_channel(d_in: usize, d_out: usize, kraus_count: usize, seed: u64) -> Result<Channel> {
    random_channel_with(d_in, d_out, kraus_count, &mut rng_from_seed(seed))
}

pub fn random_state_with(d: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = ginibre(d, d, rng);
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    DensityMatrix::new_unchecked(rho.hermitian_part().scale_real(1.0 / tr))
}

/// Random full-rank mixed state (Hilbert-Schmidt measure).
pub fn random_state(d: usize, seed: u64) -> DensityMatrix {
    random_state_with(d, &mut rng_from_seed(seed))
}

/// Haar-random unit ket.
pub fn random_ket_with(d: usize, rng: &mut impl Rng) -> CMatrix {
    random_isometry_with(d, 1, rng).expect("d >= 1")
}

pub fn random_pure_state_with(d: usize, rng: &mut impl Rng) -> DensityMatrix {
    let v = random_ket_with(d, rng);
    DensityMatrix::new_unchecked(CMatrix::projector(&v).hermitian_part())
}

/// Random Hermitian matrix with Gaussian entries (GUE-like).
pub fn random_hermitian_with(d: usize, rng: &mut impl Rng) -> CMatrix {
    ginibre(d, d, rng).hermitian_part()
}
