//! Channel representations and conversions.
//!
//! Conventions:
//! * Choi matrices use the trace-one normalization
//!   `J(N) = (I (x) N)(|phi_d><phi_d|)`, input factor first.
//! * Superoperators act on column-stacked operators, so `rho -> A rho B^dagger`
//!   has matrix `conj(B) (x) A`.
//! * The Stinespring isometry maps into `B (x) E` with the output `B` as the
//!   slow index and one environment level per Kraus operator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::opalg::{
    self, hermitian_eigs, kron, partial_trace, CMatrix, DimPair, Subsystem, Tolerances,
};

/// Completely positive trace-preserving map in Kraus form.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<CMatrix>,
}

impl Channel {
    /// Validates shapes and Kraus completeness with the default tolerance.
    pub fn new(dim_in: usize, dim_out: usize, kraus: Vec<CMatrix>) -> Result<Self> {
        Self::new_with_tol(dim_in, dim_out, kraus, Tolerances::default().tp)
    }

    pub fn new_with_tol(dim_in: usize, dim_out: usize, kraus: Vec<CMatrix>, tp_tol: f64) -> Result<Self> {
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::InvalidDimension("channel dimensions must be positive".into()));
        }
        if kraus.is_empty() {
            return Err(Error::InvalidDimension("channel needs at least one Kraus operator".into()));
        }
        for (i, k) in kraus.iter().enumerate() {
            if k.shape() != (dim_out, dim_in) {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator {i} is {}x{}, expected {dim_out}x{dim_in}",
                    k.rows(),
                    k.cols()
                )));
            }
            if !k.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let residual = completeness_residual(&kraus, dim_in);
        if residual > tp_tol {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(Self {
            dim_in,
            dim_out,
            kraus,
        })
    }

    /// Rescales an almost complete Kraus set so that it is exactly trace
    /// preserving: `K_i -> K_i S^{-1/2}` with `S = sum K^dagger K`.
    pub fn from_kraus_normalized(dim_in: usize, dim_out: usize, kraus: Vec<CMatrix>) -> Result<Self> {
        let mut s = CMatrix::zeros(dim_in, dim_in);
        for k in &kraus {
            s += &(&k.adjoint() * k);
        }
        let fix = opalg::inv_sqrt(&s)?;
        let kraus = kraus.iter().map(|k| k * &fix).collect();
        Self::new(dim_in, dim_out, kraus)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim_in: d,
            dim_out: d,
            kraus: vec![CMatrix::identity(d)],
        }
    }

    /// `rho -> U rho U^dagger`; `u` must be unitary.
    pub fn unitary(u: CMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::DimensionMismatch("unitary must be square".into()));
        }
        let d = u.rows();
        Self::new(d, d, vec![u])
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// `sum_i K_i rho K_i^dagger`; accepts any `d_in x d_in` operator.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        if rho.shape() != (self.dim_in, self.dim_in) {
            return Err(Error::DimensionMismatch(format!(
                "channel input is {0}x{0}, got {1}x{2}",
                self.dim_in,
                rho.rows(),
                rho.cols()
            )));
        }
        let mut out = CMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += &k.sandwich(rho);
        }
        Ok(out)
    }

    pub fn choi(&self) -> ChoiMatrix {
        choi(self)
    }

    pub fn superoperator(&self) -> SuperOperator {
        superoperator(self)
    }
}

/// Frobenius norm of `sum K^dagger K - I`.
pub fn completeness_residual(kraus: &[CMatrix], dim_in: usize) -> f64 {
    let mut s = CMatrix::identity(dim_in).scale_real(-1.0);
    for k in kraus {
        s += &(&k.adjoint() * k);
    }
    s.frobenius_norm()
}

/// Choi matrix with trace-one normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    mat: CMatrix,
    dim_in: usize,
    dim_out: usize,
}

impl ChoiMatrix {
    /// Checks PSD, unit trace, and that the output-traced marginal is `I/d`.
    pub fn new(mat: CMatrix, dim_in: usize, dim_out: usize, tol: &Tolerances) -> Result<Self> {
        let dims = DimPair::new(dim_in, dim_out);
        let marginal = partial_trace(&mat, dims, Subsystem::Second)?;
        let (is_psd, min_eig) = opalg::min_eig_psd(&mat, tol.herm.max(tol.psd))?;
        if !is_psd {
            return Err(Error::NotPsd { min_eig });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > tol.tr {
            return Err(Error::Precondition(format!("Choi matrix trace {} != 1", tr.re)));
        }
        let target = CMatrix::identity(dim_in).scale_real(1.0 / dim_in as f64);
        let residual = marginal.distance(&target);
        if residual > tol.tp {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(Self { mat, dim_in, dim_out })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dims(&self) -> DimPair {
        DimPair::new(self.dim_in, self.dim_out)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn to_kraus(&self) -> Result<Channel> {
        choi_to_kraus(self)
    }
}

/// `J(N) = (I (x) N)(|phi_d><phi_d|)`.
pub fn choi(ch: &Channel) -> ChoiMatrix {
    let (d, dout) = (ch.dim_in, ch.dim_out);
    let n = d * dout;
    let mut mat = CMatrix::zeros(n, n);
    for k in &ch.kraus {
        // (I (x) K)|Omega>, entry (i, b) = K[b, i]
        let v = CMatrix::from_fn(n, 1, |r, _| k[(r % dout, r / dout)]);
        mat += &CMatrix::projector(&v);
    }
    ChoiMatrix {
        mat: mat.scale_real(1.0 / d as f64),
        dim_in: d,
        dim_out: dout,
    }
}

/// Kraus operators from the eigenvectors of `J` with eigenvalue above `tau_psd`.
pub fn choi_to_kraus(j: &ChoiMatrix) -> Result<Channel> {
    let tol = Tolerances::default();
    let eig = hermitian_eigs(&j.mat)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min < -tol.psd {
        return Err(Error::NotPsd { min_eig: min });
    }
    let (d, dout) = (j.dim_in, j.dim_out);
    let mut kraus = Vec::new();
    for (k, &lambda) in eig.values.iter().enumerate() {
        if lambda <= tol.psd {
            continue;
        }
        let amp = (d as f64 * lambda).sqrt();
        kraus.push(CMatrix::from_fn(dout, d, |b, i| {
            eig.vectors[(i * dout + b, k)] * amp
        }));
    }
    if kraus.is_empty() {
        return Err(Error::Precondition("Choi matrix has no positive eigenvalue".into()));
    }
    Channel::new_with_tol(d, dout, kraus, tol.tp.max(1e-8))
}

/// Linear map on operators, stored as a `d_out^2 x d_in^2` matrix on
/// column-stacked vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperOperator {
    dim_in: usize,
    dim_out: usize,
    mat: CMatrix,
}

/// Result of [`is_cptp`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CptpCheck {
    pub cp: bool,
    pub tp: bool,
    /// Smallest eigenvalue of the (Hermitian part of the) Choi matrix.
    pub min_choi_eig: f64,
    /// Frobenius distance of the output-traced Choi matrix from `I/d`.
    pub tp_residual: f64,
    /// Deviation of the Choi matrix from Hermiticity.
    pub hermiticity_defect: f64,
}

impl SuperOperator {
    pub fn new(dim_in: usize, dim_out: usize, mat: CMatrix) -> Result<Self> {
        if mat.shape() != (dim_out * dim_out, dim_in * dim_in) {
            return Err(Error::DimensionMismatch(format!(
                "superoperator {}->{} needs a {}x{} matrix, got {}x{}",
                dim_in,
                dim_out,
                dim_out * dim_out,
                dim_in * dim_in,
                mat.rows(),
                mat.cols()
            )));
        }
        if !mat.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim_in, dim_out, mat })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim_in: d,
            dim_out: d,
            mat: CMatrix::identity(d * d),
        }
    }

    /// Superoperator of `X -> A X B^dagger`.
    pub fn sandwich(a: &CMatrix, b: &CMatrix) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch("sandwich factors differ in shape".into()));
        }
        Self::new(a.cols(), a.rows(), kron(&b.conj(), a))
    }

    /// Superoperator of `X -> A X A^dagger`.
    pub fn conjugation(a: &CMatrix) -> Self {
        Self {
            dim_in: a.cols(),
            dim_out: a.rows(),
            mat: kron(&a.conj(), a),
        }
    }

    /// Tabulates a linear map by evaluating it on the matrix units.
    pub fn from_linear_map(
        dim_in: usize,
        dim_out: usize,
        mut f: impl FnMut(&CMatrix) -> CMatrix,
    ) -> Result<Self> {
        let mut mat = CMatrix::zeros(dim_out * dim_out, dim_in * dim_in);
        for j in 0..dim_in {
            for i in 0..dim_in {
                let img = f(&CMatrix::unit(dim_in, dim_in, i, j));
                if img.shape() != (dim_out, dim_out) {
                    return Err(Error::DimensionMismatch(format!(
                        "linear map produced a {}x{} image, expected {dim_out}x{dim_out}",
                        img.rows(),
                        img.cols()
                    )));
                }
                let col = j * dim_in + i;
                let v = img.vectorize();
                for r in 0..dim_out * dim_out {
                    mat[(r, col)] = v[(r, 0)];
                }
            }
        }
        Self::new(dim_in, dim_out, mat)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.shape() != (self.dim_in, self.dim_in) {
            return Err(Error::DimensionMismatch(format!(
                "superoperator input is {0}x{0}, got {1}x{2}",
                self.dim_in,
                x.rows(),
                x.cols()
            )));
        }
        CMatrix::unvectorize(&(&self.mat * &x.vectorize()), self.dim_out, self.dim_out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            mat: self.mat.scale_real(s),
        }
    }

    /// Linear combination `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &SuperOperator, b: f64) -> Result<Self> {
        if (self.dim_in, self.dim_out) != (other.dim_in, other.dim_out) {
            return Err(Error::DimensionMismatch("superoperators act on different spaces".into()));
        }
        Self::new(
            self.dim_in,
            self.dim_out,
            &self.mat.scale_real(a) + &other.mat.scale_real(b),
        )
    }

    pub fn distance(&self, other: &SuperOperator) -> f64 {
        self.mat.distance(&other.mat)
    }

    /// Trace-one Choi matrix `(1/d) sum_ij E_ij (x) S(E_ij)` (not validated).
    pub fn choi_matrix(&self) -> CMatrix {
        let (d, dout) = (self.dim_in, self.dim_out);
        let n = d * dout;
        let inv_d = 1.0 / d as f64;
        CMatrix::from_fn(n, n, |r, c| {
            let (i, a) = (r / dout, r % dout);
            let (j, b) = (c / dout, c % dout);
            self.mat[(b * dout + a, j * d + i)] * inv_d
        })
    }

    /// Inverse of [`SuperOperator::choi_matrix`].
    pub fn from_choi_matrix(j: &CMatrix, dim_in: usize, dim_out: usize) -> Result<Self> {
        let n = dim_in * dim_out;
        if j.shape() != (n, n) {
            return Err(Error::DimensionMismatch("Choi matrix shape does not match dims".into()));
        }
        let d = dim_in as f64;
        let mut mat = CMatrix::zeros(dim_out * dim_out, dim_in * dim_in);
        for i in 0..dim_in {
            for a in 0..dim_out {
                for jj in 0..dim_in {
                    for b in 0..dim_out {
                        mat[(b * dim_out + a, jj * dim_in + i)] = j[(i * dim_out + a, jj * dim_out + b)] * d;
                    }
                }
            }
        }
        Self::new(dim_in, dim_out, mat)
    }
}

/// `outer o inner`: apply `inner` first.
pub fn compose(outer: &SuperOperator, inner: &SuperOperator) -> Result<SuperOperator> {
    if inner.dim_out != outer.dim_in {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose {}->{} after {}->{}",
            outer.dim_in, outer.dim_out, inner.dim_in, inner.dim_out
        )));
    }
    SuperOperator::new(inner.dim_in, outer.dim_out, &outer.mat * &inner.mat)
}

/// `sum_i conj(K_i) (x) K_i`.
pub fn superoperator(ch: &Channel) -> SuperOperator {
    let n_out = ch.dim_out * ch.dim_out;
    let n_in = ch.dim_in * ch.dim_in;
    let mut mat = CMatrix::zeros(n_out, n_in);
    for k in &ch.kraus {
        mat += &kron(&k.conj(), k);
    }
    SuperOperator {
        dim_in: ch.dim_in,
        dim_out: ch.dim_out,
        mat,
    }
}

/// `ch1 (x) ch2` with Kraus operators `K_i (x) L_j`.
pub fn tensor(ch1: &Channel, ch2: &Channel) -> Channel {
    let kraus = ch1
        .kraus
        .iter()
        .flat_map(|a| ch2.kraus.iter().map(move |b| kron(a, b)))
        .collect();
    Channel {
        dim_in: ch1.dim_in * ch2.dim_in,
        dim_out: ch1.dim_out * ch2.dim_out,
        kraus,
    }
}

/// `n`-fold tensor power.
pub fn tensor_power(ch: &Channel, n: usize) -> Channel {
    assert!(n >= 1, "tensor power needs n >= 1");
    (1..n).fold(ch.clone(), |acc, _| tensor(&acc, ch))
}

/// Channel with entrywise complex-conjugated Kraus operators.
pub fn conjugate_channel(ch: &Channel) -> Channel {
    Channel {
        dim_in: ch.dim_in,
        dim_out: ch.dim_out,
        kraus: ch.kraus.iter().map(CMatrix::conj).collect(),
    }
}

/// Isometric extension `V: A -> B (x) E`.
#[derive(Clone, Debug)]
pub struct Stinespring {
    pub isometry: CMatrix,
    pub dim_out: usize,
    pub dim_env: usize,
}

impl Stinespring {
    /// `V rho V^dagger` on `B (x) E`.
    pub fn dilate(&self, rho: &CMatrix) -> CMatrix {
        self.isometry.sandwich(rho)
    }

    pub fn dims(&self) -> DimPair {
        DimPair::new(self.dim_out, self.dim_env)
    }
}

pub fn stinespring(ch: &Channel) -> Stinespring {
    let (d, dout, de) = (ch.dim_in, ch.dim_out, ch.kraus.len());
    let v = CMatrix::from_fn(dout * de, d, |r, a| ch.kraus[r % de][(r / de, a)]);
    Stinespring {
        isometry: v,
        dim_out: dout,
        dim_env: de,
    }
}

/// Channel to the environment, `rho -> Tr_B(V rho V^dagger)`.
pub fn complementary(ch: &Channel) -> Channel {
    let (d, dout, de) = (ch.dim_in, ch.dim_out, ch.kraus.len());
    let kraus = (0..dout)
        .map(|b| CMatrix::from_fn(de, d, |e, a| ch.kraus[e][(b, a)]))
        .collect();
    Channel {
        dim_in: d,
        dim_out: de,
        kraus,
    }
}

/// Complete positivity and trace preservation of a general linear map.
///
/// A map whose Choi matrix is not Hermitian within `tol` is reported as not
/// CP; `min_choi_eig` then refers to the Hermitian part.
pub fn is_cptp(s: &SuperOperator, tol: f64) -> CptpCheck {
    let j = s.choi_matrix();
    let defect = j.hermiticity_defect();
    let herm = j.hermitian_part();
    let min_choi_eig = hermitian_eigs(&herm)
        .map(|e| e.values[0])
        .unwrap_or(f64::NEG_INFINITY);
    let marginal = partial_trace(&j, DimPair::new(s.dim_in, s.dim_out), Subsystem::Second)
        .expect("Choi matrix shape is consistent by construction");
    let target = CMatrix::identity(s.dim_in).scale_real(1.0 / s.dim_in as f64);
    let tp_residual = marginal.distance(&target);
    CptpCheck {
        cp: defect <= tol && min_choi_eig >= -tol,
        tp: tp_residual <= tol,
        min_choi_eig,
        tp_residual,
        hermiticity_defect: defect,
    }
}

/// `Tr(S(X)) - Tr(X)` over all matrix units, as a Frobenius norm.
pub fn trace_preservation_residual(s: &SuperOperator) -> f64 {
    let mut acc = 0.0;
    for j in 0..s.dim_in {
        for i in 0..s.dim_in {
            let col = j * s.dim_in + i;
            let tr: Complex64 = (0..s.dim_out)
                .map(|a| s.mat[(a * s.dim_out + a, col)])
                .sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            acc += (tr - Complex64::new(expected, 0.0)).norm_sqr();
        }
    }
    acc.sqrt()
}

/// The map `X -> Tr(X) sigma`.
pub fn replacement_superop(dim_in: usize, sigma: &CMatrix) -> Result<SuperOperator> {
    let dim_out = sigma.rows();
    SuperOperator::from_linear_map(dim_in, dim_out, |x| sigma.scale(x.trace()))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::{max_entangled, random, random_channel, rng_from_seed, swap_operator, ZERO};
    use approx::assert_abs_diff_eq;

    fn depolarizing_qubit(p: f64) -> Channel {
        let s = |w: f64| w.sqrt();
        let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let z = CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let y = CMatrix::from_rows(&[
            &[ZERO, Complex64::new(0.0, -1.0)],
            &[Complex64::new(0.0, 1.0), ZERO],
        ]);
        Channel::new(
            2,
            2,
            vec![
                CMatrix::identity(2).scale_real(s(1.0 - 3.0 * p / 4.0)),
                x.scale_real(s(p / 4.0)),
                y.scale_real(s(p / 4.0)),
                z.scale_real(s(p / 4.0)),
            ],
        )
        .unwrap()
    }

    fn bell() -> CMatrix {
        CMatrix::projector(&max_entangled(2).unwrap())
    }

    #[test]
    fn rejects_incomplete_kraus() {
        let err = Channel::new(2, 2, vec![CMatrix::identity(2).scale_real(0.9)]).unwrap_err();
        assert!(matches!(err, Error::NotTracePreserving { .. }));
        assert!(Channel::new(2, 2, vec![CMatrix::identity(3)]).is_err());
        assert!(Channel::new(2, 2, vec![]).is_err());
    }

    #[test]
    fn apply_examples() {
        let mut rng = rng_from_seed(10);
        let rho = random::random_state_with(3, &mut rng).into_matrix();
        assert_eq!(Channel::identity(3).apply(&rho).unwrap(), rho);
        let dep = depolarizing_qubit(1.0);
        let out = dep.apply(&random::random_state_with(2, &mut rng).into_matrix()).unwrap();
        assert!(out.distance(&CMatrix::identity(2).scale_real(0.5)) < 1e-14);
        let out = depolarizing_qubit(0.4).apply(&CMatrix::diag_real(&[1.0, 0.0])).unwrap();
        assert!(out.distance(&CMatrix::diag_real(&[0.8, 0.2])) < 1e-14);
        assert!(dep.apply(&CMatrix::identity(3)).is_err());
    }

    #[test]
    fn choi_examples() {
        assert!(choi(&Channel::identity(2)).matrix().distance(&bell()) < 1e-15);
        let full = choi(&depolarizing_qubit(1.0));
        assert!(full.matrix().distance(&CMatrix::identity(4).scale_real(0.25)) < 1e-15);
        for p in [0.1, 0.5, 0.9] {
            let expected = &bell().scale_real(1.0 - p) + &CMatrix::identity(4).scale_real(p / 4.0);
            assert!(choi(&depolarizing_qubit(p)).matrix().distance(&expected) < 1e-14);
        }
    }

    #[test]
    fn choi_to_kraus_round_trips() {
        let j = choi(&Channel::identity(2));
        let ch = choi_to_kraus(&j).unwrap();
        assert_eq!(ch.kraus().len(), 1);
        let k = &ch.kraus()[0];
        // identity up to a global phase
        let phase = k[(0, 0)];
        assert_abs_diff_eq!(phase.norm(), 1.0, epsilon = 1e-12);
        assert!(k.distance(&CMatrix::identity(2).scale(phase)) < 1e-12);

        let j = ChoiMatrix::new(CMatrix::identity(4).scale_real(0.25), 2, 2, &Tolerances::default()).unwrap();
        assert!(choi(&choi_to_kraus(&j).unwrap()).matrix().distance(j.matrix()) < 1e-10);

        for seed in 0..5 {
            let ch = random_channel(3, 2, 3, seed).unwrap();
            let j = choi(&ch);
            let back = choi_to_kraus(&j).unwrap();
            assert!(back.kraus().len() <= 6);
            assert!(choi(&back).matrix().distance(j.matrix()) < 1e-10);
        }
        let bad = SuperOperator::from_linear_map(2, 2, |x| x.transpose()).unwrap();
        assert!(ChoiMatrix::new(bad.choi_matrix(), 2, 2, &Tolerances::default()).is_err());
    }

    #[test]
    fn superoperator_consistency() {
        let mut rng = rng_from_seed(11);
        for seed in 0..5 {
            let ch = random_channel(2, 3, 2, seed).unwrap();
            let s = superoperator(&ch);
            let rho = random::random_state_with(2, &mut rng).into_matrix();
            assert!(s.apply(&rho).unwrap().distance(&ch.apply(&rho).unwrap()) < 1e-13);
            let back = SuperOperator::from_choi_matrix(&s.choi_matrix(), 2, 3).unwrap();
            assert!(back.distance(&s) < 1e-13);
            assert!(s.choi_matrix().distance(choi(&ch).matrix()) < 1e-13);
        }
        let s = superoperator(&random_channel(2, 2, 2, 3).unwrap());
        assert_eq!(compose(&SuperOperator::identity(2), &s).unwrap(), s);
        assert!(compose(&SuperOperator::identity(3), &s).is_err());
    }

    #[test]
    fn sandwich_vectorization_convention() {
        let mut rng = rng_from_seed(12);
        let a = random::ginibre(2, 3, &mut rng);
        let b = random::ginibre(2, 3, &mut rng);
        let x = random::ginibre(3, 3, &mut rng);
        let s = SuperOperator::sandwich(&a, &b).unwrap();
        let direct = &(&a * &x) * &b.adjoint();
        assert!(s.apply(&x).unwrap().distance(&direct) < 1e-13);
    }

    #[test]
    fn tensor_of_channels() {
        let id = tensor(&Channel::identity(2), &Channel::identity(3));
        assert_eq!(superoperator(&id), SuperOperator::identity(6));
        let mut rng = rng_from_seed(13);
        let c1 = random_channel(2, 2, 2, 1).unwrap();
        let c2 = random_channel(3, 2, 2, 2).unwrap();
        let rho = random::random_state_with(2, &mut rng).into_matrix();
        let sigma = random::random_state_with(3, &mut rng).into_matrix();
        let lhs = tensor(&c1, &c2).apply(&kron(&rho, &sigma)).unwrap();
        let rhs = kron(&c1.apply(&rho).unwrap(), &c2.apply(&sigma).unwrap());
        assert!(lhs.distance(&rhs) < 1e-13);
    }

    #[test]
    fn conjugate_channel_examples() {
        let real = depolarizing_qubit(0.3);
        let conj = conjugate_channel(&real);
        assert!(superoperator(&conj).distance(&superoperator(&real)) < 1e-15);
        let u = random::random_unitary(3, 4);
        let conj = conjugate_channel(&Channel::unitary(u.clone()).unwrap());
        assert_eq!(conj.kraus()[0], u.conj());
        let ch = random_channel(2, 2, 3, 9).unwrap();
        assert_eq!(conjugate_channel(&conjugate_channel(&ch)), ch);
    }

    #[test]
    fn stinespring_and_complementary() {
        let u = random::random_unitary(2, 5);
        let ch = Channel::unitary(u).unwrap();
        let dil = stinespring(&ch);
        assert_eq!(dil.dim_env, 1);
        let comp = complementary(&ch);
        let mut rng = rng_from_seed(14);
        let rho = random::random_state_with(2, &mut rng).into_matrix();
        assert!(comp.apply(&rho).unwrap().distance(&CMatrix::identity(1)) < 1e-14);

        for seed in 0..5 {
            let ch = random_channel(2, 3, 3, seed).unwrap();
            let dil = stinespring(&ch);
            let v = &dil.isometry;
            assert!((&v.adjoint() * v).distance(&CMatrix::identity(2)) < 1e-12);
            let rho = random::random_state_with(2, &mut rng).into_matrix();
            let big = dil.dilate(&rho);
            let tb = partial_trace(&big, dil.dims(), Subsystem::Second).unwrap();
            let te = partial_trace(&big, dil.dims(), Subsystem::First).unwrap();
            assert!(tb.distance(&ch.apply(&rho).unwrap()) < 1e-12);
            assert!(te.distance(&complementary(&ch).apply(&rho).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn cptp_examples() {
        let c = is_cptp(&superoperator(&random_channel(2, 3, 2, 1).unwrap()), 1e-9);
        assert!(c.cp && c.tp);
        let t = SuperOperator::from_linear_map(2, 2, |x| x.transpose()).unwrap();
        let c = is_cptp(&t, 1e-9);
        assert!(!c.cp && c.tp);
        assert_abs_diff_eq!(c.min_choi_eig, -0.5, epsilon = 1e-12);
        assert!(t.choi_matrix().distance(&swap_operator(2).scale_real(0.5)) < 1e-15);
        let c = is_cptp(&SuperOperator::identity(2).scale(1.5), 1e-9);
        assert!(!c.tp);
        assert_abs_diff_eq!(trace_preservation_residual(&SuperOperator::identity(2).scale(1.5)), 0.5 * 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn normalization_repairs_small_defects() {
        let k = CMatrix::identity(2).scale_real(1.0 + 1e-7);
        assert!(Channel::new(2, 2, vec![k.clone()]).is_err());
        let ch = Channel::from_kraus_normalized(2, 2, vec![k]).unwrap();
        assert!(completeness_residual(ch.kraus(), 2) < 1e-14);
    }
}
