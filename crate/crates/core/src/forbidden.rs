//! Forbidden transformations as incapacity certificates.
//!
//! If a map `R` is unphysical on a set of states, commutes past every
//! physical decoder (`R o D = D* o R` with `D*` physical), and `R o N` is
//! physical, then `N` cannot transmit those states: a code for `N` would give
//! a physical implementation of `R`.
//!
//! For the transpose `T` the commuting partner is the conjugate channel, and
//! `T o N` is physical exactly when the Choi matrix of `N` is PPT. Among
//! linear, invertible, trace-preserving maps that commute with all channels,
//! only the two families `(1-p) T + p Delta` and `(1-p) id + p Delta` exist;
//! [`classify_linear_map`] recognizes them and otherwise looks for a unitary
//! whose conjugated partner is not CP.

use serde::Serialize;

use crate::antideg::{self, FeasibilityOptions};
use crate::channel::{
    compose, conjugate_channel, is_cptp, replacement_superop, superoperator, tensor_power,
    trace_preservation_residual, Channel, SuperOperator,
};
use crate::error::{Error, Result};
use crate::opalg::random::random_unitary_with;
use crate::opalg::{
    linalg, max_entangled, min_eig_psd, partial_transpose, rng_from_seed, swap_operator, CMatrix,
    Subsystem, Tolerances,
};

/// Fit tolerance separating the commuting families from generic maps.
pub const TAU_FIT: f64 = 1e-8;
/// A sampled unitary is a witness when the partner's min Choi eigenvalue is
/// below `-TAU_WITNESS`.
pub const TAU_WITNESS: f64 = 1e-6;
pub const DEFAULT_SAMPLE_COUNT: usize = 64;
/// Maps with a larger condition number are rejected as non-invertible.
pub const MAX_CONDITION: f64 = 1e8;
/// Largest tensor power accepted by [`tensor_stability_check`].
pub const MAX_TENSOR_POWER: usize = 3;
const MAX_POWER_DIM: usize = 64;
const MAX_POWER_CHOI_DIM: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    TransposeFamily,
    IdentityFamily,
}

/// `R(rho) = (1-p) rho^T + p Tr(rho) I/d` or `(1-p) rho + p Tr(rho) I/d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ForbiddenMapFamily {
    pub kind: FamilyKind,
    pub p: f64,
    pub dim: usize,
}

impl ForbiddenMapFamily {
    pub fn new(kind: FamilyKind, p: f64, dim: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ParameterOutOfRange(format!("p = {p} not in [0, 1]")));
        }
        if dim < 2 {
            return Err(Error::InvalidDimension(format!("family needs d >= 2, got {dim}")));
        }
        Ok(Self { kind, p, dim })
    }

    pub fn superoperator(&self) -> SuperOperator {
        let base = match self.kind {
            FamilyKind::TransposeFamily => transpose_superop(self.dim).expect("dim >= 2"),
            FamilyKind::IdentityFamily => SuperOperator::identity(self.dim),
        };
        base.combine(1.0 - self.p, &completely_depolarizing_superop(self.dim), self.p)
            .expect("same dimensions")
    }
}

/// `X -> X^T` on `d x d` operators.
pub fn transpose_superop(d: usize) -> Result<SuperOperator> {
    if d < 1 {
        return Err(Error::InvalidDimension("transpose needs d >= 1".into()));
    }
    SuperOperator::from_linear_map(d, d, CMatrix::transpose)
}

/// `X -> Tr(X) I/d`.
pub fn completely_depolarizing_superop(d: usize) -> SuperOperator {
    replacement_superop(d, &CMatrix::identity(d).scale_real(1.0 / d as f64)).expect("square output")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PptVerdict {
    pub is_ppt: bool,
    /// Smallest eigenvalue of the partially transposed Choi matrix.
    pub min_eig: f64,
}

/// PPT test on the Choi matrix with the default positivity tolerance.
pub fn ppt_test(ch: &Channel) -> Result<PptVerdict> {
    ppt_test_with(ch, Tolerances::default().psd)
}

pub fn ppt_test_with(ch: &Channel, tol: f64) -> Result<PptVerdict> {
    let j = ch.choi();
    let pt = partial_transpose(j.matrix(), j.dims(), Subsystem::Second)?;
    let (is_ppt, min_eig) = min_eig_psd(&pt, tol)?;
    Ok(PptVerdict { is_ppt, min_eig })
}

/// `|| S(T o D) - S(D* o T) ||_F` with `D*` the conjugate channel.
pub fn verify_transpose_commutation(ch: &Channel) -> Result<f64> {
    if ch.dim_in() != ch.dim_out() {
        return Err(Error::Precondition(
            "transpose commutation is checked on channels with equal input and output dimension".into(),
        ));
    }
    let t = transpose_superop(ch.dim_in())?;
    let lhs = compose(&t, &superoperator(ch))?;
    let rhs = compose(&superoperator(&conjugate_channel(ch)), &t)?;
    Ok(lhs.distance(&rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TensorStability {
    pub n: usize,
    /// Smallest Choi eigenvalue of `T^{(x)n} o N^{(x)n}`.
    pub min_choi_eig: f64,
    /// `max(0, -min_choi_eig)`.
    pub residual: f64,
}

/// Physicality of `T^{(x)n} o N^{(x)n}` for a PPT channel.
///
/// The transpose on all `n` output copies is the full transpose on
/// `d_out^n`, composed at superoperator level and checked with [`is_cptp`].
pub fn tensor_stability_check(ch: &Channel, n: usize) -> Result<TensorStability> {
    if n == 0 || n > MAX_TENSOR_POWER {
        return Err(Error::SizeOverflow(format!(
            "tensor power n = {n} outside 1..={MAX_TENSOR_POWER}"
        )));
    }
    let din = ch.dim_in().pow(n as u32);
    let dout = ch.dim_out().pow(n as u32);
    if din > MAX_POWER_DIM || dout > MAX_POWER_DIM || din * dout > MAX_POWER_CHOI_DIM {
        return Err(Error::SizeOverflow(format!(
            "tensor power has dimensions {din} -> {dout}, limit {MAX_POWER_DIM} per side and Choi size {MAX_POWER_CHOI_DIM}"
        )));
    }
    let ppt = ppt_test(ch)?;
    if !ppt.is_ppt {
        return Err(Error::Precondition(format!(
            "channel is not PPT (min eigenvalue {:.3e})",
            ppt.min_eig
        )));
    }
    let power = superoperator(&tensor_power(ch, n));
    let composed = compose(&transpose_superop(dout)?, &power)?;
    let check = is_cptp(&composed, Tolerances::default().psd);
    Ok(TensorStability {
        n,
        min_choi_eig: check.min_choi_eig,
        residual: (-check.min_choi_eig).max(0.0),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateReason {
    /// `T o N` is physical (PPT Choi matrix).
    TimeReversal,
    /// `N` is antidegradable, so a code would yield a cloner.
    Cloning,
}

/// Diagnostics attached to a certificate.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CertificateDetail {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_eig: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feasibility_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrading_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginal_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clone_residual: Option<f64>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCapacityCertificate {
    pub reason: CertificateReason,
    pub channel_id: String,
    pub detail: CertificateDetail,
}

/// Options for [`lemma1_certify_with`].
#[derive(Clone, Debug, Default)]
pub struct CertifyOptions {
    pub tol: Tolerances,
    pub feasibility: FeasibilityOptions,
    pub seed: u64,
}

/// Runs both incapacity tests with default options.
pub fn lemma1_certify(ch: &Channel, channel_id: &str) -> Result<Vec<ZeroCapacityCertificate>> {
    lemma1_certify_with(ch, channel_id, &CertifyOptions::default())
}

/// Emits a time-reversal certificate when the channel is PPT and a cloning
/// certificate when it is antidegradable. An empty list means no incapacity
/// was detected, not that the channel has capacity.
pub fn lemma1_certify_with(
    ch: &Channel,
    channel_id: &str,
    opts: &CertifyOptions,
) -> Result<Vec<ZeroCapacityCertificate>> {
    let mut certs = Vec::new();
    let ppt = ppt_test_with(ch, opts.tol.psd)?;
    certs.extend(time_reversal_certificate(&ppt, channel_id));
    if let Some(cert) = antideg::cloning_certificate_with(ch, channel_id, &opts.feasibility, opts.seed)? {
        certs.push(cert);
    }
    Ok(certs)
}

/// Certificate for a PPT verdict; `None` when the channel is not PPT.
pub fn time_reversal_certificate(ppt: &PptVerdict, channel_id: &str) -> Option<ZeroCapacityCertificate> {
    ppt.is_ppt.then(|| ZeroCapacityCertificate {
        reason: CertificateReason::TimeReversal,
        channel_id: channel_id.to_string(),
        detail: CertificateDetail {
            min_eig: Some(ppt.min_eig),
            note: "partially transposed Choi matrix is PSD; T o N is a channel, and so is T o N^(x)n".into(),
            ..Default::default()
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum CommutationStatus {
    CommutingTranspose { p: f64 },
    CommutingIdentity { p: f64 },
    NonCommuting,
}

/// Outcome of [`classify_linear_map`].
#[derive(Clone, Debug, PartialEq)]
pub struct CommutationVerdict {
    pub status: CommutationStatus,
    /// Unitary `U` for which `R o N_U o R^{-1}` is not CP.
    pub witness_unitary: Option<CMatrix>,
    pub witness_min_eig: Option<f64>,
    /// Best family fit residual (Frobenius, superoperator level).
    pub residual: f64,
    pub samples_used: usize,
    /// Non-commuting verdict reached without a witness.
    pub sampling_incomplete: bool,
}

struct FamilyFit {
    kind: FamilyKind,
    p: f64,
    residual: f64,
}

fn fit_family(r: &SuperOperator, base: &SuperOperator, depol: &SuperOperator, kind: FamilyKind) -> FamilyFit {
    // r ~ base + p (depol - base)
    let dir = depol.matrix() - base.matrix();
    let target = r.matrix() - base.matrix();
    let p = dir.hs_inner(&target).re / dir.hs_inner(&dir).re;
    let fitted = base.combine(1.0 - p, depol, p).expect("same dimensions");
    FamilyFit {
        kind,
        p,
        residual: r.distance(&fitted),
    }
}

/// Classifies an invertible trace-preserving linear map on `d x d`
/// operators: fit to the two commuting families first, then search
/// `sample_count` Haar unitaries for a commutation witness.
pub fn classify_linear_map(r: &SuperOperator, d: usize, sample_count: usize, seed: u64) -> Result<CommutationVerdict> {
    if r.dim_in() != d || r.dim_out() != d {
        return Err(Error::DimensionMismatch(format!(
            "map acts {} -> {}, expected {d} -> {d}",
            r.dim_in(),
            r.dim_out()
        )));
    }
    let tp_residual = trace_preservation_residual(r);
    if tp_residual > Tolerances::default().tr {
        return Err(Error::NotTracePreserving { residual: tp_residual });
    }
    let condition = linalg::condition_number(r.matrix());
    if condition > MAX_CONDITION {
        return Err(Error::NotInvertible { condition });
    }

    let depol = completely_depolarizing_superop(d);
    let fits = [
        fit_family(r, &transpose_superop(d)?, &depol, FamilyKind::TransposeFamily),
        fit_family(r, &SuperOperator::identity(d), &depol, FamilyKind::IdentityFamily),
    ];
    let best = fits
        .into_iter()
        .min_by(|a, b| a.residual.total_cmp(&b.residual))
        .expect("two candidate fits");
    if best.residual < TAU_FIT {
        let status = match best.kind {
            FamilyKind::TransposeFamily => CommutationStatus::CommutingTranspose { p: best.p },
            FamilyKind::IdentityFamily => CommutationStatus::CommutingIdentity { p: best.p },
        };
        return Ok(CommutationVerdict {
            status,
            witness_unitary: None,
            witness_min_eig: None,
            residual: best.residual,
            samples_used: 0,
            sampling_incomplete: false,
        });
    }

    let r_inv = SuperOperator::new(d, d, linalg::inverse(r.matrix())?)?;
    let mut rng = rng_from_seed(seed);
    for k in 0..sample_count {
        let u = random_unitary_with(d, &mut rng);
        let partner = compose(r, &compose(&SuperOperator::conjugation(&u), &r_inv)?)?;
        let check = is_cptp(&partner, TAU_WITNESS);
        if check.min_choi_eig < -TAU_WITNESS || check.hermiticity_defect > TAU_WITNESS {
            return Ok(CommutationVerdict {
                status: CommutationStatus::NonCommuting,
                witness_unitary: Some(u),
                witness_min_eig: Some(check.min_choi_eig),
                residual: best.residual,
                samples_used: k + 1,
                sampling_incomplete: false,
            });
        }
    }
    Ok(CommutationVerdict {
        status: CommutationStatus::NonCommuting,
        witness_unitary: None,
        witness_min_eig: None,
        residual: best.residual,
        samples_used: sample_count,
        sampling_incomplete: true,
    })
}

/// Least-squares fit of `(I (x) R)(X)` to `a I + b F`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpanFit {
    /// Residual for `X = |phi_d><phi_d|^Gamma` (identity-type maps).
    pub gamma_residual: f64,
    /// Residual for `X = |phi_d><phi_d|` (transpose-type maps).
    pub plain_residual: f64,
}

impl SpanFit {
    /// The smaller of the two residuals: a commuting map lands in
    /// `span{I, F}` for one of the two inputs.
    pub fn residual(&self) -> f64 {
        self.gamma_residual.min(self.plain_residual)
    }
}

/// Applies `I (x) R` blockwise to a `d^2 x d^2` operator.
fn apply_on_second(r: &SuperOperator, x: &CMatrix, d: usize) -> Result<CMatrix> {
    let mut out = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let block = CMatrix::from_fn(d, d, |a, b| x[(i * d + a, j * d + b)]);
            let img = r.apply(&block)?;
            for a in 0..d {
                for b in 0..d {
                    out[(i * d + a, j * d + b)] = img[(a, b)];
                }
            }
        }
    }
    Ok(out)
}

fn span_residual(y: &CMatrix, d: usize) -> f64 {
    let id = CMatrix::identity(d * d);
    let f = swap_operator(d);
    let n = (d * d) as f64;
    let dd = d as f64;
    // Gram matrix [[d^2, d], [d, d^2]]
    let r1 = id.hs_inner(y);
    let r2 = f.hs_inner(y);
    let det = n * n - dd * dd;
    let a = (r1 * n - r2 * dd) / det;
    let b = (r2 * n - r1 * dd) / det;
    let fitted = &id.scale(a) + &f.scale(b);
    y.distance(&fitted)
}

pub fn span_if_check(r: &SuperOperator, d: usize) -> Result<SpanFit> {
    if r.dim_in() != d || r.dim_out() != d {
        return Err(Error::DimensionMismatch(format!("map must act on {d} x {d} operators")));
    }
    let phi = CMatrix::projector(&max_entangled(d)?);
    let phi_gamma = partial_transpose(&phi, crate::opalg::DimPair::new(d, d), Subsystem::Second)?;
    Ok(SpanFit {
        gamma_residual: span_residual(&apply_on_second(r, &phi_gamma, d)?, d),
        plain_residual: span_residual(&apply_on_second(r, &phi, d)?, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::random_channel;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn depolarizing(p: f64) -> Channel {
        crate::cli::zoo::depolarizing(2, p).unwrap()
    }

    #[test]
    fn transpose_superop_examples() {
        let y = CMatrix::from_rows(&[
            &[c(0.0), Complex64::new(0.0, -1.0)],
            &[Complex64::new(0.0, 1.0), c(0.0)],
        ]);
        let t = transpose_superop(2).unwrap();
        assert!(t.apply(&y).unwrap().distance(&y.scale_real(-1.0)) < 1e-15);
        assert_eq!(compose(&t, &t).unwrap(), SuperOperator::identity(2));
        let check = is_cptp(&t, 1e-9);
        assert!(!check.cp && check.tp);
        assert_abs_diff_eq!(check.min_choi_eig, -0.5, epsilon = 1e-12);
    }

    #[test]
    fn ppt_examples() {
        let v = ppt_test(&Channel::identity(2)).unwrap();
        assert!(!v.is_ppt);
        assert_abs_diff_eq!(v.min_eig, -0.5, epsilon = 1e-12);
        for d in [2, 3] {
            let v = ppt_test(&crate::cli::zoo::completely_depolarizing(d).unwrap()).unwrap();
            assert!(v.is_ppt);
            assert_abs_diff_eq!(v.min_eig, 1.0 / (d * d) as f64, epsilon = 1e-12);
        }
        assert!(ppt_test(&depolarizing(0.67)).unwrap().is_ppt);
        assert!(!ppt_test(&depolarizing(0.66)).unwrap().is_ppt);
    }

    #[test]
    fn ppt_agrees_with_composed_cptp_check() {
        for seed in 0..10 {
            let ch = random_channel(2, 2, 1 + seed as usize % 4, seed).unwrap();
            let via_choi = ppt_test(&ch).unwrap().is_ppt;
            let composed = compose(&transpose_superop(2).unwrap(), &superoperator(&ch)).unwrap();
            assert_eq!(via_choi, is_cptp(&composed, 1e-9).cp);
        }
        for p in [0.5, 0.7, 1.0] {
            let ch = depolarizing(p);
            let composed = compose(&transpose_superop(2).unwrap(), &superoperator(&ch)).unwrap();
            assert_eq!(ppt_test(&ch).unwrap().is_ppt, is_cptp(&composed, 1e-9).cp);
        }
    }

    #[test]
    fn commutation_residuals() {
        assert_eq!(verify_transpose_commutation(&Channel::identity(3)).unwrap(), 0.0);
        let u = crate::opalg::random_unitary(3, 7);
        let ch = Channel::unitary(u.clone()).unwrap();
        assert!(verify_transpose_commutation(&ch).unwrap() < 1e-12);
        // D* is conjugation by U*
        let t = transpose_superop(3).unwrap();
        let lhs = compose(&t, &superoperator(&ch)).unwrap();
        let rhs = compose(&SuperOperator::conjugation(&u.conj()), &t).unwrap();
        assert!(lhs.distance(&rhs) < 1e-12);
        assert!(verify_transpose_commutation(&random_channel(2, 3, 2, 1).unwrap()).is_err());
    }

    #[test]
    fn tensor_stability_examples() {
        let s = tensor_stability_check(&crate::cli::zoo::completely_depolarizing(2).unwrap(), 2).unwrap();
        assert!(s.residual <= 1e-9);
        let s = tensor_stability_check(&depolarizing(0.7), 2).unwrap();
        assert!(s.residual <= 1e-9);
        assert_abs_diff_eq!(s.min_choi_eig, (0.7f64 / 4.0 - 0.15) * (0.7 / 4.0 - 0.15), epsilon = 1e-12);
        assert!(matches!(tensor_stability_check(&depolarizing(0.5), 2), Err(Error::Precondition(_))));
        assert!(matches!(tensor_stability_check(&depolarizing(0.7), 4), Err(Error::SizeOverflow(_))));
    }

    #[test]
    fn classifier_examples() {
        let v = classify_linear_map(&transpose_superop(2).unwrap(), 2, 64, 0).unwrap();
        assert!(matches!(v.status, CommutationStatus::CommutingTranspose { p } if p.abs() < 1e-12));
        let v = classify_linear_map(&SuperOperator::identity(2), 2, 64, 0).unwrap();
        assert!(matches!(v.status, CommutationStatus::CommutingIdentity { p } if p.abs() < 1e-12));
        let half = transpose_superop(2).unwrap().combine(0.5, &completely_depolarizing_superop(2), 0.5).unwrap();
        let v = classify_linear_map(&half, 2, 64, 0).unwrap();
        match v.status {
            CommutationStatus::CommutingTranspose { p } => assert!((p - 0.5).abs() < 1e-8),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classifier_finds_witness_for_perturbed_map() {
        let noise = superoperator(&random_channel(2, 2, 2, 99).unwrap());
        let r = transpose_superop(2).unwrap().combine(0.7, &noise, 0.3).unwrap();
        let v = classify_linear_map(&r, 2, 64, 1).unwrap();
        assert_eq!(v.status, CommutationStatus::NonCommuting);
        assert!(v.witness_unitary.is_some());
        assert!(v.witness_min_eig.unwrap() < -TAU_WITNESS);
        assert!(!v.sampling_incomplete);
    }

    #[test]
    fn classifier_guards() {
        let r = SuperOperator::identity(2).scale(2.0);
        assert!(matches!(classify_linear_map(&r, 2, 8, 0), Err(Error::NotTracePreserving { .. })));
        let r = completely_depolarizing_superop(2);
        assert!(matches!(classify_linear_map(&r, 2, 8, 0), Err(Error::NotInvertible { .. })));
        assert!(classify_linear_map(&SuperOperator::identity(3), 2, 8, 0).is_err());
    }

    #[test]
    fn span_examples() {
        let s = span_if_check(&SuperOperator::identity(3), 3).unwrap();
        assert!(s.gamma_residual < 1e-14);
        let fam = ForbiddenMapFamily::new(FamilyKind::IdentityFamily, 0.4, 3).unwrap();
        assert!(span_if_check(&fam.superoperator(), 3).unwrap().residual() < 1e-10);
        let fam = ForbiddenMapFamily::new(FamilyKind::TransposeFamily, 0.4, 3).unwrap();
        let s = span_if_check(&fam.superoperator(), 3).unwrap();
        assert!(s.plain_residual < 1e-10);
        let generic = superoperator(&random_channel(3, 3, 3, 4).unwrap());
        assert!(span_if_check(&generic, 3).unwrap().residual() > 1e-3);
    }

    #[test]
    fn family_validation() {
        assert!(ForbiddenMapFamily::new(FamilyKind::IdentityFamily, 1.5, 2).is_err());
        assert!(ForbiddenMapFamily::new(FamilyKind::IdentityFamily, 0.5, 1).is_err());
        for kind in [FamilyKind::TransposeFamily, FamilyKind::IdentityFamily] {
            let s = ForbiddenMapFamily::new(kind, 0.3, 2).unwrap().superoperator();
            assert!(trace_preservation_residual(&s) < 1e-14);
        }
    }

    #[test]
    fn transpose_family_is_not_cp_below_threshold() {
        for p in [0.0, 0.25, 0.5] {
            let s = ForbiddenMapFamily::new(FamilyKind::TransposeFamily, p, 2).unwrap().superoperator();
            let check = is_cptp(&s, 1e-9);
            assert!(!check.cp);
            assert_abs_diff_eq!(check.min_choi_eig, -(1.0 - p) / 2.0 + p / 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn certify_examples() {
        let reasons = |ch: &Channel| -> Vec<CertificateReason> {
            lemma1_certify(ch, "x").unwrap().into_iter().map(|c| c.reason).collect()
        };
        assert!(reasons(&depolarizing(0.7)).contains(&CertificateReason::TimeReversal));
        assert_eq!(reasons(&crate::cli::zoo::erasure(2, 0.5).unwrap()), vec![CertificateReason::Cloning]);
        assert!(reasons(&Channel::identity(2)).is_empty());
    }
}
