//! Antidegradability and the cloning construction.
//!
//! A channel `N: A -> B` is antidegradable when some channel `D: E -> B`
//! satisfies `D o N^c = N`. The search for `D` is a convex feasibility
//! problem on its Choi matrix, solved by Dykstra's alternating projections
//! between the PSD cone and the affine set cut out by trace preservation and
//! the degrading identity.
//!
//! From a degrading map one gets the symmetric extension
//! `M12 = (I_B (x) D)(V . V^dagger)` and the cloning map
//! `R(psi) = M12(M^{-1}(psi_range)) + sigma (x) sigma`.

use serde::Serialize;

use crate::channel::{
    choi, complementary, stinespring, superoperator, Channel, ChoiMatrix, SuperOperator,
};
use crate::error::{Error, Result};
use crate::forbidden::{CertificateDetail, CertificateReason, ZeroCapacityCertificate};
use crate::opalg::linalg::{pseudo_inverse, PINV_RCOND};
use crate::opalg::random::{random_state_with, random_unitary_with};
use crate::opalg::{
    hermitian_eigs, kron, partial_trace, project_psd, rng_from_seed, CMatrix, DimPair, Subsystem,
};

pub const EPS_FEAS: f64 = 1e-7;
pub const EPS_MARG: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 20_000;
/// Relative least-squares residual above which the affine system is
/// declared inconsistent.
const INCONSISTENCY_TOL: f64 = 1e-8;
/// Degrading identity tolerance for [`build_symmetric_extension`].
pub const DEGRADING_TOL: f64 = 1e-6;
const VERIFY_SAMPLES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FeasibilityStatus {
    Feasible,
    /// The affine constraints alone have no solution.
    Infeasible,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct FeasibilityOptions {
    pub eps_feas: f64,
    pub max_iter: usize,
    /// Initial Choi matrix guess, `d_E d_B` square; defaults to the
    /// maximally mixed state.
    pub start: Option<CMatrix>,
}

impl Default for FeasibilityOptions {
    fn default() -> Self {
        Self {
            eps_feas: EPS_FEAS,
            max_iter: DEFAULT_MAX_ITER,
            start: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FeasibilityResult {
    pub status: FeasibilityStatus,
    /// Frobenius distance between the last PSD and affine iterates.
    pub distance: f64,
    pub iterations: usize,
    pub degrading_choi: Option<ChoiMatrix>,
    pub degrader: Option<Channel>,
    /// Distance after each iteration.
    pub history: Vec<f64>,
}

/// Affine constraints `M x = b` on the row-major entries of the degrading
/// Choi matrix, with a cached pseudo-inverse.
struct AffineSet {
    m: CMatrix,
    m_pinv: CMatrix,
    b: CMatrix,
    n: usize,
}

impl AffineSet {
    fn new(ch: &Channel) -> Self {
        let comp = complementary(ch);
        let (da, db, de) = (ch.dim_in(), ch.dim_out(), comp.dim_out());
        let sc = superoperator(&comp);
        let sn = superoperator(ch);
        let n = de * db;
        let rows = db * db * da * da + de * de;
        let mut m = CMatrix::zeros(rows, n * n);
        let mut b = CMatrix::zeros(rows, 1);
        // S_D[(j db + i), (l de + k)] = de J[(k db + i), (l db + j)]
        let mut row = 0;
        for col in 0..da * da {
            for j in 0..db {
                for i in 0..db {
                    for l in 0..de {
                        for k in 0..de {
                            let var = (k * db + i) * n + (l * db + j);
                            m[(row, var)] = sc.matrix()[(l * de + k, col)].scale(de as f64);
                        }
                    }
                    b[(row, 0)] = sn.matrix()[(j * db + i, col)];
                    row += 1;
                }
            }
        }
        // Tr_B J = I / de
        for k in 0..de {
            for l in 0..de {
                for i in 0..db {
                    m[(row, (k * db + i) * n + (l * db + i))] = crate::opalg::ONE;
                }
                if k == l {
                    b[(row, 0)] = (1.0 / de as f64).into();
                }
                row += 1;
            }
        }
        let m_pinv = pseudo_inverse(&m, PINV_RCOND);
        Self { m, m_pinv, b, n }
    }

    fn consistency_residual(&self) -> f64 {
        let x = &self.m_pinv * &self.b;
        let r = &(&self.m * &x) - &self.b;
        r.frobenius_norm() / self.b.frobenius_norm().max(1.0)
    }

    fn project(&self, x: &CMatrix) -> CMatrix {
        let v = CMatrix::from_vec(self.n * self.n, 1, x.as_slice().to_vec()).expect("square");
        let r = &(&self.m * &v) - &self.b;
        let v = &v - &(&self.m_pinv * &r);
        CMatrix::from_vec(self.n, self.n, v.into_vec())
            .expect("square")
            .hermitian_part()
    }
}

fn kraus_from_psd_choi(j: &CMatrix, din: usize, dout: usize) -> Result<Vec<CMatrix>> {
    let eig = hermitian_eigs(&j.hermitian_part())?;
    let cutoff = eig.values.last().copied().unwrap_or(0.0) * 1e-14;
    let kraus: Vec<CMatrix> = eig
        .values
        .iter()
        .enumerate()
        .filter(|&(_, &lambda)| lambda > cutoff.max(0.0))
        .map(|(k, &lambda)| {
            let amp = (din as f64 * lambda).sqrt();
            CMatrix::from_fn(dout, din, |b, e| eig.vectors[(e * dout + b, k)] * amp)
        })
        .collect();
    if kraus.is_empty() {
        return Err(Error::Precondition("candidate Choi matrix vanishes".into()));
    }
    Ok(kraus)
}

/// `|| S(D) S(N^c) - S(N) ||_F`.
pub fn degrading_residual(ch: &Channel, degrader: &Channel) -> Result<f64> {
    let comp = complementary(ch);
    if degrader.dim_in() != comp.dim_out() || degrader.dim_out() != ch.dim_out() {
        return Err(Error::DimensionMismatch(format!(
            "degrader acts {} -> {}, expected {} -> {}",
            degrader.dim_in(),
            degrader.dim_out(),
            comp.dim_out(),
            ch.dim_out()
        )));
    }
    let lhs = superoperator(degrader).matrix() * superoperator(&comp).matrix();
    Ok(lhs.distance(superoperator(ch).matrix()))
}

pub fn antidegradability_feasibility(ch: &Channel, tol: f64, max_iter: usize) -> Result<FeasibilityResult> {
    antidegradability_feasibility_with(
        ch,
        &FeasibilityOptions {
            eps_feas: tol,
            max_iter,
            start: None,
        },
    )
}

/// Dykstra iteration `y = P_psd(x + p)`, `p = x + p - y`, `x = P_aff(y)`;
/// the affine set needs no correction term.
pub fn antidegradability_feasibility_with(ch: &Channel, opts: &FeasibilityOptions) -> Result<FeasibilityResult> {
    let affine = AffineSet::new(ch);
    let n = affine.n;
    let (db, de) = (ch.dim_out(), ch.kraus().len());
    let inconsistency = affine.consistency_residual();
    if inconsistency > INCONSISTENCY_TOL {
        return Ok(FeasibilityResult {
            status: FeasibilityStatus::Infeasible,
            distance: inconsistency,
            iterations: 0,
            degrading_choi: None,
            degrader: None,
            history: Vec::new(),
        });
    }

    let start = match &opts.start {
        Some(s) if s.shape() != (n, n) => {
            return Err(Error::DimensionMismatch(format!(
                "start matrix must be {n}x{n}, got {}x{}",
                s.rows(),
                s.cols()
            )))
        }
        Some(s) => s.hermitian_part(),
        None => CMatrix::identity(n).scale_real(1.0 / n as f64),
    };
    let mut x = affine.project(&start);
    let mut p = CMatrix::zeros(n, n);
    let mut y = x.clone();
    let mut distance = f64::INFINITY;
    let mut history = Vec::new();
    let mut iterations = 0;
    while iterations < opts.max_iter {
        let shifted = &x + &p;
        y = project_psd(&shifted)?;
        p = &shifted - &y;
        x = affine.project(&y);
        distance = x.distance(&y);
        history.push(distance);
        iterations += 1;
        if distance < opts.eps_feas {
            break;
        }
    }

    if distance >= opts.eps_feas {
        return Ok(FeasibilityResult {
            status: FeasibilityStatus::Undetermined,
            distance,
            iterations,
            degrading_choi: None,
            degrader: None,
            history,
        });
    }
    let degrader = Channel::from_kraus_normalized(de, db, kraus_from_psd_choi(&y, de, db)?)?;
    Ok(FeasibilityResult {
        status: FeasibilityStatus::Feasible,
        distance,
        iterations,
        degrading_choi: Some(choi(&degrader)),
        degrader: Some(degrader),
        history,
    })
}

/// Random PSD start for the solver, shaped for `ch`.
pub fn random_start(ch: &Channel, seed: u64) -> CMatrix {
    let n = ch.dim_out() * ch.kraus().len();
    random_state_with(n, &mut rng_from_seed(seed)).into_matrix()
}

/// Two-output extension of a channel whose marginals both equal it.
#[derive(Clone, Debug)]
pub struct SymmetricExtension {
    /// Channel `A -> B1 B2`.
    pub m12: Channel,
    pub source: Channel,
    pub degrader: Channel,
}

impl SymmetricExtension {
    /// Largest `|| Tr_{B2} M12(rho) - M(rho) ||` and `|| Tr_{B1} M12(rho) - M(rho) ||`
    /// over `samples` random states.
    pub fn marginal_residuals(&self, samples: usize, seed: u64) -> Result<(f64, f64)> {
        let mut rng = rng_from_seed(seed);
        let db = self.source.dim_out();
        let dims = DimPair::new(db, db);
        let (mut r1, mut r2) = (0.0f64, 0.0f64);
        for _ in 0..samples {
            let rho = random_state_with(self.source.dim_in(), &mut rng).into_matrix();
            let joint = self.m12.apply(&rho)?;
            let target = self.source.apply(&rho)?;
            r1 = r1.max(partial_trace(&joint, dims, Subsystem::Second)?.distance(&target));
            r2 = r2.max(partial_trace(&joint, dims, Subsystem::First)?.distance(&target));
        }
        Ok((r1, r2))
    }
}

/// `M12(rho) = (I_B (x) D)(V rho V^dagger)`.
pub fn build_symmetric_extension(ch: &Channel, degrader: &Channel) -> Result<SymmetricExtension> {
    let residual = degrading_residual(ch, degrader)?;
    if residual > DEGRADING_TOL {
        return Err(Error::Precondition(format!(
            "degrading identity violated: residual {residual:.3e}"
        )));
    }
    let v = stinespring(ch);
    let id_b = CMatrix::identity(ch.dim_out());
    let kraus = degrader
        .kraus()
        .iter()
        .map(|f| &kron(&id_b, f) * &v.isometry)
        .collect();
    let m12 = Channel::new_with_tol(ch.dim_in(), ch.dim_out() * ch.dim_out(), kraus, DEGRADING_TOL)?;
    Ok(SymmetricExtension {
        m12,
        source: ch.clone(),
        degrader: degrader.clone(),
    })
}

/// Split of an output operator along the range of a channel.
#[derive(Clone, Debug)]
pub struct RangeDecomposition {
    /// Hilbert-Schmidt projection onto the range.
    pub in_range: CMatrix,
    /// `psi - in_range`.
    pub complement: CMatrix,
    /// Minimal-norm preimage of `in_range`.
    pub preimage: CMatrix,
}

fn range_decompose_with(psi: &CMatrix, s: &SuperOperator, s_pinv: &CMatrix) -> Result<RangeDecomposition> {
    let d = s.dim_out();
    if psi.shape() != (d, d) {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, channel output is {d}x{d}",
            psi.rows(),
            psi.cols()
        )));
    }
    let pre = s_pinv * &psi.vectorize();
    let in_range = CMatrix::unvectorize(&(s.matrix() * &pre), d, d)?;
    let preimage = CMatrix::unvectorize(&pre, s.dim_in(), s.dim_in())?;
    Ok(RangeDecomposition {
        complement: psi - &in_range,
        in_range,
        preimage,
    })
}

pub fn range_decompose(psi: &CMatrix, ch: &Channel) -> Result<RangeDecomposition> {
    let s = superoperator(ch);
    let s_pinv = pseudo_inverse(s.matrix(), PINV_RCOND);
    range_decompose_with(psi, &s, &s_pinv)
}

/// The nonlinear broadcast map `psi -> M12(M^{-1}(psi_range)) + sigma (x) sigma`.
#[derive(Clone, Debug)]
pub struct CloneMap {
    source: SuperOperator,
    source_pinv: CMatrix,
    m12: SuperOperator,
    dim: usize,
}

impl CloneMap {
    pub fn new(ext: &SymmetricExtension) -> Self {
        let source = superoperator(&ext.source);
        let source_pinv = pseudo_inverse(source.matrix(), PINV_RCOND);
        Self {
            dim: ext.source.dim_out(),
            source,
            source_pinv,
            m12: superoperator(&ext.m12),
        }
    }

    /// Output dimension `d'` of the cloned system.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn decompose(&self, psi: &CMatrix) -> Result<RangeDecomposition> {
        range_decompose_with(psi, &self.source, &self.source_pinv)
    }

    pub fn apply(&self, psi: &CMatrix) -> Result<CMatrix> {
        let parts = self.decompose(psi)?;
        let cloned = self.m12.apply(&parts.preimage)?;
        Ok(&cloned + &kron(&parts.complement, &parts.complement))
    }

    /// `(U (x) U) R(U^dagger psi U) (U (x) U)^dagger`.
    pub fn apply_covariant(&self, u: &CMatrix, psi: &CMatrix) -> Result<CMatrix> {
        if u.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch("unitary must act on the output space".into()));
        }
        let inner = self.apply(&u.adjoint().sandwich(psi))?;
        Ok(kron(u, u).sandwich(&inner))
    }

    /// Clones `psi` on `B` and pads each copy with an environment register of
    /// dimension `dim_env` in `|0>`; output ordering `B1 E1 B2 E2`.
    pub fn apply_with_environment(&self, psi: &CMatrix, dim_env: usize) -> Result<CMatrix> {
        if dim_env == 0 {
            return Err(Error::InvalidDimension("environment dimension must be positive".into()));
        }
        let r = self.apply(psi)?;
        let db = self.dim;
        let block = db * dim_env;
        let mut out = CMatrix::zeros(block * block, block * block);
        let pos = |b1: usize, b2: usize| (b1 * dim_env) * block + b2 * dim_env;
        for b1 in 0..db {
            for b2 in 0..db {
                for c1 in 0..db {
                    for c2 in 0..db {
                        out[(pos(b1, b2), pos(c1, c2))] = r[(b1 * db + b2, c1 * db + c2)];
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn clone_map_apply(cm: &CloneMap, psi: &CMatrix) -> Result<CMatrix> {
    cm.apply(psi)
}

/// Verification residuals of a clone map on in-range states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CloneVerification {
    /// Largest `|| Tr_i R(psi) - psi ||` over both marginals.
    pub marginal_residual: f64,
    /// Largest `|| R(M(rho)) - M12(rho) ||`.
    pub clone_residual: f64,
    /// Largest covariance defect `|| R_U(M_U(rho)) - (U (x) U) M12(rho) (U (x) U)^dagger ||`
    /// for the unitary channel `M_U` acting after `M`.
    pub covariance_residual: f64,
}

pub fn verify_clone_map(ext: &SymmetricExtension, cm: &CloneMap, samples: usize, seed: u64) -> Result<CloneVerification> {
    let mut rng = rng_from_seed(seed);
    let db = cm.dim();
    let dims = DimPair::new(db, db);
    let mut out = CloneVerification {
        marginal_residual: 0.0,
        clone_residual: 0.0,
        covariance_residual: 0.0,
    };
    for _ in 0..samples {
        let rho = random_state_with(ext.source.dim_in(), &mut rng).into_matrix();
        let psi = ext.source.apply(&rho)?;
        let cloned = cm.apply(&psi)?;
        for which in [Subsystem::First, Subsystem::Second] {
            let m = partial_trace(&cloned, dims, which)?.distance(&psi);
            out.marginal_residual = out.marginal_residual.max(m);
        }
        let direct = ext.m12.apply(&rho)?;
        out.clone_residual = out.clone_residual.max(cloned.distance(&direct));
        let u = random_unitary_with(db, &mut rng);
        let rotated = cm.apply_covariant(&u, &u.sandwich(&psi))?;
        out.covariance_residual = out.covariance_residual.max(rotated.distance(&kron(&u, &u).sandwich(&direct)));
    }
    Ok(out)
}

pub fn cloning_certificate(ch: &Channel, channel_id: &str) -> Result<Option<ZeroCapacityCertificate>> {
    cloning_certificate_with(ch, channel_id, &FeasibilityOptions::default(), 0)
}

/// Emits a cloning certificate iff the feasibility solve returns Feasible.
pub fn cloning_certificate_with(
    ch: &Channel,
    channel_id: &str,
    opts: &FeasibilityOptions,
    seed: u64,
) -> Result<Option<ZeroCapacityCertificate>> {
    let result = antidegradability_feasibility_with(ch, opts)?;
    cloning_certificate_from(ch, channel_id, &result, seed)
}

/// Builds the cloning certificate from an existing feasibility result.
pub fn cloning_certificate_from(
    ch: &Channel,
    channel_id: &str,
    result: &FeasibilityResult,
    seed: u64,
) -> Result<Option<ZeroCapacityCertificate>> {
    let Some(degrader) = result.degrader.as_ref().filter(|_| result.status == FeasibilityStatus::Feasible) else {
        return Ok(None);
    };
    let mut detail = CertificateDetail {
        feasibility_distance: Some(result.distance),
        iterations: Some(result.iterations),
        degrading_residual: Some(degrading_residual(ch, degrader)?),
        ..Default::default()
    };
    match build_symmetric_extension(ch, degrader) {
        Ok(ext) => {
            let (r1, r2) = ext.marginal_residuals(VERIFY_SAMPLES, seed)?;
            let cm = CloneMap::new(&ext);
            let check = verify_clone_map(&ext, &cm, VERIFY_SAMPLES, seed)?;
            detail.marginal_residual = Some(r1.max(r2).max(check.marginal_residual));
            detail.clone_residual = Some(check.clone_residual);
            detail.note = "degrading map found; the symmetric extension clones every in-range state, and tensor products of antidegradable channels stay antidegradable. Residuals are Frobenius distances on output operators. Off the range the clone map marginal is psi_range + Tr(sigma) sigma".into();
        }
        Err(e) => {
            detail.note = format!("degrading map found but the symmetric extension failed verification: {e}");
        }
    }
    Ok(Some(ZeroCapacityCertificate {
        reason: CertificateReason::Cloning,
        channel_id: channel_id.to_string(),
        detail,
    }))
}
