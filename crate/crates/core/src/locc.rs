//! Distillation through a Choi matrix and the transpose-extraction recipe.
//!
//! An LOCC protocol is modelled as a product instrument with Kraus pairs
//! `(A_i, B_i)`. Teleporting a state `psi` through the Choi matrix of a
//! channel `N` and running the protocol yields
//!
//! ```text
//! (d_out/d_in) sum_i (1/d_in^2) sum_u B_i N(A_i^T s_u psi s_u^dagger A_i^*) B_i^dagger (x) |u><u|
//! ```
//!
//! where `s_u` ranges over the Heisenberg-Weyl operators. A perfect
//! distillation protocol turns this into the identity on `psi`; conjugating
//! with the transpose then gives a physical recipe for the transpose whenever
//! `T o N` is physical. Numerically, the extraction map is always CP for PPT
//! channels, so the distillation identity must fail for them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::channel::{compose, is_cptp, superoperator, Channel, SuperOperator};
use crate::error::{Error, Result};
use crate::forbidden::{ppt_test, transpose_superop};
use crate::opalg::random::{random_channel_with, random_pure_state_with, random_unitary_with};
use crate::opalg::{kron, rng_from_seed, CMatrix, DensityMatrix, Tolerances, ZERO};

/// Heisenberg-Weyl operators `X^a Z^b`, indexed by `u = a * d + b`.
#[derive(Clone, Debug)]
pub struct PauliFamily {
    dim: usize,
    ops: Vec<CMatrix>,
}

impl PauliFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn get(&self, a: usize, b: usize) -> &CMatrix {
        &self.ops[a * self.dim + b]
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `sum_u s_u psi s_u^dagger`, equal to `d Tr(psi) I`.
    pub fn twirl(&self, psi: &CMatrix) -> CMatrix {
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for s in &self.ops {
            acc += &s.sandwich(psi);
        }
        acc
    }
}

/// Cyclic shift `X|k> = |k+1 mod d>`.
pub fn shift(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| {
        if i == (j + 1) % d {
            Complex64::new(1.0, 0.0)
        } else {
            ZERO
        }
    })
}

/// Clock `Z = diag(w^k)`, `w = exp(2 pi i / d)`.
pub fn clock(d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, 2.0 * PI * i as f64 / d as f64)
        } else {
            ZERO
        }
    })
}

pub fn gen_paulis(d: usize) -> Result<PauliFamily> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!("Pauli family needs d >= 2, got {d}")));
    }
    let x = shift(d);
    let z = clock(d);
    let mut x_pow = vec![CMatrix::identity(d)];
    let mut z_pow = vec![CMatrix::identity(d)];
    for k in 1..d {
        x_pow.push(&x_pow[k - 1] * &x);
        z_pow.push(&z_pow[k - 1] * &z);
    }
    let mut ops = Vec::with_capacity(d * d);
    for xa in &x_pow {
        for zb in &z_pow {
            ops.push(xa * zb);
        }
    }
    Ok(PauliFamily { dim: d, ops })
}

/// Dimensions of a product instrument: Alice maps `a_in -> a_out`, Bob maps
/// `b_in -> b_out`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LoccDims {
    pub a_in: usize,
    pub a_out: usize,
    pub b_in: usize,
    pub b_out: usize,
}

/// Product-Kraus instrument `{A_i (x) B_i}`.
///
/// Only the product form and completeness are checked; whether the pairs
/// come from an actual LOCC round structure is not.
#[derive(Clone, Debug)]
pub struct LoccProtocol {
    pairs: Vec<(CMatrix, CMatrix)>,
    dims: LoccDims,
}

impl LoccProtocol {
    pub fn new(pairs: Vec<(CMatrix, CMatrix)>) -> Result<Self> {
        let (a0, b0) = pairs
            .first()
            .ok_or_else(|| Error::InvalidDimension("protocol needs at least one Kraus pair".into()))?;
        let dims = LoccDims {
            a_in: a0.cols(),
            a_out: a0.rows(),
            b_in: b0.cols(),
            b_out: b0.rows(),
        };
        for (i, (a, b)) in pairs.iter().enumerate() {
            if a.shape() != (dims.a_out, dims.a_in) || b.shape() != (dims.b_out, dims.b_in) {
                return Err(Error::DimensionMismatch(format!("Kraus pair {i} has inconsistent shapes")));
            }
        }
        let n = dims.a_in * dims.b_in;
        let mut s = CMatrix::identity(n).scale_real(-1.0);
        for (a, b) in &pairs {
            let k = kron(a, b);
            s += &(&k.adjoint() * &k);
        }
        let residual = s.frobenius_norm();
        if residual > Tolerances::default().tp {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(Self { pairs, dims })
    }

    /// The single pair `(I, I)`.
    pub fn trivial(d_a: usize, d_b: usize) -> Self {
        Self {
            pairs: vec![(CMatrix::identity(d_a), CMatrix::identity(d_b))],
            dims: LoccDims {
                a_in: d_a,
                a_out: d_a,
                b_in: d_b,
                b_out: d_b,
            },
        }
    }

    /// Teleportation corrections `A_u = conj(s_u)/d`, `B_u = s_u`, which
    /// distill the identity channel's Choi matrix perfectly.
    pub fn teleportation(d: usize) -> Result<Self> {
        let paulis = gen_paulis(d)?;
        let inv = 1.0 / d as f64;
        let pairs = paulis
            .operators()
            .iter()
            .map(|s| (s.conj().scale_real(inv), s.clone()))
            .collect();
        Self::new(pairs)
    }

    /// Teleportation pairs dressed with random local unitaries:
    /// `A_u = W conj(s_u) / d`, `B_u = s_u V`.
    pub fn dressed_teleportation(d: usize, rng: &mut impl Rng) -> Result<Self> {
        let paulis = gen_paulis(d)?;
        let w = random_unitary_with(d, rng);
        let v = random_unitary_with(d, rng);
        let inv = 1.0 / d as f64;
        let pairs = paulis
            .operators()
            .iter()
            .map(|s| ((&w * &s.conj()).scale_real(inv), s * &v))
            .collect();
        Self::new(pairs)
    }

    /// Independent random local instruments for Alice (`a_in -> target`) and
    /// Bob (`b_in -> target`), combined into all product pairs.
    pub fn random(a_in: usize, b_in: usize, target: usize, rng: &mut impl Rng) -> Result<Self> {
        let ka = a_in.div_ceil(target).max(2);
        let kb = b_in.div_ceil(target).max(2);
        let alice = random_channel_with(a_in, target, ka, rng)?;
        let bob = random_channel_with(b_in, target, kb, rng)?;
        let pairs = alice
            .kraus()
            .iter()
            .flat_map(|a| bob.kraus().iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        Self::new(pairs)
    }

    pub fn pairs(&self) -> &[(CMatrix, CMatrix)] {
        &self.pairs
    }

    pub fn dims(&self) -> LoccDims {
        self.dims
    }

    fn check_against(&self, ch: &Channel) -> Result<()> {
        if self.dims.a_in != ch.dim_in() || self.dims.b_in != ch.dim_out() {
            return Err(Error::DimensionMismatch(format!(
                "protocol acts on ({}, {}) but the Choi matrix is ({}, {})",
                self.dims.a_in,
                self.dims.b_in,
                ch.dim_in(),
                ch.dim_out()
            )));
        }
        Ok(())
    }

    fn distilled_dim(&self) -> Result<usize> {
        if self.dims.a_out != self.dims.b_out {
            return Err(Error::DimensionMismatch(format!(
                "Alice outputs dimension {} but Bob outputs {}",
                self.dims.a_out, self.dims.b_out
            )));
        }
        Ok(self.dims.a_out)
    }
}

/// State prepared by teleporting `psi` through the Choi matrix of `ch` and
/// running `proto`, with a classical register `|u>` of dimension `d_in^2`.
///
/// `d_in` is the dimension of `psi` (the Pauli dimension) and `d_out` the
/// channel output dimension; the prefactor is applied as written, so the
/// output trace exposes any normalization mismatch. The register is the
/// fast tensor index.
pub fn teleport_through_choi(ch: &Channel, proto: &LoccProtocol, psi: &DensityMatrix) -> Result<CMatrix> {
    proto.check_against(ch)?;
    let dims = proto.dims();
    if psi.dim() != dims.a_out {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {} but Alice's instrument outputs {}",
            psi.dim(),
            dims.a_out
        )));
    }
    let d_in = psi.dim();
    let d_out = ch.dim_out();
    let paulis = gen_paulis(d_in)?;
    let n_u = paulis.len();
    let prefactor = (d_out as f64 / d_in as f64) / (d_in * d_in) as f64;
    let q = dims.b_out;
    let mut out = CMatrix::zeros(q * n_u, q * n_u);
    for (u, s) in paulis.operators().iter().enumerate() {
        let twisted = s.sandwich(psi.matrix());
        let mut block = CMatrix::zeros(q, q);
        for (a, b) in proto.pairs() {
            let inner = a.transpose().sandwich(&twisted);
            block += &b.sandwich(&ch.apply(&inner)?);
        }
        for r in 0..q {
            for c in 0..q {
                out[(r * n_u + u, c * n_u + u)] = block[(r, c)] * prefactor;
            }
        }
    }
    Ok(out)
}

/// `(q/d) sum_i B_i N(A_i^T psi A_i^*) B_i^dagger`, with `q` the distilled
/// dimension and `d` the channel input dimension (`q = 2` gives `2/d`).
pub fn distilled_output(ch: &Channel, proto: &LoccProtocol, psi: &CMatrix) -> Result<CMatrix> {
    proto.check_against(ch)?;
    let q = proto.distilled_dim()?;
    if psi.shape() != (q, q) {
        return Err(Error::DimensionMismatch(format!("expected a {q}x{q} input state")));
    }
    let mut acc = CMatrix::zeros(q, q);
    for (a, b) in proto.pairs() {
        let inner = a.transpose().sandwich(psi);
        acc += &b.sandwich(&ch.apply(&inner)?);
    }
    Ok(acc.scale_real(q as f64 / ch.dim_in() as f64))
}

/// Largest `||psi - distilled_output(psi)||_F` over `samples` Haar-random
/// pure states. Zero means the protocol distills perfectly.
pub fn distillation_identity_residual(ch: &Channel, proto: &LoccProtocol, samples: usize, seed: u64) -> Result<f64> {
    let q = proto.distilled_dim()?;
    let mut rng = rng_from_seed(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples.max(1) {
        let psi = random_pure_state_with(q, &mut rng).into_matrix();
        let out = distilled_output(ch, proto, &psi)?;
        worst = worst.max(psi.distance(&out));
    }
    Ok(worst)
}

/// Per-`u` extraction map
/// `psi -> s_u^T [(q/d) sum_i B_i^* (T o N)(A_i^T s_u psi s_u^dagger A_i^*) B_i^T] s_u^*`,
/// assembled by composing superoperators.
///
/// The outer conjugation undoes `s_u` after the transpose. For qubit Paulis
/// `s_u^T = +-s_u^*`, so it coincides with conjugating by `s_u^*` on the left.
pub fn transpose_extraction_for(ch: &Channel, proto: &LoccProtocol, u: usize) -> Result<SuperOperator> {
    proto.check_against(ch)?;
    let q = proto.distilled_dim()?;
    let paulis = gen_paulis(q)?;
    let s = paulis
        .operators()
        .get(u)
        .ok_or_else(|| Error::InvalidDimension(format!("Pauli index {u} out of range")))?;
    let s_n = superoperator(ch);
    let s_t = transpose_superop(ch.dim_out())?;
    let t_after_n = compose(&s_t, &s_n)?;
    let undo = SuperOperator::conjugation(&s.transpose());
    let mut acc: Option<SuperOperator> = None;
    for (a, b) in proto.pairs() {
        let pre = SuperOperator::conjugation(&(&a.transpose() * s));
        let post = SuperOperator::conjugation(&b.conj());
        let term = compose(&undo, &compose(&post, &compose(&t_after_n, &pre)?)?)?;
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.combine(1.0, &term, 1.0)?,
        });
    }
    let acc = acc.expect("protocol has at least one pair");
    Ok(acc.scale(q as f64 / ch.dim_in() as f64))
}

/// Uniform average over `u` of [`transpose_extraction_for`].
pub fn transpose_extraction(ch: &Channel, proto: &LoccProtocol) -> Result<SuperOperator> {
    let q = proto.distilled_dim()?;
    let n_u = q * q;
    let mut acc = transpose_extraction_for(ch, proto, 0)?;
    for u in 1..n_u {
        acc = acc.combine(1.0, &transpose_extraction_for(ch, proto, u)?, 1.0)?;
    }
    Ok(acc.scale(1.0 / n_u as f64))
}

/// The averaged extraction map evaluated directly on `psi`, without building
/// superoperators.
pub fn transpose_extraction_pointwise(ch: &Channel, proto: &LoccProtocol, psi: &CMatrix) -> Result<CMatrix> {
    proto.check_against(ch)?;
    let q = proto.distilled_dim()?;
    if psi.shape() != (q, q) {
        return Err(Error::DimensionMismatch(format!("expected a {q}x{q} input")));
    }
    let paulis = gen_paulis(q)?;
    let scale = q as f64 / ch.dim_in() as f64 / paulis.len() as f64;
    let mut acc = CMatrix::zeros(q, q);
    for s in paulis.operators() {
        let twisted = &(s * psi) * &s.adjoint();
        let mut inner_sum = CMatrix::zeros(q, q);
        for (a, b) in proto.pairs() {
            let fed = &(&a.transpose() * &twisted) * &a.conj();
            let reversed = ch.apply(&fed)?.transpose();
            inner_sum += &(&(&b.conj() * &reversed) * &b.transpose());
        }
        acc += &(&(&s.transpose() * &inner_sum) * &s.conj());
    }
    Ok(acc.scale_real(scale))
}

/// Evidence bundle relating PPT, the distillation residual and the
/// physicality of the extraction map for one protocol.
#[derive(Clone, Debug, Serialize)]
pub struct NondistillabilityReport {
    pub is_ppt: bool,
    pub ppt_min_eig: f64,
    pub distillation_residual: f64,
    pub extraction_min_choi_eig: f64,
    pub extraction_is_cp: bool,
    /// Frobenius distance between the extraction map and the transpose.
    pub extraction_transpose_distance: f64,
    pub narrative: String,
}

pub fn nondistillability_report(
    ch: &Channel,
    proto: &LoccProtocol,
    samples: usize,
    seed: u64,
) -> Result<NondistillabilityReport> {
    let tol = Tolerances::default();
    let ppt = ppt_test(ch)?;
    let residual = distillation_identity_residual(ch, proto, samples, seed)?;
    let extraction = transpose_extraction(ch, proto)?;
    let check = is_cptp(&extraction, tol.psd);
    let q = proto.distilled_dim()?;
    let transpose_distance = extraction.distance(&transpose_superop(q)?);
    let narrative = if ppt.is_ppt {
        format!(
            "Choi matrix is PPT, so T o N is physical and the extraction map is CP \
             (min Choi eigenvalue {:.3e}). A residual of zero would make it equal the \
             transpose, which is not CP; this protocol's residual is {:.3e}. \
             Sampled evidence, not a proof.",
            check.min_choi_eig, residual
        )
    } else {
        format!(
            "Choi matrix is not PPT (min partially transposed eigenvalue {:.3e}); \
             nothing forbids distillation. Residual {:.3e}, extraction min Choi \
             eigenvalue {:.3e}.",
            ppt.min_eig, residual, check.min_choi_eig
        )
    };
    Ok(NondistillabilityReport {
        is_ppt: ppt.is_ppt,
        ppt_min_eig: ppt.min_eig,
        distillation_residual: residual,
        extraction_min_choi_eig: check.min_choi_eig,
        extraction_is_cp: check.cp,
        extraction_transpose_distance: transpose_distance,
        narrative,
    })
}

/// Protocol families for [`falsification_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProbeFamily {
    /// Independent random local instruments.
    Generic,
    /// Teleportation-shaped pairs dressed with random local unitaries.
    DressedTeleportation,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSummary {
    pub family: ProbeFamily,
    pub protocols: usize,
    pub min_residual: f64,
    pub max_residual: f64,
    pub min_extraction_choi_eig: f64,
    pub all_extractions_cp: bool,
    pub note: String,
}

/// Randomized search for a protocol that distills the Choi matrix of `ch`
/// into a qubit. Reports the best residual found; labelled as evidence.
pub fn falsification_probe(
    ch: &Channel,
    family: ProbeFamily,
    protocols: usize,
    samples: usize,
    seed: u64,
) -> Result<ProbeSummary> {
    let tol = Tolerances::default();
    let mut rng = rng_from_seed(seed);
    let mut min_residual = f64::INFINITY;
    let mut max_residual = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let mut all_cp = true;
    for k in 0..protocols {
        let proto = match family {
            ProbeFamily::Generic => LoccProtocol::random(ch.dim_in(), ch.dim_out(), 2, &mut rng)?,
            ProbeFamily::DressedTeleportation => {
                if ch.dim_in() != ch.dim_out() {
                    return Err(Error::DimensionMismatch(
                        "teleportation-shaped protocols need equal channel dimensions".into(),
                    ));
                }
                LoccProtocol::dressed_teleportation(ch.dim_in(), &mut rng)?
            }
        };
        let residual = distillation_identity_residual(ch, &proto, samples, seed.wrapping_add(k as u64))?;
        let check = is_cptp(&transpose_extraction(ch, &proto)?, tol.psd);
        min_residual = min_residual.min(residual);
        max_residual = max_residual.max(residual);
        min_eig = min_eig.min(check.min_choi_eig);
        all_cp &= check.cp;
    }
    Ok(ProbeSummary {
        family,
        protocols,
        min_residual,
        max_residual,
        min_extraction_choi_eig: min_eig,
        all_extractions_cp: all_cp,
        note: "randomized corroboration only; absence of a good protocol in the sample is not a proof".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::random::random_state_with;

    fn depolarizing(d: usize, p: f64) -> Channel {
        let paulis = gen_paulis(d).unwrap();
        let n = (d * d) as f64;
        let kraus = paulis
            .operators()
            .iter()
            .enumerate()
            .map(|(u, s)| {
                let w = if u == 0 { 1.0 - p + p / n } else { p / n };
                s.scale_real(w.sqrt())
            })
            .collect();
        Channel::new(d, d, kraus).unwrap()
    }

    #[test]
    fn qubit_paulis() {
        let f = gen_paulis(2).unwrap();
        let x = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let z = CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        assert_eq!(f.get(0, 0), &CMatrix::identity(2));
        assert!(f.get(0, 1).distance(&z) < 1e-15);
        assert!(f.get(1, 0).distance(&x) < 1e-15);
        assert!(f.get(1, 1).distance(&(&x * &z)) < 1e-15);
        assert!(gen_paulis(1).is_err());
    }

    #[test]
    fn twirl_and_orthogonality() {
        let mut rng = rng_from_seed(30);
        for d in [2, 3, 5] {
            let f = gen_paulis(d).unwrap();
            assert_eq!(f.len(), d * d);
            for s in f.operators() {
                assert!((&s.adjoint() * s).distance(&CMatrix::identity(d)) < 1e-12);
            }
            let psi = random_state_with(d, &mut rng).into_matrix();
            let t = f.twirl(&psi).scale_real(1.0 / (d * d) as f64);
            assert!(t.distance(&CMatrix::identity(d).scale_real(1.0 / d as f64)) < 1e-12);
            for (u, su) in f.operators().iter().enumerate() {
                for (v, sv) in f.operators().iter().enumerate() {
                    let ip = (&su.adjoint() * sv).trace();
                    let expected = if u == v { d as f64 } else { 0.0 };
                    assert!((ip - Complex64::new(expected, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn protocol_validation() {
        assert!(LoccProtocol::new(vec![]).is_err());
        let half = CMatrix::identity(2).scale_real(0.5);
        assert!(matches!(
            LoccProtocol::new(vec![(half.clone(), half)]),
            Err(Error::NotTracePreserving { .. })
        ));
        assert!(LoccProtocol::teleportation(3).is_ok());
    }

    #[test]
    fn teleport_trivial_protocol() {
        let mut rng = rng_from_seed(31);
        let psi = random_state_with(2, &mut rng);
        let proto = LoccProtocol::trivial(2, 2);
        let out = teleport_through_choi(&depolarizing(2, 1.0), &proto, &psi).unwrap();
        for u in 0..4 {
            let block = CMatrix::from_fn(2, 2, |r, c| out[(r * 4 + u, c * 4 + u)]);
            let normalized = block.scale(Complex64::new(1.0, 0.0) / block.trace());
            assert!(normalized.distance(&CMatrix::identity(2).scale_real(0.5)) < 1e-12);
        }
        let out = teleport_through_choi(&Channel::identity(2), &proto, &psi).unwrap();
        assert!((out.trace().re - 1.0).abs() < 1e-12);
        let summed = CMatrix::from_fn(2, 2, |r, c| (0..4).map(|u| out[(r * 4 + u, c * 4 + u)]).sum());
        assert!(summed.distance(&CMatrix::identity(2).scale_real(0.5)) < 1e-12);
    }

    #[test]
    fn teleportation_distills_identity() {
        let proto = LoccProtocol::teleportation(2).unwrap();
        let r = distillation_identity_residual(&Channel::identity(2), &proto, 20, 1).unwrap();
        assert!(r < 1e-12, "residual {r}");
    }

    #[test]
    fn constant_channel_cannot_distill() {
        let proto = LoccProtocol::trivial(2, 2);
        let r = distillation_identity_residual(&depolarizing(2, 1.0), &proto, 20, 2).unwrap();
        // || psi - I/2 ||_F = 1/sqrt(2) for every pure qubit state
        assert!((r - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn extraction_recovers_transpose_on_identity_channel() {
        let proto = LoccProtocol::teleportation(2).unwrap();
        let e = transpose_extraction(&Channel::identity(2), &proto).unwrap();
        assert!(e.distance(&transpose_superop(2).unwrap()) < 1e-12);
        for u in 0..4 {
            let eu = transpose_extraction_for(&Channel::identity(2), &proto, u).unwrap();
            assert!(eu.distance(&e) < 1e-12);
        }
    }

    #[test]
    fn superoperator_and_pointwise_paths_agree() {
        let mut rng = rng_from_seed(32);
        let ch = crate::opalg::random_channel(3, 2, 2, 5).unwrap();
        let proto = LoccProtocol::random(3, 2, 2, &mut rng).unwrap();
        let e = transpose_extraction(&ch, &proto).unwrap();
        for _ in 0..5 {
            let x = crate::opalg::random::ginibre(2, 2, &mut rng);
            let lhs = e.apply(&x).unwrap();
            let rhs = transpose_extraction_pointwise(&ch, &proto, &x).unwrap();
            assert!(lhs.distance(&rhs) < 1e-10);
        }
    }

    #[test]
    fn dimension_errors() {
        let proto = LoccProtocol::trivial(3, 3);
        assert!(distilled_output(&Channel::identity(2), &proto, &CMatrix::identity(2)).is_err());
        let psi = DensityMatrix::maximally_mixed(3);
        assert!(teleport_through_choi(&Channel::identity(2), &LoccProtocol::trivial(2, 2), &psi).is_err());
    }
}
