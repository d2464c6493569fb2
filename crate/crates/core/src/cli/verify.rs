//! Quick self-checks run by `incapax verify`.

use serde::Serialize;

use crate::antideg::{antidegradability_feasibility, degrading_residual, FeasibilityStatus, DEFAULT_MAX_ITER, EPS_FEAS};
use crate::channel::{compose, is_cptp, superoperator};
use crate::error::Result;
use crate::forbidden::{
    classify_linear_map, ppt_test, tensor_stability_check, transpose_superop, verify_transpose_commutation,
    CommutationStatus, FamilyKind, ForbiddenMapFamily,
};
use crate::locc::{distillation_identity_residual, gen_paulis, LoccProtocol};
use crate::opalg::{random_channel, random_state, CMatrix};

use super::zoo;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub value: f64,
    pub detail: String,
}

fn outcome(name: &'static str, passed: bool, value: f64, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        passed,
        value,
        detail: detail.into(),
    }
}

fn commutation(seed: u64) -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for k in 0..20 {
        let d = 2 + (k % 2) as usize;
        let ch = random_channel(d, d, 1 + (k % 3) as usize, seed.wrapping_add(k))?;
        worst = worst.max(verify_transpose_commutation(&ch)?);
    }
    Ok(outcome("transpose-commutation", worst < 1e-10, worst, "max residual over 20 random channels"))
}

fn ppt_threshold() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let v = ppt_test(&zoo::depolarizing(2, p)?)?;
        worst = worst.max((v.min_eig - (p / 4.0 - (1.0 - p) / 2.0)).abs());
    }
    let flips = !ppt_test(&zoo::depolarizing(2, 0.66)?)?.is_ppt && ppt_test(&zoo::depolarizing(2, 0.67)?)?.is_ppt;
    Ok(outcome("ppt-threshold", worst < 1e-9 && flips, worst, "closed-form min eigenvalue and flip at 2/3"))
}

fn tensor_stability() -> Result<CheckOutcome> {
    let s = tensor_stability_check(&zoo::depolarizing(2, 0.7)?, 2)?;
    Ok(outcome("tensor-stability", s.residual <= 1e-9, s.min_choi_eig, "depolarizing p=0.7, n=2"))
}

fn classifier(seed: u64) -> Result<CheckOutcome> {
    let mut ok = true;
    let mut worst = 0.0f64;
    for kind in [FamilyKind::TransposeFamily, FamilyKind::IdentityFamily] {
        for p in [0.0, 0.5] {
            let r = ForbiddenMapFamily::new(kind, p, 2)?.superoperator();
            let v = classify_linear_map(&r, 2, 64, seed)?;
            let p_hat = match (kind, v.status) {
                (FamilyKind::TransposeFamily, CommutationStatus::CommutingTranspose { p }) => p,
                (FamilyKind::IdentityFamily, CommutationStatus::CommutingIdentity { p }) => p,
                _ => f64::NAN,
            };
            let err = (p_hat - p).abs();
            ok &= err < 1e-8;
            worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
        }
    }
    Ok(outcome("classifier-families", ok, worst, "family kind and p recovered"))
}

fn antideg_erasure() -> Result<CheckOutcome> {
    let ch = zoo::erasure(2, 0.5)?;
    let r = antidegradability_feasibility(&ch, EPS_FEAS, DEFAULT_MAX_ITER)?;
    let residual = match &r.degrader {
        Some(d) => degrading_residual(&ch, d)?,
        None => f64::INFINITY,
    };
    Ok(outcome(
        "antidegradable-erasure",
        r.status == FeasibilityStatus::Feasible && residual < 1e-6,
        residual,
        format!("{:?} after {} iterations", r.status, r.iterations),
    ))
}

fn twirl() -> Result<CheckOutcome> {
    let mut worst = 0.0f64;
    for d in [2, 3, 5] {
        let rho = random_state(d, d as u64).into_matrix();
        let t = gen_paulis(d)?.twirl(&rho);
        worst = worst.max(t.distance(&CMatrix::identity(d).scale_real(d as f64)));
    }
    Ok(outcome("pauli-twirl", worst < 1e-12, worst, "d = 2, 3, 5"))
}

fn teleportation(seed: u64) -> Result<CheckOutcome> {
    let r = distillation_identity_residual(&crate::channel::Channel::identity(2), &LoccProtocol::teleportation(2)?, 16, seed)?;
    Ok(outcome("teleportation-identity", r < 1e-9, r, "perfect protocol on the identity channel"))
}

fn transpose_not_cp() -> Result<CheckOutcome> {
    let t = transpose_superop(2)?;
    let check = is_cptp(&t, 1e-9);
    let involution = compose(&t, &t)?.distance(&superoperator(&crate::channel::Channel::identity(2)));
    Ok(outcome(
        "transpose-map",
        !check.cp && check.tp && involution == 0.0,
        check.min_choi_eig,
        "TP, not CP, involutive",
    ))
}

type Check = Box<dyn Fn() -> Result<CheckOutcome>>;

/// Runs every self-check; errors inside a check count as failures.
pub fn run_checks(seed: u64) -> Vec<CheckOutcome> {
    let checks: Vec<(&'static str, Check)> = vec![
        ("transpose-map", Box::new(transpose_not_cp)),
        ("transpose-commutation", Box::new(move || commutation(seed))),
        ("ppt-threshold", Box::new(ppt_threshold)),
        ("tensor-stability", Box::new(tensor_stability)),
        ("classifier-families", Box::new(move || classifier(seed))),
        ("antidegradable-erasure", Box::new(antideg_erasure)),
        ("pauli-twirl", Box::new(twirl)),
        ("teleportation-identity", Box::new(move || teleportation(seed))),
    ];
    checks
        .into_iter()
        .map(|(name, f)| f().unwrap_or_else(|e| outcome(name, false, f64::NAN, e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        for c in super::run_checks(0) {
            assert!(c.passed, "{} failed: {}", c.name, c.detail);
        }
    }
}
