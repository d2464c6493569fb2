//! Named channel families.

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::locc::gen_paulis;
use crate::opalg::{random_channel, CMatrix};

/// A registered family with its parameter names and ranges.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ZooEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub description: &'static str,
}

pub const ZOO: &[ZooEntry] = &[
    ZooEntry {
        name: "identity",
        params: &["d"],
        description: "noiseless channel on d levels",
    },
    ZooEntry {
        name: "depolarizing",
        params: &["d", "p"],
        description: "(1-p) rho + p I/d, p in [0, 1]",
    },
    ZooEntry {
        name: "erasure",
        params: &["d", "p"],
        description: "replaces the input by the flag |d> with probability p; output dimension d+1",
    },
    ZooEntry {
        name: "dephasing",
        params: &["d", "p"],
        description: "(1-p) rho + p diag(rho), p in [0, 1]",
    },
    ZooEntry {
        name: "amplitude_damping",
        params: &["gamma"],
        description: "qubit decay |1> -> |0> with probability gamma in [0, 1]",
    },
    ZooEntry {
        name: "completely_depolarizing",
        params: &["d"],
        description: "rho -> Tr(rho) I/d",
    },
    ZooEntry {
        name: "random",
        params: &["d_in", "d_out", "k", "seed"],
        description: "k Kraus operators sliced from a Haar isometry; needs k d_out >= d_in",
    },
];

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::ParameterOutOfRange(format!("d = {d}, need d >= 2")));
    }
    Ok(())
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange(format!("{name} = {p} not in [0, 1]")));
    }
    Ok(())
}

pub fn identity(d: usize) -> Result<Channel> {
    check_dim(d)?;
    Ok(Channel::identity(d))
}

/// Kraus form `sqrt(1-p+p/d^2) I` and `sqrt(p/d^2) sigma_u` for `u != 0`.
pub fn depolarizing(d: usize, p: f64) -> Result<Channel> {
    check_dim(d)?;
    check_prob("p", p)?;
    let d2 = (d * d) as f64;
    let kraus = gen_paulis(d)?
        .operators()
        .iter()
        .enumerate()
        .map(|(u, s)| {
            let w = if u == 0 { 1.0 - p + p / d2 } else { p / d2 };
            s.scale_real(w.sqrt())
        })
        .collect();
    Channel::new(d, d, kraus)
}

pub fn completely_depolarizing(d: usize) -> Result<Channel> {
    depolarizing(d, 1.0)
}

pub fn erasure(d: usize, p: f64) -> Result<Channel> {
    check_dim(d)?;
    check_prob("p", p)?;
    let keep = CMatrix::from_fn(d + 1, d, |r, c| {
        if r == c {
            Complex64::new((1.0 - p).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mut kraus = vec![keep];
    for j in 0..d {
        let mut k = CMatrix::zeros(d + 1, d);
        k[(d, j)] = Complex64::new(p.sqrt(), 0.0);
        kraus.push(k);
    }
    Channel::new(d, d + 1, kraus)
}

/// Kraus form `sqrt(1-p) I` and `sqrt(p) |i><i|`.
pub fn dephasing(d: usize, p: f64) -> Result<Channel> {
    check_dim(d)?;
    check_prob("p", p)?;
    let mut kraus = vec![CMatrix::identity(d).scale_real((1.0 - p).sqrt())];
    for i in 0..d {
        kraus.push(CMatrix::projector(&CMatrix::basis_ket(d, i)).scale_real(p.sqrt()));
    }
    Channel::new(d, d, kraus)
}

pub fn amplitude_damping(gamma: f64) -> Result<Channel> {
    check_prob("gamma", gamma)?;
    let k0 = CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, (1.0 - gamma).sqrt()]]);
    let k1 = CMatrix::from_real_rows(&[&[0.0, gamma.sqrt()], &[0.0, 0.0]]);
    Channel::new(2, 2, vec![k0, k1])
}

pub fn random(d_in: usize, d_out: usize, k: usize, seed: u64) -> Result<Channel> {
    if d_in == 0 || d_out == 0 || k == 0 || k * d_out < d_in {
        return Err(Error::ParameterOutOfRange(format!(
            "random channel needs positive sizes and k d_out >= d_in (got d_in={d_in}, d_out={d_out}, k={k})"
        )));
    }
    random_channel(d_in, d_out, k, seed)
}

/// Looks up a parameter by name, falling back to `default`.
fn param(params: &[(String, f64)], key: &str, default: Option<f64>) -> Result<f64> {
    params
        .iter()
        .rev()
        .find(|(k, _)| k == key)
        .map(|(_, v)| *v)
        .or(default)
        .ok_or_else(|| Error::ParameterOutOfRange(format!("missing parameter '{key}'")))
}

fn int_param(params: &[(String, f64)], key: &str, default: Option<f64>) -> Result<usize> {
    let v = param(params, key, default)?;
    if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
        return Err(Error::ParameterOutOfRange(format!("{key} = {v} is not a non-negative integer")));
    }
    Ok(v as usize)
}

/// Builds a zoo channel from `key = value` parameters. `d` defaults to 2.
pub fn zoo_build(name: &str, params: &[(String, f64)]) -> Result<Channel> {
    let entry = ZOO
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownChannel(name.to_string()))?;
    if let Some((k, _)) = params.iter().find(|(k, _)| !entry.params.contains(&k.as_str())) {
        return Err(Error::ParameterOutOfRange(format!("'{name}' takes no parameter '{k}'")));
    }
    match name {
        "identity" => identity(int_param(params, "d", Some(2.0))?),
        "depolarizing" => depolarizing(int_param(params, "d", Some(2.0))?, param(params, "p", None)?),
        "erasure" => erasure(int_param(params, "d", Some(2.0))?, param(params, "p", None)?),
        "dephasing" => dephasing(int_param(params, "d", Some(2.0))?, param(params, "p", None)?),
        "amplitude_damping" => amplitude_damping(param(params, "gamma", None)?),
        "completely_depolarizing" => completely_depolarizing(int_param(params, "d", Some(2.0))?),
        "random" => random(
            int_param(params, "d_in", Some(2.0))?,
            int_param(params, "d_out", Some(2.0))?,
            int_param(params, "k", Some(2.0))?,
            int_param(params, "seed", Some(0.0))? as u64,
        ),
        _ => unreachable!("registered names are matched above"),
    }
}
