//! JSON formats for channels and superoperators.
//!
//! Complex entries are `[re, im]` pairs; matrices are lists of rows. Floats
//! are written in shortest round-trip form, so a save/load cycle is lossless.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{Channel, SuperOperator};
use crate::error::{Error, Result};
use crate::opalg::{CMatrix, Tolerances};

type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Serialize, Deserialize)]
struct ChannelFile {
    #[serde(default)]
    name: String,
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<JsonMatrix>,
}

#[derive(Serialize, Deserialize)]
struct SuperOperatorFile {
    dim_in: usize,
    dim_out: usize,
    mat: JsonMatrix,
}

fn to_json_matrix(m: &CMatrix) -> JsonMatrix {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

fn from_json_matrix(rows: &JsonMatrix, expect: (usize, usize), what: &str) -> Result<CMatrix> {
    if rows.len() != expect.0 || rows.iter().any(|r| r.len() != expect.1) {
        return Err(Error::Malformed(format!(
            "{what} must be {}x{}",
            expect.0, expect.1
        )));
    }
    let data: Vec<Complex64> = rows.iter().flatten().map(|&[re, im]| Complex64::new(re, im)).collect();
    let m = CMatrix::from_vec(expect.0, expect.1, data)?;
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(m)
}

/// A channel together with the name stored in its file.
#[derive(Clone, Debug)]
pub struct NamedChannel {
    pub name: String,
    pub channel: Channel,
}

pub fn channel_from_str(s: &str, tol: &Tolerances) -> Result<NamedChannel> {
    let file: ChannelFile = serde_json::from_str(s)?;
    if file.dim_in == 0 || file.dim_out == 0 || file.kraus.is_empty() {
        return Err(Error::Malformed("dimensions and the Kraus list must be non-empty".into()));
    }
    let kraus = file
        .kraus
        .iter()
        .enumerate()
        .map(|(i, k)| from_json_matrix(k, (file.dim_out, file.dim_in), &format!("Kraus operator {i}")))
        .collect::<Result<Vec<_>>>()?;
    let channel = Channel::new_with_tol(file.dim_in, file.dim_out, kraus, tol.tp)?;
    Ok(NamedChannel {
        name: file.name,
        channel,
    })
}

pub fn channel_to_string(ch: &Channel, name: &str) -> Result<String> {
    let file = ChannelFile {
        name: name.to_string(),
        dim_in: ch.dim_in(),
        dim_out: ch.dim_out(),
        kraus: ch.kraus().iter().map(to_json_matrix).collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn channel_from_json(path: impl AsRef<Path>) -> Result<NamedChannel> {
    channel_from_str(&fs::read_to_string(path)?, &Tolerances::default())
}

pub fn channel_to_json(ch: &Channel, name: &str, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, channel_to_string(ch, name)?)?;
    Ok(())
}

pub fn superoperator_from_str(s: &str) -> Result<SuperOperator> {
    let file: SuperOperatorFile = serde_json::from_str(s)?;
    let shape = (file.dim_out * file.dim_out, file.dim_in * file.dim_in);
    SuperOperator::new(file.dim_in, file.dim_out, from_json_matrix(&file.mat, shape, "superoperator")?)
}

pub fn superoperator_to_string(s: &SuperOperator) -> Result<String> {
    Ok(serde_json::to_string_pretty(&SuperOperatorFile {
        dim_in: s.dim_in(),
        dim_out: s.dim_out(),
        mat: to_json_matrix(s.matrix()),
    })?)
}

pub fn superoperator_from_json(path: impl AsRef<Path>) -> Result<SuperOperator> {
    superoperator_from_str(&fs::read_to_string(path)?)
}
