//! Incapacity reports.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

use crate::antideg::{
    antidegradability_feasibility_with, cloning_certificate_from, FeasibilityOptions, FeasibilityStatus,
    DEFAULT_MAX_ITER, EPS_FEAS,
};
use crate::channel::Channel;
use crate::error::Result;
use crate::forbidden::{ppt_test_with, time_reversal_certificate, CertificateReason, ZeroCapacityCertificate};
use crate::opalg::Tolerances;

use super::json::channel_from_str;
use super::zoo::zoo_build;

pub const SCHEMA: &str = "incapax-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where a channel comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelSource {
    Zoo { name: String, params: Vec<(String, f64)> },
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSpec {
    pub source: ChannelSource,
    pub name: String,
}

impl ChannelSpec {
    pub fn zoo(name: &str, params: &[(&str, f64)]) -> Self {
        let params: Vec<(String, f64)> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Self {
            name: zoo_label(name, &params),
            source: ChannelSource::Zoo {
                name: name.to_string(),
                params,
            },
        }
    }

    pub fn file(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        Self {
            name: path.display().to_string(),
            source: ChannelSource::File(path),
        }
    }

    /// Builds or loads the channel; a file's stored name replaces the path
    /// when present.
    pub fn resolve(&self, tol: &Tolerances) -> Result<(String, Channel)> {
        match &self.source {
            ChannelSource::Zoo { name, params } => Ok((self.name.clone(), zoo_build(name, params)?)),
            ChannelSource::File(path) => {
                let named = channel_from_str(&std::fs::read_to_string(path)?, tol)?;
                let name = if named.name.is_empty() { self.name.clone() } else { named.name };
                Ok((name, named.channel))
            }
        }
    }
}

/// `name(k=v,...)` in the given parameter order.
pub fn zoo_label(name: &str, params: &[(String, f64)]) -> String {
    if params.is_empty() {
        return name.to_string();
    }
    let args: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{name}({})", args.join(","))
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub tol: Tolerances,
    pub eps_feas: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Omits wall-clock timing so that reruns are byte-identical.
    pub deterministic: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            eps_feas: EPS_FEAS,
            max_iter: DEFAULT_MAX_ITER,
            seed: 0,
            deterministic: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "PPT-only")]
    PptOnly,
    #[serde(rename = "AD-only")]
    AdOnly,
    #[serde(rename = "both")]
    Both,
    #[serde(rename = "undetected")]
    Undetected,
}

impl Classification {
    pub fn from_verdicts(ppt: bool, antidegradable: bool) -> Self {
        match (ppt, antidegradable) {
            (true, true) => Self::Both,
            (true, false) => Self::PptOnly,
            (false, true) => Self::AdOnly,
            (false, false) => Self::Undetected,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::PptOnly => "PPT-only",
            Self::AdOnly => "AD-only",
            Self::Both => "both",
            Self::Undetected => "undetected",
        }
    }

    pub fn includes_ppt(self) -> bool {
        matches!(self, Self::PptOnly | Self::Both)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChannelInfo {
    pub name: String,
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverSettings {
    pub herm: f64,
    pub psd: f64,
    pub tr: f64,
    pub tp: f64,
    pub eps_feas: f64,
    pub max_iter: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PptSection {
    pub verdict: bool,
    pub min_eig: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AntidegSection {
    pub status: FeasibilityStatus,
    pub distance: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IncapacityReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub channel: ChannelInfo,
    pub seed: u64,
    pub tolerances: SolverSettings,
    pub ppt: PptSection,
    pub antidegradable: AntidegSection,
    pub zero_capacity_reasons: Vec<ZeroCapacityCertificate>,
    pub classification: Classification,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl IncapacityReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.channel;
        let _ = writeln!(s, "channel        {} ({} -> {}, {} Kraus)", c.name, c.dim_in, c.dim_out, c.kraus_count);
        let _ = writeln!(s, "ppt            {} (min eig {:.6e})", self.ppt.verdict, self.ppt.min_eig);
        let a = &self.antidegradable;
        let _ = writeln!(
            s,
            "antidegradable {:?} (distance {:.3e}, {} iterations)",
            a.status, a.distance, a.iterations
        );
        let reasons: Vec<String> = self
            .zero_capacity_reasons
            .iter()
            .map(|r| format!("{:?}", r.reason))
            .collect();
        let _ = writeln!(
            s,
            "reasons        {}",
            if reasons.is_empty() { "none".to_string() } else { reasons.join(", ") }
        );
        let _ = writeln!(s, "classification {}", self.classification.label());
        for n in &self.notes {
            let _ = writeln!(s, "note           {n}");
        }
        s
    }
}

pub fn analyze(spec: &ChannelSpec, opts: &AnalyzeOptions) -> Result<IncapacityReport> {
    let (name, ch) = spec.resolve(&opts.tol)?;
    analyze_channel(&name, &ch, opts)
}

pub fn analyze_channel(name: &str, ch: &Channel, opts: &AnalyzeOptions) -> Result<IncapacityReport> {
    let started = Instant::now();
    let ppt = ppt_test_with(ch, opts.tol.psd)?;
    let feas = antidegradability_feasibility_with(
        ch,
        &FeasibilityOptions {
            eps_feas: opts.eps_feas,
            max_iter: opts.max_iter,
            start: None,
        },
    )?;
    let mut reasons: Vec<ZeroCapacityCertificate> = time_reversal_certificate(&ppt, name).into_iter().collect();
    reasons.extend(cloning_certificate_from(ch, name, &feas, opts.seed)?);
    let antidegradable = reasons.iter().any(|r| r.reason == CertificateReason::Cloning);
    let classification = Classification::from_verdicts(ppt.is_ppt, antidegradable);

    let mut notes = Vec::new();
    if classification == Classification::Undetected {
        notes.push("neither test detects incapacity; this does not establish positive capacity".to_string());
    }
    if feas.status == FeasibilityStatus::Infeasible {
        notes.push("the linear constraints on a degrading map are inconsistent, so no degrading map exists".to_string());
    }
    if feas.status == FeasibilityStatus::Undetermined {
        notes.push("antidegradability solver stalled; no infeasibility is claimed".to_string());
    }
    if antidegradable {
        notes.push("clone map residuals use the Frobenius distance on output operators as the approximation metric".to_string());
    }
    Ok(IncapacityReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION,
        channel: ChannelInfo {
            name: name.to_string(),
            dim_in: ch.dim_in(),
            dim_out: ch.dim_out(),
            kraus_count: ch.kraus().len(),
        },
        seed: opts.seed,
        tolerances: SolverSettings {
            herm: opts.tol.herm,
            psd: opts.tol.psd,
            tr: opts.tol.tr,
            tp: opts.tol.tp,
            eps_feas: opts.eps_feas,
            max_iter: opts.max_iter,
        },
        ppt: PptSection {
            verdict: ppt.is_ppt,
            min_eig: ppt.min_eig,
        },
        antidegradable: AntidegSection {
            status: feas.status,
            distance: feas.distance,
            iterations: feas.iterations,
        },
        zero_capacity_reasons: reasons,
        classification,
        notes,
        elapsed_ms: (!opts.deterministic).then(|| started.elapsed().as_secs_f64() * 1e3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(spec: ChannelSpec) -> Classification {
        analyze(&spec, &AnalyzeOptions::default()).unwrap().classification
    }

    #[test]
    fn figure_regions() {
        assert!(classify(ChannelSpec::zoo("depolarizing", &[("d", 2.0), ("p", 0.7)])).includes_ppt());
        assert_eq!(classify(ChannelSpec::zoo("erasure", &[("d", 2.0), ("p", 0.5)])), Classification::AdOnly);
        assert_eq!(classify(ChannelSpec::zoo("completely_depolarizing", &[("d", 2.0)])), Classification::Both);
    }

    #[test]
    fn identity_is_undetected() {
        let r = analyze(&ChannelSpec::zoo("identity", &[("d", 2.0)]), &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.classification, Classification::Undetected);
        assert!(r.zero_capacity_reasons.is_empty());
        let text = r.to_text();
        assert!(text.contains("undetected"));
        assert!(!text.contains("has capacity"));
    }

    #[test]
    fn deterministic_reports_repeat() {
        let opts = AnalyzeOptions {
            deterministic: true,
            seed: 7,
            ..Default::default()
        };
        let spec = ChannelSpec::zoo("amplitude_damping", &[("gamma", 0.6)]);
        let a = analyze(&spec, &opts).unwrap().to_json().unwrap();
        let b = analyze(&spec, &opts).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\": \"incapax-report/1\""));
        assert!(!a.contains("elapsed_ms"));
    }

    #[test]
    fn labels() {
        assert_eq!(zoo_label("erasure", &[("p".into(), 0.5)]), "erasure(p=0.5)");
        assert_eq!(Classification::from_verdicts(false, false).label(), "undetected");
    }
}
