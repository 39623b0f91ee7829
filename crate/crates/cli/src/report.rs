use std::collections::BTreeMap;

use gaussent::oracle::{GeometricFit, TraceMoments};
use gaussent::purification::TypeIIICoefficients;
use gaussent::{EntropyReport, GaussianKernelParams, KernelKind, PureState3, XiPair};
use serde::{Deserialize, Serialize};

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Input {
    #[serde(rename = "type")]
    pub kind: KernelKind,
    pub params: BTreeMap<String, f64>,
}

impl Input {
    pub fn new(p: &GaussianKernelParams) -> Self {
        Self { kind: p.kind(), params: p.named_values().into_iter().map(|(k, v)| (k.to_string(), v)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self { name: name.into(), value, tol, pass: value < tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub half_width: f64,
    pub points_per_axis: usize,
    pub dim: usize,
    pub max_imag: f64,
    pub hermiticity_residual: f64,
    pub moments: TraceMoments,
    pub fit: Option<GeometricFit>,
    pub fit_error: Option<String>,
    /// `(numeric, analytic)` for the leading eigenvalues.
    pub leading: Vec<(f64, f64)>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PurificationSummary {
    pub state: PureState3,
    pub type_iii: Option<TypeIIICoefficients>,
    pub check: Option<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub input: Input,
    pub xi: Option<XiPair>,
    pub entropy: Option<EntropyReport>,
    pub oracle: Option<OracleSummary>,
    pub purification: Option<PurificationSummary>,
    pub warnings: Vec<String>,
    pub elapsed_seconds: f64,
}

impl RunReport {
    pub fn new(command: &str, params: &GaussianKernelParams) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input: Input::new(params),
            xi: None,
            entropy: None,
            oracle: None,
            purification: None,
            warnings: Vec::new(),
            elapsed_seconds: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        // serde_json writes the shortest decimal that parses back to the
        // same f64, so the report round-trips bit for bit.
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

pub fn print_entropy(r: &EntropyReport) {
    let xi: Vec<String> = r.xi.iter().map(f64::to_string).collect();
    println!("xi           {}", xi.join("  "));
    let tag = if r.ansatz_assumed { "  (ansatz-assumed)" } else { "" };
    println!("physicality  {}{tag}", r.physicality);
    println!("purity       {}", r.purity);
    for e in &r.renyi {
        println!("S_{:<10} {}", e.alpha, e.total);
    }
    if let Some(v) = &r.von_neumann {
        println!("S_von        {}", v.total);
    }
    if let Some(why) = &r.von_neumann_omitted {
        println!("S_von        omitted: {why}");
    }
}
