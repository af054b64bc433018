//! Analysis reports: the stable JSON schema and the text rendering.

use gramdim_core::{DimensionReport, IsoReport, SosCertificate, Status};
use serde::Serialize;

/// JSON schema for `analyze` and `dim`. Field order is the serialized
/// key order; golden-file tests pin it.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisJson {
    pub input: String,
    pub degree: usize,
    pub d: usize,
    pub e: usize,
    pub real_roots: Vec<RealRootJson>,
    pub predicted_dim: u64,
    pub computed_dim: u64,
    pub agreement: bool,
    pub witness_rank: usize,
    pub sos_residual: f64,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RealRootJson {
    pub value: f64,
    pub half_multiplicity: usize,
}

/// Structured diagnostic for rejected input, exit code 2.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorJson {
    pub input: String,
    pub status: String,
    pub error: String,
}

pub fn status_str(status: Status) -> &'static str {
    match status {
        Status::Determined => "determined",
        Status::Undetermined => "undetermined",
    }
}

pub fn analysis_json(input: &str, rep: &DimensionReport) -> AnalysisJson {
    AnalysisJson {
        input: input.to_string(),
        degree: 2 * rep.d,
        d: rep.d,
        e: rep.e,
        real_roots: rep
            .deflation
            .real_roots
            .iter()
            // `+ 0.0` folds negative zero into plain zero for stable output.
            .map(|r| RealRootJson { value: r.value + 0.0, half_multiplicity: r.half_multiplicity })
            .collect(),
        predicted_dim: rep.predicted,
        computed_dim: rep.computed,
        agreement: rep.agreement,
        witness_rank: rep.witness_rank,
        sos_residual: rep.sos_residual,
        status: status_str(rep.status).to_string(),
    }
}

pub fn analysis_text(input: &str, rep: &DimensionReport, cert: Option<&SosCertificate>) -> String {
    let mut out = String::new();
    out.push_str(&format!("input:         {input}\n"));
    out.push_str(&format!("degree:        {} (d = {})\n", 2 * rep.d, rep.d));
    out.push_str(&format!("real roots:    {}\n", root_list(rep)));
    out.push_str(&format!("excess e:      {}\n", rep.e));
    out.push_str(&format!("predicted dim: {}\n", rep.predicted));
    out.push_str(&format!("computed dim:  {}\n", rep.computed));
    out.push_str(&format!("witness rank:  {}\n", rep.witness_rank));
    out.push_str(&format!("sos residual:  {:.3e}\n", rep.sos_residual));
    if let Some(cert) = cert {
        out.push_str(&format!(
            "sos parts:     p degree {}, q degree {}\n",
            deg_of(&cert.p),
            deg_of(&cert.q)
        ));
    }
    out.push_str(&format!(
        "status:        {} ({})\n",
        status_str(rep.status),
        if rep.agreement { "agreement" } else { "disagreement" }
    ));
    out
}

fn root_list(rep: &DimensionReport) -> String {
    if rep.deflation.real_roots.is_empty() {
        return "none".to_string();
    }
    rep.deflation
        .real_roots
        .iter()
        .map(|r| format!("{:.6} (half-mult {})", r.value, r.half_multiplicity))
        .collect::<Vec<_>>()
        .join(", ")
}

fn deg_of(coeffs: &[f64]) -> usize {
    coeffs.iter().rposition(|c| *c != 0.0).unwrap_or(0)
}

/// JSON for `sos`.
#[derive(Debug, Clone, Serialize)]
pub struct SosJson {
    pub input: String,
    pub degree: usize,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub residual: f64,
    pub gram_rank: usize,
}

/// JSON for `lift`.
#[derive(Debug, Clone, Serialize)]
pub struct LiftJson {
    pub input: String,
    pub a: f64,
    pub b: f64,
    pub lifted: String,
    pub coeff_identity: bool,
    pub coeff_identity_err: f64,
    pub psd_preserved: bool,
    pub injective: bool,
    pub dim_source: u64,
    pub dim_lifted: u64,
    pub dim_transport: bool,
}

pub fn lift_json(input: &str, a: f64, b: f64, lifted: &str, iso: &IsoReport) -> LiftJson {
    LiftJson {
        input: input.to_string(),
        a,
        b,
        lifted: lifted.to_string(),
        coeff_identity: iso.coeff_identity,
        coeff_identity_err: iso.coeff_identity_err,
        psd_preserved: iso.psd_preserved,
        injective: iso.injective,
        dim_source: iso.dim_source,
        dim_lifted: iso.dim_lifted,
        dim_transport: iso.dim_transport,
    }
}

/// One row of the selftest table.
#[derive(Debug, Clone, Serialize)]
pub struct SelftestCaseJson {
    pub name: String,
    pub d: usize,
    pub e: usize,
    pub predicted: u64,
    pub computed: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestJson {
    pub cases: Vec<SelftestCaseJson>,
    pub passed: usize,
    pub total: usize,
    pub status: String,
}
