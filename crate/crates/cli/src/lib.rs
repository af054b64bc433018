//! Command surface for the Gram spectrahedron analyzer.
//!
//! `run` executes a parsed request and returns the rendered report plus
//! a process exit code: 0 for success and agreement, 1 for disagreement
//! or an undetermined verification, 2 for rejected input.

pub mod parser;
pub mod report;

use gramdim_core::battery::{theorem_battery, BATTERY_SEED};
use gramdim_core::{
    brute_force_dimension, psd_line_search, two_squares, verify_dimension, verify_isomorphism,
    Error, Polynomial, Tolerances,
};
use num_rational::BigRational;
use report::{
    analysis_json, analysis_text, lift_json, ErrorJson, SelftestCaseJson, SelftestJson, SosJson,
};

pub const DEFAULT_RANK_TOL: f64 = 1e-8;
pub const BRUTE_FORCE_SEED: u64 = 0x6f7261;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Sos,
    Dim,
    Lift,
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

/// A fully resolved invocation.
#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub command: Command,
    /// Raw polynomial source; empty for `selftest`.
    pub input: String,
    /// Force coefficient-list parsing of `input`.
    pub coeffs: bool,
    pub output_mode: OutputMode,
    /// Overrides the rank threshold; defaults to `GRAMDIM_RANK_TOL` or 1e-8.
    pub rank_tol: Option<f64>,
    /// `(a, b)` for `lift`.
    pub lift_params: Option<(f64, f64)>,
    /// Sample count for the brute-force oracle; 0 disables it.
    pub samples: usize,
}

/// Rendered output plus process exit code.
pub struct RunOutcome {
    pub output: String,
    pub exit_code: i32,
}

fn rank_tol_default() -> f64 {
    std::env::var("GRAMDIM_RANK_TOL")
        .ok()
        .and_then(|v| v.parse::<f64>().ok())
        .filter(|v| v.is_finite() && *v > 0.0)
        .unwrap_or(DEFAULT_RANK_TOL)
}

fn tolerances(req: &AnalysisRequest) -> Tolerances {
    Tolerances { rank_rel: req.rank_tol.unwrap_or_else(rank_tol_default), ..Tolerances::default() }
}

fn input_error(req: &AnalysisRequest, msg: String) -> RunOutcome {
    let output = match req.output_mode {
        OutputMode::Json => {
            let diag = ErrorJson {
                input: req.input.clone(),
                status: "input_error".to_string(),
                error: msg,
            };
            serde_json::to_string_pretty(&diag).expect("serializable")
        }
        OutputMode::Text => format!("error: {msg}"),
    };
    RunOutcome { output, exit_code: 2 }
}

fn parse_input(req: &AnalysisRequest) -> Result<Polynomial, String> {
    let parsed = if req.coeffs {
        parser::parse_coeff_list(&req.input)
    } else {
        parser::parse_polynomial(&req.input)
    };
    parsed.map_err(|e| e.to_string())
}

/// Rejects polynomials the spectrahedron pipeline cannot accept, with a
/// structured diagnostic instead of a numerical failure downstream.
fn check_admissible(f: &Polynomial) -> Result<(), String> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial.to_string());
    }
    let deg = f.degree().expect("nonzero");
    if deg % 2 != 0 {
        return Err(format!("{} (odd degree {deg})", Error::NotNonnegative));
    }
    if !f.is_nonnegative() {
        return Err(Error::NotNonnegative.to_string());
    }
    Ok(())
}

pub fn run(req: &AnalysisRequest) -> RunOutcome {
    match req.command {
        Command::Selftest => run_selftest(req),
        Command::Analyze | Command::Dim => run_dimension(req),
        Command::Sos => run_sos(req),
        Command::Lift => run_lift(req),
    }
}

fn run_dimension(req: &AnalysisRequest) -> RunOutcome {
    let f = match parse_input(req) {
        Ok(f) => f,
        Err(msg) => return input_error(req, msg),
    };
    if let Err(msg) = check_admissible(&f) {
        return input_error(req, msg);
    }
    let tol = tolerances(req);
    let rep = match verify_dimension(&f, &tol) {
        Ok(rep) => rep,
        Err(e) => return input_error(req, e.to_string()),
    };
    let mut agreement = rep.agreement;
    let mut oracle_line = String::new();
    if req.samples > 0 {
        match brute_force_dimension(&f, req.samples, BRUTE_FORCE_SEED, &tol) {
            Ok(sampled) => {
                agreement &= sampled as u64 == rep.computed;
                oracle_line = format!("sampled dim:   {sampled} ({} samples)\n", req.samples);
            }
            Err(e) => return input_error(req, e.to_string()),
        }
    }
    let exit_code = i32::from(!(agreement && rep.status == gramdim_core::Status::Determined));
    let output = match req.output_mode {
        OutputMode::Json => {
            let mut json = analysis_json(&req.input, &rep);
            json.agreement = agreement;
            serde_json::to_string_pretty(&json).expect("serializable")
        }
        OutputMode::Text => {
            let cert = if req.command == Command::Analyze { two_squares(&f).ok() } else { None };
            let mut text = analysis_text(&req.input, &rep, cert.as_ref());
            text.push_str(&oracle_line);
            if req.command == Command::Analyze {
                if let Ok((lo, hi)) = kernel_interval(&f, &tol) {
                    text.push_str(&format!("kernel range:  [{lo:.6}, {hi:.6}]\n"));
                }
            }
            text
        }
    };
    RunOutcome { output, exit_code }
}

/// Feasible interval of the first kernel direction from the certificate
/// point, shown in `analyze` text output.
fn kernel_interval(f: &Polynomial, tol: &Tolerances) -> gramdim_core::Result<(f64, f64)> {
    let space = gramdim_core::build_gram_space(f)?;
    let cert = two_squares(f)?;
    let start = space.project(&cert.gram_point);
    let dir = space
        .kernel
        .first()
        .ok_or_else(|| Error::Numerical("no kernel directions".to_string()))?;
    psd_line_search(&start, dir, tol)
}

fn run_sos(req: &AnalysisRequest) -> RunOutcome {
    let f = match parse_input(req) {
        Ok(f) => f,
        Err(msg) => return input_error(req, msg),
    };
    if let Err(msg) = check_admissible(&f) {
        return input_error(req, msg);
    }
    let tol = tolerances(req);
    let cert = match two_squares(&f) {
        Ok(cert) => cert,
        Err(e) => return input_error(req, e.to_string()),
    };
    let rank = cert.gram_point.rank(tol.rank_rel);
    let output = match req.output_mode {
        OutputMode::Json => {
            let json = SosJson {
                input: req.input.clone(),
                degree: f.degree().expect("nonzero"),
                p: cert.p.clone(),
                q: cert.q.clone(),
                residual: cert.residual,
                gram_rank: rank,
            };
            serde_json::to_string_pretty(&json).expect("serializable")
        }
        OutputMode::Text => {
            let mut text = String::new();
            text.push_str(&format!("input:      {}\n", req.input));
            text.push_str(&format!("f = p^2 + q^2 with ascending coefficients\n"));
            text.push_str(&format!("p:          {:?}\n", cert.p));
            text.push_str(&format!("q:          {:?}\n", cert.q));
            text.push_str(&format!("residual:   {:.3e}\n", cert.residual));
            text.push_str(&format!("gram rank:  {rank}\n"));
            text
        }
    };
    let exit_code = i32::from(cert.residual > gramdim_core::sos::SOS_RESIDUAL_TOL);
    RunOutcome { output, exit_code }
}

fn rational_of(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

fn run_lift(req: &AnalysisRequest) -> RunOutcome {
    let (a, b) = match req.lift_params {
        Some(p) => p,
        None => return input_error(req, "lift requires --lift a b".to_string()),
    };
    let f = match parse_input(req) {
        Ok(f) => f,
        Err(msg) => return input_error(req, msg),
    };
    if let Err(msg) = check_admissible(&f) {
        return input_error(req, msg);
    }
    let (ar, br) = match (rational_of(a), rational_of(b)) {
        (Some(ar), Some(br)) => (ar, br),
        _ => return input_error(req, "lift parameters must be finite".to_string()),
    };
    let tol = tolerances(req);
    let iso = match verify_isomorphism(&f, &ar, &br, &tol) {
        Ok(iso) => iso,
        Err(e) => return input_error(req, e.to_string()),
    };
    let linear = Polynomial::normalize(vec![br, ar]);
    let lifted = linear.mul(&linear).mul(&f);
    let lifted_txt = parser::render(&lifted);
    let ok = iso.coeff_identity && iso.psd_preserved && iso.injective && iso.dim_transport;
    let output = match req.output_mode {
        OutputMode::Json => {
            let json = lift_json(&req.input, a, b, &lifted_txt, &iso);
            serde_json::to_string_pretty(&json).expect("serializable")
        }
        OutputMode::Text => {
            let mut text = String::new();
            text.push_str(&format!("input:           {}\n", req.input));
            text.push_str(&format!("lift:            (a, b) = ({a}, {b})\n"));
            text.push_str(&format!("lifted:          {lifted_txt}\n"));
            text.push_str(&format!(
                "coeff identity:  {} (err {:.3e})\n",
                iso.coeff_identity, iso.coeff_identity_err
            ));
            text.push_str(&format!("psd preserved:   {}\n", iso.psd_preserved));
            text.push_str(&format!(
                "injective:       {} (rank {})\n",
                iso.injective, iso.injectivity_rank
            ));
            text.push_str(&format!(
                "dim transport:   {} ({} -> {})\n",
                iso.dim_transport, iso.dim_source, iso.dim_lifted
            ));
            text
        }
    };
    RunOutcome { output, exit_code: i32::from(!ok) }
}

fn run_selftest(req: &AnalysisRequest) -> RunOutcome {
    let tol = tolerances(req);
    let mut cases = Vec::new();
    let mut passed = 0;
    for case in theorem_battery(BATTERY_SEED, 8, 2) {
        let (computed, pass) = match verify_dimension(&case.poly, &tol) {
            Ok(rep) => {
                let mut ok =
                    rep.agreement && rep.status == gramdim_core::Status::Determined;
                if req.samples > 0 && case.d <= 3 {
                    ok &= brute_force_dimension(&case.poly, req.samples, BRUTE_FORCE_SEED, &tol)
                        .map(|s| s as u64 == rep.computed)
                        .unwrap_or(false);
                }
                (rep.computed, ok)
            }
            Err(_) => (0, false),
        };
        let predicted =
            gramdim_core::binom((case.d - case.e) as u64, 2);
        passed += usize::from(pass);
        cases.push(SelftestCaseJson {
            name: case.name,
            d: case.d,
            e: case.e,
            predicted,
            computed,
            pass,
        });
    }
    let total = cases.len();
    let all_pass = passed == total;
    let output = match req.output_mode {
        OutputMode::Json => {
            let json = SelftestJson {
                cases,
                passed,
                total,
                status: if all_pass { "pass" } else { "fail" }.to_string(),
            };
            serde_json::to_string_pretty(&json).expect("serializable")
        }
        OutputMode::Text => {
            let mut text = String::new();
            text.push_str("case      d  e  predicted  computed  result\n");
            for c in &cases {
                text.push_str(&format!(
                    "{:<8} {:>2} {:>2} {:>10} {:>9}  {}\n",
                    c.name,
                    c.d,
                    c.e,
                    c.predicted,
                    c.computed,
                    if c.pass { "pass" } else { "FAIL" }
                ));
            }
            text.push_str(&format!("passed {passed}/{total}\n"));
            text
        }
    };
    RunOutcome { output, exit_code: i32::from(!all_pass) }
}
