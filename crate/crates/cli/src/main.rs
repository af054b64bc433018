//! `gramdim`: analyze the Gram spectrahedron of a univariate polynomial.

use clap::{Args, Parser, Subcommand};
use gramdim_cli::{AnalysisRequest, Command, OutputMode};

#[derive(Parser)]
#[command(
    name = "gramdim",
    about = "Dimension and SOS certificates for Gram spectrahedra of univariate polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Treat the input as a comma/space-separated ascending coefficient list.
    #[arg(long)]
    coeffs: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Relative rank threshold (default: GRAMDIM_RANK_TOL or 1e-8).
    #[arg(long, value_name = "float")]
    rank_tol: Option<f64>,
    /// Sample count for the brute-force sampling oracle (0 disables it).
    #[arg(long, value_name = "N", default_value_t = 0)]
    samples: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full report: nonnegativity, roots, dimension, SOS summary.
    Analyze {
        polynomial: String,
        #[command(flatten)]
        common: Common,
    },
    /// Two-squares SOS certificate.
    Sos {
        polynomial: String,
        #[command(flatten)]
        common: Common,
    },
    /// Predicted and computed spectrahedron dimension.
    Dim {
        polynomial: String,
        #[command(flatten)]
        common: Common,
    },
    /// Lifting isomorphism checks for (ax+b)^2 f.
    Lift {
        polynomial: String,
        /// Lift parameters a and b.
        #[arg(long, num_args = 2, value_names = ["a", "b"], allow_negative_numbers = true)]
        lift: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full dimension battery and report pass/fail per case.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

fn request(cmd: Cmd) -> Result<AnalysisRequest, String> {
    let (command, input, lift_params, common) = match cmd {
        Cmd::Analyze { polynomial, common } => (Command::Analyze, polynomial, None, common),
        Cmd::Sos { polynomial, common } => (Command::Sos, polynomial, None, common),
        Cmd::Dim { polynomial, common } => (Command::Dim, polynomial, None, common),
        Cmd::Lift { polynomial, lift, common } => {
            if lift.len() != 2 {
                return Err("lift requires --lift a b".to_string());
            }
            (Command::Lift, polynomial, Some((lift[0], lift[1])), common)
        }
        Cmd::Selftest { common } => (Command::Selftest, String::new(), None, common),
    };
    if let Some(t) = common.rank_tol {
        if !t.is_finite() || t <= 0.0 {
            return Err("--rank-tol must be a positive finite number".to_string());
        }
    }
    Ok(AnalysisRequest {
        command,
        input,
        coeffs: common.coeffs,
        output_mode: if common.json { OutputMode::Json } else { OutputMode::Text },
        rank_tol: common.rank_tol,
        lift_params,
        samples: common.samples,
    })
}

fn main() {
    let cli = Cli::parse();
    let req = match request(cli.command) {
        Ok(req) => req,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    };
    let outcome = gramdim_cli::run(&req);
    println!("{}", outcome.output.trim_end());
    std::process::exit(outcome.exit_code);
}
