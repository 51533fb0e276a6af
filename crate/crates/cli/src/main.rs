use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::Report;

/// Exact computations in mod-p cohomology of elementary abelian groups.
#[derive(Debug, Parser)]
#[command(name = "modinv", version, about)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
struct Field {
    /// Odd prime, 3..=97.
    #[arg(short = 'p', long = "p")]
    p: u32,
    /// Rank of the elementary abelian group.
    #[arg(short = 'n', long = "n")]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dickson classes e_n and c_{n,i} with degrees.
    Dickson {
        #[command(flatten)]
        field: Field,
    },
    /// The Moore determinant, checked against Q_0...Q_{n-1}(dt_1...dt_n).
    Moore {
        #[command(flatten)]
        field: Field,
    },
    /// Apply an operation word such as "Q0,Q1,P2" to a class.
    Apply {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        ops: String,
        #[arg(long)]
        expr: String,
    },
    /// Test invariance of a class under SL_n or GL_n.
    Invariance {
        #[command(flatten)]
        field: Field,
        #[arg(long, value_parser = ["sl", "gl"], ignore_case = true)]
        group: String,
        #[arg(long)]
        expr: String,
    },
    /// Decompose a polynomial in the generators of D_n or SD_n.
    Membership {
        #[command(flatten)]
        field: Field,
        #[arg(long, value_parser = ["d", "sd"], ignore_case = true)]
        ring: String,
        #[arg(long)]
        expr: String,
    },
    /// Orbit of a nonzero vector of V_n.
    Orbit {
        #[command(flatten)]
        field: Field,
        #[arg(long, value_parser = ["sl", "gl"], ignore_case = true)]
        group: String,
        /// Comma-separated residues, e.g. "1,0".
        #[arg(long, allow_hyphen_values = true)]
        start: String,
    },
    /// Invariant dimensions per degree against the free-module prediction.
    Hilbert {
        #[command(flatten)]
        field: Field,
        #[arg(long, value_parser = ["sl", "gl"], ignore_case = true)]
        group: String,
        #[arg(long)]
        max_degree: u64,
        /// Also list a basis in each degree.
        #[arg(long)]
        basis: bool,
    },
    /// Whether x^a lies in D_n for a = 1..a_max.
    TheoremMain {
        #[command(flatten)]
        field: Field,
        /// pu (n = 2) or rank3 (n = 3); inferred from n when omitted.
        #[arg(long, value_parser = ["pu", "rank3"], ignore_case = true)]
        case: Option<String>,
        /// Defaults to 2(p-1).
        #[arg(long)]
        a_max: Option<u64>,
    },
    /// Total Chern class of the regular representation against the Dickson classes.
    ChernReg {
        #[command(flatten)]
        field: Field,
    },
    /// Chern classes of a representation given by a weights file.
    ChernRep {
        #[command(flatten)]
        field: Field,
        #[arg(long, value_name = "FILE")]
        weights: PathBuf,
    },
    /// Divisibility profile of c(rho) by the factors 1 + v.
    Mu {
        #[command(flatten)]
        field: Field,
        #[arg(long, value_name = "FILE")]
        weights: PathBuf,
    },
    /// Low-degree SL-invariants: dt_1 dt_2 (n = 2) or Q_0(dt_1 dt_2 dt_3) (n = 3).
    PropIso {
        #[command(flatten)]
        field: Field,
    },
    /// Second Chern class of the E_8 adjoint representation on a circle.
    E8Adjoint {
        #[arg(short = 'p', long = "p", value_parser = clap::value_parser!(u32).range(3..=5))]
        p: u32,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
    },
}

fn run(command: Command) -> anyhow::Result<Report> {
    use commands::*;
    match command {
        Command::Dickson { field } => dickson(field.p, field.n),
        Command::Moore { field } => moore(field.p, field.n),
        Command::Apply { field, ops, expr } => apply(field.p, field.n, &ops, &expr),
        Command::Invariance { field, group, expr } => invariance(field.p, field.n, &group, &expr),
        Command::Membership { field, ring, expr } => membership(field.p, field.n, &ring, &expr),
        Command::Orbit {
            field,
            group,
            start,
        } => orbit(field.p, field.n, &group, &start),
        Command::Hilbert {
            field,
            group,
            max_degree,
            basis,
        } => hilbert(field.p, field.n, &group, max_degree, basis),
        Command::TheoremMain { field, case, a_max } => {
            theorem_main(field.p, field.n, case.as_deref(), a_max)
        }
        Command::ChernReg { field } => chern_reg(field.p, field.n),
        Command::ChernRep { field, weights } => chern_rep(field.p, field.n, &read(&weights)?),
        Command::Mu { field, weights } => mu(field.p, field.n, &read(&weights)?),
        Command::PropIso { field } => prop_iso(field.p, field.n),
        Command::E8Adjoint { p, trunc } => e8_adjoint(p, trunc),
    }
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))
}

/// 1 when a mathematical check failed, 2 for anything the user can fix.
fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<modinv::Error>() {
        Some(modinv::Error::Consistency(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    let mut body = if cli.json {
        serde_json::to_string_pretty(&report.json).expect("JSON value")
    } else {
        report.text.trim_end().to_string()
    };
    body.push('\n');
    let written = match &cli.out {
        Some(path) => {
            fs::write(path, &body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("check failed");
        ExitCode::from(1)
    }
}
