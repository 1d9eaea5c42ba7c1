//! `k3lat`: runs one verification and prints its JSON report.
//!
//! Exit codes: 0 when every verdict passes, 1 on a verification failure,
//! 2 on a usage or input error.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "k3lat", version, about = "Exact lattice certificates for Kummer and K3 surfaces")]
struct Cli {
    /// Render aligned text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Run data-parallel kernels on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Named lattices of the Kummer family.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Orbits of primitive vectors in T_2p.
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Positivity, fibrations and even sets of divisor classes.
    #[command(subcommand)]
    Divisor(DivisorCmd),
    /// Enriques involution certificates.
    #[command(subcommand)]
    Enriques(EnriquesCmd),
    /// Push-forward and pull-back of the (Z/2Z)^4 quotient.
    #[command(subcommand)]
    Quotient(QuotientCmd),
    /// Invariant polynomials and explicit models.
    #[command(subcommand)]
    Models(ModelsCmd),
    /// Invariants of a lattice file.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Every acceptance criterion in one report.
    Suite {
        /// Criterion id, name fragment or group (kummer, orbit, divisor, ...).
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    Build(FamilyBuild),
}

#[derive(Args)]
struct FamilyBuild {
    /// K, N, MG, K4d, NSY, Lambda, Omega or T.
    #[arg(long)]
    name: String,
    #[arg(long, default_value_t = 1)]
    d: u64,
    /// `iv` selects the mixed-block case of NS(Y).
    #[arg(long)]
    case: Option<String>,
    /// Transcendental family for `--name T`: kummer, x1, x2, x3 or y.
    #[arg(long, default_value = "kummer")]
    family: String,
    /// Also write the lattice file here.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum OrbitCmd {
    Classify {
        #[arg(long)]
        p: i64,
        /// Five comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

#[derive(Subcommand)]
enum DivisorCmd {
    Check(DivisorCheck),
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Mode {
    Ample,
    Fibration,
    Evenset,
}

#[derive(Args)]
struct DivisorCheck {
    #[arg(long)]
    lattice: std::path::PathBuf,
    /// Frame coordinates, comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    class: Option<String>,
    #[arg(long, value_enum, default_value = "ample")]
    mode: Mode,
    /// Expected status in ample mode.
    #[arg(long, default_value = "ample_up_to_weyl")]
    expect: String,
    /// Section classes (fibration mode), frame coordinates.
    #[arg(long, allow_hyphen_values = true)]
    section: Vec<String>,
    /// Fiber component classes (fibration mode), frame coordinates.
    #[arg(long, allow_hyphen_values = true)]
    component: Vec<String>,
    /// Frame labels of the curves (evenset mode); default: every `-2` label.
    #[arg(long)]
    curves: Option<String>,
}

#[derive(Subcommand)]
enum EnriquesCmd {
    Search {
        /// t=N, s=N or u=N.
        #[arg(long)]
        q: String,
    },
}

#[derive(Subcommand)]
enum QuotientCmd {
    Verify,
}

#[derive(Subcommand)]
enum ModelsCmd {
    IgusaCheck,
    Invariants {
        #[arg(long)]
        degree: u32,
        /// heisenberg (on P^3) or even-sign (on P^5).
        #[arg(long, default_value = "heisenberg")]
        group: String,
    },
    Gradient {
        #[arg(long)]
        poly: std::path::PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    Info {
        #[arg(long)]
        file: std::path::PathBuf,
    },
    Enumerate {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = if cli.sequential {
        k3lat_core::parallel::Execution::Sequential
    } else {
        k3lat_core::parallel::Execution::default()
    };
    let start = std::time::Instant::now();
    let result = match cli.command {
        Command::Family(FamilyCmd::Build(b)) => {
            commands::family_build(&b.name, b.d, b.case.as_deref(), &b.family, b.out.as_deref())
        }
        Command::Orbit(OrbitCmd::Classify { p, vector }) => commands::orbit_classify(p, &vector),
        Command::Divisor(DivisorCmd::Check(c)) => commands::divisor_check(
            &c.lattice,
            c.class.as_deref(),
            match c.mode {
                Mode::Ample => "ample",
                Mode::Fibration => "fibration",
                Mode::Evenset => "evenset",
            },
            &c.expect,
            &c.section,
            &c.component,
            c.curves.as_deref(),
        ),
        Command::Enriques(EnriquesCmd::Search { q }) => commands::enriques_search(&q),
        Command::Quotient(QuotientCmd::Verify) => commands::quotient_verify(),
        Command::Models(ModelsCmd::IgusaCheck) => commands::igusa_check(),
        Command::Models(ModelsCmd::Invariants { degree, group }) => commands::invariants(degree, &group),
        Command::Models(ModelsCmd::Gradient { poly, point }) => commands::gradient(&poly, &point),
        Command::Lattice(LatticeCmd::Info { file }) => commands::lattice_info(&file),
        Command::Lattice(LatticeCmd::Enumerate { file, norm }) => commands::lattice_enumerate(&file, norm),
        Command::Suite { filter } => Ok(k3lat_core::suite::paper_suite(filter.as_deref(), exec)),
    };
    match result {
        Ok(mut report) => {
            if report.elapsed_ms == 0 {
                report.elapsed_ms = start.elapsed().as_millis() as u64;
            }
            let text = if cli.human { report.to_human() } else { report.to_json() + "\n" };
            // a closed pipe is not a verification failure
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if let Some(v) = report.first_failure() {
                eprintln!("verification failed: {}", v.claim);
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
