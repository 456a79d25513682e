use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use crislat::commands::{self, Options};
use crislat::report::ReportDocument;
use crislat::{diagnose, Diagnostic, EXIT_CHECK_FAILED};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "crislat", version, about = "Integral lattices in rigid cohomology of hypersurface pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice basis, Hodge data and precision plan for a spec.
    LatticeBasis,
    /// Hodge polygon and precision plan for a spec.
    PrecisionPlan,
    /// Point counts over F_(p^m), m <= --max-ext, and the curve zeta numerator.
    Zeta,
    /// Recompute the two worked examples and compare.
    VerifyExamples,
    /// Random trials of the char-poly loss bound.
    LossHarness,
}

#[derive(Args)]
struct Flags {
    /// Spec document (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Pole order; defaults to the spec's `k`, then the minimal one.
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Field size for the precision plan; defaults to p.
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Largest extension degree for counting (zeta) or probing (lattice-basis).
    #[arg(long, global = true)]
    max_ext: Option<u32>,
    #[arg(long, global = true, default_value_t = 100)]
    trials: u64,
    #[arg(long, global = true, default_value_t = 20_240_601)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Enumeration budget in points.
    #[arg(long, global = true, default_value_t = 1 << 28)]
    budget: u128,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Harness block shape `x|d`, e.g. `1,2,1|1,1`; omit for the standard cases.
    #[arg(long, global = true)]
    shape: Option<String>,
    /// Harness precision N.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Harness prime.
    #[arg(long, global = true)]
    p: Option<u64>,
}

fn run(cmd: &Command, o: &Options) -> Result<ReportDocument> {
    match cmd {
        Command::LatticeBasis => commands::lattice_basis_cmd(o),
        Command::PrecisionPlan => commands::precision_plan_cmd(o),
        Command::Zeta => commands::zeta_cmd(o),
        Command::VerifyExamples => commands::verify_examples_cmd(o),
        Command::LossHarness => commands::loss_harness_cmd(o),
    }
}

fn emit(d: &Diagnostic) {
    eprintln!("{}", serde_json::to_string_pretty(d).expect("diagnostic serializes"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.flags;
    let o = Options {
        spec: f.spec,
        k: f.k,
        q: f.q,
        max_ext: f.max_ext,
        trials: f.trials,
        seed: f.seed,
        threads: f.threads,
        budget: f.budget,
        shape: f.shape,
        precision: f.precision,
        p: f.p,
    };
    let report = match run(&cli.command, &o) {
        Ok(r) => r,
        Err(e) => {
            let (code, d) = diagnose(&e);
            emit(&d);
            return ExitCode::from(code as u8);
        }
    };
    let text = report.to_json();
    match &f.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let (code, d) = diagnose(&anyhow::Error::from(e).context(format!("writing {}", path.display())));
                emit(&d);
                return ExitCode::from(code as u8);
            }
        }
        None => print!("{text}"),
    }
    let failed = report.failed();
    if failed.is_empty() {
        return ExitCode::SUCCESS;
    }
    emit(&Diagnostic {
        status: "failed",
        kind: "CheckFailed".into(),
        violated: failed.iter().map(|s| s.to_string()).collect(),
        message: format!("{} of {} checks failed", failed.len(), report.checks.len()),
    });
    ExitCode::from(EXIT_CHECK_FAILED as u8)
}
