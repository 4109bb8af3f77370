use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qseries::harness::{run, run_inversion, Kernel, RunConfig, Status};
use qseries::identities::catalog;
use qseries::{Precision, QError};

#[derive(Parser)]
#[command(name = "qseries", version, about = "Two-sided verification of basic hypergeometric identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print catalog ids and anchors.
    List {
        /// One JSON object per line.
        #[arg(long)]
        json: bool,
    },
    /// Verify selected identities at random parameter points.
    Verify(VerifyArgs),
    /// Check an inversion pair against the identity matrix.
    Inversion {
        #[arg(long, value_enum)]
        kernel: KernelArg,
        #[arg(long, default_value_t = 16)]
        size: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the whole catalog with default settings.
    Sweep {
        #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
        precision: PrecisionArg,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long = "id", num_args = 1.., required = true)]
    ids: Vec<String>,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 4000)]
    max_terms: usize,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Linear,
    GesselStanton,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Double => Precision::Double,
            PrecisionArg::Extended => Precision::Extended,
        }
    }
}

fn exit_for(e: &QError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        QError::Domain(_) | QError::NotFound(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn verify(config: RunConfig) -> ExitCode {
    let start = Instant::now();
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => return exit_for(&e),
    };
    for r in &report.results {
        let worst = r.worst.as_ref().filter(|w| w.status != Status::Pass);
        println!(
            "{:<24} {}  samples={:<3} rejected={:<4} max_rel_err={:.3e} max_tail={:.3e}{}",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.accepted,
            r.rejections,
            r.max_rel_err,
            r.max_tail,
            worst.map(|w| format!("  worst slot {}", w.slot)).unwrap_or_default(),
        );
        for e in &r.errors {
            println!("    {e}");
        }
    }
    let s = &report.summary;
    println!("{} of {} identities passed in {:.2}s", s.passed, s.identities, start.elapsed().as_secs_f64());
    if let Some(p) = &config.report_path {
        println!("report written to {}", p.display());
    }
    if s.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
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
    match cli.command {
        Command::List { json } => {
            for e in catalog() {
                if json {
                    let v = serde_json::json!({ "id": e.id, "anchor": e.anchor, "params": e.param_names() });
                    println!("{v}");
                } else {
                    println!("{:<24} {}", e.id, e.anchor);
                }
            }
            ExitCode::SUCCESS
        }
        Command::Verify(a) => verify(RunConfig {
            identity_ids: a.ids,
            samples: a.samples,
            seed: a.seed,
            tol: a.tol,
            max_terms: a.max_terms,
            precision: a.precision.into(),
            report_path: a.report,
            timing: a.timing,
        }),
        Command::Sweep { precision, report, timing } => {
            let precision: Precision = precision.into();
            let (samples, tol) = match precision {
                Precision::Double => (50, 1e-8),
                Precision::Extended => (10, 1e-20),
            };
            verify(RunConfig { samples, tol, precision, report_path: report, timing, ..RunConfig::default() })
        }
        Command::Inversion { kernel, size, tol, samples, seed } => {
            if size < 1 || samples < 1 || !(tol > 0.0) {
                eprintln!("error: size and samples must be positive, tol must be > 0");
                return ExitCode::from(2);
            }
            let kernel = match kernel {
                KernelArg::Linear => Kernel::Linear,
                KernelArg::GesselStanton => Kernel::GesselStanton,
            };
            let start = Instant::now();
            match run_inversion(kernel, size, tol, samples, seed) {
                Ok(r) => {
                    println!(
                        "{:?} N={} samples={} max_deviation={:.3e} bits={} {} ({:.2}s)",
                        r.kernel,
                        r.size,
                        r.samples,
                        r.max_deviation,
                        r.max_bits,
                        if r.pass { "PASS" } else { "FAIL" },
                        start.elapsed().as_secs_f64()
                    );
                    if r.pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => exit_for(&e),
            }
        }
    }
}
