use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use powermap_cli::dump::RowTable;
use powermap_cli::sweep::{default_workers, run_sweep, KPolicy, SweepConfig};
use powermap_cli::{analyze, dump, emit, verify, CliError, Fault, Result};

#[derive(Parser)]
#[command(
    name = "pmspec",
    version,
    about = "Differential and boomerang spectra of x^{k(q-1)} over F_{q^2}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KPolicyArg {
    AllCoprime,
    List,
}

#[derive(clap::Args)]
struct Tuple {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Compute both spectra, attach predictions and write a report.
    Analyze {
        #[command(flatten)]
        tuple: Tuple,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the check battery; exit 0 only if every check passes.
    Verify {
        #[command(flatten)]
        tuple: Tuple,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Verify a grid of tuples in parallel, appending JSON lines to a file.
    Sweep {
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        p_list: Vec<u32>,
        #[arg(long)]
        m_max: u32,
        #[arg(long, value_enum, default_value = "all-coprime")]
        k_policy: KPolicyArg,
        /// Comma-separated k values for `--k-policy list`.
        #[arg(long, value_delimiter = ',')]
        ks: Vec<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to PMSPEC_WORKERS or the core count.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Write one row of the DDT or BCT as CSV.
    Dump {
        #[command(flatten)]
        tuple: Tuple,
        #[arg(long, value_enum)]
        table: RowTable,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { tuple, format, out } => {
            let report = analyze(tuple.p, tuple.m, tuple.k, None)?;
            let text = match format {
                Format::Json => report.to_json_pretty() + "\n",
                Format::Csv => report.to_csv(),
            };
            emit(&text, out.as_deref())
        }
        Command::Verify {
            tuple,
            inject_fault,
        } => {
            let fault = inject_fault.then_some(Fault::PerturbPredicted);
            let report = verify(tuple.p, tuple.m, tuple.k, fault)?;
            println!(
                "pass ({},{},{}) branch \"{}\" checks {}",
                tuple.p,
                tuple.m,
                tuple.k,
                report.predicted.branch,
                report.verdicts.len()
            );
            Ok(())
        }
        Command::Sweep {
            p_list,
            m_max,
            k_policy,
            ks,
            out,
            workers,
        } => {
            let k_policy = match k_policy {
                KPolicyArg::AllCoprime => KPolicy::AllCoprime,
                KPolicyArg::List => KPolicy::List(ks),
            };
            let config = SweepConfig {
                p_list,
                m_max,
                k_policy,
                out,
                workers: workers.unwrap_or_else(default_workers),
            };
            let summary = run_sweep(&config)?;
            println!(
                "tuples {} pass {} fail {} degenerate {}",
                summary.total, summary.passed, summary.failed, summary.degenerate
            );
            if summary.failed > 0 {
                return Err(CliError::Mismatch(format!(
                    "{} tuples failed",
                    summary.failed
                )));
            }
            Ok(())
        }
        Command::Dump { tuple, table, out } => {
            emit(&dump(tuple.p, tuple.m, tuple.k, table)?, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pmspec: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
