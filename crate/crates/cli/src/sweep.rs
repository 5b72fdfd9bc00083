//! Parallel verification over a grid of (p, m, k).

use std::fs::OpenOptions;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::thread;

use powermap_spectra::field::{checked_order, is_prime};
use powermap_spectra::{FieldCtx, PowerMapSpec};
use rayon::prelude::*;

use crate::battery::{evaluate, FieldChecks};
use crate::error::{CliError, Result};
use crate::report::AnalysisReport;

/// Overrides the default worker count.
pub const WORKERS_ENV: &str = "PMSPEC_WORKERS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KPolicy {
    /// Every k in [1, q+1) coprime to q+1.
    AllCoprime,
    /// The listed k that are coprime to q+1; the rest are skipped.
    List(Vec<u64>),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub p_list: Vec<u32>,
    pub m_max: u32,
    pub k_policy: KPolicy,
    pub out: PathBuf,
    pub workers: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Worker count from the environment, else the machine's parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

pub fn ks_for(q: u64, policy: &KPolicy) -> Vec<u64> {
    let modulus = q + 1;
    match policy {
        KPolicy::AllCoprime => (1..modulus).filter(|&k| gcd(k, modulus) == 1).collect(),
        KPolicy::List(ks) => ks
            .iter()
            .copied()
            .filter(|&k| gcd(k % modulus, modulus) == 1)
            .collect(),
    }
}

/// The (p, m) grid, rejecting bad input before any work starts.
pub fn fields_for(config: &SweepConfig) -> Result<Vec<(u32, u32)>> {
    if config.p_list.is_empty() {
        return Err(CliError::Invalid("empty p list".into()));
    }
    if config.m_max == 0 {
        return Err(CliError::Invalid("m_max must be at least 1".into()));
    }
    if let KPolicy::List(ks) = &config.k_policy {
        if ks.is_empty() {
            return Err(CliError::Invalid("empty k list".into()));
        }
    }
    let mut fields = Vec::new();
    for &p in &config.p_list {
        if !is_prime(p as u64) {
            return Err(CliError::Invalid(format!("{p} is not prime")));
        }
        for m in 1..=config.m_max {
            checked_order(p as u64, m)?;
            fields.push((p, m));
        }
    }
    fields.sort_unstable();
    fields.dedup();
    Ok(fields)
}

type Record = std::result::Result<AnalysisReport, String>;

fn run_field(p: u32, m: u32, policy: &KPolicy, tx: &mpsc::Sender<Record>) {
    let ctx = match FieldCtx::build(p, m) {
        Ok(ctx) => ctx,
        Err(e) => {
            let _ = tx.send(Err(format!("field ({p},{m}): {e}")));
            return;
        }
    };
    let checks = match FieldChecks::compute(&ctx) {
        Ok(checks) => checks,
        Err(e) => {
            let _ = tx.send(Err(format!("field ({p},{m}): {e}")));
            return;
        }
    };
    let ks = ks_for(ctx.q() as u64, policy);
    ks.par_iter().for_each_with(tx.clone(), |tx, &k| {
        let record = PowerMapSpec::new(p, m, k)
            .map_err(CliError::from)
            .and_then(|map| evaluate(&ctx, &map, &checks, None))
            .map_err(|e| format!("tuple ({p},{m},{k}): {e}"));
        let _ = tx.send(record);
    });
}

/// Runs the grid on a pool of `config.workers` threads. Records are appended
/// to `config.out` as JSON lines by a single collector thread.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary> {
    let fields = fields_for(config)?;
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&config.out)
        .map_err(|e| CliError::io(config.out.display().to_string(), e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;

    let (tx, rx) = mpsc::channel::<Record>();
    let out_path = config.out.clone();
    let collector = thread::spawn(move || collect(rx, file, &out_path));

    let policy = config.k_policy.clone();
    pool.install(|| {
        fields
            .par_iter()
            .for_each_with(tx, |tx, &(p, m)| run_field(p, m, &policy, tx));
    });
    collector
        .join()
        .map_err(|_| CliError::Internal("collector panicked".into()))?
}

fn collect(rx: mpsc::Receiver<Record>, file: std::fs::File, path: &Path) -> Result<SweepSummary> {
    let mut writer = BufWriter::new(file);
    let mut summary = SweepSummary::default();
    let io_err = |e| CliError::io(path.display().to_string(), e);
    for record in rx {
        summary.total += 1;
        match record {
            Ok(report) => {
                writeln!(writer, "{}", report.to_json_line()).map_err(io_err)?;
                if report.degenerate {
                    summary.degenerate += 1;
                }
                if report.passed() {
                    summary.passed += 1;
                } else {
                    summary.failed += 1;
                    if let Some(reason) = report.first_mismatch() {
                        let pr = &report.params;
                        eprintln!("fail ({},{},{}): {reason}", pr.p, pr.m, pr.k);
                    }
                }
            }
            Err(msg) => {
                summary.failed += 1;
                eprintln!("error {msg}");
            }
        }
    }
    writer.flush().map_err(io_err)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_coprime_policy_counts() {
        assert_eq!(ks_for(2, &KPolicy::AllCoprime), vec![1, 2]);
        assert_eq!(ks_for(4, &KPolicy::AllCoprime), vec![1, 2, 3, 4]);
        assert_eq!(ks_for(5, &KPolicy::AllCoprime), vec![1, 5]);
        assert_eq!(
            ks_for(5, &KPolicy::List(vec![1, 2, 3, 7, 11])),
            vec![1, 7, 11]
        );
    }

    #[test]
    fn grid_validation() {
        let mut cfg = SweepConfig {
            p_list: vec![],
            m_max: 2,
            k_policy: KPolicy::AllCoprime,
            out: PathBuf::from("unused"),
            workers: 1,
        };
        assert!(matches!(fields_for(&cfg), Err(CliError::Invalid(_))));
        cfg.p_list = vec![4];
        assert!(matches!(fields_for(&cfg), Err(CliError::Invalid(_))));
        cfg.p_list = vec![2, 3];
        assert_eq!(
            fields_for(&cfg).unwrap(),
            vec![(2, 1), (2, 2), (3, 1), (3, 2)]
        );
        cfg.p_list = vec![2];
        cfg.m_max = 13;
        assert!(matches!(fields_for(&cfg), Err(CliError::Resource(_))));
    }
}
