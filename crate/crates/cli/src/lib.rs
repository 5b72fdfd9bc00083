//! Analysis, verification, sweeps and row dumps for the power maps
//! x^{k(q-1)} over F_{q^2}.

pub mod battery;
pub mod dump;
pub mod error;
pub mod report;
pub mod sweep;

use std::path::Path;

use powermap_spectra::{FieldCtx, PowerMapSpec};

pub use battery::Fault;
pub use error::{CliError, Result};
pub use report::AnalysisReport;

/// Validates the tuple and builds its field.
pub fn setup(p: u32, m: u32, k: u64) -> Result<(FieldCtx, PowerMapSpec)> {
    let map = PowerMapSpec::new(p, m, k)?;
    let ctx = FieldCtx::build(p, m)?;
    Ok((ctx, map))
}

/// Full battery on one tuple.
pub fn analyze(p: u32, m: u32, k: u64, fault: Option<Fault>) -> Result<AnalysisReport> {
    let (ctx, map) = setup(p, m, k)?;
    let checks = battery::FieldChecks::compute(&ctx)?;
    battery::evaluate(&ctx, &map, &checks, fault)
}

/// Like [`analyze`], but a failing verdict becomes a mismatch error.
pub fn verify(p: u32, m: u32, k: u64, fault: Option<Fault>) -> Result<AnalysisReport> {
    let report = analyze(p, m, k, fault)?;
    match report.first_mismatch() {
        Some(reason) => Err(CliError::Mismatch(reason)),
        None => Ok(report),
    }
}

pub fn dump(p: u32, m: u32, k: u64, table: dump::RowTable) -> Result<String> {
    let (ctx, map) = setup(p, m, k)?;
    Ok(dump::to_csv(&dump::row_entries(&ctx, &map, table)?))
}

/// Writes to `path`, or stdout when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
