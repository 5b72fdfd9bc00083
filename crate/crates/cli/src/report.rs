//! The per-tuple analysis record and its JSON / CSV encodings.

use std::collections::BTreeMap;

use powermap_spectra::{Branch, FieldCtx, PowerMapSpec, SpectrumKind, SpectrumTable};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub p: u32,
    pub m: u32,
    pub k: u64,
    pub q: u64,
    pub n: u32,
    pub d: u64,
    pub modulus: Vec<u32>,
}

impl Params {
    pub fn new(ctx: &FieldCtx, map: &PowerMapSpec) -> Params {
        Params {
            p: map.p(),
            m: map.m(),
            k: map.k(),
            q: map.q(),
            n: map.n(),
            d: map.exponent(),
            modulus: ctx.modulus().to_vec(),
        }
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedJson {
    pub branch: String,
    pub differential: Vec<[u64; 2]>,
    pub boomerang: Vec<[u64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub differential_uniformity: u64,
    pub boomerang_uniformity: u64,
    pub locally_apn: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub params: Params,
    pub differential: Vec<[u64; 2]>,
    pub boomerang: Vec<[u64; 2]>,
    pub predicted: PredictedJson,
    pub verdicts: BTreeMap<String, bool>,
    pub summary: Summary,
    pub status: String,
    pub degenerate: bool,
    pub timing_ms: f64,
}

pub const PASS: &str = "pass";
pub const FAIL: &str = "fail";

pub fn encode_table(table: &SpectrumTable) -> Vec<[u64; 2]> {
    table.pairs().into_iter().map(|(m, c)| [m, c]).collect()
}

fn decode_table(kind: SpectrumKind, pairs: &[[u64; 2]], order: u64) -> Result<SpectrumTable> {
    let pairs: Vec<(u64, u64)> = pairs.iter().map(|&[m, c]| (m, c)).collect();
    let table = SpectrumTable::from_pairs(kind, &pairs)?;
    table.validate(order)?;
    Ok(table)
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.status == PASS
    }

    pub fn status_for(verdicts: &BTreeMap<String, bool>) -> &'static str {
        if verdicts.values().all(|&v| v) {
            PASS
        } else {
            FAIL
        }
    }

    pub fn differential_table(&self) -> Result<SpectrumTable> {
        decode_table(
            SpectrumKind::Differential,
            &self.differential,
            self.params.order(),
        )
    }

    pub fn boomerang_table(&self) -> Result<SpectrumTable> {
        decode_table(
            SpectrumKind::Boomerang,
            &self.boomerang,
            self.params.order(),
        )
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Parses a report and re-checks every embedded spectrum against the
    /// field order, the branch label and the status field.
    pub fn from_json(text: &str) -> Result<AnalysisReport> {
        let report: AnalysisReport = serde_json::from_str(text)
            .map_err(|e| CliError::Invalid(format!("malformed report: {e}")))?;
        let order = report.params.order();
        report.differential_table()?;
        report.boomerang_table()?;
        decode_table(
            SpectrumKind::Differential,
            &report.predicted.differential,
            order,
        )?;
        decode_table(SpectrumKind::Boomerang, &report.predicted.boomerang, order)?;
        if Branch::from_label(&report.predicted.branch).is_none() {
            return Err(CliError::Invalid(format!(
                "unknown branch {:?}",
                report.predicted.branch
            )));
        }
        if report.status != Self::status_for(&report.verdicts) {
            return Err(CliError::Invalid("status disagrees with verdicts".into()));
        }
        Ok(report)
    }

    /// Rows `kind,source,multiplicity,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,source,multiplicity,count\n");
        let blocks = [
            ("differential", "brute", &self.differential),
            ("differential", "predicted", &self.predicted.differential),
            ("boomerang", "brute", &self.boomerang),
            ("boomerang", "predicted", &self.predicted.boomerang),
        ];
        for (kind, source, pairs) in blocks {
            for [m, c] in pairs {
                out.push_str(&format!("{kind},{source},{m},{c}\n"));
            }
        }
        out
    }

    /// Human-readable reason for the first failure, if any.
    pub fn first_mismatch(&self) -> Option<String> {
        let spectra = [
            (
                "differential",
                "differential_match",
                &self.differential,
                &self.predicted.differential,
            ),
            (
                "boomerang",
                "boomerang_match",
                &self.boomerang,
                &self.predicted.boomerang,
            ),
        ];
        for (name, key, brute, predicted) in spectra {
            if self.verdicts.get(key) == Some(&false) {
                return Some(spectrum_mismatch(name, brute, predicted));
            }
        }
        self.verdicts
            .iter()
            .find(|(_, &ok)| !ok)
            .map(|(name, _)| format!("check {name} failed"))
    }
}

fn spectrum_mismatch(name: &str, brute: &[[u64; 2]], predicted: &[[u64; 2]]) -> String {
    let as_map = |pairs: &[[u64; 2]]| {
        pairs
            .iter()
            .map(|&[m, c]| (m, c))
            .collect::<BTreeMap<_, _>>()
    };
    let (b, p) = (as_map(brute), as_map(predicted));
    let mult = b
        .keys()
        .chain(p.keys())
        .copied()
        .filter(|m| b.get(m) != p.get(m))
        .min()
        .unwrap_or(0);
    format!(
        "{name} spectrum differs at multiplicity {mult}: brute {}, predicted {}",
        b.get(&mult).copied().unwrap_or(0),
        p.get(&mult).copied().unwrap_or(0)
    )
}
