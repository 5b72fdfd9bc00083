//! The verification battery run for every parameter tuple.

use std::collections::BTreeMap;
use std::time::Instant;

use powermap_spectra::spectra::{
    bct_oracle_row, boomerang_row, ddt_entry_in_row, ddt_oracle_entry, derivative_row,
    locally_apn_row, max_outside_prime_field, ORACLE_CAP,
};
use powermap_spectra::theory::{
    corollary2_condition, derivative_support_predicted, moment_identity_check, predict_spectra,
    unit_quadratic_solve,
};
use powermap_spectra::{
    Branch, FieldCtx, FieldElem, PowerMapSpec, PredictedSpectra, SpectrumKind, SpectrumTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::report::{encode_table, AnalysisReport, Params, PredictedJson, Summary};

/// Largest q for which the circle quadratic root counts are enumerated.
pub const CIRCLE_Q_CAP: u64 = 1 << 8;
/// Largest field order on which random DDT entries are recounted directly.
pub const DDT_SAMPLE_CAP: u64 = 1 << 20;
pub const DDT_SAMPLES: usize = 100;

/// Negative controls for the battery itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to the smallest multiplicity of the predicted differential spectrum.
    PerturbPredicted,
}

/// Checks that depend on the field only, computed once per (p, m).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldChecks {
    pub circle_quadratic_counts: Option<bool>,
}

impl FieldChecks {
    pub fn compute(ctx: &FieldCtx) -> Result<FieldChecks> {
        let circle_quadratic_counts = if ctx.q() as u64 <= CIRCLE_Q_CAP {
            let mut ok = true;
            for b in ctx.nonzero_elements() {
                ok &= unit_quadratic_solve(ctx, b)?.is_consistent();
            }
            Some(ok)
        } else {
            None
        };
        Ok(FieldChecks { circle_quadratic_counts })
    }
}

fn perturb(table: &SpectrumTable) -> SpectrumTable {
    let mut out = table.clone();
    if let Some((mult, _)) = table.pairs().first() {
        out.add(*mult, 1);
    }
    out
}

fn seed_for(map: &PowerMapSpec) -> u64 {
    ((map.p() as u64) << 40) ^ ((map.m() as u64) << 32) ^ map.k()
}

/// Runs every applicable check on one tuple and assembles the report.
pub fn evaluate(
    ctx: &FieldCtx,
    map: &PowerMapSpec,
    field: &FieldChecks,
    fault: Option<Fault>,
) -> Result<AnalysisReport> {
    let start = Instant::now();
    map.check_field(ctx)?;
    let (p, m) = (map.p(), map.m());
    let table = map.value_table(ctx)?;
    let row = derivative_row(ctx, &table, FieldElem::ONE)?;
    let brow = boomerang_row(ctx, &table, FieldElem::ONE)?;
    let ds = SpectrumTable::from_row(SpectrumKind::Differential, &row);
    let bs = SpectrumTable::from_row(SpectrumKind::Boomerang, &brow);

    let mut predicted: PredictedSpectra = predict_spectra(p, m, map.k())?;
    if fault == Some(Fault::PerturbPredicted) {
        predicted.differential = perturb(&predicted.differential);
    }
    let branch = predicted.branch;
    let degenerate = map.is_degenerate();
    let order = ctx.order() as u64;
    let beta = bs.max_multiplicity().unwrap_or(0);

    let mut v: BTreeMap<String, bool> = BTreeMap::new();
    let mut put = |name: &str, ok: bool| {
        v.insert(name.to_string(), ok);
    };
    put("differential_match", ds == predicted.differential);
    put("boomerang_match", bs == predicted.boomerang);
    put("moment_identities", moment_identity_check(&ds, p, map.n())?);
    put(
        "tables_valid",
        ds.validate(order).is_ok() && bs.validate(order).is_ok(),
    );

    if degenerate {
        put("locally_apn", max_outside_prime_field(ctx, &row) <= 2);
        put(
            "uniformity_branch",
            Some(beta) == predicted.boomerang.max_multiplicity(),
        );
    } else {
        put("locally_apn", locally_apn_row(ctx, &row));
        put("uniformity_branch", beta == branch.boomerang_uniformity());
    }

    if p == 2 {
        put("derivative_parity", row.iter().all(|c| c % 2 == 0));
        put(
            "boomerang_dominates",
            ctx.nonzero_elements()
                .all(|b| brow[b.idx() as usize - 1] >= row[b.idx() as usize]),
        );
        if branch == Branch::EvenCharOddM {
            let w = ctx.primitive_cube_root()?;
            let w2 = ctx.mul(w, w);
            put(
                "cube_root_fibres_empty",
                row[w.idx() as usize] == 0 && row[w2.idx() as usize] == 0,
            );
        }
    } else {
        put(
            "derivative_symmetry",
            ctx.nonzero_elements()
                .all(|b| row[b.idx() as usize] == row[ctx.neg(b).idx() as usize]),
        );
        let mut support = true;
        for b in ctx.elements() {
            support &= (row[b.idx() as usize] > 0) == derivative_support_predicted(ctx, b)?;
        }
        put("support_prediction", support);
        if branch == Branch::OddCharQTwoMod3 {
            let mut ok = true;
            for b in ctx.nonzero_elements() {
                if corollary2_condition(ctx, b)? {
                    ok &= row[b.idx() as usize] != 2;
                }
            }
            put("cube_root_condition", ok);
        }
    }

    if order <= DDT_SAMPLE_CAP {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(map));
        let mut ok = true;
        for _ in 0..DDT_SAMPLES {
            let a = ctx
                .element(rng.gen_range(1..ctx.order()))
                .expect("index in range");
            let b = ctx
                .element(rng.gen_range(0..ctx.order()))
                .expect("index in range");
            ok &= ddt_entry_in_row(ctx, map, &row, a, b)? == ddt_oracle_entry(ctx, &table, a, b)?;
        }
        put("ddt_reduction", ok);
    }
    if order <= ORACLE_CAP as u64 {
        put(
            "bct_oracle",
            bct_oracle_row(ctx, &table, FieldElem::ONE)? == brow,
        );
    }
    if let Some(ok) = field.circle_quadratic_counts {
        put("circle_quadratic_counts", ok);
    }

    let status = AnalysisReport::status_for(&v).to_string();
    Ok(AnalysisReport {
        params: Params::new(ctx, map),
        differential: encode_table(&ds),
        boomerang: encode_table(&bs),
        predicted: PredictedJson {
            branch: branch.label().to_string(),
            differential: encode_table(&predicted.differential),
            boomerang: encode_table(&predicted.boomerang),
        },
        verdicts: v,
        summary: Summary {
            differential_uniformity: ds.max_multiplicity().unwrap_or(0),
            boomerang_uniformity: beta,
            locally_apn: locally_apn_row(ctx, &row),
        },
        status,
        degenerate,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
