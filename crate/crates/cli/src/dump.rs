//! Row exports as `b_index,count` CSV.

use powermap_spectra::spectra::{boomerang_row, derivative_row};
use powermap_spectra::{FieldCtx, FieldElem, PowerMapSpec};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RowTable {
    /// delta_F(1, b) for every b.
    DdtRow,
    /// beta_F(1, b) for every nonzero b.
    BctRow,
}

/// (b index, count) pairs in canonical index order.
pub fn row_entries(ctx: &FieldCtx, map: &PowerMapSpec, table: RowTable) -> Result<Vec<(u32, u64)>> {
    let values = map.value_table(ctx)?;
    Ok(match table {
        RowTable::DdtRow => {
            let row = derivative_row(ctx, &values, FieldElem::ONE)?;
            (0u32..).zip(row).collect()
        }
        RowTable::BctRow => {
            let row = boomerang_row(ctx, &values, FieldElem::ONE)?;
            (1u32..).zip(row).collect()
        }
    })
}

pub fn to_csv(entries: &[(u32, u64)]) -> String {
    let mut out = String::from("b_index,count\n");
    for (b, c) in entries {
        out.push_str(&format!("{b},{c}\n"));
    }
    out
}
