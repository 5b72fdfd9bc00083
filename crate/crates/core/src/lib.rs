//! Differential and boomerang spectra of the power maps x^{k(q-1)} over
//! F_{q^2}, computed by exhaustive enumeration over table-driven field
//! arithmetic and compared against their closed forms.

pub mod error;
pub mod field;
pub mod poly;
pub mod spectra;
pub mod theory;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use spectra::{PowerMapSpec, SpectrumKind, SpectrumTable};
pub use theory::{Branch, PredictedSpectra};
