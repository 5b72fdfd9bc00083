use thiserror::Error;

/// Errors raised by field construction, spectrum computation and the
/// closed-form predictors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not a prime")]
    NotPrime(u64),

    #[error("the subfield degree m must be at least 1")]
    ZeroDegree,

    #[error("field order {p}^{n} exceeds the 2^24 element cap")]
    OrderCap { p: u64, n: u32 },

    #[error("no monic irreducible polynomial of degree {n} over F_{p} was found")]
    NoIrreducible { p: u64, n: u32 },

    #[error("modulus {0:?} is not a monic irreducible polynomial of the required degree")]
    BadModulus(Vec<u32>),

    #[error("field tables are inconsistent: {0}")]
    Internal(String),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("element {0} does not lie in the subfield F_q")]
    NotInSubfield(u32),

    #[error("operation requires odd characteristic")]
    EvenCharacteristic,

    #[error("characteristic 3 has no primitive cube root of unity")]
    NoCubeRoot,

    #[error("gcd(k, q+1) = gcd({k}, {modulus}) = {gcd}, expected 1")]
    NotCoprime { k: u64, modulus: u64, gcd: u64 },

    #[error("power map is defined over F_{map_p}^{map_n} but the field is F_{field_p}^{field_n}")]
    FieldMismatch {
        map_p: u32,
        map_n: u32,
        field_p: u32,
        field_n: u32,
    },

    #[error("value table has {got} entries, the field has {expected} elements")]
    TableLength { got: usize, expected: usize },

    #[error("naive oracle is capped at 4096 elements, field has {0}")]
    OracleCap(u32),

    #[error("argument `{0}` must be nonzero")]
    ZeroArgument(&'static str),

    #[error("expected a {expected} spectrum, got a {got} spectrum")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("spectrum table is empty")]
    EmptySpectrum,

    #[error("invalid spectrum table: {0}")]
    InvalidSpectrum(String),

    #[error("closed forms do not apply: {0}")]
    WrongBranch(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
