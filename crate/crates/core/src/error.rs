use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("{p}^{s} exceeds the 2^31 modulus limit")]
    ModulusTooLarge { p: u64, s: u32 },
    #[error("residues belong to different moduli")]
    MixedModuli,
    #[error("index {index} out of range [0, {max}]")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("zero code")]
    ZeroCode,
    #[error("matrix is not in systematic form")]
    NotSystematic,
    #[error("row length {found} does not match length {expected}")]
    RowLengthMismatch { expected: usize, found: usize },
    #[error("code has {count} codewords, above the enumeration cap {cap}")]
    EnumerationCapExceeded { count: u128, cap: u128 },
    #[error("subcode rank {r} out of range [1, {max}]")]
    RankOutOfRange { r: usize, max: usize },
    #[error("search budget exhausted{}", match .best { Some(b) => format!("; best non-certified upper bound {b}"), None => String::new() })]
    SearchBudgetExceeded { best: Option<u64> },
    #[error("{count} subspaces exceed the enumeration cap {cap}")]
    SubspaceCapExceeded { count: u128, cap: u128 },
    #[error("isometry length {found} does not match code length {expected}")]
    IsometryLengthMismatch { expected: usize, found: usize },
    #[error("invalid subtype: {0}")]
    InvalidSubtype(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed code file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
