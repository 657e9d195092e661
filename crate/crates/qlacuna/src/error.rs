//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by qlacuna operations.
///
/// Most arithmetic in this crate is total; errors mark caller mistakes
/// (zero divisors, non-monic moduli, parameters outside a theorem's
/// hypotheses) rather than computational failures.
#[derive(Debug, Error)]
pub enum Error {
    /// Division by the zero polynomial.
    #[error("division by zero polynomial")]
    ZeroDivisor,

    /// Reduction modulo a polynomial that is not monic.
    #[error("modulus must be monic with degree >= 1, got `{0}`")]
    NonMonicModulus(String),

    /// p-adic valuation of zero is infinite.
    #[error("p-adic valuation of zero is undefined")]
    ValuationOfZero,

    /// Cyclotomic valuation of the zero polynomial is infinite.
    #[error("cyclotomic valuation of the zero polynomial is undefined")]
    CyclotomicValuationOfZero,

    /// A q-integer or q-binomial with negative upper index was requested.
    #[error("negative upper index {0} is outside the supported range")]
    NegativeUpperIndex(i64),

    /// A binomial-style lower index outside 0..=n where the operation
    /// does not define a convention.
    #[error("index k={k} out of range for n={n}")]
    IndexOutOfRange { n: u64, k: i64 },

    /// A parameter that must be prime is not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Divisibility hypothesis b | c violated.
    #[error("{b} does not divide {c}")]
    NotADivisor { b: u64, c: u64 },

    /// Generic parameter validation failure.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A congruence denominator shares a factor with the modulus, so the
    /// cross-multiplied check would be unsound.
    #[error("denominator `{den}` is not coprime to modulus `{modulus}`")]
    DenominatorNotCoprime { den: String, modulus: String },

    /// Sweep specification describes an empty parameter space.
    #[error("empty sweep: {0}")]
    EmptySweep(String),

    /// Unknown claim identifier passed to the sweep runner.
    #[error("unknown claim `{0}` (valid: {1})")]
    UnknownClaim(String, String),

    /// Malformed range expression on the command line.
    #[error("invalid range `{0}`: {1}")]
    InvalidRange(String, String),

    /// Malformed resume tuple.
    #[error("invalid --resume-from tuple: {0}")]
    InvalidResumeTuple(String),

    /// Cache file I/O or format problems.
    #[error("cache file error: {0}")]
    Cache(String),

    /// Malformed JSON for a polynomial or factorization.
    #[error("malformed JSON: {0}")]
    Json(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
