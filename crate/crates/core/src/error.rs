use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Mathematical negatives (a rational function that is not a polynomial, a
/// vacuous hypothesis) are errors here so that callers cannot mistake them
/// for values; grid scans catch them and turn them into report entries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,

    #[error("A({b},{a};{n},{m}) is not a polynomial: e_{d} = {e}")]
    NotPolynomial {
        b: u64,
        a: u64,
        n: u64,
        m: u64,
        /// Smallest cyclotomic index with negative multiplicity.
        d: u64,
        e: i64,
    },

    #[error("exponent vector has a negative entry: e_{d} = {e}")]
    NegativeExponent { d: u64, e: i64 },

    #[error("n = {n} is below a = {a}; no reduced form exists")]
    NotReducible { a: u64, n: u64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("shift (k={k}, l={l}) violates 0 <= m+ka <= n+la")]
    InvalidShift { k: i64, l: i64 },

    #[error("hypothesis not met: A(1,{n};{big_n},{big_m}) is not an integer polynomial")]
    HypothesisNotMet { n: u64, big_n: u64, big_m: u64 },

    #[error("numeric evaluation guard exceeded: exponent {0} > 200")]
    PrecisionGuard(u64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
