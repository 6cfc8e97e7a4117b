//! Certified recomputation of the finiteness proof for Pell equations whose
//! solution x-coordinates are sums of two Padovan numbers.
//!
//! The crate is organised as a pipeline of small, independently testable
//! layers:
//!
//! * [`bigreal`] — interval ("ball") arithmetic over MPFR floats with
//!   directed rounding, plus certified algebraic constants for the plastic
//!   number and its companions.
//! * [`padovan`] — the Padovan sequence, canonical two-term representations,
//!   and the certified Binet-error bound.
//! * [`pell`] — fundamental solutions of `x^2 - d y^2 = ±1` and
//!   `X^2 - d Y^2 = ±4`, solution recurrences, closed forms and their exact
//!   inverses.
//! * [`contfrac`] — certified continued-fraction expansion of computable
//!   reals, quotient bounds over an initial segment, and the periodic
//!   expansion of `sqrt(d)`.
//! * [`reduction`] — Weil heights, the Matveev lower bound for linear forms
//!   in logarithms, Baker–Davenport reduction, and exact-arithmetic LLL with
//!   a certified shortest-vector lower bound.
//! * [`pipeline`] — the bound chain itself: absolute bounds, the two
//!   reduction cycles, the final reduction, and end-to-end certification.
//! * [`search`] — the final exhaustive searches and the independent
//!   brute-force cross-check.
//! * [`cert`] — serialisable certificate types shared by the CLI.

pub mod bigreal;
pub mod cert;
pub mod contfrac;
pub mod padovan;
pub mod pell;
pub mod pipeline;
pub mod reduction;
pub mod search;

use thiserror::Error;

/// Crate-wide error type.
///
/// Variants map onto the CLI exit codes: anything that represents a
/// *certified mismatch* exits 1, usage problems exit 2, and precision or
/// resource exhaustion exits 3.
#[derive(Debug, Error)]
pub enum Error {
    /// The precision policy was exhausted without reaching a certified answer.
    #[error("precision exhausted at {bits} bits while {context}")]
    PrecisionExhausted { bits: u32, context: String },

    /// An interval straddles an integer, so its floor cannot be certified.
    #[error("ambiguous floor: interval [{lo}, {hi}] straddles an integer")]
    AmbiguousFloor { lo: String, hi: String },

    /// An interval straddles zero or another comparison threshold.
    #[error("ambiguous comparison: {0}")]
    AmbiguousComparison(String),

    /// `d` was a perfect square (no Pell fundamental exists).
    #[error("d = {0} is a perfect square")]
    SquareD(String),

    /// The requested sign has no solution for this `d` (negative Pell).
    #[error("x^2 - {d} y^2 = {rhs} has no solution")]
    NoSolutionForSign { d: String, rhs: String },

    /// A continued-fraction expansion was not long enough for the request.
    #[error("continued fraction expansion too short: {0}")]
    InsufficientExpansion(String),

    /// Baker–Davenport reduction produced a non-positive epsilon.
    #[error("reduction epsilon non-positive at q = {q}: {detail}")]
    EpsilonNonPositive { q: String, detail: String },

    /// The LLL shortest-vector bound hypothesis `theta^2 >= Q + R^2` failed.
    #[error("LLL lower bound unavailable: theta too small ({0})")]
    ThetaTooSmall(String),

    /// A lemma hypothesis (e.g. `H > (4 r^2)^r`) does not hold.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// Trial factoring exceeded the desk-scale budget.
    #[error("factoring budget exceeded for {0}")]
    FactoringBudget(String),

    /// A certified value disagrees with its pinned expected value.
    #[error("certified mismatch: {0}")]
    Mismatch(String),

    /// Bad arguments or unusable input.
    #[error("usage: {0}")]
    Usage(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code for this error per the interface contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted { .. } => 3,
            Error::Usage(_) | Error::SquareD(_) => 2,
            _ => 1,
        }
    }
}
