//! Error type shared by all modules of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// `[x]_q` at q = 1 was requested without the explicit limit form.
    #[error("q-bracket at q = 1 divides by zero; call the limit variant, which returns x")]
    QBracketAtOne,

    /// A q-deformed formula that divides by (1 - q)^n received q = 1.
    #[error("q = 1 is outside the q-deformed closed sums; classical values come from the generating-function series")]
    QIsOne,

    /// A factor 1 + w*q^l in a closed sum vanished.
    #[error("pole in closed sum: 1 + w*q^l = 0 at l = {l}")]
    Pole { l: u32 },

    /// A denominator specific to one formula vanished.
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),

    /// A real (non-integer) exponent was applied to a base with no principal
    /// real power: the base is not a positive real.
    #[error("real exponent {exponent} requires a positive real base, got {base}")]
    BranchAmbiguity { base: String, exponent: f64 },

    #[error("series diverges: {0}")]
    Divergence(String),

    /// Series inversion at a zero constant term.
    #[error("formal series has zero constant term; no inverse")]
    SingularSeries,

    /// One factor q^(h-v) * e^t + 1 of the comparator product is singular.
    #[error("singular comparator factor at v = {v}: q^(h-v) = -1")]
    SingularFactor { v: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The direct zeta method was asked to sum outside its guaranteed region.
    #[error("direct summation requires |w| <= 1 - delta (got |w| = {modulus}); use the accelerated method")]
    MethodUnavailable { modulus: f64 },

    #[error("no convergence after {terms} terms; error estimate {estimate:e}, partial value {partial}")]
    NonConvergence {
        terms: usize,
        estimate: f64,
        partial: String,
    },

    /// A p-adic parameter missed its congruence precondition.
    #[error("congruence precondition failed: v_{p}({name} - 1) >= 1 does not hold")]
    CongruenceViolation { p: u64, name: &'static str },

    /// Hurwitz-type argument x hit the excluded set {0, -1, -2, ...}.
    #[error("argument x = {x} lies in the excluded set {{0, -1, -2, ...}}")]
    ExcludedArgument { x: String },
}
