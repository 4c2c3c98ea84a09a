//! Crate-wide error type.
//!
//! All arithmetic is `u64` at the API surface with `u128` intermediates.
//! Anything that could exceed `u64` (lcm folds, prime-power lifts, K²+4)
//! uses checked arithmetic and surfaces [`Error::Overflow`] instead of
//! wrapping silently.

/// Errors produced by period computations and their supporting arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A checked `u64` operation overflowed. `op` names the computation.
    #[error("arithmetic overflow in {op}")]
    Overflow { op: &'static str },

    /// `value` has no inverse modulo `modulus`; the offending gcd is carried
    /// so callers can report why.
    #[error("{value} is not invertible modulo {modulus} (gcd = {gcd})")]
    NotInvertible { value: u64, modulus: u64, gcd: u64 },

    /// A period-map trajectory failed to reach a fixed point or the {2,3}
    /// two-cycle within the iteration budget.
    #[error("trajectory of {start} did not converge within {max_iters} iterations")]
    NoConvergence { start: u64, max_iters: u64 },

    /// An argument was outside the domain a formula is defined on.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
