//! Pisano periods of K-Fibonacci sequences, fixed points of the period map,
//! and a verification harness that checks the structured computation against
//! a brute-force oracle.
//!
//! The K-Fibonacci sequence is F₀ = 0, F₁ = 1, Fₙ = K·Fₙ₋₁ + Fₙ₋₂. Its
//! Pisano period π_K(m) is the length of the repeating cycle modulo m.
//! Viewing m ↦ π_K(m) as a self-map of the integers ≥ 2, this crate:
//!
//! * computes π_K(m) two independent ways — a brute-force cycle-finding
//!   oracle ([`pisano::period_oracle`]) and a structured path built from
//!   prime dispatch, prime-power lifting, and an lcm fold
//!   ([`pisano::pisano_structured`]);
//! * classifies the fixed points π_K(m) = m into four families determined
//!   by K's residue class ([`fixedpoint`]);
//! * iterates the period map to its terminal fixed point or to the {2, 3}
//!   two-cycle ([`fixedpoint::trajectory`]);
//! * handles general binary recurrences Uₙ = a·Uₙ₋₁ + b·Uₙ₋₂ with
//!   arbitrary initial values, including the eventually-periodic case
//!   gcd(b, m) > 1 ([`recurrence`], [`conjectures`]);
//! * runs deterministic batch sweeps that re-derive every closed form and
//!   family claim from the oracle and report violations ([`verify`]).

pub mod conjectures;
mod error;
pub mod fixedpoint;
pub mod numtheory;
pub mod pisano;
pub mod recurrence;
pub mod verify;

pub use error::{Error, Result};
