//! The binary recurrence engine: Uₙ = a·Uₙ₋₁ + b·Uₙ₋₂ with initial values
//! U₀ = c, U₁ = d, everything reduced modulo m.
//!
//! Coefficients and initial values are signed (Lucas starts at 2, the
//! b = −1 family needs negative coefficients); they are canonicalized into
//! `[0, m)` before any arithmetic. The K-Fibonacci case is `(K, 1, 0, 1)`.

use crate::numtheory::gcd;

/// Coefficients and initial values of a binary recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecurrenceParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl RecurrenceParams {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    /// The K-Fibonacci parameters (K, 1, 0, 1).
    pub fn k_fibonacci(k: u64) -> Self {
        let k = i64::try_from(k).expect("K too large for recurrence coefficients");
        Self::new(k, 1, 0, 1)
    }

    /// Coefficients reduced into `[0, m)`.
    pub(crate) fn reduced(&self, m: u64) -> (u64, u64) {
        (canon(self.a, m), canon(self.b, m))
    }

    /// The initial state (U₀, U₁) modulo m.
    pub fn initial_state(&self, m: u64) -> StatePair {
        assert!(m >= 2, "modulus must be >= 2");
        StatePair {
            u: canon(self.c, m),
            v: canon(self.d, m),
            modulus: m,
        }
    }

    /// Whether the state map is invertible mod m, i.e. gcd(b, m) = 1.
    /// Invertible maps have purely periodic orbits.
    pub fn invertible(&self, m: u64) -> bool {
        gcd(canon(self.b, m), m) == 1
    }
}

/// Reduce a signed value into `[0, m)`.
fn canon(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

/// Two consecutive terms (Uₙ, Uₙ₊₁) modulo `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StatePair {
    pub u: u64,
    pub v: u64,
    pub modulus: u64,
}

/// Advance one step: (Uₙ, Uₙ₊₁) ↦ (Uₙ₊₁, a·Uₙ₊₁ + b·Uₙ).
pub fn step(params: &RecurrenceParams, s: StatePair) -> StatePair {
    let m = s.modulus;
    let (a, b) = params.reduced(m);
    let next = ((a as u128 * s.v as u128 + b as u128 * s.u as u128) % m as u128) as u64;
    StatePair {
        u: s.v,
        v: next,
        modulus: m,
    }
}

/// The first `count` terms U₀, U₁, … modulo m.
pub fn sequence_mod(params: &RecurrenceParams, m: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut s = params.initial_state(m);
    for _ in 0..count {
        out.push(s.u);
        s = step(params, s);
    }
    out
}

/// (Uₙ, Uₙ₊₁) modulo m in O(log n) via companion-matrix exponentiation.
///
/// The terms are read off a state vector rather than out of matrix entries,
/// so arbitrary initial values (c, d) are supported directly.
pub fn matrix_power_state(params: &RecurrenceParams, n: u64, m: u64) -> StatePair {
    assert!(m >= 2, "modulus must be >= 2");
    let (a, b) = params.reduced(m);
    // Column-vector convention: wₙ = (Uₙ₊₁, Uₙ)ᵀ, wₙ = M·wₙ₋₁ with
    // M = [[a, b], [1, 0]]; then wₙ = Mⁿ·w₀ and w₀ = (d, c)ᵀ.
    let mut mat = [[a, b], [1 % m, 0]];
    let mut acc = [[1 % m, 0], [0, 1 % m]]; // identity
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = mat_mul(&acc, &mat, m);
        }
        mat = mat_mul(&mat, &mat, m);
        n >>= 1;
    }
    let init = params.initial_state(m);
    let (w1, w0) = (init.v, init.u);
    let un1 = ((acc[0][0] as u128 * w1 as u128 + acc[0][1] as u128 * w0 as u128) % m as u128) as u64;
    let un = ((acc[1][0] as u128 * w1 as u128 + acc[1][1] as u128 * w0 as u128) % m as u128) as u64;
    StatePair {
        u: un,
        v: un1,
        modulus: m,
    }
}

fn mat_mul(x: &[[u64; 2]; 2], y: &[[u64; 2]; 2], m: u64) -> [[u64; 2]; 2] {
    let mut out = [[0u64; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            // each product is reduced before summing so the u128 sum cannot wrap
            let a = x[i][0] as u128 * y[0][j] as u128 % m as u128;
            let b = x[i][1] as u128 * y[1][j] as u128 % m as u128;
            *cell = ((a + b) % m as u128) as u64;
        }
    }
    out
}
