//! Fixed points of the period map m ↦ π_K(m) and iteration to terminal
//! values.
//!
//! Which m satisfy π_K(m) = m is governed entirely by K's residue class
//! modulo 12, through the primes of K² + 4:
//!
//! * K ≡ ±1 (mod 6): m = 24·∏ pᵢ^{jᵢ}, all exponents free;
//! * K ≡ 2 (mod 4):  m = 2^j (j ≥ 1), or 2-exponent ≥ 2 times any product
//!   of the odd primes of K² + 4;
//! * K ≡ 3 (mod 6):  m = 6, or 12·∏ pᵢ^{jᵢ} with at least one pᵢ present;
//! * K ≡ 0 (mod 4):  m = 2, or 4·∏ pᵢ^{jᵢ} (pᵢ odd) with at least one
//!   pᵢ present.
//!
//! The "at least one" and "2-exponent ≥ 2" minimums are where published
//! statements of this classification tend to be off by one; the encodings
//! here are calibrated against the brute-force oracle (12 is *not* fixed
//! for K = 3: π₃(12) = 6; 20 = 4·5 *is* fixed for K = 16 even though
//! 13 | K² + 4 is absent). [`literal_family_contains`] preserves the
//! uncalibrated reading so verification sweeps can report exactly where it
//! and the oracle part ways.

use crate::numtheory::{factorize, p_adic_valuation};
use crate::pisano::pisano_structured;
use crate::{Error, Result};

/// Default iteration budget for trajectories.
pub const DEFAULT_MAX_ITERS: u64 = 200;

/// Residue class of K driving the fixed-point family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KCategory {
    /// K ≡ 1 or 5 (mod 6)
    PlusMinusOneMod6,
    /// K ≡ 2 (mod 4)
    TwoMod4,
    /// K ≡ 3 (mod 6)
    ThreeMod6,
    /// K ≡ 0 (mod 4)
    ZeroMod4,
}

impl KCategory {
    /// Stable identifier used in CLI and report output.
    pub fn tag(self) -> &'static str {
        match self {
            KCategory::PlusMinusOneMod6 => "PM1_MOD6",
            KCategory::TwoMod4 => "TWO_MOD4",
            KCategory::ThreeMod6 => "THREE_MOD6",
            KCategory::ZeroMod4 => "ZERO_MOD4",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            KCategory::PlusMinusOneMod6 => "K ≡ ±1 (mod 6)",
            KCategory::TwoMod4 => "K ≡ 2 (mod 4)",
            KCategory::ThreeMod6 => "K ≡ 3 (mod 6)",
            KCategory::ZeroMod4 => "K ≡ 0 (mod 4)",
        }
    }
}

/// Classify K ≥ 1. Odd K splits on divisibility by 3, even K on K mod 4;
/// every positive K lands in exactly one class.
pub fn k_category(k: u64) -> KCategory {
    assert!(k >= 1, "K must be positive");
    if k % 2 == 1 {
        if k.is_multiple_of(3) {
            KCategory::ThreeMod6
        } else {
            KCategory::PlusMinusOneMod6
        }
    } else if k % 4 == 2 {
        KCategory::TwoMod4
    } else {
        KCategory::ZeroMod4
    }
}

/// The complete fixed-point family of one K, in calibrated form.
///
/// A modulus m ≥ 2 is in the family iff it is one of `base_values`, a power
/// of `pure_power_prime`, or `composite_base` times a product of
/// `allowed_primes` whose odd members carry at least
/// `min_total_odd_exponent` exponents in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointFamily {
    pub k: u64,
    pub category: KCategory,
    /// Isolated members (6 for K ≡ 3 (mod 6), 2 for K ≡ 0 (mod 4)).
    pub base_values: Vec<u64>,
    /// All powers p^j, j ≥ 1, are members (2 for K ≡ 2 (mod 4)).
    pub pure_power_prime: Option<u64>,
    /// Multiplier of the composite members (24, 12, or 4).
    pub composite_base: Option<u64>,
    /// Primes whose exponents may vary freely in composite members.
    pub allowed_primes: Vec<u64>,
    /// Minimum combined exponent over the odd `allowed_primes` (0 or 1).
    pub min_total_odd_exponent: u32,
}

impl std::fmt::Display for FixedPointFamily {
    /// Compact family notation, e.g. `24×5^j`, `2 or 4×17^{j+1}`,
    /// `2 or 4×5^{j1}×13^{j2} (j1+j2 ≥ 1)`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut legs: Vec<String> = self.base_values.iter().map(u64::to_string).collect();
        if let Some(p) = self.pure_power_prime {
            legs.push(format!("{p}^j"));
        }
        if let Some(base) = self.composite_base {
            // When 2 is the only allowed prime the composite leg is a
            // subset of the pure-power leg; showing it would be noise.
            let redundant = self.pure_power_prime == Some(2) && self.allowed_primes == [2];
            if !redundant {
                legs.push(composite_leg(base, &self.allowed_primes, self.min_total_odd_exponent));
            }
        }
        f.write_str(&legs.join(" or "))
    }
}

fn composite_leg(base: u64, primes: &[u64], min_total: u32) -> String {
    let mut s = base.to_string();
    match primes {
        [] => s,
        [p] => {
            if min_total == 0 {
                s.push_str(&format!("×{p}^j"));
            } else {
                s.push_str(&format!("×{p}^{{j+1}}"));
            }
            s
        }
        _ => {
            let mut names = Vec::new();
            for (i, p) in primes.iter().enumerate() {
                s.push_str(&format!("×{p}^{{j{}}}", i + 1));
                names.push(format!("j{}", i + 1));
            }
            if min_total >= 1 {
                s.push_str(&format!(" ({} ≥ {min_total})", names.join("+")));
            }
            s
        }
    }
}

/// Predict the fixed-point family of K from the factorization of K² + 4.
pub fn predicted_family(k: u64) -> Result<FixedPointFamily> {
    let disc = k
        .checked_mul(k)
        .and_then(|s| s.checked_add(4))
        .ok_or(Error::Overflow { op: "K^2 + 4" })?;
    let category = k_category(k);
    let disc_factors = factorize(disc);
    let odd_primes: Vec<u64> = disc_factors.primes().filter(|&p| p != 2).collect();
    let all_primes: Vec<u64> = disc_factors.primes().collect();
    let family = match category {
        KCategory::PlusMinusOneMod6 => FixedPointFamily {
            k,
            category,
            base_values: vec![],
            pure_power_prime: None,
            composite_base: Some(24),
            allowed_primes: all_primes, // K odd ⇒ K² + 4 odd: all odd
            min_total_odd_exponent: 0,
        },
        KCategory::TwoMod4 => FixedPointFamily {
            k,
            category,
            base_values: vec![],
            pure_power_prime: Some(2),
            composite_base: Some(4),
            allowed_primes: std::iter::once(2).chain(odd_primes).collect(),
            min_total_odd_exponent: 0,
        },
        KCategory::ThreeMod6 => FixedPointFamily {
            k,
            category,
            base_values: vec![6],
            pure_power_prime: None,
            composite_base: Some(12),
            allowed_primes: all_primes, // K odd ⇒ all odd
            min_total_odd_exponent: 1,
        },
        KCategory::ZeroMod4 => FixedPointFamily {
            k,
            category,
            base_values: vec![2],
            pure_power_prime: None,
            composite_base: Some(4),
            allowed_primes: odd_primes, // K² + 4 = 4·odd here
            min_total_odd_exponent: 1,
        },
    };
    Ok(family)
}

/// Membership test against the calibrated family. Pure arithmetic — no
/// period is computed.
pub fn family_contains(family: &FixedPointFamily, m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if family.base_values.contains(&m) {
        return true;
    }
    if let Some(p) = family.pure_power_prime {
        let mut q = m;
        while q.is_multiple_of(p) {
            q /= p;
        }
        if q == 1 {
            return true;
        }
    }
    if let Some(base) = family.composite_base {
        if m.is_multiple_of(base) {
            let mut q = m / base;
            let mut odd_total = 0u32;
            for &p in &family.allowed_primes {
                while q.is_multiple_of(p) {
                    q /= p;
                    if p != 2 {
                        odd_total += 1;
                    }
                }
            }
            if q == 1 && odd_total >= family.min_total_odd_exponent {
                return true;
            }
        }
    }
    false
}

/// The uncalibrated, as-published reading of the four families, kept so
/// sweeps can report each point where it disagrees with the oracle:
/// it admits 2·(odd primes) in the K ≡ 2 (mod 4) mixed case, admits the
/// bare 12 for K ≡ 3 (mod 6), and demands every odd prime of K² + 4
/// simultaneously for K ≡ 0 (mod 4).
pub fn literal_family_contains(k: u64, m: u64) -> Result<bool> {
    if m < 2 {
        return Ok(false);
    }
    let family = predicted_family(k)?;
    let odd_primes: Vec<u64> = family.allowed_primes.iter().copied().filter(|&p| p != 2).collect();
    Ok(match family.category {
        // identical to the calibrated encoding
        KCategory::PlusMinusOneMod6 => family_contains(&family, m),
        KCategory::TwoMod4 => {
            // 2^j, or 2-exponent ≥ 1 (not 2) times odd primes
            let mut q = m;
            while q.is_multiple_of(2) {
                q /= 2;
            }
            if q == 1 {
                true
            } else if m.is_multiple_of(2) {
                for &p in &odd_primes {
                    while q.is_multiple_of(p) {
                        q /= p;
                    }
                }
                q == 1
            } else {
                false
            }
        }
        KCategory::ThreeMod6 => {
            if m == 6 {
                true
            } else if m.is_multiple_of(12) {
                let mut q = m / 12;
                for &p in &odd_primes {
                    while q.is_multiple_of(p) {
                        q /= p;
                    }
                }
                q == 1 // bare 12 (all exponents zero) admitted here
            } else {
                false
            }
        }
        KCategory::ZeroMod4 => {
            if m == 2 {
                true
            } else if m.is_multiple_of(4) {
                let mut q = m / 4;
                let mut all_present = true;
                for &p in &odd_primes {
                    let mut e = 0;
                    while q.is_multiple_of(p) {
                        q /= p;
                        e += 1;
                    }
                    all_present &= e >= 1; // every prime required
                }
                q == 1 && all_present
            } else {
                false
            }
        }
    })
}

/// Is m a fixed point of the period map for this K? Definitional:
/// π_K(m) = m via the structured path. Verification sweeps re-arbitrate
/// this against the oracle.
pub fn is_fixed_point(k: u64, m: u64) -> Result<bool> {
    Ok(pisano_structured(k, m)? == m)
}

/// All fixed points in [2, bound], ascending.
pub fn enumerate_fixed_points(k: u64, bound: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for m in 2..=bound {
        if is_fixed_point(k, m)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// Where a trajectory of the period map ended up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    /// Reached m with π_K(m) = m.
    FixedPoint(u64),
    /// Entered the 2 ↔ 3 cycle (possible only when K ≡ 3 (mod 6)).
    TwoCycle,
    /// Iteration budget exhausted — treated as a loud failure downstream,
    /// never silently accepted.
    Exhausted,
}

/// An iterated orbit m, π(m), π(π(m)), … of the period map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub start: u64,
    /// Visited values, starting at `start`. For a two-cycle ending the
    /// closing repeat is included, so the tail reads …, 2, 3, 2.
    pub steps: Vec<u64>,
    pub terminal: Terminal,
    /// Number of period-map applications performed (the iteration count 𝒯).
    pub length: u64,
}

/// Iterate the period map from m until it fixes, enters the {2, 3}
/// two-cycle, or exhausts `max_iters` applications.
pub fn trajectory(k: u64, m: u64, max_iters: u64) -> Result<Trajectory> {
    assert!(m >= 2, "modulus must be >= 2");
    let mut steps = vec![m];
    let mut current = m;
    for _ in 0..max_iters {
        let next = pisano_structured(k, current)?;
        if next == current {
            return Ok(Trajectory {
                start: m,
                steps,
                terminal: Terminal::FixedPoint(current),
                length: 0, // patched below
            }
            .with_length());
        }
        // The only legal cycle other than a fixed point is 2 ↔ 3, which
        // requires π(2) = 3 and π(3) = 2 simultaneously (K ≡ 3 (mod 6)).
        // Seeing the pair once is not enough — confirm the return hop.
        if (current == 2 && next == 3) || (current == 3 && next == 2) {
            let back = pisano_structured(k, next)?;
            if back == current {
                steps.push(next);
                steps.push(back);
                return Ok(Trajectory {
                    start: m,
                    steps,
                    terminal: Terminal::TwoCycle,
                    length: 0,
                }
                .with_length());
            }
        }
        steps.push(next);
        current = next;
    }
    Ok(Trajectory {
        start: m,
        steps,
        terminal: Terminal::Exhausted,
        length: max_iters,
    })
}

impl Trajectory {
    fn with_length(mut self) -> Self {
        self.length = self.steps.len() as u64 - 1;
        self
    }
}

/// The terminal value 𝒫_K(m): the reached fixed point, or 0 when the
/// trajectory falls into the two-cycle. Exhaustion is an error.
pub fn terminal_value(k: u64, m: u64) -> Result<u64> {
    match trajectory(k, m, DEFAULT_MAX_ITERS)?.terminal {
        Terminal::FixedPoint(v) => Ok(v),
        Terminal::TwoCycle => Ok(0),
        Terminal::Exhausted => Err(Error::NoConvergence {
            start: m,
            max_iters: DEFAULT_MAX_ITERS,
        }),
    }
}

/// Σ ν_q(m)·(ln q − ln 3) over primes q | m outside {2, 3} and not
/// dividing K² + 4 — the "stray prime mass" of m. Zero exactly when m is
/// built from 2, 3, and primes of K² + 4. Diagnostic only.
pub fn s_diagnostic(k: u64, m: u64) -> f64 {
    assert!(m >= 2, "modulus must be >= 2");
    let disc = k as u128 * k as u128 + 4;
    let ln3 = 3f64.ln();
    factorize(m)
        .factors
        .iter()
        .filter(|&&(q, _)| q != 2 && q != 3 && !disc.is_multiple_of(q as u128))
        .map(|&(q, e)| e as f64 * ((q as f64).ln() - ln3))
        .sum()
}

/// ν₂(m) + ν₃(m), the weight that decreases monotonically along trajectory
/// tails once a value is a multiple of a K ≡ ±1 (mod 6) fixed point.
pub fn two_three_weight(m: u64) -> u32 {
    p_adic_valuation(m, 2) + p_adic_valuation(m, 3)
}

/// Asymptotic ceiling for 𝒯_K(m)/ln m: 1/ln 2 + 1/(2 ln 3 − 3 ln 2) ≈ 9.933.
pub fn t_ratio_bound() -> f64 {
    let ln2 = 2f64.ln();
    let ln3 = 3f64.ln();
    1.0 / ln2 + 1.0 / (2.0 * ln3 - 3.0 * ln2)
}

/// Asymptotic ceiling for ln 𝒫_K(m)/ln m: (ln 8 − ln 3)/(2 ln 3 − 3 ln 2) ≈ 8.327.
pub fn p_ratio_bound() -> f64 {
    let ln2 = 2f64.ln();
    let ln3 = 3f64.ln();
    (8f64.ln() - ln3) / (2.0 * ln3 - 3.0 * ln2)
}

/// The two growth ratios of one trajectory: 𝒯_K(m)/ln m and
/// ln 𝒫_K(m)/ln m. The second is absent when the trajectory ends in the
/// two-cycle (𝒫 = 0 has no logarithm).
pub fn bound_ratios(k: u64, m: u64) -> Result<(f64, Option<f64>)> {
    assert!(m >= 2, "modulus must be >= 2");
    let traj = trajectory(k, m, DEFAULT_MAX_ITERS)?;
    let p = match traj.terminal {
        Terminal::FixedPoint(v) => v,
        Terminal::TwoCycle => 0,
        Terminal::Exhausted => {
            return Err(Error::NoConvergence {
                start: m,
                max_iters: DEFAULT_MAX_ITERS,
            })
        }
    };
    let ln_m = (m as f64).ln();
    let t_ratio = traj.length as f64 / ln_m;
    let p_ratio = (p > 0).then(|| (p as f64).ln() / ln_m);
    Ok((t_ratio, p_ratio))
}
