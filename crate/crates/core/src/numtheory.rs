//! Integer arithmetic primitives: gcd/lcm, modular exponentiation and
//! inversion, deterministic Miller-Rabin primality, factorization by trial
//! division plus Brent's variant of Pollard's rho, multiplicative orders,
//! and p-adic valuations.
//!
//! Everything is exact `u64` with `u128` intermediates; nothing here is
//! probabilistic. The Miller-Rabin witness set is the standard twelve-prime
//! base set that decides primality for all 64-bit integers, and the rho
//! iteration uses a fixed polynomial-offset schedule so factorizations are
//! reproducible run to run.

use crate::{Error, Result};

/// Prime factorization of a positive integer, factors ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// The factored integer (product of `pᵉ` over `factors`; 1 ⇒ empty list).
    pub value: u64,
    /// `(prime, exponent)` pairs with primes strictly increasing, exponents ≥ 1.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The distinct primes dividing `value`, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` in `value` (0 when `p` does not divide it).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// All positive divisors of `value`, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let prior = divs.clone();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                divs.extend(prior.iter().map(|d| d * pe));
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Greatest common divisor; `gcd(0, n) = gcd(n, 0) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least common multiple of two positive integers.
///
/// Overflow is a hard error, never a wrapped value: lcm folds are how
/// composite periods are assembled, and a silently wrapped period would
/// poison everything downstream.
pub fn lcm(a: u64, b: u64) -> Result<u64> {
    assert!(a >= 1 && b >= 1, "lcm arguments must be positive");
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(Error::Overflow { op: "lcm" })
}

/// `a · b mod m` without overflow (intermediate product in u128).
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod modulus` by binary exponentiation; `modulus ≥ 2`.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "mod_pow modulus must be >= 2");
    let mut base = base % modulus;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` (result in `[1, m)`), or [`Error::NotInvertible`]
/// carrying `gcd(a, m)` when none exists.
pub fn mod_inv(a: u64, m: u64) -> Result<u64> {
    assert!(m >= 2, "mod_inv modulus must be >= 2");
    let a = a % m;
    // Extended Euclid on (a, m), tracking only the coefficient of a.
    let (mut r0, mut r1) = (a as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible {
            value: a,
            modulus: m,
            gcd: r0 as u64,
        });
    }
    Ok(s0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // n - 1 = d · 2^s with d odd
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding variant of Pollard's rho. Returns a nontrivial
/// factor of odd composite `n`, or `None` if the offset `c` degenerates.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let (mut x, mut ys, mut g) = (0u64, 0u64, 1u64);
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        // Backtrack one step at a time from the last checkpoint.
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    // Fixed offset schedule keeps the factorization deterministic.
    for c in 1.. {
        if let Some(d) = pollard_brent(n, c) {
            rho_split(d, out);
            rho_split(n / d, out);
            return;
        }
    }
}

/// Factor `n ≥ 1`: trial division by 2 and odd candidates below 10⁴
/// (stopping early once the candidate squared exceeds the remainder), then
/// rho on whatever composite cofactor survives.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let value = n;
    let mut n = n;
    let mut primes = Vec::new();
    while n.is_multiple_of(2) {
        primes.push(2);
        n /= 2;
    }
    let mut d = 3u64;
    while d < 10_000 && d * d <= n {
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        if d * d > n {
            primes.push(n); // cofactor below 10⁸: necessarily prime
        } else {
            rho_split(n, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization { value, factors }
}

/// Multiplicative order of `a` modulo a prime `p`: the least `d ≥ 1` with
/// `a^d ≡ 1`. Errors when `p | a` (order undefined).
pub fn multiplicative_order(a: u64, p: u64) -> Result<u64> {
    debug_assert!(is_prime(p), "multiplicative_order modulus must be prime");
    let a = a % p;
    if a == 0 {
        return Err(Error::NotInvertible {
            value: 0,
            modulus: p,
            gcd: p,
        });
    }
    // Start from the group order p−1 and strip each prime while a^(d/q) ≡ 1.
    let mut d = p - 1;
    for &(q, _) in &factorize(p - 1).factors {
        while d.is_multiple_of(q) && mod_pow(a, d / q, p) == 1 {
            d /= q;
        }
    }
    Ok(d)
}

/// Exponent of the exact power of prime `p` dividing `n ≥ 1`.
pub fn p_adic_valuation(n: u64, p: u64) -> u32 {
    assert!(n >= 1, "p_adic_valuation requires n >= 1");
    debug_assert!(is_prime(p), "p_adic_valuation requires prime p");
    let mut n = n;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}
