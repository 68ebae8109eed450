//! Prime sieves shared by factorization and the Euler-product code.

use std::sync::{Arc, Mutex, OnceLock};

/// Primes below this bound are used for trial division.
pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Sieve of Eratosthenes over odd numbers.
pub fn primes_up_to(limit: u64) -> Vec<u32> {
    assert!(limit <= u32::MAX as u64, "sieve limit exceeds u32 range");
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    // index i represents 2i + 1
    let half = limit / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = Vec::with_capacity(estimate_pi(limit));
    out.push(2);
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|&(i, &c)| !c && 2 * i + 1 <= limit)
            .map(|(i, _)| (2 * i + 1) as u32),
    );
    out
}

fn estimate_pi(n: usize) -> usize {
    if n < 17 {
        return 8;
    }
    let x = n as f64;
    (1.26 * x / x.ln()) as usize
}

/// Odd prime with precomputed data for branch-free divisibility tests:
/// `n` is divisible by `p` iff `n * inv <= max_quot` (mod 2^64).
#[derive(Clone, Copy, Debug)]
pub(crate) struct DivisorEntry {
    pub p: u64,
    pub inv: u64,
    pub max_quot: u64,
}

impl DivisorEntry {
    fn new(p: u64) -> Self {
        // Newton iteration for the inverse of an odd number mod 2^64.
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        debug_assert_eq!(p.wrapping_mul(inv), 1);
        DivisorEntry {
            p,
            inv,
            max_quot: u64::MAX / p,
        }
    }

    /// `Some(n / p)` when `p | n`.
    #[inline(always)]
    pub fn divide(&self, n: u64) -> Option<u64> {
        let q = n.wrapping_mul(self.inv);
        (q <= self.max_quot).then_some(q)
    }
}

pub(crate) struct SmallPrimes {
    pub primes: Vec<u32>,
    pub odd_divisors: Vec<DivisorEntry>,
}

/// Primes below [`TRIAL_DIVISION_LIMIT`]; built once, immutable afterwards.
pub(crate) fn small_primes() -> &'static SmallPrimes {
    static TABLE: OnceLock<SmallPrimes> = OnceLock::new();
    TABLE.get_or_init(|| {
        let primes = primes_up_to(TRIAL_DIVISION_LIMIT as u64 - 1);
        let odd_divisors = primes[1..]
            .iter()
            .map(|&p| DivisorEntry::new(p as u64))
            .collect();
        SmallPrimes {
            primes,
            odd_divisors,
        }
    })
}

/// Shared table of primes, grown on demand and never shrunk.
///
/// The returned vector covers at least `limit`; callers slice it with
/// `partition_point`.
pub fn prime_table(limit: u64) -> Arc<Vec<u32>> {
    static CACHE: OnceLock<Mutex<(u64, Arc<Vec<u32>>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new((0, Arc::new(Vec::new()))));
    let mut guard = cache.lock().expect("prime cache poisoned");
    if guard.0 < limit {
        let target = limit.max(guard.0.saturating_mul(2)).min(u32::MAX as u64);
        *guard = (target, Arc::new(primes_up_to(target)));
    }
    guard.1.clone()
}

/// Primes `p <= limit` as a slice of the shared table.
pub fn primes_slice(table: &[u32], limit: u64) -> &[u32] {
    let end = table.partition_point(|&p| (p as u64) <= limit);
    &table[..end]
}
