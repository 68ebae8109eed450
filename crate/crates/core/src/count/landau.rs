//! Segmented sieve for integers that are sums of two squares.

use rayon::prelude::*;

use crate::arith::isqrt;
use crate::arith::sieve::primes_up_to;

use super::CountError;

pub const LANDAU_MAX: u64 = 1_000_000_000;

const SEGMENT: u64 = 1 << 18;

/// `#{1 <= n <= x : n = a^2 + b^2}`.
pub fn landau_count(x: u64) -> Result<u64, CountError> {
    Ok(landau_counts(&[x])?[0])
}

/// [`landau_count`] at every bound of an increasing list, in one pass.
///
/// `n` is a sum of two squares iff every prime `p = 3 mod 4` divides it to
/// even order. Each segment records the part of `n` made of primes
/// `<= sqrt(x)` and whether some `3 mod 4` prime has odd exponent; the cofactor is
/// 1 or a single large prime.
pub fn landau_counts(bounds: &[u64]) -> Result<Vec<u64>, CountError> {
    if bounds.is_empty() {
        return Ok(Vec::new());
    }
    if bounds[0] == 0 || bounds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CountError::CheckpointOrder);
    }
    let x = *bounds.last().unwrap();
    if x > LANDAU_MAX {
        return Err(CountError::Infeasible { bound: x, dim: 0 });
    }
    let primes: Vec<u64> = primes_up_to(isqrt(x as u128) as u64)
        .into_iter()
        .map(|p| p as u64)
        .collect();
    let segments: Vec<u64> = (1..=x).step_by(SEGMENT as usize).collect();
    let per_segment: Vec<Vec<u64>> = segments
        .into_par_iter()
        .map(|lo| segment_counts(lo, (lo + SEGMENT - 1).min(x), &primes, bounds))
        .collect();
    let mut totals = vec![0u64; bounds.len()];
    for seg in per_segment {
        for (t, c) in totals.iter_mut().zip(seg) {
            *t += c;
        }
    }
    Ok(totals)
}

fn segment_counts(lo: u64, hi: u64, primes: &[u64], bounds: &[u64]) -> Vec<u64> {
    let len = (hi - lo + 1) as usize;
    let mut small = vec![1u32; len];
    let mut odd = vec![false; len];
    let mut bad = vec![false; len];
    for &p in primes {
        let three = p % 4 == 3;
        let mut pk = p;
        loop {
            let first = lo.div_ceil(pk) * pk;
            let mut i = first;
            while i <= hi {
                let j = (i - lo) as usize;
                small[j] *= p as u32;
                if three {
                    odd[j] = !odd[j];
                }
                i += pk;
            }
            match pk.checked_mul(p) {
                Some(next) if next <= hi => pk = next,
                _ => break,
            }
        }
        if three {
            let mut i = lo.div_ceil(p) * p;
            while i <= hi {
                let j = (i - lo) as usize;
                bad[j] |= odd[j];
                odd[j] = false;
                i += p;
            }
        }
    }
    let mut counts = vec![0u64; bounds.len()];
    for j in 0..len {
        if bad[j] {
            continue;
        }
        let n = lo + j as u64;
        if (n / small[j] as u64) % 4 == 3 {
            continue;
        }
        for (c, &b) in counts.iter_mut().zip(bounds) {
            if n <= b {
                *c += 1;
            }
        }
    }
    counts
}
