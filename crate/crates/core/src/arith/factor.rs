//! Integer factorization: sieve trial division, Miller–Rabin / BPSW
//! primality and Pollard rho with Brent's cycle detection.
//!
//! 64-bit inputs (the counting hot path) trial-divide only by primes below
//! 2^10 before handing the cofactor to Miller–Rabin and rho. Wider inputs
//! trial-divide by the whole sieve below 10^6 first.

use std::fmt;

use num_integer::Integer;

use super::sieve::{small_primes, TRIAL_DIVISION_LIMIT};
use super::ArithError;

/// Odd primes below this bound are trial-divided on the 64-bit path.
const EARLY_TRIAL_BOUND: u64 = 1 << 10;

/// Signed prime-power decomposition of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    sign: i8,
    factors: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Reconstructs the factored integer.
    pub fn value(&self) -> i128 {
        let mut acc: i128 = self.sign as i128;
        for &(p, e) in &self.factors {
            acc *= (p as i128).pow(e);
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{}", p)?;
            } else {
                write!(f, "{}^{}", p, e)?;
            }
        }
        Ok(())
    }
}

/// Exact factorization of a nonzero integer with `|n| < 2^127`.
pub fn factor(n: i128) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero("factor"));
    }
    if n == i128::MIN {
        return Err(ArithError::OutOfRange("factor input must satisfy |n| < 2^127"));
    }
    let sign = if n < 0 { -1 } else { 1 };
    Ok(Factorization {
        sign,
        factors: factor_u128(n.unsigned_abs()),
    })
}

pub(crate) fn factor_u128(n: u128) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    if n <= u64::MAX as u128 {
        for_each_prime_factor_u64(n as u64, |p, e| {
            out.push((p as u128, e));
            true
        });
        out.sort_unstable();
        return out;
    }
    let mut n = n;
    let tz = n.trailing_zeros();
    if tz > 0 {
        out.push((2, tz));
        n >>= tz;
    }
    for &p in &small_primes().primes[1..] {
        let p = p as u128;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        let limit = TRIAL_DIVISION_LIMIT as u128;
        if n < limit * limit {
            out.push((n, 1));
        } else if n <= u64::MAX as u128 {
            let mut rest = Vec::new();
            split_u64(n as u64, &mut rest);
            out.extend(rest.into_iter().map(|p| (p as u128, 1)));
        } else {
            let mut rest = Vec::new();
            split_u128(n, &mut rest);
            out.extend(rest.into_iter().map(|p| (p, 1)));
        }
    }
    merge_sorted(out)
}

fn merge_sorted(mut v: Vec<(u128, u32)>) -> Vec<(u128, u32)> {
    v.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::with_capacity(v.len());
    for (p, e) in v {
        match out.last_mut() {
            Some(last) if last.0 == p => last.1 += e,
            _ => out.push((p, e)),
        }
    }
    out
}

/// Calls `visit(p, e)` for each prime power exactly dividing `n`; stops
/// early and returns `false` as soon as `visit` does.
///
/// Primes found by trial division arrive in increasing order; larger
/// cofactor primes follow in unspecified order.
pub(crate) fn for_each_prime_factor_u64(mut n: u64, mut visit: impl FnMut(u64, u32) -> bool) -> bool {
    if n <= 1 {
        return true;
    }
    let tz = n.trailing_zeros();
    if tz > 0 {
        n >>= tz;
        if !visit(2, tz) {
            return false;
        }
    }
    for d in &small_primes().odd_divisors {
        if d.p >= EARLY_TRIAL_BOUND || d.p * d.p > n {
            break;
        }
        if let Some(mut q) = d.divide(n) {
            let mut e = 1;
            while let Some(q2) = d.divide(q) {
                q = q2;
                e += 1;
            }
            n = q;
            if !visit(d.p, e) {
                return false;
            }
        }
    }
    if n == 1 {
        return true;
    }
    if n < EARLY_TRIAL_BOUND * EARLY_TRIAL_BOUND || is_prime_u64(n) {
        return visit(n, 1);
    }
    let mut primes = Vec::new();
    split_u64(n, &mut primes);
    primes.sort_unstable();
    let mut i = 0;
    while i < primes.len() {
        let p = primes[i];
        let mut e = 0;
        while i < primes.len() && primes[i] == p {
            e += 1;
            i += 1;
        }
        if !visit(p, e) {
            return false;
        }
    }
    true
}

/// Pushes the prime factors of `n` (with repetition).
fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    if n % 2 == 0 {
        out.push(2);
        split_u64(n / 2, out);
        return;
    }
    let r = isqrt(n as u128) as u64;
    if r * r == n {
        split_u64(r, out);
        split_u64(r, out);
        return;
    }
    let d = (1..)
        .find_map(|c| rho_brent_u64(n, c))
        .expect("rho always terminates on composites");
    split_u64(d, out);
    split_u64(n / d, out);
}

fn split_u128(n: u128, out: &mut Vec<u128>) {
    if n <= u64::MAX as u128 {
        let mut small = Vec::new();
        split_u64(n as u64, &mut small);
        out.extend(small.into_iter().map(|p| p as u128));
        return;
    }
    if is_prime_u128(n) {
        out.push(n);
        return;
    }
    let r = isqrt(n);
    if r * r == n {
        split_u128(r, out);
        split_u128(r, out);
        return;
    }
    let d = (1..)
        .find_map(|c| rho_brent_u128(n, c))
        .expect("rho always terminates on composites");
    split_u128(d, out);
    split_u128(n / d, out);
}

#[inline]
fn mulmod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_u64(r, b, n);
        }
        b = mulmod_u64(b, b, n);
        e >>= 1;
    }
    r
}

fn powmod_u32(b: u64, mut e: u64, n: u64) -> u64 {
    // n < 2^32 so products fit in u64
    let mut r = 1 % n;
    let mut b = b % n;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    r
}

fn miller_rabin_u64(n: u64, bases: &[u64]) -> bool {
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    let small = n < (1 << 32);
    'witness: for &a in bases {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = if small { powmod_u32(a, d, n) } else { powmod_u64(a, d, n) };
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = if small { x * x % n } else { mulmod_u64(x, x, n) };
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    if n < (1 << 32) {
        miller_rabin_u64(n, &[2, 7, 61])
    } else {
        miller_rabin_u64(n, &[2, 325, 9375, 28178, 450775, 9780504, 1795265022])
    }
}

#[inline]
fn addmod_u128(a: u128, b: u128, n: u128) -> u128 {
    if a >= n - b {
        a - (n - b)
    } else {
        a + b
    }
}

#[inline]
fn submod_u128(a: u128, b: u128, n: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

fn mulmod_u128(a: u128, b: u128, n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return (a % n) * (b % n) % n;
    }
    let (mut a, mut b) = (a % n, b % n);
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut r = 0;
    while b > 0 {
        if b & 1 == 1 {
            r = addmod_u128(r, a, n);
        }
        a = addmod_u128(a, a, n);
        b >>= 1;
    }
    r
}

fn powmod_u128(mut b: u128, mut e: u128, n: u128) -> u128 {
    let mut r = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_u128(r, b, n);
        }
        b = mulmod_u128(b, b, n);
        e >>= 1;
    }
    r
}

fn miller_rabin_u128(n: u128, a: u128) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = powmod_u128(a % n, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod_u128(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn half_mod(x: u128, n: u128) -> u128 {
    // n odd and n < 2^127, so x + n cannot overflow
    if x & 1 == 0 {
        x / 2
    } else {
        (x + n) / 2
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas_u128(n: u128) -> bool {
    let r = isqrt(n);
    if r * r == n {
        return false;
    }
    let mut d: i128 = 5;
    loop {
        match super::kronecker(d, n as i128) {
            -1 => break,
            0 if d.unsigned_abs() != n => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let to_mod = |v: i128| -> u128 {
        let m = v.rem_euclid(n as i128);
        m as u128
    };
    let dm = to_mod(d);
    let q = (1 - d) / 4;
    let qm = to_mod(q);
    let s = (n + 1).trailing_zeros();
    let k = (n + 1) >> s;
    let mut u: u128 = 1;
    let mut v: u128 = 1;
    let mut qk = qm;
    let bits = 128 - k.leading_zeros();
    for i in (0..bits - 1).rev() {
        u = mulmod_u128(u, v, n);
        v = submod_u128(mulmod_u128(v, v, n), addmod_u128(qk, qk, n), n);
        qk = mulmod_u128(qk, qk, n);
        if (k >> i) & 1 == 1 {
            let u2 = half_mod(addmod_u128(u, v, n), n);
            let v2 = half_mod(addmod_u128(mulmod_u128(dm, u, n), v, n), n);
            u = u2;
            v = v2;
            qk = mulmod_u128(qk, qm, n);
        }
    }
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = submod_u128(mulmod_u128(v, v, n), addmod_u128(qk, qk, n), n);
        if v == 0 {
            return true;
        }
        qk = mulmod_u128(qk, qk, n);
    }
    false
}

/// Primality for 128-bit integers: deterministic Miller–Rabin below
/// 3.3·10^24, Baillie–PSW above.
pub fn is_prime_u128(n: u128) -> bool {
    if n <= u64::MAX as u128 {
        return is_prime_u64(n as u64);
    }
    if n % 2 == 0 {
        return false;
    }
    for &p in &small_primes().primes[1..200] {
        if n % p as u128 == 0 {
            return false;
        }
    }
    const BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
    if n < DETERMINISTIC_BOUND {
        BASES.iter().all(|&a| miller_rabin_u128(n, a))
    } else {
        miller_rabin_u128(n, 2) && strong_lucas_u128(n)
    }
}

/// Brent's variant of Pollard rho on `x -> x^2 + c`; returns a nontrivial
/// divisor or `None` if this `c` cycles without one.
fn rho_brent_u64(n: u64, c: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
    let mut y: u64 = 2;
    let mut r: u64 = 1;
    let mut q: u64 = 1;
    let mut g: u64 = 1;
    let mut x = y;
    let mut ys = y;
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
                q = mulmod_u64(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_brent_u128(n: u128, c: u128) -> Option<u128> {
    const BATCH: u128 = 128;
    let f = |x: u128| addmod_u128(mulmod_u128(x, x, n), c % n, n);
    let mut y: u128 = 2;
    let mut r: u128 = 1;
    let mut q: u128 = 1;
    let mut g: u128 = 1;
    let mut x = y;
    let mut ys = y;
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
                q = mulmod_u128(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Floor square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // correct the float estimate
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_perfect_square(n: u128) -> bool {
    let r = isqrt(n);
    r * r == n
}
