//! Truncated Euler products, the comparison factor `G` and singular limits.

use rayon::prelude::*;

use crate::arith::sieve::{prime_table, primes_slice};
use crate::arith::Rational;

use super::character::{CharacterGroup, QuadCharacter};
use super::special::{gamma_rational, hurwitz_zeta_regular, zeta_times_pole};
use super::AnalyticError;

const CHUNK: usize = 4096;

/// `sum f(p)` over primes `p <= cutoff`, in fixed chunks summed in order,
/// so the result does not depend on the thread count.
pub(crate) fn prime_sum(cutoff: u64, f: impl Fn(u64) -> f64 + Sync) -> f64 {
    prime_sum_range(0, cutoff, f)
}

/// `sum f(p)` over primes `lo < p <= hi`.
pub(crate) fn prime_sum_range(lo: u64, hi: u64, f: impl Fn(u64) -> f64 + Sync) -> f64 {
    let table = prime_table(hi);
    let primes = primes_slice(&table, hi);
    let start = primes.partition_point(|&p| (p as u64) <= lo);
    let partial: Vec<f64> = primes[start..]
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().map(|&p| f(p as u64)).sum::<f64>())
        .collect();
    partial.iter().sum()
}

fn check_s(s: f64) -> Result<(), AnalyticError> {
    if s.is_finite() && s > 1.0 {
        Ok(())
    } else {
        Err(AnalyticError::SNotAboveOne(s))
    }
}

/// `-log(1 - x)`.
#[inline]
fn neg_log1m(x: f64) -> f64 {
    -(-x).ln_1p()
}

/// `prod_{p <= cutoff} (1 - chi(p) p^{-s})^{-1}`.
pub fn l_value(chi: &QuadCharacter, s: f64, cutoff: u64) -> Result<f64, AnalyticError> {
    check_s(s)?;
    let log = prime_sum(cutoff, |p| {
        let c = chi.eval(p);
        if c == 0 {
            0.0
        } else {
            neg_log1m(c as f64 * (p as f64).powf(-s))
        }
    });
    Ok(log.exp())
}

/// Heuristic correction for the primes above `cutoff` in the principal
/// Euler product: `sum_{p > P} p^{-s} ~ E_1((s - 1) log P)`.
pub fn principal_tail_log(s: f64, cutoff: u64) -> f64 {
    exp_integral_e1((s - 1.0) * (cutoff as f64).ln())
}

/// `E_1(x)` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> f64 {
    if x < 1.0 {
        let euler_gamma = 0.577_215_664_901_532_9;
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -x / k as f64;
            sum -= term / k as f64;
        }
        -euler_gamma - x.ln() + sum
    } else {
        // continued fraction, modified Lentz
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..200 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// `L(chi, s)` from the Dirichlet series, for real `s > 0` (principal
/// character: `s != 1`), through Hurwitz zeta values on residue classes.
/// Returns the value and an error estimate.
pub fn l_series(chi: &QuadCharacter, s: f64) -> Result<(f64, f64), AnalyticError> {
    if !(s > 0.0) {
        return Err(AnalyticError::SNotPositive(s));
    }
    match chi {
        QuadCharacter::Principal => {
            if s == 1.0 {
                return Err(AnalyticError::Pole);
            }
            let (h, e) = hurwitz_zeta_regular(s, 1.0);
            Ok((h + 1.0 / (s - 1.0), e))
        }
        QuadCharacter::Kronecker(_) => {
            // the 1/(s-1) parts cancel since the character sums to zero
            let q = chi.modulus();
            let mut sum = 0.0;
            let mut err = 0.0;
            for a in 1..=q {
                let c = chi.eval(a);
                if c != 0 {
                    let (h, e) = hurwitz_zeta_regular(s, a as f64 / q as f64);
                    sum += c as f64 * h;
                    err += e;
                }
            }
            let scale = (q as f64).powf(-s);
            Ok((scale * sum, scale * err))
        }
    }
}

/// `prod (1 - 1(p) chi(p) p^{-s})^{-1}` over primes `p <= cutoff`
/// unramified for `R` and `chi`, where `1(p) = 1` iff every member of `R`
/// is 1 at `p`.
pub fn partial_euler_product(
    r: &CharacterGroup,
    chi: &QuadCharacter,
    s: f64,
    cutoff: u64,
) -> Result<f64, AnalyticError> {
    check_s(s)?;
    let log = prime_sum(cutoff, |p| {
        if r.is_ramified(p) || chi.is_ramified(p) || r.zero_indicator(p) == 0 {
            return 0.0;
        }
        neg_log1m(chi.eval(p) as f64 * (p as f64).powf(-s))
    });
    Ok(log.exp())
}

/// `log G(R, chi, s)` truncated at `cutoff`, where
/// `L_R(chi, s)^{|R|} = G(R, chi, s) prod_{rho in R} L(rho chi, s)` with
/// every factor restricted to the same unramified primes.
///
/// Primes on the support of `1` contribute nothing; elsewhere the terms
/// are `O(p^{-2s})`, so the sum converges for `s > 1/2`.
pub fn log_g(r: &CharacterGroup, chi: &QuadCharacter, s: f64, cutoff: u64) -> f64 {
    log_g_range(r, chi, s, 0, cutoff)
}

/// The primes in `(lo, hi]` of [`log_g`].
pub fn log_g_range(r: &CharacterGroup, chi: &QuadCharacter, s: f64, lo: u64, hi: u64) -> f64 {
    let order = r.order() as f64;
    prime_sum_range(lo, hi, |p| {
        if r.is_ramified(p) || chi.is_ramified(p) {
            return 0.0;
        }
        let x = (p as f64).powf(-s);
        let c = chi.eval(p) as f64;
        let mut acc = 0.0;
        if r.zero_indicator(p) == 1 {
            acc += order * neg_log1m(c * x);
        }
        for rho in r.members() {
            acc -= neg_log1m(rho.eval(p) as f64 * c * x);
        }
        acc
    })
}

/// `(G(P1), G(P2))`, the second extended from the first by the primes in
/// `(P1, P2]` so both share the same rounding.
pub fn factorization_check(
    r: &CharacterGroup,
    chi: &QuadCharacter,
    s: f64,
    p1: u64,
    p2: u64,
) -> Result<(f64, f64), AnalyticError> {
    if !(s >= 1.0) {
        return Err(AnalyticError::SNotAboveOne(s));
    }
    if p1 >= p2 {
        return Err(AnalyticError::Cutoffs(p1, p2));
    }
    let l1 = log_g(r, chi, s, p1);
    let l2 = l1 + log_g_range(r, chi, s, p1, p2);
    Ok((l1.exp(), l2.exp()))
}

/// One rung of the ladder `s_k = 1 + 2^{-k}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LadderStep {
    pub k: u32,
    pub s: f64,
    pub estimate: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularLimit {
    /// Estimate of `lim (s-1)^{1/|R|} L_R(rho, s)`.
    pub c: f64,
    pub omega: Rational,
    /// Prime cutoff used for `G`.
    pub cutoff: u64,
    pub trace: Vec<LadderStep>,
    /// Estimate at the last rung for increasing prime cutoffs.
    pub cutoff_trace: Vec<(u64, f64)>,
    /// Relative difference of the last two rungs.
    pub last_gap: f64,
}

pub const LADDER_MIN_K: u32 = 3;
pub const LADDER_MAX_K: u32 = 20;
pub const LADDER_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_G_CUTOFF: u64 = 1_000_000;

/// `(s-1) zeta(s)` or `L(chi, s)` with the Euler factors at `ramified`
/// removed.
fn completed_factor(chi: &QuadCharacter, s: f64, ramified: &[u64]) -> Result<f64, AnalyticError> {
    let base = match chi {
        QuadCharacter::Principal => zeta_times_pole(s),
        _ => l_series(chi, s)?.0,
    };
    let euler: f64 = ramified
        .iter()
        .map(|&p| 1.0 - chi.eval(p) as f64 * (p as f64).powf(-s))
        .product();
    Ok(base * euler)
}

fn ladder_estimate(
    r: &CharacterGroup,
    rho: &QuadCharacter,
    ramified: &[u64],
    s: f64,
    cutoff: u64,
) -> Result<f64, AnalyticError> {
    let mut log_total = log_g(r, rho, s, cutoff);
    for rp in r.members() {
        let chi = rp.product(rho);
        let f = completed_factor(&chi, s, ramified)?;
        if !(f > 0.0) {
            return Err(AnalyticError::NonPositiveFactor(chi, s));
        }
        log_total += f.ln();
    }
    Ok((log_total / r.order() as f64).exp())
}

/// The constant `c` with `L_R(rho, s) ~ c (s-1)^{-1/|R|}`, extracted
/// through `L_R^{|R|} = G prod L(rho' rho, s)`: only `zeta` is singular and
/// its pole is cancelled analytically.
pub fn singular_limit(
    r: &CharacterGroup,
    rho: &QuadCharacter,
    cutoff: u64,
) -> Result<SingularLimit, AnalyticError> {
    if !r.contains(rho) {
        return Err(AnalyticError::NotMember(*rho));
    }
    let ramified = r.ramified_primes(&[*rho]);
    let mut trace = Vec::new();
    for k in LADDER_MIN_K..=LADDER_MAX_K {
        let s = 1.0 + 2f64.powi(-(k as i32));
        trace.push(LadderStep {
            k,
            s,
            estimate: ladder_estimate(r, rho, &ramified, s, cutoff)?,
        });
    }
    let n = trace.len();
    let (a, b) = (trace[n - 2].estimate, trace[n - 1].estimate);
    let last_gap = ((b - a) / b).abs();
    let s_last = trace[n - 1].s;
    let mut cutoff_trace = Vec::new();
    for p in [cutoff / 100, cutoff / 10] {
        if p >= 2 {
            cutoff_trace.push((p, ladder_estimate(r, rho, &ramified, s_last, p)?));
        }
    }
    cutoff_trace.push((cutoff, b));
    let result = SingularLimit {
        c: b,
        omega: Rational::new(1, r.order() as i128),
        cutoff,
        trace,
        cutoff_trace,
        last_gap,
    };
    if !(last_gap < LADDER_TOLERANCE) || !(b.abs() > 0.0) || !b.is_finite() {
        return Err(AnalyticError::NotConverged(Box::new(result)));
    }
    Ok(result)
}

/// `g(1) / Gamma(omega)`: the constant in `sum_{n <= x} a_n ~ C x (log x)^{omega - 1}`
/// when the Dirichlet series behaves like `g(s) (s-1)^{-omega}`.
pub fn delange_constant(g1: f64, omega: Rational) -> Result<f64, AnalyticError> {
    if *omega.numer() <= 0 {
        return Err(AnalyticError::NonPositiveOmega(omega));
    }
    Ok(g1 / gamma_rational(omega))
}

/// Fraction of primes `p <= cutoff` unramified for `R` with `1(p) = 1`.
pub fn support_density(r: &CharacterGroup, cutoff: u64) -> f64 {
    let table = prime_table(cutoff);
    let primes = primes_slice(&table, cutoff);
    let mut hits = 0u64;
    let mut total = 0u64;
    for &p in primes {
        let p = p as u64;
        if r.is_ramified(p) {
            continue;
        }
        total += 1;
        hits += r.zero_indicator(p) as u64;
    }
    hits as f64 / total as f64
}
