//! The Landau-Ramanujan constant `K`, with `#{n <= x : n = a^2 + b^2} ~ K x / sqrt(log x)`.

use super::euler::prime_sum;
use super::special::{dirichlet_beta, riemann_zeta};

/// Successive approximations produced by the doubling recursion.
#[derive(Clone, Debug, PartialEq)]
pub struct LandauTrace {
    pub value: f64,
    /// `(depth, K)` where depth `j` treats `P3(2^{j+1})` as 1.
    pub steps: Vec<(u32, f64)>,
}

/// `P3(s)^2 / P3(2s)` where `P3(s) = prod_{p = 3 mod 4} (1 - p^{-s})^{-1}`.
fn doubling_ratio(s: f64) -> f64 {
    riemann_zeta(s) * (-(2f64.powf(-s))).ln_1p().exp() / dirichlet_beta(s)
}

/// `K = (P3(2) / 2)^{1/2}` from `P3(s)^2 = zeta(s) (1 - 2^{-s}) / beta(s) * P3(2s)`,
/// unrolled until the residual product is 1 to double precision.
pub fn landau_ramanujan_trace() -> LandauTrace {
    let mut log_p3 = 0.0;
    let mut weight = 0.5;
    let mut s = 2.0;
    let mut steps = Vec::new();
    for depth in 1..=12u32 {
        let ln_a = doubling_ratio(s).ln();
        log_p3 += weight * ln_a;
        let k = (0.5 * (log_p3 - std::f64::consts::LN_2)).exp();
        steps.push((depth, k));
        // the residual P3(2s) is about 3^{-2s}
        if ln_a.abs() < 1e-18 || 3f64.powf(-2.0 * s) < 1e-18 {
            break;
        }
        weight *= 0.5;
        s *= 2.0;
    }
    LandauTrace {
        value: steps.last().unwrap().1,
        steps,
    }
}

pub fn landau_ramanujan() -> f64 {
    landau_ramanujan_trace().value
}

/// `2^{-1/2} prod_{p = 3 mod 4, p <= cutoff} (1 - p^{-2})^{-1/2}`, which
/// increases to `K`.
pub fn landau_direct_product(cutoff: u64) -> f64 {
    let log = prime_sum(cutoff, |p| {
        if p % 4 == 3 {
            -(-1.0 / (p as f64 * p as f64)).ln_1p()
        } else {
            0.0
        }
    });
    (0.5 * log - 0.5 * std::f64::consts::LN_2).exp()
}

/// `g(1) = lim (s-1)^{1/2} sum 1_{a^2+b^2}(n) n^{-s} = sqrt(2 beta(1) P3(2))`,
/// with `P3(2)` from one doubling step and a direct product for `P3(4)`.
/// Delange's theorem turns it into `K`.
pub fn landau_series_g1() -> f64 {
    let log_p3_4 = prime_sum(100_000, |p| {
        if p % 4 == 3 {
            -(-(p as f64).powi(-4)).ln_1p()
        } else {
            0.0
        }
    });
    let p3_2 = (doubling_ratio(2.0).ln() + log_p3_4).exp().sqrt();
    (2.0 * dirichlet_beta(1.0) * p3_2).sqrt()
}
