//! Self-checks against brute-force oracles that share no code with the
//! routines they test.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{hilbert_symbol, ramified_places, Place, Rational};
use crate::brauer::is_norm_quadratic_int;
use crate::count::{fit_log_power, CountRow, CountSeries};
use crate::heights::{enumerate, HeightSpec};
use crate::model::conic_locally_soluble;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Flip the Hilbert symbol `(-1, -1)_2` before checking it.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 1,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    /// First failing case, with its inputs.
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} cases)", self.name, self.cases),
            Some(msg) => write!(f, "FAIL {}: {}", self.name, msg),
        }
    }
}

pub fn run_all(opts: VerifyOptions) -> Vec<SuiteReport> {
    vec![
        hilbert_suite(opts),
        product_formula_suite(opts),
        norm_suite(opts),
        enumeration_suite(),
        conic_suite(opts),
        fit_suite(),
    ]
}

fn place(p: u64) -> Place {
    if p == 0 {
        Place::Infinity
    } else {
        Place::prime(p as u128).expect("prime")
    }
}

fn symbol_under_test(a: i64, b: i64, p: u64, opts: VerifyOptions) -> i8 {
    let s = hilbert_symbol(
        &Rational::from_integer(a as i128),
        &Rational::from_integer(b as i128),
        place(p),
    )
    .expect("nonzero entries");
    if opts.inject_fault && a == -1 && b == -1 && p == 2 {
        -s
    } else {
        s
    }
}

fn hilbert_suite(opts: VerifyOptions) -> SuiteReport {
    let mut cases = 0;
    for p in [0u64, 2, 3, 5, 7] {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 || b == 0 {
                    continue;
                }
                cases += 1;
                let s = symbol_under_test(a, b, p, opts);
                let o = locally_soluble(a, b, p);
                if (s == 1) != o {
                    return SuiteReport {
                        name: "hilbert-symbol oracle",
                        cases,
                        failure: Some(format!(
                            "({a}, {b})_{}: symbol {s}, brute force {}",
                            place(p),
                            if o { "soluble" } else { "insoluble" }
                        )),
                    };
                }
            }
        }
    }
    SuiteReport {
        name: "hilbert-symbol oracle",
        cases,
        failure: None,
    }
}

fn product_formula_suite(opts: VerifyOptions) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let name = "product formula";
    for i in 0..2000 {
        let mut draw = || loop {
            let x: i64 = rng.gen_range(-1_000_000..=1_000_000);
            if x != 0 {
                return x;
            }
        };
        let (a, b) = (draw(), draw());
        let (ra, rb) = (Rational::from_integer(a as i128), Rational::from_integer(b as i128));
        let mut prod = 1i8;
        for v in ramified_places(&ra, &rb).expect("nonzero") {
            prod *= hilbert_symbol(&ra, &rb, v).expect("nonzero");
        }
        if prod != 1 {
            return SuiteReport {
                name,
                cases: i + 1,
                failure: Some(format!("({a}, {b}): product {prod}")),
            };
        }
    }
    SuiteReport {
        name,
        cases: 2000,
        failure: None,
    }
}

fn norm_suite(_opts: VerifyOptions) -> SuiteReport {
    let name = "quadratic norm oracle";
    let mut cases = 0;
    for d in [-1i64, 2, 3, -3, 5, 6, -7] {
        for m in -40i64..=40 {
            if m == 0 {
                continue;
            }
            cases += 1;
            let fast = is_norm_quadratic_int(m as i128, d);
            let brute = holzer_search(1, -d, -m).is_some();
            if fast != brute {
                return SuiteReport {
                    name,
                    cases,
                    failure: Some(format!("m = {m}, d = {d}: test {fast}, search {brute}")),
                };
            }
        }
    }
    SuiteReport {
        name,
        cases,
        failure: None,
    }
}

fn enumeration_suite() -> SuiteReport {
    let name = "enumeration completeness";
    let mut cases = 0;
    for (n, bounds) in [(1usize, (1..=40).collect::<Vec<u64>>()), (2, (1..=8).collect())] {
        for t in bounds {
            cases += 1;
            if let Err(msg) = compare_enumeration(n, t) {
                return SuiteReport {
                    name,
                    cases,
                    failure: Some(format!("P^{n}, T = {t}: {msg}")),
                };
            }
        }
    }
    SuiteReport {
        name,
        cases,
        failure: None,
    }
}

fn conic_suite(opts: VerifyOptions) -> SuiteReport {
    let name = "conic Hasse/Holzer";
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(1));
    for i in 0..300 {
        let mut draw = || loop {
            let x: i64 = rng.gen_range(-50..=50);
            if x != 0 {
                return x;
            }
        };
        let (a, b, c) = (draw(), draw(), draw());
        let r = |x: i64| Rational::from_integer(x as i128);
        let local = conic_locally_soluble(&r(a), &r(b), &r(c)).expect("nonzero");
        let found = holzer_search(a, b, c);
        if local != found.is_some() {
            return SuiteReport {
                name,
                cases: i + 1,
                failure: Some(format!("{a} x^2 + {b} y^2 + {c} z^2: local {local}, search {found:?}")),
            };
        }
    }
    SuiteReport {
        name,
        cases: 300,
        failure: None,
    }
}

fn fit_suite() -> SuiteReport {
    let name = "synthetic fits";
    for (i, theta) in [0.0f64, -0.5, 1.0].into_iter().enumerate() {
        let rows = (3..=9)
            .map(|e| {
                let b = 10u128.pow(e);
                let bf = b as f64;
                let n = (bf * bf.ln().powf(theta)).floor() as u64;
                CountRow { b, n, baseline: n }
            })
            .collect();
        let series = CountSeries {
            rows,
            height: HeightSpec::Naive,
            predicted_exponent: theta,
        };
        let fit = fit_log_power(&series).expect("usable rows");
        if (fit.theta - theta).abs() >= 1e-2 {
            return SuiteReport {
                name,
                cases: i + 1,
                failure: Some(format!("theta {theta}: fitted {}", fit.theta)),
            };
        }
    }
    SuiteReport {
        name,
        cases: 3,
        failure: None,
    }
}

// ---- oracles ----

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn squarefree_part(n: i64) -> i64 {
    let s: i64 = trial_factor(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i64)
        .product();
    s * n.signum()
}

fn valuation(n: i64, p: u64) -> u32 {
    let mut n = n.unsigned_abs();
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Whether `a x^2 + b y^2 = z^2` has a nonzero solution over `Q_p`
/// (`p = 0` for the reals), by searching for primitive solutions of
/// the reduced form modulo `p^{2 + 2 v_p(4ABC)}`.
pub fn locally_soluble(a: i64, b: i64, p: u64) -> bool {
    if p == 0 {
        return a > 0 || b > 0;
    }
    let (mut a, mut b, mut c) = (squarefree_part(a), squarefree_part(b), -1i64);
    let pi = p as i64;
    if a % pi == 0 && b % pi == 0 {
        // z = p z' turns the form into (a/p, b/p, -p)
        a /= pi;
        b /= pi;
        c = -pi;
    }
    let k = 2 + 2 * valuation(4 * a * b * c, p);
    primitive_zero_mod(a, b, c, p, k)
}

/// A primitive zero of `A x^2 + B y^2 + C z^2` modulo `p^k`, searched up to
/// scaling by units: the first unit coordinate is set to 1.
fn primitive_zero_mod(a: i64, b: i64, c: i64, p: u64, k: u32) -> bool {
    let m = p.pow(k);
    let red = |x: i64| x.rem_euclid(m as i64) as u64;
    let (a, b, c) = (red(a), red(b), red(c));
    let sq = |x: u64| (x as u128 * x as u128 % m as u128) as u64;
    let neg = |x: u64| (m - x) % m;
    // values of C z^2 and of B y^2 with p | y
    let mut cz = vec![false; m as usize];
    for z in 0..m {
        cz[(c as u128 * sq(z) as u128 % m as u128) as usize] = true;
    }
    let mut by_p = vec![false; m as usize];
    for y in (0..m).step_by(p as usize) {
        by_p[(b as u128 * sq(y) as u128 % m as u128) as usize] = true;
    }
    // x = 1
    for y in 0..m {
        let v = (a + (b as u128 * sq(y) as u128 % m as u128) as u64) % m;
        if cz[neg(v) as usize] {
            return true;
        }
    }
    // p | x, y = 1
    for x in (0..m).step_by(p as usize) {
        let v = ((a as u128 * sq(x) as u128 % m as u128) as u64 + b) % m;
        if cz[neg(v) as usize] {
            return true;
        }
    }
    // p | x, p | y, z = 1
    for x in (0..m).step_by(p as usize) {
        let v = ((a as u128 * sq(x) as u128 % m as u128) as u64 + c) % m;
        if by_p[neg(v) as usize] {
            return true;
        }
    }
    false
}

/// Reduces `a x^2 + b y^2 + c z^2 = 0` to squarefree, pairwise coprime
/// coefficients with the same solubility.
pub fn legendre_reduce(mut f: [i64; 3]) -> [i64; 3] {
    loop {
        for x in f.iter_mut() {
            *x = squarefree_part(*x);
        }
        let mut changed = false;
        'pairs: for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let g = gcd(f[i].unsigned_abs(), f[j].unsigned_abs());
            if g > 1 {
                let p = trial_factor(g)[0].0 as i64;
                // multiply through by p and absorb p^2 into the two variables
                f[i] /= p;
                f[j] /= p;
                f[k] *= p;
                changed = true;
                break 'pairs;
            }
        }
        if !changed {
            return f;
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// A nonzero solution of the reduced form with `|x| <= sqrt|bc|`,
/// `|y| <= sqrt|ac|`, `|z| <= sqrt|ab|`; by Holzer's theorem one exists iff
/// the conic is soluble.
pub fn holzer_search(a: i64, b: i64, c: i64) -> Option<(i64, i64, i64)> {
    let [a, b, c] = legendre_reduce([a, b, c]).map(|x| x as i128);
    let bound = |u: i128, v: i128| {
        let n = (u * v).abs();
        let mut r = (n as f64).sqrt() as i128;
        while (r + 1) * (r + 1) <= n {
            r += 1;
        }
        r
    };
    let (xb, yb, zb) = (bound(b, c), bound(a, c), bound(a, b));
    for x in 0..=xb {
        for y in -yb..=yb {
            if x == 0 && y <= 0 {
                continue;
            }
            let r = -(a * x * x + b * y * y);
            if r % c != 0 {
                continue;
            }
            if let Some(z) = exact_sqrt(r / c) {
                if z <= zb {
                    return Some((x as i64, y as i64, z as i64));
                }
            }
        }
    }
    None
}

fn is_canonical(x: &[i64]) -> bool {
    let g = x.iter().fold(0u64, |g, &c| gcd(g, c.unsigned_abs()));
    g == 1 && x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// Compares [`enumerate`] with the canonical points of the box
/// `[-T, T]^{n+1}`, as bitsets over the box.
pub fn compare_enumeration(n: usize, t: u64) -> Result<usize, String> {
    let side = 2 * t + 1;
    let size = side.pow(n as u32 + 1) as usize;
    let index = |x: &[i64]| {
        x.iter()
            .fold(0u64, |acc, &c| acc * side + (c + t as i64) as u64) as usize
    };
    let mut brute = vec![false; size];
    let mut x = vec![-(t as i64); n + 1];
    let mut count = 0;
    loop {
        if is_canonical(&x) {
            brute[index(&x)] = true;
            count += 1;
        }
        let mut i = n + 1;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if x[i] < t as i64 {
                x[i] += 1;
                break;
            }
            x[i] = -(t as i64);
        }
        if x.iter().all(|&c| c == -(t as i64)) {
            break;
        }
    }
    let mut seen = vec![false; size];
    let mut err = None;
    enumerate(n, t, |p| {
        if err.is_some() {
            return;
        }
        if p.iter().any(|c| c.unsigned_abs() > t) {
            err = Some(format!("{p:?} is outside the box"));
            return;
        }
        let i = index(p);
        if !brute[i] {
            err = Some(format!("{p:?} is not canonical"));
        } else if seen[i] {
            err = Some(format!("{p:?} visited twice"));
        }
        seen[i] = true;
    });
    if let Some(e) = err {
        return Err(e);
    }
    if seen != brute {
        let i = (0..size).find(|&i| seen[i] != brute[i]).unwrap();
        return Err(format!("box index {i} missed"));
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        for r in run_all(VerifyOptions::default()) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn fault_is_caught() {
        let r = hilbert_suite(VerifyOptions {
            seed: 1,
            inject_fault: true,
        });
        assert!(r.failure.unwrap().contains("(-1, -1)_2"));
    }

    #[test]
    fn oracle_examples() {
        assert!(!locally_soluble(-1, -1, 2));
        assert!(!locally_soluble(-1, -1, 0));
        assert!(locally_soluble(-1, -1, 3));
        assert!(!locally_soluble(3, 3, 3));
        assert!(locally_soluble(2, 7, 7));
        assert_eq!(legendre_reduce([12, 18, 5]), [3, 2, 5]);
        assert_eq!(legendre_reduce([6, 10, 1]), [3, 5, 2]);
        assert!(holzer_search(1, 1, -2).is_some());
        assert!(holzer_search(1, 1, -3).is_none());
        assert_eq!(compare_enumeration(1, 1), Ok(4));
        assert_eq!(compare_enumeration(2, 1), Ok(13));
    }
}
