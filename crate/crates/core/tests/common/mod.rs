//! Brute-force oracles for the integration tests. Nothing here calls the
//! library routines being checked.
#![allow(dead_code)]

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factors with multiplicity by plain trial division.
pub fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn squarefree(n: i64) -> i64 {
    let mut s = n.signum();
    for (p, e) in trial_division(n.unsigned_abs()) {
        if e % 2 == 1 {
            s *= p as i64;
        }
    }
    s
}

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn primes(n: usize) -> Vec<u64> {
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn vp(n: i64, p: u64) -> u32 {
    let mut n = n.unsigned_abs();
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Whether `A x^2 + B y^2 + C z^2 = 0` has a solution modulo `m = p^k`
/// with some coordinate prime to `p`.
///
/// Any such solution can be scaled so that its first unit coordinate is 1,
/// which leaves three one-parameter searches against a table of `C z^2`.
fn primitive_solution(a: i64, b: i64, c: i64, p: u64, k: u32) -> bool {
    let m = p.pow(k) as i128;
    let md = |x: i128| x.rem_euclid(m) as usize;
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let mut c_sq = vec![false; m as usize];
    let mut b_sq_nonunit = vec![false; m as usize];
    for z in 0..m {
        c_sq[md(c * z * z)] = true;
        if z % p as i128 == 0 {
            b_sq_nonunit[md(b * z * z)] = true;
        }
    }
    (0..m).any(|y| c_sq[md(-(a + b * y * y))])
        || (0..m).step_by(p as usize).any(|x| c_sq[md(-(a * x * x + b))])
        || (0..m).step_by(p as usize).any(|x| b_sq_nonunit[md(-(a * x * x + c))])
}

/// Local solubility of `a x^2 + b y^2 = z^2` over `Q_p` (`p = 0`: the
/// reals) by exhaustive search modulo `p^{2 + 2 v_p(4ABC)}` for the form
/// reduced to squarefree coefficients.
pub fn locally_soluble(a: i64, b: i64, p: u64) -> bool {
    if p == 0 {
        return a > 0 || b > 0;
    }
    let (mut a, mut b, mut c) = (squarefree(a), squarefree(b), -1);
    if vp(a, p) == 1 && vp(b, p) == 1 {
        // then p | z; dividing by p gives (a/p, b/p, -p)
        a /= p as i64;
        b /= p as i64;
        c = -(p as i64);
    }
    let k = 2 + 2 * vp(4 * a * b * c, p);
    primitive_solution(a, b, c, p, k)
}

/// Squarefree, pairwise coprime coefficients with the same solubility.
pub fn reduce_conic(mut f: [i64; 3]) -> [i64; 3] {
    'outer: loop {
        for x in &mut f {
            *x = squarefree(*x);
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let g = gcd(f[i].unsigned_abs(), f[j].unsigned_abs());
                if g > 1 {
                    let p = trial_division(g)[0].0 as i64;
                    let k = 3 - i - j;
                    f[i] /= p;
                    f[j] /= p;
                    f[k] *= p;
                    continue 'outer;
                }
            }
        }
        return f;
    }
}

/// Search for a nonzero point on `a x^2 + b y^2 + c z^2 = 0` inside
/// Holzer's box for the reduced form.
pub fn holzer_point(a: i64, b: i64, c: i64) -> Option<[i64; 3]> {
    let [a, b, c] = reduce_conic([a, b, c]);
    let isqrt = |n: i64| {
        let mut r = (n as f64).sqrt() as i64;
        while r * r > n {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= n {
            r += 1;
        }
        r
    };
    let xmax = isqrt((b * c).abs());
    let ymax = isqrt((a * c).abs());
    let zmax = isqrt((a * b).abs());
    for x in 0..=xmax {
        for y in -ymax..=ymax {
            if x == 0 && y == 0 {
                continue;
            }
            let num = -(a * x * x + b * y * y);
            if num % c != 0 || num / c < 0 {
                continue;
            }
            let z = isqrt(num / c);
            if z * z == num / c && z <= zmax {
                return Some([x, y, z]);
            }
        }
    }
    None
}

/// `m` is a norm from `Q(sqrt d)` iff `x^2 - d y^2 - m z^2 = 0` has a point.
pub fn is_norm_brute(m: i64, d: i64) -> bool {
    holzer_point(1, -d, -m).is_some()
}

/// Membership of `1..=x` in the set of sums of two squares, by a double loop.
pub fn two_squares_brute(x: usize) -> Vec<bool> {
    let mut is = vec![false; x + 1];
    let mut a = 0usize;
    while a * a <= x {
        let mut b = a;
        while a * a + b * b <= x {
            is[a * a + b * b] = true;
            b += 1;
        }
        a += 1;
    }
    is[0] = false;
    is
}

/// Canonical points of the box `[-t, t]^{n+1}` as a bitmap over box indices.
pub fn canonical_box(n: usize, t: i64) -> Vec<bool> {
    let side = (2 * t + 1) as usize;
    let size = side.pow(n as u32 + 1);
    let mut out = vec![false; size];
    let mut x = vec![0i64; n + 1];
    for idx in 0..size {
        let mut r = idx;
        for i in (0..=n).rev() {
            x[i] = (r % side) as i64 - t;
            r /= side;
        }
        let g = x.iter().fold(0, |g, &c| gcd(g, c.unsigned_abs()));
        let first = x.iter().copied().find(|&c| c != 0);
        out[idx] = g == 1 && first.is_some_and(|c| c > 0);
    }
    out
}

pub fn box_index(x: &[i64], t: i64) -> usize {
    let side = (2 * t + 1) as usize;
    x.iter().fold(0, |acc, &c| acc * side + (c + t) as usize)
}

/// `prod_i (1 + t_1 w_i + ... + t_n w_i^n)` over the complex roots `w_i`
/// of `f`, found by Durand-Kerner.
pub fn norm_by_roots(f: &[f64], t: &[f64]) -> f64 {
    let n = f.len() - 1;
    let lead = f[n];
    let monic: Vec<f64> = f.iter().map(|c| c / lead).collect();
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + c, acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let a = 0.4 + 0.9 * k as f64;
            (0.9f64.powi(k as i32) * a.cos(), 0.9f64.powi(k as i32) * a.sin())
        })
        .collect();
    for _ in 0..500 {
        for i in 0..n {
            let num = eval(roots[i]);
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let q = den.0 * den.0 + den.1 * den.1;
            let step = ((num.0 * den.0 + num.1 * den.1) / q, (num.1 * den.0 - num.0 * den.1) / q);
            roots[i] = (roots[i].0 - step.0, roots[i].1 - step.1);
        }
    }
    let mut prod = (1.0, 0.0);
    for w in roots {
        // 1 + t_1 w + ... + t_n w^n
        let mut v = (0.0, 0.0);
        for &c in t.iter().rev() {
            v = (v.0 * w.0 - v.1 * w.1 + c, v.0 * w.1 + v.1 * w.0);
        }
        v = (v.0 * w.0 - v.1 * w.1 + 1.0, v.0 * w.1 + v.1 * w.0);
        prod = (prod.0 * v.0 - prod.1 * v.1, prod.0 * v.1 + prod.1 * v.0);
    }
    prod.0
}
