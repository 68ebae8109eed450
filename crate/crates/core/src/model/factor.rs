//! Factorization of integer polynomials of degree at most 6 over `Q`.
//!
//! Rational roots are split off first. What remains has no linear factor,
//! so it is irreducible in degree <= 3, and otherwise either has a
//! quadratic factor or (degree 6 only) a product of two cubics. Candidate
//! factors are pinned down by divisibility at `t = 0, 1, -1` and checked by
//! exact division.

use crate::arith::factor;
use crate::poly::Poly;

use super::ModelError;

pub const MAX_FACTOR_DEGREE: usize = 6;

/// Irreducible factors over `Q` (primitive, positive leading coefficient)
/// with multiplicities, sorted by degree then coefficients. The product
/// reconstructs `f` up to a rational constant; constants give an empty list.
pub fn factor_poly(f: &Poly) -> Result<Vec<(Poly, u32)>, ModelError> {
    let deg = f.degree().ok_or(ModelError::ZeroPolynomial)?;
    if deg > MAX_FACTOR_DEGREE {
        return Err(ModelError::DegreeTooLarge(deg));
    }
    let mut rest = normalize_sign(f.primitive_part());
    let mut out: Vec<(Poly, u32)> = Vec::new();

    while rest.coeff(0) == 0 && rest.degree().unwrap_or(0) > 0 {
        push_factor(&mut out, Poly::x());
        rest = rest.div_exact(&Poly::x()).expect("t divides");
    }
    for (p, q) in rational_root_candidates(&rest)? {
        let lin = Poly::new(vec![-p, q]);
        while rest.degree().unwrap_or(0) > 0 {
            match rest.div_exact(&lin) {
                Some(r) => {
                    push_factor(&mut out, lin.clone());
                    rest = r;
                }
                None => break,
            }
        }
    }
    split_rootless(rest, &mut out)?;
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

fn normalize_sign(p: Poly) -> Poly {
    if p.leading() < 0 {
        p.scale(-1).expect("negation fits")
    } else {
        p
    }
}

fn push_factor(out: &mut Vec<(Poly, u32)>, g: Poly) {
    if let Some(e) = out.iter_mut().find(|e| e.0 == g) {
        e.1 += 1;
    } else {
        out.push((g, 1));
    }
}

/// Positive divisors of `n != 0`.
fn divisors(n: i128) -> Result<Vec<i128>, ModelError> {
    let f = factor(n)?;
    let mut ds = vec![1i128];
    for &(p, e) in f.factors() {
        let p = p as i128;
        let len = ds.len();
        let mut pk = 1i128;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    Ok(ds)
}

/// Reduced fractions `p/q`, `q > 0`, allowed by the rational root theorem,
/// for `f` with `f(0) != 0`.
fn rational_root_candidates(f: &Poly) -> Result<Vec<(i128, i128)>, ModelError> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for q in divisors(f.leading())? {
        for p in divisors(f.coeff(0))? {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            out.push((p, q));
            out.push((-p, q));
        }
    }
    Ok(out)
}

fn split_rootless(mut g: Poly, out: &mut Vec<(Poly, u32)>) -> Result<(), ModelError> {
    loop {
        let d = g.degree().unwrap_or(0);
        if d == 0 {
            return Ok(());
        }
        if d <= 3 {
            push_factor(out, g);
            return Ok(());
        }
        let h = match find_factor(&g, 2)? {
            Some(h) => h,
            None if d == 6 => match find_factor(&g, 3)? {
                Some(h) => h,
                None => {
                    push_factor(out, g);
                    return Ok(());
                }
            },
            None => {
                push_factor(out, g);
                return Ok(());
            }
        };
        while let Some(q) = g.div_exact(&h) {
            push_factor(out, h.clone());
            g = q;
            if g.degree().unwrap_or(0) < 2 {
                break;
            }
        }
        g = normalize_sign(g.primitive_part());
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Searches for a factor of degree 2 or 3 of a root-free primitive `g`.
fn find_factor(g: &Poly, k: u32) -> Result<Option<Poly>, ModelError> {
    let norm2 = g
        .coeffs()
        .iter()
        .map(|&c| (c as f64) * (c as f64))
        .sum::<f64>()
        .sqrt();
    let bound = |j: u32| binomial(k, j) * norm2 + 1.0;
    let g1 = g.eval(1)?;
    let gm1 = g.eval(-1)?;
    let g2 = g.eval(2)?;
    let lead_divs = divisors(g.leading())?;
    let const_divs = divisors(g.coeff(0))?;
    let d1s = signed(divisors(g1)?);
    let dm1s = signed(divisors(gm1)?);
    for &a in &lead_divs {
        for &c0 in &const_divs {
            for c in [c0, -c0] {
                if k == 2 {
                    // h(1) = a + b + c
                    for &d1 in &d1s {
                        let b = d1 - a - c;
                        if (b as f64).abs() > bound(1) {
                            continue;
                        }
                        let hm1 = a - b + c;
                        if hm1 == 0 || gm1 % hm1 != 0 {
                            continue;
                        }
                        let h = Poly::new(vec![c, b, a]);
                        if accept(g, &h, g2)? {
                            return Ok(Some(h));
                        }
                    }
                } else {
                    // h = a t^3 + b t^2 + u t + c with h(1) = d1, h(-1) = dm1
                    for &d1 in &d1s {
                        for &dm1 in &dm1s {
                            let s = d1 + dm1 - 2 * c;
                            let r = d1 - dm1 - 2 * a;
                            if s % 2 != 0 || r % 2 != 0 {
                                continue;
                            }
                            let (b, u) = (s / 2, r / 2);
                            if (b as f64).abs() > bound(1) || (u as f64).abs() > bound(2) {
                                continue;
                            }
                            let h = Poly::new(vec![c, u, b, a]);
                            if accept(g, &h, g2)? {
                                return Ok(Some(h));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn signed(ds: Vec<i128>) -> Vec<i128> {
    ds.iter().flat_map(|&d| [d, -d]).collect()
}

fn accept(g: &Poly, h: &Poly, g2: i128) -> Result<bool, ModelError> {
    let h2 = h.eval(2)?;
    if h2 == 0 || g2 % h2 != 0 {
        return Ok(false);
    }
    Ok(g.div_exact(h).is_some())
}
