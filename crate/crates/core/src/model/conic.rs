//! Conic bundles `f0(t) x^2 + f1(t) y^2 + f2(t) z^2 = 0` over `P^1`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{hilbert_symbol, jacobi_u64, ramified_places, sieve, Rational};
use crate::poly::{rat_add, rat_mul, rational_is_square, Poly};

use super::ModelError;

/// Number of primes with a root of the factor used by the modular square
/// test for residue fields of degree >= 3.
pub const MODULAR_PRIMES: usize = 40;

/// A validated conic bundle: nonzero coefficients, equal degree parity and
/// squarefree `f0 f1 f2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBundle {
    f: [Poly; 3],
}

impl ConicBundle {
    pub fn new(f0: Poly, f1: Poly, f2: Poly) -> Result<Self, ModelError> {
        let f = [f0, f1, f2];
        let mut degs = [0usize; 3];
        for (i, p) in f.iter().enumerate() {
            degs[i] = p.degree().ok_or(ModelError::ZeroCoefficient(i))?;
        }
        if degs.iter().any(|d| d % 2 != degs[0] % 2) {
            return Err(ModelError::ParityMismatch(degs));
        }
        let prod = f[0].checked_mul(&f[1])?.checked_mul(&f[2])?;
        if !prod.is_squarefree()? {
            return Err(ModelError::NotSquarefree);
        }
        Ok(ConicBundle { f })
    }

    pub fn f(&self) -> &[Poly; 3] {
        &self.f
    }

    pub fn degrees(&self) -> [usize; 3] {
        [
            self.f[0].degree().unwrap(),
            self.f[1].degree().unwrap(),
            self.f[2].degree().unwrap(),
        ]
    }
}

/// Outcome of [`classify_conic_fiber`]. `exact` is false only for a split
/// verdict reached by the modular test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberClass {
    pub split: bool,
    pub exact: bool,
}

impl fmt::Display for FiberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.split { "split" } else { "nonsplit" };
        if self.exact {
            write!(f, "{s}")
        } else {
            write!(f, "{s} (modular test)")
        }
    }
}

/// Whether the fibre over the closed point `g = 0` (with `g | f_i`) is
/// split, i.e. whether `-f_j f_k` is a square in `Q[t]/(g)`.
pub fn classify_conic_fiber(
    cb: &ConicBundle,
    g: &Poly,
    i: usize,
) -> Result<FiberClass, ModelError> {
    if i > 2 || g.degree().unwrap_or(0) == 0 || cb.f[i].div_exact(g).is_none() {
        return Err(ModelError::NotAFactor(g.to_string(), i));
    }
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let w = cb.f[j].checked_mul(&cb.f[k])?.scale(-1)?;
    match g.degree().unwrap() {
        1 => {
            let alpha = Rational::new(-g.coeff(0), g.coeff(1));
            let val = w.eval_rational(alpha)?;
            Ok(FiberClass {
                split: rational_is_square(&val),
                exact: true,
            })
        }
        2 => Ok(FiberClass {
            split: is_square_in_quadratic(&w, g)?,
            exact: true,
        }),
        _ => {
            let nonsplit = modular_nonsquare_witness(&w, g);
            Ok(FiberClass {
                split: !nonsplit,
                exact: nonsplit,
            })
        }
    }
}

/// Square test in `K = Q[t]/(g)`, `g = a t^2 + b t + c` irreducible.
///
/// For `x = u + v alpha` with `v != 0`, `x = y^2` forces `N(x) = s^2` with
/// `s = N(y)` and `Tr(y)^2 = Tr(x) + 2s`; conversely such `s`, `tau` give
/// `y = (x + s)/tau`.
fn is_square_in_quadratic(w: &Poly, g: &Poly) -> Result<bool, ModelError> {
    let rem = w.rem_rational(g)?;
    let u = rem.first().copied().unwrap_or_else(Rational::zero);
    let v = rem.get(1).copied().unwrap_or_else(Rational::zero);
    let (a, b, c) = (g.coeff(2), g.coeff(1), g.coeff(0));
    if v.is_zero() {
        let disc = Rational::from_integer(b * b - 4 * a * c);
        return Ok(rational_is_square(&u) || rational_is_square(&rat_mul(u, disc)?));
    }
    let tr_alpha = Rational::new(-b, a);
    let n_alpha = Rational::new(c, a);
    let tr = rat_add(rat_add(u, u)?, rat_mul(v, tr_alpha)?)?;
    let norm = rat_add(
        rat_add(rat_mul(u, u)?, rat_mul(rat_mul(u, v)?, tr_alpha)?)?,
        rat_mul(rat_mul(v, v)?, n_alpha)?,
    )?;
    let s = match crate::poly::rational_sqrt(&norm) {
        Some(s) => s,
        None => return Ok(false),
    };
    for eps in [s, -s] {
        let t2 = rat_add(tr, rat_add(eps, eps)?)?;
        if !t2.is_zero() && rational_is_square(&t2) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Looks for a prime `p` and a simple root `r` of `g` mod `p` with
/// `w(r)` a nonzero non-residue. Such a witness proves `w` is not a square
/// in `Q[t]/(g)`; its absence over [`MODULAR_PRIMES`] primes is evidence of
/// a square.
fn modular_nonsquare_witness(w: &Poly, g: &Poly) -> bool {
    let gd = g.derivative();
    let table = sieve::prime_table(200_000);
    let mut used = 0usize;
    for &p in table.iter().skip(1) {
        let p = p as u64;
        if g.leading().rem_euclid(p as i128) == 0 {
            continue;
        }
        let mut had_root = false;
        for r in 0..p {
            if eval_mod(g, r, p) != 0 || eval_mod(&gd, r, p) == 0 {
                continue;
            }
            let val = eval_mod(w, r, p);
            if val == 0 {
                continue;
            }
            had_root = true;
            if jacobi_u64(val, p) == -1 {
                return true;
            }
        }
        if had_root {
            used += 1;
            if used >= MODULAR_PRIMES {
                break;
            }
        }
    }
    false
}

fn eval_mod(f: &Poly, x: u64, p: u64) -> u64 {
    let p128 = p as u128;
    f.coeffs().iter().rev().fold(0u128, |acc, &c| {
        (acc * x as u128 + c.rem_euclid(p as i128) as u128) % p128
    }) as u64
}

/// Local solubility of `a x^2 + b y^2 + c z^2 = 0` at every place, which
/// by Hasse-Minkowski is solubility over `Q`.
pub fn conic_locally_soluble(a: &Rational, b: &Rational, c: &Rational) -> Result<bool, ModelError> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(ModelError::Boundary("conic coefficient vanishes".to_string()));
    }
    if a.is_positive() == b.is_positive() && b.is_positive() == c.is_positive() {
        return Ok(false);
    }
    // a x^2 + b y^2 = -c z^2  <=>  (-a/c) x^2 + (-b/c) y^2 = z^2
    let x = -rat_mul(*a, *c)?;
    let y = -rat_mul(*b, *c)?;
    for v in ramified_places(&x, &y)? {
        if hilbert_symbol(&x, &y, v)? == -1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn classify(f: [&[i64]; 3], g: &[i64], i: usize) -> FiberClass {
        let cb = ConicBundle::new(p(f[0]), p(f[1]), p(f[2])).unwrap();
        classify_conic_fiber(&cb, &p(g), i).unwrap()
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            ConicBundle::new(p(&[0, 1]), p(&[1]), p(&[1])).unwrap_err(),
            ModelError::ParityMismatch([1, 0, 0])
        );
        assert_eq!(
            ConicBundle::new(p(&[0, 1]), p(&[0, 2]), p(&[1, 1])).unwrap_err(),
            ModelError::NotSquarefree
        );
        assert_eq!(
            ConicBundle::new(p(&[1]), p(&[]), p(&[1])).unwrap_err(),
            ModelError::ZeroCoefficient(1)
        );
    }

    #[test]
    fn linear_fibres() {
        // residue at t = 0 is -(1)(-3) = 3
        let c = classify([&[0, 1], &[1, 2], &[-3, 1]], &[0, 1], 0);
        assert!(!c.split && c.exact);
        let c = classify([&[0, 1], &[1, 2], &[-4, 1]], &[0, 1], 0);
        assert!(c.split && c.exact);
    }

    #[test]
    fn quadratic_fibres() {
        // 3 is not a square in Q(sqrt 2), 2 is
        assert!(!classify([&[-2, 0, 1], &[1], &[-3]], &[-2, 0, 1], 0).split);
        assert!(classify([&[-2, 0, 1], &[1], &[-2]], &[-2, 0, 1], 0).split);
        // 2t^2 + 2t - 1 = 3 + 2t = (1 + t)^2 mod t^2 - 2
        assert!(classify([&[-2, 0, 1], &[-1], &[-1, 2, 2]], &[-2, 0, 1], 0).split);
        // t^2 + t - 2 = t mod t^2 - 2, of norm -2
        assert!(!classify([&[-2, 0, 1], &[-1], &[-2, 1, 1]], &[-2, 0, 1], 0).split);
    }

    #[test]
    fn cubic_fibres() {
        // -1 is not a square in the real field Q(2^{1/3}); the witness is exact
        let c = classify([&[0, -2, 0, 0, 1], &[1], &[1]], &[-2, 0, 0, 1], 0);
        assert!(!c.split && c.exact);
        // 4 is a square
        let c = classify([&[0, -2, 0, 0, 1], &[1], &[-4]], &[-2, 0, 0, 1], 0);
        assert!(c.split && !c.exact);
        // t^4 + t^2 - 2t = t^2 mod t^3 - 2
        let c = classify([&[-2, -2, 0, 1, 1], &[1], &[0, 2, -1, 0, -1]], &[-2, 0, 0, 1], 0);
        assert!(c.split);
    }

    #[test]
    fn rejects_non_factor() {
        let cb = ConicBundle::new(p(&[0, 1]), p(&[1, 2]), p(&[-3, 1])).unwrap();
        assert!(classify_conic_fiber(&cb, &p(&[-2, 0, 1]), 0).is_err());
        assert!(classify_conic_fiber(&cb, &p(&[0, 1]), 1).is_err());
    }

    #[test]
    fn conic_solubility() {
        assert!(conic_locally_soluble(&r(1), &r(1), &r(-1)).unwrap());
        assert!(!conic_locally_soluble(&r(1), &r(1), &r(1)).unwrap());
        assert!(!conic_locally_soluble(&r(1), &r(1), &r(-3)).unwrap());
        assert!(conic_locally_soluble(&r(1), &r(1), &r(-5)).unwrap());
        assert!(conic_locally_soluble(&r(1), &r(1), &r(-2)).unwrap());
        assert!(conic_locally_soluble(&r(1), &r(1), &r(0)).is_err());
    }
}
