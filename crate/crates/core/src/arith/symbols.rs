//! Kronecker and Hilbert symbols over `Q`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use super::factor::{factor, factor_u128, is_prime_u128};
use super::{ArithError, Rational};

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(PrimePlace),
}

/// A prime known to pass the primality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePlace(u128);

impl PrimePlace {
    pub fn get(self) -> u128 {
        self.0
    }
}

impl Place {
    pub fn prime(p: u128) -> Result<Place, ArithError> {
        if is_prime_u128(p) {
            Ok(Place::Prime(PrimePlace(p)))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    /// Caller guarantees primality.
    pub(crate) fn prime_unchecked(p: u128) -> Place {
        debug_assert!(is_prime_u128(p));
        Place::Prime(PrimePlace(p))
    }

    pub fn as_prime(&self) -> Option<u128> {
        match self {
            Place::Infinity => None,
            Place::Prime(p) => Some(p.0),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{}", p.0),
        }
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub(crate) fn jacobi_u128(a: u128, n: u128) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Jacobi symbol on 64-bit operands; the hot-path variant.
#[inline]
pub(crate) fn jacobi_u64(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)` on the full integer domain.
pub fn kronecker(a: i128, n: i128) -> i8 {
    if n == 0 {
        return if a.unsigned_abs() == 1 { 1 } else { 0 };
    }
    let mut t = 1i8;
    let mut m = n.unsigned_abs();
    if n < 0 && a < 0 {
        t = -t;
    }
    let z = m.trailing_zeros();
    if z > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let a8 = a.rem_euclid(8);
        if z % 2 == 1 && (a8 == 3 || a8 == 5) {
            t = -t;
        }
        m >>= z;
    }
    if m == 1 {
        return t;
    }
    let ar = a.rem_euclid(m as i128) as u128;
    t * jacobi_u128(ar, m)
}

/// Squarefree `s` with `n = s·m^2`, sign preserved.
pub fn squarefree_kernel(n: i128) -> Result<i128, ArithError> {
    let f = factor(n)?;
    let mut s: i128 = f.sign() as i128;
    for &(p, e) in f.factors() {
        if e % 2 == 1 {
            s *= p as i128;
        }
    }
    Ok(s)
}

/// Valuation at `p` together with the unit part.
fn split_valuation(mut n: u128, p: u128) -> (i64, u128) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Local data of a nonzero rational at a finite prime: the valuation and
/// the unit part `(u_num, u_den)` (both prime to `p`), with the sign kept
/// on the numerator.
struct Local {
    val: i64,
    negative: bool,
    unum: u128,
    uden: u128,
}

fn local(q: &Rational, p: u128) -> Local {
    let (vn, un) = split_valuation(q.numer().unsigned_abs(), p);
    let (vd, ud) = split_valuation(q.denom().unsigned_abs(), p);
    Local {
        val: vn - vd,
        negative: q.is_negative(),
        unum: un,
        uden: ud,
    }
}

impl Local {
    /// Legendre symbol of the unit part at an odd prime.
    fn legendre(&self, p: u128) -> i8 {
        let mut s = jacobi_u128(self.unum % p, p) * jacobi_u128(self.uden % p, p);
        if self.negative && p % 4 == 3 {
            s = -s;
        }
        s
    }

    /// Unit part modulo 8 (odd residue).
    fn mod8(&self) -> u32 {
        // an odd denominator is its own inverse mod 8
        let m = (self.unum % 8) * (self.uden % 8) % 8;
        let m = if self.negative { (8 - m) % 8 } else { m };
        m as u32
    }
}

fn eps(u: u32) -> u32 {
    ((u - 1) / 2) % 2
}

fn omega(u: u32) -> u32 {
    ((u * u - 1) / 8) % 2
}

/// Hilbert symbol `(a, b)_v`: `+1` iff `a x^2 + b y^2 = z^2` has a
/// nontrivial solution over the completion `Q_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i8, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::Zero("hilbert_symbol"));
    }
    Ok(match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let p = p.get();
            let la = local(a, p);
            let lb = local(b, p);
            if p == 2 {
                let (u, w) = (la.mod8(), lb.mod8());
                let alpha = la.val.rem_euclid(2) as u32;
                let beta = lb.val.rem_euclid(2) as u32;
                let e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let alpha = la.val.rem_euclid(2);
                let beta = lb.val.rem_euclid(2);
                let mut s: i8 = 1;
                if alpha * beta == 1 && p % 4 == 3 {
                    s = -s;
                }
                if beta == 1 {
                    s *= la.legendre(p);
                }
                if alpha == 1 {
                    s *= lb.legendre(p);
                }
                s
            }
        }
    })
}

/// `{inf, 2}` together with every prime dividing a numerator or
/// denominator of `a` or `b`.
pub fn ramified_places(a: &Rational, b: &Rational) -> Result<BTreeSet<Place>, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::Zero("ramified_places"));
    }
    let mut out = BTreeSet::new();
    out.insert(Place::Infinity);
    out.insert(Place::prime_unchecked(2));
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        for (p, _) in factor_u128(n.unsigned_abs()) {
            out.insert(Place::prime_unchecked(p));
        }
    }
    Ok(out)
}

/// Product of `(a, b)_v` over [`ramified_places`]; always `+1`.
pub fn hilbert_product(a: &Rational, b: &Rational) -> Result<i8, ArithError> {
    let mut s = 1;
    for v in ramified_places(a, b)? {
        s *= hilbert_symbol(a, b, v)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn p(n: u128) -> Place {
        Place::prime(n).unwrap()
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(-1, 5), 1);
        for a in -20..20 {
            assert_eq!(kronecker(a, 1), 1);
        }
        assert_eq!(kronecker(-1, 3), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(3, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(6, 4), 0);
        assert_eq!(kronecker(-3, -1), -1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for &q in &[3u64, 5, 7, 11, 13, 101, 997] {
            for a in -50i128..50 {
                let ar = a.rem_euclid(q as i128) as u64;
                let e = if ar == 0 {
                    0
                } else {
                    let mut x = 1u64;
                    for _ in 0..(q - 1) / 2 {
                        x = x * ar % q;
                    }
                    if x == 1 {
                        1
                    } else {
                        -1
                    }
                };
                assert_eq!(kronecker(a, q as i128), e, "({a}/{q})");
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), p(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), p(3)).unwrap(), 1);
        for b in [-7, -1, 2, 3, 10] {
            for v in [Place::Infinity, p(2), p(3), p(5), p(7)] {
                assert_eq!(hilbert_symbol(&r(1), &r(b), v).unwrap(), 1);
            }
        }
        assert_eq!(hilbert_symbol(&r(3), &r(-1), p(3)).unwrap(), -1);
        assert!(hilbert_symbol(&r(0), &r(1), Place::Infinity).is_err());
    }

    #[test]
    fn hilbert_of_fractions() {
        // (1/6, 10) equals (6, 10) since 1/6 = 6/36
        for v in [Place::Infinity, p(2), p(3), p(5), p(7)] {
            assert_eq!(
                hilbert_symbol(&Rational::new(1, 6), &r(10), v).unwrap(),
                hilbert_symbol(&r(6), &r(10), v).unwrap()
            );
        }
    }

    #[test]
    fn ramified_place_sets() {
        let set: Vec<Place> = ramified_places(&r(-1), &r(-1)).unwrap().into_iter().collect();
        assert_eq!(set, vec![Place::Infinity, p(2)]);
        let set: Vec<Place> = ramified_places(&r(3), &r(5)).unwrap().into_iter().collect();
        assert_eq!(set, vec![Place::Infinity, p(2), p(3), p(5)]);
        let set: Vec<Place> = ramified_places(&Rational::new(1, 6), &r(10))
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(set, vec![Place::Infinity, p(2), p(3), p(5)]);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_kernel(18).unwrap(), 2);
        assert_eq!(squarefree_kernel(-4).unwrap(), -1);
        assert_eq!(squarefree_kernel(360).unwrap(), 10);
        assert!(squarefree_kernel(0).is_err());
    }

    #[test]
    fn place_requires_prime() {
        assert!(Place::prime(9).is_err());
        assert!(Place::prime(1).is_err());
        assert_eq!(Place::prime(13).unwrap().as_prime(), Some(13));
    }
}
