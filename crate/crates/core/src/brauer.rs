//! Order-2 Brauer classes given by quaternion symbols `(a, b)` with
//! rational-function entries, their local and global evaluation, and the
//! quadratic norm test.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::arith::{
    hilbert_symbol, jacobi_u64, ramified_places, squarefree_kernel, ArithError,
    NormFormSpec, Place, Rational,
};
use crate::poly::{rational_is_square, MultiPoly, PolyError, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("symbol class is undefined at the point (an entry or a denominator vanishes)")]
    Undefined,
    #[error("symbol entries must not be identically zero")]
    ZeroEntry,
    #[error("point has {got} coordinates, class expects {expected}")]
    Arity { expected: usize, got: usize },
    #[error("norm test needs m != 0")]
    ZeroNorm,
    #[error("discriminant {0} must be squarefree and different from 0 and 1")]
    BadDiscriminant(i128),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl From<PolyError> for BrauerError {
    fn from(e: PolyError) -> Self {
        BrauerError::Arith(e.into())
    }
}

/// An element of `Q/Z` of order dividing 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalInvariant {
    Zero,
    Half,
}

impl LocalInvariant {
    pub fn value(self) -> Rational {
        match self {
            LocalInvariant::Zero => Rational::zero(),
            LocalInvariant::Half => Rational::new(1, 2),
        }
    }

    /// `+1` for 0 and `-1` for 1/2.
    pub fn sign(self) -> i8 {
        match self {
            LocalInvariant::Zero => 1,
            LocalInvariant::Half => -1,
        }
    }

    fn from_sign(s: i8) -> Self {
        if s == 1 {
            LocalInvariant::Zero
        } else {
            LocalInvariant::Half
        }
    }
}

impl fmt::Display for LocalInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalInvariant::Zero => write!(f, "0"),
            LocalInvariant::Half => write!(f, "1/2"),
        }
    }
}

/// The quaternion class `(a, b)` over `Q(t_1, ..., t_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolClass {
    a: RationalFunction,
    b: RationalFunction,
}

impl SymbolClass {
    pub fn new(a: RationalFunction, b: RationalFunction) -> Result<Self, BrauerError> {
        if a.is_zero() || b.is_zero() {
            return Err(BrauerError::ZeroEntry);
        }
        if a.nvars() != b.nvars() {
            return Err(BrauerError::Arity {
                expected: a.nvars(),
                got: b.nvars(),
            });
        }
        Ok(SymbolClass { a, b })
    }

    /// `(t, c)` on the one-dimensional torus.
    pub fn gm(c: i128) -> Result<Self, BrauerError> {
        SymbolClass::new(
            RationalFunction::polynomial(MultiPoly::var(1, 0)),
            RationalFunction::constant(1, Rational::from_integer(c)),
        )
    }

    pub fn nvars(&self) -> usize {
        self.a.nvars()
    }

    pub fn entries(&self) -> (&RationalFunction, &RationalFunction) {
        (&self.a, &self.b)
    }

    /// `(a(t), b(t))`, both nonzero.
    pub fn specialize(&self, t: &[Rational]) -> Result<(Rational, Rational), BrauerError> {
        if t.len() != self.nvars() {
            return Err(BrauerError::Arity {
                expected: self.nvars(),
                got: t.len(),
            });
        }
        let a = self.a.eval(t)?.ok_or(BrauerError::Undefined)?;
        let b = self.b.eval(t)?.ok_or(BrauerError::Undefined)?;
        if a.is_zero() || b.is_zero() {
            return Err(BrauerError::Undefined);
        }
        Ok((a, b))
    }
}

/// Local invariant of the class at `t` and place `v`.
pub fn evaluate_local(
    c: &SymbolClass,
    t: &[Rational],
    v: Place,
) -> Result<LocalInvariant, BrauerError> {
    let (a, b) = c.specialize(t)?;
    Ok(LocalInvariant::from_sign(hilbert_symbol(&a, &b, v)?))
}

/// Whether the class specializes to zero in `Br Q`. Local invariants away
/// from [`ramified_places`] vanish, so only those places are checked.
pub fn evaluate_global_is_zero(c: &SymbolClass, t: &[Rational]) -> Result<bool, BrauerError> {
    let (a, b) = c.specialize(t)?;
    if rational_is_square(&a) || rational_is_square(&b) {
        return Ok(true);
    }
    for v in ramified_places(&a, &b)? {
        if hilbert_symbol(&a, &b, v)? == -1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite set of order-2 classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BrauerSet {
    elements: Vec<SymbolClass>,
}

impl BrauerSet {
    pub fn new(elements: Vec<SymbolClass>) -> Self {
        BrauerSet { elements }
    }

    pub fn elements(&self) -> &[SymbolClass] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The classes `(d_i, N_{E/Q}(1 + t_1 w + ... + t_n w^n))` attached to
    /// quadratic twists with discriminants `discs`.
    pub fn norm_form_family(spec: &NormFormSpec, discs: &[i128]) -> Result<Self, BrauerError> {
        let norm = spec.norm_polynomial()?.dehomogenize_first();
        let n = norm.nvars();
        let b = RationalFunction::polynomial(norm);
        let mut elements = Vec::with_capacity(discs.len());
        for &d in discs {
            let a = RationalFunction::constant(n, Rational::from_integer(d));
            elements.push(SymbolClass::new(a, b.clone())?);
        }
        Ok(BrauerSet { elements })
    }
}

/// `1` iff every class of `set` vanishes at `t`.
pub fn indicator(set: &BrauerSet, t: &[Rational]) -> Result<u8, BrauerError> {
    for c in &set.elements {
        if !evaluate_global_is_zero(c, t)? {
            return Ok(0);
        }
    }
    Ok(1)
}

fn check_disc(d: i128) -> Result<(), BrauerError> {
    if d == 0 || d == 1 || squarefree_kernel(d)? != d {
        return Err(BrauerError::BadDiscriminant(d));
    }
    Ok(())
}

/// Whether `m` is a norm from `Q(sqrt d)`. By the Hasse norm theorem this
/// holds iff `(d, m)_v = +1` at every place.
pub fn is_norm_quadratic(m: &Rational, d: i128) -> Result<bool, BrauerError> {
    if m.is_zero() {
        return Err(BrauerError::ZeroNorm);
    }
    check_disc(d)?;
    if rational_is_square(m) {
        return Ok(true);
    }
    let dq = Rational::from_integer(d);
    for v in ramified_places(&dq, m)? {
        if hilbert_symbol(&dq, m, v)? == -1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `1` iff `m` is a local norm from `Q_v(sqrt d)`, i.e. `(d, m)_v = +1`.
pub fn local_norm_indicator(m: &Rational, d: i128, v: Place) -> Result<u8, BrauerError> {
    if m.is_zero() {
        return Err(BrauerError::ZeroNorm);
    }
    check_disc(d)?;
    Ok(u8::from(hilbert_symbol(&Rational::from_integer(d), m, v)? == 1))
}

/// Integer norm test for the counting loop.
///
/// `d` must be squarefree and not 0 or 1; this is not rechecked.
pub fn is_norm_quadratic_int(m: i128, d: i64) -> bool {
    debug_assert!(m != 0);
    if d < 0 && m < 0 {
        return false;
    }
    let abs = m.unsigned_abs();
    if m > 0 && crate::arith::is_perfect_square(abs) {
        return true;
    }
    if abs <= u64::MAX as u128 {
        norm_test_u64(m < 0, abs as u64, d)
    } else {
        is_norm_quadratic(&Rational::from_integer(m), d as i128).expect("validated inputs")
    }
}

fn norm_test_u64(negative: bool, abs: u64, d: i64) -> bool {
    // Jacobi prefilter on the odd part prime to d: a value of -1 exposes an
    // inert prime of odd valuation.
    let odd = abs >> abs.trailing_zeros();
    let dabs = d.unsigned_abs();
    if odd > 1 && num_integer::gcd(odd, dabs) == 1 {
        let dm = d.rem_euclid(odd as i64) as u64;
        if jacobi_u64(dm, odd) == -1 {
            return false;
        }
    }
    let ok = crate::arith::for_each_prime_factor_u64(abs, |p, e| {
        if p == 2 || dabs % p == 0 {
            return true;
        }
        if e % 2 == 1 && jacobi_u64(d.rem_euclid(p as i64) as u64, p) != 1 {
            return false;
        }
        true
    });
    if !ok {
        return false;
    }
    // Remaining places: 2 and the primes dividing d.
    let sign: i64 = if negative { -1 } else { 1 };
    if hilbert2_int(d, sign, abs) == -1 {
        return false;
    }
    let mut rest = dabs;
    let mut p = 3u64;
    while rest > 1 {
        if rest % 2 == 0 {
            rest /= 2;
            continue;
        }
        if p * p > rest {
            p = rest;
        }
        if rest % p == 0 {
            rest /= p;
            if hilbert_odd_int(d, sign, abs, p) == -1 {
                return false;
            }
        }
        p += 2;
    }
    true
}

/// `(d, sign * abs)_2` for squarefree `d`.
fn hilbert2_int(d: i64, sign: i64, abs: u64) -> i8 {
    let alpha = u32::from(d % 2 == 0);
    let u = (d >> alpha).rem_euclid(8) as u64;
    let beta = abs.trailing_zeros();
    let v = ((abs >> beta) % 8) as i64 * sign;
    let v = v.rem_euclid(8) as u64;
    let eps = |x: u64| (x % 4 == 3) as u32;
    let omega = |x: u64| (x % 8 == 3 || x % 8 == 5) as u32;
    let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(d, sign * abs)_p` for an odd prime `p` exactly dividing `d`.
fn hilbert_odd_int(d: i64, sign: i64, abs: u64, p: u64) -> i8 {
    let mut beta = 0u32;
    let mut v = abs;
    while v % p == 0 {
        v /= p;
        beta += 1;
    }
    let dp = (d / p as i64).rem_euclid(p as i64) as u64;
    let vp = if sign < 0 { p - v % p } else { v % p };
    let mut s = jacobi_u64(vp, p);
    if beta % 2 == 1 {
        s *= jacobi_u64(dp, p);
        if p % 4 == 3 {
            s = -s;
        }
    }
    s
}

/// Sum of the local invariants over the ramified places, as a sign.
pub fn adelic_sign(c: &SymbolClass, t: &[Rational]) -> Result<i8, BrauerError> {
    let (a, b) = c.specialize(t)?;
    let mut s = 1;
    for v in ramified_places(&a, &b)? {
        s *= hilbert_symbol(&a, &b, v)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn local_examples() {
        let c = SymbolClass::gm(-1).unwrap();
        assert_eq!(evaluate_local(&c, &[r(5)], Place::Infinity).unwrap(), LocalInvariant::Zero);
        assert_eq!(
            evaluate_local(&c, &[r(3)], Place::prime(3).unwrap()).unwrap(),
            LocalInvariant::Half
        );
        for v in [Place::Infinity, Place::prime(2).unwrap(), Place::prime(3).unwrap()] {
            assert_eq!(evaluate_local(&c, &[r(4)], v).unwrap(), LocalInvariant::Zero);
        }
        assert_eq!(evaluate_local(&c, &[r(0)], Place::Infinity), Err(BrauerError::Undefined));
    }

    #[test]
    fn global_examples() {
        let c = SymbolClass::gm(-1).unwrap();
        assert!(evaluate_global_is_zero(&c, &[r(5)]).unwrap());
        assert!(!evaluate_global_is_zero(&c, &[r(3)]).unwrap());
        let split = SymbolClass::gm(49).unwrap();
        for t in [2, 3, -7, 11] {
            assert!(evaluate_global_is_zero(&split, &[r(t)]).unwrap());
        }
    }

    #[test]
    fn indicator_examples() {
        let empty = BrauerSet::default();
        assert_eq!(indicator(&empty, &[r(3)]).unwrap(), 1);
        let one = BrauerSet::new(vec![SymbolClass::gm(-1).unwrap()]);
        assert_eq!(indicator(&one, &[r(2)]).unwrap(), 1);
        let two = BrauerSet::new(vec![SymbolClass::gm(-1).unwrap(), SymbolClass::gm(-2).unwrap()]);
        assert_eq!(indicator(&two, &[r(3)]).unwrap(), 0);
    }

    #[test]
    fn norm_examples() {
        for d in [-1, 2, 3, -5] {
            assert!(is_norm_quadratic(&r(9), d).unwrap());
        }
        assert!(is_norm_quadratic(&r(5), -1).unwrap());
        assert!(!is_norm_quadratic(&r(3), -1).unwrap());
        assert!(is_norm_quadratic(&r(0), -1).is_err());
        assert!(is_norm_quadratic(&r(5), 4).is_err());
        assert!(is_norm_quadratic(&r(5), 1).is_err());
    }

    #[test]
    fn integer_test_matches_rational_test() {
        for d in [-1i64, 2, -2, 3, -3, 5, 6, -6, -7, 10, 15, -15, 21, 30, -30] {
            for m in -400i128..=400 {
                if m == 0 {
                    continue;
                }
                assert_eq!(
                    is_norm_quadratic_int(m, d),
                    is_norm_quadratic(&r(m), d as i128).unwrap(),
                    "m={m} d={d}"
                );
            }
        }
    }

    #[test]
    fn norm_family_classes() {
        let spec = NormFormSpec::new(crate::poly::Poly::from_i64(&[-2, 0, 1])).unwrap();
        let set = BrauerSet::norm_form_family(&spec, &[3]).unwrap();
        // t = 0: N = 1
        assert_eq!(indicator(&set, &[r(0)]).unwrap(), 1);
        // t = 1: N = -1, not a norm from Q(sqrt 3)
        assert_eq!(indicator(&set, &[r(1)]).unwrap(), 0);
    }
}
