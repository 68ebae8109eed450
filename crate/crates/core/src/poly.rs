//! Integer polynomials in one and several variables.
//!
//! Coefficients are `i128`; every arithmetic operation is checked and
//! overflow surfaces as [`PolyError::Overflow`] instead of wrapping.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable count mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
}

pub(crate) fn checked_pow(base: i128, exp: u32) -> Result<i128, PolyError> {
    base.checked_pow(exp).ok_or(PolyError::Overflow)
}

fn rat_pow(base: Rational, exp: u32) -> Result<Rational, PolyError> {
    let n = checked_pow(*base.numer(), exp)?;
    let d = checked_pow(*base.denom(), exp)?;
    Ok(Rational::new_raw(n, d))
}

pub(crate) fn rat_add(a: Rational, b: Rational) -> Result<Rational, PolyError> {
    let g = a.denom().gcd(b.denom());
    let da = a.denom() / g;
    let db = b.denom() / g;
    let n1 = a.numer().checked_mul(db).ok_or(PolyError::Overflow)?;
    let n2 = b.numer().checked_mul(da).ok_or(PolyError::Overflow)?;
    let n = n1.checked_add(n2).ok_or(PolyError::Overflow)?;
    let d = a.denom().checked_mul(db).ok_or(PolyError::Overflow)?;
    Ok(Rational::new(n, d))
}

pub(crate) fn rat_mul(a: Rational, b: Rational) -> Result<Rational, PolyError> {
    if a.is_zero() || b.is_zero() {
        return Ok(Rational::zero());
    }
    let g1 = a.numer().gcd(b.denom());
    let g2 = b.numer().gcd(a.denom());
    let n = (a.numer() / g1)
        .checked_mul(b.numer() / g2)
        .ok_or(PolyError::Overflow)?;
    let d = (a.denom() / g2)
        .checked_mul(b.denom() / g1)
        .ok_or(PolyError::Overflow)?;
    Ok(Rational::new(n, d))
}

pub(crate) fn rat_div(a: Rational, b: Rational) -> Result<Rational, PolyError> {
    if b.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    rat_mul(a, b.recip())
}

/// Dense univariate polynomial, coefficients in ascending degree order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<i128>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| c as i128).collect())
    }

    pub fn constant(c: i128) -> Self {
        Poly::new(vec![c])
    }

    /// `t`
    pub fn x() -> Self {
        Poly::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn content(&self) -> i128 {
        self.coeffs.iter().fold(0i128, |g, &c| g.gcd(&c))
    }

    /// Content removed, leading coefficient positive.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::default();
        }
        let mut g = self.content();
        if self.leading() < 0 {
            g = -g;
        }
        Poly::new(self.coeffs.iter().map(|c| c / g).collect())
    }

    pub fn eval(&self, x: i128) -> Result<i128, PolyError> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(x)
                .and_then(|v| v.checked_add(c))
                .ok_or(PolyError::Overflow)?;
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, x: Rational) -> Result<Rational, PolyError> {
        let mut acc = Rational::zero();
        for &c in self.coeffs.iter().rev() {
            acc = rat_add(rat_mul(acc, x)?, Rational::from_integer(c))?;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// `x0^deg · p(x1/x0)`: the binary form of degree `deg` attached to `p`.
    pub fn eval_homogeneous(&self, deg: usize, x0: i128, x1: i128) -> Result<i128, PolyError> {
        debug_assert!(self.degree().map_or(true, |d| d <= deg));
        let mut acc: i128 = 0;
        for i in 0..=deg {
            let c = self.coeff(i);
            if c == 0 {
                continue;
            }
            let term = checked_pow(x1, i as u32)?
                .checked_mul(checked_pow(x0, (deg - i) as u32)?)
                .and_then(|v| v.checked_mul(c))
                .ok_or(PolyError::Overflow)?;
            acc = acc.checked_add(term).ok_or(PolyError::Overflow)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i128)
                .collect(),
        )
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::default());
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(PolyError::Overflow)?;
                out[i + j] = out[i + j].checked_add(t).ok_or(PolyError::Overflow)?;
            }
        }
        Ok(Poly::new(out))
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(
                self.coeff(i)
                    .checked_add(other.coeff(i))
                    .ok_or(PolyError::Overflow)?,
            );
        }
        Ok(Poly::new(out))
    }

    pub fn scale(&self, k: i128) -> Result<Poly, PolyError> {
        let out: Option<Vec<i128>> = self.coeffs.iter().map(|c| c.checked_mul(k)).collect();
        out.map(Poly::new).ok_or(PolyError::Overflow)
    }

    /// Exact division in `Z[t]`; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Poly::default());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i128; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd];
            if top % lead != 0 {
                return None;
            }
            let q = top / lead;
            quot[k] = q;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].checked_sub(q.checked_mul(c)?)?;
            }
        }
        if rem.iter().all(|&c| c == 0) {
            Some(Poly::new(quot))
        } else {
            None
        }
    }

    /// Remainder of `self` modulo `divisor` over `Q`.
    pub fn rem_rational(&self, divisor: &Poly) -> Result<Vec<Rational>, PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let mut rem: Vec<Rational> = self.coeffs.iter().map(|&c| Rational::from_integer(c)).collect();
        let lead = Rational::from_integer(divisor.leading());
        while rem.len() > dd {
            let top = *rem.last().unwrap();
            let k = rem.len() - 1 - dd;
            if !top.is_zero() {
                let q = rat_div(top, lead)?;
                for (j, &c) in divisor.coeffs.iter().enumerate() {
                    let t = rat_mul(q, Rational::from_integer(c))?;
                    rem[k + j] = rat_add(rem[k + j], -t)?;
                }
            }
            rem.pop();
        }
        while rem.last().map_or(false, |r| r.is_zero()) {
            rem.pop();
        }
        Ok(rem)
    }

    /// Primitive gcd over `Q`, normalised to positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.rem_rational(&b)?;
            if r.is_empty() {
                a = b;
                break;
            }
            let den = r.iter().fold(1i128, |l, q| l.lcm(q.denom()));
            let ints: Result<Vec<i128>, PolyError> = r
                .iter()
                .map(|q| {
                    q.numer()
                        .checked_mul(den / q.denom())
                        .ok_or(PolyError::Overflow)
                })
                .collect();
            let r = Poly::new(ints?).primitive_part();
            a = b;
            b = r;
        }
        Ok(a.primitive_part())
    }

    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        match self.degree() {
            None => Ok(false),
            Some(0) => Ok(true),
            Some(_) => Ok(self.gcd(&self.derivative())?.degree() == Some(0)),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if a != 1 {
                        write!(f, "{}*", a)?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sparse multivariate integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, 1);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, i128)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            *p.terms.entry(e).or_insert(0) += c;
        }
        p.terms.retain(|_, c| *c != 0);
        p
    }

    /// Embed a univariate polynomial in variable `i`.
    pub fn from_univariate(nvars: usize, i: usize, p: &Poly) -> Self {
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, &c)| {
                let mut e = vec![0; nvars];
                e[i] = k as u32;
                (e, c)
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i128)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.terms.clone();
        for (e, &c) in &other.terms {
            let slot = out.entry(e.clone()).or_insert(0);
            *slot = slot.checked_add(c).ok_or(PolyError::Overflow)?;
        }
        out.retain(|_, c| *c != 0);
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: out,
        })
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca.checked_mul(cb).ok_or(PolyError::Overflow)?;
                let slot = out.entry(e).or_insert(0);
                *slot = slot.checked_add(c).ok_or(PolyError::Overflow)?;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: out,
        })
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: &[i128]) -> Result<i128, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: x.len(),
            });
        }
        let mut acc: i128 = 0;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (&xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t = t.checked_mul(checked_pow(xi, ei)?).ok_or(PolyError::Overflow)?;
                }
            }
            acc = acc.checked_add(t).ok_or(PolyError::Overflow)?;
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, x: &[Rational]) -> Result<Rational, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: x.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, &c) in &self.terms {
            let mut t = Rational::from_integer(c);
            for (&xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t = rat_mul(t, rat_pow(xi, ei)?)?;
                }
            }
            acc = rat_add(acc, t)?;
        }
        Ok(acc)
    }

    /// Substitute `x_0 = 1` and drop that variable.
    pub fn dehomogenize_first(&self) -> MultiPoly {
        assert!(self.nvars >= 1);
        MultiPoly::from_terms(
            self.nvars - 1,
            self.terms.iter().map(|(e, &c)| (e[1..].to_vec(), c)),
        )
    }
}

/// Quotient of two integer polynomials in the same variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        num.check_arity(&den)?;
        Ok(RationalFunction { num, den })
    }

    pub fn polynomial(num: MultiPoly) -> Self {
        let den = MultiPoly::constant(num.nvars(), 1);
        RationalFunction { num, den }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RationalFunction {
            num: MultiPoly::constant(nvars, *c.numer()),
            den: MultiPoly::constant(nvars, *c.denom()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `None` when the denominator vanishes at `x`.
    pub fn eval(&self, x: &[Rational]) -> Result<Option<Rational>, PolyError> {
        let d = self.den.eval_rational(x)?;
        if d.is_zero() {
            return Ok(None);
        }
        let n = self.num.eval_rational(x)?;
        Ok(Some(rat_div(n, d)?))
    }
}

/// Leibniz determinant of a square matrix of multivariate polynomials.
pub(crate) fn det_multipoly(m: &[Vec<MultiPoly>]) -> Result<MultiPoly, PolyError> {
    let n = m.len();
    let nvars = m[0][0].nvars();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = MultiPoly::zero(nvars);
    permute(&mut perm, 0, &mut |p| {
        let sign = permutation_sign(p);
        let mut term = MultiPoly::constant(nvars, sign);
        for (row, &col) in p.iter().enumerate() {
            if m[row][col].is_zero() {
                return Ok(());
            }
            term = term.checked_mul(&m[row][col])?;
        }
        acc = acc.checked_add(&term)?;
        Ok(())
    })?;
    Ok(acc)
}

fn permute(
    p: &mut Vec<usize>,
    k: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<(), PolyError>,
) -> Result<(), PolyError> {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f)?;
        p.swap(k, i);
    }
    Ok(())
}

fn permutation_sign(p: &[usize]) -> i128 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub(crate) fn det_bareiss(mut m: Vec<Vec<i128>>) -> Result<i128, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k]).ok_or(PolyError::Overflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or(PolyError::Overflow)?;
                m[i][j] = a.checked_sub(b).ok_or(PolyError::Overflow)? / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign).ok_or(PolyError::Overflow)
}

pub(crate) fn rational_is_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    if q.is_zero() {
        return true;
    }
    crate::arith::is_perfect_square(q.numer().unsigned_abs())
        && crate::arith::is_perfect_square(*q.denom() as u128)
}

pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if !rational_is_square(q) {
        return None;
    }
    Some(Rational::new(
        crate::arith::isqrt(q.numer().unsigned_abs()) as i128,
        crate::arith::isqrt(*q.denom() as u128) as i128,
    ))
}
