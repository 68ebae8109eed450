//! Points of `P^n(Q)`, their heights, and bounded-height enumeration.

use std::fmt;
use std::ops::RangeInclusive;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("a projective point needs at least two coordinates")]
    TooFewCoordinates,
    #[error("anticanonical height on P^{expected} applied to a point of P^{got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("height overflows 128 bits")]
    Overflow,
}

/// Canonical representative of a point of `P^n(Q)`: primitive integer
/// coordinates whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<i64>,
}

impl ProjPoint {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// `n` for a point of `P^n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Wraps coordinates already known to be canonical.
    pub(crate) fn from_canonical(coords: &[i64]) -> Self {
        debug_assert!(is_canonical(coords));
        ProjPoint {
            coords: coords.to_vec(),
        }
    }

    /// `max |x_i|`. With primitive integer coordinates every finite
    /// place contributes a factor 1, leaving the archimedean one.
    pub fn naive_height(&self) -> u64 {
        naive_height_of(&self.coords)
    }

    /// Affine coordinates `t_i = x_i / x_0`, or `None` on `x_0 = 0`.
    pub fn affine(&self) -> Option<Vec<Rational>> {
        let x0 = self.coords[0];
        if x0 == 0 {
            return None;
        }
        Some(
            self.coords[1..]
                .iter()
                .map(|&x| Rational::new(x as i128, x0 as i128))
                .collect(),
        )
    }

    pub fn coords_i128(&self) -> Vec<i128> {
        self.coords.iter().map(|&x| x as i128).collect()
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn naive_height_of(coords: &[i64]) -> u64 {
    coords.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
}

fn is_canonical(coords: &[i64]) -> bool {
    let g = coords.iter().fold(0u64, |g, x| g.gcd(&x.unsigned_abs()));
    g == 1 && coords.iter().find(|&&x| x != 0).map_or(false, |&x| x > 0)
}

/// Canonical representative of the point with homogeneous coordinates `raw`.
pub fn normalize(raw: &[i64]) -> Result<ProjPoint, HeightError> {
    if raw.len() < 2 {
        return Err(HeightError::TooFewCoordinates);
    }
    let g = raw.iter().fold(0u64, |g, x| g.gcd(&x.unsigned_abs()));
    if g == 0 {
        return Err(HeightError::ZeroVector);
    }
    let first = *raw.iter().find(|&&x| x != 0).unwrap();
    let g = g as i128 * first.signum() as i128;
    Ok(ProjPoint {
        coords: raw.iter().map(|&x| (x as i128 / g) as i64).collect(),
    })
}

pub fn naive_height(p: &ProjPoint) -> u64 {
    p.naive_height()
}

/// Which height the counting functions use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HeightSpec {
    Naive,
    /// `H = naive^{n+1}` on `P^n`.
    Anticanonical { ambient_dim: usize },
}

impl HeightSpec {
    pub fn exponent(&self) -> u32 {
        match self {
            HeightSpec::Naive => 1,
            HeightSpec::Anticanonical { ambient_dim } => *ambient_dim as u32 + 1,
        }
    }
}

pub fn height(p: &ProjPoint, spec: HeightSpec) -> Result<u128, HeightError> {
    if let HeightSpec::Anticanonical { ambient_dim } = spec {
        if ambient_dim != p.dim() {
            return Err(HeightError::DimensionMismatch {
                expected: ambient_dim,
                got: p.dim(),
            });
        }
    }
    (p.naive_height() as u128)
        .checked_pow(spec.exponent())
        .ok_or(HeightError::Overflow)
}

/// Visits every point of `P^n(Q)` with naive height `<= bound` exactly once,
/// passing its canonical coordinates.
pub fn enumerate<F: FnMut(&[i64])>(n: usize, bound: u64, visitor: F) {
    enumerate_range(n, bound, 0..=bound, visitor)
}

/// The slice of [`enumerate`] whose last coordinate has absolute value in
/// `outer`. Disjoint ranges covering `0..=bound` partition the point set.
pub fn enumerate_range<F: FnMut(&[i64])>(
    n: usize,
    bound: u64,
    outer: RangeInclusive<u64>,
    mut visitor: F,
) {
    assert!(n >= 1, "enumeration needs n >= 1");
    assert!(bound <= i64::MAX as u64);
    let mut coords = vec![0i64; n + 1];
    let hi = (*outer.end()).min(bound);
    for k in *outer.start()..=hi {
        visit_prefixes(0, n, bound as i64, k, &mut coords, 0, false, &mut visitor);
    }
}

#[allow(clippy::too_many_arguments)]
fn visit_prefixes<F: FnMut(&[i64])>(
    pos: usize,
    n: usize,
    bound: i64,
    last: u64,
    coords: &mut [i64],
    g: u64,
    seen_nonzero: bool,
    visitor: &mut F,
) {
    if pos == n {
        if last == 0 {
            if g == 1 {
                coords[n] = 0;
                visitor(coords);
            }
            return;
        }
        if g.gcd(&last) != 1 {
            return;
        }
        coords[n] = last as i64;
        visitor(coords);
        if seen_nonzero {
            coords[n] = -(last as i64);
            visitor(coords);
        }
        return;
    }
    let lo = if seen_nonzero { -bound } else { 0 };
    for x in lo..=bound {
        coords[pos] = x;
        let g2 = if x == 0 { g } else { gcd_u64(g, x.unsigned_abs()) };
        visit_prefixes(pos + 1, n, bound, last, coords, g2, seen_nonzero || x != 0, visitor);
    }
}

#[inline]
fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// All points of naive height `<= bound`, in enumeration order.
pub fn points_up_to(n: usize, bound: u64) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    enumerate(n, bound, |c| out.push(ProjPoint::from_canonical(c)));
    out
}
