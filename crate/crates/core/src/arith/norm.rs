//! Norm forms `N_{E/Q}(x_0 + x_1 w + ... + x_n w^n)` for `E = Q[x]/(f)`.
//!
//! Two independent routes are provided: the resultant `Res(f, g)` of the
//! minimal polynomial against the element's polynomial, and the
//! determinant of the multiplication-by-element matrix on the power basis.

use num_integer::Integer;
use num_traits::Zero;

use crate::poly::{det_bareiss, det_multipoly, MultiPoly, Poly};

use super::{ArithError, Rational};

/// A monic irreducible integer polynomial `f` of degree `n + 1 >= 2`
/// defining `E = Q[x]/(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormFormSpec {
    min_poly: Poly,
}

impl NormFormSpec {
    /// Validates monicity, degree and irreducibility over `Q`.
    pub fn new(min_poly: Poly) -> Result<Self, ArithError> {
        let deg = min_poly.degree().unwrap_or(0);
        if deg < 2 {
            return Err(ArithError::InvalidNormForm(format!(
                "minimal polynomial {min_poly} must have degree >= 2"
            )));
        }
        if min_poly.leading() != 1 {
            return Err(ArithError::InvalidNormForm(format!(
                "minimal polynomial {min_poly} must be monic"
            )));
        }
        let factors = crate::model::factor_poly(&min_poly)
            .map_err(|e| ArithError::InvalidNormForm(e.to_string()))?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(ArithError::InvalidNormForm(format!(
                "minimal polynomial {min_poly} is reducible over Q"
            )));
        }
        Ok(NormFormSpec { min_poly })
    }

    pub fn min_poly(&self) -> &Poly {
        &self.min_poly
    }

    /// `n`, the number of affine coordinates `t_1..t_n`.
    pub fn arity(&self) -> usize {
        self.degree() - 1
    }

    /// `[E:Q] = n + 1`.
    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    /// Power-basis coordinates of `w^k` for `k < 2·deg - 1`.
    fn power_reductions(&self) -> Vec<Vec<i128>> {
        let m = self.degree();
        let mut out = Vec::with_capacity(2 * m - 1);
        let mut cur = vec![0i128; m];
        cur[0] = 1;
        for _ in 0..2 * m - 1 {
            out.push(cur.clone());
            // multiply by w: shift up, reduce the overflow with w^m = -sum f_i w^i
            let top = cur[m - 1];
            for i in (1..m).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for (i, c) in cur.iter_mut().enumerate() {
                *c -= top * self.min_poly.coeff(i);
            }
        }
        out
    }

    /// Homogeneous norm form in `n + 1` variables, built from the
    /// multiplication matrix.
    pub fn norm_polynomial(&self) -> Result<MultiPoly, ArithError> {
        let m = self.degree();
        let pw = self.power_reductions();
        let vars: Vec<MultiPoly> = (0..m).map(|i| MultiPoly::var(m, i)).collect();
        let mut mat = vec![vec![MultiPoly::zero(m); m]; m];
        for j in 0..m {
            for (k, var) in vars.iter().enumerate() {
                let red = &pw[k + j];
                for i in 0..m {
                    if red[i] != 0 {
                        let term = var.checked_mul(&MultiPoly::constant(m, red[i]))?;
                        mat[i][j] = mat[i][j].checked_add(&term)?;
                    }
                }
            }
        }
        Ok(det_multipoly(&mat)?)
    }
}

/// `N(x_0 + x_1 w + ... + x_n w^n)` for integer coordinates, via the
/// determinant of the multiplication matrix.
pub fn norm_form_homogeneous(spec: &NormFormSpec, x: &[i128]) -> Result<i128, ArithError> {
    let m = spec.degree();
    if x.len() != m {
        return Err(ArithError::Arity {
            expected: m,
            got: x.len(),
        });
    }
    let pw = spec.power_reductions();
    let mut mat = vec![vec![0i128; m]; m];
    for j in 0..m {
        for (k, &xk) in x.iter().enumerate() {
            if xk == 0 {
                continue;
            }
            for i in 0..m {
                let t = pw[k + j][i].checked_mul(xk).ok_or(ArithError::Overflow)?;
                mat[i][j] = mat[i][j].checked_add(t).ok_or(ArithError::Overflow)?;
            }
        }
    }
    Ok(det_bareiss(mat)?)
}

/// Resultant of `f` (degree `m`) and `g` taken with formal degree `k`,
/// as the Sylvester determinant. Equals `lc(f)^k · prod g(roots of f)`.
pub fn resultant(f: &Poly, g: &Poly, formal_deg_g: usize) -> Result<i128, ArithError> {
    let m = f.degree().ok_or(ArithError::Zero("resultant"))?;
    let k = formal_deg_g;
    if g.degree().map_or(false, |d| d > k) {
        return Err(ArithError::Arity {
            expected: k,
            got: g.degree().unwrap(),
        });
    }
    let size = m + k;
    let mut mat = vec![vec![0i128; size]; size];
    for r in 0..k {
        for i in 0..=m {
            mat[r][r + i] = f.coeff(m - i);
        }
    }
    for r in 0..m {
        for i in 0..=k {
            mat[k + r][r + i] = g.coeff(k - i);
        }
    }
    Ok(det_bareiss(mat)?)
}

/// `N_{E/Q}(1 + t_1 w + ... + t_n w^n)` as an exact rational, computed as
/// `Res(f, 1 + t_1 x + ... + t_n x^n)` after clearing denominators.
///
/// A zero value is legal and marks a point on the boundary divisor.
pub fn norm_form_value(spec: &NormFormSpec, t: &[Rational]) -> Result<Rational, ArithError> {
    let n = spec.arity();
    if t.len() != n {
        return Err(ArithError::Arity {
            expected: n,
            got: t.len(),
        });
    }
    let den = t.iter().fold(1i128, |l, q| l.lcm(q.denom()));
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(den);
    for q in t {
        coeffs.push(q.numer().checked_mul(den / q.denom()).ok_or(ArithError::Overflow)?);
    }
    let g = Poly::new(coeffs);
    let res = resultant(spec.min_poly(), &g, n)?;
    if res.is_zero() {
        return Ok(Rational::zero());
    }
    let scale = den
        .checked_pow(spec.degree() as u32)
        .ok_or(ArithError::Overflow)?;
    Ok(Rational::new(res, scale))
}
