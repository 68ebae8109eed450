//! Compiled fibre tests, shared by pointwise queries and the counter.

use num_traits::Zero;

use crate::arith::{norm_form_value, NormFormSpec, Rational};
use crate::brauer::{is_norm_quadratic, is_norm_quadratic_int};
use crate::poly::{MultiPoly, Poly};

use super::conic::{conic_locally_soluble, ConicBundle};
use super::{validate_norm_form, FamilySpec, ModelError};

/// Result of testing the fibre over a base point given in homogeneous
/// integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberOutcome {
    /// The point lies off the open locus.
    Boundary,
    Soluble,
    Insoluble,
}

#[derive(Clone, Debug)]
enum Kind {
    NormForm {
        spec: NormFormSpec,
        /// Terms of the homogeneous norm form.
        terms: Vec<(Vec<u32>, i128)>,
        /// For binary forms, `c_k` of `x_0^{deg-k} x_1^k`.
        binary: Option<Vec<i128>>,
        degree: u32,
        discs: Vec<i64>,
        evaluable: bool,
    },
    Conic {
        bundle: ConicBundle,
        degrees: [usize; 3],
    },
    Diagonal,
}

/// A validated family ready for fibre queries.
#[derive(Clone, Debug)]
pub struct Family {
    kind: Kind,
    base_dim: usize,
}

impl Family {
    pub fn new(spec: &FamilySpec) -> Result<Self, ModelError> {
        match spec {
            FamilySpec::NormForm {
                min_poly,
                twists,
                linearly_disjoint,
            } => {
                let e = validate_norm_form(min_poly, twists, *linearly_disjoint)?;
                let norm: MultiPoly = e.norm_polynomial()?;
                let terms: Vec<(Vec<u32>, i128)> =
                    norm.terms().map(|(m, c)| (m.to_vec(), c)).collect();
                let binary = (e.arity() == 1).then(|| {
                    let mut coeffs = vec![0i128; e.degree() + 1];
                    for (m, c) in &terms {
                        coeffs[m[1] as usize] += c;
                    }
                    coeffs
                });
                let discs = twists.iter().filter_map(|t| t.disc).collect();
                let evaluable = twists.iter().all(|t| t.degree <= 2);
                Ok(Family {
                    base_dim: e.arity(),
                    kind: Kind::NormForm {
                        degree: e.degree() as u32,
                        spec: e,
                        terms,
                        binary,
                        discs,
                        evaluable,
                    },
                })
            }
            FamilySpec::ConicBundle { f0, f1, f2 } => {
                let bundle =
                    ConicBundle::new(Poly::from_i64(f0), Poly::from_i64(f1), Poly::from_i64(f2))?;
                let degrees = bundle.degrees();
                Ok(Family {
                    base_dim: 1,
                    kind: Kind::Conic { bundle, degrees },
                })
            }
            FamilySpec::DiagonalConics { n } => {
                if *n != 2 {
                    return Err(ModelError::DiagonalDimension(*n));
                }
                Ok(Family {
                    base_dim: 2,
                    kind: Kind::Diagonal,
                })
            }
        }
    }

    /// `n` for base `P^n`.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn evaluable(&self) -> bool {
        match &self.kind {
            Kind::NormForm { evaluable, .. } => *evaluable,
            _ => true,
        }
    }

    fn require_evaluable(&self) -> Result<(), ModelError> {
        if self.evaluable() {
            Ok(())
        } else {
            Err(ModelError::EvaluationUnavailable(
                "twists of degree > 2 need higher-degree norm tests".to_string(),
            ))
        }
    }

    /// Fibre test at an affine base point. Norm-form families and conic
    /// bundles take `t_1..t_n` with `x_0 = 1`; the diagonal family takes the
    /// coefficients `(a, b, c)`.
    pub fn fiber_has_point(&self, t: &[Rational]) -> Result<bool, ModelError> {
        self.require_evaluable()?;
        let expected = match self.kind {
            Kind::Diagonal => 3,
            _ => self.base_dim,
        };
        if t.len() != expected {
            return Err(ModelError::Arity {
                expected,
                got: t.len(),
            });
        }
        match &self.kind {
            Kind::NormForm { spec, discs, .. } => {
                let m = norm_form_value(spec, t)?;
                if m.is_zero() {
                    return Err(ModelError::Boundary("norm form vanishes".to_string()));
                }
                for &d in discs {
                    if !is_norm_quadratic(&m, d as i128)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Kind::Conic { bundle, .. } => {
                let mut v = [Rational::zero(); 3];
                for i in 0..3 {
                    v[i] = bundle.f()[i].eval_rational(t[0])?;
                    if v[i].is_zero() {
                        return Err(ModelError::Boundary(format!("f{i} vanishes")));
                    }
                }
                conic_locally_soluble(&v[0], &v[1], &v[2])
            }
            Kind::Diagonal => {
                if t.iter().any(|x| x.is_zero()) {
                    return Err(ModelError::Boundary("a conic coefficient vanishes".to_string()));
                }
                conic_locally_soluble(&t[0], &t[1], &t[2])
            }
        }
    }

    /// Fibre test at a base point of `P^n` given by integer coordinates.
    pub fn evaluate(&self, x: &[i64]) -> Result<FiberOutcome, ModelError> {
        if x.len() != self.base_dim + 1 {
            return Err(ModelError::Arity {
                expected: self.base_dim + 1,
                got: x.len(),
            });
        }
        match &self.kind {
            Kind::NormForm {
                terms,
                binary,
                degree,
                discs,
                evaluable,
                ..
            } => {
                let m = match binary {
                    Some(c) => eval_binary(c, x[0], x[1])?,
                    None => eval_form(terms, *degree, x)?,
                };
                if m == 0 {
                    return Ok(FiberOutcome::Boundary);
                }
                if discs.is_empty() {
                    return Ok(FiberOutcome::Soluble);
                }
                if !evaluable {
                    self.require_evaluable()?;
                }
                // quadratic twists force an even field degree, so the
                // homogeneous value has the square class of N(1, t)
                for &d in discs {
                    if !is_norm_quadratic_int(m, d) {
                        return Ok(FiberOutcome::Insoluble);
                    }
                }
                Ok(FiberOutcome::Soluble)
            }
            Kind::Conic { bundle, degrees } => {
                let mut v = [Rational::zero(); 3];
                for i in 0..3 {
                    let val = bundle.f()[i].eval_homogeneous(degrees[i], x[0] as i128, x[1] as i128)?;
                    if val == 0 {
                        return Ok(FiberOutcome::Boundary);
                    }
                    v[i] = Rational::from_integer(val);
                }
                Ok(outcome(conic_locally_soluble(&v[0], &v[1], &v[2])?))
            }
            Kind::Diagonal => {
                if x.iter().any(|&c| c == 0) {
                    return Ok(FiberOutcome::Boundary);
                }
                let r = |i: usize| Rational::from_integer(x[i] as i128);
                Ok(outcome(conic_locally_soluble(&r(0), &r(1), &r(2))?))
            }
        }
    }
}

fn outcome(soluble: bool) -> FiberOutcome {
    if soluble {
        FiberOutcome::Soluble
    } else {
        FiberOutcome::Insoluble
    }
}

fn overflow() -> ModelError {
    ModelError::Arith(crate::arith::ArithError::Overflow)
}

/// `sum c_k x0^{deg-k} x1^k` by Horner's rule.
fn eval_binary(c: &[i128], x0: i64, x1: i64) -> Result<i128, ModelError> {
    let (x0, x1) = (x0 as i128, x1 as i128);
    let mut acc = *c.last().unwrap();
    let mut p0: i128 = 1;
    for &ck in c.iter().rev().skip(1) {
        p0 = p0.checked_mul(x0).ok_or_else(overflow)?;
        let t = ck.checked_mul(p0).ok_or_else(overflow)?;
        acc = acc
            .checked_mul(x1)
            .and_then(|a| a.checked_add(t))
            .ok_or_else(overflow)?;
    }
    Ok(acc)
}

fn eval_form(terms: &[(Vec<u32>, i128)], degree: u32, x: &[i64]) -> Result<i128, ModelError> {
    // powers[i * stride + k] = x_i^k
    let stride = degree as usize + 1;
    let mut powers = vec![1i128; x.len() * stride];
    for (i, &xi) in x.iter().enumerate() {
        for k in 1..stride {
            powers[i * stride + k] = powers[i * stride + k - 1]
                .checked_mul(xi as i128)
                .ok_or_else(overflow)?;
        }
    }
    let mut acc: i128 = 0;
    for (exps, c) in terms {
        let mut t = *c;
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                t = t.checked_mul(powers[i * stride + e as usize]).ok_or_else(overflow)?;
            }
        }
        acc = acc.checked_add(t).ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// Pointwise fibre test; see [`Family::fiber_has_point`].
pub fn fiber_has_point(spec: &FamilySpec, t: &[Rational]) -> Result<bool, ModelError> {
    Family::new(spec)?.fiber_has_point(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CyclicTwist;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn cor() -> FamilySpec {
        FamilySpec::norm_form(&[-2, 0, 1], vec![FamilySpec::quadratic_twist(3)])
    }

    #[test]
    fn documented_examples() {
        assert!(fiber_has_point(&cor(), &[r(0)]).unwrap());
        let trivial = FamilySpec::conic_bundle(&[1], &[1], &[-1]);
        for t in -5..5 {
            assert!(fiber_has_point(&trivial, &[r(t)]).unwrap());
        }
        let diag = FamilySpec::DiagonalConics { n: 2 };
        assert!(!fiber_has_point(&diag, &[r(1), r(1), r(1)]).unwrap());
        assert!(fiber_has_point(&diag, &[r(1), r(1), r(-2)]).unwrap());
    }

    #[test]
    fn boundary_and_unavailable() {
        // f0 = t vanishes at t = 0
        let cb = FamilySpec::conic_bundle(&[0, 1], &[1, 1], &[-3, 1]);
        assert!(matches!(fiber_has_point(&cb, &[r(0)]), Err(ModelError::Boundary(_))));
        let cubic = FamilySpec::norm_form(&[-2, 0, 0, 1], vec![CyclicTwist { degree: 3, disc: None }]);
        assert!(matches!(
            fiber_has_point(&cubic, &[r(0), r(0)]),
            Err(ModelError::EvaluationUnavailable(_))
        ));
    }

    #[test]
    fn projective_matches_affine() {
        let fams = [
            cor(),
            FamilySpec::norm_form(&[1, 0, 1], vec![FamilySpec::quadratic_twist(-3)]),
            FamilySpec::conic_bundle(&[0, 1], &[1, 1], &[-3, 1]),
            FamilySpec::conic_bundle(&[-2, 0, 1], &[-5, 0, 1], &[1]),
        ];
        for spec in &fams {
            let fam = Family::new(spec).unwrap();
            for x0 in 1..=12i64 {
                for x1 in -12..=12i64 {
                    if num_integer::gcd(x0, x1) != 1 {
                        continue;
                    }
                    let proj = fam.evaluate(&[x0, x1]).unwrap();
                    let aff = fam.fiber_has_point(&[Rational::new(x1 as i128, x0 as i128)]);
                    match proj {
                        FiberOutcome::Boundary => assert!(aff.is_err()),
                        FiberOutcome::Soluble => assert!(aff.unwrap()),
                        FiberOutcome::Insoluble => assert!(!aff.unwrap()),
                    }
                }
            }
        }
    }

    #[test]
    fn norm_form_evaluation() {
        let fam = Family::new(&cor()).unwrap();
        // N(x0 + x1 sqrt2) = x0^2 - 2 x1^2
        assert_eq!(fam.evaluate(&[1, 0]).unwrap(), FiberOutcome::Soluble);
        // -1 is not a norm from Q(sqrt 3)
        assert_eq!(fam.evaluate(&[1, 1]).unwrap(), FiberOutcome::Insoluble);
        // x0 = 0: N = -2, and -2 = 1 - 3 is a norm from Q(sqrt 3)
        assert_eq!(fam.evaluate(&[0, 1]).unwrap(), FiberOutcome::Soluble);
    }
}
