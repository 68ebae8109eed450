//! Family specifications, boundary divisors and their residue orders, the
//! `Delta` exponent and the predicted log-power exponent, and fibre
//! solubility predicates.

mod conic;
mod factor;
mod family;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{squarefree_kernel, ArithError, NormFormSpec, Rational};
use crate::brauer::BrauerError;
use crate::poly::{Poly, PolyError};

pub use conic::{classify_conic_fiber, conic_locally_soluble, ConicBundle, FiberClass};
pub use factor::{factor_poly, MAX_FACTOR_DEGREE};
pub use family::{fiber_has_point, Family, FiberOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial factorization is limited to degree {MAX_FACTOR_DEGREE}, got degree {0}")]
    DegreeTooLarge(usize),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("twist of degree {degree} does not divide [E:Q] = {field_degree}; the class would ramify at the identity")]
    TwistDegree { degree: u32, field_degree: usize },
    #[error("quadratic twist needs a squarefree discriminant other than 0 and 1, got {0:?}")]
    TwistDiscriminant(Option<i64>),
    #[error("discriminant given for a twist of degree {0}; only quadratic twists carry one")]
    UnexpectedDiscriminant(u32),
    #[error("linear disjointness of E and the twist fields must be declared (linearly_disjoint = true)")]
    DisjointnessUndeclared,
    #[error("declared linear disjointness fails: {0}")]
    NotLinearlyDisjoint(String),
    #[error("conic bundle coefficient f{0} is the zero polynomial")]
    ZeroCoefficient(usize),
    #[error("deg f0, deg f1, deg f2 = {0:?} must agree mod 2 so that the fibre at infinity is smooth")]
    ParityMismatch([usize; 3]),
    #[error("f0*f1*f2 must be squarefree")]
    NotSquarefree,
    #[error("{0} does not divide f{1}")]
    NotAFactor(String, usize),
    #[error("diagonal conic family is implemented over P^2 only (n = 2), got n = {0}")]
    DiagonalDimension(u32),
    #[error("base point lies on the boundary: {0}")]
    Boundary(String),
    #[error("point evaluation unavailable: {0}")]
    EvaluationUnavailable(String),
    #[error("base point has {got} coordinates, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

impl From<PolyError> for ModelError {
    fn from(e: PolyError) -> Self {
        ModelError::Arith(e.into())
    }
}

/// A cyclic extension `E_i/Q` of degree `degree`. Quadratic twists are
/// `Q(sqrt disc)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicTwist {
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disc: Option<i64>,
}

fn default_diag_dim() -> u32 {
    2
}

/// JSON-facing family description; coefficient arrays are ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum FamilySpec {
    NormForm {
        min_poly: Vec<i64>,
        #[serde(default)]
        twists: Vec<CyclicTwist>,
        #[serde(default)]
        linearly_disjoint: bool,
    },
    ConicBundle {
        f0: Vec<i64>,
        f1: Vec<i64>,
        f2: Vec<i64>,
    },
    DiagonalConics {
        #[serde(default = "default_diag_dim")]
        n: u32,
    },
}

impl FamilySpec {
    pub fn norm_form(min_poly: &[i64], twists: Vec<CyclicTwist>) -> Self {
        FamilySpec::NormForm {
            min_poly: min_poly.to_vec(),
            twists,
            linearly_disjoint: true,
        }
    }

    pub fn conic_bundle(f0: &[i64], f1: &[i64], f2: &[i64]) -> Self {
        FamilySpec::ConicBundle {
            f0: f0.to_vec(),
            f1: f1.to_vec(),
            f2: f2.to_vec(),
        }
    }

    pub fn quadratic_twist(disc: i64) -> CyclicTwist {
        CyclicTwist {
            degree: 2,
            disc: Some(disc),
        }
    }
}

/// One boundary divisor with the order of the residue of the Brauer set
/// along it, equal to the degree of the splitting field of its fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorDatum {
    pub label: String,
    pub residue_order: u32,
    pub component_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    /// Rank of the Picard group of the compactification.
    pub rho: u32,
    pub divisors: Vec<DivisorDatum>,
    pub delta: Rational,
    pub rho_b: Rational,
    pub predicted_exponent: Rational,
    /// `n` for base `P^n`.
    pub base_dim: usize,
    /// The exponent is a heuristic, not a theorem.
    pub conjectural: bool,
    /// Whether fibres can be tested pointwise.
    pub evaluable: bool,
    pub caveats: Vec<String>,
}

impl Model {
    pub fn predicted_exponent_f64(&self) -> f64 {
        *self.predicted_exponent.numer() as f64 / *self.predicted_exponent.denom() as f64
    }

    fn assemble(
        rho: u32,
        divisors: Vec<DivisorDatum>,
        base_dim: usize,
        conjectural: bool,
        evaluable: bool,
        caveats: Vec<String>,
    ) -> Model {
        let orders: Vec<u32> = divisors.iter().map(|d| d.residue_order).collect();
        let delta = delta_from_components(&orders);
        Model::with_delta(rho, divisors, delta, base_dim, conjectural, evaluable, caveats)
    }

    fn with_delta(
        rho: u32,
        divisors: Vec<DivisorDatum>,
        delta: Rational,
        base_dim: usize,
        conjectural: bool,
        evaluable: bool,
        caveats: Vec<String>,
    ) -> Model {
        let rho_b = Rational::from_integer(rho as i128) - delta;
        Model {
            rho,
            divisors,
            delta,
            rho_b,
            predicted_exponent: rho_b - Rational::one(),
            base_dim,
            conjectural,
            evaluable,
            caveats,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<28} {:>14} {:>16}", "divisor", "residue order", "component degree")?;
        for d in &self.divisors {
            writeln!(f, "{:<28} {:>14} {:>16}", d.label, d.residue_order, d.component_degree)?;
        }
        writeln!(f, "Delta = {}", self.delta)?;
        writeln!(f, "rho = {}", self.rho)?;
        writeln!(f, "rho_B = {}", self.rho_b)?;
        write!(f, "predicted theta = {}", self.predicted_exponent)?;
        if self.conjectural {
            write!(f, " (conjectural)")?;
        }
        Ok(())
    }
}

/// `sum (1 - 1/d_i)`.
pub fn delta_from_components(degrees: &[u32]) -> Rational {
    degrees
        .iter()
        .map(|&d| Rational::one() - Rational::new(1, d.max(1) as i128))
        .fold(Rational::zero(), |a, b| a + b)
}

pub fn build_model(spec: &FamilySpec) -> Result<Model, ModelError> {
    match spec {
        FamilySpec::NormForm {
            min_poly,
            twists,
            linearly_disjoint,
        } => {
            let e = validate_norm_form(min_poly, twists, *linearly_disjoint)?;
            let order: u32 = twists.iter().map(|t| t.degree).product();
            let evaluable = twists.iter().all(|t| t.degree <= 2);
            let mut caveats = Vec::new();
            if !evaluable {
                caveats.push(
                    "twists of degree > 2 are handled symbolically; point evaluation unavailable"
                        .to_string(),
                );
            }
            let divisors = vec![DivisorDatum {
                label: format!("D_E, E = Q[x]/({})", e.min_poly()),
                residue_order: order,
                component_degree: order,
            }];
            Ok(Model::assemble(1, divisors, e.arity(), false, evaluable, caveats))
        }
        FamilySpec::ConicBundle { f0, f1, f2 } => {
            let cb = ConicBundle::new(Poly::from_i64(f0), Poly::from_i64(f1), Poly::from_i64(f2))?;
            let mut divisors = Vec::new();
            let mut caveats = Vec::new();
            for i in 0..3 {
                for (g, _) in factor_poly(&cb.f()[i])? {
                    let class = classify_conic_fiber(&cb, &g, i)?;
                    if !class.exact {
                        caveats.push(format!(
                            "fibre over {g} classified split by a modular test at {} primes",
                            conic::MODULAR_PRIMES
                        ));
                    }
                    let order = if class.split { 1 } else { 2 };
                    divisors.push(DivisorDatum {
                        label: format!("f{i}: {g}"),
                        residue_order: order,
                        component_degree: order,
                    });
                }
            }
            Ok(Model::assemble(1, divisors, 1, false, true, caveats))
        }
        FamilySpec::DiagonalConics { n } => {
            if *n != 2 {
                return Err(ModelError::DiagonalDimension(*n));
            }
            let divisors = ["a = 0", "b = 0", "c = 0"]
                .iter()
                .map(|l| DivisorDatum {
                    label: l.to_string(),
                    residue_order: 2,
                    component_degree: 2,
                })
                .collect();
            Ok(Model::assemble(
                3,
                divisors,
                2,
                true,
                true,
                vec!["exponent is conjectural; only bounds are known".to_string()],
            ))
        }
    }
}

/// Validates a norm-form specification and returns the extension.
pub(crate) fn validate_norm_form(
    min_poly: &[i64],
    twists: &[CyclicTwist],
    linearly_disjoint: bool,
) -> Result<NormFormSpec, ModelError> {
    let e = NormFormSpec::new(Poly::from_i64(min_poly))
        .map_err(|err| ModelError::InvalidExtension(err.to_string()))?;
    let field_degree = e.degree();
    let mut quad_discs = Vec::new();
    for t in twists {
        if t.degree == 0 || field_degree % t.degree as usize != 0 {
            return Err(ModelError::TwistDegree {
                degree: t.degree,
                field_degree,
            });
        }
        if t.degree == 2 {
            let d = t.disc.ok_or(ModelError::TwistDiscriminant(None))?;
            if d == 0 || d == 1 || squarefree_kernel(d as i128)? != d as i128 {
                return Err(ModelError::TwistDiscriminant(Some(d)));
            }
            quad_discs.push(d as i128);
        } else if t.disc.is_some() {
            return Err(ModelError::UnexpectedDiscriminant(t.degree));
        }
    }
    if twists.iter().any(|t| t.degree > 1) {
        if !linearly_disjoint {
            return Err(ModelError::DisjointnessUndeclared);
        }
        check_quadratic_disjointness(&e, &quad_discs)?;
    }
    Ok(e)
}

/// Heuristic check of linear disjointness among quadratic fields: the
/// discriminants (with that of `E` when `E` is quadratic) must be
/// independent in `Q*/Q*^2`.
fn check_quadratic_disjointness(e: &NormFormSpec, discs: &[i128]) -> Result<(), ModelError> {
    let mut gens: Vec<(String, i128)> = discs.iter().map(|&d| (format!("Q(sqrt {d})"), d)).collect();
    if e.degree() == 2 {
        let f = e.min_poly();
        let disc = f.coeff(1) * f.coeff(1) - 4 * f.coeff(0);
        gens.push(("E".to_string(), squarefree_kernel(disc)?));
    }
    if gens.len() > 20 {
        return Ok(());
    }
    for mask in 1u32..(1 << gens.len()) {
        let mut prod = 1i128;
        let mut names = Vec::new();
        for (i, (name, d)) in gens.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let g = num_integer::gcd(prod, *d);
                prod = (prod / g) * (d / g);
                names.push(name.as_str());
            }
        }
        if prod == 1 {
            return Err(ModelError::NotLinearlyDisjoint(format!(
                "the product of the discriminants of {} is a square",
                names.join(", ")
            )));
        }
    }
    Ok(())
}
