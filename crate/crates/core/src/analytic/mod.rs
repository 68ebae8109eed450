//! Quadratic characters, L-values, partial Euler products and the
//! constants they feed into.

mod character;
mod euler;
mod landau;
mod special;

use thiserror::Error;

use crate::arith::Rational;

pub use character::{is_fundamental_discriminant, CharacterGroup, QuadCharacter};
pub use euler::{
    delange_constant, exp_integral_e1, factorization_check, l_series, l_value, log_g,
    log_g_range, partial_euler_product, principal_tail_log, singular_limit, support_density, LadderStep,
    SingularLimit, DEFAULT_G_CUTOFF, LADDER_MAX_K, LADDER_MIN_K, LADDER_TOLERANCE,
};
pub use landau::{
    landau_direct_product, landau_ramanujan, landau_ramanujan_trace, landau_series_g1,
    LandauTrace,
};
pub use special::{
    alternating_sum, digamma, dirichlet_beta, dirichlet_eta, gamma_rational,
    hurwitz_zeta_regular, riemann_zeta, zeta_times_pole,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("not a character group: {0}")]
    GroupAxiom(String),
    #[error("Euler products need s > 1, got {0}")]
    SNotAboveOne(f64),
    #[error("Dirichlet series need s > 0, got {0}")]
    SNotPositive(f64),
    #[error("zeta has a pole at s = 1")]
    Pole,
    #[error("cutoffs must increase, got {0} and {1}")]
    Cutoffs(u64, u64),
    #[error("{0} is not a member of the group")]
    NotMember(QuadCharacter),
    #[error("L({0}, {1}) is not positive")]
    NonPositiveFactor(QuadCharacter, f64),
    #[error("omega must be positive, got {0}")]
    NonPositiveOmega(Rational),
    #[error("ladder did not stabilise: last relative gap {}", .0.last_gap)]
    NotConverged(Box<SingularLimit>),
}
