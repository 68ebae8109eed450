//! Exact integer and rational arithmetic: factorization, quadratic
//! symbols, Hilbert symbols and norm forms.

mod factor;
mod norm;
pub mod sieve;
mod symbols;

use thiserror::Error;

use crate::poly::PolyError;

pub use factor::{factor, is_perfect_square, is_prime_u128, is_prime_u64, isqrt, Factorization};
pub(crate) use factor::for_each_prime_factor_u64;
pub use norm::{norm_form_homogeneous, norm_form_value, resultant, NormFormSpec};
pub use symbols::{
    hilbert_product, hilbert_symbol, kronecker, ramified_places, squarefree_kernel, Place,
    PrimePlace,
};
pub(crate) use symbols::jacobi_u64;

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0}: zero argument")]
    Zero(&'static str),
    #[error("{0}")]
    OutOfRange(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("integer overflow")]
    Overflow,
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid norm form: {0}")]
    InvalidNormForm(String),
}

impl From<PolyError> for ArithError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Overflow => ArithError::Overflow,
            PolyError::DivisionByZero => ArithError::Zero("polynomial division"),
            PolyError::Arity { expected, got } => ArithError::Arity { expected, got },
        }
    }
}
