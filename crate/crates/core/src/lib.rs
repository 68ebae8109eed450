//! Bounded-height point counting in families whose fibres are governed by
//! order-2 Brauer classes over `Q`: exact Hilbert-symbol evaluation, the
//! `Delta` exponent of a family, partial Euler products and Tauberian
//! constants, and a parallel counting engine with log-power fitting.

pub mod analytic;
pub mod arith;
pub mod brauer;
pub mod count;
pub mod heights;
pub mod model;
pub mod poly;
pub mod verify;
