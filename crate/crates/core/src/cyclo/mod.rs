//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Every scalar of the categories (the quantum parameter `v`, `q = v^2`, the
//! fourth root of unity `i`, quantum dimensions, twists, S-matrix entries)
//! lives in one field `Q(zeta_N)`. Elements are reduced polynomials in
//! `zeta` modulo the cyclotomic polynomial `Phi_N`.
//!
//! The element type [`Cyclotomic`] is generic over its [`Coefficient`]
//! scalar. The crate works with exact rationals throughout
//! ([`crate::CycNum`]); the `f64` instance exists for quick numerical
//! experiments and is never used for comparisons.

mod coeff;
mod number;
mod poly;

use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

pub use coeff::{Coefficient, Modulus};
pub use number::{Cyclotomic, CyclotomicField};
pub use poly::{cyclotomic_poly, euler_phi, CycPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("galois exponent {t} is not coprime to the order {order}")]
    NotCoprime { t: i64, order: u64 },
    #[error("expected {expected} coefficients, got {got}")]
    BadLength { expected: usize, got: usize },
}

/// `zeta_N^e` as an exact element.
pub fn zeta_pow(order: u64, e: i64) -> Cyclotomic<BigRational> {
    Cyclotomic::zeta_pow(&CyclotomicField::get(order), e)
}

/// Applies `zeta -> zeta^t`.
pub fn galois_apply<T: Coefficient>(a: &Cyclotomic<T>, t: i64) -> Result<Cyclotomic<T>, CycError> {
    a.galois(t)
}

/// Shorthand for the shared field of the given order.
pub fn field(order: u64) -> Arc<CyclotomicField> {
    CyclotomicField::get(order)
}
