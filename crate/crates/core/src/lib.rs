//! Modular data of the quantum orthogonal categories `B^n_k` and `D^n_k`
//! (Weyl-formula construction over exact cyclotomic fields), their refined
//! Verlinde dimensions and refined Reshetikhin-Turaev invariants of plumbed
//! 3-manifolds.

pub mod catdata;
pub mod cli;
pub mod cyclo;
mod error;
pub mod roots;
pub mod surgery;
pub mod verlinde;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Exact cyclotomic number.
pub type CycNum = cyclo::Cyclotomic<BigRational>;
/// Floating-point cyclotomic number, for numeric cross-checks only.
pub type FloatCycNum = cyclo::Cyclotomic<f64>;
