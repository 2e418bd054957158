#![allow(clippy::needless_range_loop)]

//! Classification of 8-dimensional hypercomplex algebras through the spectrum of a symmetric
//! spin-tensor θ built from their structural constants.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod report;
pub mod spinor;
pub mod stabilizer;
pub mod theta;

pub use algebra::{builtin, parse_table, MultiplicationTable, StructuralConstants};
pub use classify::{compare, signature, ClassificationReport, Signature, Verdict};
pub use error::{Error, Result};
pub use spinor::{standard_operators, ConnectingOperators};
pub use stabilizer::{stabilizer_dimension, StabilizerReport};
pub use theta::{reconstruct_constants, theta_from_constants, ThetaTensor};
