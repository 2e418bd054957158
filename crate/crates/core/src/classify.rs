//! Eigenvalue signatures of θ and the isomorphism decision built on them.

use crate::algebra::{strip_identity_components, MultiplicationTable};
use crate::error::Result;
use crate::numerics::{check_tol, symmetric_eigenvalues, DEFAULT_TOL, DIM};
use crate::spinor::{standard_operators, ConnectingOperators};
use crate::theta::{theta_from_constants, ThetaTensor};

/// Tolerance used when comparing two spectra.
pub const COMPARE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    /// Sorted descending.
    pub eigenvalues: [f64; DIM],
    pub has_identity: bool,
    pub source: String,
}

impl Signature {
    pub fn from_theta(theta: &ThetaTensor, source: impl Into<String>) -> Result<Self> {
        Ok(Signature {
            eigenvalues: symmetric_eigenvalues(&theta.real(), DEFAULT_TOL)?,
            has_identity: theta.has_identity_term,
            source: source.into(),
        })
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn max_deviation(&self, other: &Signature) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&other.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Isomorphic => "isomorphic",
            Verdict::NotIsomorphic => "not-isomorphic",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub a: Signature,
    pub b: Signature,
    pub max_deviation: f64,
}

/// θ of a table: strips the identity components, then builds θ with construction tolerance `tol`.
pub fn theta_of_table(
    table: &MultiplicationTable,
    ops: &ConnectingOperators,
    tol: f64,
) -> Result<ThetaTensor> {
    let stripped = strip_identity_components(&table.structural_constants());
    theta_from_constants(&stripped, ops, table.has_identity(), tol)
}

pub fn signature(table: &MultiplicationTable) -> Result<Signature> {
    signature_with(table, &standard_operators())
}

pub fn signature_with(table: &MultiplicationTable, ops: &ConnectingOperators) -> Result<Signature> {
    Signature::from_theta(&theta_of_table(table, ops, DEFAULT_TOL)?, table.name())
}

/// Signatures with different unitality are never isomorphic, whatever their spectra.
pub fn compare_signatures(a: Signature, b: Signature, tol: f64) -> Result<ClassificationReport> {
    check_tol(tol)?;
    let max_deviation = a.max_deviation(&b);
    let verdict = if a.has_identity == b.has_identity && max_deviation < tol {
        Verdict::Isomorphic
    } else {
        Verdict::NotIsomorphic
    };
    Ok(ClassificationReport {
        verdict,
        a,
        b,
        max_deviation,
    })
}

pub fn compare(
    a: &MultiplicationTable,
    b: &MultiplicationTable,
    tol: f64,
) -> Result<ClassificationReport> {
    compare_signatures(signature(a)?, signature(b)?, tol)
}
