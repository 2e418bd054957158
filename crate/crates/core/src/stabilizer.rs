//! Infinitesimal automorphisms: linear constraints on an antisymmetric spinor generator `T`
//! and the dimension of the stabilizer they cut out.
//!
//! Coordinates are the 28 entries `T_{AB}`, `A < B`, in lexicographic order.

use std::fmt;

use crate::algebra::MultiplicationTable;
use crate::classify::theta_of_table;
use crate::error::Result;
use crate::numerics::{rank_and_nullspace, RMatrix8, DEFAULT_TOL, DIM};
use crate::spinor::{standard_operators, ConnectingOperators};
use crate::theta::ThetaTensor;

pub const NCOORDS: usize = DIM * (DIM - 1) / 2;

/// `(A, B)` for each coordinate, 0-based.
pub fn coordinate_pairs() -> [(usize, usize); NCOORDS] {
    let mut out = [(0, 0); NCOORDS];
    let mut k = 0;
    for a in 0..DIM {
        for b in a + 1..DIM {
            out[k] = (a, b);
            k += 1;
        }
    }
    out
}

pub fn coordinate_index(a: usize, b: usize) -> Option<usize> {
    if a >= b || b >= DIM {
        return None;
    }
    // pairs before row a: Σ_{r<a} (DIM-1-r)
    Some(a * (2 * DIM - a - 1) / 2 + (b - a - 1))
}

/// The antisymmetric matrix with the given upper-triangle coordinates.
pub fn generator_matrix(coords: &[f64]) -> RMatrix8 {
    let mut t = [[0.0; DIM]; DIM];
    for (&(a, b), &x) in coordinate_pairs().iter().zip(coords) {
        t[a][b] = x;
        t[b][a] = -x;
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintOrigin {
    /// Preservation of the identity element, from operator `i`.
    Identity { operator: usize },
    /// Commutation with θ at entry `(a, b)`, `a ≤ b`.
    Theta { a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: [f64; NCOORDS],
    pub origin: ConstraintOrigin,
}

impl Constraint {
    /// Scales to unit max-norm; θ rows additionally get a positive leading coefficient.
    fn normalized(mut coeffs: [f64; NCOORDS], origin: ConstraintOrigin) -> Self {
        let mut scale = coeffs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if let ConstraintOrigin::Theta { .. } = origin {
            let lead = coeffs
                .iter()
                .find(|c| c.abs() > DEFAULT_TOL)
                .copied()
                .unwrap_or(1.0);
            scale = scale.copysign(lead);
        }
        for c in coeffs.iter_mut() {
            *c /= scale;
        }
        Constraint { coeffs, origin }
    }

    pub fn evaluate(&self, coords: &[f64]) -> f64 {
        self.coeffs.iter().zip(coords).map(|(c, x)| c * x).sum()
    }
}

/// Prints e.g. `-T12 -T34 +T56 +T78 = 0` with 1-based labels.
impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(a, b), &c) in coordinate_pairs().iter().zip(&self.coeffs) {
            if c.abs() < 1e-12 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let sign = if c < 0.0 { '-' } else { '+' };
            if (c.abs() - 1.0).abs() < 1e-12 {
                write!(f, "{sign}T{}{}", a + 1, b + 1)?;
            } else {
                write!(f, "{sign}{:.4}*T{}{}", c.abs(), a + 1, b + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" = 0")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConstraintSystem {
    pub rows: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.coeffs.to_vec()).collect()
    }

    pub fn rank(&self, tol: f64) -> Result<usize> {
        Ok(rank_and_nullspace(&self.matrix(), NCOORDS, tol)?.rank)
    }

    pub fn stacked(&self, other: &ConstraintSystem) -> ConstraintSystem {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        ConstraintSystem { rows }
    }

    /// Drops zero rows and rows already present after normalization.
    fn push(&mut self, coeffs: [f64; NCOORDS], origin: ConstraintOrigin) {
        if coeffs.iter().all(|c| c.abs() <= DEFAULT_TOL) {
            return;
        }
        let row = Constraint::normalized(coeffs, origin);
        let duplicate = self.rows.iter().any(|r| {
            r.coeffs
                .iter()
                .zip(&row.coeffs)
                .all(|(x, y)| (x - y).abs() <= DEFAULT_TOL)
        });
        if !duplicate {
            self.rows.push(row);
        }
    }
}

/// `Σ_{A,B} M_i[A,B]·T_{AB} = 0` for each operator; real and imaginary parts give separate rows.
pub fn identity_constraints(ops: &ConnectingOperators) -> ConstraintSystem {
    let mut sys = ConstraintSystem::default();
    for (i, m) in ops.mats.iter().enumerate() {
        let mut re = [0.0; NCOORDS];
        let mut im = [0.0; NCOORDS];
        for (k, &(a, b)) in coordinate_pairs().iter().enumerate() {
            let d = (m[(a, b)] - m[(b, a)]) * 0.5;
            re[k] = d.re;
            im[k] = d.im;
        }
        sys.push(re, ConstraintOrigin::Identity { operator: i });
        sys.push(im, ConstraintOrigin::Identity { operator: i });
    }
    sys
}

/// `[T, θ] = 0`. For antisymmetric `T` and symmetric θ the commutator is symmetric, so the
/// entries `a ≤ b` suffice.
pub fn theta_constraints(theta: &ThetaTensor) -> ConstraintSystem {
    let th = theta.real();
    // commutator of each unit generator with θ
    let comms: Vec<RMatrix8> = (0..NCOORDS)
        .map(|k| {
            let mut unit = [0.0; NCOORDS];
            unit[k] = 1.0;
            commutator(&generator_matrix(&unit), &th)
        })
        .collect();
    let mut sys = ConstraintSystem::default();
    for a in 0..DIM {
        for b in a..DIM {
            let mut coeffs = [0.0; NCOORDS];
            for (k, c) in comms.iter().enumerate() {
                coeffs[k] = c[a][b];
            }
            sys.push(coeffs, ConstraintOrigin::Theta { a, b });
        }
    }
    sys
}

fn commutator(x: &RMatrix8, y: &RMatrix8) -> RMatrix8 {
    let mut out = [[0.0; DIM]; DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            out[a][b] = (0..DIM)
                .map(|c| x[a][c] * y[c][b] - y[a][c] * x[c][b])
                .sum();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerReport {
    pub dimension: usize,
    pub rank_identity: usize,
    pub rank_theta: usize,
    pub rank_combined: usize,
    /// Empty when the algebra has no identity.
    pub identity: ConstraintSystem,
    pub theta: ConstraintSystem,
    /// Basis of the admissible generators, in coordinates.
    pub nullspace: Vec<Vec<f64>>,
}

pub fn stabilizer_dimension(table: &MultiplicationTable) -> Result<StabilizerReport> {
    stabilizer_dimension_with(table, &standard_operators())
}

pub fn stabilizer_dimension_with(
    table: &MultiplicationTable,
    ops: &ConnectingOperators,
) -> Result<StabilizerReport> {
    let theta = theta_of_table(table, ops, DEFAULT_TOL)?;
    let identity = if table.has_identity() {
        identity_constraints(ops)
    } else {
        ConstraintSystem::default()
    };
    stabilizer_of(identity, theta_constraints(&theta))
}

pub fn stabilizer_of(
    identity: ConstraintSystem,
    theta: ConstraintSystem,
) -> Result<StabilizerReport> {
    let combined = rank_and_nullspace(&identity.stacked(&theta).matrix(), NCOORDS, DEFAULT_TOL)?;
    Ok(StabilizerReport {
        dimension: NCOORDS - combined.rank,
        rank_identity: identity.rank(DEFAULT_TOL)?,
        rank_theta: theta.rank(DEFAULT_TOL)?,
        rank_combined: combined.rank,
        identity,
        theta,
        nullspace: combined.basis,
    })
}

/// `max_i |Σ_{A,B} M_i[A,B]·T[A][B]|`.
pub fn identity_residual(t: &RMatrix8, ops: &ConnectingOperators) -> f64 {
    ops.mats
        .iter()
        .map(|m| {
            let mut s = crate::numerics::Complex::new(0.0, 0.0);
            for a in 0..DIM {
                for b in 0..DIM {
                    s += m[(a, b)] * t[a][b];
                }
            }
            s.norm()
        })
        .fold(0.0, f64::max)
}

/// `max_{A,B} |Σ_C T[A][C]·θ[C][B] + T[B][C]·θ[A][C]|`.
pub fn theta_residual(t: &RMatrix8, theta: &RMatrix8) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..DIM {
        for b in 0..DIM {
            let s: f64 = (0..DIM)
                .map(|c| t[a][c] * theta[c][b] + t[b][c] * theta[a][c])
                .sum();
            worst = worst.max(s.abs());
        }
    }
    worst
}
