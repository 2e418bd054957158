//! Connecting operators between the base space and the spinor space.
//!
//! Operators are stored scaled by √2, so `M_i = √2·η_i^{AB}` has entries in `{0, ±1, ±i}` in the
//! seed ("old") basis. Production code works in the "new" basis reached through [`BasisChange`],
//! where the metric spin-tensor is the identity and every operator is real.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::numerics::{CMatrix8, Complex, RMatrix8, DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Old,
    New,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectingOperators {
    pub mats: [CMatrix8; DIM],
    pub basis: Basis,
}

const RE: (f64, f64) = (1.0, 0.0);
const NEG_RE: (f64, f64) = (-1.0, 0.0);
const IM: (f64, f64) = (0.0, 1.0);
const NEG_IM: (f64, f64) = (0.0, -1.0);

type SeedEntry = (usize, usize, (f64, f64));

/// Upper-triangle seed entries `(A, B, M_i[A,B])`, 1-based spinor labels, one row per `i`.
/// `M_1` is completed symmetrically and `M_2..M_8` antisymmetrically.
const SEED: [[SeedEntry; 4]; DIM] = [
    [(1, 5, RE), (2, 6, RE), (3, 7, RE), (4, 8, RE)],
    [
        (1, 2, NEG_RE),
        (3, 4, NEG_RE),
        (5, 6, NEG_RE),
        (7, 8, NEG_RE),
    ],
    [(1, 5, IM), (2, 6, IM), (3, 7, IM), (4, 8, IM)],
    [(1, 2, NEG_IM), (3, 4, IM), (5, 6, IM), (7, 8, NEG_IM)],
    [(1, 4, NEG_IM), (2, 3, IM), (5, 8, IM), (6, 7, NEG_IM)],
    [(1, 3, IM), (2, 4, IM), (5, 7, NEG_IM), (6, 8, NEG_IM)],
    [
        (1, 4, NEG_RE),
        (2, 3, NEG_RE),
        (5, 8, NEG_RE),
        (6, 7, NEG_RE),
    ],
    [(1, 3, RE), (2, 4, NEG_RE), (5, 7, RE), (6, 8, NEG_RE)],
];

/// Seed operators in the old spinor basis.
pub fn build_seed_operators() -> ConnectingOperators {
    let mut mats = [CMatrix8::zero(); DIM];
    for (i, (m, entries)) in mats.iter_mut().zip(SEED).enumerate() {
        let lower = if i == 0 { 1.0 } else { -1.0 };
        for (a, b, (re, im)) in entries {
            let v = Complex::new(re, im);
            m[(a - 1, b - 1)] = v;
            m[(b - 1, a - 1)] = v * lower;
        }
    }
    ConnectingOperators {
        mats,
        basis: Basis::Old,
    }
}

/// The metric spin-tensor `ε` as a matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSpinTensor(pub CMatrix8);

impl MetricSpinTensor {
    /// `[[0, E], [E, 0]]` with `E` the 4×4 identity.
    pub fn old_basis() -> Self {
        let mut m = CMatrix8::zero();
        for k in 0..4 {
            m[(k, k + 4)] = Complex::new(1.0, 0.0);
            m[(k + 4, k)] = Complex::new(1.0, 0.0);
        }
        MetricSpinTensor(m)
    }

    pub fn new_basis() -> Self {
        MetricSpinTensor(CMatrix8::identity())
    }
}

/// Spinor basis change `U`; operators transform as `U·M·Uᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange(pub CMatrix8);

impl BasisChange {
    /// `(1/√2)·[[E, E], [−iE, iE]]`.
    pub fn standard() -> Self {
        let mut u = CMatrix8::zero();
        let r = Complex::new(FRAC_1_SQRT_2, 0.0);
        let i = Complex::new(0.0, FRAC_1_SQRT_2);
        for k in 0..4 {
            u[(k, k)] = r;
            u[(k, k + 4)] = r;
            u[(k + 4, k)] = -i;
            u[(k + 4, k + 4)] = i;
        }
        BasisChange(u)
    }

    pub fn identity() -> Self {
        BasisChange(CMatrix8::identity())
    }

    /// Orthogonal change of basis within the new basis, used for covariance checks.
    pub fn from_real(o: &RMatrix8) -> Self {
        BasisChange(CMatrix8::from_real(o))
    }

    /// `U·ε·Uᵀ`.
    pub fn transform_metric(&self, eps: &MetricSpinTensor) -> CMatrix8 {
        (self.0 * eps.0) * self.0.transpose()
    }
}

pub fn change_spinor_basis(ops: &ConnectingOperators, u: &BasisChange) -> ConnectingOperators {
    let ut = u.0.transpose();
    let mats = ops.mats.map(|m| (u.0 * m) * ut);
    ConnectingOperators {
        mats,
        basis: Basis::New,
    }
}

/// Seed operators moved to the new basis. This is the operator family every pipeline uses.
pub fn standard_operators() -> ConnectingOperators {
    change_spinor_basis(&build_seed_operators(), &BasisChange::standard())
}

/// Antisymmetric spinor-side generator `T_C^A`, stored as `mat[C][A]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorGenerator(pub CMatrix8);

/// Maps an antisymmetric vector-side generator `T^{ij}` to the spinor side:
/// `T_C^A = (1/4)·Σ_{i,j,B} T^{ij}·M_j[A,B]·M_i[C,B]`.
pub fn vector_to_spinor_generator(
    t: &RMatrix8,
    ops: &ConnectingOperators,
    tol: f64,
) -> Result<SpinorGenerator> {
    crate::numerics::check_tol(tol)?;
    for row in 0..DIM {
        for col in 0..=row {
            let deviation = (t[row][col] + t[col][row]).abs();
            if deviation > tol {
                return Err(Error::AntisymmetryViolation {
                    row,
                    col,
                    deviation,
                });
            }
        }
    }
    let mut out = CMatrix8::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            if t[i][j] == 0.0 {
                continue;
            }
            // Σ_B M_i[C,B] M_j[A,B] = (M_i M_jᵀ)[C,A]
            let p = ops.mats[i] * ops.mats[j].transpose();
            out = out + p.scale(Complex::new(0.25 * t[i][j], 0.0));
        }
    }
    let (imag, row, col) = out.max_imag();
    if imag > tol {
        return Err(Error::NotReal {
            quantity: "spinor generator",
            row,
            col,
            imag,
        });
    }
    if !out.is_antisymmetric(tol) {
        let (row, col, deviation) = worst_antisymmetry(&out);
        return Err(Error::AntisymmetryViolation {
            row,
            col,
            deviation,
        });
    }
    Ok(SpinorGenerator(out))
}

fn worst_antisymmetry(m: &CMatrix8) -> (usize, usize, f64) {
    let mut best = (0, 0, 0.0);
    for a in 0..DIM {
        for b in 0..=a {
            let d = (m[(a, b)] + m[(b, a)]).norm();
            if d > best.2 {
                best = (a, b, d);
            }
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjointConvention {
    ConjugateTranspose,
    Transpose,
}

impl AdjointConvention {
    /// Convention under which the standard operators satisfy the Clifford relation.
    pub const FROZEN: AdjointConvention = AdjointConvention::ConjugateTranspose;

    fn apply(&self, m: &CMatrix8) -> CMatrix8 {
        match self {
            AdjointConvention::ConjugateTranspose => m.adjoint(),
            AdjointConvention::Transpose => m.transpose(),
        }
    }
}

/// `max_{i,j} |M_i·M_j* + M_j·M_i* − 2δ_ij·I|_∞` under the given adjoint.
pub fn clifford_residual(ops: &ConnectingOperators, adjoint: AdjointConvention) -> f64 {
    let adj: Vec<CMatrix8> = ops.mats.iter().map(|m| adjoint.apply(m)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..DIM {
        for j in i..DIM {
            let mut s = ops.mats[i] * adj[j] + ops.mats[j] * adj[i];
            if i == j {
                s = s - CMatrix8::identity().scale(Complex::new(2.0, 0.0));
            }
            worst = worst.max(s.max_abs());
        }
    }
    worst
}

pub fn clifford_diagnostic(ops: &ConnectingOperators) -> f64 {
    clifford_residual(ops, AdjointConvention::FROZEN)
}
