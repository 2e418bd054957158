//! The controlling spin-tensor θ^{CD}: forward construction from structural constants and the
//! reverse reconstruction of structural constants from θ.
//!
//! With operators scaled as `M = √2·η` the forward contraction carries the factor
//! `4/(3√2·8)·(1/√2)³ = 1/24` and the reverse one `√2·(1/√2)³ = 1/2`.

use crate::algebra::StructuralConstants;
use crate::error::{Error, Result};
use crate::numerics::{check_tol, CMatrix8, Complex, RMatrix8, DIM};
use crate::spinor::ConnectingOperators;

const FORWARD_SCALE: f64 = 1.0 / 24.0;
const REVERSE_SCALE: f64 = 0.5;
/// `2/N` with `N = 8`.
const IDENTITY_TERM: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaTensor {
    pub mat: CMatrix8,
    pub has_identity_term: bool,
}

impl ThetaTensor {
    /// Wraps a real symmetric matrix.
    pub fn from_real(m: &RMatrix8, has_identity_term: bool) -> Self {
        ThetaTensor {
            mat: CMatrix8::from_real(m),
            has_identity_term,
        }
    }

    pub fn real(&self) -> RMatrix8 {
        self.mat.re()
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// `O·θ·Oᵀ` for a real orthogonal `O`.
    pub fn conjugated(&self, o: &RMatrix8) -> ThetaTensor {
        let oc = CMatrix8::from_real(o);
        ThetaTensor {
            mat: (oc * self.mat) * oc.transpose(),
            has_identity_term: self.has_identity_term,
        }
    }
}

/// `θ[C,D] = (1/24)·Σ η_{lm}^r·M_l[A,B]·M_m[C,A]·M_r[D,B] + (1/4)·δ_{CD}`, the second term only
/// when `has_identity`. `stripped` must already have its identity components removed.
///
/// Fails when θ comes out non-real or non-symmetric beyond `tol`.
pub fn theta_from_constants(
    stripped: &StructuralConstants,
    ops: &ConnectingOperators,
    has_identity: bool,
    tol: f64,
) -> Result<ThetaTensor> {
    check_tol(tol)?;
    let m = &ops.mats;
    // partial[r] = Σ_{l,m} η_{lm}^r · M_m · M_l
    let mut partial = [CMatrix8::zero(); DIM];
    for l in 0..DIM {
        for mm in 0..DIM {
            let coeffs = stripped.0[l][mm];
            if coeffs.iter().all(|&x| x == 0.0) {
                continue;
            }
            let prod = m[mm] * m[l];
            for (r, &eta) in coeffs.iter().enumerate() {
                if eta != 0.0 {
                    partial[r] = partial[r] + prod.scale(Complex::new(eta, 0.0));
                }
            }
        }
    }
    let mut theta = CMatrix8::zero();
    for r in 0..DIM {
        theta = theta + partial[r] * m[r].transpose();
    }
    theta = theta.scale(Complex::new(FORWARD_SCALE, 0.0));
    if has_identity {
        for k in 0..DIM {
            theta[(k, k)] += IDENTITY_TERM;
        }
    }

    let (imag, row, col) = theta.max_imag();
    if imag > tol {
        return Err(Error::NotReal {
            quantity: "theta",
            row,
            col,
            imag,
        });
    }
    for row in 0..DIM {
        for col in 0..row {
            let deviation = (theta[(row, col)] - theta[(col, row)]).norm();
            if deviation > tol {
                return Err(Error::SymmetryViolation {
                    row,
                    col,
                    deviation,
                });
            }
        }
    }
    Ok(ThetaTensor {
        mat: theta,
        has_identity_term: has_identity,
    })
}

/// Full structural constants `η_{ij}^k = (1/2)·Σ M_j[C,A]·M_i[A,B]·M_k[D,B]·θ[C,D]`.
pub fn reconstruct_constants(
    theta: &ThetaTensor,
    ops: &ConnectingOperators,
    tol: f64,
) -> Result<StructuralConstants> {
    check_tol(tol)?;
    let m = &ops.mats;
    // Σ_D M_k[D,B] θ[C,D] = (θ·M_k)[C,B]
    let theta_m: Vec<CMatrix8> = m.iter().map(|mk| &theta.mat * mk).collect();
    let mut out = StructuralConstants::zero();
    let mut worst_imag = (0.0, 0, 0);
    for i in 0..DIM {
        for j in 0..DIM {
            // Σ_A M_j[C,A] M_i[A,B] = (M_j·M_i)[C,B]
            let ji = m[j] * m[i];
            for k in 0..DIM {
                let mut s = Complex::new(0.0, 0.0);
                for c in 0..DIM {
                    for b in 0..DIM {
                        s += ji[(c, b)] * theta_m[k][(c, b)];
                    }
                }
                s *= REVERSE_SCALE;
                if s.im.abs() > worst_imag.0 {
                    worst_imag = (s.im.abs(), i, j);
                }
                out.0[i][j][k] = s.re;
            }
        }
    }
    if worst_imag.0 > tol {
        return Err(Error::NotReal {
            quantity: "reconstructed structural constants",
            row: worst_imag.1,
            col: worst_imag.2,
            imag: worst_imag.0,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, strip_identity_components};
    use crate::spinor::standard_operators;

    fn theta_of(name: &str) -> ThetaTensor {
        let t = builtin(name).unwrap();
        let c = strip_identity_components(&t.structural_constants());
        theta_from_constants(&c, &standard_operators(), t.has_identity(), 1e-9).unwrap()
    }

    fn assert_diag(theta: &ThetaTensor, d: [f64; DIM]) {
        let r = theta.real();
        for a in 0..DIM {
            for b in 0..DIM {
                let want = if a == b { d[a] } else { 0.0 };
                assert!(
                    (r[a][b] - want).abs() < 1e-9,
                    "[{a},{b}] = {} want {want}",
                    r[a][b]
                );
            }
        }
    }

    #[test]
    fn octonion_theta() {
        let th = theta_of("octonion");
        assert!((th.trace() - 2.0).abs() < 1e-12);
        assert_diag(&th, [2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn quaternion_analog_theta() {
        assert_diag(
            &theta_of("quaternion-analog"),
            [0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0],
        );
    }

    #[test]
    fn carcass_theta_without_identity_term() {
        let th = theta_of("carcass");
        assert!(!th.has_identity_term);
        assert_diag(&th, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn zero_theta_reconstructs_zero() {
        let th = ThetaTensor::from_real(&[[0.0; DIM]; DIM], false);
        let c = reconstruct_constants(&th, &standard_operators(), 1e-9).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn octonion_round_trip() {
        let t = builtin("octonion").unwrap();
        let back =
            reconstruct_constants(&theta_of("octonion"), &standard_operators(), 1e-9).unwrap();
        assert!(back.max_abs_diff(&t.structural_constants()) < 1e-8);
        for k in 1..DIM {
            assert!((back[(0, k, k)] - 1.0).abs() < 1e-12);
            assert!((back[(k, k, 0)] + 1.0).abs() < 1e-12);
        }
    }
}
