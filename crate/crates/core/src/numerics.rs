//! Fixed-size complex linear algebra, a cyclic Jacobi eigensolver for real symmetric 8×8
//! matrices, and rank/nullspace by Gaussian elimination.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub use num_complex::Complex64 as Complex;

/// Dimension of both the base space and the spinor space.
pub const DIM: usize = 8;

/// Default tolerance for symmetry/realness checks and elimination pivots.
pub const DEFAULT_TOL: f64 = 1e-9;

pub type RMatrix8 = [[f64; DIM]; DIM];

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::BadTolerance(tol))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix8(pub [[Complex; DIM]; DIM]);

impl Default for CMatrix8 {
    fn default() -> Self {
        Self::zero()
    }
}

impl CMatrix8 {
    pub fn zero() -> Self {
        CMatrix8([[Complex::new(0.0, 0.0); DIM]; DIM])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..DIM {
            m.0[k][k] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real(r: &RMatrix8) -> Self {
        let mut m = Self::zero();
        for (row, src) in m.0.iter_mut().zip(r) {
            for (z, &x) in row.iter_mut().zip(src) {
                *z = Complex::new(x, 0.0);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for a in 0..DIM {
            for b in 0..DIM {
                t.0[b][a] = self.0[a][b];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        let mut c = *self;
        c.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        c
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut c = *self;
        c.0.iter_mut().flatten().for_each(|z| *z *= s);
        c
    }

    pub fn trace(&self) -> Complex {
        (0..DIM).map(|k| self.0[k][k]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest |imaginary part| together with its position.
    pub fn max_imag(&self) -> (f64, usize, usize) {
        let mut best = (0.0, 0, 0);
        for a in 0..DIM {
            for b in 0..DIM {
                let v = self.0[a][b].im.abs();
                if v > best.0 {
                    best = (v, a, b);
                }
            }
        }
        best
    }

    pub fn re(&self) -> RMatrix8 {
        let mut r = [[0.0; DIM]; DIM];
        for a in 0..DIM {
            for b in 0..DIM {
                r[a][b] = self.0[a][b].re;
            }
        }
        r
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..DIM).all(|a| (0..a).all(|b| (self.0[a][b] - self.0[b][a]).norm() <= tol))
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        (0..DIM).all(|a| (0..=a).all(|b| (self.0[a][b] + self.0[b][a]).norm() <= tol))
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().flatten().filter(|z| z.norm() != 0.0).count()
    }
}

impl Index<(usize, usize)> for CMatrix8 {
    type Output = Complex;
    fn index(&self, (a, b): (usize, usize)) -> &Complex {
        &self.0[a][b]
    }
}

impl IndexMut<(usize, usize)> for CMatrix8 {
    fn index_mut(&mut self, (a, b): (usize, usize)) -> &mut Complex {
        &mut self.0[a][b]
    }
}

impl Mul for &CMatrix8 {
    type Output = CMatrix8;
    fn mul(self, rhs: &CMatrix8) -> CMatrix8 {
        let mut out = CMatrix8::zero();
        for a in 0..DIM {
            for k in 0..DIM {
                let x = self.0[a][k];
                if x.re == 0.0 && x.im == 0.0 {
                    continue;
                }
                for b in 0..DIM {
                    out.0[a][b] += x * rhs.0[k][b];
                }
            }
        }
        out
    }
}

impl Mul for CMatrix8 {
    type Output = CMatrix8;
    #[allow(clippy::op_ref)]
    fn mul(self, rhs: CMatrix8) -> CMatrix8 {
        &self * &rhs
    }
}

impl Add for CMatrix8 {
    type Output = CMatrix8;
    fn add(mut self, rhs: CMatrix8) -> CMatrix8 {
        for (x, y) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *x += *y;
        }
        self
    }
}

impl Sub for CMatrix8 {
    type Output = CMatrix8;
    fn sub(mut self, rhs: CMatrix8) -> CMatrix8 {
        for (x, y) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *x -= *y;
        }
        self
    }
}

impl Neg for CMatrix8 {
    type Output = CMatrix8;
    fn neg(self) -> CMatrix8 {
        self.scale(Complex::new(-1.0, 0.0))
    }
}

/// Dense 8×8×8 complex tensor, indexed `[i][j][k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CTensor3(pub Box<[[[Complex; DIM]; DIM]; DIM]>);

impl Default for CTensor3 {
    fn default() -> Self {
        Self::zero()
    }
}

impl CTensor3 {
    pub fn zero() -> Self {
        CTensor3(Box::new([[[Complex::new(0.0, 0.0); DIM]; DIM]; DIM]))
    }

    pub fn max_imag(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .flatten()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize, usize)> for CTensor3 {
    type Output = Complex;
    fn index(&self, (i, j, k): (usize, usize, usize)) -> &Complex {
        &self.0[i][j][k]
    }
}

impl IndexMut<(usize, usize, usize)> for CTensor3 {
    fn index_mut(&mut self, (i, j, k): (usize, usize, usize)) -> &mut Complex {
        &mut self.0[i][j][k]
    }
}

pub fn rmat_mul(a: &RMatrix8, b: &RMatrix8) -> RMatrix8 {
    let mut out = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            for j in 0..DIM {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn rmat_transpose(a: &RMatrix8) -> RMatrix8 {
    let mut t = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            t[j][i] = a[i][j];
        }
    }
    t
}

fn off_diagonal_norm(m: &RMatrix8) -> f64 {
    let mut s = 0.0;
    for p in 0..DIM {
        for q in 0..DIM {
            if p != q {
                s += m[p][q] * m[p][q];
            }
        }
    }
    s.sqrt()
}

/// All eigenvalues of a real symmetric 8×8 matrix, sorted descending.
///
/// Cyclic Jacobi rotations are applied until the off-diagonal Frobenius norm drops below `tol`.
/// The input must be symmetric to within `tol`.
pub fn symmetric_eigenvalues(m: &RMatrix8, tol: f64) -> Result<[f64; DIM]> {
    const MAX_SWEEPS: usize = 100;
    check_tol(tol)?;
    for row in 0..DIM {
        for col in 0..row {
            let deviation = (m[row][col] - m[col][row]).abs();
            if deviation > tol || !deviation.is_finite() {
                return Err(Error::SymmetryViolation {
                    row,
                    col,
                    deviation,
                });
            }
        }
    }

    let mut a = *m;
    // symmetrize so the rotations below see an exactly symmetric matrix
    for p in 0..DIM {
        for q in 0..p {
            let avg = 0.5 * (a[p][q] + a[q][p]);
            a[p][q] = avg;
            a[q][p] = avg;
        }
    }

    let mut sweeps = 0;
    while off_diagonal_norm(&a) >= tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(off_diagonal_norm(&a)));
        }
        sweeps += 1;
        for p in 0..DIM - 1 {
            for q in p + 1..DIM {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..DIM {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..DIM {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eig = [0.0; DIM];
    for (k, e) in eig.iter_mut().enumerate() {
        *e = a[k][k];
    }
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Nullspace {
    pub rank: usize,
    /// Basis of the nullspace, each vector of length `ncols`.
    pub basis: Vec<Vec<f64>>,
}

/// Rank and a nullspace basis of a dense `rows.len() × ncols` matrix.
///
/// Reduced row echelon form by Gaussian elimination, pivoting on the largest remaining
/// entry of each column. Entries with modulus at most `tol` count as zero.
pub fn rank_and_nullspace(rows: &[Vec<f64>], ncols: usize, tol: f64) -> Result<Nullspace> {
    check_tol(tol)?;
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m {
            break;
        }
        let (best, val) = (r..m)
            .map(|i| (i, a[i][col].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol {
            for row in a.iter_mut().skip(r) {
                row[col] = 0.0;
            }
            continue;
        }
        a.swap(r, best);
        let piv = a[r][col];
        for x in a[r].iter_mut() {
            *x /= piv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col];
            if f != 0.0 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }

    let mut basis = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0.0; ncols];
        v[free] = 1.0;
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -a[row][free];
        }
        basis.push(v);
    }
    Ok(Nullspace {
        rank: pivots.len(),
        basis,
    })
}
