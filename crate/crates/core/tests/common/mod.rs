#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spintheta::algebra::{MultiplicationTable, SignedBasisRef};
use spintheta::numerics::{RMatrix8, DIM};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn diag(d: [f64; DIM]) -> RMatrix8 {
    let mut m = [[0.0; DIM]; DIM];
    for k in 0..DIM {
        m[k][k] = d[k];
    }
    m
}

/// Expected θ for each built-in, written out entry by entry.
pub fn expected_theta(name: &str) -> RMatrix8 {
    match name {
        "octonion" => diag([2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        "gen-octonion-e1" => diag([1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        "quaternion-analog" => diag([0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0]),
        "carcass" => diag([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
        "gen-octonion-e4" => diag([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
        "octonion-noncanonical" => {
            let mut m = [[0.0; DIM]; DIM];
            m[0][0] = 1.0;
            m[0][1] = 1.0;
            m[1][0] = 1.0;
            m[1][1] = 1.0;
            m
        }
        other => panic!("no expected θ for {other}"),
    }
}

pub fn max_abs_diff(a: &RMatrix8, b: &RMatrix8) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            worst = worst.max((a[i][j] - b[i][j]).abs());
        }
    }
    worst
}

pub fn random_symmetric(rng: &mut StdRng, scale: f64) -> RMatrix8 {
    let mut m = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..=i {
            let x = rng.gen_range(-scale..scale);
            m[i][j] = x;
            m[j][i] = x;
        }
    }
    m
}

pub fn random_antisymmetric(rng: &mut StdRng) -> RMatrix8 {
    let mut m = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..i {
            let x = rng.gen_range(-1.0..1.0);
            m[i][j] = x;
            m[j][i] = -x;
        }
    }
    m
}

/// Gram–Schmidt on a random matrix.
pub fn random_orthogonal(rng: &mut StdRng) -> RMatrix8 {
    let mut q = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        let mut v = [0.0; DIM];
        for x in v.iter_mut() {
            *x = rng.gen_range(-1.0..1.0);
        }
        for prev in q.iter().take(i) {
            let d: f64 = (0..DIM).map(|k| v[k] * prev[k]).sum();
            for k in 0..DIM {
                v[k] -= d * prev[k];
            }
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for k in 0..DIM {
            q[i][k] = v[k] / n;
        }
    }
    q
}

/// Number of eigenvalues of `m` strictly below `x`, from the signs of the pivots of an
/// unpivoted LDLᵀ factorization of `m − x·I`. Each pivot is a ratio of consecutive leading
/// principal minors, i.e. of characteristic polynomials of the leading blocks.
pub fn count_below(m: &RMatrix8, x: f64) -> usize {
    let mut a = *m;
    for k in 0..DIM {
        a[k][k] -= x;
    }
    let mut negatives = 0;
    for k in 0..DIM {
        let mut p = a[k][k];
        if p == 0.0 {
            p = -1e-300;
        }
        if p < 0.0 {
            negatives += 1;
        }
        for i in k + 1..DIM {
            let f = a[i][k] / p;
            for j in k + 1..DIM {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    negatives
}

/// Eigenvalues sorted descending, by bisection on `count_below`.
pub fn oracle_eigenvalues(m: &RMatrix8) -> [f64; DIM] {
    let bound = (0..DIM)
        .map(|i| (0..DIM).map(|j| m[i][j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let mut out = [0.0; DIM];
    for (k, slot) in out.iter_mut().enumerate() {
        // k-th largest = (DIM-1-k)-th smallest; find the smallest x with count_below(x) > that index
        let idx = DIM - 1 - k;
        let (mut lo, mut hi) = (-bound, bound);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if count_below(m, mid) > idx {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        *slot = 0.5 * (lo + hi);
    }
    out
}

/// Relabels `e1..e7` as `e'_k = signs[k]·e_{perm[k]}`; `e0` stays put.
pub fn relabel(
    table: &MultiplicationTable,
    perm: [usize; 7],
    signs: [f64; 7],
) -> MultiplicationTable {
    let mut p = [0usize; DIM];
    let mut s = [1.0; DIM];
    p[1..].copy_from_slice(&perm);
    s[1..].copy_from_slice(&signs);
    let mut inv = [0usize; DIM];
    for k in 0..DIM {
        inv[p[k]] = k;
    }
    let mut cells = [[SignedBasisRef::Zero; DIM]; DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            cells[a][b] = match table.product(p[a], p[b]) {
                SignedBasisRef::Zero => SignedBasisRef::Zero,
                r => {
                    // e_r = s'·e'_{inv r} with s' = s[inv r]
                    let index = match r {
                        SignedBasisRef::Unit { index, .. } => index,
                        SignedBasisRef::Zero => unreachable!(),
                    };
                    let c = inv[index];
                    let sign = s[a] * s[b] * r.sign() * s[c];
                    if sign > 0.0 {
                        SignedBasisRef::plus(c)
                    } else {
                        SignedBasisRef::minus(c)
                    }
                }
            };
        }
    }
    MultiplicationTable::new(format!("{}-relabelled", table.name()), cells)
}

/// Sign of the signed permutation acting on `e1..e7`.
pub fn relabel_det(perm: [usize; 7], signs: [f64; 7]) -> f64 {
    let mut seen = [false; 7];
    let mut parity = 1.0;
    for start in 0..7 {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k] - 1;
            len += 1;
        }
        if len % 2 == 0 {
            parity = -parity;
        }
    }
    parity * signs.iter().product::<f64>()
}

pub fn random_relabel(rng: &mut StdRng) -> ([usize; 7], [f64; 7]) {
    let mut perm = [1, 2, 3, 4, 5, 6, 7];
    for i in (1..7).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let mut signs = [1.0; 7];
    for s in signs.iter_mut() {
        if rng.gen_bool(0.5) {
            *s = -1.0;
        }
    }
    (perm, signs)
}

/// Seven identity rows written out by hand, as `((A, B), coefficient)` with 1-based labels.
pub const IDENTITY_ROWS: [[((usize, usize), f64); 4]; 7] = [
    [((1, 2), -1.0), ((3, 4), -1.0), ((5, 6), 1.0), ((7, 8), 1.0)],
    [((1, 3), 1.0), ((2, 4), -1.0), ((5, 7), -1.0), ((6, 8), 1.0)],
    [((1, 4), -1.0), ((2, 3), -1.0), ((5, 8), 1.0), ((6, 7), 1.0)],
    [((1, 5), 1.0), ((2, 6), 1.0), ((3, 7), 1.0), ((4, 8), 1.0)],
    [((1, 6), 1.0), ((2, 5), -1.0), ((3, 8), -1.0), ((4, 7), 1.0)],
    [((1, 7), -1.0), ((2, 8), -1.0), ((3, 5), 1.0), ((4, 6), 1.0)],
    [((1, 8), 1.0), ((2, 7), -1.0), ((3, 6), 1.0), ((4, 5), -1.0)],
];

pub fn sparse_row(entries: &[((usize, usize), f64)]) -> Vec<f64> {
    let mut row = vec![0.0; spintheta::stabilizer::NCOORDS];
    for &((a, b), c) in entries {
        row[spintheta::stabilizer::coordinate_index(a - 1, b - 1).unwrap()] = c;
    }
    row
}

/// `T1B = 0` for `B = 2..8`.
pub fn first_row_constraints() -> Vec<Vec<f64>> {
    (2..=8).map(|b| sparse_row(&[((1, b), 1.0)])).collect()
}

pub fn rank(rows: &[Vec<f64>]) -> usize {
    spintheta::numerics::rank_and_nullspace(rows, spintheta::stabilizer::NCOORDS, 1e-9)
        .unwrap()
        .rank
}

pub fn fixture(name: &str) -> MultiplicationTable {
    let path = format!("{}/tables/as-printed/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    spintheta::parse_table(&text, name).unwrap()
}
