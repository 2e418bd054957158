//! Multiplication tables of 8-dimensional algebras over the reals.
//!
//! Basis elements are labelled `e0..e7`, with `e0` the identity slot. A table cell `(r, c)`
//! holds the product `e_r · e_c`, which is either zero or a signed basis element. Indices are
//! 0-based throughout: `e_k` is index `k`.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numerics::DIM;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignedBasisRef {
    Zero,
    Unit { negative: bool, index: usize },
}

impl SignedBasisRef {
    pub fn plus(index: usize) -> Self {
        assert!(index < DIM);
        SignedBasisRef::Unit {
            negative: false,
            index,
        }
    }

    pub fn minus(index: usize) -> Self {
        assert!(index < DIM);
        SignedBasisRef::Unit {
            negative: true,
            index,
        }
    }

    pub fn sign(&self) -> f64 {
        match self {
            SignedBasisRef::Zero => 0.0,
            SignedBasisRef::Unit { negative: true, .. } => -1.0,
            SignedBasisRef::Unit {
                negative: false, ..
            } => 1.0,
        }
    }

    fn parse(token: &str) -> Option<Self> {
        if token == "0" {
            return Some(SignedBasisRef::Zero);
        }
        let (negative, rest) = match token.as_bytes().first()? {
            b'-' => (true, &token[1..]),
            b'+' => (false, &token[1..]),
            _ => (false, token),
        };
        let digit = rest.strip_prefix('e')?;
        if digit.len() != 1 {
            return None;
        }
        let index = digit.parse::<usize>().ok().filter(|&k| k < DIM)?;
        Some(SignedBasisRef::Unit { negative, index })
    }
}

impl fmt::Display for SignedBasisRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignedBasisRef::Zero => "0".to_string(),
            SignedBasisRef::Unit {
                negative: true,
                index,
            } => format!("-e{index}"),
            SignedBasisRef::Unit {
                negative: false,
                index,
            } => format!("e{index}"),
        };
        f.pad(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    name: String,
    cells: [[SignedBasisRef; DIM]; DIM],
    has_identity: bool,
}

impl MultiplicationTable {
    pub fn new(name: impl Into<String>, cells: [[SignedBasisRef; DIM]; DIM]) -> Self {
        let has_identity = (0..DIM).all(|k| {
            cells[0][k] == SignedBasisRef::plus(k) && cells[k][0] == SignedBasisRef::plus(k)
        });
        MultiplicationTable {
            name: name.into(),
            cells,
            has_identity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn cells(&self) -> &[[SignedBasisRef; DIM]; DIM] {
        &self.cells
    }

    /// True iff `e0` acts as a two-sided identity.
    pub fn has_identity(&self) -> bool {
        self.has_identity
    }

    /// Product `e_r · e_c`.
    pub fn product(&self, r: usize, c: usize) -> SignedBasisRef {
        self.cells[r][c]
    }

    pub fn structural_constants(&self) -> StructuralConstants {
        to_structural_constants(self)
    }

    /// Renders the table in the line format accepted by [`parse_table`].
    pub fn render(&self) -> String {
        let mut out = format!("# {}\n", self.name);
        for row in &self.cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses the table file format: `#` comment lines, then 8 data lines of 8 whitespace-separated
/// tokens `0` or `[+-]?e[0-7]`. Blank lines are ignored.
pub fn parse_table(text: &str, name: &str) -> Result<MultiplicationTable> {
    let mut cells = [[SignedBasisRef::Zero; DIM]; DIM];
    let mut row = 0;
    let mut last_line = 0;
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        last_line = lineno;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if row == DIM {
            return Err(Error::Parse {
                line: lineno,
                column: line.len() - trimmed.len() + 1,
                message: format!("more than {DIM} data lines"),
            });
        }
        let mut col = 0;
        for (offset, token) in tokens_with_offsets(line) {
            if col == DIM {
                return Err(Error::Parse {
                    line: lineno,
                    column: offset + 1,
                    message: format!("more than {DIM} tokens in row"),
                });
            }
            cells[row][col] = SignedBasisRef::parse(token).ok_or_else(|| Error::Parse {
                line: lineno,
                column: offset + 1,
                message: format!("malformed token `{token}`, expected `0` or `[+-]e<0-7>`"),
            })?;
            col += 1;
        }
        if col != DIM {
            return Err(Error::Parse {
                line: lineno,
                column: line.len() + 1,
                message: format!("expected {DIM} tokens, found {col}"),
            });
        }
        row += 1;
    }
    if row != DIM {
        return Err(Error::Parse {
            line: last_line.max(1),
            column: 1,
            message: format!("expected {DIM} data lines, found {row}"),
        });
    }
    Ok(MultiplicationTable::new(name, cells))
}

fn tokens_with_offsets(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut base = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| c != ' ' && c != '\t')?;
        let tail = &rest[start..];
        let len = tail.find([' ', '\t']).unwrap_or(tail.len());
        let token = &tail[..len];
        let offset = base + start;
        base += start + len;
        rest = &tail[len..];
        Some((offset, token))
    })
}

/// Real 8×8×8 tensor `c[l][m][r]` with `e_l · e_m = Σ_r c[l][m][r] e_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuralConstants(pub Box<[[[f64; DIM]; DIM]; DIM]>);

impl StructuralConstants {
    pub fn zero() -> Self {
        StructuralConstants(Box::new([[[0.0; DIM]; DIM]; DIM]))
    }

    pub fn max_abs_diff(&self, other: &StructuralConstants) -> f64 {
        self.0
            .iter()
            .flatten()
            .flatten()
            .zip(other.0.iter().flatten().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().flatten().all(|&x| x == 0.0)
    }

    /// Product of basis elements as an algebra element.
    pub fn basis_product(&self, l: usize, m: usize) -> AlgebraElement {
        AlgebraElement(self.0[l][m])
    }
}

impl Index<(usize, usize, usize)> for StructuralConstants {
    type Output = f64;
    fn index(&self, (l, m, r): (usize, usize, usize)) -> &f64 {
        &self.0[l][m][r]
    }
}

pub fn to_structural_constants(table: &MultiplicationTable) -> StructuralConstants {
    let mut c = StructuralConstants::zero();
    for l in 0..DIM {
        for m in 0..DIM {
            if let SignedBasisRef::Unit { index, .. } = table.cells[l][m] {
                c.0[l][m][index] = table.cells[l][m].sign();
            }
        }
    }
    c
}

/// Copy of `c` with every component touching the identity slot zeroed
/// (`l == 0`, `m == 0` or `r == 0`).
pub fn strip_identity_components(c: &StructuralConstants) -> StructuralConstants {
    let mut s = c.clone();
    for l in 0..DIM {
        for m in 0..DIM {
            for r in 0..DIM {
                if l == 0 || m == 0 || r == 0 {
                    s.0[l][m][r] = 0.0;
                }
            }
        }
    }
    s
}

/// Element `Σ_k coords[k] e_k`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AlgebraElement(pub [f64; DIM]);

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement([0.0; DIM])
    }

    pub fn basis(k: usize) -> Self {
        let mut e = Self::zero();
        e.0[k] = 1.0;
        e
    }

    pub fn coords(&self) -> &[f64; DIM] {
        &self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn scale(mut self, s: f64) -> Self {
        self.0.iter_mut().for_each(|x| *x *= s);
        self
    }
}

impl Add for AlgebraElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.0.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for AlgebraElement {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.0.iter_mut().zip(rhs.0).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Neg for AlgebraElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<AlgebraElement> for f64 {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        rhs.scale(self)
    }
}

pub fn multiply(a: &AlgebraElement, b: &AlgebraElement, c: &StructuralConstants) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for l in 0..DIM {
        if a.0[l] == 0.0 {
            continue;
        }
        for m in 0..DIM {
            let w = a.0[l] * b.0[m];
            if w == 0.0 {
                continue;
            }
            for r in 0..DIM {
                out.0[r] += w * c.0[l][m][r];
            }
        }
    }
    out
}

/// Keeps the `e0` coordinate and negates the rest.
pub fn conjugate(a: &AlgebraElement) -> AlgebraElement {
    let mut out = *a;
    out.0[1..].iter_mut().for_each(|x| *x = -*x);
    out
}

/// `1/2 (a b̄ + b ā)`, which must be a multiple of `e0`; returns that multiple.
pub fn inner_product(
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &StructuralConstants,
    tol: f64,
) -> Result<f64> {
    let sum = multiply(a, &conjugate(b), c) + multiply(b, &conjugate(a), c);
    let half = sum.scale(0.5);
    let residual = half.0[1..].iter().map(|x| x.abs()).fold(0.0, f64::max);
    if residual > tol {
        let (ia, ib) = (leading_index(a), leading_index(b));
        return Err(Error::MetricViolation {
            a: ia,
            b: ib,
            residual,
        });
    }
    Ok(half.0[0])
}

fn leading_index(x: &AlgebraElement) -> usize {
    x.0.iter()
        .enumerate()
        .max_by(|p, q| p.1.abs().total_cmp(&q.1.abs()))
        .map(|(k, _)| k)
        .unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `(ac+ca)b − a(cb) − c(ab) = b(ac+ca) − (ba)c − (bc)a`
    AlternativeElastic,
    /// `a(bc) + c(ba) = (ab)c + (cb)a`
    Elastic,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::AlternativeElastic => "alternative-elastic",
            Identity::Elastic => "elastic",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomViolation {
    pub identity: Identity,
    pub triple: (usize, usize, usize),
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub triples_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn count(&self, identity: Identity) -> usize {
        self.violations
            .iter()
            .filter(|v| v.identity == identity)
            .count()
    }
}

/// Checks the polarized identities over every basis triple `(a, b, c)`.
pub fn check_axioms(table: &MultiplicationTable) -> AxiomReport {
    const TOL: f64 = 1e-12;
    let c = to_structural_constants(table);
    let e = AlgebraElement::basis;
    let mul = |x: &AlgebraElement, y: &AlgebraElement| multiply(x, y, &c);
    let mut violations = Vec::new();
    let mut triples_checked = 0;
    for ia in 0..DIM {
        for ib in 0..DIM {
            for ic in 0..DIM {
                triples_checked += 1;
                let (a, b, cc) = (e(ia), e(ib), e(ic));
                let ac = mul(&a, &cc) + mul(&cc, &a);
                let lhs = mul(&ac, &b) - mul(&a, &mul(&cc, &b)) - mul(&cc, &mul(&a, &b));
                let rhs = mul(&b, &ac) - mul(&mul(&b, &a), &cc) - mul(&mul(&b, &cc), &a);
                let r1 = (lhs - rhs).max_abs();
                if r1 > TOL {
                    violations.push(AxiomViolation {
                        identity: Identity::AlternativeElastic,
                        triple: (ia, ib, ic),
                        residual: r1,
                    });
                }
                let lhs = mul(&a, &mul(&b, &cc)) + mul(&cc, &mul(&b, &a));
                let rhs = mul(&mul(&a, &b), &cc) + mul(&mul(&cc, &b), &a);
                let r2 = (lhs - rhs).max_abs();
                if r2 > TOL {
                    violations.push(AxiomViolation {
                        identity: Identity::Elastic,
                        triple: (ia, ib, ic),
                        residual: r2,
                    });
                }
            }
        }
    }
    AxiomReport {
        triples_checked,
        violations,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    /// `gram[i][j] = <e_i, e_j>` where defined, `None` for metric violations.
    pub gram: [[Option<f64>; DIM]; DIM],
    pub violations: Vec<(usize, usize, f64)>,
}

impl MetricReport {
    pub fn is_euclidean(&self, tol: f64) -> bool {
        self.violations.is_empty()
            && (0..DIM).all(|i| {
                (0..DIM).all(|j| {
                    let want = if i == j { 1.0 } else { 0.0 };
                    self.gram[i][j].is_some_and(|g| (g - want).abs() <= tol)
                })
            })
    }
}

pub fn metric_report(table: &MultiplicationTable, tol: f64) -> MetricReport {
    let c = to_structural_constants(table);
    let mut gram = [[None; DIM]; DIM];
    let mut violations = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            match inner_product(
                &AlgebraElement::basis(i),
                &AlgebraElement::basis(j),
                &c,
                tol,
            ) {
                Ok(g) => gram[i][j] = Some(g),
                Err(Error::MetricViolation { residual, .. }) => violations.push((i, j, residual)),
                Err(e) => unreachable!("inner_product only fails with a metric violation: {e}"),
            }
        }
    }
    MetricReport { gram, violations }
}

pub struct BuiltinInfo {
    pub name: &'static str,
    pub table_number: u8,
    pub description: &'static str,
    source: &'static str,
}

pub const BUILTINS: &[BuiltinInfo] = &[
    BuiltinInfo {
        name: "octonion",
        table_number: 1,
        description: "canonical octonions",
        source: include_str!("../tables/octonion.tbl"),
    },
    BuiltinInfo {
        name: "gen-octonion-e1",
        table_number: 2,
        description: "octonion subalgebra generated by e1",
        source: include_str!("../tables/gen-octonion-e1.tbl"),
    },
    BuiltinInfo {
        name: "quaternion-analog",
        table_number: 3,
        description: "quaternions padded to dimension 8",
        source: include_str!("../tables/quaternion-analog.tbl"),
    },
    BuiltinInfo {
        name: "carcass",
        table_number: 4,
        description: "octonion carcass, no identity",
        source: include_str!("../tables/carcass.tbl"),
    },
    BuiltinInfo {
        name: "gen-octonion-e4",
        table_number: 5,
        description: "octonion subalgebra generated by e4",
        source: include_str!("../tables/gen-octonion-e4.tbl"),
    },
    BuiltinInfo {
        name: "octonion-noncanonical",
        table_number: 6,
        description: "octonions in a non-canonical labelling",
        source: include_str!("../tables/octonion-noncanonical.tbl"),
    },
];

pub fn builtin(name: &str) -> Result<MultiplicationTable> {
    let info = BUILTINS
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    Ok(parse_table(info.source, info.name).expect("built-in tables are well formed"))
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|b| b.name)
}
