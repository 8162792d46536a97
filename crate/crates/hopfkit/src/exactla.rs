//! Exact scalars and dense linear algebra over Q and GF(p).
//!
//! Everything downstream reduces to matrix identities over an exact field,
//! so this module fixes the conventions once:
//!
//! * matrices act on column vectors; rows index the codomain, columns the
//!   domain, and `g.mul(&f)` is the composite g after f;
//! * tensor legs flatten row-major: the pair (i, j) on dimensions (m, n)
//!   flattens to `i * n + j`;
//! * reduced row echelon form picks the first nonzero entry of each column
//!   scanning top to bottom, which makes every derived basis byte-stable;
//! * kernel bases list free columns in ascending order with pivots
//!   back-substituted.
//!
//! Dimension-0 spaces are legal everywhere: a 0 x n matrix has full kernel,
//! an n x 0 matrix has empty kernel, and Kronecker products with an empty
//! factor are empty.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// The two scalar domains supported: the rationals and prime fields GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ExactField {
    Rationals,
    PrimeField(u64),
}

/// Error returned when a prime field is requested at a composite modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NotPrime(pub u64);

impl fmt::Display for NotPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not prime", self.0)
    }
}

impl std::error::Error for NotPrime {}

/// An exact scalar: a reduced rational or a residue modulo the field prime.
///
/// Rational values stay reduced because `BigRational` normalizes on
/// construction; residues are kept in the range 0..p.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v) => *v == 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v) => write!(f, "{}", v),
        }
    }
}

/// Error produced when a scalar literal does not parse in the declared field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarParseError {
    pub literal: String,
    pub reason: String,
}

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse scalar {:?}: {}", self.literal, self.reason)
    }
}

impl std::error::Error for ScalarParseError {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Modular exponentiation with u128 intermediates.
fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl ExactField {
    pub fn rationals() -> Self {
        ExactField::Rationals
    }

    /// Constructs GF(p), rejecting composite moduli by trial division.
    pub fn prime(p: u64) -> Result<Self, NotPrime> {
        if is_prime(p) {
            Ok(ExactField::PrimeField(p))
        } else {
            Err(NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            ExactField::Rationals => Scalar::Rat(BigRational::zero()),
            ExactField::PrimeField(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            ExactField::Rationals => Scalar::Rat(BigRational::one()),
            ExactField::PrimeField(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            ExactField::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            ExactField::PrimeField(p) => {
                let r = v.rem_euclid(*p as i64);
                Scalar::Mod(r as u64)
            }
        }
    }

    fn expect_rat<'a>(&self, s: &'a Scalar) -> &'a BigRational {
        match s {
            Scalar::Rat(r) => r,
            Scalar::Mod(_) => panic!("scalar from GF(p) used in a rational computation"),
        }
    }

    fn expect_mod(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Mod(v) => *v,
            Scalar::Rat(_) => panic!("rational scalar used in a GF(p) computation"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            ExactField::Rationals => Scalar::Rat(self.expect_rat(a) + self.expect_rat(b)),
            ExactField::PrimeField(p) => {
                let s = (self.expect_mod(a) as u128 + self.expect_mod(b) as u128) % *p as u128;
                Scalar::Mod(s as u64)
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            ExactField::Rationals => Scalar::Rat(self.expect_rat(a) * self.expect_rat(b)),
            ExactField::PrimeField(p) => {
                let s = (self.expect_mod(a) as u128 * self.expect_mod(b) as u128) % *p as u128;
                Scalar::Mod(s as u64)
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            ExactField::Rationals => Scalar::Rat(-self.expect_rat(a)),
            ExactField::PrimeField(p) => {
                let v = self.expect_mod(a);
                Scalar::Mod(if v == 0 { 0 } else { p - v })
            }
        }
    }

    /// Multiplicative inverse; `None` at zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            ExactField::Rationals => Some(Scalar::Rat(self.expect_rat(a).recip())),
            ExactField::PrimeField(p) => Some(Scalar::Mod(pow_mod(self.expect_mod(a), p - 2, *p))),
        }
    }

    /// Parses a scalar literal: `a` or `a/b` over Q, an integer over GF(p).
    ///
    /// GF(p) literals may be negative and are reduced; fraction syntax is
    /// rejected there because `1/2` in a GF(2) document is a type error,
    /// not the residue of one half.
    pub fn parse(&self, literal: &str) -> Result<Scalar, ScalarParseError> {
        let err = |reason: &str| ScalarParseError {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let s = literal.trim();
        if s.is_empty() {
            return Err(err("empty literal"));
        }
        match self {
            ExactField::Rationals => {
                let (num_s, den_s) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), Some(d.trim())),
                    None => (s, None),
                };
                let numer: BigInt = num_s
                    .parse()
                    .map_err(|_| err("numerator is not an integer"))?;
                let denom: BigInt = match den_s {
                    Some(d) => d.parse().map_err(|_| err("denominator is not an integer"))?,
                    None => BigInt::one(),
                };
                if denom.is_zero() {
                    return Err(err("denominator is zero"));
                }
                Ok(Scalar::Rat(BigRational::new(numer, denom)))
            }
            ExactField::PrimeField(p) => {
                if s.contains('/') {
                    return Err(err("fraction syntax is not a GF(p) scalar"));
                }
                let v: BigInt = s.parse().map_err(|_| err("not an integer"))?;
                let p_big = BigInt::from(*p);
                let r = ((v % &p_big) + &p_big) % &p_big;
                let digits = r.to_u64_digits().1;
                Ok(Scalar::Mod(digits.first().copied().unwrap_or(0)))
            }
        }
    }
}

/// Shape/index errors raised by the matrix and tensor utilities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LinAlgError {
    DimensionMismatch { expected: usize, got: usize },
    IndexOutOfRange { index: usize, bound: usize },
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {}, got {}", expected, got)
            }
            LinAlgError::IndexOutOfRange { index, bound } => {
                write!(f, "index {} out of range for dimension {}", index, bound)
            }
        }
    }
}

impl std::error::Error for LinAlgError {}

/// A dense matrix over an exact field. Rows index the codomain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    pub field: ExactField,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

/// Outcome of `solve_or_invert`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOrInvert {
    /// The unique solution of M x = b (full column rank, consistent system).
    Solution(ExactMatrix),
    /// The two-sided inverse of a square invertible M.
    Inverse(ExactMatrix),
    /// The system is inconsistent, underdetermined, or M is singular.
    Singular,
}

/// Row echelon data: the reduced form together with the pivot column of
/// each nonzero row, in row order.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: ExactField, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: ExactField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: ExactField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from integer rows; convenient for fixed test data.
    pub fn from_i64_rows(field: ExactField, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    /// A single column built from i64 entries.
    pub fn col_from_i64(field: ExactField, entries: &[i64]) -> Self {
        Self::from_fn(field, entries.len(), 1, |i, _| field.from_i64(entries[i]))
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.rows && j < self.cols);
        i * self.cols + j
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let k = self.idx(i, j);
        self.entries[k] = v;
    }

    fn assert_same_field(&self, other: &ExactMatrix) {
        assert_eq!(self.field, other.field, "matrices over different fields");
    }

    /// Composite self after rhs (matrix product self * rhs).
    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.assert_same_field(rhs);
        assert_eq!(
            self.cols, rhs.rows,
            "composition shape mismatch: {}x{} after {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let f = self.field;
        let rhs_rows = rhs.nonzero_cols_by_row();
        let mut out = ExactMatrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &rhs_rows[k] {
                    let cur = out.get(i, j).clone();
                    out.set(i, j, f.add(&cur, &f.mul(a, rhs.get(k, j))));
                }
            }
        }
        out
    }

    fn nonzero_cols_by_row(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| !self.get(i, j).is_zero()).collect())
            .collect()
    }

    fn nonzero_rows_by_col(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    out[j].push(i);
                }
            }
        }
        out
    }

    /// Computes `self * (a ⊗ b)` without materializing the Kronecker
    /// product, which keeps large balanced-tensor computations affordable.
    pub fn mul_kron(&self, a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
        self.assert_same_field(a);
        self.assert_same_field(b);
        assert_eq!(
            self.cols,
            a.rows * b.rows,
            "composition shape mismatch: {}x{} after ({}x{}) kron ({}x{})",
            self.rows, self.cols, a.rows, a.cols, b.rows, b.cols
        );
        let f = self.field;
        let a_rows = a.nonzero_cols_by_row();
        let b_rows = b.nonzero_cols_by_row();
        let mut out = ExactMatrix::zeros(f, self.rows, a.cols * b.cols);
        for i in 0..self.rows {
            for ia in 0..a.rows {
                for ib in 0..b.rows {
                    let v = self.get(i, ia * b.rows + ib);
                    if v.is_zero() {
                        continue;
                    }
                    for &ja in &a_rows[ia] {
                        let va = f.mul(v, a.get(ia, ja));
                        for &jb in &b_rows[ib] {
                            let j = ja * b.cols + jb;
                            let cur = out.get(i, j).clone();
                            out.set(i, j, f.add(&cur, &f.mul(&va, b.get(ib, jb))));
                        }
                    }
                }
            }
        }
        out
    }

    /// Computes `(a ⊗ b) * self` without materializing the Kronecker
    /// product.
    pub fn kron_mul(a: &ExactMatrix, b: &ExactMatrix, m: &ExactMatrix) -> ExactMatrix {
        a.assert_same_field(b);
        a.assert_same_field(m);
        assert_eq!(
            a.cols * b.cols,
            m.rows,
            "composition shape mismatch: ({}x{}) kron ({}x{}) after {}x{}",
            a.rows, a.cols, b.rows, b.cols, m.rows, m.cols
        );
        let f = a.field;
        let a_cols = a.nonzero_rows_by_col();
        let b_cols = b.nonzero_rows_by_col();
        let mut out = ExactMatrix::zeros(f, a.rows * b.rows, m.cols);
        for ja in 0..a.cols {
            for jb in 0..b.cols {
                let row = ja * b.cols + jb;
                for j in 0..m.cols {
                    let v = m.get(row, j);
                    if v.is_zero() {
                        continue;
                    }
                    for &ia in &a_cols[ja] {
                        let va = f.mul(a.get(ia, ja), v);
                        for &ib in &b_cols[jb] {
                            let i = ia * b.rows + ib;
                            let cur = out.get(i, j).clone();
                            out.set(i, j, f.add(&cur, &f.mul(&va, b.get(ib, jb))));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.assert_same_field(rhs);
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        let f = self.field;
        ExactMatrix::from_fn(f, self.rows, self.cols, |i, j| {
            f.add(self.get(i, j), rhs.get(i, j))
        })
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> ExactMatrix {
        let f = self.field;
        ExactMatrix::from_fn(f, self.rows, self.cols, |i, j| f.neg(self.get(i, j)))
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        let f = self.field;
        ExactMatrix::from_fn(f, self.rows, self.cols, |i, j| f.mul(s, self.get(i, j)))
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; consistent with row-major tensor flattening, so
    /// `kron(F, G)` is the matrix of F tensor G on flattened legs.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.assert_same_field(rhs);
        let f = self.field;
        let mut out = ExactMatrix::zeros(f, self.rows * rhs.rows, self.cols * rhs.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        let b = rhs.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i1 * rhs.rows + i2, j1 * rhs.cols + j2, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// The braiding X tensor Y -> Y tensor X on flattened coordinates.
    pub fn swap_map(field: ExactField, m: usize, n: usize) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(field, m * n, m * n);
        for i in 0..m {
            for j in 0..n {
                out.set(j * m + i, i * n + j, field.one());
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.assert_same_field(rhs);
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        ExactMatrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.assert_same_field(rhs);
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        ExactMatrix::from_fn(self.field, self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                rhs.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn column(&self, j: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    /// First entry where two equal-shaped matrices differ, row-major.
    pub fn first_difference(&self, other: &ExactMatrix) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != other.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Reduced row echelon form. Pivot selection takes the first nonzero
    /// entry top-down in each column, so the result is deterministic.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut sel = None;
            for r in row..m.rows {
                if !m.get(r, col).is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(sel, j).clone();
                    m.set(row, j, b);
                    m.set(sel, j, a);
                }
            }
            let inv = f
                .inv(m.get(row, col))
                .expect("pivot is nonzero by selection");
            if !inv.is_one() {
                for j in col..m.cols {
                    if m.get(row, j).is_zero() {
                        continue;
                    }
                    let v = f.mul(&inv, m.get(row, j));
                    m.set(row, j, v);
                }
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    if m.get(row, j).is_zero() {
                        continue;
                    }
                    let v = f.sub(m.get(r, j), &f.mul(&factor, m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical kernel basis as the columns of one matrix: one column per
    /// free column of the RREF, free columns in ascending order, with the
    /// pivot coordinates back-substituted.
    pub fn kernel(&self) -> ExactMatrix {
        let f = self.field;
        let Rref { matrix: r, pivots } = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut out = ExactMatrix::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Kernel basis as a list of column vectors.
    pub fn kernel_basis(&self) -> Vec<ExactMatrix> {
        let k = self.kernel();
        (0..k.cols).map(|j| k.column(j)).collect()
    }

    /// A particular solution of self * X = rhs (free variables set to zero),
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &ExactMatrix) -> Option<ExactMatrix> {
        self.assert_same_field(rhs);
        assert_eq!(self.rows, rhs.rows, "solve: rhs row mismatch");
        let aug = self.hstack(rhs);
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let f = self.field;
        let mut x = ExactMatrix::zeros(f, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Solves self * X = rhs and requires the solution to be unique
    /// (full column rank). Returns `None` otherwise.
    pub fn solve_unique(&self, rhs: &ExactMatrix) -> Option<ExactMatrix> {
        let x = self.solve(rhs)?;
        if self.rank() == self.cols {
            Some(x)
        } else {
            None
        }
    }

    /// Two-sided inverse of a square matrix, when it exists.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&ExactMatrix::identity(self.field, self.rows));
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(ExactMatrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            r.get(i, self.cols + j).clone()
        }))
    }

    /// Spec entry point: with `b` present, attempts the unique solution of
    /// self * x = b; with `b` absent, attempts inversion. Singular systems
    /// (inconsistent, underdetermined, or non-invertible) report
    /// `Singular` rather than guessing.
    pub fn solve_or_invert(&self, b: Option<&ExactMatrix>) -> Result<SolveOrInvert, LinAlgError> {
        match b {
            Some(b) => {
                if b.rows != self.rows {
                    return Err(LinAlgError::DimensionMismatch {
                        expected: self.rows,
                        got: b.rows,
                    });
                }
                match self.solve_unique(b) {
                    Some(x) => Ok(SolveOrInvert::Solution(x)),
                    None => Ok(SolveOrInvert::Singular),
                }
            }
            None => match self.inverse() {
                Some(inv) => Ok(SolveOrInvert::Inverse(inv)),
                None => Ok(SolveOrInvert::Singular),
            },
        }
    }

    /// Renders entries as strings, row-major, for reports.
    pub fn to_plain(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Multi-index bookkeeping for tensor legs, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorShape {
    pub dims: Vec<usize>,
}

impl TensorShape {
    pub fn new(dims: Vec<usize>) -> Self {
        TensorShape { dims }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major flatten: on (m, n) the pair (i, j) maps to i * n + j.
    pub fn flatten(&self, index: &[usize]) -> Result<usize, LinAlgError> {
        if index.len() != self.dims.len() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.dims.len(),
                got: index.len(),
            });
        }
        let mut flat = 0usize;
        for (k, (&i, &d)) in index.iter().zip(self.dims.iter()).enumerate() {
            if i >= d {
                return Err(LinAlgError::IndexOutOfRange { index: i, bound: d });
            }
            let _ = k;
            flat = flat * d + i;
        }
        Ok(flat)
    }

    pub fn unflatten(&self, mut flat: usize) -> Result<Vec<usize>, LinAlgError> {
        let total = self.total();
        if flat >= total {
            return Err(LinAlgError::IndexOutOfRange {
                index: flat,
                bound: total,
            });
        }
        let mut out = vec![0usize; self.dims.len()];
        for (k, &d) in self.dims.iter().enumerate().rev() {
            out[k] = flat % d;
            flat /= d;
        }
        Ok(out)
    }
}

/// A quotient of k^n by a spanned subspace, with a chosen linear section.
///
/// `proj` maps the ambient space onto coordinates indexed by the non-pivot
/// positions of the subspace's reduced row basis; `section` embeds those
/// coordinates back as the corresponding standard basis vectors, so
/// `proj * section` is the identity on the quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quotient {
    pub proj: ExactMatrix,
    pub section: ExactMatrix,
}

/// Quotient of the ambient column space by the span of `gens`'s columns.
pub fn quotient_by_span(gens: &ExactMatrix) -> Quotient {
    let f = gens.field;
    let n = gens.rows;
    // Zero generators contribute nothing to the span and cannot become
    // pivot rows, so dropping them leaves the echelon form unchanged.
    let nonzero: Vec<usize> = (0..gens.cols)
        .filter(|&c| (0..n).any(|r| !gens.get(r, c).is_zero()))
        .collect();
    let mut tr = ExactMatrix::zeros(f, nonzero.len(), n);
    for (i, &c) in nonzero.iter().enumerate() {
        for r in 0..n {
            let v = gens.get(r, c);
            if !v.is_zero() {
                tr.set(i, r, v.clone());
            }
        }
    }
    let Rref { matrix: rb, pivots } = tr.rref();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivot_set.contains(c)).collect();
    let mut proj = ExactMatrix::zeros(f, free.len(), n);
    for (k, &t) in free.iter().enumerate() {
        proj.set(k, t, f.one());
        for (i, &s) in pivots.iter().enumerate() {
            proj.set(k, s, f.neg(rb.get(i, t)));
        }
    }
    let mut section = ExactMatrix::zeros(f, n, free.len());
    for (k, &t) in free.iter().enumerate() {
        section.set(t, k, f.one());
    }
    Quotient { proj, section }
}

/// Searches the span of the given square matrices for an invertible element.
///
/// Over a prime field the whole span is exhausted when it has at most 2^16
/// elements, scanning coefficient tuples in lexicographic order, so the
/// result is the first invertible combination and the search is complete:
/// `None` means the span contains no invertible matrix. For larger spans and
/// over the rationals a fixed candidate list is tried instead: each basis
/// matrix, pairwise sums and differences, and the sum of all basis matrices.
/// In that regime `None` only means the candidates all failed.
pub fn invertible_in_span(basis: &[ExactMatrix]) -> Option<ExactMatrix> {
    let first = basis.first()?;
    let f = first.field;
    let n = first.rows;
    if basis.iter().any(|b| b.rows != n || b.cols != n) {
        return None;
    }
    if let ExactField::PrimeField(p) = f {
        let mut total: u128 = 1;
        let mut small = true;
        for _ in 0..basis.len() {
            total = total.saturating_mul(p as u128);
            if total > 1 << 16 {
                small = false;
                break;
            }
        }
        if small {
            for code in 1..total {
                let mut m = ExactMatrix::zeros(f, n, n);
                let mut rem = code;
                for b in basis.iter().rev() {
                    let digit = (rem % p as u128) as i64;
                    rem /= p as u128;
                    if digit != 0 {
                        let c = f.from_i64(digit);
                        m = m.add(&b.scale(&c));
                    }
                }
                if m.inverse().is_some() {
                    return Some(m);
                }
            }
            return None;
        }
    }
    let mut candidates: Vec<ExactMatrix> = basis.to_vec();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            candidates.push(basis[i].add(&basis[j]));
            candidates.push(basis[i].sub(&basis[j]));
        }
    }
    if basis.len() > 2 {
        let mut sum = basis[0].clone();
        for b in &basis[1..] {
            sum = sum.add(b);
        }
        candidates.push(sum);
    }
    candidates.into_iter().find(|m| m.inverse().is_some())
}
