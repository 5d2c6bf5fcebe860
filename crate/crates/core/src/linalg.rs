//! Exact linear algebra over a prime field `F_p`.
//!
//! Every exactness and solvability question in the workbench is reduced to
//! Gaussian elimination here. Elimination is deterministic: pivots are taken
//! column by column from the left, using the topmost available row.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`. Elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Largest supported characteristic; products of two residues fit in a `u64`.
    pub const MAX_P: u32 = (1 << 31) - 1;

    pub fn new(p: u32) -> Result<Self> {
        if p > Self::MAX_P || !is_prime(p) {
            return Err(Error::input(format!("field characteristic {p} is not a supported prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        Some(acc as u32)
    }

    /// Reduce an arbitrary integer into `[0, p)`.
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// `(-1)^k` as a field element.
    pub fn sign(self, k: usize) -> u32 {
        if k % 2 == 0 {
            1
        } else {
            self.neg(1)
        }
    }

    pub fn add_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn scale_vec(self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// `acc += c * v`, in place.
    #[inline]
    pub fn axpy(self, acc: &mut [u32], c: u32, v: &[u32]) {
        if c == 0 {
            return;
        }
        if self.p == 2 {
            for (a, &x) in acc.iter_mut().zip(v) {
                *a ^= x;
            }
            return;
        }
        let p = self.p as u64;
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = ((*a as u64 + c as u64 * x as u64) % p) as u32;
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A dense matrix of residues, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!("matrix data has {} entries, expected {rows}x{cols}", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Build from rows, reducing every entry into the field.
    pub fn from_rows(f: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::input("ragged matrix rows"));
            }
            data.extend(row.iter().map(|&x| f.reduce(x)));
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// A matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            debug_assert_eq!(v.len(), rows);
            for (i, &x) in v.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// `self * other`.
    pub fn mul(&self, f: PrimeField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let acc = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a != 0 {
                    f.axpy(acc, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: PrimeField, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = f.p() as u64;
        (0..self.rows)
            .map(|r| {
                let mut s = 0u64;
                for (a, b) in self.row(r).iter().zip(v) {
                    s += *a as u64 * *b as u64;
                    if s >= 1 << 62 {
                        s %= p;
                    }
                }
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, f: PrimeField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: f.add_vec(&self.data, &other.data) }
    }

    pub fn sub(&self, f: PrimeField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: f.sub_vec(&self.data, &other.data) }
    }

    pub fn scale(&self, f: PrimeField, c: u32) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: f.scale_vec(c, &self.data) }
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.set_block(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix { rows, cols, data }
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn sub_matrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. Pivot order: leftmost column with a nonzero
/// entry below the current row, topmost such row.
pub fn rref(f: PrimeField, m: &Matrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&r| a.data[r * cols + c] != 0) else {
            continue;
        };
        if sel != pr {
            for k in 0..cols {
                a.data.swap(sel * cols + k, pr * cols + k);
            }
        }
        let inv = f.inv(a.data[pr * cols + c]).expect("pivot is nonzero");
        if inv != 1 {
            for k in c..cols {
                a.data[pr * cols + k] = f.mul(a.data[pr * cols + k], inv);
            }
        }
        let pivot_row: Vec<u32> = a.data[pr * cols..(pr + 1) * cols].to_vec();
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = a.data[r * cols + c];
            if factor != 0 {
                let neg = f.neg(factor);
                f.axpy(&mut a.data[r * cols..(r + 1) * cols], neg, &pivot_row);
            }
        }
        pivots.push(c);
        pr += 1;
    }
    Rref { matrix: a, pivots }
}

/// Rank over `F_p`.
pub fn rank(f: PrimeField, m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    rref(f, m).pivots.len()
}

/// A basis of the null space `{v : m v = 0}`, one vector per free column,
/// in increasing order of the free column.
pub fn kernel_basis(f: PrimeField, m: &Matrix) -> Vec<Vec<u32>> {
    let r = rref(f, m);
    let cols = m.cols;
    let is_pivot: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (i, &c) in r.pivots.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (i, &pc) in r.pivots.iter().enumerate() {
            v[pc] = f.neg(r.matrix.get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// The solution set of `m x = b`: a particular solution plus a basis of the
/// homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub particular: Vec<u32>,
    pub basis: Vec<Vec<u32>>,
}

impl AffineSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of points, saturating at `u64::MAX`.
    pub fn size(&self, f: PrimeField) -> u64 {
        (f.p() as u64).checked_pow(self.basis.len() as u32).unwrap_or(u64::MAX)
    }

    /// The point with the given coefficients on the basis.
    pub fn point(&self, f: PrimeField, coeffs: &[u32]) -> Vec<u32> {
        let mut x = self.particular.clone();
        for (c, v) in coeffs.iter().zip(&self.basis) {
            f.axpy(&mut x, *c, v);
        }
        x
    }

    /// All points, in lexicographic order of the coefficient vector
    /// (first coefficient varies slowest). Starts at the particular solution.
    pub fn points(&self, f: PrimeField) -> AffinePoints<'_> {
        AffinePoints { space: self, field: f, coeffs: Some(vec![0; self.basis.len()]) }
    }

    /// A uniformly random point.
    pub fn sample<R: Rng>(&self, f: PrimeField, rng: &mut R) -> Vec<u32> {
        let coeffs: Vec<u32> = (0..self.basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        self.point(f, &coeffs)
    }
}

/// Iterator over the points of an [`AffineSpace`].
pub struct AffinePoints<'a> {
    space: &'a AffineSpace,
    field: PrimeField,
    coeffs: Option<Vec<u32>>,
}

impl Iterator for AffinePoints<'_> {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        let coeffs = self.coeffs.as_mut()?;
        let out = self.space.point(self.field, coeffs);
        // Odometer increment, last coefficient fastest.
        let p = self.field.p();
        let mut i = coeffs.len();
        loop {
            if i == 0 {
                self.coeffs = None;
                break;
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
        Some(out)
    }
}

/// Every vector of `F_p^d` in lexicographic order.
pub fn all_vectors(f: PrimeField, d: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = f.p();
    let mut cur = Some(vec![0u32; d]);
    std::iter::from_fn(move || {
        let v = cur.take()?;
        let mut next = v.clone();
        let mut i = d;
        while i > 0 {
            i -= 1;
            next[i] += 1;
            if next[i] < p {
                cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(v)
    })
}

/// Some `x` with `m x = b`, or `None`. Free variables are set to zero.
pub fn solve_linear(f: PrimeField, m: &Matrix, b: &[u32]) -> Option<Vec<u32>> {
    solve_affine(f, m, b).map(|s| s.particular)
}

/// The full solution set of `m x = b`, or `None` when inconsistent.
pub fn solve_affine(f: PrimeField, m: &Matrix, b: &[u32]) -> Option<AffineSpace> {
    assert_eq!(b.len(), m.rows, "right-hand side length mismatch");
    let cols = m.cols;
    let mut aug = Matrix::zeros(m.rows, cols + 1);
    for r in 0..m.rows {
        aug.data[r * (cols + 1)..r * (cols + 1) + cols].copy_from_slice(m.row(r));
        aug.data[r * (cols + 1) + cols] = b[r] % f.p();
    }
    let red = rref(f, &aug);
    if red.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (i, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix.get(i, cols);
    }
    // Homogeneous part from the same reduction.
    let mut is_pivot = vec![false; cols];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (i, &pc) in red.pivots.iter().enumerate() {
            v[pc] = f.neg(red.matrix.get(i, free));
        }
        basis.push(v);
    }
    Some(AffineSpace { particular: x, basis })
}

/// Two-sided inverse of a square matrix.
pub fn inverse(f: PrimeField, m: &Matrix) -> Option<Matrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    if n == 0 {
        return Some(Matrix::zeros(0, 0));
    }
    let mut aug = Matrix::zeros(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, &Matrix::identity(n));
    let red = rref(f, &aug);
    if red.pivots.len() < n || red.pivots[n - 1] >= n {
        return None;
    }
    Some(red.matrix.sub_matrix(0, n, n, n))
}

/// Whether the column space of `a` contains every column of `b`.
pub fn column_space_contains(f: PrimeField, a: &Matrix, b: &Matrix) -> bool {
    assert_eq!(a.rows, b.rows);
    let ra = rank(f, a);
    let both = Matrix::hstack(a.rows, &[a, b]);
    rank(f, &both) == ra
}

/// A chain of linear maps `F^{d_0} -> F^{d_1} -> ... -> F^{d_k}`.
#[derive(Clone, Debug)]
pub struct LinearSeq {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl LinearSeq {
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != maps.len() + 1 {
            return Err(Error::input("a linear sequence needs one more space than maps"));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.cols != dims[i] || m.rows != dims[i + 1] {
                return Err(Error::input(format!(
                    "map {i} has shape {}x{}, expected {}x{}",
                    m.rows,
                    m.cols,
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(LinearSeq { dims, maps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Exactness at the interior space `i` (`1 <= i <= k-1`): the image of
    /// `m_{i-1}` equals the kernel of `m_i`.
    pub fn is_exact_at(&self, f: PrimeField, i: usize) -> Result<bool> {
        if i == 0 || i >= self.dims.len() - 1 {
            return Err(Error::input(format!("position {i} is not interior to a sequence of {} spaces", self.dims.len())));
        }
        let (a, b) = (&self.maps[i - 1], &self.maps[i]);
        if !b.mul(f, a).is_zero() {
            return Ok(false);
        }
        Ok(rank(f, a) + rank(f, b) == self.dims[i])
    }

    /// Exactness at every interior position.
    pub fn is_exact(&self, f: PrimeField) -> bool {
        (1..self.dims.len().saturating_sub(1)).all(|i| self.is_exact_at(f, i).unwrap_or(false))
    }

    /// The first interior position where exactness fails.
    pub fn first_inexact(&self, f: PrimeField) -> Option<usize> {
        (1..self.dims.len().saturating_sub(1)).find(|&i| !self.is_exact_at(f, i).unwrap_or(false))
    }
}

/// Exactness of `a` followed by `b` at their shared middle space, without
/// building a [`LinearSeq`].
pub fn exact_pair(f: PrimeField, a: &Matrix, b: &Matrix) -> bool {
    debug_assert_eq!(a.rows, b.cols);
    if !b.mul(f, a).is_zero() {
        return false;
    }
    rank(f, a) + rank(f, b) == a.rows
}
