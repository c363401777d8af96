//! Dense linear algebra over prime fields.
//!
//! Entries are stored as `u32` residues in `[0, p)` with `p < 2^16`, so a
//! product of two residues plus one more residue always fits in a `u32`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not a prime below 65536")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("first subspace is not contained in the second")]
    NotContained,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<(), LinAlgError> {
    if p < 65536 && is_prime(p) {
        Ok(())
    } else {
        Err(LinAlgError::NotPrime(p))
    }
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    a * b % p
}

pub fn pow(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; panics on zero.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero");
    pow(a, p - 2, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// `(-1)^e` as a residue.
#[inline]
pub fn sign(odd: bool, p: u32) -> u32 {
    if odd {
        p - 1
    } else {
        1 % p
    }
}

/// `v += c * w` entrywise.
#[inline]
pub fn axpy(v: &mut [u32], c: u32, w: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    // x + c y ≤ p (p - 1) < 2^32, so Lemire's remainder applies
    let m = u64::MAX / p as u64 + 1;
    for (x, &y) in v.iter_mut().zip(w) {
        let a = *x + c * y;
        *x = ((m.wrapping_mul(a as u64) as u128 * p as u128) >> 64) as u32;
    }
}

/// An element of F_p carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    residue: u32,
    modulus: u32,
}

impl Scalar {
    pub fn new(value: i64, modulus: u32) -> Result<Self, LinAlgError> {
        check_prime(modulus)?;
        Ok(Scalar { residue: reduce(value, modulus), modulus })
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn inverse(self) -> Option<Self> {
        (self.residue != 0).then(|| Scalar { residue: inv(self.residue, self.modulus), ..self })
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        assert_eq!(self.modulus, o.modulus);
        Scalar { residue: add(self.residue, o.residue, self.modulus), ..self }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        assert_eq!(self.modulus, o.modulus);
        Scalar { residue: sub(self.residue, o.residue, self.modulus), ..self }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        assert_eq!(self.modulus, o.modulus);
        Scalar { residue: mul(self.residue, o.residue, self.modulus), ..self }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { residue: neg(self.residue, self.modulus), ..self }
    }
}

/// Row-major dense matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(32)])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = reduce(x, p);
            }
        }
        m
    }

    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < p));
        Matrix { p, rows, cols, data }
    }

    /// Matrix whose rows are the given residue vectors.
    pub fn from_row_vecs(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { p, rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given residue vectors.
    pub fn from_col_vecs(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        Self::from_row_vecs(p, rows, cols).transpose()
    }

    pub fn p(&self) -> u32 {
        self.p
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
    pub fn data_mut(&mut self) -> &mut [u32] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        debug_assert!(x < self.p);
        self.data[i * self.cols + j] = x;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, x: u32) {
        let k = i * self.cols + j;
        self.data[k] = add(self.data[k], x, self.p);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul: inner dimensions differ");
        assert_eq!(self.p, other.p);
        let p = self.p;
        let n = other.cols;
        let mut out = Matrix::zeros(p, self.rows, n);
        if n == 0 {
            return out;
        }
        par::rows_mut(&mut out.data, n, self.cols, |i, orow| {
            let arow = self.row(i);
            for (k, &a) in arow.iter().enumerate() {
                if a != 0 {
                    axpy(orow, a, other.row(k), p);
                }
            }
        });
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                let mut s: u64 = 0;
                for (&a, &b) in self.row(i).iter().zip(v) {
                    s += (a * b) as u64;
                }
                (s % p as u64) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(a, b, p)).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(a, b, p)).collect();
        Matrix { data, ..*self }
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        self.add_scaled(1, other);
    }

    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        axpy(&mut self.data, c % self.p, &other.data, self.p);
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let p = self.p;
        Matrix { data: self.data.iter().map(|&a| mul(a, c % p, p)).collect(), ..*self }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.p - 1)
    }

    /// Kronecker product, row-major in both factors (first factor most significant).
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let p = self.p;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    let base = (i * other.rows + k) * c + j * other.cols;
                    for l in 0..other.cols {
                        out.data[base + l] = mul(a, other.get(k, l), p);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix { p: self.p, rows: self.rows, cols, data }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        out
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut e = Echelon::new(self.p, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        let rank = e.rank();
        let (r, pivots) = e.into_rref();
        let mut data = r.data;
        data.resize(self.rows * self.cols, 0);
        Rref { r: Matrix { p: self.p, rows: self.rows, cols: self.cols, data }, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.p, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Null space `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let mut e = Echelon::new(self.p, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.kernel()
    }

    /// A solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "matrix has {} rows, right-hand side has {}",
                self.rows,
                b.len()
            )));
        }
        let p = self.p;
        let mut e = Echelon::new(p, self.cols + 1);
        for i in 0..self.rows {
            let mut r = self.row(i).to_vec();
            r.push(b[i] % p);
            e.insert(r);
        }
        if e.pivot_row(self.cols).is_some() {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (c, row) in e.pivots.iter().zip(&e.rows) {
            x[*c] = row[self.cols];
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.p, n));
        let r = aug.rref();
        if r.rank < n || r.pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        Some(r.r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub r: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Incrementally built reduced row echelon basis of a row space.
///
/// Rows are kept fully reduced, so inserting a vector only has to touch the
/// pivots at which the incoming vector is nonzero.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    width: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u32>>,
    pivot_of: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Echelon { p, width, pivots: Vec::new(), rows: Vec::new(), pivot_of: vec![NO_PIVOT; width] }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivot_row(&self, col: usize) -> Option<usize> {
        let r = self.pivot_of[col];
        (r != NO_PIVOT).then_some(r as usize)
    }

    /// Reduces `v` against the basis in place.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        let hits: Vec<(usize, u32)> = v
            .iter()
            .enumerate()
            .filter(|&(c, &x)| x != 0 && self.pivot_of[c] != NO_PIVOT)
            .map(|(c, &x)| (self.pivot_of[c] as usize, x))
            .collect();
        for (r, x) in hits {
            axpy(v, p - x, &self.rows[r], p);
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, mut v: Vec<u32>) -> Option<usize> {
        assert_eq!(v.len(), self.width);
        let p = self.p;
        self.reduce(&mut v);
        let c = v.iter().position(|&x| x != 0)?;
        let s = inv(v[c], p);
        for x in v.iter_mut() {
            *x = mul(*x, s, p);
        }
        let v_ref = &v;
        par::for_each_mut(&mut self.rows, self.width, |row| {
            let x = row[c];
            if x != 0 {
                axpy(row, p - x, v_ref, p);
            }
        });
        self.pivot_of[c] = self.rows.len() as u32;
        self.pivots.push(c);
        self.rows.push(v);
        Some(c)
    }

    /// Rows sorted by pivot column, with the pivot list.
    pub fn into_rref(self) -> (Matrix, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        let rows: Vec<Vec<u32>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        (Matrix::from_row_vecs(self.p, self.width, &rows), pivots)
    }

    pub fn subspace(&self) -> Subspace {
        let (m, pivots) = self.clone().into_rref();
        Subspace { ambient: self.width, rows: m, pivots }
    }

    /// Null space of the matrix whose rows span this echelon basis.
    pub fn kernel(&self) -> Subspace {
        let p = self.p;
        let mut vecs = Vec::new();
        for f in 0..self.width {
            if self.pivot_of[f] != NO_PIVOT {
                continue;
            }
            let mut v = vec![0; self.width];
            v[f] = 1 % p;
            for (c, row) in self.pivots.iter().zip(&self.rows) {
                v[*c] = neg(row[f], p);
            }
            vecs.push(v);
        }
        Subspace::from_independent(p, self.width, vecs)
    }
}

/// Indices of the lexicographically first maximal independent subset of the
/// given rows. Stops scanning once `max_rank` is reached.
pub fn independent_rows(m: &Matrix, max_rank: usize) -> Vec<usize> {
    let mut e = Echelon::new(m.p, m.cols);
    let mut picked = Vec::new();
    for i in 0..m.rows {
        if e.rank() >= max_rank {
            break;
        }
        if e.insert(m.row(i).to_vec()).is_some() {
            picked.push(i);
        }
    }
    picked
}

/// A linear subspace of F_p^n, stored by its canonical (reduced row echelon) basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace { ambient, rows: Matrix::zeros(p, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Subspace { ambient, rows: Matrix::identity(p, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors.
    pub fn span(p: u32, ambient: usize, vecs: &[Vec<u32>]) -> Self {
        let mut e = Echelon::new(p, ambient);
        for v in vecs {
            e.insert(v.clone());
        }
        e.subspace()
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Self::span(m.p, m.rows, &m.transpose().row_vecs())
    }

    fn from_independent(p: u32, ambient: usize, vecs: Vec<Vec<u32>>) -> Self {
        let s = Self::span(p, ambient, &vecs);
        debug_assert_eq!(s.dim(), vecs.len());
        s
    }

    pub fn p(&self) -> u32 {
        self.rows.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.rows
    }

    /// Canonical basis vectors as rows.
    pub fn basis_rows(&self) -> &Matrix {
        &self.rows
    }

    /// Canonical basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis(&self) -> Matrix {
        self.rows.transpose()
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.rows.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&j| v[j]).collect();
        let p = self.p();
        let mut w = v.to_vec();
        for (k, &x) in c.iter().enumerate() {
            axpy(&mut w, p - x, self.rows.row(k), p);
        }
        w.iter().all(|&x| x == 0).then_some(c)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, w: &Subspace) -> bool {
        (0..self.dim()).all(|i| w.contains(self.rows.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.vectors();
        v.extend(other.vectors());
        Self::span(self.p(), self.ambient, &v)
    }
}

/// A complement `C` of `u` inside `w`, so that `u ⊕ C = w`.
///
/// The rule: write `u` in the canonical basis of `w`, row reduce, and take the
/// canonical basis vectors of `w` at the non-pivot coordinates. For `w` the
/// whole space this is the lexicographically first standard-basis completion.
pub fn complement(u: &Subspace, w: &Subspace) -> Result<Subspace, LinAlgError> {
    let p = w.p();
    let mut coords = Vec::with_capacity(u.dim());
    for v in u.vectors() {
        coords.push(w.coordinates(&v).ok_or(LinAlgError::NotContained)?);
    }
    let mut e = Echelon::new(p, w.dim());
    for c in coords {
        e.insert(c);
    }
    let picked: Vec<Vec<u32>> = (0..w.dim())
        .filter(|&j| e.pivot_row(j).is_none())
        .map(|j| w.rows.row(j).to_vec())
        .collect();
    let c = Subspace::span(p, w.ambient, &picked);
    if cfg!(debug_assertions) {
        assert_eq!(u.dim() + c.dim(), w.dim());
        assert_eq!(u.sum(&c).dim(), w.dim());
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..p).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn rref_small_cases() {
        let id = Matrix::identity(2, 2);
        let r = id.rref();
        assert_eq!(r.r, id);
        assert_eq!((r.pivots.clone(), r.rank), (vec![0, 1], 2));

        let z = Matrix::zeros(2, 3, 3);
        let r = z.rref();
        assert_eq!(r.r, z);
        assert!(r.pivots.is_empty());

        let m = Matrix::from_rows(2, &[vec![1, 1, 0], vec![1, 1, 1]]);
        let r = m.rref();
        assert_eq!(r.r, Matrix::from_rows(2, &[vec![1, 1, 0], vec![0, 0, 1]]));
        assert_eq!(r.rank, 2);
        // same row space as the input, checked over all 8 vectors
        let orig = Subspace::span(2, 3, &m.row_vecs());
        let red = Subspace::span(2, 3, &r.r.row_vecs());
        for v in all_vectors(2, 3) {
            assert_eq!(orig.contains(&v), red.contains(&v));
        }
    }

    #[test]
    fn kernel_small_cases() {
        assert_eq!(Matrix::identity(3, 4).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zeros(3, 4, 4).kernel_basis().dim(), 4);
        let m = Matrix::from_rows(2, &[vec![1, 1]]);
        let brute: Vec<Vec<u32>> =
            all_vectors(2, 2).into_iter().filter(|v| m.mul_vec(v) == vec![0]).collect();
        assert_eq!(brute, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(m.kernel_basis().vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_small_cases() {
        let id = Matrix::identity(5, 3);
        assert_eq!(id.solve(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        assert_eq!(Matrix::zeros(5, 2, 2).solve(&[1, 0]).unwrap(), None);
        let m = Matrix::from_rows(3, &[vec![1, 1], vec![0, 1]]);
        let brute: Vec<Vec<u32>> =
            all_vectors(3, 2).into_iter().filter(|x| m.mul_vec(x) == vec![2, 1]).collect();
        assert_eq!(brute, vec![vec![1, 1]]);
        assert_eq!(m.solve(&[2, 1]).unwrap(), Some(vec![1, 1]));
        assert!(m.solve(&[1]).is_err());
    }

    #[test]
    fn complement_small_cases() {
        let w = Subspace::full(2, 2);
        let z = Subspace::zero(2, 2);
        assert_eq!(complement(&z, &w).unwrap(), w);
        assert_eq!(complement(&w, &w).unwrap().dim(), 0);
        let u = Subspace::span(2, 2, &[vec![1, 1]]);
        // every 1-dim complement, lexicographically smallest generator first
        let mut cands: Vec<Vec<u32>> = all_vectors(2, 2)
            .into_iter()
            .filter(|v| v.iter().any(|&x| x != 0) && !u.contains(v))
            .collect();
        cands.sort();
        assert_eq!(complement(&u, &w).unwrap().vectors(), vec![cands[0].clone()]);
        assert_eq!(cands[0], vec![0, 1]);
        assert!(complement(&w, &u).is_err());
    }

    #[test]
    fn scalar_arithmetic() {
        let a = Scalar::new(4, 7).unwrap();
        let b = Scalar::new(-1, 7).unwrap();
        assert_eq!((a + b).residue(), 3);
        assert_eq!((a * b).residue(), 3);
        assert_eq!((a * a.inverse().unwrap()).residue(), 1);
        assert!(Scalar::new(1, 8).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let mi = m.inverse().unwrap();
        assert!(m.mul(&mi).is_identity());
        assert!(Matrix::zeros(3, 2, 2).inverse().is_none());
    }
}
