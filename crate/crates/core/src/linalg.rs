//! Exact linear algebra over a [`Field`]: dense matrices plus an
//! incremental sparse solver.
//!
//! Gaussian elimination picks the first nonzero entry of each column as its
//! pivot, so every result (echelon forms, particular solutions, nullspace
//! bases) is deterministic for a given input.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
}

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Solution set of `a·x = b`: `particular + span(nullspace)`.
#[derive(Debug, Clone, PartialEq)]
pub enum AffineSolution<F> {
    NoSolution,
    Solution { particular: Vec<F>, nullspace: Vec<Vec<F>> },
}

impl<F> AffineSolution<F> {
    pub fn is_solvable(&self) -> bool {
        matches!(self, AffineSolution::Solution { .. })
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`; all columns must have length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(v: &[F]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &F> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|c| c.is_one())
    }

    /// Returns `c` when the matrix equals `c·E`.
    pub fn scalar_value(&self) -> Option<F> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(F::zero());
        }
        let c = self[(0, 0)].clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &c } else { &F::zero() };
                if self[(i, j)] != *want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn try_mul(&self, rhs: &Matrix<F>) -> Result<Matrix<F>, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rank by exact elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce(self.cols).len()
    }

    pub fn invert(&self) -> Result<Matrix<F>, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        if aug.reduce(n).len() < n {
            return Err(LinAlgError::NotInvertible);
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn determinant(&self) -> Result<F, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone() / pivot.clone();
                for c in col..n {
                    let v = m[(col, c)].clone();
                    if !v.is_zero() {
                        m[(r, c)] = m[(r, c)].clone() - f.clone() * v;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Solves `self·x = b` exactly.
    pub fn solve_affine(&self, b: &[F]) -> Result<AffineSolution<F>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{} equations but right-hand side of length {}",
                self.rows,
                b.len()
            )));
        }
        let n = self.cols;
        let mut aug = Matrix::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.reduce(n);
        if (pivots.len()..aug.rows).any(|r| !aug[(r, n)].is_zero()) {
            return Ok(AffineSolution::NoSolution);
        }
        let mut particular = vec![F::zero(); n];
        for (row, &col) in pivots.iter().enumerate() {
            particular[col] = aug[(row, n)].clone();
        }
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let nullspace = (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); n];
                v[free] = F::one();
                for (row, &col) in pivots.iter().enumerate() {
                    v[col] = -aug[(row, free)].clone();
                }
                v
            })
            .collect();
        Ok(AffineSolution::Solution { particular, nullspace })
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        match self.solve_affine(&vec![F::zero(); self.rows]) {
            Ok(AffineSolution::Solution { nullspace, .. }) => nullspace,
            _ => unreachable!("homogeneous systems are consistent"),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form in place, pivoting only in the first
    /// `pivot_cols` columns. Returns the pivot column of each nonzero row.
    fn reduce(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = F::one() / self[(row, col)].clone();
            let mut support = Vec::new();
            for j in 0..self.cols {
                if !self[(row, j)].is_zero() {
                    let v = self[(row, j)].clone() * inv.clone();
                    self[(row, j)] = v.clone();
                    support.push((j, v));
                }
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = self[(r, col)].clone();
                for (j, v) in &support {
                    self[(r, *j)] = self[(r, *j)].clone() - f.clone() * v.clone();
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimensions");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimensions");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

/// Incrementally maintained row-echelon basis of a subspace of `F^n`.
#[derive(Debug, Clone)]
pub struct Span<F> {
    dim: usize,
    basis: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Span<F> {
    pub fn new(dim: usize) -> Self {
        Span { dim, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the current basis; the remainder is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (pivot, b) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(F::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = F::one() / r[pivot].clone();
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for (_, b) in self.basis.iter_mut() {
            if b[pivot].is_zero() {
                continue;
            }
            let f = b[pivot].clone();
            for (x, y) in b.iter_mut().zip(&r) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        self.basis.push((pivot, r));
        true
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[F]> {
        self.basis.iter().map(|(_, v)| v.as_slice())
    }
}

/// Incremental sparse system `Σ_j a_ij x_j = b_i` kept in reduced row-echelon form.
#[derive(Debug, Clone)]
pub struct SparseSystem<F> {
    unknowns: usize,
    /// Pivot column → (row without the pivot entry, right-hand side).
    pivots: BTreeMap<usize, (BTreeMap<usize, F>, F)>,
    consistent: bool,
}

impl<F: Field> SparseSystem<F> {
    pub fn new(unknowns: usize) -> Self {
        SparseSystem { unknowns, pivots: BTreeMap::new(), consistent: true }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Adds one equation; entries with equal columns are summed.
    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, F)>, rhs: F) {
        let mut row: BTreeMap<usize, F> = BTreeMap::new();
        for (j, c) in entries {
            assert!(j < self.unknowns, "column {j} out of range");
            let slot = row.entry(j).or_insert_with(F::zero);
            *slot = slot.clone() + c;
        }
        row.retain(|_, c| !c.is_zero());
        let mut rhs = rhs;
        let hits: Vec<usize> = row.keys().copied().filter(|j| self.pivots.contains_key(j)).collect();
        for j in hits {
            let f = row.remove(&j).expect("pivot column present");
            let (prow, prhs) = &self.pivots[&j];
            rhs = rhs - f.clone() * prhs.clone();
            for (k, c) in prow {
                let slot = row.entry(*k).or_insert_with(F::zero);
                *slot = slot.clone() - f.clone() * c.clone();
            }
            row.retain(|_, c| !c.is_zero());
        }
        let Some((&pivot, lead)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.consistent = false;
            }
            return;
        };
        let inv = F::one() / lead.clone();
        row.remove(&pivot);
        for c in row.values_mut() {
            *c = c.clone() * inv.clone();
        }
        rhs = rhs * inv;
        for (prow, prhs) in self.pivots.values_mut() {
            if let Some(f) = prow.remove(&pivot) {
                *prhs = prhs.clone() - f.clone() * rhs.clone();
                for (k, c) in &row {
                    let slot = prow.entry(*k).or_insert_with(F::zero);
                    *slot = slot.clone() - f.clone() * c.clone();
                }
                prow.retain(|_, c| !c.is_zero());
            }
        }
        self.pivots.insert(pivot, (row, rhs));
    }

    /// The solution with every free unknown set to zero, if consistent.
    pub fn particular(&self) -> Option<Vec<F>> {
        if !self.consistent {
            return None;
        }
        let mut x = vec![F::zero(); self.unknowns];
        for (j, (_, rhs)) in &self.pivots {
            x[*j] = rhs.clone();
        }
        Some(x)
    }
}
