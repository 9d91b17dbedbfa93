//! Dense linear algebra over the two-element field.
//!
//! Vectors are bit-packed into `u64` words. Subspaces are always stored by
//! the reduced row echelon form of a basis, so two subspaces are equal
//! exactly when their representations compare equal.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    words: Vec<u64>,
    len: usize,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector from 0/1 entries; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        bits.iter().map(|&b| b != 0).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }

    pub fn try_add_assign(&mut self, other: &F2Vector) -> Result<(), F2Error> {
        check_len(self.len, other.len)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    pub fn dot(&self, other: &F2Vector) -> Result<bool, F2Error> {
        check_len(self.len, other.len)?;
        let parity = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>();
        Ok(parity % 2 == 1)
    }
}

impl std::ops::AddAssign<&F2Vector> for F2Vector {
    /// Panics on length mismatch; use [`F2Vector::try_add_assign`] for a checked sum.
    fn add_assign(&mut self, rhs: &F2Vector) {
        self.try_add_assign(rhs).expect("vector length mismatch");
    }
}

impl FromIterator<bool> for F2Vector {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let bits: Vec<bool> = iter.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector{self}")
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), F2Error> {
    if expected == found {
        Ok(())
    } else {
        Err(F2Error::DimensionMismatch { expected, found })
    }
}

/// A row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    cols: usize,
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: F2Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![F2Vector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn from_rows(rows: Vec<F2Vector>, cols: usize) -> Result<Self, F2Error> {
        for r in &rows {
            check_len(cols, r.len())?;
        }
        Ok(Self { rows, cols })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[F2Vector], rows: usize) -> Result<Self, F2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_len(rows, c.len())?;
            for i in c.ones_iter() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Convenience constructor from nested 0/1 slices. Panics on ragged input.
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged bit matrix");
                F2Vector::from_bits(r)
            })
            .collect();
        Self { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> F2Vector {
        self.rows.iter().map(|r| r.get(j)).collect()
    }

    pub fn columns(&self) -> Vec<F2Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> F2Matrix {
        F2Matrix {
            rows: self.columns(),
            cols: self.nrows(),
        }
    }

    pub fn mul_vec(&self, v: &F2Vector) -> Result<F2Vector, F2Error> {
        check_len(self.cols, v.len())?;
        self.rows.iter().map(|r| r.dot(v)).collect()
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix, F2Error> {
        check_len(self.cols, other.nrows())?;
        let cols = other.columns();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| r.dot(c))
                    .collect::<Result<F2Vector, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(F2Matrix {
            rows,
            cols: other.ncols(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(F2Vector::is_zero)
    }

    /// Gauss-Jordan elimination to the unique reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(found) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != next && r.get(col) {
                    *r += &pivot_row;
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        Rref {
            reduced: F2Matrix {
                rows,
                cols: self.cols,
            },
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The null space `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = F2Vector::unit(self.cols, free);
                for (i, &p) in pivots.iter().enumerate() {
                    if reduced.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect::<Vec<_>>();
        Subspace::span(self.cols, basis).expect("kernel vectors have the column count as length")
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.nrows(), self.columns()).expect("columns have the row count as length")
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix {}x{} [", self.nrows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of GF(2)^n, stored by its RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<F2Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| F2Vector::unit(ambient_dim, i))
                .collect(),
        }
    }

    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self, F2Error>
    where
        I: IntoIterator<Item = F2Vector>,
    {
        let rows: Vec<F2Vector> = vectors.into_iter().collect();
        let m = F2Matrix::from_rows(rows, ambient_dim)?;
        let Rref {
            mut reduced, rank, ..
        } = m.rref();
        reduced.rows.truncate(rank);
        Ok(Self {
            ambient_dim,
            basis: reduced.rows,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[F2Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|b| b.leading_one().expect("basis vectors are nonzero"))
            .collect()
    }

    /// Representative of `v` modulo this subspace that vanishes on every pivot column.
    pub fn reduce(&self, v: &F2Vector) -> Result<F2Vector, F2Error> {
        check_len(self.ambient_dim, v.len())?;
        let mut r = v.clone();
        for b in &self.basis {
            let p = b.leading_one().expect("basis vectors are nonzero");
            if r.get(p) {
                r += b;
            }
        }
        Ok(r)
    }

    pub fn member(&self, v: &F2Vector) -> Result<bool, F2Error> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, F2Error> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        for b in &other.basis {
            if !self.member(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, F2Error> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Solves `sum a_i x_i = sum b_j y_j` and maps the solutions back through `a`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, F2Error> {
        check_len(self.ambient_dim, other.ambient_dim)?;
        let k = self.dim();
        let cols: Vec<F2Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        let m = F2Matrix::from_columns(&cols, self.ambient_dim)?;
        let relations = m.kernel_basis();
        let vectors = relations.basis.iter().map(|rel| {
            let mut x = F2Vector::zeros(self.ambient_dim);
            for i in rel.ones_iter().filter(|&i| i < k) {
                x += &self.basis[i];
            }
            x
        });
        Subspace::span(self.ambient_dim, vectors.collect::<Vec<_>>())
    }

    /// Enumerates every element; intended for small dimensions only.
    pub fn elements(&self) -> Vec<F2Vector> {
        assert!(self.dim() < 32, "subspace too large to enumerate");
        (0u64..1 << self.dim())
            .map(|mask| {
                let mut x = F2Vector::zeros(self.ambient_dim);
                for (i, b) in self.basis.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        x += b;
                    }
                }
                x
            })
            .collect()
    }
}

/// Free-function forms of the core operations.
pub fn rref(m: &F2Matrix) -> Rref {
    m.rref()
}

pub fn kernel_basis(m: &F2Matrix) -> Subspace {
    m.kernel_basis()
}

pub fn member(s: &Subspace, v: &F2Vector) -> Result<bool, F2Error> {
    s.member(v)
}

pub fn intersection_basis(a: &Subspace, b: &Subspace) -> Result<Subspace, F2Error> {
    a.intersection(b)
}
