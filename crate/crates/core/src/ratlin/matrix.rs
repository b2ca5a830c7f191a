use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse matrix stored row by row.
///
/// Each row is a list of `(col, value)` pairs sorted by column with no
/// stored zeros, so two matrices compare equal exactly when they represent
/// the same linear map.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, T::one())]).collect();
        Self { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicate positions
    /// are summed and zero sums dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut acc: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::OutOfBounds { row: r, col: c, rows, cols });
            }
            let slot = acc[r].entry(c).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(Self { rows, cols, data })
    }

    pub fn from_dense(dense: &[Vec<T>]) -> Result<Self> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged dense matrix".into()));
        }
        let triplets = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())));
        Self::from_triplets(rows, cols, triplets)
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        let row = self.data.get(r)?;
        row.binary_search_by_key(&c, |(col, _)| *col).ok().map(|i| &row[i].1)
    }

    /// Entries in `(row, col)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// Overwrites one entry (zero removes it).
    pub fn set(&mut self, r: usize, c: usize, v: T) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::OutOfBounds { row: r, col: c, rows: self.rows, cols: self.cols });
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) if v.is_zero() => {
                row.remove(i);
            }
            Ok(i) => row[i].1 = v,
            Err(_) if v.is_zero() => {}
            Err(i) => row.insert(i, (c, v)),
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            data[c].push((r, v.clone()));
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: BTreeMap<usize, T> = BTreeMap::new();
        for row in &self.data {
            acc.clear();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let slot = acc.entry(*c).or_insert_with(T::zero);
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
            data.push(
                std::mem::take(&mut acc)
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        Ok(Self { rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let triplets = self
            .iter()
            .chain(other.iter())
            .map(|(r, c, v)| (r, c, v.clone()));
        Self::from_triplets(self.rows, self.cols, triplets)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v.clone() * s.clone())).collect())
            .collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(T::zero(), |acc, (c, a)| acc + a.clone() * v[*c].clone())
            })
            .collect())
    }

    /// Reorders rows and columns: entry `(r, c)` moves to
    /// `(row_perm[r], col_perm[c])`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(Error::Dimension("permutation length mismatch".into()));
        }
        Self::from_triplets(
            self.rows,
            self.cols,
            self.iter().map(|(r, c, v)| (row_perm[r], col_perm[c], v.clone())),
        )
    }

    /// Stacks `blocks` (all with the same column count) vertically.
    pub fn vstack(cols: usize, blocks: &[&Self]) -> Result<Self> {
        let mut data = Vec::new();
        for b in blocks {
            if b.cols != cols {
                return Err(Error::Dimension("vstack column mismatch".into()));
            }
            data.extend(b.data.iter().cloned());
        }
        Ok(Self { rows: data.len(), cols, data })
    }
}
