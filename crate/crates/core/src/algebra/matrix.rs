use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul};

use super::gf2::Gf2;
use super::laurent::LaurentPoly;

/// Ring elements usable as matrix entries.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// Image under the unital inclusion F₂ → R.
    fn from_gf2(b: Gf2) -> Self {
        if b.0 {
            Self::one()
        } else {
            Self::zero()
        }
    }
}

impl Coefficient for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn plus(&self, other: &Self) -> Self {
        *self + *other
    }
    fn times(&self, other: &Self) -> Self {
        *self * *other
    }
}

impl Coefficient for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// Sparse matrix with no stored zeros. Columns are the images of basis
/// vectors, so `m · x` is the usual matrix-vector product.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<C> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), C>,
}

impl<C: Coefficient> SparseMatrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    /// Entries with repeated positions are summed.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, C)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_at(r, c, &v);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<C>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// Like [`from_dense`](Self::from_dense) but with explicit dimensions, so
    /// that `0 × n` shapes survive.
    pub fn from_dense_sized(rows: usize, cols: usize, dense: &[Vec<C>]) -> Self {
        assert_eq!(dense.len(), rows);
        let mut m = Self::zeros(rows, cols);
        for (r, row) in dense.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(C::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &C) {
        let sum = self.get(r, c).plus(v);
        self.set(r, c, sum);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<C>> {
        let mut out = vec![vec![C::zero(); self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<C> {
        let mut out = vec![C::zero(); self.rows];
        for (r, cc, v) in self.iter() {
            if cc == c {
                out[r] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.iter().map(|(r, c, v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn matmul(&self, other: &SparseMatrix<C>) -> SparseMatrix<C> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: BTreeMap<usize, Vec<(usize, &C)>> = BTreeMap::new();
        for (r, c, v) in other.iter() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, k, a) in self.iter() {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    out.add_at(r, c, &a.times(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[C]) -> Vec<C> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in matrix-vector product");
        let mut out = vec![C::zero(); self.rows];
        for (r, c, v) in self.iter() {
            if !x[c].is_zero() {
                out[r] = out[r].plus(&v.times(&x[c]));
            }
        }
        out
    }

    pub fn plus(&self, other: &SparseMatrix<C>) -> SparseMatrix<C> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_at(r, c, v);
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SparseMatrix<D> {
        SparseMatrix::from_entries(self.rows, self.cols, self.iter().map(|(r, c, v)| (r, c, f(v))))
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix<C> {
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (r, c, v) in self.iter() {
            if let (Some(&rr), Some(&cc)) = (row_pos.get(&r), col_pos.get(&c)) {
                out.set(rr, cc, v.clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &SparseMatrix<C>) -> SparseMatrix<C> {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for (r, c, v) in self.iter() {
            out.set(r, c, v.clone());
        }
        for (r, c, v) in other.iter() {
            out.set(r, self.cols + c, v.clone());
        }
        out
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(rows: usize, columns: &[Vec<C>]) -> SparseMatrix<C> {
        let mut out = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                out.set(r, c, v.clone());
            }
        }
        out
    }
}

pub fn is_zero_vector<C: Coefficient>(v: &[C]) -> bool {
    v.iter().all(Coefficient::is_zero)
}

impl<C: Coefficient> Add for &SparseMatrix<C> {
    type Output = SparseMatrix<C>;
    fn add(self, rhs: &SparseMatrix<C>) -> SparseMatrix<C> {
        self.plus(rhs)
    }
}

impl<C: Coefficient> Mul for &SparseMatrix<C> {
    type Output = SparseMatrix<C>;
    fn mul(self, rhs: &SparseMatrix<C>) -> SparseMatrix<C> {
        self.matmul(rhs)
    }
}
