//! The field F₂ and Gaussian elimination over it.

use std::fmt;
use std::ops::{Add, Mul};

use super::matrix::SparseMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf2(pub bool);

impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

#[derive(Clone)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }
    fn get(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }
    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gf2Reduction {
    pub rank: usize,
    /// Basis of the null space, one vector per free column.
    pub kernel_basis: Vec<Vec<Gf2>>,
    /// The pivot columns of the input; they span the column space.
    pub image_basis: Vec<Vec<Gf2>>,
    pub pivot_columns: Vec<usize>,
}

fn bit_rows(m: &SparseMatrix<Gf2>, extra_cols: usize) -> Vec<BitRow> {
    let mut rows = vec![BitRow::new(m.cols() + extra_cols); m.rows()];
    for (r, c, _) in m.iter() {
        rows[r].flip(c);
    }
    rows
}

/// Reduces `rows` to reduced row echelon form on the first `cols` columns.
/// Returns `(pivot_row, pivot_col)` pairs.
fn rref(rows: &mut [BitRow], cols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else { continue };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(c) {
                row.xor(&pivot);
            }
        }
        pivots.push((next, c));
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

pub fn gf2_gauss(m: &SparseMatrix<Gf2>) -> Gf2Reduction {
    let mut rows = bit_rows(m, 0);
    let pivots = rref(&mut rows, m.cols());
    let pivot_columns: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivot_columns {
        is_pivot[c] = true;
    }
    let kernel_basis = (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Gf2(false); m.cols()];
            x[f] = Gf2(true);
            for &(r, c) in &pivots {
                if rows[r].get(f) {
                    x[c] = Gf2(true);
                }
            }
            x
        })
        .collect();
    let image_basis = pivot_columns.iter().map(|&c| m.column(c)).collect();
    Gf2Reduction {
        rank: pivots.len(),
        kernel_basis,
        image_basis,
        pivot_columns,
    }
}

pub fn gf2_rank(m: &SparseMatrix<Gf2>) -> usize {
    let mut rows = bit_rows(m, 0);
    rref(&mut rows, m.cols()).len()
}

/// Some `x` with `m · x = v`, if `v` lies in the column space.
pub fn gf2_solve(m: &SparseMatrix<Gf2>, v: &[Gf2]) -> Option<Vec<Gf2>> {
    assert_eq!(v.len(), m.rows());
    let aug = m.cols();
    let mut rows = bit_rows(m, 1);
    for (r, b) in v.iter().enumerate() {
        if b.0 {
            rows[r].flip(aug);
        }
    }
    let pivots = rref(&mut rows, aug + 1);
    if pivots.iter().any(|&(_, c)| c == aug) {
        return None;
    }
    let mut x = vec![Gf2(false); m.cols()];
    for &(r, c) in &pivots {
        x[c] = Gf2(rows[r].get(aug));
    }
    Some(x)
}

impl Gf2 {
    pub fn from_u8(b: u8) -> Gf2 {
        Gf2(b % 2 == 1)
    }
}

pub fn gf2_matrix(rows: &[&[u8]]) -> SparseMatrix<Gf2> {
    let dense: Vec<Vec<Gf2>> = rows
        .iter()
        .map(|r| r.iter().map(|&b| Gf2::from_u8(b)).collect())
        .collect();
    SparseMatrix::from_dense(&dense)
}

pub fn gf2_vector(bits: &[u8]) -> Vec<Gf2> {
    bits.iter().map(|&b| Gf2::from_u8(b)).collect()
}
