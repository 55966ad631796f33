//! Smith normal form over the principal ideal domain F₂[t,t⁻¹].

use super::laurent::LaurentPoly;
use super::matrix::SparseMatrix;

type Poly = LaurentPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult {
    /// Diagonal of `left · m · right`, of length `min(rows, cols)`. Nonzero
    /// entries come first, are normalized to lowest exponent zero, and each
    /// divides the next.
    pub invariants: Vec<LaurentPoly>,
    pub left: SparseMatrix<LaurentPoly>,
    pub right: SparseMatrix<LaurentPoly>,
    pub left_inverse: SparseMatrix<LaurentPoly>,
    pub right_inverse: SparseMatrix<LaurentPoly>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariants.iter().take_while(|p| !p.is_zero()).count()
    }

    /// The non-unit nonzero invariant factors (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<LaurentPoly> {
        self.invariants
            .iter()
            .filter(|p| !p.is_zero() && !p.is_unit())
            .cloned()
            .collect()
    }

    pub fn diagonal(&self) -> SparseMatrix<LaurentPoly> {
        let rows = self.left.rows();
        let cols = self.right.cols();
        SparseMatrix::from_entries(
            rows,
            cols,
            self.invariants.iter().enumerate().map(|(i, p)| (i, i, p.clone())),
        )
    }
}

struct Reduction {
    a: Vec<Vec<Poly>>,
    l: Vec<Vec<Poly>>,
    l_inv: Vec<Vec<Poly>>,
    r: Vec<Vec<Poly>>,
    r_inv: Vec<Vec<Poly>>,
}

fn identity(n: usize) -> Vec<Vec<Poly>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect())
        .collect()
}

fn add_scaled_row(m: &mut [Vec<Poly>], dst: usize, src: usize, c: &Poly) {
    for j in 0..m[dst].len() {
        if !m[src][j].is_zero() {
            let delta = c * &m[src][j];
            m[dst][j] += delta;
        }
    }
}

fn add_scaled_col(m: &mut [Vec<Poly>], dst: usize, src: usize, c: &Poly) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let delta = c * &row[src];
            row[dst] += delta;
        }
    }
}

impl Reduction {
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.r.len()
    }

    // Over F₂ subtraction is addition, so each elementary operation is its
    // own inverse up to the order of application.
    fn row_add(&mut self, dst: usize, src: usize, c: &Poly) {
        add_scaled_row(&mut self.a, dst, src, c);
        add_scaled_row(&mut self.l, dst, src, c);
        add_scaled_col(&mut self.l_inv, src, dst, c);
    }

    fn col_add(&mut self, dst: usize, src: usize, c: &Poly) {
        add_scaled_col(&mut self.a, dst, src, c);
        add_scaled_col(&mut self.r, dst, src, c);
        add_scaled_row(&mut self.r_inv, src, dst, c);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.l.swap(i, j);
        for row in self.l_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.r.iter_mut() {
            row.swap(i, j);
        }
        self.r_inv.swap(i, j);
    }

    fn row_scale_by_monomial(&mut self, i: usize, e: i32) {
        for p in self.a[i].iter_mut().chain(self.l[i].iter_mut()) {
            *p = p.shifted(e);
        }
        for row in self.l_inv.iter_mut() {
            row[i] = row[i].shifted(-e);
        }
    }

    /// Nonzero entry of minimal width in the trailing submatrix, ties broken
    /// by lowest (row, column).
    fn pivot_candidate(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in k..self.rows() {
            for j in k..self.cols() {
                if let Some(w) = self.a[i][j].width() {
                    if best.is_none_or(|(bw, _, _)| w < bw) {
                        best = Some((w, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn reduce_at(&mut self, k: usize) -> bool {
        loop {
            let Some((pi, pj)) = self.pivot_candidate(k) else { return false };
            self.row_swap(k, pi);
            self.col_swap(k, pj);
            let pivot = self.a[k][k].clone();
            for i in k + 1..self.rows() {
                if !self.a[i][k].is_zero() {
                    let (q, _) = self.a[i][k].div_rem(&pivot);
                    self.row_add(i, k, &q);
                }
            }
            for j in k + 1..self.cols() {
                if !self.a[k][j].is_zero() {
                    let (q, _) = self.a[k][j].div_rem(&pivot);
                    self.col_add(j, k, &q);
                }
            }
            let col_clear = (k + 1..self.rows()).all(|i| self.a[i][k].is_zero());
            let row_clear = (k + 1..self.cols()).all(|j| self.a[k][j].is_zero());
            if !(col_clear && row_clear) {
                continue;
            }
            let offender = (k + 1..self.rows()).find(|&i| {
                (k + 1..self.cols()).any(|j| !pivot.divides(&self.a[i][j]))
            });
            match offender {
                Some(i) => self.row_add(k, i, &Poly::one()),
                None => {
                    let low = pivot.low_exponent().expect("pivot is nonzero");
                    self.row_scale_by_monomial(k, -low);
                    return true;
                }
            }
        }
    }
}

/// Smith normal form `left · m · right = diag(invariants)` with invertible
/// transforms over F₂[t,t⁻¹].
pub fn laurent_snf(m: &SparseMatrix<LaurentPoly>) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut red = Reduction {
        a: m.to_dense(),
        l: identity(rows),
        l_inv: identity(rows),
        r: identity(cols),
        r_inv: identity(cols),
    };
    let n = rows.min(cols);
    let mut invariants = Vec::with_capacity(n);
    for k in 0..n {
        if !red.reduce_at(k) {
            break;
        }
        invariants.push(red.a[k][k].clone());
    }
    invariants.resize(n, Poly::zero());
    SnfResult {
        invariants,
        left: SparseMatrix::from_dense_sized(rows, rows, &red.l),
        right: SparseMatrix::from_dense_sized(cols, cols, &red.r),
        left_inverse: SparseMatrix::from_dense_sized(rows, rows, &red.l_inv),
        right_inverse: SparseMatrix::from_dense_sized(cols, cols, &red.r_inv),
    }
}
