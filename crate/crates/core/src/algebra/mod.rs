//! Exact linear algebra over F₂ and F₂[t,t⁻¹].
//!
//! [`Pid`] is the interface the homology code is written against: kernels,
//! solving, and cokernel structure. Over F₂ it is backed by bit-packed
//! Gaussian elimination, over the Laurent ring by Smith normal form.

mod gf2;
mod laurent;
mod matrix;
mod snf;

pub use gf2::{gf2_gauss, gf2_matrix, gf2_rank, gf2_solve, gf2_vector, Gf2, Gf2Reduction};
pub use laurent::LaurentPoly;
pub use matrix::{is_zero_vector, Coefficient, SparseMatrix};
pub use snf::{laurent_snf, SnfResult};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("dimension mismatch: matrix has {rows} rows but vector has length {len}")]
pub struct DimensionMismatch {
    pub rows: usize,
    pub len: usize,
}

/// Isomorphism type of a finitely generated module: `R^free_rank ⊕ ⊕ R/(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleShape {
    pub free_rank: usize,
    /// Non-unit invariant factors; always empty over a field.
    pub torsion: Vec<LaurentPoly>,
}

impl ModuleShape {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

pub trait Pid: Coefficient {
    /// Basis of the kernel. The kernel is a direct summand of the domain.
    fn kernel_basis(m: &SparseMatrix<Self>) -> Vec<Vec<Self>>;
    fn solve(m: &SparseMatrix<Self>, v: &[Self]) -> Option<Vec<Self>>;
    /// Structure of `R^rows / image(m)`.
    fn cokernel(m: &SparseMatrix<Self>) -> ModuleShape;
    /// Dimension over F₂, when finite.
    fn f2_dimension(shape: &ModuleShape) -> Option<usize>;
    /// Structure of `(span P + span Q) / span P` for column sets `p`, `q` in
    /// the same ambient module.
    fn subquotient(p: &SparseMatrix<Self>, q: &SparseMatrix<Self>) -> ModuleShape;
}

impl Pid for Gf2 {
    fn kernel_basis(m: &SparseMatrix<Self>) -> Vec<Vec<Self>> {
        gf2_gauss(m).kernel_basis
    }

    fn solve(m: &SparseMatrix<Self>, v: &[Self]) -> Option<Vec<Self>> {
        gf2_solve(m, v)
    }

    fn cokernel(m: &SparseMatrix<Self>) -> ModuleShape {
        ModuleShape {
            free_rank: m.rows() - gf2_rank(m),
            torsion: Vec::new(),
        }
    }

    fn f2_dimension(shape: &ModuleShape) -> Option<usize> {
        Some(shape.free_rank)
    }

    fn subquotient(p: &SparseMatrix<Self>, q: &SparseMatrix<Self>) -> ModuleShape {
        ModuleShape {
            free_rank: gf2_rank(&p.hconcat(q)) - gf2_rank(p),
            torsion: Vec::new(),
        }
    }
}

impl Pid for LaurentPoly {
    fn kernel_basis(m: &SparseMatrix<Self>) -> Vec<Vec<Self>> {
        let snf = laurent_snf(m);
        (snf.rank()..m.cols()).map(|j| snf.right.column(j)).collect()
    }

    fn solve(m: &SparseMatrix<Self>, v: &[Self]) -> Option<Vec<Self>> {
        let snf = laurent_snf(m);
        let w = snf.left.mul_vec(v);
        let rank = snf.rank();
        if w[rank..].iter().any(|p| !p.is_zero()) {
            return None;
        }
        let mut y = vec![LaurentPoly::zero(); m.cols()];
        for i in 0..rank {
            y[i] = w[i].checked_div(&snf.invariants[i])?;
        }
        Some(snf.right.mul_vec(&y))
    }

    fn cokernel(m: &SparseMatrix<Self>) -> ModuleShape {
        let snf = laurent_snf(m);
        ModuleShape {
            free_rank: m.rows() - snf.rank(),
            torsion: snf.torsion(),
        }
    }

    fn f2_dimension(shape: &ModuleShape) -> Option<usize> {
        (shape.free_rank == 0).then(|| {
            shape
                .torsion
                .iter()
                .map(|p| p.width().unwrap_or(0) as usize)
                .sum()
        })
    }

    fn subquotient(p: &SparseMatrix<Self>, q: &SparseMatrix<Self>) -> ModuleShape {
        // With L·[P|Q]·R = D the vectors d_i·L⁻¹e_i (i < rank) form a basis of
        // span(P) + span(Q); rewrite P in that basis and reduce again.
        let snf = laurent_snf(&p.hconcat(q));
        let r = snf.rank();
        let lp = snf.left.matmul(p);
        let mut coords = SparseMatrix::zeros(r, p.cols());
        for (i, j, v) in lp.iter() {
            assert!(i < r, "columns of P lie in the span of [P|Q]");
            let c = v.checked_div(&snf.invariants[i]).expect("exact division by an invariant factor");
            coords.set(i, j, c);
        }
        let reduced = laurent_snf(&coords);
        ModuleShape {
            free_rank: r - reduced.rank(),
            torsion: reduced.torsion(),
        }
    }
}

/// Coefficients `x` with `m · x = v`, or `None` when `v` is outside the
/// image of `m` over the coefficient ring.
pub fn image_membership<C: Pid>(m: &SparseMatrix<C>, v: &[C]) -> Result<Option<Vec<C>>, DimensionMismatch> {
    if v.len() != m.rows() {
        return Err(DimensionMismatch {
            rows: m.rows(),
            len: v.len(),
        });
    }
    if is_zero_vector(v) {
        return Ok(Some(vec![C::zero(); m.cols()]));
    }
    Ok(C::solve(m, v))
}
