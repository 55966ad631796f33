//! The subquotient complexes A⁺ₛ = C{max(i, j−s) ≥ 0} and B⁺ = C{i ≥ 0} of a
//! knot Floer complex, truncated at filtration level N, and the maps
//! vₛ, hₛ : A⁺ₛ → B⁺.
//!
//! A basis element `(x, i)` stands for the position `[x, i, i + A(x)]`, i.e.
//! `U^{-i}·x`, in Maslov grading `M(x) + 2i`. Truncation keeps the positions
//! with `max(i, j − s) ≤ N`; this is a subcomplex of the untruncated quotient,
//! so homology agrees with the untruncated one below [`first_incomplete`].
//!
//! [`first_incomplete`]: GradedComplex::first_incomplete

use std::collections::HashMap;

use crate::algebra::{Gf2, SparseMatrix};
use crate::cfk::CfkComplex;
use crate::rational::{self, Rational};

use super::complex::GradedComplex;
use super::EngineError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `max(i, j − s) ≥ 0`.
    A { s: i64 },
    /// `i ≥ 0`.
    B,
}

/// Smallest truncation level accepted by the builders.
pub fn truncation_floor(c: &CfkComplex) -> u32 {
    2 * (c.max_abs_alexander() + c.max_upower()) + 4
}

#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    region: Region,
    truncation: u32,
    basis: Vec<(usize, i64)>,
    index: HashMap<(usize, i64), usize>,
    complex: GradedComplex<Gf2>,
}

impl TruncatedComplex {
    pub fn region(&self) -> Region {
        self.region
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// `(generator index, i)` pairs.
    pub fn basis(&self) -> &[(usize, i64)] {
        &self.basis
    }

    pub fn position(&self, x: usize, i: i64) -> Option<usize> {
        self.index.get(&(x, i)).copied()
    }

    pub fn complex(&self) -> &GradedComplex<Gf2> {
        &self.complex
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
}

fn i_range(region: Region, alexander: i64, n: i64) -> (i64, i64) {
    match region {
        Region::A { s } => ((s - alexander).min(0), n - (alexander - s).max(0)),
        Region::B => (0, n),
    }
}

fn build(c: &CfkComplex, region: Region, n: u32) -> Result<TruncatedComplex, EngineError> {
    let floor = truncation_floor(c);
    if n < floor {
        return Err(EngineError::TruncationBelowFloor { requested: n, floor });
    }
    let gens = c.generators();
    let mut basis = Vec::new();
    let mut first_incomplete: Option<Rational> = None;
    for (x, g) in gens.iter().enumerate() {
        let (lo, hi) = i_range(region, g.alexander as i64, n as i64);
        basis.extend((lo..=hi).map(|i| (x, i)));
        let missing = g.maslov + rational::int(2 * (hi + 1));
        first_incomplete = Some(first_incomplete.map_or(missing, |f| f.min(missing)));
    }
    let index: HashMap<(usize, i64), usize> = basis.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let labels = basis
        .iter()
        .map(|&(x, i)| format!("[{},{},{}]", gens[x].id, i, i + gens[x].alexander as i64))
        .collect();
    let gradings = basis
        .iter()
        .map(|&(x, i)| gens[x].maslov + rational::int(2 * i))
        .collect();
    let mut by_source = vec![Vec::new(); gens.len()];
    for a in c.arrows() {
        by_source[a.from].push((a.to, a.upower as i64));
    }
    let mut entries = Vec::new();
    for (k, &(x, i)) in basis.iter().enumerate() {
        for &(y, a) in &by_source[x] {
            if let Some(&t) = index.get(&(y, i - a)) {
                entries.push((t, k, Gf2(true)));
            }
        }
    }
    let boundary = SparseMatrix::from_entries(basis.len(), basis.len(), entries);
    let u_map = basis.iter().map(|&(x, i)| index.get(&(x, i - 1)).copied()).collect();
    let complex = GradedComplex::new(
        labels,
        gradings,
        boundary,
        u_map,
        first_incomplete.unwrap_or_else(|| rational::int(0)),
    );
    Ok(TruncatedComplex {
        region,
        truncation: n,
        basis,
        index,
        complex,
    })
}

pub fn build_a_plus(c: &CfkComplex, s: i64, n: u32) -> Result<TruncatedComplex, EngineError> {
    build(c, Region::A { s }, n)
}

pub fn build_b_plus(c: &CfkComplex, n: u32) -> Result<TruncatedComplex, EngineError> {
    build(c, Region::B, n)
}

/// vₛ and hₛ as matrices (entry `(B-index, A-index)`).
///
/// vₛ projects onto `i ≥ 0`. hₛ projects onto `j ≥ s`, multiplies by U^s and
/// applies the flip `[x, i, j] ↦ [σx, j, i]`; it shifts grading by `−2s`.
#[derive(Clone, Debug)]
pub struct VhMaps {
    pub v: SparseMatrix<Gf2>,
    pub h: SparseMatrix<Gf2>,
}

pub fn maps_between(c: &CfkComplex, a: &TruncatedComplex, b: &TruncatedComplex) -> Result<VhMaps, EngineError> {
    let Region::A { s } = a.region else {
        panic!("source must be an A-complex");
    };
    let sigma = c.sigma().map_err(|v| EngineError::InvalidComplex(v.to_string()))?;
    let gens = c.generators();
    let mut v = Vec::new();
    let mut h = Vec::new();
    for (k, &(x, i)) in a.basis.iter().enumerate() {
        if i >= 0 {
            let t = b.position(x, i).expect("truncation levels agree");
            v.push((t, k, Gf2(true)));
        }
        let j = i + gens[x].alexander as i64;
        if j >= s {
            let t = b.position(sigma[x], j - s).expect("truncation levels agree");
            h.push((t, k, Gf2(true)));
        }
    }
    Ok(VhMaps {
        v: SparseMatrix::from_entries(b.len(), a.len(), v),
        h: SparseMatrix::from_entries(b.len(), a.len(), h),
    })
}

pub fn maps_v_h(c: &CfkComplex, s: i64, n: u32) -> Result<VhMaps, EngineError> {
    let a = build_a_plus(c, s, n)?;
    let b = build_b_plus(c, n)?;
    maps_between(c, &a, &b)
}
