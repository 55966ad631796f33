//! The zero-surgery mapping cone of `D = vₛ + t·hₛ : A⁺ₛ → B⁺`.
//!
//! Over F₂ (untwisted, t = 1) the connecting map is `v + h`; over F₂[t,t⁻¹]
//! (totally twisted) it is `v + t·h`. A-part gradings are shifted by +1/2 and
//! B-part gradings by −1/2, so the connecting map lowers cone grading by one.

use serde::Serialize;

use crate::algebra::{Gf2, LaurentPoly, SparseMatrix};
use crate::cfk::CfkComplex;
use crate::exec::Exec;
use crate::rational::{self, Rational};

use super::complex::{extend_scalars, GradedComplex, HomologySummary};
use super::truncated::{build_a_plus, build_b_plus, maps_between, TruncatedComplex, VhMaps};
use super::EngineError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeMode {
    Untwisted,
    Twisted,
}

#[derive(Clone, Debug)]
pub enum ConeTotal {
    Untwisted(GradedComplex<Gf2>),
    Twisted(GradedComplex<LaurentPoly>),
}

#[derive(Clone, Debug)]
pub struct ConeComplex {
    s: i64,
    mode: ConeMode,
    a: TruncatedComplex,
    b: TruncatedComplex,
    maps: VhMaps,
}

pub fn build_cone(c: &CfkComplex, s: i64, mode: ConeMode, n: u32) -> Result<ConeComplex, EngineError> {
    let a = build_a_plus(c, s, n)?;
    let b = build_b_plus(c, n)?;
    let maps = maps_between(c, &a, &b)?;
    Ok(ConeComplex { s, mode, a, b, maps })
}

impl ConeComplex {
    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn mode(&self) -> ConeMode {
        self.mode
    }

    pub fn truncation(&self) -> u32 {
        self.b.truncation()
    }

    pub fn a_part(&self) -> &TruncatedComplex {
        &self.a
    }

    pub fn b_part(&self) -> &TruncatedComplex {
        &self.b
    }

    /// The connecting map over F₂[t,t⁻¹]; in untwisted mode with t = 1.
    pub fn connecting(&self) -> SparseMatrix<LaurentPoly> {
        let t = match self.mode {
            ConeMode::Untwisted => LaurentPoly::one(),
            ConeMode::Twisted => LaurentPoly::t(),
        };
        let v = self.maps.v.map(|_| LaurentPoly::one());
        let h = self.maps.h.map(|_| t.clone());
        v.plus(&h)
    }

    /// Full differential over F₂[t,t⁻¹], A-part first.
    fn total_differential(&self) -> SparseMatrix<LaurentPoly> {
        let (na, nb) = (self.a.len(), self.b.len());
        let lift = |m: &SparseMatrix<Gf2>| m.map(|_| LaurentPoly::one());
        let da = lift(self.a.complex().boundary());
        let db = lift(self.b.complex().boundary());
        let f = self.connecting();
        let entries = da
            .iter()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(db.iter().map(|(r, c, v)| (na + r, na + c, v.clone())))
            .chain(f.iter().map(|(r, c, v)| (na + r, c, v.clone())))
            .collect::<Vec<_>>();
        SparseMatrix::from_entries(na + nb, na + nb, entries)
    }

    /// D² = 0 for the total differential (ungraded check, valid for all s).
    pub fn squares_to_zero(&self) -> bool {
        let d = self.total_differential();
        d.matmul(&d).is_zero()
    }

    /// The cone as a graded complex. Only the s = 0 cone is absolutely
    /// graded: for s ≠ 0, hₛ shifts grading by −2s.
    pub fn total(&self) -> Result<ConeTotal, EngineError> {
        if self.s != 0 {
            return Err(EngineError::RelativeGradingOnly { s: self.s });
        }
        let half = rational::half();
        let (ca, cb) = (self.a.complex(), self.b.complex());
        let labels = ca
            .labels()
            .iter()
            .map(|l| format!("A{l}"))
            .chain(cb.labels().iter().map(|l| format!("B{l}")))
            .collect();
        let gradings: Vec<Rational> = ca
            .gradings()
            .iter()
            .map(|g| *g + half)
            .chain(cb.gradings().iter().map(|g| *g - half))
            .collect();
        let na = self.a.len();
        let u_map = ca
            .u_map()
            .iter()
            .copied()
            .chain(cb.u_map().iter().map(|t| t.map(|t| t + na)))
            .collect();
        let first_incomplete = (ca.first_incomplete() + half).min(cb.first_incomplete() - half);
        let d = self.total_differential();
        let twisted = GradedComplex::new(labels, gradings, d, u_map, first_incomplete);
        Ok(match self.mode {
            ConeMode::Twisted => ConeTotal::Twisted(twisted),
            ConeMode::Untwisted => ConeTotal::Untwisted(extend_scalars(&twisted, |p| p.eval_at_one())),
        })
    }
}

/// Homology of an absolutely graded cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedModuleSummary {
    pub mode: ConeMode,
    pub s: i64,
    pub truncation: u32,
    #[serde(flatten)]
    pub homology: HomologySummary,
}

/// Tower power used for a truncation level.
pub fn tower_power(n: u32) -> u32 {
    n / 2
}

pub fn cone_homology(x: &ConeComplex, exec: Exec) -> Result<GradedModuleSummary, EngineError> {
    let k = tower_power(x.truncation());
    let homology = match x.total()? {
        ConeTotal::Untwisted(c) => c.summarize(k, exec),
        ConeTotal::Twisted(c) => c.summarize(k, exec),
    };
    Ok(GradedModuleSummary {
        mode: x.mode,
        s: x.s,
        truncation: x.truncation(),
        homology,
    })
}

/// Lowest grading of a nonzero tower class in the cone.
pub fn cone_tower_bottom(x: &ConeComplex, exec: Exec) -> Result<Option<Rational>, EngineError> {
    let k = tower_power(x.truncation());
    Ok(match x.total()? {
        ConeTotal::Untwisted(c) => c.lowest_tower_grading(k, exec),
        ConeTotal::Twisted(c) => c.lowest_tower_grading(k, exec),
    })
}
