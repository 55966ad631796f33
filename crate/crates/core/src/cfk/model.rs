use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{gf2_rank, Gf2, SparseMatrix};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub maslov: Rational,
    pub alexander: i32,
}

impl Generator {
    pub fn new(id: impl Into<String>, maslov: Rational, alexander: i32) -> Self {
        Generator {
            id: id.into(),
            maslov,
            alexander,
        }
    }
}

/// One term `from ↦ U^upower · to` of the differential (coefficient 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffTerm {
    pub from: String,
    pub to: String,
    pub upower: u32,
}

impl DiffTerm {
    pub fn new(from: impl Into<String>, to: impl Into<String>, upower: u32) -> Self {
        DiffTerm {
            from: from.into(),
            to: to.into(),
            upower,
        }
    }
}

impl fmt::Display for DiffTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upower {
            0 => write!(f, "{} -> {}", self.from, self.to),
            1 => write!(f, "{} -> U·{}", self.from, self.to),
            n => write!(f, "{} -> U^{n}·{}", self.from, self.to),
        }
    }
}

/// Swaps listed as unordered pairs; generators not listed are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FlipInvolution {
    pairs: Vec<(String, String)>,
}

impl FlipInvolution {
    pub fn new<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut pairs: Vec<(String, String)> = pairs
            .into_iter()
            .map(|(a, b)| {
                let (a, b) = (a.into(), b.into());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .filter(|(a, b)| a != b)
            .collect();
        pairs.sort();
        pairs.dedup();
        FlipInvolution { pairs }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// The nontrivial swaps, each as `(smaller id, larger id)`, sorted.
    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("grading law violated by `{term}`: maslov({to}) should be {expected}, found {found}", to = term.to)]
    GradingLaw {
        term: DiffTerm,
        expected: Rational,
        found: Rational,
    },
    #[error("filtration law violated by `{term}`: alexander({to}) - upower exceeds alexander({from})", to = term.to, from = term.from)]
    Filtration { term: DiffTerm },
    #[error("boundary squares to a nonzero map: coefficient of U^{upower}·{to} in ∂²({from}) is 1")]
    BoundarySquare {
        from: String,
        to: String,
        upower: u32,
    },
    #[error("flip is not an involution: `{id}` occurs in more than one swap")]
    FlipNotInvolution { id: String },
    #[error("flip does not negate the Alexander grading at `{id}`")]
    FlipAlexander { id: String },
    #[error("flip violates maslov(σx) = maslov(x) - 2·alexander(x) at `{id}`")]
    FlipMaslov { id: String },
    #[error("the map induced by the flip does not commute with the differential at `{id}`")]
    FlipNotChainMap { id: String },
    #[error("homology with U inverted has rank {rank} over F2[U,U^-1], expected 1")]
    InvertedHomologyRank { rank: usize },
    #[error("homology with U inverted is not supported in even Maslov gradings (class {class} mod 2)")]
    TowerParity { class: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfkError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate generator id `{0}`")]
    DuplicateId(String),
    #[error("unknown generator id `{id}` in {context}")]
    UnknownId { id: String, context: String },
    #[error(transparent)]
    Invalid(#[from] Violation),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<(), Violation> {
        match self.violations.into_iter().next() {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }
}

/// A finitely generated knot Floer complex CFK∞ over F₂[U,U⁻¹].
///
/// Each generator is stored at its canonical position `[x, 0, A(x)]`; the
/// remaining filtration positions are U-translates. Generators are kept sorted
/// by id and differential terms sorted, with repeated terms cancelled mod 2.
#[derive(Clone, Debug)]
pub struct CfkComplex {
    name: String,
    generators: Vec<Generator>,
    differential: Vec<DiffTerm>,
    flip: FlipInvolution,
    index: HashMap<String, usize>,
}

impl PartialEq for CfkComplex {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.generators == other.generators
            && self.differential == other.differential
            && self.flip == other.flip
    }
}

/// Index-based view of a differential term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub upower: u32,
}

impl CfkComplex {
    /// Checks structural well-formedness only (unique ids, known references).
    /// Mathematical laws are checked by [`validate`](Self::validate).
    pub fn new(
        name: impl Into<String>,
        mut generators: Vec<Generator>,
        differential: Vec<DiffTerm>,
        flip: FlipInvolution,
    ) -> Result<Self, CfkError> {
        generators.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = HashMap::with_capacity(generators.len());
        for (k, g) in generators.iter().enumerate() {
            if index.insert(g.id.clone(), k).is_some() {
                return Err(CfkError::DuplicateId(g.id.clone()));
            }
        }
        for t in &differential {
            for id in [&t.from, &t.to] {
                if !index.contains_key(id) {
                    return Err(CfkError::UnknownId {
                        id: id.clone(),
                        context: format!("differential term `{t}`"),
                    });
                }
            }
        }
        for (a, b) in flip.pairs() {
            for id in [a, b] {
                if !index.contains_key(id) {
                    return Err(CfkError::UnknownId {
                        id: id.clone(),
                        context: format!("flip pair [{a}, {b}]"),
                    });
                }
            }
        }
        let mut counts: BTreeMap<DiffTerm, usize> = BTreeMap::new();
        for t in differential {
            *counts.entry(t).or_default() += 1;
        }
        let differential = counts
            .into_iter()
            .filter(|(_, n)| n % 2 == 1)
            .map(|(t, _)| t)
            .collect();
        Ok(CfkComplex {
            name: name.into(),
            generators,
            differential,
            flip,
            index,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &[DiffTerm] {
        &self.differential
    }

    pub fn flip(&self) -> &FlipInvolution {
        &self.flip
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn generator(&self, id: &str) -> Option<&Generator> {
        self.index_of(id).map(|k| &self.generators[k])
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        self.differential
            .iter()
            .map(|t| Arrow {
                from: self.index[&t.from],
                to: self.index[&t.to],
                upower: t.upower,
            })
            .collect()
    }

    /// σ as an index permutation, or the first id that appears in two swaps.
    pub fn sigma(&self) -> Result<Vec<usize>, Violation> {
        let mut sigma: Vec<usize> = (0..self.len()).collect();
        let mut touched = vec![false; self.len()];
        for (a, b) in self.flip.pairs() {
            let (i, j) = (self.index[a], self.index[b]);
            for k in [i, j] {
                if touched[k] {
                    return Err(Violation::FlipNotInvolution {
                        id: self.generators[k].id.clone(),
                    });
                }
                touched[k] = true;
            }
            sigma[i] = j;
            sigma[j] = i;
        }
        Ok(sigma)
    }

    pub fn max_abs_alexander(&self) -> u32 {
        self.generators.iter().map(|g| g.alexander.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn max_upower(&self) -> u32 {
        self.differential.iter().map(|t| t.upower).max().unwrap_or(0)
    }

    /// Lists every violated law: grading, filtration, ∂² = 0, the flip laws,
    /// and the rank-one condition on homology with U inverted.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for t in &self.differential {
            let from = &self.generators[self.index[&t.from]];
            let to = &self.generators[self.index[&t.to]];
            let expected = from.maslov - rational::int(1) + rational::int(2 * t.upower as i64);
            if to.maslov != expected {
                violations.push(Violation::GradingLaw {
                    term: t.clone(),
                    expected,
                    found: to.maslov,
                });
            }
            if to.alexander as i64 - t.upower as i64 > from.alexander as i64 {
                violations.push(Violation::Filtration { term: t.clone() });
            }
        }
        let square = self.boundary_square_violations();
        let square_ok = square.is_empty();
        violations.extend(square);
        violations.extend(self.flip_violations());
        if square_ok {
            violations.extend(self.inverted_homology_violations());
        }
        ValidationReport { violations }
    }

    /// `∂x` as a map from (target, U-exponent) to its F₂ coefficient, with
    /// U-exponents allowed to be negative.
    fn boundary_of(&self, arrows_from: &[Vec<(usize, u32)>], x: usize, shift: i64) -> BTreeMap<(usize, i64), bool> {
        let mut out = BTreeMap::new();
        for &(y, a) in &arrows_from[x] {
            let e = out.entry((y, shift + a as i64)).or_insert(false);
            *e = !*e;
        }
        out.retain(|_, v| *v);
        out
    }

    fn arrows_by_source(&self) -> Vec<Vec<(usize, u32)>> {
        let mut by_source = vec![Vec::new(); self.len()];
        for a in self.arrows() {
            by_source[a.from].push((a.to, a.upower));
        }
        by_source
    }

    fn boundary_square_violations(&self) -> Vec<Violation> {
        let by_source = self.arrows_by_source();
        let mut out = Vec::new();
        for x in 0..self.len() {
            let mut square: BTreeMap<(usize, u32), bool> = BTreeMap::new();
            for &(y, a) in &by_source[x] {
                for &(z, b) in &by_source[y] {
                    let e = square.entry((z, a + b)).or_insert(false);
                    *e = !*e;
                }
            }
            for ((z, u), nonzero) in square {
                if nonzero {
                    out.push(Violation::BoundarySquare {
                        from: self.generators[x].id.clone(),
                        to: self.generators[z].id.clone(),
                        upower: u,
                    });
                }
            }
        }
        out
    }

    fn flip_violations(&self) -> Vec<Violation> {
        let sigma = match self.sigma() {
            Ok(s) => s,
            Err(v) => return vec![v],
        };
        let mut out = Vec::new();
        for (x, g) in self.generators.iter().enumerate() {
            let s = &self.generators[sigma[x]];
            if s.alexander != -g.alexander {
                out.push(Violation::FlipAlexander { id: g.id.clone() });
            }
            if s.maslov != g.maslov - rational::int(2 * g.alexander as i64) {
                out.push(Violation::FlipMaslov { id: g.id.clone() });
            }
        }
        // Φ(x) = U^{-A(x)} σ(x); compare Φ(∂x) with ∂(Φx) as Laurent sums in U.
        let by_source = self.arrows_by_source();
        for x in 0..self.len() {
            let mut phi_of_boundary: BTreeMap<(usize, i64), bool> = BTreeMap::new();
            for (&(y, e), _) in &self.boundary_of(&by_source, x, 0) {
                let key = (sigma[y], e - self.generators[y].alexander as i64);
                let v = phi_of_boundary.entry(key).or_insert(false);
                *v = !*v;
            }
            phi_of_boundary.retain(|_, v| *v);
            let boundary_of_phi =
                self.boundary_of(&by_source, sigma[x], -(self.generators[x].alexander as i64));
            if phi_of_boundary != boundary_of_phi {
                out.push(Violation::FlipNotChainMap {
                    id: self.generators[x].id.clone(),
                });
            }
        }
        out
    }

    /// Setting U = 1 gives a complex over F₂ graded by Maslov mod 2 whose
    /// homology has the rank of the U-inverted homology.
    fn inverted_homology_violations(&self) -> Vec<Violation> {
        let two = rational::int(2);
        let class_of = |m: Rational| {
            let r = m - (m / two).floor() * two;
            debug_assert!(r >= Rational::zero() && r < two);
            r
        };
        let mut classes: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for (k, g) in self.generators.iter().enumerate() {
            classes.entry(class_of(g.maslov)).or_default().push(k);
        }
        let n = self.len();
        let full = SparseMatrix::from_entries(
            n,
            n,
            self.arrows().into_iter().map(|a| (a.to, a.from, Gf2(true))),
        );
        let total = n - 2 * gf2_rank(&full);
        if total != 1 {
            return vec![Violation::InvertedHomologyRank { rank: total }];
        }
        let mut out = Vec::new();
        for (class, members) in &classes {
            let below = class_of(*class - rational::int(1));
            let above = class_of(*class + rational::int(1));
            let empty = Vec::new();
            let lower = classes.get(&below).unwrap_or(&empty);
            let upper = classes.get(&above).unwrap_or(&empty);
            let out_rank = gf2_rank(&full.submatrix(lower, members));
            let in_rank = gf2_rank(&full.submatrix(members, upper));
            let dim = members.len() - out_rank - in_rank;
            if dim > 0 && !class.is_zero() {
                out.push(Violation::TowerParity { class: *class });
            }
        }
        out
    }
}
