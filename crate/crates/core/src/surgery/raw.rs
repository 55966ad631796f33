//! Free complexes over F₂[t,t⁻¹][U] given directly, without a knot: each
//! differential entry is a Laurent polynomial times a power of U.
//!
//! ```json
//! {"generators": [{"id": "a", "grading": "1/2"}, ...],
//!  "differential": [{"from": "a", "to": "b", "upower": 0, "poly": [0, 2]}, ...]}
//! ```
//! The `poly` field lists the exponents of t with coefficient one.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{LaurentPoly, SparseMatrix};
use crate::rational::{self, Rational};

use super::complex::GradedComplex;
use super::EngineError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGenerator {
    pub id: String,
    pub grading: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub from: String,
    pub to: String,
    pub upower: u32,
    pub poly: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RawError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate generator id `{0}`")]
    DuplicateId(String),
    #[error("unknown generator id `{0}` in the differential")]
    UnknownId(String),
    #[error("grading law violated by the term {from} -> U^{upower}·{to}")]
    GradingLaw { from: String, to: String, upower: u32 },
    #[error("boundary squares to a nonzero map at `{from}`: coefficient {coefficient} on U^{upower}·{to}")]
    BoundarySquare {
        from: String,
        to: String,
        upower: u32,
        coefficient: String,
    },
}

/// A validated complex with generators sorted by id and like terms combined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTwistedComplex {
    name: String,
    generators: Vec<RawGenerator>,
    differential: Vec<RawTerm>,
}

impl RawTwistedComplex {
    pub fn new(name: impl Into<String>, mut generators: Vec<RawGenerator>, terms: Vec<RawTerm>) -> Result<Self, RawError> {
        generators.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = HashMap::new();
        for (k, g) in generators.iter().enumerate() {
            if index.insert(g.id.clone(), k).is_some() {
                return Err(RawError::DuplicateId(g.id.clone()));
            }
        }
        let mut combined: BTreeMap<(String, String, u32), LaurentPoly> = BTreeMap::new();
        for t in terms {
            for id in [&t.from, &t.to] {
                if !index.contains_key(id) {
                    return Err(RawError::UnknownId(id.clone()));
                }
            }
            *combined.entry((t.from, t.to, t.upower)).or_insert_with(LaurentPoly::zero) += t.poly;
        }
        let differential: Vec<RawTerm> = combined
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|((from, to, upower), poly)| RawTerm { from, to, upower, poly })
            .collect();
        let grading = |id: &str| generators[index[id]].grading;
        for t in &differential {
            if grading(&t.to) - rational::int(2 * t.upower as i64) != grading(&t.from) - rational::int(1) {
                return Err(RawError::GradingLaw {
                    from: t.from.clone(),
                    to: t.to.clone(),
                    upower: t.upower,
                });
            }
        }
        let c = RawTwistedComplex {
            name: name.into(),
            generators,
            differential,
        };
        c.check_square(&index)?;
        Ok(c)
    }

    fn check_square(&self, index: &HashMap<String, usize>) -> Result<(), RawError> {
        let mut by_source: Vec<Vec<&RawTerm>> = vec![Vec::new(); self.generators.len()];
        for t in &self.differential {
            by_source[index[&t.from]].push(t);
        }
        for (x, terms) in by_source.iter().enumerate() {
            let mut square: BTreeMap<(usize, u32), LaurentPoly> = BTreeMap::new();
            for t in terms {
                for u in &by_source[index[&t.to]] {
                    *square.entry((index[&u.to], t.upower + u.upower)).or_insert_with(LaurentPoly::zero) +=
                        &t.poly * &u.poly;
                }
            }
            if let Some(((z, e), p)) = square.into_iter().find(|(_, p)| !p.is_zero()) {
                return Err(RawError::BoundarySquare {
                    from: self.generators[x].id.clone(),
                    to: self.generators[z].id.clone(),
                    upower: e,
                    coefficient: p.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[RawGenerator] {
        &self.generators
    }

    pub fn differential(&self) -> &[RawTerm] {
        &self.differential
    }

    pub fn max_upower(&self) -> u32 {
        self.differential.iter().map(|t| t.upower).max().unwrap_or(0)
    }

    /// Smallest truncation level accepted by [`truncate`](Self::truncate).
    pub fn truncation_floor(&self) -> u32 {
        2 * self.max_upower() + 4
    }

    /// The ⁺-complex: basis `(x, n)` for `U^{-n}·x`, `0 ≤ n ≤ N`, in grading
    /// `gr(x) + 2n`.
    pub fn truncate(&self, n: u32) -> Result<GradedComplex<LaurentPoly>, EngineError> {
        let floor = self.truncation_floor();
        if n < floor {
            return Err(EngineError::TruncationBelowFloor { requested: n, floor });
        }
        let levels = n as usize + 1;
        let pos = |x: usize, m: usize| x * levels + m;
        let index: HashMap<&str, usize> = self.generators.iter().enumerate().map(|(k, g)| (g.id.as_str(), k)).collect();
        let size = self.generators.len() * levels;
        let mut labels = Vec::with_capacity(size);
        let mut gradings = Vec::with_capacity(size);
        let mut u_map = Vec::with_capacity(size);
        for g in &self.generators {
            for m in 0..levels {
                labels.push(format!("U^-{m}·{}", g.id));
                gradings.push(g.grading + rational::int(2 * m as i64));
                u_map.push(m.checked_sub(1).map(|m1| pos(index[g.id.as_str()], m1)));
            }
        }
        let mut entries = Vec::new();
        for t in &self.differential {
            let (x, y) = (index[t.from.as_str()], index[t.to.as_str()]);
            for m in (t.upower as usize)..levels {
                entries.push((pos(y, m - t.upower as usize), pos(x, m), t.poly.clone()));
            }
        }
        let first_incomplete = self
            .generators
            .iter()
            .map(|g| g.grading + rational::int(2 * (n as i64 + 1)))
            .min()
            .unwrap_or_else(|| rational::int(0));
        Ok(GradedComplex::new(
            labels,
            gradings,
            SparseMatrix::from_entries(size, size, entries),
            u_map,
            first_incomplete,
        ))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRaw {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    generators: Vec<FileGenerator>,
    #[serde(default)]
    differential: Vec<FileTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileGenerator {
    id: String,
    #[serde(serialize_with = "ser_grading", deserialize_with = "de_grading")]
    grading: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTerm {
    from: String,
    to: String,
    upower: u32,
    poly: Vec<i32>,
}

fn ser_grading<S: Serializer>(g: &Rational, s: S) -> Result<S::Ok, S::Error> {
    if g.is_integer() {
        s.serialize_i64(*g.numer())
    } else {
        s.serialize_str(&rational::format(g))
    }
}

fn de_grading<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }
    match Raw::deserialize(d)? {
        Raw::Int(n) => Ok(rational::int(n)),
        Raw::Text(s) => rational::parse(&s).map_err(serde::de::Error::custom),
    }
}

fn from_file(file: FileRaw) -> Result<RawTwistedComplex, RawError> {
    RawTwistedComplex::new(
        file.name.unwrap_or_else(|| "raw".to_string()),
        file.generators
            .into_iter()
            .map(|g| RawGenerator { id: g.id, grading: g.grading })
            .collect(),
        file.differential
            .into_iter()
            .map(|t| RawTerm {
                from: t.from,
                to: t.to,
                upower: t.upower,
                poly: LaurentPoly::from_exponents(t.poly),
            })
            .collect(),
    )
}

fn syntax(e: serde_json::Error) -> RawError {
    RawError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_raw_twisted(text: &str) -> Result<RawTwistedComplex, RawError> {
    from_file(serde_json::from_str(text).map_err(syntax)?)
}

pub fn raw_twisted_from_json(value: &serde_json::Value) -> Result<RawTwistedComplex, RawError> {
    from_file(FileRaw::deserialize(value).map_err(syntax)?)
}

pub fn serialize_raw_twisted(c: &RawTwistedComplex) -> String {
    let file = FileRaw {
        name: Some(c.name.clone()),
        generators: c
            .generators
            .iter()
            .map(|g| FileGenerator {
                id: g.id.clone(),
                grading: g.grading,
            })
            .collect(),
        differential: c
            .differential
            .iter()
            .map(|t| FileTerm {
                from: t.from.clone(),
                to: t.to.clone(),
                upower: t.upower,
                poly: t.poly.exponents(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("raw complex serializes");
    s.push('\n');
    s
}

/// A complex whose twisted tower does not split off as a direct summand:
/// the lowest tower class is `(1+t)·b` inside `F₂[t,t⁻¹]/((1+t)²)·b`.
///
/// ∂a = (1+t²)·b + (1+t)·U·c, ∂b = U·d, ∂c = (1+t)·d, with gradings
/// a: 1/2, b: −1/2, c: 3/2, d: 1/2.
pub fn nonsplit_tower() -> RawTwistedComplex {
    let g = |id: &str, grading: Rational| RawGenerator {
        id: id.to_string(),
        grading,
    };
    let term = |from: &str, to: &str, upower: u32, exps: &[i32]| RawTerm {
        from: from.to_string(),
        to: to.to_string(),
        upower,
        poly: LaurentPoly::from_exponents(exps.iter().copied()),
    };
    let half = rational::half();
    RawTwistedComplex::new(
        "nonsplit_tower",
        vec![
            g("a", half),
            g("b", -half),
            g("c", rational::int(1) + half),
            g("d", half),
        ],
        vec![
            term("a", "b", 0, &[0, 2]),
            term("a", "c", 1, &[0, 1]),
            term("b", "d", 1, &[0]),
            term("c", "d", 0, &[0, 1]),
        ],
    )
    .expect("well-formed")
}

pub const RAW_BUILTIN_NAMES: [&str; 1] = ["nonsplit_tower"];

pub fn raw_builtin(name: &str) -> Option<RawTwistedComplex> {
    (name == "nonsplit_tower").then(nonsplit_tower)
}
