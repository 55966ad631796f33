//! Built-in complexes, addressable by name.

use thiserror::Error;

use super::construct::{direct_sum, mirror, staircase, with_prefix};
use super::model::{CfkComplex, DiffTerm, FlipInvolution, Generator};
use crate::rational::int;

pub const CATALOG_NAMES: [&str; 5] = [
    "unknot",
    "trefoil_right",
    "trefoil_left",
    "figure8",
    "whitehead_double_trefoil_model",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown catalog entry `{0}` (known: {known})", known = CATALOG_NAMES.join(", "))]
pub struct UnknownCatalogEntry(pub String);

pub fn catalog_names() -> &'static [&'static str] {
    &CATALOG_NAMES
}

pub fn catalog_get(name: &str) -> Result<CfkComplex, UnknownCatalogEntry> {
    Ok(match name {
        "unknot" => unknot(),
        "trefoil_right" => trefoil_right(),
        "trefoil_left" => mirror(&trefoil_right()).with_name("trefoil_left"),
        "figure8" => direct_sum("figure8", &[&unknot(), &acyclic_square()]).expect("disjoint ids"),
        "whitehead_double_trefoil_model" => direct_sum(
            "whitehead_double_trefoil_model",
            &[&trefoil_right(), &with_prefix(&acyclic_square(), "q")],
        )
        .expect("disjoint ids"),
        _ => return Err(UnknownCatalogEntry(name.to_string())),
    })
}

fn unknot() -> CfkComplex {
    staircase(&[]).expect("empty staircase").with_name("unknot")
}

fn trefoil_right() -> CfkComplex {
    CfkComplex::new(
        "trefoil_right",
        vec![
            Generator::new("a", int(0), 1),
            Generator::new("b", int(-1), 0),
            Generator::new("c", int(-2), -1),
        ],
        vec![DiffTerm::new("b", "a", 1), DiffTerm::new("b", "c", 0)],
        FlipInvolution::new([("a", "c")]),
    )
    .expect("well-formed")
}

/// The acyclic square `a → b + U·c`, `c → e`, `b → U·e`, with σ swapping b and c.
pub fn acyclic_square() -> CfkComplex {
    CfkComplex::new(
        "square",
        vec![
            Generator::new("a", int(0), 0),
            Generator::new("b", int(-1), -1),
            Generator::new("c", int(1), 1),
            Generator::new("e", int(0), 0),
        ],
        vec![
            DiffTerm::new("a", "b", 0),
            DiffTerm::new("a", "c", 1),
            DiffTerm::new("c", "e", 0),
            DiffTerm::new("b", "e", 1),
        ],
        FlipInvolution::new([("b", "c")]),
    )
    .expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gf2_rank, Gf2, SparseMatrix};
    use crate::cfk::construct::is_isomorphic;

    /// Ranks of the associated graded (arrows with no filtration drop in either
    /// coordinate), split by Alexander grading.
    fn hfk_ranks(c: &CfkComplex) -> std::collections::BTreeMap<i32, usize> {
        let gens = c.generators();
        let mut out = std::collections::BTreeMap::new();
        for a in gens.iter().map(|g| g.alexander).collect::<std::collections::BTreeSet<_>>() {
            let idx: Vec<usize> = (0..gens.len()).filter(|&k| gens[k].alexander == a).collect();
            let d = SparseMatrix::from_entries(
                gens.len(),
                gens.len(),
                c.arrows()
                    .into_iter()
                    .filter(|t| t.upower == 0 && gens[t.from].alexander == gens[t.to].alexander)
                    .map(|t| (t.to, t.from, Gf2(true))),
            );
            let block = d.submatrix(&idx, &idx);
            out.insert(a, idx.len() - 2 * gf2_rank(&block));
        }
        out
    }

    #[test]
    fn all_entries_validate() {
        for name in catalog_names() {
            let c = catalog_get(name).unwrap();
            assert_eq!(c.name(), *name);
            assert!(c.validate().is_ok(), "{name}: {:?}", c.validate());
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(catalog_get("unknot").unwrap().len(), 1);
        assert_eq!(catalog_get("figure8").unwrap().len(), 5);
        assert_eq!(catalog_get("whitehead_double_trefoil_model").unwrap().len(), 7);
        assert!(catalog_get("nope").is_err());
    }

    #[test]
    fn left_trefoil_gradings() {
        let l = catalog_get("trefoil_left").unwrap();
        let mut ma: Vec<_> = l.generators().iter().map(|g| (g.maslov, g.alexander)).collect();
        ma.sort();
        assert_eq!(ma, vec![(int(0), -1), (int(1), 0), (int(2), 1)]);
    }

    #[test]
    fn figure8_knot_floer_ranks() {
        let ranks = hfk_ranks(&catalog_get("figure8").unwrap());
        assert_eq!(ranks.into_iter().collect::<Vec<_>>(), vec![(-1, 1), (0, 3), (1, 1)]);
    }

    #[test]
    fn figure8_is_amphichiral() {
        let f = catalog_get("figure8").unwrap();
        assert!(is_isomorphic(&f, &mirror(&f)));
    }

    #[test]
    fn square_is_acyclic() {
        let sq = acyclic_square();
        let n = sq.len();
        let d = SparseMatrix::from_entries(n, n, sq.arrows().into_iter().map(|t| (t.to, t.from, Gf2(true))));
        assert_eq!(n - 2 * gf2_rank(&d), 0);
    }
}
