//! Standard operations on complexes: mirror, tensor product, direct sum,
//! staircases, and isomorphism testing.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::model::{CfkComplex, CfkError, DiffTerm, FlipInvolution, Generator};
use crate::rational::int;

const MIRROR_SUFFIX: &str = "_mirror";

/// Dual complex: gradings negate and every arrow is reversed. Ids are kept.
pub fn mirror(c: &CfkComplex) -> CfkComplex {
    let name = match c.name().strip_suffix(MIRROR_SUFFIX) {
        Some(base) => base.to_string(),
        None => format!("{}{MIRROR_SUFFIX}", c.name()),
    };
    let generators = c
        .generators()
        .iter()
        .map(|g| Generator::new(g.id.clone(), -g.maslov, -g.alexander))
        .collect();
    let differential = c
        .differential()
        .iter()
        .map(|t| DiffTerm::new(t.to.clone(), t.from.clone(), t.upower))
        .collect();
    let flip = FlipInvolution::new(c.flip().pairs().iter().cloned());
    CfkComplex::new(name, generators, differential, flip).expect("mirror preserves structure")
}

fn component(id: &str) -> String {
    if id.contains('.') || id.contains('(') || id.contains(')') {
        format!("({id})")
    } else {
        id.to_string()
    }
}

fn pair_id(x: &str, y: &str) -> String {
    format!("{}.{}", component(x), component(y))
}

/// Tensor product over F₂[U,U⁻¹]; generator `x ⊗ y` gets id `x.y`.
pub fn tensor(c1: &CfkComplex, c2: &CfkComplex) -> CfkComplex {
    let mut generators = Vec::with_capacity(c1.len() * c2.len());
    for x in c1.generators() {
        for y in c2.generators() {
            generators.push(Generator::new(
                pair_id(&x.id, &y.id),
                x.maslov + y.maslov,
                x.alexander + y.alexander,
            ));
        }
    }
    let mut differential = Vec::new();
    for t in c1.differential() {
        for y in c2.generators() {
            differential.push(DiffTerm::new(pair_id(&t.from, &y.id), pair_id(&t.to, &y.id), t.upower));
        }
    }
    for t in c2.differential() {
        for x in c1.generators() {
            differential.push(DiffTerm::new(pair_id(&x.id, &t.from), pair_id(&x.id, &t.to), t.upower));
        }
    }
    let s1 = c1.sigma().unwrap_or_else(|_| (0..c1.len()).collect());
    let s2 = c2.sigma().unwrap_or_else(|_| (0..c2.len()).collect());
    let mut pairs = Vec::new();
    for (i, x) in c1.generators().iter().enumerate() {
        for (j, y) in c2.generators().iter().enumerate() {
            let image = pair_id(&c1.generators()[s1[i]].id, &c2.generators()[s2[j]].id);
            pairs.push((pair_id(&x.id, &y.id), image));
        }
    }
    let name = format!("{}#{}", c1.name(), c2.name());
    CfkComplex::new(name, generators, differential, FlipInvolution::new(pairs)).expect("tensor ids are distinct")
}

/// Copy with every id prefixed.
pub fn with_prefix(c: &CfkComplex, prefix: &str) -> CfkComplex {
    let p = |id: &str| format!("{prefix}{id}");
    CfkComplex::new(
        c.name(),
        c.generators()
            .iter()
            .map(|g| Generator::new(p(&g.id), g.maslov, g.alexander))
            .collect(),
        c.differential()
            .iter()
            .map(|t| DiffTerm::new(p(&t.from), p(&t.to), t.upower))
            .collect(),
        FlipInvolution::new(c.flip().pairs().iter().map(|(a, b)| (p(a), p(b)))),
    )
    .expect("prefixing preserves structure")
}

/// Direct sum of complexes with disjoint ids.
pub fn direct_sum(name: &str, parts: &[&CfkComplex]) -> Result<CfkComplex, CfkError> {
    let mut generators = Vec::new();
    let mut differential = Vec::new();
    let mut pairs = Vec::new();
    for c in parts {
        generators.extend(c.generators().iter().cloned());
        differential.extend(c.differential().iter().cloned());
        pairs.extend(c.flip().pairs().iter().cloned());
    }
    CfkComplex::new(name, generators, differential, FlipInvolution::new(pairs))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseError {
    #[error("staircase needs an even number of steps, got {0}")]
    OddLength(usize),
    #[error("staircase steps must be positive")]
    NonPositive,
    #[error("staircase steps must read the same backwards")]
    NotPalindromic,
}

/// Staircase complex with alternating horizontal and vertical steps
/// `[h₁, v₁, h₂, v₂, …]`; the empty list gives the unknot.
///
/// Generator `x0` sits at filtration level (0, n) where n is the sum of the
/// horizontal steps; odd generators have Maslov grading one above their even
/// neighbours and map horizontally to `x(2m)` and vertically to `x(2m+2)`.
pub fn staircase(steps: &[u32]) -> Result<CfkComplex, StaircaseError> {
    if steps.len() % 2 == 1 {
        return Err(StaircaseError::OddLength(steps.len()));
    }
    if steps.contains(&0) {
        return Err(StaircaseError::NonPositive);
    }
    if steps.iter().rev().ne(steps.iter()) {
        return Err(StaircaseError::NotPalindromic);
    }
    let height: i64 = steps.iter().step_by(2).map(|&h| h as i64).sum();
    let mut positions = vec![(0i64, height)];
    for (k, &s) in steps.iter().enumerate() {
        let (i, j) = *positions.last().expect("nonempty");
        positions.push(if k % 2 == 0 { (i + s as i64, j) } else { (i, j - s as i64) });
    }
    let id = |m: usize| format!("x{m}");
    let generators = positions
        .iter()
        .enumerate()
        .map(|(m, &(i, j))| Generator::new(id(m), int((m % 2) as i64 - 2 * i), (j - i) as i32))
        .collect();
    let mut differential = Vec::new();
    for m in (1..positions.len()).step_by(2) {
        differential.push(DiffTerm::new(id(m), id(m - 1), steps[m - 1]));
        differential.push(DiffTerm::new(id(m), id(m + 1), 0));
    }
    let last = positions.len() - 1;
    let flip = FlipInvolution::new((0..positions.len()).map(|m| (id(m), id(last - m))));
    let name = format!(
        "staircase_{}",
        steps.iter().map(u32::to_string).collect::<Vec<_>>().join("_")
    );
    Ok(CfkComplex::new(name, generators, differential, flip).expect("staircase ids are distinct"))
}

/// Searches for a bijection of generators preserving both gradings, the
/// differential and the flip. Returns `map[i] = j` on generator indices.
pub fn find_isomorphism(c1: &CfkComplex, c2: &CfkComplex) -> Option<Vec<usize>> {
    if c1.len() != c2.len() || c1.differential().len() != c2.differential().len() {
        return None;
    }
    let s1 = c1.sigma().ok()?;
    let s2 = c2.sigma().ok()?;
    let arrows1: BTreeSet<(usize, usize, u32)> = c1.arrows().iter().map(|a| (a.from, a.to, a.upower)).collect();
    let arrows2: BTreeSet<(usize, usize, u32)> = c2.arrows().iter().map(|a| (a.from, a.to, a.upower)).collect();
    let mut candidates: HashMap<(crate::Rational, i32), Vec<usize>> = HashMap::new();
    for (j, g) in c2.generators().iter().enumerate() {
        candidates.entry((g.maslov, g.alexander)).or_default().push(j);
    }
    let options: Vec<Vec<usize>> = c1
        .generators()
        .iter()
        .map(|g| candidates.get(&(g.maslov, g.alexander)).cloned().unwrap_or_default())
        .collect();
    if options.iter().any(Vec::is_empty) {
        return None;
    }
    // Assign generators with the fewest candidates first.
    let mut order: Vec<usize> = (0..c1.len()).collect();
    order.sort_by_key(|&i| options[i].len());

    struct Search<'a> {
        order: Vec<usize>,
        options: Vec<Vec<usize>>,
        arrows1: &'a BTreeSet<(usize, usize, u32)>,
        arrows2: &'a BTreeSet<(usize, usize, u32)>,
        s1: &'a [usize],
        s2: &'a [usize],
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn consistent(&self, i: usize) -> bool {
            let Some(j) = self.map[i] else { return false };
            if let Some(k) = self.map[self.s1[i]] {
                if self.s2[j] != k {
                    return false;
                }
            }
            // Arrows between i and any assigned generator must correspond.
            for (other, mapped) in self.map.iter().enumerate() {
                let Some(mapped) = *mapped else { continue };
                let forward = |set: &BTreeSet<(usize, usize, u32)>, a: usize, b: usize| -> Vec<u32> {
                    set.range((a, b, 0)..=(a, b, u32::MAX)).map(|t| t.2).collect()
                };
                if forward(self.arrows1, i, other) != forward(self.arrows2, j, mapped)
                    || forward(self.arrows1, other, i) != forward(self.arrows2, mapped, j)
                {
                    return false;
                }
            }
            true
        }

        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let i = self.order[depth];
            for k in 0..self.options[i].len() {
                let j = self.options[i][k];
                if self.used[j] {
                    continue;
                }
                self.map[i] = Some(j);
                self.used[j] = true;
                if self.consistent(i) && self.run(depth + 1) {
                    return true;
                }
                self.map[i] = None;
                self.used[j] = false;
            }
            false
        }
    }

    let mut search = Search {
        order,
        options,
        arrows1: &arrows1,
        arrows2: &arrows2,
        s1: &s1,
        s2: &s2,
        map: vec![None; c1.len()],
        used: vec![false; c2.len()],
    };
    if search.run(0) {
        Some(search.map.into_iter().map(|m| m.expect("complete")).collect())
    } else {
        None
    }
}

pub fn is_isomorphic(c1: &CfkComplex, c2: &CfkComplex) -> bool {
    find_isomorphism(c1, c2).is_some()
}
