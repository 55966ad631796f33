//! Finite graded chain complexes with a U-action, their homology slice by
//! slice, and detection of U-towers.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{ModuleShape, Pid, SparseMatrix};
use crate::exec::Exec;
use crate::rational::{self, Rational};

/// A finite chain complex with basis-level gradings and a U-action sending
/// each basis element to another basis element or to zero. It represents a
/// truncation of an infinite complex: slices in gradings below
/// `first_incomplete` coincide with the untruncated ones.
#[derive(Clone, Debug)]
pub struct GradedComplex<C> {
    labels: Vec<String>,
    gradings: Vec<Rational>,
    /// Entry `(target, source)`.
    boundary: SparseMatrix<C>,
    u_map: Vec<Option<usize>>,
    first_incomplete: Rational,
    slices: BTreeMap<Rational, Vec<usize>>,
}

impl<C: Pid> GradedComplex<C> {
    pub fn new(
        labels: Vec<String>,
        gradings: Vec<Rational>,
        boundary: SparseMatrix<C>,
        u_map: Vec<Option<usize>>,
        first_incomplete: Rational,
    ) -> Self {
        let n = gradings.len();
        assert!(labels.len() == n && u_map.len() == n);
        assert!(boundary.rows() == n && boundary.cols() == n);
        let mut slices: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for (k, g) in gradings.iter().enumerate() {
            slices.entry(*g).or_default().push(k);
        }
        GradedComplex {
            labels,
            gradings,
            boundary,
            u_map,
            first_incomplete,
            slices,
        }
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gradings(&self) -> &[Rational] {
        &self.gradings
    }

    pub fn boundary(&self) -> &SparseMatrix<C> {
        &self.boundary
    }

    pub fn u_map(&self) -> &[Option<usize>] {
        &self.u_map
    }

    pub fn first_incomplete(&self) -> Rational {
        self.first_incomplete
    }

    pub fn gradings_present(&self) -> impl Iterator<Item = Rational> + '_ {
        self.slices.keys().copied()
    }

    pub fn slice(&self, g: Rational) -> &[usize] {
        self.slices.get(&g).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The U-action as a 0/1 matrix, entry `(target, source)`.
    pub fn u_matrix(&self) -> SparseMatrix<C> {
        let n = self.len();
        SparseMatrix::from_entries(
            n,
            n,
            self.u_map
                .iter()
                .enumerate()
                .filter_map(|(k, t)| t.map(|t| (t, k, C::one()))),
        )
    }

    /// Checks ∂² = 0, that ∂ lowers grading by one, and that U lowers grading
    /// by two and commutes with ∂.
    pub fn is_well_formed(&self) -> bool {
        let one = rational::int(1);
        let two = rational::int(2);
        let gradings_ok = self
            .boundary
            .iter()
            .all(|(t, s, _)| self.gradings[t] == self.gradings[s] - one)
            && self
                .u_map
                .iter()
                .enumerate()
                .all(|(k, t)| t.is_none_or(|t| self.gradings[t] == self.gradings[k] - two));
        let u = self.u_matrix();
        gradings_ok
            && self.boundary.matmul(&self.boundary).is_zero()
            && self.boundary.matmul(&u) == u.matmul(&self.boundary)
    }

    /// Homology in grading `g` is computed exactly by the truncation.
    pub fn is_exact_at(&self, g: Rational) -> bool {
        g + rational::int(1) < self.first_incomplete
    }

    fn block(&self, rows: Rational, cols: Rational) -> SparseMatrix<C> {
        self.boundary.submatrix(self.slice(rows), self.slice(cols))
    }

    /// Boundaries landing in grading `g`, as columns over its slice.
    pub fn boundaries_at(&self, g: Rational) -> SparseMatrix<C> {
        self.block(g, g + rational::int(1))
    }

    /// Cycles in grading `g` as columns over the slice basis, and the
    /// boundaries landing there.
    fn cycles_and_boundaries(&self, g: Rational) -> (SparseMatrix<C>, SparseMatrix<C>) {
        let one = rational::int(1);
        let out = self.block(g - one, g);
        // A 0-row block has every vector as a cycle.
        let cycles = if out.rows() == 0 {
            SparseMatrix::identity(self.slice(g).len())
        } else {
            SparseMatrix::from_columns(self.slice(g).len(), &C::kernel_basis(&out))
        };
        (cycles, self.block(g, g + one))
    }

    /// `H_g` as a module; meaningful when [`is_exact_at`](Self::is_exact_at).
    pub fn homology_at(&self, g: Rational) -> ModuleShape {
        let (cycles, boundaries) = self.cycles_and_boundaries(g);
        C::subquotient(&boundaries, &cycles)
    }

    /// Applies U^k to columns over the slice in grading `g`, returning columns
    /// over the slice in grading `g − 2k`.
    pub fn push_down(&self, g: Rational, k: u32, columns: &SparseMatrix<C>) -> SparseMatrix<C> {
        let target_g = g - rational::int(2 * k as i64);
        let target_pos: BTreeMap<usize, usize> =
            self.slice(target_g).iter().enumerate().map(|(p, &b)| (b, p)).collect();
        let source = self.slice(g);
        let mut out = SparseMatrix::zeros(target_pos.len(), columns.cols());
        for (r, c, v) in columns.iter() {
            let mut b = Some(source[r]);
            for _ in 0..k {
                b = b.and_then(|b| self.u_map[b]);
            }
            if let Some(b) = b {
                out.add_at(target_pos[&b], c, v);
            }
        }
        out
    }

    /// Cycles in grading `g` that are U^k-images of cycles, as columns over
    /// the slice in grading `g`, together with the boundaries there.
    pub fn tower_generators(&self, g: Rational, k: u32) -> (SparseMatrix<C>, SparseMatrix<C>) {
        let upper = g + rational::int(2 * k as i64);
        let (upper_cycles, _) = self.cycles_and_boundaries(upper);
        let images = self.push_down(upper, k, &upper_cycles);
        (images, self.block(g, g + rational::int(1)))
    }

    /// `im(U^k : H_{g+2k} → H_g)`, or `None` outside the exact window.
    pub fn tower_image_at(&self, g: Rational, k: u32) -> Option<ModuleShape> {
        if !self.is_exact_at(g + rational::int(2 * k as i64)) {
            return None;
        }
        let (images, boundaries) = self.tower_generators(g, k);
        Some(C::subquotient(&boundaries, &images))
    }

    /// Gradings at which tower images can be computed with power `k`,
    /// including empty gradings on the lattice `base + 2ℤ` between the lowest
    /// and highest present gradings of each class mod 2.
    pub fn tower_window(&self, k: u32) -> Vec<Rational> {
        let two = rational::int(2);
        let mut bases: BTreeMap<Rational, Rational> = BTreeMap::new();
        for g in self.slices.keys() {
            let class = *g - (*g / two).floor() * two;
            bases.entry(class).or_insert(*g);
        }
        let mut out = Vec::new();
        for &low in bases.values() {
            let mut g = low;
            while self.is_exact_at(g + rational::int(2 * k as i64)) {
                out.push(g);
                g += two;
            }
        }
        out.sort();
        out
    }

    /// Graded homology and tower structure over the exact window.
    pub fn summarize(&self, k: u32, exec: Exec) -> HomologySummary {
        let window = self.tower_window(k);
        let pieces: Vec<GradedPiece> = exec.map(&window, |&g| {
            let homology = self.homology_at(g);
            let tower = self.tower_image_at(g, k).expect("inside the window");
            GradedPiece {
                grading: g,
                f2_dimension: C::f2_dimension(&homology),
                homology,
                tower_f2_dimension: C::f2_dimension(&tower),
                tower,
            }
        });
        let by_grading: BTreeMap<Rational, &GradedPiece> = pieces.iter().map(|p| (p.grading, p)).collect();
        let mut tower_bottoms = Vec::new();
        for p in &pieces {
            let below = by_grading
                .get(&(p.grading - rational::int(2)))
                .map(|q| q.tower_f2_dimension)
                .unwrap_or(Some(0));
            if let (Some(here), Some(below)) = (p.tower_f2_dimension, below) {
                if here > below {
                    tower_bottoms.push(TowerBottom {
                        grading: p.grading,
                        multiplicity: here - below,
                    });
                }
            }
        }
        HomologySummary {
            u_power: k,
            exact_below: self.first_incomplete - rational::int(1),
            pieces: pieces.into_iter().filter(|p| !p.homology.is_zero()).collect(),
            tower_bottoms,
        }
    }

    /// Lowest grading in the window with a nonzero tower image.
    pub fn lowest_tower_grading(&self, k: u32, exec: Exec) -> Option<Rational> {
        let window = self.tower_window(k);
        let nonzero = exec.map(&window, |&g| {
            let (images, boundaries) = self.tower_generators(g, k);
            !C::subquotient(&boundaries, &images).is_zero()
        });
        window.into_iter().zip(nonzero).find(|(_, nz)| *nz).map(|(g, _)| g)
    }
}

/// Homology in one grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    #[serde(with = "rational::as_string")]
    pub grading: Rational,
    #[serde(serialize_with = "ser_shape")]
    pub homology: ModuleShape,
    pub f2_dimension: Option<usize>,
    /// The image of a high power of U: the part lying on U-towers.
    #[serde(serialize_with = "ser_shape")]
    pub tower: ModuleShape,
    pub tower_f2_dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerBottom {
    #[serde(with = "rational::as_string")]
    pub grading: Rational,
    pub multiplicity: usize,
}

/// Nonzero homology slices and tower bottoms inside the exact window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub u_power: u32,
    /// Gradings up to and including this one are computed exactly.
    #[serde(with = "rational::as_string")]
    pub exact_below: Rational,
    pub pieces: Vec<GradedPiece>,
    pub tower_bottoms: Vec<TowerBottom>,
}

impl HomologySummary {
    pub fn piece(&self, g: Rational) -> Option<&GradedPiece> {
        self.pieces.iter().find(|p| p.grading == g)
    }
}

fn ser_shape<S: serde::Serializer>(shape: &ModuleShape, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("ModuleShape", 2)?;
    st.serialize_field("free_rank", &shape.free_rank)?;
    let torsion: Vec<String> = shape.torsion.iter().map(|p| p.to_string()).collect();
    st.serialize_field("torsion", &torsion)?;
    st.end()
}

/// Converts an F₂ complex to one over another coefficient ring.
pub fn extend_scalars<C: Pid, D: Pid>(c: &GradedComplex<C>, f: impl Fn(&C) -> D) -> GradedComplex<D> {
    GradedComplex::new(
        c.labels.clone(),
        c.gradings.clone(),
        c.boundary.map(f),
        c.u_map.clone(),
        c.first_incomplete,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf2, LaurentPoly};
    use crate::rational::int;

    /// F₂[U⁻¹] truncated to `len` levels starting at grading `bottom`.
    fn tower(bottom: i64, len: usize) -> GradedComplex<Gf2> {
        GradedComplex::new(
            (0..len).map(|k| format!("x{k}")).collect(),
            (0..len).map(|k| int(bottom + 2 * k as i64)).collect(),
            SparseMatrix::zeros(len, len),
            (0..len).map(|k| k.checked_sub(1)).collect(),
            int(bottom + 2 * len as i64),
        )
    }

    #[test]
    fn single_tower() {
        let t = tower(0, 6);
        assert!(t.is_well_formed());
        let summary = t.summarize(2, Exec::Sequential);
        assert_eq!(summary.tower_bottoms, vec![TowerBottom { grading: int(0), multiplicity: 1 }]);
        assert_eq!(t.lowest_tower_grading(2, Exec::Sequential), Some(int(0)));
        assert_eq!(t.homology_at(int(4)).free_rank, 1);
        assert_eq!(t.homology_at(int(3)).free_rank, 0);
    }

    #[test]
    fn killed_bottom_moves_the_tower_up() {
        // Tower x0, x1, … plus y in grading 1 with ∂y = x0.
        let len: usize = 6;
        let mut labels: Vec<String> = (0..len).map(|k| format!("x{k}")).collect();
        labels.push("y".into());
        let mut gradings: Vec<Rational> = (0..len).map(|k| int(2 * k as i64)).collect();
        gradings.push(int(1));
        let mut u_map: Vec<Option<usize>> = (0..len).map(|k| k.checked_sub(1)).collect();
        u_map.push(None);
        let boundary = SparseMatrix::from_entries(len + 1, len + 1, [(0, len, Gf2(true))]);
        let c = GradedComplex::new(labels, gradings, boundary, u_map, int(2 * len as i64));
        assert!(c.is_well_formed());
        assert!(c.homology_at(int(0)).is_zero());
        assert_eq!(c.lowest_tower_grading(2, Exec::Sequential), Some(int(2)));
    }

    #[test]
    fn torsion_tower_over_laurent_ring() {
        let one_plus_t = LaurentPoly::from_exponents([0, 1]);
        // cone of (1+t): two-level complex per grading.
        let n: usize = 12;
        let mut entries = Vec::new();
        for k in 0..6 {
            entries.push((2 * k + 1, 2 * k, one_plus_t.clone()));
        }
        let gradings = (0..n)
            .map(|b| if b % 2 == 0 { int(2 * (b / 2) as i64) + rational::half() } else { int(2 * (b / 2) as i64) - rational::half() })
            .collect();
        let u_map = (0..n).map(|b| b.checked_sub(2)).collect();
        let cone: GradedComplex<LaurentPoly> = GradedComplex::new(
            (0..n).map(|b| b.to_string()).collect(),
            gradings,
            SparseMatrix::from_entries(n, n, entries),
            u_map,
            int(12) - rational::half(),
        );
        assert!(cone.is_well_formed());
        assert_eq!(cone.lowest_tower_grading(2, Exec::Sequential), Some(-rational::half()));
        let h = cone.homology_at(-rational::half());
        assert_eq!(h.torsion, vec![one_plus_t]);
        assert_eq!(LaurentPoly::f2_dimension(&h), Some(1));
    }
}
