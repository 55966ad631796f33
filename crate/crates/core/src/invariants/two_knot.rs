//! Invariants of 2-knots Σ ⊂ S⁴ built from correction terms of a
//! cross-section, and the symmetry obstructions they give.

use serde::Serialize;

use crate::rational::{self, Rational};

/// `(d̃(Σ), d̃(Σʳ), d̃(Σ̄), d̃(Σ̄ʳ))`: Σʳ is the reverse, Σ̄ the mirror.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoKnotInvariants {
    #[serde(with = "rational::as_string")]
    pub d_sigma: Rational,
    #[serde(with = "rational::as_string")]
    pub d_sigma_r: Rational,
    #[serde(with = "rational::as_string")]
    pub d_sigma_bar: Rational,
    #[serde(with = "rational::as_string")]
    pub d_sigma_bar_r: Rational,
}

impl TwoKnotInvariants {
    pub fn new(d_sigma: Rational, d_sigma_r: Rational, d_sigma_bar: Rational, d_sigma_bar_r: Rational) -> Self {
        TwoKnotInvariants {
            d_sigma,
            d_sigma_r,
            d_sigma_bar,
            d_sigma_bar_r,
        }
    }

    pub fn values(&self) -> [Rational; 4] {
        [self.d_sigma, self.d_sigma_r, self.d_sigma_bar, self.d_sigma_bar_r]
    }

    /// Exchanges Σ with Σ̄ (and Σʳ with Σ̄ʳ).
    pub fn mirrored(&self) -> Self {
        TwoKnotInvariants::new(self.d_sigma_bar, self.d_sigma_bar_r, self.d_sigma, self.d_sigma_r)
    }
}

/// Σ fibered with fiber Y: `d̃(Σ) = d̃(Σ̄) = d(Y;Λ) + b₁/2` and
/// `d̃(Σʳ) = d̃(Σ̄ʳ) = d(−Y;Λ) + b₁/2`.
pub fn fibered_two_knot(d_plus: Rational, d_minus: Rational, b1: u32) -> TwoKnotInvariants {
    let shift = Rational::new(b1 as i64, 2);
    TwoKnotInvariants::new(d_plus + shift, d_minus + shift, d_plus + shift, d_minus + shift)
}

/// Cross-section a rational homology sphere with correction term d.
pub fn qhs_fiber_two_knot(d: Rational) -> TwoKnotInvariants {
    TwoKnotInvariants::new(d, -d, d, -d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub obstructed: bool,
    /// The identity that every Σ with the property satisfies.
    pub identity: &'static str,
    /// The two sides of the identity, from the first clause that fails (or
    /// the first clause, when none fails).
    #[serde(with = "rational::as_string")]
    pub lhs: Rational,
    #[serde(with = "rational::as_string")]
    pub rhs: Rational,
}

impl Obstruction {
    fn from_clauses(identity: &'static str, clauses: &[(Rational, Rational)]) -> Self {
        let (lhs, rhs) = clauses
            .iter()
            .copied()
            .find(|(l, r)| l != r)
            .unwrap_or(clauses[0]);
        Obstruction {
            obstructed: lhs != rhs,
            identity,
            lhs,
            rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub reversible: Obstruction,
    pub positive_amphichiral: Obstruction,
    pub negative_amphichiral: Obstruction,
    pub ribbon: Obstruction,
    pub d_symmetric_seifert: Obstruction,
    pub qhs_seifert: Obstruction,
}

impl ObstructionReport {
    pub fn flags(&self) -> [(&'static str, bool); 6] {
        [
            ("reversible", self.reversible.obstructed),
            ("positive_amphichiral", self.positive_amphichiral.obstructed),
            ("negative_amphichiral", self.negative_amphichiral.obstructed),
            ("ribbon", self.ribbon.obstructed),
            ("d_symmetric_seifert", self.d_symmetric_seifert.obstructed),
            ("qhs_seifert", self.qhs_seifert.obstructed),
        ]
    }

    pub fn any(&self) -> bool {
        self.flags().iter().any(|(_, f)| *f)
    }
}

pub fn obstruction_report(q: &TwoKnotInvariants) -> ObstructionReport {
    let [s, r, b, br] = q.values();
    let zero = rational::int(0);
    ObstructionReport {
        reversible: Obstruction::from_clauses("d~(S) = d~(S^r)", &[(s, r)]),
        positive_amphichiral: Obstruction::from_clauses("d~(S) = d~(Sbar)", &[(s, b)]),
        negative_amphichiral: Obstruction::from_clauses("d~(S) = d~(Sbar^r)", &[(s, br)]),
        ribbon: Obstruction::from_clauses(
            "d~(S) = d~(S^r) = d~(Sbar) = d~(Sbar^r) = 0",
            &[(s, zero), (r, zero), (b, zero), (br, zero)],
        ),
        d_symmetric_seifert: Obstruction::from_clauses(
            "d~(S) = -d~(Sbar^r) and d~(S^r) = -d~(Sbar)",
            &[(s, -br), (r, -b)],
        ),
        qhs_seifert: Obstruction::from_clauses(
            "(d~(S), d~(S^r), d~(Sbar), d~(Sbar^r)) = (d, -d, d, -d)",
            &[(r, -s), (b, s), (br, -s)],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, int};

    #[test]
    fn fibered_examples() {
        assert_eq!(
            fibered_two_knot(int(2), int(-2), 0).values(),
            [int(2), int(-2), int(2), int(-2)]
        );
        assert_eq!(fibered_two_knot(int(0), int(0), 0).values(), [int(0); 4]);
        assert_eq!(fibered_two_knot(-half(), -half(), 1).values(), [int(0); 4]);
    }

    #[test]
    fn poincare_sphere_fiber() {
        let q = qhs_fiber_two_knot(int(2));
        assert_eq!(q.values(), [int(2), int(-2), int(2), int(-2)]);
        let o = obstruction_report(&q);
        assert!(o.reversible.obstructed);
        assert_eq!((o.reversible.lhs, o.reversible.rhs), (int(2), int(-2)));
        assert!(o.negative_amphichiral.obstructed);
        assert!(!o.positive_amphichiral.obstructed);
        assert!(o.ribbon.obstructed);
        assert!(!o.d_symmetric_seifert.obstructed);
        assert!(!o.qhs_seifert.obstructed);
    }

    #[test]
    fn trivial_quadruple() {
        let o = obstruction_report(&TwoKnotInvariants::new(int(0), int(0), int(0), int(0)));
        assert!(!o.any());
    }

    #[test]
    fn no_symmetric_seifert_surface() {
        let o = obstruction_report(&TwoKnotInvariants::new(int(0), int(-2), int(0), int(-2)));
        assert!(o.d_symmetric_seifert.obstructed);
        assert_eq!((o.d_symmetric_seifert.lhs, o.d_symmetric_seifert.rhs), (int(0), int(2)));
    }
}
