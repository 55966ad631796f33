//! Reference values from the literature that the engine does not derive
//! (their cross-sections have b₁ ≥ 2). Used for documentation and as inputs
//! to the obstruction checker only.

use crate::rational::{self, Rational};

use super::two_knot::TwoKnotInvariants;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceValue {
    Scalar(Rational),
    Quadruple(TwoKnotInvariants),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceConstant {
    pub key: &'static str,
    pub description: &'static str,
    pub value: ReferenceValue,
}

pub fn reference_constants() -> Vec<ReferenceConstant> {
    let int = rational::int;
    vec![
        ReferenceConstant {
            key: "six_twist_spin_trefoil",
            description: "6-twist-spin of the right-handed trefoil; fiber is the 6-fold cyclic \
                          branched cover, with d(Y;Λ) = 1 and d(−Y;Λ) = −1",
            value: ReferenceValue::Quadruple(TwoKnotInvariants::new(int(0), int(-2), int(0), int(-2))),
        },
        ReferenceConstant {
            key: "t3_twisted_d",
            description: "d(T³; Λ) for the totally twisted coefficient system",
            value: ReferenceValue::Scalar(rational::half()),
        },
        ReferenceConstant {
            key: "t3_twisted_dtilde",
            description: "shifted correction term of T³ with totally twisted coefficients",
            value: ReferenceValue::Scalar(int(2)),
        },
        ReferenceConstant {
            key: "t3_partial_dtilde",
            description: "shifted correction term of T³ for coefficient subspaces of rank 1 or 2",
            value: ReferenceValue::Scalar(int(0)),
        },
    ]
}

pub fn reference_constant(key: &str) -> Option<ReferenceConstant> {
    reference_constants().into_iter().find(|c| c.key == key)
}

/// The stored 6-twist-spin quadruple.
pub fn six_twist_spin_trefoil() -> TwoKnotInvariants {
    match reference_constant("six_twist_spin_trefoil").map(|c| c.value) {
        Some(ReferenceValue::Quadruple(q)) => q,
        _ => unreachable!("table entry is a quadruple"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique() {
        let mut keys: Vec<_> = reference_constants().iter().map(|c| c.key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), reference_constants().len());
    }

    #[test]
    fn t3_shift_matches_b1() {
        // d̃ = d + b₁/2 with b₁(T³) = 3.
        let Some(ReferenceValue::Scalar(d)) = reference_constant("t3_twisted_d").map(|c| c.value) else {
            panic!()
        };
        let Some(ReferenceValue::Scalar(dt)) = reference_constant("t3_twisted_dtilde").map(|c| c.value) else {
            panic!()
        };
        assert_eq!(dt, d + Rational::new(3, 2));
    }
}
