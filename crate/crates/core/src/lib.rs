//! Exact computation of Heegaard Floer correction terms for zero-surgeries and
//! ±1-surgeries on knots in the 3-sphere, starting from a finitely generated
//! knot Floer complex.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: sparse linear algebra over F₂ and the Laurent ring F₂[t,t⁻¹],
//!   including Smith normal form.
//! * [`cfk`]: the knot Floer complex model, its JSON format, the validator and
//!   the standard constructions (mirror, tensor product, staircases, catalog).
//! * [`surgery`]: the truncated complexes A⁺ₛ and B⁺, the maps vₛ and hₛ, the
//!   twisted and untwisted zero-surgery mapping cones, graded homology and
//!   tower detection.
//! * [`invariants`]: zero-surgery profiles, consistency checks and the 2-knot
//!   invariants with their symmetry obstructions.
//!
//! Per-grading homology and batch evaluation run on rayon when the default
//! `parallel` feature is enabled; see [`exec::Exec`].

pub mod algebra;
pub mod cfk;
pub mod exec;
pub mod invariants;
pub mod rational;
pub mod surgery;

pub use rational::Rational;
