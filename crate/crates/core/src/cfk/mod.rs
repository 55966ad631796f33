//! Knot Floer complexes CFK∞ of knots in S³: model, file format, validation
//! and constructions.

pub mod catalog;
pub mod construct;
pub mod format;
pub mod model;

pub use catalog::{acyclic_square, catalog_get, catalog_names, UnknownCatalogEntry, CATALOG_NAMES};
pub use construct::{direct_sum, find_isomorphism, is_isomorphic, mirror, staircase, tensor, with_prefix, StaircaseError};
pub use format::{cfk_from_json, cfk_to_json, parse_cfk, parse_cfk_unchecked, serialize_cfk};
pub use model::{Arrow, CfkComplex, CfkError, DiffTerm, FlipInvolution, Generator, ValidationReport, Violation};
