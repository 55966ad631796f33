//! Truncated A⁺ₛ/B⁺ complexes, the maps vₛ and hₛ, the zero-surgery mapping
//! cones, and the quantities extracted from them.

pub mod complex;
pub mod cone;
pub mod engine;
pub mod raw;
pub mod truncated;

use thiserror::Error;

pub use complex::{GradedComplex, GradedPiece, HomologySummary, TowerBottom};
pub use cone::{build_cone, cone_homology, cone_tower_bottom, ConeComplex, ConeMode, ConeTotal, GradedModuleSummary};
pub use engine::{
    compute_v, compute_v_at, d_totally_twisted_at, d_totally_twisted_zero_surgery, stabilize, stability_run,
    twisted_complex_d, twisted_complex_d_at, untwisted_tower_bottoms, untwisted_tower_bottoms_at, CertificateEntry,
    EngineConfig, StabilityOp, StabilityOutcome,
};
pub use raw::{
    nonsplit_tower, parse_raw_twisted, raw_builtin, raw_twisted_from_json, serialize_raw_twisted, RawError,
    RawGenerator, RawTerm, RawTwistedComplex, RAW_BUILTIN_NAMES,
};
pub use truncated::{build_a_plus, build_b_plus, maps_between, maps_v_h, truncation_floor, Region, TruncatedComplex, VhMaps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("truncation level {requested} is below the safe floor {floor}")]
    TruncationBelowFloor { requested: u32, floor: u32 },
    #[error("at least 2 stability rounds are required, got {0}")]
    TooFewRounds(u32),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("the s = {s} mapping cone is only relatively graded")]
    RelativeGradingOnly { s: i64 },
    #[error("no U-tower found inside the exact window at truncation {truncation}")]
    NoTower { truncation: u32 },
    #[error("inconsistent tower structure: {detail}")]
    InconsistentTower { detail: String },
    #[error("value changed under truncation doubling ({certificate})")]
    Unstable { certificate: String },
}
