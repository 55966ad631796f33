//! Machine-readable reports. Field order is fixed and rationals are written
//! in lowest terms as `"p/q"` strings.

use serde::Serialize;

use crate::cfk::CfkComplex;
use crate::surgery::{EngineConfig, EngineError};

use super::profile::{crosscheck_with, zero_surgery_profile, Check, ZeroSurgeryProfile};
use super::two_knot::{obstruction_report, ObstructionReport, TwoKnotInvariants};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub input: String,
    pub profile: Option<ZeroSurgeryProfile>,
    pub checks: Vec<Check>,
    pub two_knot: Option<TwoKnotInvariants>,
    pub obstructions: Option<ObstructionReport>,
}

impl Report {
    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Profile plus cross-checks for a knot complex.
pub fn profile_report(input: &str, c: &CfkComplex, config: &EngineConfig) -> Result<Report, EngineError> {
    let profile = zero_surgery_profile(c, config)?;
    let checks = crosscheck_with(c, &profile, config)?;
    Ok(Report {
        input: input.to_string(),
        profile: Some(profile),
        checks,
        two_knot: None,
        obstructions: None,
    })
}

pub fn two_knot_report(input: &str, q: TwoKnotInvariants) -> Report {
    Report {
        input: input.to_string(),
        profile: None,
        checks: Vec::new(),
        two_knot: Some(q),
        obstructions: Some(obstruction_report(&q)),
    }
}
