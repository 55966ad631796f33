//! Correction terms of ±1- and 0-surgeries on a knot, and the consistency
//! checks relating the closed formulas to the mapping cone.

use serde::Serialize;

use crate::cfk::{mirror, CfkComplex};
use crate::rational::{self, Rational};
use crate::surgery::{compute_v, d_totally_twisted_zero_surgery, untwisted_tower_bottoms, EngineConfig, EngineError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurgerySign {
    Plus,
    Minus,
}

/// d(S³₊₁(K)) = −2·V₀(K) and d(S³₋₁(K)) = 2·V₀(K̄).
pub fn pm_one_surgery_d(c: &CfkComplex, sign: SurgerySign, config: &EngineConfig) -> Result<Rational, EngineError> {
    Ok(match sign {
        SurgerySign::Plus => rational::int(-2 * compute_v(c, 0, config)? as i64),
        SurgerySign::Minus => rational::int(2 * compute_v(&mirror(c), 0, config)? as i64),
    })
}

/// Untwisted (F) and totally twisted (Λ) correction terms of Y = Y₀(K) and
/// −Y = Y₀(K̄), with their shifted versions d̃.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroSurgeryProfile {
    #[serde(serialize_with = "ser_int")]
    pub v0: u32,
    #[serde(serialize_with = "ser_int")]
    pub v0_mirror: u32,
    #[serde(with = "rational::as_string")]
    pub d_untwisted_plus: Rational,
    #[serde(with = "rational::as_string")]
    pub d_twisted_plus: Rational,
    #[serde(with = "rational::as_string")]
    pub d_untwisted_minus: Rational,
    #[serde(with = "rational::as_string")]
    pub d_twisted_minus: Rational,
    #[serde(with = "rational::as_string")]
    pub dtilde_untwisted_plus: Rational,
    #[serde(with = "rational::as_string")]
    pub dtilde_twisted_plus: Rational,
    #[serde(with = "rational::as_string")]
    pub dtilde_untwisted_minus: Rational,
    #[serde(with = "rational::as_string")]
    pub dtilde_twisted_minus: Rational,
}

fn ser_int<S: serde::Serializer>(v: &u32, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ZeroSurgeryProfile {
    pub fn from_v0(v0: u32, v0_mirror: u32) -> Self {
        let (v, vm) = (v0 as i64, v0_mirror as i64);
        let half = rational::half();
        let dtilde_untwisted_plus = rational::int(-2 * v);
        let dtilde_twisted_plus = rational::int(2 * vm);
        let dtilde_untwisted_minus = rational::int(-2 * vm);
        let dtilde_twisted_minus = rational::int(2 * v);
        ZeroSurgeryProfile {
            v0,
            v0_mirror,
            d_untwisted_plus: dtilde_untwisted_plus + half,
            d_twisted_plus: dtilde_twisted_plus - half,
            d_untwisted_minus: dtilde_untwisted_minus + half,
            d_twisted_minus: dtilde_twisted_minus - half,
            dtilde_untwisted_plus,
            dtilde_twisted_plus,
            dtilde_untwisted_minus,
            dtilde_twisted_minus,
        }
    }

    /// `(d(Y;F), d(Y;Λ), d(−Y;F), d(−Y;Λ))`.
    pub fn d_values(&self) -> [Rational; 4] {
        [self.d_untwisted_plus, self.d_twisted_plus, self.d_untwisted_minus, self.d_twisted_minus]
    }

    /// `(d̃(Y;F), d̃(Y;Λ), d̃(−Y;F), d̃(−Y;Λ))`.
    pub fn dtilde_values(&self) -> [Rational; 4] {
        [
            self.dtilde_untwisted_plus,
            self.dtilde_twisted_plus,
            self.dtilde_untwisted_minus,
            self.dtilde_twisted_minus,
        ]
    }

    /// d̃(−Y; M) = −d̃(Y; M) for both coefficient systems.
    pub fn is_d_symmetric(&self) -> bool {
        self.dtilde_untwisted_minus == -self.dtilde_untwisted_plus
            && self.dtilde_twisted_minus == -self.dtilde_twisted_plus
    }
}

pub fn zero_surgery_profile(c: &CfkComplex, config: &EngineConfig) -> Result<ZeroSurgeryProfile, EngineError> {
    let m = mirror(c);
    let inputs = [c, &m];
    let vs = config.exec.map(&inputs, |k| compute_v(k, 0, config));
    let [v0, v0m]: [Result<u32, EngineError>; 2] = vs.try_into().expect("two inputs");
    Ok(ZeroSurgeryProfile::from_v0(v0?, v0m?))
}

pub fn is_d_symmetric_zero_surgery(c: &CfkComplex, config: &EngineConfig) -> Result<bool, EngineError> {
    Ok(zero_surgery_profile(c, config)?.is_d_symmetric())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    fn new(name: &str, ok: bool, lhs: String, rhs: String) -> Self {
        Check {
            name: name.to_string(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            lhs,
            rhs,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

fn fmt(q: Rational) -> String {
    rational::format(&q)
}

fn fmt_list(qs: &[Rational]) -> String {
    format!("[{}]", qs.iter().map(|q| fmt(*q)).collect::<Vec<_>>().join(", "))
}

/// Checks a profile against the mapping cones and the general constraints
/// on correction terms.
pub fn crosscheck_profile(c: &CfkComplex, config: &EngineConfig) -> Result<Vec<Check>, EngineError> {
    let profile = zero_surgery_profile(c, config)?;
    crosscheck_with(c, &profile, config)
}

pub fn crosscheck_with(c: &CfkComplex, p: &ZeroSurgeryProfile, config: &EngineConfig) -> Result<Vec<Check>, EngineError> {
    let m = mirror(c);
    let inputs = [c, &m];
    let cone_d = config.exec.map(&inputs, |k| d_totally_twisted_zero_surgery(k, config));
    let [plus, minus]: [Result<Rational, EngineError>; 2] = cone_d.try_into().expect("two inputs");
    let (plus, minus) = (plus?, minus?);
    let mut checks = vec![
        Check::new("cone_twisted_plus", plus == p.d_twisted_plus, fmt(plus), fmt(p.d_twisted_plus)),
        Check::new("cone_twisted_minus", minus == p.d_twisted_minus, fmt(minus), fmt(p.d_twisted_minus)),
    ];

    // Untwisted cone: towers start at d(Y;F) and at −d(−Y;F), one each.
    let mut observed: Vec<Rational> = Vec::new();
    for t in untwisted_tower_bottoms(c, config)? {
        observed.extend(std::iter::repeat_n(t.grading, t.multiplicity));
    }
    let mut expected = vec![p.d_untwisted_plus, -p.d_untwisted_minus];
    expected.sort();
    checks.push(Check::new(
        "cone_untwisted_tower_bottoms",
        observed == expected,
        fmt_list(&observed),
        fmt_list(&expected),
    ));

    for (name, value) in [
        ("even_dtilde_untwisted_plus", p.dtilde_untwisted_plus),
        ("even_dtilde_twisted_plus", p.dtilde_twisted_plus),
        ("even_dtilde_untwisted_minus", p.dtilde_untwisted_minus),
        ("even_dtilde_twisted_minus", p.dtilde_twisted_minus),
    ] {
        checks.push(Check::new(name, rational::is_even_integer(&value), fmt(value), "2Z".into()));
    }

    let twisted_sum = p.dtilde_twisted_plus + p.dtilde_twisted_minus;
    checks.push(Check::new(
        "reversal_twisted_nonnegative",
        twisted_sum >= rational::int(0),
        fmt(twisted_sum),
        "0".into(),
    ));
    let untwisted_sum = p.dtilde_untwisted_plus + p.dtilde_untwisted_minus;
    checks.push(Check::new(
        "reversal_untwisted_nonpositive",
        untwisted_sum <= rational::int(0),
        fmt(untwisted_sum),
        "0".into(),
    ));
    Ok(checks)
}
