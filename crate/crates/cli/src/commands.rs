use std::path::{Path, PathBuf};

use cfklab::cfk::{catalog_get, catalog_names, cfk_to_json, CfkComplex};
use cfklab::exec::Exec;
use cfklab::invariants::{
    fibered_two_knot, profile_report, qhs_fiber_two_knot, two_knot_report, TwoKnotInvariants,
};
use cfklab::rational::{self, Rational};
use cfklab::surgery::{
    raw_builtin, serialize_raw_twisted, stability_run, untwisted_tower_bottoms, EngineConfig, EngineError,
    RawTwistedComplex, StabilityOp, StabilityOutcome, RAW_BUILTIN_NAMES,
};
use serde_json::{json, Map, Value};

use crate::input::{self, Loaded, CATALOG_PREFIX};
use crate::output::{worst, Entry, Outcome, Status};

/// Inputs are independent, so they are processed concurrently; results keep
/// input order.
fn batch<F>(inputs: &[String], f: F) -> Outcome
where
    F: Fn(&str) -> Entry + Sync + Send,
{
    Outcome::batch(Exec::default().map(inputs, |s| f(s)))
}

/// Failures of the stability or tower logic are mathematical; everything
/// else is a problem with the request.
fn engine_status(e: &EngineError) -> Status {
    match e {
        EngineError::Unstable { .. } | EngineError::InconsistentTower { .. } | EngineError::NoTower { .. } => {
            Status::CheckFailure
        }
        _ => Status::InputError,
    }
}

fn engine_failure(input: &str, e: EngineError) -> Entry {
    Entry::failed(input, engine_status(&e), e.to_string())
}

fn q(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

fn certified(out: &StabilityOutcome<Rational>) -> (Value, Value) {
    let cert = out
        .certificate
        .iter()
        .map(|e| json!({"truncation": e.truncation, "value": q(&e.value)}))
        .collect();
    (q(&out.value), Value::Array(cert))
}

fn variant_name(debug: &str) -> String {
    debug.chars().take_while(|c| c.is_alphanumeric()).collect()
}

fn validation_fields(c: &CfkComplex) -> (Status, Map<String, Value>) {
    let report = c.validate();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({"kind": variant_name(&format!("{v:?}")), "message": v.to_string()}))
        .collect();
    let status = if violations.is_empty() { Status::Ok } else { Status::InputError };
    let mut m = Map::new();
    m.insert("name".into(), c.name().into());
    m.insert("generators".into(), c.len().into());
    m.insert("differential_terms".into(), c.differential().len().into());
    m.insert("violations".into(), violations.into());
    (status, m)
}

pub fn validate(inputs: &[String]) -> Outcome {
    batch(inputs, |input| match input::load_cfk_unchecked(input) {
        Ok(c) => {
            let (status, fields) = validation_fields(&c);
            Entry::new(input, status, fields)
        }
        Err(e) => Entry::failed(input, Status::InputError, e),
    })
}

fn profile_entry(input: &str, c: &CfkComplex, config: &EngineConfig) -> Entry {
    let report = match profile_report(input, c, config) {
        Ok(r) => r,
        Err(e) => return engine_failure(input, e),
    };
    let status = if report.checks_pass() { Status::Ok } else { Status::CheckFailure };
    let d_symmetric = report.profile.as_ref().map(|p| p.is_d_symmetric());
    let Value::Object(mut fields) = serde_json::to_value(&report).expect("reports serialize") else {
        unreachable!("a report is a JSON object")
    };
    fields.insert("d_symmetric".into(), json!(d_symmetric));
    Entry::new(input, status, fields)
}

pub fn profile(inputs: &[String], config: &EngineConfig) -> Outcome {
    batch(inputs, |input| match input::load_cfk(input) {
        Ok(c) => profile_entry(input, &c, config),
        Err(e) => Entry::failed(input, Status::InputError, e),
    })
}

pub fn v_invariant(inputs: &[String], s: i64, config: &EngineConfig) -> Outcome {
    batch(inputs, |input| {
        let c = match input::load_cfk(input) {
            Ok(c) => c,
            Err(e) => return Entry::failed(input, Status::InputError, e),
        };
        match stability_run(StabilityOp::ComputeV { complex: &c, s }, config) {
            Ok(out) => {
                let (value, cert) = certified(&out);
                let mut m = Map::new();
                m.insert("s".into(), s.into());
                m.insert("v".into(), value);
                m.insert("certificate".into(), cert);
                Entry::new(input, Status::Ok, m)
            }
            Err(e) => engine_failure(input, e),
        }
    })
}

pub fn cone_d(inputs: &[String], config: &EngineConfig) -> Outcome {
    batch(inputs, |input| {
        let c = match input::load_cfk(input) {
            Ok(c) => c,
            Err(e) => return Entry::failed(input, Status::InputError, e),
        };
        let twisted = match stability_run(StabilityOp::DTotallyTwisted { complex: &c }, config) {
            Ok(out) => out,
            Err(e) => return engine_failure(input, e),
        };
        let bottoms = match untwisted_tower_bottoms(&c, config) {
            Ok(b) => b,
            Err(e) => return engine_failure(input, e),
        };
        let (value, cert) = certified(&twisted);
        let mut m = Map::new();
        m.insert("d_twisted".into(), value);
        m.insert("certificate".into(), cert);
        m.insert("untwisted_tower_bottoms".into(), serde_json::to_value(bottoms).expect("serializes"));
        Entry::new(input, Status::Ok, m)
    })
}

fn raw_entry(input: &str, raw: &RawTwistedComplex, config: &EngineConfig) -> Entry {
    match stability_run(StabilityOp::TwistedComplexD { raw }, config) {
        Ok(out) => {
            let (value, cert) = certified(&out);
            let mut m = Map::new();
            m.insert("name".into(), raw.name().into());
            m.insert("twisted_complex_d".into(), value);
            m.insert("certificate".into(), cert);
            Entry::new(input, Status::Ok, m)
        }
        Err(e) => engine_failure(input, e),
    }
}

pub fn twisted_d(inputs: &[String], config: &EngineConfig) -> Outcome {
    batch(inputs, |input| match input::load_raw(input) {
        Ok(raw) => raw_entry(input, &raw, config),
        Err(e) => Entry::failed(input, Status::InputError, e),
    })
}

pub fn two_knot(
    qhs_d: Option<Rational>,
    fiber: Option<(Rational, Rational, u32)>,
    quadruple: Option<Vec<Rational>>,
) -> Outcome {
    let (label, invariants): (String, TwoKnotInvariants) = match (qhs_d, fiber, quadruple) {
        (Some(d), None, None) => (format!("qhs-d {}", rational::format(&d)), qhs_fiber_two_knot(d)),
        (None, Some((p, m, b1)), None) => (
            format!("fiber-d {} {} b1={b1}", rational::format(&p), rational::format(&m)),
            fibered_two_knot(p, m, b1),
        ),
        (None, None, Some(v)) if v.len() == 4 => (
            format!("quadruple {}", v.iter().map(rational::format).collect::<Vec<_>>().join(" ")),
            TwoKnotInvariants::new(v[0], v[1], v[2], v[3]),
        ),
        _ => {
            return Outcome::single(Entry::failed(
                "two-knot",
                Status::InputError,
                "give exactly one of --qhs-d, --fiber-d-plus/--fiber-d-minus/--b1, or --quadruple",
            ))
        }
    };
    let report = two_knot_report(&label, invariants);
    let Value::Object(mut fields) = serde_json::to_value(&report).expect("reports serialize") else {
        unreachable!("a report is a JSON object")
    };
    fields.retain(|k, _| k == "two_knot" || k == "obstructions");
    Outcome::single(Entry::new(&label, Status::Ok, fields))
}

pub fn catalog_list() -> Outcome {
    Outcome {
        status: Status::Ok,
        document: json!({"catalog": catalog_names(), "raw_builtins": RAW_BUILTIN_NAMES}),
    }
}

pub fn catalog_show(name: &str) -> Outcome {
    let name = name.strip_prefix(CATALOG_PREFIX).unwrap_or(name);
    if let Ok(c) = catalog_get(name) {
        return Outcome { status: Status::Ok, document: cfk_to_json(&c) };
    }
    if let Some(raw) = raw_builtin(name) {
        let doc = serde_json::from_str(&serialize_raw_twisted(&raw)).expect("serialized raw complex is JSON");
        return Outcome { status: Status::Ok, document: doc };
    }
    Outcome::single(Entry::failed(
        name,
        Status::InputError,
        format!(
            "unknown catalog entry `{name}` (known: {}, {})",
            catalog_names().join(", "),
            RAW_BUILTIN_NAMES.join(", ")
        ),
    ))
}

fn knot_check(input: &str, c: &CfkComplex, config: &EngineConfig) -> Entry {
    let (status, validation) = validation_fields(c);
    if status != Status::Ok {
        return Entry::new(input, status, validation);
    }
    profile_entry(input, c, config)
}

enum Job {
    Knot(String, CfkComplex),
    Raw(String, RawTwistedComplex),
    Broken(String, String),
}

pub fn check_all(dirs: &[PathBuf], config: &EngineConfig) -> Outcome {
    let mut jobs: Vec<Job> = catalog_names()
        .iter()
        .map(|n| Job::Knot(format!("{CATALOG_PREFIX}{n}"), catalog_get(n).expect("catalog entry")))
        .collect();
    for n in RAW_BUILTIN_NAMES {
        jobs.push(Job::Raw(format!("{}{n}", input::BUILTIN_PREFIX), raw_builtin(n).expect("builtin")));
    }
    for dir in dirs {
        jobs.extend(corpus_jobs(dir));
    }
    let entries = Exec::default().map(&jobs, |job| match job {
        Job::Knot(input, c) => knot_check(input, c, config),
        Job::Raw(input, raw) => raw_entry(input, raw, config),
        Job::Broken(input, e) => Entry::failed(input, Status::InputError, e.clone()),
    });
    let count = |s: Status| entries.iter().filter(|e| e.status == s).count();
    let summary = json!({
        "total": entries.len(),
        "passed": count(Status::Ok),
        "check_failures": count(Status::CheckFailure),
        "input_errors": count(Status::InputError),
    });
    Outcome {
        status: worst(&entries),
        document: json!({
            "entries": entries.into_iter().map(Entry::into_value).collect::<Vec<_>>(),
            "summary": summary,
        }),
    }
}

fn corpus_jobs(dir: &Path) -> Vec<Job> {
    let files = match input::corpus_files(dir) {
        Ok(f) => f,
        Err(e) => return vec![Job::Broken(dir.display().to_string(), e)],
    };
    files
        .into_iter()
        .map(|path| {
            let label = path.display().to_string();
            match input::load_corpus_file(&path) {
                Ok(Loaded::Knot(c)) => Job::Knot(label, c),
                Ok(Loaded::Raw(r)) => Job::Raw(label, r),
                Err(e) => Job::Broken(label, e),
            }
        })
        .collect()
}
