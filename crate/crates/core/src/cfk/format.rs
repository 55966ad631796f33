//! JSON interchange format for [`CfkComplex`].
//!
//! ```json
//! {"name": "trefoil_right",
//!  "generators": [{"id": "a", "maslov": 0, "alexander": 1}, ...],
//!  "differential": [{"from": "b", "to": "a", "upower": 1}, ...],
//!  "flip": [["a", "c"]]}
//! ```
//! Maslov gradings are integers or strings `"p/q"`. Serialization is
//! canonical: ids sorted, terms sorted, flip pairs sorted with fixed points
//! omitted.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::model::{CfkComplex, CfkError, DiffTerm, FlipInvolution, Generator};
use crate::rational::{self, Rational};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileComplex {
    name: String,
    generators: Vec<FileGenerator>,
    #[serde(default)]
    differential: Vec<FileTerm>,
    #[serde(default)]
    flip: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileGenerator {
    id: String,
    #[serde(serialize_with = "ser_maslov", deserialize_with = "de_maslov")]
    maslov: Rational,
    alexander: i32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTerm {
    from: String,
    to: String,
    upower: u32,
}

fn ser_maslov<S: Serializer>(m: &Rational, s: S) -> Result<S::Ok, S::Error> {
    if m.is_integer() {
        s.serialize_i64(*m.numer())
    } else {
        s.serialize_str(&rational::format(m))
    }
}

fn de_maslov<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }
    match Raw::deserialize(d)? {
        Raw::Int(n) => Ok(rational::int(n)),
        Raw::Text(s) => rational::parse(&s).map_err(serde::de::Error::custom),
    }
}

pub(crate) fn syntax_error(e: serde_json::Error) -> CfkError {
    CfkError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and fully validates a complex; the first violated law is reported.
pub fn parse_cfk(text: &str) -> Result<CfkComplex, CfkError> {
    let c = parse_cfk_unchecked(text)?;
    c.validate().into_result()?;
    Ok(c)
}

/// Parses with structural checks only, so that [`CfkComplex::validate`] can
/// report every violation.
pub fn parse_cfk_unchecked(text: &str) -> Result<CfkComplex, CfkError> {
    let file: FileComplex = serde_json::from_str(text).map_err(syntax_error)?;
    from_value(file)
}

/// Like [`parse_cfk_unchecked`] for an already-parsed JSON value.
pub fn cfk_from_json(value: &serde_json::Value) -> Result<CfkComplex, CfkError> {
    let file = FileComplex::deserialize(value).map_err(syntax_error)?;
    from_value(file)
}

fn from_value(file: FileComplex) -> Result<CfkComplex, CfkError> {
    CfkComplex::new(
        file.name,
        file.generators
            .into_iter()
            .map(|g| Generator::new(g.id, g.maslov, g.alexander))
            .collect(),
        file.differential
            .into_iter()
            .map(|t| DiffTerm::new(t.from, t.to, t.upower))
            .collect(),
        FlipInvolution::new(file.flip.into_iter().map(|[a, b]| (a, b))),
    )
}

fn to_file(c: &CfkComplex) -> FileComplex {
    FileComplex {
        name: c.name().to_string(),
        generators: c
            .generators()
            .iter()
            .map(|g| FileGenerator {
                id: g.id.clone(),
                maslov: g.maslov,
                alexander: g.alexander,
            })
            .collect(),
        differential: c
            .differential()
            .iter()
            .map(|t| FileTerm {
                from: t.from.clone(),
                to: t.to.clone(),
                upower: t.upower,
            })
            .collect(),
        flip: c.flip().pairs().iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
    }
}

pub fn cfk_to_json(c: &CfkComplex) -> serde_json::Value {
    serde_json::to_value(to_file(c)).expect("complex serializes")
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn serialize_cfk(c: &CfkComplex) -> String {
    let mut s = serde_json::to_string_pretty(&to_file(c)).expect("complex serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::model::Violation;

    const TREFOIL: &str = r#"{
        "name": "trefoil_right",
        "generators": [
            {"id": "c", "maslov": -2, "alexander": -1},
            {"id": "a", "maslov": 0, "alexander": 1},
            {"id": "b", "maslov": "-1", "alexander": 0}
        ],
        "differential": [
            {"from": "b", "to": "c", "upower": 0},
            {"from": "b", "to": "a", "upower": 1}
        ],
        "flip": [["c", "a"], ["b", "b"]]
    }"#;

    #[test]
    fn canonical_round_trip() {
        let c = parse_cfk(TREFOIL).unwrap();
        let s = serialize_cfk(&c);
        let again = parse_cfk(&s).unwrap();
        assert_eq!(again, c);
        assert_eq!(serialize_cfk(&again), s);
        assert_eq!(c.generators()[0].id, "a");
        assert_eq!(c.flip().pairs(), &[("a".to_string(), "c".to_string())]);
    }

    #[test]
    fn fractional_maslov() {
        let text = r#"{"name":"h","generators":[{"id":"x","maslov":"1/2","alexander":0}]}"#;
        let c = parse_cfk_unchecked(text).unwrap();
        assert_eq!(c.generators()[0].maslov, rational::half());
        assert!(serialize_cfk(&c).contains("\"1/2\""));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_cfk("{\n  \"name\": \"x\",\n  \"generators\": [\n}").unwrap_err();
        match err {
            CfkError::Syntax { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_cfk(r#"{"name":"x","generators":[{"id":"x","maslov":"1/0","alexander":0}]}"#),
            Err(CfkError::Syntax { .. })
        ));
        assert!(matches!(
            parse_cfk(r#"{"name":"x","generators":[],"extra":1}"#),
            Err(CfkError::Syntax { .. })
        ));
    }

    #[test]
    fn semantic_error_surfaces() {
        let text = TREFOIL.replace(r#"{"from": "b", "to": "c", "upower": 0},"#, "");
        assert!(matches!(
            parse_cfk(&text),
            Err(CfkError::Invalid(Violation::FlipNotChainMap { .. }))
        ));
    }
}
