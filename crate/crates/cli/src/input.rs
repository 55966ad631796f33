use std::fs;
use std::path::{Path, PathBuf};

use cfklab::cfk::{catalog_get, cfk_from_json, parse_cfk_unchecked, CfkComplex, CfkError};
use cfklab::surgery::{raw_builtin, raw_twisted_from_json, RawTwistedComplex, RAW_BUILTIN_NAMES};
use serde_json::Value;

pub const CATALOG_PREFIX: &str = "catalog:";
pub const BUILTIN_PREFIX: &str = "builtin:";

/// A corpus file, told apart by its generator keys.
pub enum Loaded {
    Knot(CfkComplex),
    Raw(RawTwistedComplex),
}

/// `catalog:<name>` or a path to a CFK file, without running the validator.
pub fn load_cfk_unchecked(spec: &str) -> Result<CfkComplex, String> {
    if let Some(name) = spec.strip_prefix(CATALOG_PREFIX) {
        return catalog_get(name).map_err(|e| e.to_string());
    }
    let text = read(Path::new(spec))?;
    parse_cfk_unchecked(&text).map_err(|e: CfkError| e.to_string())
}

pub fn load_cfk(spec: &str) -> Result<CfkComplex, String> {
    let c = load_cfk_unchecked(spec)?;
    match c.validate().into_result() {
        Ok(()) => Ok(c),
        Err(v) => Err(format!("invalid complex: {v}")),
    }
}

/// `builtin:<name>`, a bare built-in name, or a path to a raw complex file.
pub fn load_raw(spec: &str) -> Result<RawTwistedComplex, String> {
    let name = spec.strip_prefix(BUILTIN_PREFIX).unwrap_or(spec);
    if spec.starts_with(BUILTIN_PREFIX) || (!Path::new(spec).exists() && RAW_BUILTIN_NAMES.contains(&name)) {
        return raw_builtin(name).ok_or_else(|| {
            format!("unknown built-in raw complex `{name}` (known: {})", RAW_BUILTIN_NAMES.join(", "))
        });
    }
    let text = read(Path::new(spec))?;
    let value = parse_json(&text)?;
    raw_twisted_from_json(&value).map_err(|e| e.to_string())
}

pub fn load_corpus_file(path: &Path) -> Result<Loaded, String> {
    let value = parse_json(&read(path)?)?;
    let is_raw = value
        .get("generators")
        .and_then(Value::as_array)
        .and_then(|g| g.first())
        .is_some_and(|g| g.get("grading").is_some());
    if is_raw {
        raw_twisted_from_json(&value).map(Loaded::Raw).map_err(|e| e.to_string())
    } else {
        let c = cfk_from_json(&value).map_err(|e: CfkError| e.to_string())?;
        Ok(Loaded::Knot(c))
    }
}

/// Sorted `*.json` / `*.cfk` files of a corpus directory.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file() && matches!(p.extension().and_then(|x| x.to_str()), Some("json" | "cfk")))
        .collect();
    files.sort();
    Ok(files)
}

pub fn env_corpus_dirs() -> Vec<PathBuf> {
    std::env::var_os("CFKLAB_CATALOG_DIR")
        .map(|v| std::env::split_paths(&v).filter(|p| !p.as_os_str().is_empty()).collect())
        .unwrap_or_default()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_json(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| format!("syntax error: {e}"))
}
