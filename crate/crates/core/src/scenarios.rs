//! Named problem instances with expected results, stored as JSON.
//!
//! A scene holds a norm, a table of bodies, one query and a map from result
//! paths to expectations. Paths are dot separated and index arrays by
//! position, e.g. `witness.min_diam_eta` or `candidates.0.1`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::norms::Norm;
use crate::query::{execute, Bodies, Options, Outcome};
use crate::scalar::{parse_rational, to_f64, Rational};

/// Directory of the bundled corpus.
pub const CORPUS_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated by the source material this corpus reproduces.
    Reference,
    /// Follows from the definitions alone.
    Trivial,
    /// Produced by an independent oracle and frozen.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    /// Exact match, or within `tol` when given.
    #[serde(default)]
    pub value: Option<Value>,
    #[serde(default)]
    pub at_least: Option<Value>,
    #[serde(default)]
    pub at_most: Option<Value>,
    #[serde(default)]
    pub tol: Option<f64>,
    pub provenance: Provenance,
    /// Oracle operation that produced a derived value.
    #[serde(default)]
    pub oracle: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneOptions {
    #[serde(default)]
    pub float: bool,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    name: String,
    #[serde(default)]
    description: String,
    norm: Value,
    #[serde(default)]
    bodies: BTreeMap<String, Value>,
    query: Value,
    #[serde(default)]
    options: SceneOptions,
    expected: BTreeMap<String, Expectation>,
}

#[derive(Clone, Debug)]
pub struct Scene {
    pub name: String,
    pub description: String,
    pub norm: Norm,
    pub bodies: Bodies,
    pub query: Value,
    pub options: SceneOptions,
    pub expected: BTreeMap<String, Expectation>,
}

impl Scene {
    pub fn from_json(v: &Value) -> Result<Scene> {
        let raw: RawScene = serde_json::from_value(v.clone())
            .map_err(|e| Error::Scene(format!("schema violation: {e}")))?;
        let norm = Norm::from_json(&raw.norm)?;
        let mut bodies = Bodies::new();
        for (name, b) in &raw.bodies {
            let p = Polytope::from_json(b)?;
            norm.check_dim(p.dim())?;
            bodies.insert(name.clone(), p);
        }
        if raw.query.get("op").and_then(Value::as_str).is_none() {
            return Err(Error::Scene(format!("scene `{}` has no query op", raw.name)));
        }
        for (key, e) in &raw.expected {
            let kinds = [&e.value, &e.at_least, &e.at_most]
                .iter()
                .filter(|v| v.is_some())
                .count();
            if kinds != 1 {
                return Err(Error::Scene(format!(
                    "`{key}` needs exactly one of value, at_least, at_most"
                )));
            }
            if e.provenance == Provenance::Derived && e.oracle.is_none() {
                return Err(Error::Scene(format!("derived `{key}` does not name its oracle")));
            }
        }
        Ok(Scene {
            name: raw.name,
            description: raw.description,
            norm,
            bodies,
            query: raw.query,
            options: raw.options,
            expected: raw.expected,
        })
    }

    pub fn query_options(&self, base: &Options) -> Options {
        Options {
            float: base.float || self.options.float,
            tol: self.options.tol.unwrap_or(base.tol),
            ..base.clone()
        }
    }
}

pub fn load_scene(path: impl AsRef<Path>) -> Result<Scene> {
    let text = std::fs::read_to_string(path.as_ref())?;
    let v: Value = serde_json::from_str(&text)?;
    Scene::from_json(&v).map_err(|e| match e {
        Error::Scene(m) => Error::Scene(format!("{}: {m}", path.as_ref().display())),
        other => other,
    })
}

/// Scene files of a directory in file-name order.
pub fn corpus_paths(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir.as_ref())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    Ok(paths)
}

pub fn load_corpus(dir: impl AsRef<Path>) -> Result<Vec<Scene>> {
    corpus_paths(dir)?.iter().map(load_scene).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub key: String,
    pub expectation: Expectation,
    pub actual: Option<Value>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SceneReport {
    pub name: String,
    pub outcome: Outcome,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SceneReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Stable summary: no timings, so output is reproducible.
    pub fn to_json(&self) -> Value {
        json!({
            "scene": self.name,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "key": c.key,
                "pass": c.pass,
                "actual": c.actual,
                "expected": c.expectation,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SceneReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.key.as_str())
            .collect();
        if failed.is_empty() {
            write!(f, "ok    {} ({} checks)", self.name, self.checks.len())
        } else {
            write!(f, "FAIL  {} ({})", self.name, failed.join(", "))
        }
    }
}

pub fn run_scene(scene: &Scene, base: &Options) -> Result<SceneReport> {
    let start = Instant::now();
    let outcome = execute(&scene.norm, &scene.bodies, &scene.query, &scene.query_options(base))?;
    let checks = scene
        .expected
        .iter()
        .map(|(key, e)| {
            let actual = lookup(&outcome.payload, key).cloned();
            let pass = actual.as_ref().is_some_and(|a| satisfies(a, e));
            Check {
                key: key.clone(),
                expectation: e.clone(),
                actual,
                pass,
            }
        })
        .collect();
    Ok(SceneReport {
        name: scene.name.clone(),
        outcome,
        checks,
        elapsed: start.elapsed(),
    })
}

/// Follows a dotted path through objects and arrays.
pub fn lookup<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |cur, key| match cur {
        Value::Object(m) => m.get(key),
        Value::Array(a) => key.parse::<usize>().ok().and_then(|i| a.get(i)),
        _ => None,
    })
}

fn number(v: &Value) -> Option<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok(),
        Value::Number(n) => n.as_f64().and_then(|x| crate::scalar::from_f64(x).ok()),
        _ => None,
    }
}

fn satisfies(actual: &Value, e: &Expectation) -> bool {
    if let Some(v) = &e.value {
        return matches(actual, v, e.tol);
    }
    let (bound, lower) = match (&e.at_least, &e.at_most) {
        (Some(b), _) => (b, true),
        (_, Some(b)) => (b, false),
        _ => return false,
    };
    match (number(actual), number(bound)) {
        (Some(a), Some(b)) => {
            let slack = e.tol.unwrap_or(0.0);
            if lower {
                a >= b || to_f64(&a) >= to_f64(&b) - slack
            } else {
                a <= b || to_f64(&a) <= to_f64(&b) + slack
            }
        }
        _ => false,
    }
}

fn is_polytope(v: &Value) -> bool {
    v.get("vertices").is_some()
}

fn matches(actual: &Value, expected: &Value, tol: Option<f64>) -> bool {
    match (actual, expected) {
        (a, e) if is_polytope(a) && is_polytope(e) => {
            match (Polytope::from_json(a), Polytope::from_json(e)) {
                (Ok(a), Ok(e)) => a == e,
                _ => false,
            }
        }
        (Value::Array(a), Value::Array(e)) => {
            a.len() == e.len() && a.iter().zip(e).all(|(x, y)| matches(x, y, tol))
        }
        (Value::Object(a), Value::Object(e)) => e
            .iter()
            .all(|(k, y)| a.get(k).is_some_and(|x| matches(x, y, tol))),
        (Value::Bool(a), Value::Bool(e)) => a == e,
        (Value::Null, Value::Null) => true,
        (a, e) => match (number(a), number(e)) {
            (Some(x), Some(y)) => match tol {
                Some(t) => (to_f64(&x) - to_f64(&y)).abs() <= t,
                None => x == y,
            },
            _ => a == e,
        },
    }
}

/// One line per scene plus a verdict; used by the `corpus` verb.
#[derive(Clone, Debug)]
pub struct CorpusReport {
    pub scenes: Vec<std::result::Result<SceneReport, (String, Error)>>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.scenes.iter().all(|s| s.as_ref().is_ok_and(SceneReport::passed))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "scenes": self.scenes.iter().map(|s| match s {
                Ok(r) => r.to_json(),
                Err((name, e)) => json!({"scene": name, "passed": false, "error": e.to_string()}),
            }).collect::<Vec<_>>(),
        })
    }
}

pub fn run_corpus(dir: impl AsRef<Path>, base: &Options) -> Result<CorpusReport> {
    let scenes = corpus_paths(dir)?
        .iter()
        .map(|p| {
            let name = p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            load_scene(p)
                .and_then(|s| run_scene(&s, base))
                .map_err(|e| (name, e))
        })
        .collect();
    Ok(CorpusReport { scenes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scene(expected: Value) -> Value {
        json!({
            "name": "t",
            "norm": {"kind": "l1", "dim": 2},
            "bodies": {"K": [["-1", "0"], ["1", "0"]]},
            "query": {"op": "diam"},
            "expected": expected,
        })
    }

    #[test]
    fn exact_and_tolerant_comparisons() {
        let s = Scene::from_json(&scene(json!({
            "diam": {"value": "2", "provenance": "trivial"},
            "witness.1.0": {"value": 1.0000001, "tol": 1e-6, "provenance": "trivial"},
        })))
        .unwrap();
        let r = run_scene(&s, &Options::default()).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn mismatches_are_reported() {
        let s = Scene::from_json(&scene(json!({
            "diam": {"at_least": "5/2", "provenance": "trivial"},
            "missing": {"value": true, "provenance": "trivial"},
        })))
        .unwrap();
        let r = run_scene(&s, &Options::default()).unwrap();
        assert!(r.checks.iter().all(|c| !c.pass));
    }

    #[test]
    fn schema_violations() {
        assert!(Scene::from_json(&scene(json!({
            "diam": {"value": "2", "provenance": "derived"},
        })))
        .is_err());
        assert!(Scene::from_json(&scene(json!({
            "diam": {"value": "2", "at_most": "3", "provenance": "trivial"},
        })))
        .is_err());
        let mut bad = scene(json!({}));
        bad["bodies"]["K"] = json!([["0", "0", "1"], ["1", "0", "0"]]);
        assert!(matches!(
            Scene::from_json(&bad),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn polytopes_compare_as_sets() {
        let a = json!({"vertices": [["1","0"],["0","1"],["-1","0"],["0","-1"]]});
        let b = json!([["0","-1"],["-1","0"],["0","1"],["1","0"]]);
        assert!(matches(&a, &json!({"vertices": b}), None));
    }
}
