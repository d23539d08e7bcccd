//! Command-line front end. Every verb prints one JSON object with sorted
//! keys; exit codes are 0 for "holds", 1 for "fails" and 2 for errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::geometry::{Polytope, Vector};
use crate::norms::Norm;
use crate::query::{execute, parse_point, Bodies, Options};
use crate::render::render_svg;
use crate::scenarios::{load_scene, run_corpus, CORPUS_DIR};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "widthlab", version, about = "Diameters, widths, spherical hulls and completions in 2D/3D normed spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    Diam(Input),
    Width(Input),
    Circumradius(Input),
    Eta(Input),
    Tau(Input),
    Complete(Input),
    IsComplete(Input),
    IsConstantWidth(Input),
    UniqueCompletion(Input),
    /// Full completeness report of one body.
    Report(Input),
    CheckU1(Input),
    CheckUm(Input),
    BallLemma(Input),
    Convexity(Input),
    /// Equidistant extension of an equilateral triangle in space.
    Extend(Input),
    /// Instance evidence for the completion properties.
    Properties(Input),
    /// Runs every scene of a corpus directory.
    Corpus(CorpusArgs),
    /// Writes an SVG of a body with its wide and tight hulls.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Cross-check against the independent oracles.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Use the sampled algorithms even for polytopal norms.
    #[arg(long, global = true)]
    pub float: bool,
    #[arg(long, global = true, default_value_t = crate::scalar::DEFAULT_TOL)]
    pub tol: f64,
    /// Oracle grid resolution per axis.
    #[arg(long, global = true, default_value_t = crate::oracle::DEFAULT_RESOLUTION)]
    pub grid: usize,
    /// Print width and convexity reports as aligned tables.
    #[arg(long, global = true)]
    pub table: bool,
}

impl Flags {
    fn options(&self) -> Options {
        Options {
            tol: self.tol,
            float: self.float,
            oracle: self.oracle,
            grid: self.grid,
            ..Options::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Scene file supplying the norm, bodies and default arguments.
    #[arg(long)]
    pub scene: Option<PathBuf>,
    /// Inline norm, e.g. '{"kind":"l1","dim":3}'.
    #[arg(long)]
    pub norm: Option<String>,
    /// Inline body as a JSON point list or polytope; stored as `K`.
    #[arg(long = "body-json")]
    pub body_json: Option<String>,
    /// Name of the body to query.
    #[arg(long)]
    pub body: Option<String>,
    /// Functional coefficients, e.g. `0,0,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Comma separated epsilon grid.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilons: Option<String>,
    #[arg(long = "tie-rule")]
    pub tie_rule: Option<String>,
    #[arg(long = "max-iters")]
    pub max_iters: Option<usize>,
    /// Semicolon separated points for membership queries.
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    #[arg(long, default_value = CORPUS_DIR)]
    pub dir: PathBuf,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub out: PathBuf,
    /// Extra section plane in space as `u;w`, e.g. `1,1,0;0,0,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub section: Option<String>,
}

/// JSON payload plus process exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub payload: Value,
    pub code: i32,
    /// Human-readable alternative to the JSON payload.
    pub table: Option<String>,
}

fn header() -> Value {
    json!({"version": env!("CARGO_PKG_VERSION"), "schema": SCHEMA_VERSION})
}

impl Response {
    fn new(mut payload: Value, verdict: Option<bool>) -> Response {
        if let Value::Object(m) = &mut payload {
            m.insert("widthlab".into(), header());
        }
        let code = match verdict {
            Some(false) => 1,
            _ => 0,
        };
        Response {
            payload,
            code,
            table: None,
        }
    }

    pub fn error(e: &Error) -> Response {
        Response {
            payload: json!({"error": {"kind": error_kind(e), "message": e.to_string()}, "widthlab": header()}),
            code: 2,
            table: None,
        }
    }

    /// The table when one was requested, pretty JSON otherwise. Keys are
    /// sorted because maps are ordered.
    pub fn render(&self) -> String {
        match &self.table {
            Some(t) => t.clone(),
            None => serde_json::to_string_pretty(&self.payload).unwrap_or_default(),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Scene(_) => "scene",
        Error::Io(_) => "io",
        Error::NeedsPolytopalNorm(_) => "needs_polytopal_norm",
        Error::DimensionMismatch { .. } | Error::UnsupportedDimension(_) => "dimension",
        Error::Precondition(_)
        | Error::NotEquilateral { .. }
        | Error::NotSimplex { .. }
        | Error::EpsilonOutOfRange(_)
        | Error::NotDualUnit(_)
        | Error::NotUnitVector(_)
        | Error::NegativeRadius(_) => "precondition",
        _ => "geometry",
    }
}

fn verb_name(verb: &Verb) -> &'static str {
    match verb {
        Verb::Diam(_) => "diam",
        Verb::Width(_) => "width",
        Verb::Circumradius(_) => "circumradius",
        Verb::Eta(_) => "eta",
        Verb::Tau(_) => "tau",
        Verb::Complete(_) => "complete",
        Verb::IsComplete(_) => "is-complete",
        Verb::IsConstantWidth(_) => "is-constant-width",
        Verb::UniqueCompletion(_) => "unique-completion",
        Verb::Report(_) => "report",
        Verb::CheckU1(_) => "check-u1",
        Verb::CheckUm(_) => "check-um",
        Verb::BallLemma(_) => "ball-lemma",
        Verb::Convexity(_) => "convexity",
        Verb::Extend(_) => "extend",
        Verb::Properties(_) => "properties",
        Verb::Corpus(_) => "corpus",
        Verb::Render(_) => "render",
    }
}

fn point_json(text: &str) -> Result<Value> {
    Ok(parse_point(text)?.to_json())
}

/// Norm, bodies and query for a verb: the scene's query arguments first,
/// then the command-line arguments on top.
fn resolve(op: &str, input: &Input) -> Result<(Norm, Bodies, Value)> {
    let (mut norm, mut bodies, mut query) = match &input.scene {
        Some(path) => {
            let s = load_scene(path)?;
            (Some(s.norm), s.bodies, s.query)
        }
        None => (None, Bodies::new(), json!({})),
    };
    if let Some(text) = &input.norm {
        norm = Some(Norm::from_json(&serde_json::from_str(text)?)?);
    }
    let norm = norm.ok_or_else(|| Error::Parse("give --scene or --norm".into()))?;
    if let Some(text) = &input.body_json {
        bodies.insert("K".into(), Polytope::from_json(&serde_json::from_str(text)?)?);
    }
    let q = query.as_object_mut().ok_or_else(|| Error::Scene("query is not an object".into()))?;
    q.insert("op".into(), json!(op));
    let mut set = |k: &str, v: Value| {
        q.insert(k.into(), v);
    };
    if let Some(b) = &input.body {
        set("body", json!(b));
    }
    if let Some(f) = &input.f {
        set("f", point_json(f)?);
    }
    if let Some(x) = &input.x {
        set("x", point_json(x)?);
    }
    if let Some(y) = &input.y {
        set("y", point_json(y)?);
    }
    if let Some(g) = &input.gamma {
        set("gamma", json!(g));
    }
    if let Some(m) = input.m {
        set("m", json!(m));
    }
    if let Some(e) = &input.epsilons {
        set("epsilons", json!(e.split(',').map(str::trim).collect::<Vec<_>>()));
    }
    if let Some(t) = &input.tie_rule {
        set("tie_rule", json!(t));
    }
    if let Some(n) = input.max_iters {
        set("max_iters", json!(n));
    }
    if let Some(p) = &input.points {
        let pts = p.split(';').map(point_json).collect::<Result<Vec<_>>>()?;
        set("points", json!(pts));
    }
    Ok((norm, bodies, query))
}

fn render(args: &RenderArgs) -> Result<Response> {
    let (norm, bodies, query) = resolve("render", &args.input)?;
    let name = query.get("body").and_then(Value::as_str).unwrap_or("K");
    let body = bodies
        .get(name)
        .ok_or_else(|| Error::Scene(format!("no body named `{name}`")))?;
    let section = match &args.section {
        Some(s) => {
            let (u, w) = s
                .split_once(';')
                .ok_or_else(|| Error::Parse("section must be `u;w`".into()))?;
            Some((parse_point(u)?, parse_point(w)?))
        }
        None => None,
    };
    let svg = render_svg(&norm, body, section.as_ref().map(|(u, w): &(Vector, Vector)| (u, w)))?;
    std::fs::write(&args.out, &svg)?;
    Ok(Response::new(
        json!({"op": "render", "out": args.out.display().to_string(), "bytes": svg.len()}),
        None,
    ))
}

fn dispatch(verb: &Verb) -> Result<Response> {
    match verb {
        Verb::Corpus(args) => {
            let report = run_corpus(&args.dir, &args.flags.options())?;
            let passed = report.passed();
            let mut payload = report.to_json();
            payload["op"] = json!("corpus");
            Ok(Response::new(payload, Some(passed)))
        }
        Verb::Render(args) => render(args),
        Verb::Diam(i)
        | Verb::Width(i)
        | Verb::Circumradius(i)
        | Verb::Eta(i)
        | Verb::Tau(i)
        | Verb::Complete(i)
        | Verb::IsComplete(i)
        | Verb::IsConstantWidth(i)
        | Verb::UniqueCompletion(i)
        | Verb::Report(i)
        | Verb::CheckU1(i)
        | Verb::CheckUm(i)
        | Verb::BallLemma(i)
        | Verb::Convexity(i)
        | Verb::Extend(i)
        | Verb::Properties(i) => {
            let (norm, bodies, query) = resolve(verb_name(verb), i)?;
            let out = execute(&norm, &bodies, &query, &i.flags.options())?;
            let table = if i.flags.table { table(&out.payload) } else { None };
            let mut r = Response::new(out.payload, out.verdict);
            r.table = table;
            Ok(r)
        }
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("({})", a.iter().map(text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn aligned(header: [&str; 2], rows: Vec<[String; 2]>) -> String {
    let w = rows.iter().map(|r| r[0].len()).chain([header[0].len()]).max().unwrap_or(0);
    let mut out = format!("{:<w$}  {}\n", header[0], header[1]);
    for [a, b] in rows {
        out.push_str(&format!("{a:<w$}  {b}\n"));
    }
    out
}

/// Aligned table for width and convexity reports.
fn table(payload: &Value) -> Option<String> {
    let empty = Vec::new();
    match payload.get("op").and_then(Value::as_str)? {
        "width" if payload.get("widths").is_some() => {
            let mut rows: Vec<[String; 2]> = payload["widths"]
                .as_array()
                .unwrap_or(&empty)
                .iter()
                .map(|w| [text(&w["f"]), text(&w["width"])])
                .collect();
            rows.push(["min".into(), format!("{} at {}", text(&payload["min_width"]), text(&payload["min_width_functional"]))]);
            rows.push(["max".into(), text(&payload["max_width"])]);
            rows.push(["diam".into(), text(&payload["diam"])]);
            Some(aligned(["functional", "width"], rows))
        }
        "convexity" => {
            let eps = payload["epsilons"].as_array().unwrap_or(&empty);
            let delta = payload["delta"].as_array().unwrap_or(&empty);
            let mut rows: Vec<[String; 2]> = eps.iter().zip(delta).map(|(e, d)| [text(e), text(d)]).collect();
            rows.push(["eps0".into(), text(&payload["eps0"])]);
            Some(aligned(["epsilon", "delta"], rows))
        }
        _ => None,
    }
}

/// Runs one command; errors become exit code 2 with a JSON error object.
pub fn run(cli: &Cli) -> Response {
    dispatch(&cli.verb).unwrap_or_else(|e| Response::error(&e))
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, S>(args: I) -> Response
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Response {
            payload: Value::Object(Map::from_iter([
                ("error".into(), json!({"kind": "usage", "message": e.to_string()})),
                ("widthlab".into(), header()),
            ])),
            code: 2,
            table: None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_check_u1() {
        let r = run_args(["widthlab", "check-u1", "--norm", r#"{"kind":"l1","dim":3}"#]);
        assert_eq!(r.code, 0);
        assert_eq!(r.payload["verdict"], json!("holds"));
        assert_eq!(r.payload["u"], json!(["1/1", "0/1", "0/1"]));
        assert_eq!(r.payload["widthlab"]["schema"], json!(SCHEMA_VERSION));
    }

    #[test]
    fn failing_verdicts_exit_one() {
        let r = run_args([
            "widthlab",
            "unique-completion",
            "--norm",
            r#"{"kind":"linf","dim":2}"#,
            "--body-json",
            r#"[["-1","0"],["1","0"]]"#,
        ]);
        assert_eq!(r.code, 1);
    }

    #[test]
    fn errors_exit_two_with_json() {
        let r = run_args(["widthlab", "diam", "--norm", r#"{"kind":"l1","dim":2}"#]);
        assert_eq!(r.code, 2);
        assert_eq!(r.payload["error"]["kind"], json!("scene"));
        let r = run_args(["widthlab", "bogus"]);
        assert_eq!(r.code, 2);
        assert_eq!(r.payload["error"]["kind"], json!("usage"));
    }

    #[test]
    fn output_is_byte_stable() {
        let args = ["widthlab", "width", "--norm", r#"{"kind":"l1","dim":2}"#, "--body-json", r#"[["0","0"],["1","0"],["0","1"]]"#];
        assert_eq!(run_args(args).render(), run_args(args).render());
    }
}
