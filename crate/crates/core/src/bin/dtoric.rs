//! Command-line front end: parse a matrix and parameters, run one analysis,
//! print a deterministic JSON or text report.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use dtoric::classify::Classifier;
use dtoric::cone::{build_toric, ToricData};
use dtoric::error::Error;
use dtoric::matrix::IntMatrix;
use dtoric::prim::{
    ann_graded_component, ann_is_zero, check_c2, default_c2_bound, enumerate_prim, is_simple,
    rpos_nonempty,
};
use dtoric::rat::{parse_int_vec, parse_rat_vec};
use dtoric::report;
use dtoric::semigroup::{Engine, Window};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "dtoric",
    about = "Exact invariants of rings of differential operators on affine toric varieties",
    version
)]
struct Cli {
    /// Matrix file: JSON {"columns": [[..],..]} or whitespace rows.
    #[arg(long, global = true)]
    matrix: Option<String>,

    /// Inline matrix: rows separated by ';', entries by spaces or commas.
    #[arg(long, global = true)]
    inline: Option<String>,

    /// Window bound for scans (defaults to four times the largest column
    /// facet value).
    #[arg(long, global = true)]
    window: Option<i64>,

    /// Search bound for pattern realization.
    #[arg(long, global = true)]
    bound: Option<i64>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Exit with status 3 when any verdict is only window-certified.
    #[arg(long, global = true)]
    require_certified: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-shot report: facets, faces, relations, scoredness, (S2), (C0),
    /// (C2), simplicity, primitive ideal summary.
    Analyze,
    /// Semigroup membership of an integer point.
    Member {
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// The E-set of one face at a parameter.
    Etau {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        face: String,
    },
    /// All E-sets at a parameter.
    Signature {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Whether two parameters are equivalent (isomorphic systems).
    Equiv {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Equivalence classes meeting alpha + Z^d.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Window holes of the semigroup and their components.
    Holes,
    /// Window points of the semigroup outside its translate by -a.
    Omega {
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Graded annihilator component at a degree.
    Ann {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Enumerate the homogeneous primitive ideals.
    Prim,
    /// Simplicity of the ring of differential operators.
    Simple,
    /// Whether every face lattice is saturated.
    C0,
    /// Strict sign-pattern feasibility over all realizable patterns.
    C2,
}

fn read_matrix(cli: &Cli) -> Result<IntMatrix, Error> {
    let text = match (&cli.matrix, &cli.inline) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?,
        (None, Some(inline)) => inline.replace(';', "\n"),
        (Some(_), Some(_)) => {
            return Err(Error::InvalidInput(
                "give either --matrix or --inline, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::InvalidInput(
                "a matrix is required (--matrix FILE or --inline \"...\")".into(),
            ))
        }
    };
    parse_matrix(&text)
}

/// Accepts JSON {"columns": [[..],..]} or whitespace text (one matrix row per
/// line).
fn parse_matrix(text: &str) -> Result<IntMatrix, Error> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(trimmed)
            .map_err(|e| Error::InvalidInput(format!("bad JSON matrix: {e}")))?;
        let cols = v
            .get("columns")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::InvalidInput("JSON matrix needs a 'columns' array".into()))?;
        if cols.is_empty() {
            return Err(Error::InvalidInput("matrix has no columns".into()));
        }
        let mut parsed: Vec<Vec<BigInt>> = Vec::new();
        for c in cols {
            let entries = c
                .as_array()
                .ok_or_else(|| Error::InvalidInput("column must be an array".into()))?;
            let mut col = Vec::new();
            for e in entries {
                let s = match e {
                    Value::Number(n) => n.to_string(),
                    Value::String(s) => s.clone(),
                    _ => {
                        return Err(Error::InvalidInput(
                            "column entries must be integers".into(),
                        ))
                    }
                };
                col.push(
                    s.parse::<BigInt>()
                        .map_err(|_| Error::InvalidInput(format!("bad integer '{s}'")))?,
                );
            }
            parsed.push(col);
        }
        let d = parsed[0].len();
        if d == 0 || parsed.iter().any(|c| c.len() != d) {
            return Err(Error::InvalidInput(
                "columns must have equal positive length".into(),
            ));
        }
        let n = parsed.len();
        let mut data = Vec::with_capacity(d * n);
        for i in 0..d {
            for col in &parsed {
                data.push(col[i].clone());
            }
        }
        Ok(IntMatrix::new(d, n, data))
    } else {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for line in trimmed.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<BigInt>, Error> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<BigInt>()
                        .map_err(|_| Error::InvalidInput(format!("bad integer '{s}'")))
                })
                .collect();
            rows.push(row?);
        }
        if rows.is_empty() {
            return Err(Error::InvalidInput("matrix has no rows".into()));
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(
                "rows must have equal positive length".into(),
            ));
        }
        Ok(IntMatrix::from_rows(n, rows))
    }
}

fn resolve_face(t: &ToricData, spec: &str) -> Result<usize, Error> {
    if let Some(f) = t.face_by_label(spec) {
        return Ok(f.id);
    }
    // also accept a comma-separated 1-based column list
    if let Ok(cols) = parse_int_vec(spec) {
        let want: BTreeSet<usize> = cols
            .iter()
            .filter_map(|c| {
                let v: Option<usize> = c.to_string().parse().ok();
                v.and_then(|x| x.checked_sub(1))
            })
            .collect();
        if let Some(f) = t.faces.iter().find(|f| f.columns == want) {
            return Ok(f.id);
        }
    }
    let labels: Vec<String> = t.faces.iter().map(|f| f.label.clone()).collect();
    Err(Error::InvalidInput(format!(
        "unknown face '{spec}'; available: {}",
        labels.join(", ")
    )))
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let a = read_matrix(cli)?;
    let toric = build_toric(a)?;
    let engine = Engine::new(toric)?;
    let t = engine.toric();
    let window = match cli.window {
        Some(n) => {
            if n < 0 {
                return Err(Error::InvalidInput(
                    "window bound must be nonnegative".into(),
                ));
            }
            Window::with_bound(t, BigInt::from(n))
        }
        None => Window::default_for(t),
    };
    let c2_bound = match cli.bound {
        Some(b) => {
            if b < 0 {
                return Err(Error::InvalidInput(
                    "search bound must be nonnegative".into(),
                ));
            }
            BigInt::from(b)
        }
        None => default_c2_bound(&engine),
    };

    let classifier = Classifier::new(&engine);
    let out = match &cli.command {
        Command::Analyze => {
            let scored = engine.is_scored(&window);
            let s2 = engine.satisfies_s2(&window);
            let c2 = if t.simplicial {
                json!({"c2": "holds", "reason": "simplicial", "certification": report::CERT_EXACT})
            } else {
                report::c2_json(t, &check_c2(&engine, &c2_bound)?)
            };
            let simple = is_simple(&engine, &window, &c2_bound)?;
            let prim = enumerate_prim(&classifier, &window)?;
            let (holes, components) = engine.holes(&window);
            let comp_json: Vec<Value> = components
                .iter()
                .map(|c| report::hole_component_json(t, c))
                .collect();
            json!({
                "cone": report::toric_json(t),
                "c0": engine.check_c0(),
                "scored": report::scored_json(&scored),
                "s2": report::s2_json(t, &s2),
                "c2": c2,
                "simple": report::simple_json(t, &simple),
                "prim": report::prim_json(t, &prim),
                "holes_in_window": holes.len(),
                "hole_components": comp_json,
                "window": window.bound.to_string(),
            })
        }
        Command::Member { point } => {
            let b = parse_int_vec(point)?;
            if b.len() != t.dim() {
                return Err(Error::InvalidInput(format!(
                    "point has length {}, expected {}",
                    b.len(),
                    t.dim()
                )));
            }
            let cert = engine.member(&b);
            report::membership_json(t, &b, &cert)
        }
        Command::Etau { alpha, face } => {
            let alpha = parse_alpha(alpha, t)?;
            let fid = resolve_face(t, face)?;
            let e = classifier.e_tau(&alpha, fid);
            report::eset_json(t, &e)
        }
        Command::Signature { alpha } => {
            let alpha = parse_alpha(alpha, t)?;
            let sig = classifier.signature(&alpha);
            json!({
                "alpha": dtoric::rat::format_rat_vec(&alpha),
                "esets": report::signature_json(t, &sig),
                "extreme": classifier.is_extreme(&alpha),
                "certification": report::CERT_EXACT,
            })
        }
        Command::Equiv { alpha, beta } => {
            let alpha = parse_alpha(alpha, t)?;
            let beta = parse_alpha(beta, t)?;
            json!({
                "alpha": dtoric::rat::format_rat_vec(&alpha),
                "beta": dtoric::rat::format_rat_vec(&beta),
                "equivalent": classifier.equivalent(&alpha, &beta),
                "preceq": classifier.preceq(&alpha, &beta),
                "succeq": classifier.preceq(&beta, &alpha),
                "certification": report::CERT_EXACT,
            })
        }
        Command::Classify { alpha } => {
            let alpha = parse_alpha(alpha, t)?;
            let res = classifier.classify_coset(&alpha, &window);
            if !res.stabilized {
                return Err(Error::LimitExceeded(
                    "classification did not stabilize within the window".into(),
                ));
            }
            report::classify_json(t, &res)
        }
        Command::Holes => {
            let (holes, components) = engine.holes(&window);
            let hl: Vec<String> = holes
                .iter()
                .map(|h| dtoric::rat::format_int_vec(h))
                .collect();
            let comp_json: Vec<Value> = components
                .iter()
                .map(|c| report::hole_component_json(t, c))
                .collect();
            json!({
                "points": hl,
                "components": comp_json,
                "window": window.bound.to_string(),
                "certification": report::CERT_WINDOW,
            })
        }
        Command::Omega { degree } => {
            let a = parse_degree(degree, t)?;
            let om = engine.omega(&a, &window);
            let pts: Vec<String> = om.iter().map(|b| dtoric::rat::format_int_vec(b)).collect();
            let closure = engine.omega_closure(&a, &window);
            let comp_json: Vec<Value> = closure
                .iter()
                .map(|c| report::component_json(t, c))
                .collect();
            json!({
                "degree": dtoric::rat::format_int_vec(&a),
                "points": pts,
                "closure_components": comp_json,
                "window": window.bound.to_string(),
                "certification": report::CERT_WINDOW,
            })
        }
        Command::Ann { alpha, degree } => {
            let alpha = parse_alpha(alpha, t)?;
            let a = parse_degree(degree, t)?;
            let rep = ann_graded_component(&classifier, &alpha, &a, &window);
            let mut v = report::ann_json(t, &rep);
            if let Value::Object(map) = &mut v {
                map.insert(
                    "alpha".to_string(),
                    json!(dtoric::rat::format_rat_vec(&alpha)),
                );
                map.insert(
                    "ann_zero".to_string(),
                    json!(ann_is_zero(&classifier, &alpha)),
                );
                map.insert(
                    "rpos_nonempty".to_string(),
                    json!(rpos_nonempty(&engine, &alpha)),
                );
            }
            v
        }
        Command::Prim => {
            let res = enumerate_prim(&classifier, &window)?;
            report::prim_json(t, &res)
        }
        Command::Simple => {
            let v = is_simple(&engine, &window, &c2_bound)?;
            report::simple_json(t, &v)
        }
        Command::C0 => json!({
            "c0": engine.check_c0(),
            "certification": report::CERT_EXACT,
        }),
        Command::C2 => {
            if t.simplicial {
                json!({"c2": "holds", "reason": "simplicial", "certification": report::CERT_EXACT})
            } else {
                report::c2_json(t, &check_c2(&engine, &c2_bound)?)
            }
        }
    };
    Ok(out)
}

fn parse_alpha(s: &str, t: &ToricData) -> Result<Vec<dtoric::rat::Rat>, Error> {
    let v = parse_rat_vec(s)?;
    if v.len() != t.dim() {
        return Err(Error::InvalidInput(format!(
            "parameter has length {}, expected {}",
            v.len(),
            t.dim()
        )));
    }
    Ok(v)
}

fn parse_degree(s: &str, t: &ToricData) -> Result<Vec<BigInt>, Error> {
    let v = parse_int_vec(s)?;
    if v.len() != t.dim() {
        return Err(Error::InvalidInput(format!(
            "degree has length {}, expected {}",
            v.len(),
            t.dim()
        )));
    }
    Ok(v)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let uncertified = cli.require_certified && report::has_window_certification(&value);
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
                Format::Text => print!("{}", report::render_text(&value)),
            }
            if uncertified {
                eprintln!("error: result is only window-certified");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::LimitExceeded(_) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}
