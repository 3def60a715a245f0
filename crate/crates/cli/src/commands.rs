//! Command-line interface: subcommands, dispatch and exit codes.
//!
//! Exit 0 with a JSON report on stdout; exit 2 on input errors and 3 on
//! resource-bound errors, with a JSON diagnostics envelope on stderr.
//! Diagnostics never mix into the stdout report. The `command` echo inside
//! a report is normalized to the inputs that determine the result (file
//! basename, grid, seed, points), never execution details like thread
//! counts, so reruns are byte-identical.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use curvedelta::estree::{canonicalize, isomorphic};
use curvedelta::family::{self, GridSpec};
use curvedelta::groebner::QIdeal;
use curvedelta::invariants;
use curvedelta::local::{local_colength_of, rational_point};
use curvedelta::poly::MonomialOrder;
use curvedelta::resolution::{resolve_germ_q, EsTree};
use curvedelta::{Limits, Rational};

use crate::document::{build, parse_map, BuiltDocument};
use crate::error::{CliError, CliResult};
use crate::parser::parse_document;
use crate::report;

#[derive(Parser, Debug)]
#[command(
    name = "curvedelta",
    about = "Exact invariants of plane curve singularities with embedded points",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Worker threads for family scans (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Delta/epsilon invariants of the analyzed ideal (no parameters).
    Invariants {
        file: PathBuf,
        /// Restrict to one rational point `a,b`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Hilbert-Burch splitting I = <g> * J, verified.
    Split { file: PathBuf },
    /// Specialize a family at a rational parameter point and analyze it.
    Fiber {
        file: PathBuf,
        /// Parameter values `t1,...,tk`.
        #[arg(long)]
        at: String,
    },
    /// Delta-constancy scan over a parameter grid with verdicts.
    Scan {
        file: PathBuf,
        /// Per-parameter ranges `a..b/step`, comma-separated; a single
        /// range applies to every parameter.
        #[arg(long)]
        grid: Option<String>,
        /// Seed for the coordinate-change fallback.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Blow-up tree of the unmixed part at a point (origin by default).
    Tree {
        file: PathBuf,
        /// Parameter values for families.
        #[arg(long)]
        at: Option<String>,
        /// Plane point `a,b` (rational).
        #[arg(long)]
        point: Option<String>,
    },
    /// Compare the origin trees of two documents.
    TreeCmp { file_a: PathBuf, file_b: PathBuf },
    /// Check a parametrization `p1;...;pn` in T-variables against the ideal.
    CheckParam {
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Reduced Groebner basis of the analyzed ideal.
    Gb {
        file: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
}

fn read_document(path: &Path, limits: &Limits) -> CliResult<(BuiltDocument, String)> {
    let text = std::fs::read_to_string(path)?;
    let hash = report::sha256_hex(text.as_bytes());
    let doc = parse_document(&text)?;
    Ok((build(doc, limits)?, hash))
}

fn basename(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn parse_rational(s: &str) -> CliResult<Rational> {
    s.trim()
        .parse()
        .map_err(|e| CliError::input("bad-rational", format!("{s:?}: {e}")))
}

fn parse_point(s: &str) -> CliResult<(Rational, Rational)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::input(
            "bad-point",
            format!("expected a point a,b; got {s:?}"),
        ));
    }
    Ok((parse_rational(parts[0])?, parse_rational(parts[1])?))
}

fn parse_at(s: &str, k: usize) -> CliResult<Vec<Rational>> {
    let vals: Vec<Rational> = s
        .split(',')
        .map(parse_rational)
        .collect::<CliResult<_>>()?;
    if vals.len() != k {
        return Err(CliError::input(
            "bad-parameter-point",
            format!("expected {k} parameter values, got {}", vals.len()),
        ));
    }
    Ok(vals)
}

/// Grid syntax: per-parameter `a..b/step` (step after the last slash, may
/// itself be `p/q`) or a single value; comma separated. One range
/// replicates over all parameters.
fn parse_grid(s: &str, k: usize) -> CliResult<GridSpec> {
    let specs: Vec<&str> = s.split(',').map(str::trim).collect();
    let axes: Vec<Vec<Rational>> = specs
        .iter()
        .map(|spec| parse_axis(spec))
        .collect::<CliResult<_>>()?;
    let per_param = if axes.len() == 1 && k > 1 {
        vec![axes[0].clone(); k]
    } else if axes.len() == k {
        axes
    } else {
        return Err(CliError::input(
            "bad-grid",
            format!("grid has {} axes, the family has {k} parameters", axes.len()),
        ));
    };
    Ok(GridSpec { per_param })
}

fn parse_axis(spec: &str) -> CliResult<Vec<Rational>> {
    match spec.split_once("..") {
        None => Ok(vec![parse_rational(spec)?]),
        Some((a, rest)) => {
            let a = parse_rational(a)?;
            let (b, step) = match rest.rsplit_once('/') {
                None => (parse_rational(rest)?, Rational::from_int(1)),
                Some((b, st)) => (parse_rational(b)?, parse_rational(st)?),
            };
            if step.is_zero() || step.is_negative() {
                return Err(CliError::input("bad-grid", "grid step must be positive"));
            }
            if b < a {
                return Err(CliError::input("bad-grid", "grid range is empty"));
            }
            let mut vals = Vec::new();
            let mut cur = a;
            while cur <= b {
                vals.push(cur.clone());
                cur = &cur + &step;
            }
            Ok(vals)
        }
    }
}

/// CLI default grid: -1..1 step 1 on each parameter (the origin is always
/// included by the grid expansion).
fn default_cli_grid(k: usize) -> GridSpec {
    GridSpec {
        per_param: vec![
            vec![
                Rational::from_int(-1),
                Rational::zero(),
                Rational::from_int(1),
            ];
            k
        ],
    }
}

/// The tree of a plane ideal's germ at a point: unmixed tree plus embedded
/// colength label.
fn germ_tree_of_ideal(
    ideal: &QIdeal,
    point: (Rational, Rational),
    limits: &Limits,
) -> CliResult<(EsTree, Option<Value>)> {
    let split = invariants::hb_split(ideal, limits)?;
    let p = rational_point(point.0.clone(), point.1.clone());
    let embedded = if split.j.is_unit_ideal(limits)? {
        0
    } else {
        local_colength_of(&split.j, &p, limits)?
    };
    let passes = !split.g.is_constant() && split.g.eval(&[point.0, point.1]).is_zero();
    if passes {
        let (mut tree, summary) = resolve_germ_q(&split.g, &p, limits)?;
        tree.embedded_colength = embedded;
        Ok((tree, Some(report::summary_json(&summary))))
    } else {
        Ok((
            EsTree {
                root: None,
                embedded_colength: embedded,
            },
            None,
        ))
    }
}

fn run_command(cli: &Cli, limits: &Limits) -> CliResult<Value> {
    match &cli.cmd {
        Cmd::Invariants { file, point } => {
            let (built, hash) = read_document(file, limits)?;
            let ideal = built.plane_ideal()?;
            let results = match point {
                None => {
                    let rep = invariants::delta_total(&ideal, limits)?;
                    report::invariant_report_json(&rep)
                }
                Some(pt) => {
                    let p = parse_point(pt)?;
                    let row = invariants::invariants_at_rational_point(&ideal, p, limits)?;
                    json!({ "atPoint": report::point_report_json(&row) })
                }
            };
            let mut results = results;
            attach_expansion(&mut results, &ideal);
            Ok(report::envelope(
                json!({
                    "name": "invariants",
                    "file": basename(file),
                    "point": point.clone().map(Value::String).unwrap_or(Value::Null),
                }),
                Value::String(hash),
                results,
            ))
        }
        Cmd::Split { file } => {
            let (built, hash) = read_document(file, limits)?;
            let results = if built.is_family() {
                let fam = built.family()?;
                let split = family::family_split(&fam, limits)?;
                json!({
                    "family": true,
                    "hypersurfacePart": report::poly_str(&split.g),
                    "fatPointPart": split.j.gens().iter().map(report::poly_str).collect::<Vec<_>>(),
                    "verified": split.verified,
                    "specializedHypersurfaceAtOrigin": report::poly_str(
                        &family::specialize_poly(
                            &split.g,
                            &fam.plane_ring(),
                            &vec![Rational::zero(); fam.k()],
                        ),
                    ),
                })
            } else {
                let ideal = built.plane_ideal()?;
                let split = invariants::hb_split(&ideal, limits)?;
                json!({
                    "family": false,
                    "hypersurfacePart": report::poly_str(&split.g),
                    "fatPointPart": split.j.gens().iter().map(report::poly_str).collect::<Vec<_>>(),
                    "verified": split.verified,
                })
            };
            let mut results = results;
            attach_expansion(&mut results, &built.ideal);
            Ok(report::envelope(
                json!({ "name": "split", "file": basename(file) }),
                Value::String(hash),
                results,
            ))
        }
        Cmd::Fiber { file, at } => {
            let (built, hash) = read_document(file, limits)?;
            let fam = built.family()?;
            let t = parse_at(at, fam.k())?;
            let fiber = family::specialize_fiber(&fam, &t, limits)?;
            let rep = invariants::delta_total(&fiber, limits)?;
            let mut results = json!({
                "fiberGenerators": fiber.gens().iter().map(report::poly_str).collect::<Vec<_>>(),
                "invariants": report::invariant_report_json(&rep),
            });
            attach_expansion(&mut results, &built.ideal);
            Ok(report::envelope(
                json!({
                    "name": "fiber",
                    "file": basename(file),
                    "at": report::rational_vec(&t),
                }),
                Value::String(hash),
                results,
            ))
        }
        Cmd::Scan { file, grid, seed } => {
            let (built, hash) = read_document(file, limits)?;
            let fam = built.family()?;
            let grid_spec = match grid {
                Some(s) => parse_grid(s, fam.k())?,
                None => default_cli_grid(fam.k()),
            };
            let mut limits = limits.clone();
            if let Some(s) = seed {
                limits.rng_seed = *s;
            }
            let threads = cli
                .threads
                .unwrap_or_else(|| {
                    std::thread::available_parallelism()
                        .map(|n| n.get())
                        .unwrap_or(1)
                })
                .max(1);
            let rep = family::delta_constancy_scan(&fam, &grid_spec, &limits, threads)?;
            let colength = family::embedded_colength_conservation(&fam, &grid_spec, &limits)?;
            let mut results = report::family_report_json(&rep);
            if let Value::Object(m) = &mut results {
                m.insert(
                    "embeddedColengthConservation".into(),
                    report::colength_report_json(&colength),
                );
            }
            attach_expansion(&mut results, &built.ideal);
            Ok(report::envelope(
                json!({
                    "name": "scan",
                    "file": basename(file),
                    "grid": grid.clone().map(Value::String).unwrap_or(Value::Null),
                    "seed": seed.map(|s| json!(s)).unwrap_or(Value::Null),
                }),
                Value::String(hash),
                results,
            ))
        }
        Cmd::Tree { file, at, point } => {
            let (built, hash) = read_document(file, limits)?;
            let ideal = if built.is_family() {
                let fam = built.family()?;
                let t = match at {
                    Some(s) => parse_at(s, fam.k())?,
                    None => vec![Rational::zero(); fam.k()],
                };
                family::specialize_fiber(&fam, &t, limits)?
            } else {
                if at.is_some() {
                    return Err(CliError::input(
                        "not-a-family",
                        "--at is only meaningful for documents with parameters",
                    ));
                }
                built.plane_ideal()?
            };
            let pt = match point {
                Some(s) => parse_point(s)?,
                None => (Rational::zero(), Rational::zero()),
            };
            let (tree, summary) = germ_tree_of_ideal(&ideal, pt, limits)?;
            let mut results = json!({
                "tree": report::tree_json(&tree),
                "code": canonicalize(&tree).0,
            });
            if let (Value::Object(m), Some(s)) = (&mut results, summary) {
                m.insert("resolution".into(), s);
            }
            attach_expansion(&mut results, &built.ideal);
            Ok(report::envelope(
                json!({
                    "name": "tree",
                    "file": basename(file),
                    "at": at.clone().map(Value::String).unwrap_or(Value::Null),
                    "point": point.clone().map(Value::String).unwrap_or(Value::Null),
                }),
                Value::String(hash),
                results,
            ))
        }
        Cmd::TreeCmp { file_a, file_b } => {
            let (built_a, hash_a) = read_document(file_a, limits)?;
            let (built_b, hash_b) = read_document(file_b, limits)?;
            let origin_pt = (Rational::zero(), Rational::zero());
            let ideal_of = |b: &BuiltDocument| -> CliResult<QIdeal> {
                if b.is_family() {
                    let fam = b.family()?;
                    family::specialize_fiber(&fam, &vec![Rational::zero(); fam.k()], limits)
                        .map_err(CliError::from)
                } else {
                    b.plane_ideal()
                }
            };
            let (tree_a, _) = germ_tree_of_ideal(&ideal_of(&built_a)?, origin_pt.clone(), limits)?;
            let (tree_b, _) = germ_tree_of_ideal(&ideal_of(&built_b)?, origin_pt, limits)?;
            let results = json!({
                "isomorphic": isomorphic(&tree_a, &tree_b),
                "codeA": canonicalize(&tree_a).0,
                "codeB": canonicalize(&tree_b).0,
                "treeA": report::tree_json(&tree_a),
                "treeB": report::tree_json(&tree_b),
            });
            Ok(report::envelope(
                json!({
                    "name": "tree-cmp",
                    "fileA": basename(file_a),
                    "fileB": basename(file_b),
                }),
                json!({ "a": hash_a, "b": hash_b }),
                results,
            ))
        }
        Cmd::CheckParam { file, map } => {
            let (built, hash) = read_document(file, limits)?;
            let images = parse_map(map)?;
            let ok = family::check_parametrization(&built.ideal, &images)?;
            let mut results = json!({
                "parametrizes": ok,
                "map": images.iter().map(report::poly_str).collect::<Vec<_>>(),
            });
            attach_expansion(&mut results, &built.ideal);
            Ok(report::envelope(
                json!({
                    "name": "check-param",
                    "file": basename(file),
                    "map": map,
                }),
                Value::String(hash),
                results,
            ))
        }
        Cmd::Gb { file, order } => {
            let (built, hash) = read_document(file, limits)?;
            let ord = match order.as_str() {
                "lex" => MonomialOrder::Lex,
                "grevlex" => MonomialOrder::GrevLex,
                other => {
                    return Err(CliError::input(
                        "bad-order",
                        format!("unknown order {other:?}; use lex or grevlex"),
                    ))
                }
            };
            let basis = built.ideal.basis(&ord, limits).map_err(CliError::from)?;
            let mut results = json!({
                "order": order,
                "basis": basis.iter().map(report::poly_str).collect::<Vec<_>>(),
            });
            attach_expansion(&mut results, &built.ideal);
            Ok(report::envelope(
                json!({
                    "name": "gb",
                    "file": basename(file),
                    "order": order,
                }),
                Value::String(hash),
                results,
            ))
        }
    }
}

/// Every report carries the expanded generator list of the analyzed ideal
/// for auditability.
fn attach_expansion(results: &mut Value, ideal: &QIdeal) {
    if let Value::Object(m) = results {
        m.insert(
            "expandedGenerators".into(),
            Value::Array(ideal.gens().iter().map(report::poly_str).collect()),
        );
    }
}

/// Entry point: parse argv, run, print, map errors to exit codes.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap's own rendering is the human diagnostic; wrap a machine
            // envelope around it on stderr.
            if e.use_stderr() {
                eprintln!(
                    "{}",
                    report::render(&json!({
                        "error": { "code": "bad-arguments", "message": e.to_string() }
                    }))
                );
                return 2;
            }
            // --help / --version go to stdout with success.
            print!("{e}");
            return 0;
        }
    };
    let limits = Limits::default();
    match run_command(&cli, &limits) {
        Ok(value) => {
            let rendered = report::render(&value);
            print!("{rendered}");
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
                    eprintln!(
                        "{}",
                        report::render(&json!({
                            "error": { "code": "io-error", "message": e.to_string() }
                        }))
                    );
                    return 2;
                }
            }
            0
        }
        Err(e) => {
            eprintln!(
                "{}",
                report::render(&json!({
                    "error": { "code": e.code, "message": e.message }
                }))
            );
            e.exit_code()
        }
    }
}
