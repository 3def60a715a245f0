//! Canonical JSON rendering.
//!
//! Reports are built as `serde_json::Value` trees whose maps are BTree
//! backed, so object keys come out sorted; all rationals are rendered as
//! `p/q` strings in lowest terms (plain `p` when the denominator is one),
//! polynomials and tree codes as canonical strings. Identical inputs yield
//! byte-identical reports.

use serde_json::{json, Map, Value};

use curvedelta::estree::canonicalize;
use curvedelta::family::{ColengthReport, FamilyReport, FiberSample};
use curvedelta::invariants::{InvariantReport, PointReport};
use curvedelta::numberfield::AlgebraicNumber;
use curvedelta::resolution::{EsTree, InfinitelyNearPoint, NodeKind, ResolutionSummary};
use curvedelta::zerodim::PointClass;
use curvedelta::{QPoly, Rational, UniPoly};

pub fn rational_str(r: &Rational) -> Value {
    Value::String(r.to_canonical_string())
}

pub fn rational_vec(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational_str).collect())
}

pub fn poly_str(p: &QPoly) -> Value {
    Value::String(p.to_string())
}

/// Minimal polynomials print in the generator variable `a`.
fn unipoly_in_a(p: &UniPoly<Rational>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut pieces = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let s = match i {
            0 => c.to_canonical_string(),
            1 if c.is_one() => "a".to_string(),
            1 => format!("({})*a", c.to_canonical_string()),
            _ if c.is_one() => format!("a^{i}"),
            _ => format!("({})*a^{i}", c.to_canonical_string()),
        };
        pieces.push(s);
    }
    pieces.join(" + ")
}

fn algebraic_str(a: &AlgebraicNumber) -> Value {
    Value::String(a.to_string())
}

pub fn point_class_json(c: &PointClass) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), json!(c.degree));
    if c.field.is_rationals() {
        m.insert("field".into(), json!("rationals"));
    } else {
        m.insert(
            "field".into(),
            json!({
                "degree": c.field.degree(),
                "generator": "a",
                "minimalPolynomial": unipoly_in_a(c.field.min_poly()),
            }),
        );
    }
    m.insert("x".into(), algebraic_str(&c.x));
    m.insert("y".into(), algebraic_str(&c.y));
    Value::Object(m)
}

fn kind_str(k: NodeKind) -> &'static str {
    match k {
        NodeKind::Free => "free",
        NodeKind::Satellite => "satellite",
    }
}

fn node_json(n: &InfinitelyNearPoint) -> Value {
    json!({
        "multiplicity": n.multiplicity,
        "conjugacyDegree": n.conjugacy_degree,
        "kind": kind_str(n.kind),
        "children": n.children.iter().map(node_json).collect::<Vec<_>>(),
    })
}

pub fn tree_json(t: &EsTree) -> Value {
    json!({
        "embeddedColength": t.embedded_colength,
        "root": t.root.as_ref().map(node_json).unwrap_or(Value::Null),
        "code": canonicalize(t).0,
    })
}

pub fn summary_json(s: &ResolutionSummary) -> Value {
    json!({
        "deltaRed": s.delta_red,
        "branchCount": s.branch_count,
        "multiplicitySequencesPerBranch": s.multiplicity_sequences,
    })
}

pub fn point_report_json(r: &PointReport) -> Value {
    let mut m = Map::new();
    m.insert("point".into(), point_class_json(&r.class));
    m.insert("kind".into(), json!(r.kind.as_str()));
    m.insert("deltaRed".into(), json!(r.delta_red));
    m.insert("epsilon".into(), json!(r.epsilon));
    m.insert("delta".into(), json!(r.delta));
    m.insert("mu".into(), json!(r.mu));
    m.insert("branches".into(), json!(r.branches));
    if let Some(t) = &r.tree {
        m.insert("tree".into(), tree_json(t));
    }
    Value::Object(m)
}

pub fn invariant_report_json(r: &InvariantReport) -> Value {
    let mut m = Map::new();
    m.insert(
        "perPoint".into(),
        Value::Array(r.per_point.iter().map(point_report_json).collect()),
    );
    m.insert("totalDelta".into(), json!(r.total_delta));
    m.insert("hypersurfacePart".into(), poly_str(&r.split.g));
    m.insert(
        "fatPointPart".into(),
        Value::Array(r.split.j.gens().iter().map(poly_str).collect()),
    );
    m.insert("splitVerified".into(), json!(r.split.verified));
    if let Some(change) = &r.coordinate_change {
        m.insert(
            "coordinateChange".into(),
            Value::Array(change.iter().map(rational_str).collect()),
        );
    }
    Value::Object(m)
}

fn fiber_sample_json(s: &FiberSample) -> Value {
    let mut m = Map::new();
    m.insert("point".into(), rational_vec(&s.point));
    match &s.outcome {
        Ok(d) => {
            m.insert("ok".into(), json!(true));
            m.insert("totalDelta".into(), json!(d.invariants.total_delta));
            m.insert("fiberSquarefreeOK".into(), json!(d.fiber_squarefree_ok));
            m.insert("originTree".into(), tree_json(&d.origin_tree));
            m.insert("invariants".into(), invariant_report_json(&d.invariants));
        }
        Err(msg) => {
            m.insert("ok".into(), json!(false));
            m.insert(
                "error".into(),
                json!({
                    "code": s.error_code.unwrap_or("error"),
                    "message": msg,
                }),
            );
        }
    }
    Value::Object(m)
}

pub fn family_report_json(r: &FamilyReport) -> Value {
    json!({
        "samples": r.samples.iter().map(fiber_sample_json).collect::<Vec<_>>(),
        "deltaConstant": r.delta_constant,
        "equinormalizableUnmixedVerdict": r.verdict.as_str(),
        "verdictNote": "sampled delta criterion on a finite rational grid; \
                        flatness of the unmixed family is background, not checked",
        "semicontinuityViolations": r.semicontinuity_violations.iter().map(|v| json!({
            "point": rational_vec(&v.point),
            "totalDelta": v.total_delta,
            "specialDelta": v.special_delta,
        })).collect::<Vec<_>>(),
        "treeEquisingularAtOrigin": r.tree_equisingular_at_origin,
    })
}

pub fn colength_report_json(r: &ColengthReport) -> Value {
    json!({
        "specialValue": r.special_value,
        "samples": r.samples.iter().map(|s| {
            let mut m = Map::new();
            m.insert("point".into(), rational_vec(&s.point));
            match (s.total, &s.error) {
                (Some(t), _) => { m.insert("total".into(), json!(t)); }
                (None, Some(e)) => { m.insert("error".into(), json!(e)); }
                _ => {}
            }
            Value::Object(m)
        }).collect::<Vec<_>>(),
        "mismatches": r.mismatches.iter().map(|p| rational_vec(p)).collect::<Vec<_>>(),
    })
}

/// The outermost report envelope.
pub fn envelope(command: Value, input_hash: Value, results: Value) -> Value {
    json!({
        "schemaVersion": "1",
        "command": command,
        "inputHash": input_hash,
        "results": results,
    })
}

/// Canonical byte rendering: pretty JSON plus a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    let mut s = String::with_capacity(64 + 7);
    s.push_str("sha256:");
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}
