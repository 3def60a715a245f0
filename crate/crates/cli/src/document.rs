//! Evaluation of parsed documents into library objects.

use std::collections::BTreeMap;

use curvedelta::family::FamilyIdeal;
use curvedelta::groebner::{intersect_many, Ideal, QIdeal};
use curvedelta::{Limits, QPoly};

use crate::error::{CliError, CliResult};
use crate::parser::{Document, ExprAst};

/// A document with its analysis target expanded to a generator list.
pub struct BuiltDocument {
    pub doc: Document,
    /// The target ideal over the full ring (plane + parameters).
    pub ideal: QIdeal,
}

impl BuiltDocument {
    pub fn is_family(&self) -> bool {
        !self.doc.params.is_empty()
    }

    /// The target as a family; input error when the document has no
    /// parameters.
    pub fn family(&self) -> CliResult<FamilyIdeal> {
        if !self.is_family() {
            return Err(CliError::input(
                "not-a-family",
                "this command needs a document with a params declaration",
            ));
        }
        FamilyIdeal::new(
            self.doc.plane.clone(),
            self.doc.params.clone(),
            self.ideal.clone(),
        )
        .map_err(CliError::from)
    }

    /// The target as a plane ideal; input error when the document declares
    /// parameters.
    pub fn plane_ideal(&self) -> CliResult<QIdeal> {
        if self.is_family() {
            return Err(CliError::input(
                "family-document",
                "this command analyzes a plain plane ideal; use fiber/scan/split/tree for families",
            ));
        }
        Ok(self.ideal.clone())
    }
}

fn eval_expr(
    expr: &ExprAst,
    env: &BTreeMap<String, QIdeal>,
    doc: &Document,
    limits: &Limits,
) -> CliResult<QIdeal> {
    match expr {
        ExprAst::Ideal(gens) => Ok(Ideal::new(&doc.ring, gens.clone())),
        ExprAst::Ref(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::input("unknown-binding", format!("unknown binding {name}"))),
        ExprAst::Intersect(exprs) => {
            let ideals: Vec<QIdeal> = exprs
                .iter()
                .map(|e| eval_expr(e, env, doc, limits))
                .collect::<CliResult<_>>()?;
            intersect_many(&ideals, limits).map_err(CliError::from)
        }
    }
}

/// Expand every binding eagerly (intersections through the Groebner
/// module) and pick out the analysis target.
pub fn build(doc: Document, limits: &Limits) -> CliResult<BuiltDocument> {
    let mut env: BTreeMap<String, QIdeal> = BTreeMap::new();
    for (name, expr) in &doc.bindings {
        let ideal = eval_expr(expr, &env, &doc, limits)?;
        if ideal.is_zero_ideal() {
            return Err(CliError::input(
                "zero-ideal",
                format!("binding {name} evaluates to the zero ideal"),
            ));
        }
        env.insert(name.clone(), ideal);
    }
    let ideal = env
        .remove(&doc.target)
        .expect("parser guarantees the target is bound");
    Ok(BuiltDocument { doc, ideal })
}

/// Parse a polynomial list in fresh `T1..Tn` variables, `;`-separated, for
/// `check-param`.
pub fn parse_map(text: &str) -> CliResult<Vec<QPoly>> {
    let pieces: Vec<&str> = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    if pieces.is_empty() {
        return Err(CliError::input("empty-map", "the substitution map is empty"));
    }
    // Find the largest T-index used.
    let mut max_idx = 1usize;
    for piece in &pieces {
        let bytes = piece.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'T' {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j > i + 1 {
                    let idx: usize = piece[i + 1..j].parse().unwrap_or(1);
                    max_idx = max_idx.max(idx);
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    let names: Vec<String> = (1..=max_idx).map(|i| format!("T{i}")).collect();
    let tvars = curvedelta::VarSet::new(names);
    pieces
        .iter()
        .map(|piece| {
            curvedelta::parsepoly::parse_qpoly(piece, &tvars).map_err(|e| {
                CliError::input("map-parse-error", format!("in map component {piece:?}: {e}"))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_document;

    #[test]
    fn example1_expands_to_product_form() {
        let limits = Limits::default();
        let doc = parse_document(
            "ring x,y; I = intersect(ideal(x^2-y^3), ideal(y), ideal(x, y^5)); analyze I;",
        )
        .unwrap();
        let built = build(doc, &limits).unwrap();
        assert!(!built.is_family());
        let ideal = built.plane_ideal().unwrap();
        assert_eq!(ideal.gens().len(), 2);
    }

    #[test]
    fn family_detection() {
        let limits = Limits::default();
        let doc = parse_document(
            "ring x,y; params u,v; I = intersect(ideal(x^2-y^3+u*y^2), ideal(y-u), ideal(x-v, y)); analyze I;",
        )
        .unwrap();
        let built = build(doc, &limits).unwrap();
        assert!(built.is_family());
        assert!(built.family().is_ok());
        assert!(built.plane_ideal().is_err());
    }

    #[test]
    fn map_parsing() {
        let m = parse_map("T3^3+T1*T3; T3^2+T1; T1; T2").unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m[0].vars().len(), 3);
        assert!(parse_map("").is_err());
    }
}
