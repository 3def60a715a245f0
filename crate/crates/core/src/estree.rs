//! Canonical forms and isomorphism tests for the weighted trees.
//!
//! AHU-style: a node's code is its label triple followed by the sorted list
//! of child codes, so two trees get equal codes exactly when they are
//! isomorphic as labeled rooted trees. The serialization order of the label
//! triple is (multiplicity, conjugacyDegree, kind) with kind rendered as
//! `f`/`s`; the root code carries the embedded-colength label as a prefix.
//! These codes appear verbatim in JSON reports and must stay byte-stable.

use std::cmp::Ordering;

use crate::resolution::{EsTree, InfinitelyNearPoint, NodeKind};

/// A canonical string code; equal codes iff isomorphic labeled trees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalTreeCode(pub String);

impl std::fmt::Display for CanonicalTreeCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn kind_char(k: NodeKind) -> char {
    match k {
        NodeKind::Free => 'f',
        NodeKind::Satellite => 's',
    }
}

fn node_code(n: &InfinitelyNearPoint) -> String {
    let mut child_codes: Vec<String> = n.children.iter().map(node_code).collect();
    child_codes.sort();
    let mut out = format!(
        "({},{},{}",
        n.multiplicity,
        n.conjugacy_degree,
        kind_char(n.kind)
    );
    for c in child_codes {
        out.push_str(&c);
    }
    out.push(')');
    out
}

/// Canonical ordering of sibling nodes: by their canonical codes.
pub fn cmp_nodes(a: &InfinitelyNearPoint, b: &InfinitelyNearPoint) -> Ordering {
    node_code(a).cmp(&node_code(b))
}

/// Bottom-up canonical code of the whole tree, embedded-colength prefix on
/// the root.
pub fn canonicalize(t: &EsTree) -> CanonicalTreeCode {
    let body = match &t.root {
        Some(r) => node_code(r),
        None => "()".to_string(),
    };
    CanonicalTreeCode(format!("e{}:{}", t.embedded_colength, body))
}

/// Labeled rooted tree isomorphism.
pub fn isomorphic(a: &EsTree, b: &EsTree) -> bool {
    canonicalize(a) == canonicalize(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(m: u32, d: u32, kind: NodeKind) -> InfinitelyNearPoint {
        InfinitelyNearPoint {
            multiplicity: m,
            conjugacy_degree: d,
            kind,
            children: Vec::new(),
        }
    }

    #[test]
    fn single_node_minimal_code() {
        let t = EsTree {
            root: Some(leaf(1, 1, NodeKind::Free)),
            embedded_colength: 0,
        };
        assert_eq!(canonicalize(&t).0, "e0:(1,1,f)");
    }

    #[test]
    fn child_order_is_irrelevant() {
        let a = InfinitelyNearPoint {
            multiplicity: 2,
            conjugacy_degree: 1,
            kind: NodeKind::Free,
            children: vec![leaf(1, 1, NodeKind::Free), leaf(1, 2, NodeKind::Satellite)],
        };
        let b = InfinitelyNearPoint {
            multiplicity: 2,
            conjugacy_degree: 1,
            kind: NodeKind::Free,
            children: vec![leaf(1, 2, NodeKind::Satellite), leaf(1, 1, NodeKind::Free)],
        };
        let ta = EsTree {
            root: Some(a),
            embedded_colength: 0,
        };
        let tb = EsTree {
            root: Some(b),
            embedded_colength: 0,
        };
        assert!(isomorphic(&ta, &tb));
    }

    #[test]
    fn labels_are_discriminating() {
        let a = EsTree {
            root: Some(leaf(1, 1, NodeKind::Free)),
            embedded_colength: 0,
        };
        let mut b = a.clone();
        b.root.as_mut().unwrap().multiplicity = 2;
        assert!(!isomorphic(&a, &b));
        let mut c = a.clone();
        c.embedded_colength = 1;
        assert!(!isomorphic(&a, &c));
        let mut d = a.clone();
        d.root.as_mut().unwrap().kind = NodeKind::Satellite;
        assert!(!isomorphic(&a, &d));
    }

    #[test]
    fn cusp_and_node_trees_differ() {
        use crate::local::origin;
        use crate::parsepoly::parse_qpoly;
        use crate::poly::VarSet;
        use crate::resolution::resolve_germ_q;
        use crate::Limits;
        let vars = VarSet::new(vec!["x", "y"]);
        let limits = Limits::default();
        let cusp = resolve_germ_q(&parse_qpoly("x^2-y^3", &vars).unwrap(), &origin(), &limits)
            .unwrap()
            .0;
        let node = resolve_germ_q(&parse_qpoly("x^2-y^2", &vars).unwrap(), &origin(), &limits)
            .unwrap()
            .0;
        assert!(!isomorphic(&cusp, &node));
        assert!(isomorphic(&cusp, &cusp));
    }
}
