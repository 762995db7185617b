//! Group structure of separable RAAGs as a tree of free products and direct
//! factors of `Z`.
//!
//! Components of the graph give free factors; a vertex adjacent to everything
//! else splits off as a direct factor `Z`. An obstruction-free graph can always
//! be taken apart this way down to single vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::obstruction::{dominating_vertex_within, find_obstruction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DecompositionTree {
    /// The infinite cyclic group on one vertex.
    #[serde(rename = "leaf")]
    LeafZ { v: String },
    /// `child × ⟨v⟩`, where `v` is adjacent to every vertex spanned by `child`.
    #[serde(rename = "direct_z")]
    DirectWithZ {
        v: String,
        child: Box<DecompositionTree>,
    },
    /// Free product over connected components. The empty product is the trivial group.
    #[serde(rename = "free")]
    FreeProduct { children: Vec<DecompositionTree> },
}

use DecompositionTree::*;

/// Decomposes the full subgraph on `s`, or returns `None` when some connected
/// piece along the way has no dominating vertex.
pub(crate) fn decompose_set(g: &Graph, s: VertexSet) -> Option<DecompositionTree> {
    let comps = g.components_within(s);
    if comps.len() != 1 {
        let children = comps
            .into_iter()
            .map(|c| decompose_set(g, c))
            .collect::<Option<Vec<_>>>()?;
        return Some(FreeProduct { children });
    }
    if s.len() == 1 {
        return Some(LeafZ {
            v: g.name(s.first().unwrap()).to_string(),
        });
    }
    let d = dominating_vertex_within(g, s)?;
    Some(DirectWithZ {
        v: g.name(d).to_string(),
        child: Box::new(decompose_set(g, s.without(d))?),
    })
}

/// Builds the decomposition tree of a separable graph.
pub fn decompose(g: &Graph) -> Result<DecompositionTree> {
    decompose_set(g, g.all()).ok_or_else(|| {
        let w = find_obstruction(g).expect("a graph that does not decompose has an obstruction");
        Error::ObstructionPresent(Box::new(w))
    })
}

impl DecompositionTree {
    /// Vertices in the order they appear in the tree.
    pub fn vertices(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vertices(&mut out);
        out
    }

    fn collect_vertices<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            LeafZ { v } => out.push(v),
            DirectWithZ { v, child } => {
                out.push(v);
                child.collect_vertices(out);
            }
            FreeProduct { children } => children.iter().for_each(|c| c.collect_vertices(out)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            LeafZ { .. } => 1,
            DirectWithZ { child, .. } => 1 + child.depth(),
            FreeProduct { children } => 1 + children.iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    /// True for a chain of direct factors ending in a leaf, i.e. `Z^n`.
    pub fn is_free_abelian(&self) -> bool {
        match self {
            LeafZ { .. } => true,
            DirectWithZ { child, .. } => child.is_free_abelian(),
            FreeProduct { .. } => false,
        }
    }

    /// True for a leaf or a free product of leaves, i.e. `F_n`.
    pub fn is_free(&self) -> bool {
        match self {
            LeafZ { .. } => true,
            DirectWithZ { .. } => false,
            FreeProduct { children } => children.iter().all(|c| matches!(c, LeafZ { .. })),
        }
    }

    /// Checks the structural invariants against the graph the tree came from:
    /// every vertex exactly once, each direct factor adjacent to its whole
    /// child, free factors pairwise non-adjacent and not nested.
    pub fn validate(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::EMPTY;
        for v in self.vertices() {
            match g.index_of(v) {
                Some(i) if !seen.contains(i) => seen.insert(i),
                _ => return false,
            }
        }
        seen == g.all() && self.validate_node(g, true).is_some()
    }

    fn span(&self, g: &Graph) -> VertexSet {
        self.vertices()
            .into_iter()
            .filter_map(|v| g.index_of(v))
            .collect()
    }

    fn validate_node(&self, g: &Graph, top: bool) -> Option<()> {
        match self {
            LeafZ { .. } => Some(()),
            DirectWithZ { v, child } => {
                let i = g.index_of(v)?;
                child.span(g).is_subset(g.neighbors(i)).then_some(())?;
                child.validate_node(g, false)
            }
            FreeProduct { children } => {
                if children.len() < 2 && !(top && children.is_empty()) {
                    return None;
                }
                let spans: Vec<VertexSet> = children.iter().map(|c| c.span(g)).collect();
                for (a, sa) in spans.iter().enumerate() {
                    for sb in &spans[a + 1..] {
                        if sa.iter().any(|i| !g.neighbors(i).intersection(*sb).is_empty()) {
                            return None;
                        }
                    }
                }
                for c in children {
                    if matches!(c, FreeProduct { .. }) {
                        return None;
                    }
                    if g.components_within(c.span(g)).len() != 1 {
                        return None;
                    }
                    c.validate_node(g, false)?;
                }
                Some(())
            }
        }
    }

    /// Algebraic rendering: `Z[v]` leaves, `×` for direct factors, `*` for free
    /// products, composite factors parenthesized, direct chains left unnested.
    pub fn render(&self) -> String {
        match self {
            LeafZ { v } => format!("Z[{v}]"),
            DirectWithZ { v, child } => match child.as_ref() {
                FreeProduct { children } if children.len() > 1 => {
                    format!("({}) × Z[{v}]", child.render())
                }
                _ => format!("{} × Z[{v}]", child.render()),
            },
            FreeProduct { children } if children.is_empty() => "1".to_string(),
            FreeProduct { children } => children
                .iter()
                .map(|c| match c {
                    DirectWithZ { .. } => format!("({})", c.render()),
                    _ => c.render(),
                })
                .collect::<Vec<_>>()
                .join(" * "),
        }
    }

    /// Isomorphism type with vertex names dropped, e.g. `F2 × Z` or `Z^3`.
    pub fn summary(&self) -> String {
        match self {
            LeafZ { .. } => "Z".to_string(),
            DirectWithZ { .. } => {
                let mut k = 0;
                let mut node = self;
                while let DirectWithZ { child, .. } = node {
                    k += 1;
                    node = child;
                }
                match node {
                    LeafZ { .. } => format!("Z^{}", k + 1),
                    _ => {
                        let inner = node.summary();
                        let z = if k == 1 { "Z".to_string() } else { format!("Z^{k}") };
                        if inner.contains(" * ") {
                            format!("({inner}) × {z}")
                        } else {
                            format!("{inner} × {z}")
                        }
                    }
                }
            }
            FreeProduct { children } if children.is_empty() => "1".to_string(),
            FreeProduct { children } => {
                let leaves = children.iter().filter(|c| matches!(c, LeafZ { .. })).count();
                let mut parts = Vec::new();
                match leaves {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    m => parts.push(format!("F{m}")),
                }
                for c in children.iter().filter(|c| !matches!(c, LeafZ { .. })) {
                    let inner = c.summary();
                    if inner.contains(' ') {
                        parts.push(format!("({inner})"));
                    } else {
                        parts.push(inner);
                    }
                }
                parts.join(" * ")
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serialization cannot fail")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Canonical algebraic string of a tree.
pub fn render_structure(t: &DecompositionTree) -> String {
    t.render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn leaf(v: &str) -> DecompositionTree {
        LeafZ { v: v.into() }
    }

    fn direct(v: &str, child: DecompositionTree) -> DecompositionTree {
        DirectWithZ {
            v: v.into(),
            child: Box::new(child),
        }
    }

    #[test]
    fn decompose_examples() {
        let p3 = Graph::path(&["a", "b", "c"]).unwrap();
        let t = decompose(&p3).unwrap();
        assert_eq!(
            t,
            direct(
                "b",
                FreeProduct {
                    children: vec![leaf("a"), leaf("c")]
                }
            )
        );
        assert_eq!(t.render(), "(Z[a] * Z[c]) × Z[b]");
        assert_eq!(t.summary(), "F2 × Z");

        let k3 = Graph::complete(&["a", "b", "c"]).unwrap();
        let t = decompose(&k3).unwrap();
        assert_eq!(t, direct("a", direct("b", leaf("c"))));
        assert_eq!(t.render(), "Z[c] × Z[b] × Z[a]");
        assert_eq!(t.summary(), "Z^3");

        let free = Graph::edgeless(&["a", "b"]).unwrap();
        let t = decompose(&free).unwrap();
        assert_eq!(
            t,
            FreeProduct {
                children: vec![leaf("a"), leaf("b")]
            }
        );
        assert_eq!(t.summary(), "F2");
        assert_eq!(leaf("a").render(), "Z[a]");
    }

    #[test]
    fn decompose_rejects_obstructions() {
        let sq = Graph::cycle(&["a", "b", "c", "d"]).unwrap();
        match decompose(&sq) {
            Err(Error::ObstructionPresent(w)) => assert!(w.validate(&sq)),
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn mixed_structure_renders_with_parentheses() {
        // Star centred at c with an extra edge a-b, plus an isolated vertex e.
        let g = parse_graph("a c\nb c\nd c\na b\ne").unwrap();
        let t = decompose(&g).unwrap();
        assert!(t.validate(&g));
        assert_eq!(t.render(), "(((Z[b] × Z[a]) * Z[d]) × Z[c]) * Z[e]");
        assert_eq!(t.summary(), "Z * ((Z * Z^2) × Z)");
    }

    #[test]
    fn free_and_abelian_shapes() {
        let k4 = Graph::complete(&["a", "b", "c", "d"]).unwrap();
        assert!(decompose(&k4).unwrap().is_free_abelian());
        let e4 = Graph::edgeless(&["a", "b", "c", "d"]).unwrap();
        let t = decompose(&e4).unwrap();
        assert!(t.is_free());
        assert_eq!(t.summary(), "F4");
    }

    #[test]
    fn json_schema() {
        let p3 = Graph::path(&["a", "b", "c"]).unwrap();
        let t = decompose(&p3).unwrap();
        let json = t.to_json();
        assert_eq!(
            json,
            r#"{"kind":"direct_z","v":"b","child":{"kind":"free","children":[{"kind":"leaf","v":"a"},{"kind":"leaf","v":"c"}]}}"#
        );
        assert_eq!(DecompositionTree::from_json(&json).unwrap(), t);
    }

    #[test]
    fn validate_catches_bad_trees() {
        let p3 = Graph::path(&["a", "b", "c"]).unwrap();
        // a is not adjacent to c.
        let bad = direct(
            "a",
            FreeProduct {
                children: vec![leaf("b"), leaf("c")],
            },
        );
        assert!(!bad.validate(&p3));
        let missing = direct("b", leaf("a"));
        assert!(!missing.validate(&p3));
    }

    #[test]
    fn empty_graph_is_trivial_group() {
        let g = crate::graph::parse_graph_with("", true).unwrap();
        let t = decompose(&g).unwrap();
        assert_eq!(t.render(), "1");
        assert!(t.validate(&g));
    }
}
