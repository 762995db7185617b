//! Forbidden induced subgraphs and the separability verdict.
//!
//! A RAAG is subgroup separable exactly when its graph has no induced path on
//! four vertices (whose group is `L`) and no induced square (`F2 × F2`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decomposition::{decompose_set, DecompositionTree};
use crate::graph::{Graph, VertexSet};
use crate::words::GroupPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    /// Induced path of length three.
    PathLength3,
    /// Induced closed path of length four.
    Square,
}

impl ObstructionKind {
    pub fn group_name(self) -> &'static str {
        match self {
            ObstructionKind::PathLength3 => "L",
            ObstructionKind::Square => "F2×F2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionWitness {
    pub kind: ObstructionKind,
    pub vertices: [String; 4],
    pub obstruction_group: GroupPresentation,
}

impl ObstructionWitness {
    fn new(g: &Graph, kind: ObstructionKind, order: [usize; 4]) -> Self {
        let vertices = order.map(|i| g.name(i).to_string());
        let pairs: &[(usize, usize)] = match kind {
            ObstructionKind::PathLength3 => &[(0, 1), (1, 2), (2, 3)],
            ObstructionKind::Square => &[(0, 1), (1, 2), (2, 3), (3, 0)],
        };
        let obstruction_group = GroupPresentation::commutators(vertices.to_vec(), pairs);
        ObstructionWitness {
            kind,
            vertices,
            obstruction_group,
        }
    }

    /// Re-checks that the listed vertices induce exactly the claimed edges in `g`.
    pub fn validate(&self, g: &Graph) -> bool {
        let Ok(set) = g.vertex_set(&self.vertices) else {
            return false;
        };
        if set.len() != 4 {
            return false;
        }
        let idx: Vec<usize> = self
            .vertices
            .iter()
            .map(|v| g.index_of(v).unwrap())
            .collect();
        let cyclic = self.kind == ObstructionKind::Square;
        for a in 0..4 {
            for b in a + 1..4 {
                let consecutive = b == a + 1 || (cyclic && a == 0 && b == 3);
                if g.adjacent(idx[a], idx[b]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for ObstructionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = match self.kind {
            ObstructionKind::PathLength3 => "path of length three",
            ObstructionKind::Square => "square",
        };
        write!(
            f,
            "induced {} {} generating {} = {}",
            shape,
            self.vertices.join("-"),
            self.kind.group_name(),
            self.obstruction_group
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Separable(DecompositionTree),
    NotSeparable(ObstructionWitness),
}

impl Verdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, Verdict::Separable(_))
    }

    pub fn witness(&self) -> Option<&ObstructionWitness> {
        match self {
            Verdict::NotSeparable(w) => Some(w),
            Verdict::Separable(_) => None,
        }
    }

    pub fn tree(&self) -> Option<&DecompositionTree> {
        match self {
            Verdict::Separable(t) => Some(t),
            Verdict::NotSeparable(_) => None,
        }
    }
}

/// All 4-subsets `(i, j, k, l)` with `i < j < k < l`, in lexicographic order.
fn quads(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| {
            (j + 1..n).flat_map(move |k| (k + 1..n).map(move |l| [i, j, k, l]))
        })
    })
}

fn degree_in(g: &Graph, v: usize, s: VertexSet) -> usize {
    g.neighbors(v).intersection(s).len()
}

/// Orders an induced P4 on `q` endpoint-first, starting from the lesser endpoint.
fn path_order(g: &Graph, q: [usize; 4]) -> Option<[usize; 4]> {
    let s: VertexSet = q.iter().copied().collect();
    if g.edges_within(s) != 3 {
        return None;
    }
    let ends: Vec<usize> = q
        .iter()
        .copied()
        .filter(|&v| degree_in(g, v, s) == 1)
        .collect();
    // Three edges on four vertices with two leaves and no isolated vertex is a path;
    // a star has three leaves and a triangle plus a point has an isolated vertex.
    if ends.len() != 2 || q.iter().any(|&v| degree_in(g, v, s) == 0) {
        return None;
    }
    let mut order = [ends[0]; 4];
    let mut visited = VertexSet::singleton(ends[0]);
    for k in 1..4 {
        let next = g
            .neighbors(order[k - 1])
            .intersection(s)
            .iter()
            .find(|&v| !visited.contains(v))?;
        order[k] = next;
        visited.insert(next);
    }
    Some(order)
}

/// Finds the least 4-subset inducing a path of length three.
pub fn find_induced_path3(g: &Graph) -> Option<ObstructionWitness> {
    quads(g.vertex_count())
        .find_map(|q| path_order(g, q))
        .map(|order| ObstructionWitness::new(g, ObstructionKind::PathLength3, order))
}

fn square_order(g: &Graph, q: [usize; 4]) -> Option<[usize; 4]> {
    let s: VertexSet = q.iter().copied().collect();
    if g.edges_within(s) != 4 || q.iter().any(|&v| degree_in(g, v, s) != 2) {
        return None;
    }
    let start = q[0];
    let nbrs: Vec<usize> = g.neighbors(start).intersection(s).iter().collect();
    let (second, fourth) = (nbrs[0], nbrs[1]);
    let third = g
        .neighbors(second)
        .intersection(s)
        .without(start)
        .first()
        .unwrap();
    Some([start, second, third, fourth])
}

/// Finds the least 4-subset inducing a square.
pub fn find_induced_square(g: &Graph) -> Option<ObstructionWitness> {
    quads(g.vertex_count())
        .find_map(|q| square_order(g, q))
        .map(|order| ObstructionWitness::new(g, ObstructionKind::Square, order))
}

/// Least vertex of `s` adjacent to every other vertex of `s`.
pub fn dominating_vertex_within(g: &Graph, s: VertexSet) -> Option<usize> {
    s.iter()
        .find(|&v| s.without(v).is_subset(g.neighbors(v)))
}

/// Least vertex adjacent to all others; the vertex itself for a one-vertex graph.
pub fn dominating_vertex(g: &Graph) -> Option<&str> {
    dominating_vertex_within(g, g.all()).map(|i| g.name(i))
}

/// Any obstruction, preferring an induced path over a square.
pub fn find_obstruction(g: &Graph) -> Option<ObstructionWitness> {
    find_induced_path3(g).or_else(|| find_induced_square(g))
}

pub fn separability_verdict(g: &Graph) -> Verdict {
    match find_obstruction(g) {
        Some(w) => Verdict::NotSeparable(w),
        None => Verdict::Separable(
            decompose_set(g, g.all()).expect("obstruction-free graphs always decompose"),
        ),
    }
}
