//! Finite simplicial graphs with at most 64 vertices.
//!
//! Vertices carry opaque names and a fixed index given by the order in which
//! they were first mentioned. That index order is the letter order used by the
//! word normal form, so it is part of a graph's identity: two graphs with the
//! same edges but different vertex orders are different values.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A subset of a graph's vertices, stored as a bitmask over vertex indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The first `n` vertex indices.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VertexSet(1u64 << i)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn without(self, i: usize) -> Self {
        VertexSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from vertex names and index pairs.
    pub fn new<S: Into<String>>(vertices: Vec<S>, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if names.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::MalformedToken {
                    line: 0,
                    token: name.clone(),
                });
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut adj = vec![0u64; names.len()];
        for &(u, v) in edges {
            if u >= names.len() || v >= names.len() {
                return Err(Error::VertexSetOutOfRange);
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: 0,
                    vertex: names[u].clone(),
                });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { names, index, adj })
    }

    /// Builds a graph from named edges; isolated vertices can be listed in `vertices`.
    pub fn from_named_edges(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let mut order: Vec<&str> = Vec::new();
        for v in vertices.iter().copied().chain(edges.iter().flat_map(|&(a, b)| [a, b])) {
            if !order.contains(&v) {
                order.push(v);
            }
        }
        let pos = |v: &str| order.iter().position(|w| *w == v).unwrap();
        let idx: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
        Graph::new(order, &idx)
    }

    pub fn path(names: &[&str]) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Graph::new(names.to_vec(), &edges)
    }

    pub fn cycle(names: &[&str]) -> Result<Self> {
        let n = names.len();
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::new(names.to_vec(), &edges)
    }

    pub fn complete(names: &[&str]) -> Result<Self> {
        let n = names.len();
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(names.to_vec(), &edges)
    }

    pub fn edgeless(names: &[&str]) -> Result<Self> {
        Graph::new(names.to_vec(), &[])
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn neighbors(&self, i: usize) -> VertexSet {
        VertexSet(self.adj[i])
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |i| {
            VertexSet(self.adj[i] & !((2u64 << i).wrapping_sub(1)))
                .iter()
                .map(move |j| (i, j))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    /// Resolves vertex names into a set, rejecting unknown names and duplicates.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        let mut set = VertexSet::EMPTY;
        for name in names {
            let name = name.as_ref();
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
            if set.contains(i) {
                return Err(Error::DuplicateVertex(name.to_string()));
            }
            set.insert(i);
        }
        Ok(set)
    }

    /// The full subgraph on `s`. Vertex order is inherited from `self`.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if !s.is_subset(self.all()) {
            return Err(Error::VertexSetOutOfRange);
        }
        let kept: Vec<usize> = s.iter().collect();
        let mut relabel = [usize::MAX; 64];
        for (new, &old) in kept.iter().enumerate() {
            relabel[old] = new;
        }
        let names: Vec<String> = kept.iter().map(|&i| self.names[i].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let adj = kept
            .iter()
            .map(|&old| {
                VertexSet(self.adj[old] & s.0)
                    .iter()
                    .fold(0u64, |acc, j| acc | 1 << relabel[j])
            })
            .collect();
        Ok(Graph { names, index, adj })
    }

    pub fn induced_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Graph> {
        self.induced_subgraph(self.vertex_set(names)?)
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter()
            .map(|i| (self.adj[i] & s.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Connected components of the full subgraph on `s`, ordered by least index.
    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut left = s;
        while let Some(start) = left.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                let fresh = VertexSet(next & s.0 & !comp.0);
                comp = comp.union(fresh);
                frontier = fresh;
            }
            left = VertexSet(left.0 & !comp.0);
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(self.all())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn set_names(&self, s: VertexSet) -> Vec<&str> {
        s.iter().map(|i| self.name(i)).collect()
    }

    /// Graphviz rendering of the graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (i, name) in self.names.iter().enumerate() {
            if self.adj[i] == 0 {
                out.push_str(&format!("  {name};\n"));
            }
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  {} -- {};\n", self.names[i], self.names[j]));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(i, j)| format!("{}-{}", self.names[i], self.names[j]))
            .collect();
        write!(f, "Graph({:?}, [{}])", self.names, edges.join(", "))
    }
}

impl fmt::Display for Graph {
    /// Renders the graph in its file format: every vertex on its own line, then the edges.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.names {
            writeln!(f, "{name}")?;
        }
        for (i, j) in self.edges() {
            writeln!(f, "{} {}", self.names[i], self.names[j])?;
        }
        Ok(())
    }
}

pub(crate) fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the edge-list format, rejecting empty input.
pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_graph_with(text, false)
}

/// Parses the edge-list format: `u v` declares an edge, `u` an isolated vertex,
/// `#` starts a comment line. Vertices are numbered in order of first mention.
pub fn parse_graph_with(text: &str, allow_empty: bool) -> Result<Graph> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    let mut intern = |name: &str, line: usize| -> Result<usize> {
        if !valid_name(name) {
            return Err(Error::MalformedToken {
                line,
                token: name.to_string(),
            });
        }
        if let Some(&i) = index.get(name) {
            return Ok(i);
        }
        let i = names.len();
        if i == MAX_VERTICES {
            return Err(Error::TooManyVertices(i + 1));
        }
        names.push(name.to_string());
        index.insert(name.to_string(), i);
        Ok(i)
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [v] => {
                intern(v, lineno + 1)?;
            }
            [u, v] => {
                if u == v {
                    if !valid_name(u) {
                        return Err(Error::MalformedToken {
                            line: lineno + 1,
                            token: u.to_string(),
                        });
                    }
                    return Err(Error::SelfLoop {
                        line: lineno + 1,
                        vertex: u.to_string(),
                    });
                }
                let a = intern(u, lineno + 1)?;
                let b = intern(v, lineno + 1)?;
                edges.push((a, b));
            }
            other => {
                return Err(Error::MalformedLine {
                    line: lineno + 1,
                    found: other.len(),
                })
            }
        }
    }

    if names.is_empty() && !allow_empty {
        return Err(Error::EmptyGraph);
    }
    Graph::new(names, &edges)
}

/// Every labeled graph on `v1..vn`, each exactly once.
///
/// Graph number `m` has the edge `(i, j)` iff bit `k` of `m` is set, where `k`
/// is the position of `(i, j)` in the lexicographic list of vertex pairs.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if !(1..=6).contains(&n) {
        return Err(Error::EnumerationRange(n));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::new(names.clone(), &edges).expect("enumerated graphs are valid")
    }))
}
