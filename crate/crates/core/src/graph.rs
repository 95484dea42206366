//! Simple undirected graphs on dense vertex ids `0..n`, plus the handful of
//! structural queries every other module builds on: 2-coloring, components,
//! induced subgraphs, n-domination and complements.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unordered vertex pair, always stored as `(min, max)`.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph. Adjacency lists are sorted and the edge list is
/// sorted by `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n(),
            edges: g.edges,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph, collapsing duplicate edges. Loops and out-of-range
    /// endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Ok(Self::from_edges_counting(n, edges)?.0)
    }

    /// Like [`Graph::from_edges`], also returning how many duplicates were dropped.
    pub fn from_edges_counting<I>(n: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            list.push(edge(u, v));
        }
        let before = list.len();
        list.sort_unstable();
        list.dedup();
        let duplicates = before - list.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok((Graph { adj, edges: list }, duplicates))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&edge(e.0, e.1)).ok()
    }

    /// `G - e`.
    pub fn without_edge(&self, e: Edge) -> Graph {
        let e = edge(e.0, e.1);
        Graph::from_edges(self.n(), self.edges.iter().copied().filter(|&f| f != e)).expect("subset of a valid edge set")
    }

    /// `G + e`. Fails on loops or out-of-range endpoints.
    pub fn with_edge(&self, e: Edge) -> Result<Graph> {
        Graph::from_edges(self.n(), self.edges.iter().copied().chain([e]))
    }

    /// `G - W`, relabeled densely; see [`Subgraph`].
    pub fn without_vertices(&self, removed: &[usize]) -> Subgraph {
        let mut keep = vec![true; self.n()];
        for &v in removed {
            if v < keep.len() {
                keep[v] = false;
            }
        }
        let members: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        induced_subgraph(self, &VertexSet::from_sorted(members)).expect("members in range")
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).len() == 1
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        Graph::from_edges(
            off + other.n(),
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off))),
        )
        .expect("shifted edges stay in range")
    }

    /// Applies `map[old] = new` to every edge. `map` must be a permutation.
    pub fn relabel(&self, map: &[usize]) -> Graph {
        Graph::from_edges(self.n(), self.edges.iter().map(|&(u, v)| (map[u], map[v])))
            .expect("permutation keeps edges valid")
    }
}

impl fmt::Display for Graph {
    /// Edge-list text: `"n m"` then one sorted edge per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n(), self.edge_count())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Caller guarantees `members` is strictly increasing.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(mask.iter().enumerate().filter_map(|(v, &m)| m.then_some(v)).collect())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }

    /// Vertices of `0..n` not in the set.
    pub fn complement(&self, n: usize) -> VertexSet {
        let mask = self.to_mask(n);
        VertexSet((0..n).filter(|&v| !mask[v]).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// No edge of `g` joins two members.
    pub fn is_stable_in(&self, g: &Graph) -> bool {
        self.iter().all(|u| g.neighbors(u).iter().all(|&w| !self.contains(w)))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

/// Color class of a vertex in a [`Bipartition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// 2-coloring of a bipartite graph. Each component is colored on its own,
/// with its smallest vertex in class A.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    /// Wraps an explicit coloring; `validate` against a graph before use.
    pub fn from_sides(side: Vec<Side>) -> Self {
        Bipartition { side }
    }

    #[inline]
    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    #[inline]
    pub fn is_a(&self, v: usize) -> bool {
        self.side[v] == Side::A
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn class_a(&self) -> VertexSet {
        self.class(Side::A)
    }

    pub fn class_b(&self) -> VertexSet {
        self.class(Side::B)
    }

    pub fn class(&self, s: Side) -> VertexSet {
        VertexSet((0..self.side.len()).filter(|&v| self.side[v] == s).collect())
    }

    pub fn is_balanced(&self) -> bool {
        let a = self.side.iter().filter(|&&s| s == Side::A).count();
        2 * a == self.side.len()
    }

    /// True iff the coloring covers `g` and every edge crosses it.
    pub fn validate(&self, g: &Graph) -> bool {
        self.side.len() == g.n() && g.edges().iter().all(|&(u, v)| self.side[u] != self.side[v])
    }

    /// Restriction to an induced subgraph.
    pub fn restrict(&self, sub: &Subgraph) -> Bipartition {
        Bipartition {
            side: sub.to_original.iter().map(|&v| self.side[v]).collect(),
        }
    }
}

/// Odd closed walk certifying that a graph is not bipartite. The sequence is
/// a simple cycle, listed from its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycle(pub Vec<usize>);

/// Breadth-first 2-coloring, or an odd cycle.
pub fn bipartition(g: &Graph) -> std::result::Result<Bipartition, OddCycle> {
    let n = g.n();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(Side::A);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(su.other());
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => {
                        return Err(odd_cycle_from_tree(u, w, &parent, &depth));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(Bipartition {
        side: side.into_iter().map(Option::unwrap).collect(),
    })
}

fn odd_cycle_from_tree(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> OddCycle {
    let (mut x, mut y) = (u, w);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    OddCycle(normalize_cycle(left))
}

/// Rotates a cycle to start at its smallest vertex, heading toward the
/// smaller of that vertex's two cycle neighbors.
pub fn normalize_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    if cycle.is_empty() {
        return cycle;
    }
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(pos);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Connected components ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        stack.push(root);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.push(comp.into_iter().collect());
    }
    out
}

/// Component index per vertex, numbered as in [`connected_components`].
pub fn component_ids(g: &Graph) -> Vec<usize> {
    let mut id = vec![0; g.n()];
    for (c, comp) in connected_components(g).iter().enumerate() {
        for v in comp.iter() {
            id[v] = c;
        }
    }
    id
}

/// Induced subgraph together with the id translation back to its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `to_original[local] = parent id`, increasing.
    pub to_original: Vec<usize>,
}

impl Subgraph {
    pub fn to_local(&self, original: usize) -> Option<usize> {
        self.to_original.binary_search(&original).ok()
    }

    pub fn lift(&self, local: usize) -> usize {
        self.to_original[local]
    }

    pub fn lift_set(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.to_original[v]).collect()
    }

    pub fn lift_edge(&self, e: Edge) -> Edge {
        edge(self.to_original[e.0], self.to_original[e.1])
    }
}

/// `G[X]`, relabeled to `0..|X|` in increasing original order.
pub fn induced_subgraph(g: &Graph, x: &VertexSet) -> Result<Subgraph> {
    if let Some(v) = x.iter().find(|&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let to_original: Vec<usize> = x.iter().collect();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in to_original.iter().enumerate() {
        local[v] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
        .map(|&(u, v)| (local[u], local[v]));
    let graph = Graph::from_edges(to_original.len(), edges).expect("local ids in range");
    Ok(Subgraph { graph, to_original })
}

/// A vertex outside the candidate set with too few neighbors inside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnderDominated {
    pub vertex: usize,
    pub count: usize,
}

/// Checks that every vertex outside `d` has at least `k` neighbors in `d`.
pub fn is_n_dominating(g: &Graph, d: &VertexSet, k: usize) -> std::result::Result<(), UnderDominated> {
    let mask = d.to_mask(g.n());
    for v in 0..g.n() {
        if mask[v] {
            continue;
        }
        let count = g.neighbors(v).iter().filter(|&&w| mask[w]).count();
        if count < k {
            return Err(UnderDominated { vertex: v, count });
        }
    }
    Ok(())
}

/// Degree-one vertices.
pub fn pendant_vertices(g: &Graph) -> VertexSet {
    VertexSet((0..g.n()).filter(|&v| g.degree(v) == 1).collect())
}

/// Edges of the complement graph.
pub fn complement_edges(g: &Graph) -> Vec<Edge> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Cross-class non-edges.
pub fn bipartite_complement_edges(g: &Graph, b: &Bipartition) -> Vec<Edge> {
    complement_edges(g)
        .into_iter()
        .filter(|&(u, v)| b.side(u) != b.side(v))
        .collect()
}

/// Result of reading an edge-list document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub duplicate_edges: usize,
}

/// Parses the edge-list format: a header line `"n m"` followed by `m` lines
/// `"u v"`. Blank lines and lines starting with `#` are skipped. Line numbers
/// in errors are 1-based physical lines.
pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing header line \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut raw = Vec::with_capacity(m);
    for (line, text) in lines {
        if raw.len() == m {
            return Err(Error::Parse {
                line,
                message: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = parse_pair(line, text)?;
        for w in [u, v] {
            if w >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex {w} out of range 0..{n}"),
                });
            }
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("loop edge at vertex {u}"),
            });
        }
        raw.push((u, v));
    }
    if raw.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("expected {m} edges, found {}", raw.len()),
        });
    }
    let (graph, duplicate_edges) = Graph::from_edges_counting(n, raw)?;
    Ok(ParsedGraph { graph, duplicate_edges })
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let bad = |message: String| Error::Parse { line, message };
    let mut next = || -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| bad(format!("expected two integers, got {text:?}")))?;
        tok.parse::<usize>()
            .map_err(|_| bad(format!("not a non-negative integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(bad(format!("trailing tokens in {text:?}")));
    }
    Ok((a, b))
}

/// Inverse of [`parse_graph`].
pub fn write_graph(g: &Graph) -> String {
    g.to_string()
}
