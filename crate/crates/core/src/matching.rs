//! Maximum matchings of bipartite graphs and the König duality built on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Bipartition, Edge, Graph, VertexSet};

/// Set of pairwise non-incident edges, with a partner map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatchingRepr", try_from = "MatchingRepr")]
pub struct Matching {
    edges: Vec<Edge>,
    partner: Vec<Option<usize>>,
}

#[derive(Serialize, Deserialize)]
struct MatchingRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl From<Matching> for MatchingRepr {
    fn from(m: Matching) -> Self {
        MatchingRepr {
            n: m.partner.len(),
            edges: m.edges,
        }
    }
}

impl TryFrom<MatchingRepr> for Matching {
    type Error = Error;

    fn try_from(r: MatchingRepr) -> Result<Self> {
        Matching::from_edges(r.n, r.edges)
    }
}

impl Matching {
    /// Validates that the pairs are in range, loop-free and pairwise disjoint.
    /// Membership in a particular graph is checked by [`Matching::is_in`].
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut partner = vec![None; n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v || partner[u].is_some() || partner[v].is_some() {
                return Err(Error::InvalidMatching(format!("edge {:?} shares an endpoint", (u, v))));
            }
            partner[u] = Some(v);
            partner[v] = Some(u);
            list.push(edge(u, v));
        }
        list.sort_unstable();
        Ok(Matching { edges: list, partner })
    }

    pub(crate) fn from_partner(partner: Vec<Option<usize>>) -> Self {
        let edges = partner
            .iter()
            .enumerate()
            .filter_map(|(u, p)| p.filter(|&v| u < v).map(|v| (u, v)))
            .collect();
        Matching { edges, partner }
    }

    pub fn empty(n: usize) -> Self {
        Matching {
            edges: Vec::new(),
            partner: vec![None; n],
        }
    }

    /// μ when the matching is maximum.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.partner[v]
    }

    pub(crate) fn partners(&self) -> &[Option<usize>] {
        &self.partner
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.partner.get(e.0).copied().flatten() == Some(e.1)
    }

    pub fn is_perfect(&self) -> bool {
        self.partner.iter().all(Option::is_some)
    }

    pub fn unmatched(&self) -> VertexSet {
        (0..self.partner.len()).filter(|&v| self.partner[v].is_none()).collect()
    }

    /// Every edge belongs to `g` and the vertex counts agree.
    pub fn is_in(&self, g: &Graph) -> bool {
        self.partner.len() == g.n() && self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }
}

/// Stable set, flagged when its producer guarantees maximum size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableSet {
    pub members: VertexSet,
    pub is_maximum: bool,
}

impl StableSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Vertex set touching every edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCover {
    pub members: VertexSet,
}

impl VertexCover {
    pub fn covers(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| self.members.contains(u) || self.members.contains(v))
    }
}

/// Restrictions applied on top of a graph when running Hopcroft–Karp:
/// removed vertices and at most one removed edge.
#[derive(Clone, Copy, Default)]
pub(crate) struct Restriction<'a> {
    pub removed: Option<&'a [bool]>,
    pub skip_edge: Option<Edge>,
}

impl Restriction<'_> {
    #[inline]
    fn alive(&self, v: usize) -> bool {
        self.removed.is_none_or(|r| !r[v])
    }

    #[inline]
    fn usable(&self, a: usize, b: usize) -> bool {
        self.alive(a) && self.alive(b) && self.skip_edge != Some(edge(a, b))
    }
}

const INF: usize = usize::MAX;

/// Hopcroft–Karp augmentation to a maximum matching, starting from `mate`
/// (which must already be a matching of the restricted graph). Returns the
/// final matching size.
pub(crate) fn augment_to_maximum(
    g: &Graph,
    b: &Bipartition,
    restriction: Restriction<'_>,
    mate: &mut [Option<usize>],
) -> usize {
    let n = g.n();
    let a_side: Vec<usize> = (0..n).filter(|&v| b.is_a(v) && restriction.alive(v)).collect();
    let mut dist = vec![INF; n];
    let mut it = vec![0usize; n];
    let mut queue = Vec::with_capacity(a_side.len());
    loop {
        // layering
        queue.clear();
        for &a in &a_side {
            if mate[a].is_none() {
                dist[a] = 0;
                queue.push(a);
            } else {
                dist[a] = INF;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for &bv in g.neighbors(a) {
                if !restriction.usable(a, bv) {
                    continue;
                }
                match mate[bv] {
                    None => found = true,
                    Some(a2) if dist[a2] == INF => {
                        dist[a2] = dist[a] + 1;
                        queue.push(a2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        // vertex-disjoint shortest augmentations
        for &a in &a_side {
            it[a] = 0;
        }
        let mut augmented = false;
        let mut stack: Vec<usize> = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        for &root in &a_side {
            if mate[root].is_some() || dist[root] != 0 {
                continue;
            }
            stack.clear();
            chosen.clear();
            stack.push(root);
            while let Some(&a) = stack.last() {
                let nbrs = g.neighbors(a);
                if it[a] < nbrs.len() {
                    let bv = nbrs[it[a]];
                    it[a] += 1;
                    if !restriction.usable(a, bv) {
                        continue;
                    }
                    match mate[bv] {
                        None => {
                            chosen.push(bv);
                            for (&x, &y) in stack.iter().zip(chosen.iter()) {
                                mate[x] = Some(y);
                                mate[y] = Some(x);
                            }
                            augmented = true;
                            break;
                        }
                        Some(a2) if dist[a2] != INF && dist[a2] == dist[a] + 1 => {
                            stack.push(a2);
                            chosen.push(bv);
                        }
                        _ => {}
                    }
                } else {
                    dist[a] = INF;
                    stack.pop();
                    chosen.pop();
                }
            }
        }
        if !augmented {
            break;
        }
    }
    (0..n)
        .filter(|&v| b.is_a(v) && restriction.alive(v) && mate[v].is_some())
        .count()
}

/// Maximum matching by Hopcroft–Karp, deterministic in vertex-id order.
pub fn maximum_matching(g: &Graph, b: &Bipartition) -> Matching {
    let mut mate = vec![None; g.n()];
    augment_to_maximum(g, b, Restriction::default(), &mut mate);
    Matching::from_partner(mate)
}

/// α(G) = n − μ(G).
pub fn alpha(g: &Graph, b: &Bipartition) -> usize {
    g.n() - maximum_matching(g, b).size()
}

/// Vertices reachable from unmatched class-A vertices by alternating paths
/// (non-matching edges from A to B, matching edges from B to A).
pub(crate) fn alternating_reach_from_free_a(g: &Graph, b: &Bipartition, m: &Matching) -> Vec<bool> {
    let n = g.n();
    let mut reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| b.is_a(v) && m.partner(v).is_none()).collect();
    for &a in &stack {
        reached[a] = true;
    }
    while let Some(a) = stack.pop() {
        for &bv in g.neighbors(a) {
            if reached[bv] || m.partner(a) == Some(bv) {
                continue;
            }
            reached[bv] = true;
            if let Some(a2) = m.partner(bv) {
                if !reached[a2] {
                    reached[a2] = true;
                    stack.push(a2);
                }
            }
        }
    }
    reached
}

/// Minimum vertex cover `(A \ Z) ∪ (B ∩ Z)`, with `Z` the alternating
/// reach of the unmatched A vertices. `m` must be maximum.
pub fn konig_cover(g: &Graph, b: &Bipartition, m: &Matching) -> VertexCover {
    let z = alternating_reach_from_free_a(g, b, m);
    VertexCover {
        members: (0..g.n()).filter(|&v| b.is_a(v) != z[v]).collect(),
    }
}

/// Complement of the König cover.
pub fn maximum_stable_set(g: &Graph, b: &Bipartition) -> StableSet {
    let m = maximum_matching(g, b);
    let cover = konig_cover(g, b, &m);
    StableSet {
        members: cover.members.complement(g.n()),
        is_maximum: true,
    }
}

pub fn has_perfect_matching(g: &Graph, b: &Bipartition) -> bool {
    g.n().is_multiple_of(2) && 2 * maximum_matching(g, b).size() == g.n()
}

/// μ(G − v) starting from a stored maximum matching of G.
pub(crate) fn mu_without_vertex(g: &Graph, b: &Bipartition, m: &Matching, v: usize) -> usize {
    let mut mate = m.partners().to_vec();
    if let Some(w) = mate[v].take() {
        mate[w] = None;
    }
    let mut removed = vec![false; g.n()];
    removed[v] = true;
    augment_to_maximum(
        g,
        b,
        Restriction {
            removed: Some(&removed),
            skip_edge: None,
        },
        &mut mate,
    )
}

/// μ(G − e) starting from a stored maximum matching of G.
pub(crate) fn mu_without_edge(g: &Graph, b: &Bipartition, m: &Matching, e: Edge) -> usize {
    let mut mate = m.partners().to_vec();
    if m.contains(e) {
        mate[e.0] = None;
        mate[e.1] = None;
    }
    augment_to_maximum(
        g,
        b,
        Restriction {
            removed: None,
            skip_edge: Some(e),
        },
        &mut mate,
    )
}

/// μ(G − u − v) starting from a stored maximum matching of G.
pub(crate) fn mu_without_endpoints(g: &Graph, b: &Bipartition, m: &Matching, e: Edge) -> usize {
    let mut mate = m.partners().to_vec();
    let mut removed = vec![false; g.n()];
    for v in [e.0, e.1] {
        removed[v] = true;
        if let Some(w) = mate[v].take() {
            mate[w] = None;
        }
    }
    augment_to_maximum(
        g,
        b,
        Restriction {
            removed: Some(&removed),
            skip_edge: None,
        },
        &mut mate,
    )
}

/// Vertices lying in every maximum stable set: those with α(G−v) = α(G)−1,
/// i.e. μ(G−v) = μ(G) by König.
pub fn stable_core(g: &Graph, b: &Bipartition) -> VertexSet {
    let m = maximum_matching(g, b);
    let mu = m.size();
    (0..g.n()).filter(|&v| mu_without_vertex(g, b, &m, v) == mu).collect()
}

/// Edges lying in every maximum matching: μ(G−e) = μ(G)−1. Only edges of a
/// fixed maximum matching can qualify.
pub fn matching_core(g: &Graph, b: &Bipartition) -> Vec<Edge> {
    let m = maximum_matching(g, b);
    let mu = m.size();
    m.edges()
        .iter()
        .copied()
        .filter(|&e| mu_without_edge(g, b, &m, e) + 1 == mu)
        .collect()
}

/// Spanning tree made of a maximum matching plus acyclic connecting edges;
/// it keeps μ and therefore α.
pub fn alpha_preserving_spanning_tree(g: &Graph, b: &Bipartition) -> Result<Graph> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    let m = maximum_matching(g, b);
    let mut dsu = Dsu::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for &(u, v) in m.edges() {
        dsu.union(u, v);
        tree.push((u, v));
    }
    for &(u, v) in g.edges() {
        if dsu.union(u, v) {
            tree.push((u, v));
        }
    }
    Graph::from_edges(n, tree)
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
