//! Mandatory / optional / forbidden edges with respect to maximum matchings,
//! the alternating digraph they are read from, and alternating-cycle
//! certificates.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Bipartition, Edge, Graph};
use crate::matching::{
    alternating_reach_from_free_a, maximum_matching, mu_without_edge, mu_without_endpoints, Matching,
};
use crate::scc::tarjan_scc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeStatus {
    /// In every maximum matching.
    Mandatory,
    /// In some but not all maximum matchings.
    Optional,
    /// In no maximum matching.
    Forbidden,
}

impl EdgeStatus {
    pub fn is_allowed(self) -> bool {
        self != EdgeStatus::Forbidden
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClassification {
    n: usize,
    edges: Vec<Edge>,
    status: Vec<EdgeStatus>,
    pub reference_matching: Matching,
}

impl EdgeClassification {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `(edge, status)` in the graph's edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, EdgeStatus)> + '_ {
        self.edges.iter().copied().zip(self.status.iter().copied())
    }

    pub fn status(&self, e: Edge) -> Option<EdgeStatus> {
        self.edges.binary_search(&edge(e.0, e.1)).ok().map(|i| self.status[i])
    }

    pub fn statuses(&self) -> &[EdgeStatus] {
        &self.status
    }

    pub fn with_status(&self, s: EdgeStatus) -> Vec<Edge> {
        self.iter().filter(|&(_, t)| t == s).map(|(e, _)| e).collect()
    }

    pub fn mandatory(&self) -> Vec<Edge> {
        self.with_status(EdgeStatus::Mandatory)
    }

    pub fn forbidden(&self) -> Vec<Edge> {
        self.with_status(EdgeStatus::Forbidden)
    }

    /// Edges contained in some maximum matching.
    pub fn allowed(&self) -> Vec<Edge> {
        self.iter().filter(|&(_, t)| t.is_allowed()).map(|(e, _)| e).collect()
    }
}

/// Alternating structure of a matching: each matched pair is one node,
/// each unmatched vertex its own node, and every non-matching edge an arc
/// from its class-A endpoint's node to its class-B endpoint's node.
#[derive(Clone, Debug)]
pub struct MatchingDigraph {
    node_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    /// `out[node]` holds `(target node, edge)` sorted by target.
    out: Vec<Vec<(usize, Edge)>>,
    arc_count: usize,
    scc_id: Vec<usize>,
    scc_size: Vec<usize>,
}

impl MatchingDigraph {
    pub fn new(g: &Graph, b: &Bipartition, m: &Matching) -> Self {
        let n = g.n();
        let mut node_of = vec![usize::MAX; n];
        let mut members = Vec::new();
        for v in 0..n {
            if node_of[v] != usize::MAX {
                continue;
            }
            let id = members.len();
            node_of[v] = id;
            match m.partner(v) {
                Some(w) => {
                    node_of[w] = id;
                    members.push(vec![v, w]);
                }
                None => members.push(vec![v]),
            }
        }
        let mut out = vec![Vec::new(); members.len()];
        let mut arc_count = 0;
        for &(u, v) in g.edges() {
            if m.contains((u, v)) {
                continue;
            }
            let (a, bv) = if b.is_a(u) { (u, v) } else { (v, u) };
            out[node_of[a]].push((node_of[bv], (u, v)));
            arc_count += 1;
        }
        for arcs in &mut out {
            arcs.sort_unstable();
        }
        let adjacency: Vec<Vec<usize>> = out.iter().map(|arcs| arcs.iter().map(|&(t, _)| t).collect()).collect();
        let comps = tarjan_scc(&adjacency);
        let mut scc_id = vec![0; members.len()];
        let mut scc_size = Vec::with_capacity(comps.len());
        for (c, comp) in comps.iter().enumerate() {
            for &x in comp {
                scc_id[x] = c;
            }
            scc_size.push(comp.len());
        }
        MatchingDigraph {
            node_of,
            members,
            out,
            arc_count,
            scc_id,
            scc_size,
        }
    }

    pub fn node_count(&self) -> usize {
        self.members.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn node_of(&self, v: usize) -> usize {
        self.node_of[v]
    }

    pub fn members(&self, node: usize) -> &[usize] {
        &self.members[node]
    }

    pub fn arcs(&self, node: usize) -> &[(usize, Edge)] {
        &self.out[node]
    }

    pub fn scc_id(&self, node: usize) -> usize {
        self.scc_id[node]
    }

    pub fn scc_len(&self, node: usize) -> usize {
        self.scc_size[self.scc_id[node]]
    }

    pub fn scc_count(&self) -> usize {
        self.scc_size.len()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.scc_count() <= 1
    }
}

/// Classifies every edge from one maximum matching. Edges are read off the
/// strongly connected components of the alternating digraph together with
/// the even alternating reach of the unmatched vertices on either side.
pub fn classify_edges(g: &Graph, b: &Bipartition) -> EdgeClassification {
    let m = maximum_matching(g, b);
    classify_with_matching(g, b, m)
}

pub(crate) fn classify_with_matching(g: &Graph, b: &Bipartition, m: Matching) -> EdgeClassification {
    let digraph = MatchingDigraph::new(g, b, &m);
    let even_a = alternating_reach_from_free_a(g, b, &m);
    let flipped = Bipartition::from_sides(b.sides().iter().map(|s| s.other()).collect());
    let even_b = alternating_reach_from_free_a(g, &flipped, &m);
    // even_a / even_b also mark odd-reached vertices of the opposite class;
    // only same-class entries are meaningful below.
    let status = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, bv) = if b.is_a(u) { (u, v) } else { (v, u) };
            let on_free_path = even_a[a] || even_b[bv];
            if m.contains((u, v)) {
                if on_free_path || digraph.scc_len(digraph.node_of(a)) > 1 {
                    EdgeStatus::Optional
                } else {
                    EdgeStatus::Mandatory
                }
            } else if on_free_path || digraph.scc_id(digraph.node_of(a)) == digraph.scc_id(digraph.node_of(bv)) {
                EdgeStatus::Optional
            } else {
                EdgeStatus::Forbidden
            }
        })
        .collect();
    EdgeClassification {
        n: g.n(),
        edges: g.edges().to_vec(),
        status,
        reference_matching: m,
    }
}

/// Classification straight from the definitions, one warm-started
/// rematching per edge: mandatory iff μ(G−e) = μ−1, forbidden iff
/// μ(G−u−v) < μ−1.
pub fn classify_edges_by_recomputation(g: &Graph, b: &Bipartition) -> EdgeClassification {
    let m = maximum_matching(g, b);
    let mu = m.size();
    let status = g
        .edges()
        .iter()
        .map(|&e| {
            if m.contains(e) {
                if mu_without_edge(g, b, &m, e) + 1 == mu {
                    EdgeStatus::Mandatory
                } else {
                    EdgeStatus::Optional
                }
            } else if mu_without_endpoints(g, b, &m, e) + 1 < mu {
                EdgeStatus::Forbidden
            } else {
                EdgeStatus::Optional
            }
        })
        .collect();
    EdgeClassification {
        n: g.n(),
        edges: g.edges().to_vec(),
        status,
        reference_matching: m,
    }
}

/// Per-vertex count of incident edges lying in some perfect matching.
pub fn allowed_degree(cls: &EdgeClassification) -> Result<Vec<usize>> {
    if !cls.reference_matching.is_perfect() {
        return Err(Error::NoPerfectMatching);
    }
    let mut deg = vec![0; cls.n];
    for ((u, v), s) in cls.iter() {
        if s.is_allowed() {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    Ok(deg)
}

/// A cycle through `v` alternating with respect to the classification's
/// perfect reference matching, or `None` when none exists.
pub fn alternating_cycle_through(
    g: &Graph,
    b: &Bipartition,
    cls: &EdgeClassification,
    v: usize,
) -> Result<Option<Vec<usize>>> {
    alternating_cycle_with(g, b, &cls.reference_matching, v)
}

/// As [`alternating_cycle_through`] for an arbitrary perfect matching `m`.
/// The cycle starts at `v`; consecutive vertices are adjacent and the edges
/// alternate in and out of `m`. Search is depth-first in ascending node order
/// inside `v`'s strongly connected component.
pub fn alternating_cycle_with(g: &Graph, b: &Bipartition, m: &Matching, v: usize) -> Result<Option<Vec<usize>>> {
    if !m.is_perfect() || !m.is_in(g) {
        return Err(Error::NoPerfectMatching);
    }
    let d = MatchingDigraph::new(g, b, m);
    Ok(cycle_in_digraph(&d, b, m, v))
}

pub(crate) fn cycle_in_digraph(d: &MatchingDigraph, b: &Bipartition, m: &Matching, v: usize) -> Option<Vec<usize>> {
    let start = d.node_of(v);
    if d.scc_len(start) < 2 {
        return None;
    }
    let comp = d.scc_id(start);
    let mut visited = vec![false; d.node_count()];
    let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
    // via[i] = edge used to enter stack[i + 1]
    let mut via: Vec<Edge> = Vec::new();
    visited[start] = true;
    let closing = loop {
        let (node, next) = stack.last_mut()?;
        let arcs = d.arcs(*node);
        if *next >= arcs.len() {
            stack.pop();
            via.pop();
            continue;
        }
        let (target, e) = arcs[*next];
        *next += 1;
        if d.scc_id(target) != comp {
            continue;
        }
        if target == start {
            break e;
        }
        if !visited[target] {
            visited[target] = true;
            stack.push((target, 0));
            via.push(e);
        }
    };
    via.push(closing);
    // each arc a_i -> b_{i+1}; node i contributes a_i then its partner b_i
    let a_of = |e: Edge| if b.is_a(e.0) { e.0 } else { e.1 };
    let b_of = |e: Edge| if b.is_a(e.0) { e.1 } else { e.0 };
    let mut cycle = Vec::with_capacity(2 * via.len());
    for &e in &via {
        cycle.push(a_of(e));
        cycle.push(b_of(e));
    }
    // cycle reads a_0 b_1 a_1 b_2 ... a_k b_0; partners close each pair
    debug_assert!(cycle
        .chunks(2)
        .zip(cycle.chunks(2).cycle().skip(1))
        .all(|(x, y)| m.partner(x[1]) == Some(y[0])));
    let pos = cycle.iter().position(|&x| x == v).expect("v on its own node's cycle");
    cycle.rotate_left(pos);
    Some(cycle)
}

/// Vertex-disjoint cycles formed by two perfect matchings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleFamily {
    pub cycles: Vec<Vec<usize>>,
    pub shared_edges: Vec<Edge>,
}

/// Components of `m1 △ m2`, each listed from its smallest vertex leaving
/// along its `m1` edge, plus the shared edges `m1 ∩ m2`.
pub fn symmetric_difference_cycles(g: &Graph, m1: &Matching, m2: &Matching) -> Result<CycleFamily> {
    for m in [m1, m2] {
        if !m.is_in(g) {
            return Err(Error::InvalidMatching("matching is not a subgraph".into()));
        }
        if !m.is_perfect() {
            return Err(Error::NotPerfect);
        }
    }
    let n = g.n();
    let shared_edges: Vec<Edge> = m1.edges().iter().copied().filter(|&e| m2.contains(e)).collect();
    let mut seen = vec![false; n];
    for &(u, v) in &shared_edges {
        seen[u] = true;
        seen[v] = true;
    }
    let mut cycles = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = s;
        let mut use_first = true;
        loop {
            seen[cur] = true;
            cycle.push(cur);
            let m = if use_first { m1 } else { m2 };
            cur = m.partner(cur).expect("perfect");
            use_first = !use_first;
            if cur == s {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(CycleFamily { cycles, shared_edges })
}

/// Components of the allowed-edge subgraph, as vertex lists.
pub(crate) fn allowed_components(cls: &EdgeClassification) -> Vec<Vec<usize>> {
    let n = cls.n;
    let mut adj = vec![Vec::new(); n];
    for ((u, v), s) in cls.iter() {
        if s.is_allowed() {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bipartition;
    use crate::matching::matching_core;
    use EdgeStatus::*;

    fn gb(n: usize, e: &[(usize, usize)]) -> (Graph, Bipartition) {
        let g = Graph::from_edges(n, e.iter().copied()).unwrap();
        let b = bipartition(&g).unwrap();
        (g, b)
    }

    fn c6_chord() -> (Graph, Bipartition) {
        gb(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    }

    fn is_alternating_cycle(g: &Graph, m: &Matching, c: &[usize]) -> bool {
        let k = c.len();
        let mut distinct = c.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        k >= 4
            && k.is_multiple_of(2)
            && distinct.len() == k
            && (0..k).all(|i| g.has_edge(c[i], c[(i + 1) % k]))
            && (0..k)
                .all(|i| m.contains(edge(c[i], c[(i + 1) % k])) != m.contains(edge(c[(i + 1) % k], c[(i + 2) % k])))
    }

    #[test]
    fn classify_examples() {
        let (c4, b) = gb(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let cls = classify_edges(&c4, &b);
        assert!(cls.statuses().iter().all(|&s| s == Optional));

        let (p4, b) = gb(4, &[(0, 1), (1, 2), (2, 3)]);
        let cls = classify_edges(&p4, &b);
        assert_eq!(cls.status((0, 1)), Some(Mandatory));
        assert_eq!(cls.status((2, 3)), Some(Mandatory));
        assert_eq!(cls.status((1, 2)), Some(Forbidden));

        let (g, b) = c6_chord();
        assert_eq!(b.class_a().as_slice(), &[0, 2, 4]);
        let cls = classify_edges(&g, &b);
        assert!(cls.statuses().iter().all(|&s| s == Optional));
    }

    #[test]
    fn classify_without_perfect_matching() {
        // P3: both edges optional; P5: outer edges optional, inner ones too
        let (p3, b) = gb(3, &[(0, 1), (1, 2)]);
        assert!(classify_edges(&p3, &b).statuses().iter().all(|&s| s == Optional));
        // star K1,3 plus pendant path: 0-1,0-2,0-3,3-4
        let (g, b) = gb(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]);
        let fast = classify_edges(&g, &b);
        let slow = classify_edges_by_recomputation(&g, &b);
        assert_eq!(fast.statuses(), slow.statuses());
        assert_eq!(fast.status((3, 4)), Some(Mandatory));
        assert_eq!(fast.status((0, 3)), Some(Forbidden));
    }

    #[test]
    fn mandatory_matches_matching_core() {
        let (g, b) = gb(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 4)]);
        let cls = classify_edges(&g, &b);
        assert_eq!(cls.mandatory(), matching_core(&g, &b));
    }

    #[test]
    fn allowed_degree_examples() {
        let (c4, b) = gb(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(allowed_degree(&classify_edges(&c4, &b)).unwrap(), vec![2; 4]);
        let (p4, b) = gb(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(allowed_degree(&classify_edges(&p4, &b)).unwrap(), vec![1; 4]);
        let e: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |x| (a, x))).collect();
        let (k33, b) = gb(6, &e);
        assert_eq!(allowed_degree(&classify_edges(&k33, &b)).unwrap(), vec![3; 6]);
        let (p3, b) = gb(3, &[(0, 1), (1, 2)]);
        assert_eq!(allowed_degree(&classify_edges(&p3, &b)), Err(Error::NoPerfectMatching));
    }

    #[test]
    fn alternating_cycle_examples() {
        let (c4, b) = gb(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let cls = classify_edges(&c4, &b);
        let c = alternating_cycle_through(&c4, &b, &cls, 0).unwrap().unwrap();
        assert_eq!(crate::graph::normalize_cycle(c.clone()), vec![0, 1, 2, 3]);
        assert_eq!(c[0], 0);

        let (p4, b) = gb(4, &[(0, 1), (1, 2), (2, 3)]);
        let cls = classify_edges(&p4, &b);
        assert_eq!(alternating_cycle_through(&p4, &b, &cls, 0).unwrap(), None);

        let (g, b) = c6_chord();
        let m = Matching::from_edges(6, [(0, 3), (1, 2), (4, 5)]).unwrap();
        let c = alternating_cycle_with(&g, &b, &m, 3).unwrap().unwrap();
        assert_eq!(c[0], 3);
        assert!(is_alternating_cycle(&g, &m, &c), "{c:?}");
        for v in 0..6 {
            let cls = classify_edges(&g, &b);
            let c = alternating_cycle_through(&g, &b, &cls, v).unwrap().unwrap();
            assert!(is_alternating_cycle(&g, &cls.reference_matching, &c));
        }

        let (p3, b) = gb(3, &[(0, 1), (1, 2)]);
        let cls = classify_edges(&p3, &b);
        assert!(alternating_cycle_through(&p3, &b, &cls, 0).is_err());
    }

    #[test]
    fn symmetric_difference_examples() {
        let (c4, _) = gb(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let m1 = Matching::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let m2 = Matching::from_edges(4, [(1, 2), (3, 0)]).unwrap();
        let fam = symmetric_difference_cycles(&c4, &m1, &m2).unwrap();
        assert_eq!(fam.cycles, vec![vec![0, 1, 2, 3]]);
        assert!(fam.shared_edges.is_empty());

        let fam = symmetric_difference_cycles(&c4, &m1, &m1).unwrap();
        assert!(fam.cycles.is_empty());
        assert_eq!(fam.shared_edges, m1.edges());

        let (g, _) = c6_chord();
        let m1 = Matching::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let m2 = Matching::from_edges(6, [(0, 3), (1, 2), (4, 5)]).unwrap();
        let fam = symmetric_difference_cycles(&g, &m1, &m2).unwrap();
        assert_eq!(fam.cycles, vec![vec![0, 1, 2, 3]]);
        assert_eq!(fam.shared_edges, vec![(4, 5)]);

        let partial = Matching::from_edges(6, [(0, 1)]).unwrap();
        assert_eq!(symmetric_difference_cycles(&g, &m1, &partial), Err(Error::NotPerfect));
    }

    #[test]
    fn digraph_shape() {
        let (g, b) = c6_chord();
        let m = maximum_matching(&g, &b);
        let d = MatchingDigraph::new(&g, &b, &m);
        assert_eq!(d.arc_count(), g.edge_count() - m.size());
        assert_eq!(d.node_count(), 3);
        assert!(d.is_strongly_connected());
    }
}
