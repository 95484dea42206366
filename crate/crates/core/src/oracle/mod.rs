//! Exponential-time ground truth for small graphs: exact α and μ, full
//! families of maximum stable sets and maximum matchings, and the
//! definition-level stability predicates. Inputs beyond the budget are
//! refused, never approximated.

pub mod canon;
pub mod enumerate;
pub mod harness;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{complement_edges, Edge, Graph, VertexSet};
use crate::matching::Matching;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_vertices_exact_alpha: usize,
    pub max_vertices_enumeration: usize,
    pub max_graphs: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices_exact_alpha: 24,
            max_vertices_enumeration: 14,
            max_graphs: 1_000_000,
        }
    }
}

/// Brute-force reference implementation, bounded by an [`OracleBudget`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Oracle {
    pub budget: OracleBudget,
}

/// Adjacency as bit rows; vertex `v` is bit `v`.
#[derive(Clone, Debug)]
struct BitGraph {
    n: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    fn new(g: &Graph) -> Self {
        let mut rows = vec![0u64; g.n()];
        for &(u, v) in g.edges() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        BitGraph { n: g.n(), rows }
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Greedy clique cover of `cand`; its size bounds α(G[cand]) from above.
    fn clique_cover_bound(&self, mut cand: u64) -> usize {
        let mut cliques = 0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            let mut common = self.rows[v] & cand;
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                cand &= !(1 << w);
                common &= self.rows[w];
                common &= !(1 << w);
            }
            cliques += 1;
        }
        cliques
    }

    fn max_stable(&self, cand: u64, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + self.clique_cover_bound(cand) <= *best {
            return;
        }
        // branch on a maximum-degree vertex of G[cand]
        let mut pick = 0;
        let mut pick_deg = 0;
        let mut it = cand;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            let d = (self.rows[v] & cand).count_ones();
            if d >= pick_deg {
                pick = v;
                pick_deg = d;
            }
        }
        if pick_deg == 0 {
            *best = (*best).max(size + cand.count_ones() as usize);
            return;
        }
        self.max_stable(cand & !(1 << pick) & !self.rows[pick], size + 1, best);
        self.max_stable(cand & !(1 << pick), size, best);
    }

    fn alpha(&self) -> usize {
        let mut best = 0;
        self.max_stable(self.all(), 0, &mut best);
        best
    }

    fn stable_sets_of_size(&self, cand: u64, chosen: u64, need: usize, out: &mut Vec<u64>) {
        if need == 0 {
            out.push(chosen);
            return;
        }
        if (cand.count_ones() as usize) < need || self.clique_cover_bound(cand) < need {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        self.stable_sets_of_size(rest & !self.rows[v], chosen | (1 << v), need - 1, out);
        self.stable_sets_of_size(rest, chosen, need, out);
    }

    fn mu(&self, mask: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if mask.count_ones() < 2 {
            return 0;
        }
        if let Some(&m) = memo.get(&mask) {
            return m;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = self.mu(rest, memo);
        let mut nb = self.rows[v] & rest;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            best = best.max(1 + self.mu(rest & !(1 << w), memo));
        }
        memo.insert(mask, best);
        best
    }
}

fn mask_to_set(mask: u64) -> VertexSet {
    let mut v = Vec::new();
    let mut m = mask;
    while m != 0 {
        v.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    VertexSet::from(v)
}

impl Oracle {
    pub fn new(budget: OracleBudget) -> Self {
        Oracle { budget }
    }

    fn check(&self, what: &'static str, actual: usize, limit: usize) -> Result<()> {
        if actual > limit || actual > 64 {
            Err(Error::BudgetExceeded { what, actual, limit })
        } else {
            Ok(())
        }
    }

    /// Exact α by branch and bound (max-degree branching, clique-cover bound).
    pub fn alpha(&self, g: &Graph) -> Result<usize> {
        self.check("vertex count", g.n(), self.budget.max_vertices_exact_alpha)?;
        Ok(BitGraph::new(g).alpha())
    }

    /// Exact μ of an arbitrary (not necessarily bipartite) graph.
    pub fn mu(&self, g: &Graph) -> Result<usize> {
        self.check("vertex count", g.n(), self.budget.max_vertices_exact_alpha)?;
        let bg = BitGraph::new(g);
        Ok(bg.mu(bg.all(), &mut HashMap::new()))
    }

    /// Every stable set of size α, sorted lexicographically.
    pub fn enumerate_maximum_stable_sets(&self, g: &Graph) -> Result<Vec<VertexSet>> {
        self.check("vertex count", g.n(), self.budget.max_vertices_enumeration)?;
        let bg = BitGraph::new(g);
        let alpha = bg.alpha();
        let mut masks = Vec::new();
        bg.stable_sets_of_size(bg.all(), 0, alpha, &mut masks);
        let mut sets: Vec<VertexSet> = masks.into_iter().map(mask_to_set).collect();
        sets.sort();
        sets.dedup();
        Ok(sets)
    }

    /// Every matching of size μ, by include/exclude over the sorted edge list.
    pub fn enumerate_maximum_matchings(&self, g: &Graph) -> Result<Vec<Matching>> {
        self.check("edge count", g.edge_count(), 2 * self.budget.max_vertices_enumeration)?;
        let mu = self.mu(g)?;
        let edges = g.edges();
        let mut out = Vec::new();
        let mut chosen: Vec<Edge> = Vec::new();
        let mut used = vec![false; g.n()];
        fn rec(
            i: usize,
            edges: &[Edge],
            mu: usize,
            used: &mut [bool],
            chosen: &mut Vec<Edge>,
            out: &mut Vec<Vec<Edge>>,
        ) {
            if chosen.len() == mu {
                out.push(chosen.clone());
                return;
            }
            if i == edges.len() || chosen.len() + (edges.len() - i) < mu {
                return;
            }
            let free = used.iter().filter(|&&u| !u).count();
            if chosen.len() + free / 2 < mu {
                return;
            }
            let (u, v) = edges[i];
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                chosen.push((u, v));
                rec(i + 1, edges, mu, used, chosen, out);
                chosen.pop();
                used[u] = false;
                used[v] = false;
            }
            rec(i + 1, edges, mu, used, chosen, out);
        }
        let mut raw = Vec::new();
        rec(0, edges, mu, &mut used, &mut chosen, &mut raw);
        for m in raw {
            out.push(Matching::from_edges(g.n(), m)?);
        }
        Ok(out)
    }

    /// Perfect matchings only.
    pub fn enumerate_perfect_matchings(&self, g: &Graph) -> Result<Vec<Matching>> {
        if g.n() % 2 == 1 {
            return Ok(Vec::new());
        }
        Ok(self
            .enumerate_maximum_matchings(g)?
            .into_iter()
            .filter(Matching::is_perfect)
            .collect())
    }

    /// An edge whose deletion raises α, if any.
    pub fn alpha_minus_violation(&self, g: &Graph) -> Result<Option<Edge>> {
        let a = self.alpha(g)?;
        for &e in g.edges() {
            if self.alpha(&g.without_edge(e))? != a {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// A non-edge whose addition lowers α, if any.
    pub fn alpha_plus_violation(&self, g: &Graph) -> Result<Option<Edge>> {
        let a = self.alpha(g)?;
        for e in complement_edges(g) {
            if self.alpha(&g.with_edge(e)?)? != a {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// α(G−e) = α(G) for every edge.
    pub fn def_alpha_minus(&self, g: &Graph) -> Result<bool> {
        Ok(self.alpha_minus_violation(g)?.is_none())
    }

    /// α(G+e) = α(G) for every non-edge.
    pub fn def_alpha_plus(&self, g: &Graph) -> Result<bool> {
        Ok(self.alpha_plus_violation(g)?.is_none())
    }

    pub fn def_alpha_stable(&self, g: &Graph) -> Result<bool> {
        Ok(self.def_alpha_minus(g)? && self.def_alpha_plus(g)?)
    }
}

/// Intersection of a family of vertex sets; empty family gives the empty set.
pub fn intersect_all(sets: &[VertexSet]) -> VertexSet {
    let mut it = sets.iter();
    let Some(first) = it.next() else {
        return VertexSet::new();
    };
    it.fold(first.clone(), |acc, s| acc.intersection(s))
}

/// Intersection of a family of matchings as an edge list.
pub fn intersect_matchings(ms: &[Matching]) -> Vec<Edge> {
    let Some(first) = ms.first() else {
        return Vec::new();
    };
    first
        .edges()
        .iter()
        .copied()
        .filter(|&e| ms.iter().all(|m| m.contains(e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(k: usize) -> Graph {
        Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    fn path(k: usize) -> Graph {
        Graph::from_edges(k, (1..k).map(|i| (i - 1, i))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        Graph::from_edges(10, e).unwrap()
    }

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    /// Exhaustive subset scan, independent of the branch and bound.
    fn alpha_by_subsets(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&s| g.edges().iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn alpha_examples() {
        let o = Oracle::default();
        assert_eq!(o.alpha(&cycle(5)).unwrap(), 2);
        assert_eq!(o.alpha(&k33()).unwrap(), 3);
        assert_eq!(alpha_by_subsets(&petersen()), 4);
        assert_eq!(o.alpha(&petersen()).unwrap(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let o = Oracle::new(OracleBudget {
            max_vertices_exact_alpha: 4,
            ..OracleBudget::default()
        });
        assert!(matches!(o.alpha(&cycle(5)), Err(Error::BudgetExceeded { .. })));
        assert!(Oracle::default()
            .enumerate_maximum_stable_sets(&Graph::empty(15))
            .is_err());
    }

    #[test]
    fn stable_set_enumeration_examples() {
        let o = Oracle::default();
        let sets = o.enumerate_maximum_stable_sets(&path(4)).unwrap();
        let want: Vec<VertexSet> = vec![vec![0, 2].into(), vec![0, 3].into(), vec![1, 3].into()];
        assert_eq!(sets, want);
        let sets = o.enumerate_maximum_stable_sets(&cycle(4)).unwrap();
        assert_eq!(sets, vec![VertexSet::from(vec![0, 2]), VertexSet::from(vec![1, 3])]);
        let sets = o.enumerate_maximum_stable_sets(&path(3)).unwrap();
        assert_eq!(sets, vec![VertexSet::from(vec![0, 2])]);
    }

    #[test]
    fn matching_enumeration_examples() {
        let o = Oracle::default();
        let edges = |ms: Vec<Matching>| ms.iter().map(|m| m.edges().to_vec()).collect::<Vec<_>>();
        assert_eq!(
            edges(o.enumerate_maximum_matchings(&path(3)).unwrap()),
            vec![vec![(0, 1)], vec![(1, 2)]]
        );
        assert_eq!(
            edges(o.enumerate_maximum_matchings(&cycle(4)).unwrap()),
            vec![vec![(0, 1), (2, 3)], vec![(0, 3), (1, 2)]]
        );
        assert_eq!(
            edges(o.enumerate_maximum_matchings(&path(4)).unwrap()),
            vec![vec![(0, 1), (2, 3)]]
        );
    }

    #[test]
    fn mu_of_general_graphs() {
        let o = Oracle::default();
        assert_eq!(o.mu(&cycle(5)).unwrap(), 2);
        assert_eq!(o.mu(&petersen()).unwrap(), 5);
        assert_eq!(o.mu(&Graph::empty(3)).unwrap(), 0);
    }

    #[test]
    fn definition_level_predicates() {
        let o = Oracle::default();
        assert!(o.def_alpha_minus(&k33()).unwrap());
        assert!(!o.def_alpha_minus(&path(4)).unwrap());
        assert!(!o.def_alpha_minus(&path(2)).unwrap());
        assert!(o.def_alpha_plus(&path(4)).unwrap());
        assert!(!o.def_alpha_plus(&path(3)).unwrap());
        assert!(o.def_alpha_plus(&cycle(4)).unwrap());
        assert!(o.def_alpha_stable(&cycle(4)).unwrap());
        assert!(!o.def_alpha_stable(&path(4)).unwrap());
        let c6c = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)).chain([(0, 3)])).unwrap();
        assert!(o.def_alpha_stable(&c6c).unwrap());
    }
}
