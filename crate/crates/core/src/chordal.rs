//! Chordal recognition by lexicographic breadth-first search, the greedy
//! maximum stable set along a perfect elimination ordering, and the tree
//! characterizations.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bipartition, is_n_dominating, normalize_cycle, pendant_vertices, Graph, UnderDominated, VertexSet};
use crate::matching::{Matching, StableSet};

/// Vertex ordering in which every vertex's later neighbors form a clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
}

impl EliminationOrder {
    /// Position of each vertex in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// The order restricted to the vertices kept by `keep`, relabeled through
    /// `to_local`. A perfect elimination ordering restricts to one.
    fn restricted(&self, to_local: &[Option<usize>]) -> EliminationOrder {
        EliminationOrder {
            order: self.order.iter().filter_map(|&v| to_local[v]).collect(),
        }
    }
}

/// Cycle of length at least 4 with no chord, listed from its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordlessCycle(pub Vec<usize>);

/// Lexicographic breadth-first search by partition refinement, starting at
/// vertex 0 with ties broken by vertex id. Returns the visit order.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut classes: VecDeque<Vec<usize>> = VecDeque::new();
    if n > 0 {
        classes.push_back((0..n).collect());
    }
    let mut visited = vec![false; n];
    let mut is_nb = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some(mut first) = classes.pop_front() {
        let v = first.remove(0);
        if !first.is_empty() {
            classes.push_front(first);
        }
        visited[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            is_nb[w] = true;
        }
        let mut refined = VecDeque::with_capacity(classes.len() * 2);
        for class in classes.drain(..) {
            let (inside, outside): (Vec<usize>, Vec<usize>) = class.into_iter().partition(|&w| is_nb[w]);
            if !inside.is_empty() {
                refined.push_back(inside);
            }
            if !outside.is_empty() {
                refined.push_back(outside);
            }
        }
        classes = refined;
        for &w in g.neighbors(v) {
            is_nb[w] = false;
        }
    }
    debug_assert!(visited.iter().all(|&x| x));
    order
}

/// Checks the perfect elimination property. On failure returns a vertex `v`
/// with two later neighbors that are not adjacent.
pub fn peo_violation(g: &Graph, peo: &EliminationOrder) -> Option<(usize, usize, usize)> {
    let n = g.n();
    if peo.order.len() != n {
        return Some((usize::MAX, usize::MAX, usize::MAX));
    }
    let mut seen = vec![false; n];
    for &v in &peo.order {
        if v >= n || seen[v] {
            return Some((usize::MAX, usize::MAX, usize::MAX));
        }
        seen[v] = true;
    }
    let pos = peo.positions();
    for &v in &peo.order {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        let Some(&parent) = later.iter().min_by_key(|&&w| pos[w]) else {
            continue;
        };
        for &w in &later {
            if w != parent && !g.has_edge(parent, w) {
                return Some((v, parent, w));
            }
        }
    }
    None
}

/// A perfect elimination ordering (reverse lexicographic BFS order), or a
/// chordless cycle of length at least 4.
pub fn is_chordal(g: &Graph) -> std::result::Result<EliminationOrder, ChordlessCycle> {
    let mut order = lex_bfs(g);
    order.reverse();
    let peo = EliminationOrder { order };
    match peo_violation(g, &peo) {
        None => Ok(peo),
        Some((v, u, w)) => {
            let cycle = chordless_cycle_at(g, v, u, w)
                .or_else(|| find_chordless_cycle(g))
                .expect("graph without a perfect elimination ordering has a chordless cycle");
            Err(ChordlessCycle(normalize_cycle(cycle)))
        }
    }
}

/// Cycle v, u, …, w closed by a shortest u–w path avoiding the rest of N[v].
/// The path is induced and its interior avoids N(v), so the cycle is chordless.
fn chordless_cycle_at(g: &Graph, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &x in g.neighbors(v) {
        blocked[x] = true;
    }
    blocked[u] = false;
    blocked[w] = false;
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([u]);
    prev[u] = u;
    while let Some(x) = queue.pop_front() {
        if x == w {
            break;
        }
        for &y in g.neighbors(x) {
            if blocked[y] || prev[y] != usize::MAX || (x == u && y == w) {
                continue;
            }
            prev[y] = x;
            queue.push_back(y);
        }
    }
    if prev[w] == usize::MAX {
        return None;
    }
    let mut path = vec![w];
    let mut x = w;
    while x != u {
        x = prev[x];
        path.push(x);
    }
    path.reverse();
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

fn find_chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if !g.has_edge(u, w) {
                    if let Some(c) = chordless_cycle_at(g, v, u, w) {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

/// Greedy stable set along the elimination order; maximum on chordal graphs.
pub fn chordal_maximum_stable_set(g: &Graph, peo: &EliminationOrder) -> Result<StableSet> {
    if peo_violation(g, peo).is_some() {
        return Err(Error::InvalidPeo);
    }
    Ok(greedy_along(g, peo))
}

fn greedy_along(g: &Graph, peo: &EliminationOrder) -> StableSet {
    let mut taken = vec![false; g.n()];
    for &v in &peo.order {
        if g.neighbors(v).iter().all(|&w| !taken[w]) {
            taken[v] = true;
        }
    }
    StableSet {
        members: VertexSet::from_mask(&taken),
        is_maximum: true,
    }
}

/// α of a chordal graph.
pub fn chordal_alpha(g: &Graph) -> Result<usize> {
    let peo = is_chordal(g).map_err(|_| Error::NotChordal)?;
    Ok(greedy_along(g, &peo).len())
}

/// Vertices in every maximum stable set of a chordal graph: those whose
/// deletion lowers α. Each deletion reuses the restricted elimination order.
pub fn chordal_stable_core(g: &Graph) -> Result<VertexSet> {
    let peo = is_chordal(g).map_err(|_| Error::NotChordal)?;
    let alpha = greedy_along(g, &peo).len();
    let mut core = Vec::new();
    for v in 0..g.n() {
        let sub = g.without_vertices(&[v]);
        let to_local: Vec<Option<usize>> = (0..g.n()).map(|x| sub.to_local(x)).collect();
        let restricted = peo.restricted(&to_local);
        if greedy_along(&sub.graph, &restricted).len() < alpha {
            core.push(v);
        }
    }
    Ok(VertexSet::from(core))
}

/// Outcome of the chordal α⁻ test: the greedy stability system and, when it
/// is not 2-dominating, a vertex seeing fewer than two of its members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalAlphaMinus {
    pub holds: bool,
    pub system: VertexSet,
    pub under_dominated: Option<UnderDominated>,
}

/// A chordal graph is α⁻-stable iff its stability system is 2-dominating,
/// in which case that system is its only one.
pub fn chordal_alpha_minus(g: &Graph) -> Result<ChordalAlphaMinus> {
    let peo = is_chordal(g).map_err(|_| Error::NotChordal)?;
    let system = greedy_along(g, &peo).members;
    let witness = is_n_dominating(g, &system, 2).err();
    Ok(ChordalAlphaMinus {
        holds: witness.is_none(),
        system,
        under_dominated: witness,
    })
}

/// For a tree of order at least 3: all pendant vertices lie in one color
/// class, i.e. every two pendants are at even distance.
pub fn tree_strong_unique_independence(g: &Graph) -> Result<bool> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.n() < 3 {
        return Err(Error::OrderTooSmall { order: g.n(), min: 3 });
    }
    let b = bipartition(g).map_err(|_| Error::NotBipartite)?;
    let pendants = pendant_vertices(g);
    let mut sides = pendants.iter().map(|v| b.side(v));
    let first = sides.next();
    Ok(sides.all(|s| Some(s) == first))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeAlphaPlus {
    pub holds: bool,
    pub matching: Option<Matching>,
    pub is_path_2n: bool,
}

/// Leaf-matching greedy: repeatedly match a pendant vertex with its neighbor
/// and delete both. The tree is α⁺-stable iff this consumes every vertex.
pub fn tree_alpha_plus(g: &Graph) -> Result<TreeAlphaPlus> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let n = g.n();
    if n < 2 {
        return Err(Error::OrderTooSmall { order: n, min: 2 });
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut leaves: VecDeque<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut pairs = Vec::new();
    let mut stuck = false;
    while let Some(v) = leaves.pop_front() {
        if gone[v] {
            continue;
        }
        let Some(&u) = g.neighbors(v).iter().find(|&&w| !gone[w]) else {
            stuck = true;
            break;
        };
        gone[v] = true;
        gone[u] = true;
        pairs.push((v, u));
        for &w in g.neighbors(u) {
            if !gone[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    leaves.push_back(w);
                } else if deg[w] == 0 {
                    stuck = true;
                }
            }
        }
        if stuck {
            break;
        }
    }
    let holds = !stuck && gone.iter().all(|&x| x);
    let matching = if holds {
        Some(Matching::from_edges(n, pairs)?)
    } else {
        None
    };
    let is_path_2n = holds && (0..n).all(|v| g.degree(v) <= 2);
    Ok(TreeAlphaPlus {
        holds,
        matching,
        is_path_2n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap()
    }

    fn path(k: usize) -> Graph {
        Graph::from_edges(k, (1..k).map(|i| (i - 1, i))).unwrap()
    }

    fn star3() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3)])
    }

    fn k4() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn recognition() {
        let peo = is_chordal(&star3()).unwrap();
        assert!(peo_violation(&star3(), &peo).is_none());
        assert!(is_chordal(&k4()).is_ok());
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(is_chordal(&c4).unwrap_err(), ChordlessCycle(vec![0, 1, 2, 3]));
    }

    #[test]
    fn witness_is_chordless_in_larger_graph() {
        // C6 with a pendant and a triangle hanging off it
        let h = g(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 0),
                (0, 6),
                (6, 7),
                (7, 8),
                (8, 6),
            ],
        );
        let ChordlessCycle(c) = is_chordal(&h).unwrap_err();
        assert!(c.len() >= 4);
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let consecutive = j == i + 1 || (i == 0 && j == c.len() - 1);
                assert_eq!(h.has_edge(c[i], c[j]), consecutive);
            }
        }
    }

    #[test]
    fn greedy_stable_set() {
        let p3 = path(3);
        let peo = is_chordal(&p3).unwrap();
        assert_eq!(
            chordal_maximum_stable_set(&p3, &peo).unwrap().members,
            VertexSet::from(vec![0, 2])
        );
        let peo = is_chordal(&k4()).unwrap();
        assert_eq!(chordal_maximum_stable_set(&k4(), &peo).unwrap().len(), 1);
        let peo = is_chordal(&star3()).unwrap();
        assert_eq!(
            chordal_maximum_stable_set(&star3(), &peo).unwrap().members,
            VertexSet::from(vec![1, 2, 3])
        );
        let bad = EliminationOrder { order: vec![1, 0, 2] };
        assert_eq!(chordal_maximum_stable_set(&p3, &bad), Err(Error::InvalidPeo));
    }

    #[test]
    fn chordal_alpha_minus_examples() {
        let r = chordal_alpha_minus(&star3()).unwrap();
        assert!(r.holds);
        assert_eq!(r.system, VertexSet::from(vec![1, 2, 3]));
        assert!(!chordal_alpha_minus(&path(4)).unwrap().holds);
        assert!(!chordal_alpha_minus(&path(2)).unwrap().holds);
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(chordal_alpha_minus(&c4), Err(Error::NotChordal));
    }

    #[test]
    fn chordal_core() {
        assert_eq!(chordal_stable_core(&path(3)).unwrap(), VertexSet::from(vec![0, 2]));
        assert!(chordal_stable_core(&path(4)).unwrap().is_empty());
        assert!(chordal_stable_core(&k4()).unwrap().is_empty());
    }

    #[test]
    fn tree_characterizations() {
        assert!(tree_strong_unique_independence(&star3()).unwrap());
        assert!(!tree_strong_unique_independence(&path(4)).unwrap());
        let spider = g(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        assert!(tree_strong_unique_independence(&spider).unwrap());
        assert_eq!(
            tree_strong_unique_independence(&path(2)),
            Err(Error::OrderTooSmall { order: 2, min: 3 })
        );

        let p4 = tree_alpha_plus(&path(4)).unwrap();
        assert!(p4.holds && p4.is_path_2n);
        assert_eq!(p4.matching.unwrap().edges(), &[(0, 1), (2, 3)]);
        assert!(!tree_alpha_plus(&star3()).unwrap().holds);
        assert!(!tree_alpha_plus(&path(3)).unwrap().holds);
        let c3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(tree_alpha_plus(&c3), Err(Error::NotATree));
    }
}
