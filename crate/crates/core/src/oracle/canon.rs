//! Canonical labeling of small graphs by color refinement plus
//! individualization. Two graphs get the same canonical form exactly when
//! they are isomorphic.

use crate::graph::Graph;

/// Largest order whose upper-triangle bit string fits in a `u64`.
pub const MAX_CANONICAL_ORDER: usize = 11;

/// Canonical form: the order together with the smallest upper-triangle
/// adjacency string over all labelings reachable by the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u64,
}

/// Upper-triangle adjacency string of `g` under `pos` (vertex → new id),
/// read pair by pair (0,1), (0,2), …, (n−2,n−1) from the most significant
/// end.
pub fn adjacency_bits(g: &Graph, pos: &[usize]) -> u64 {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &p) in pos.iter().enumerate() {
        inv[p] = v;
    }
    let mut bits = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            bits = (bits << 1) | u64::from(g.has_edge(inv[i], inv[j]));
        }
    }
    bits
}

/// Refines `colors` until every two vertices of one color see the same
/// multiset of neighbor colors. New colors are ranks of the sorted
/// signatures, so the result does not depend on vertex ids.
fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let n = g.n();
    let mut classes = count_classes(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; n];
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            next[sigs[i].2] = rank;
        }
        *colors = next;
        let now = count_classes(colors);
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(g: &Graph, mut colors: Vec<usize>, best: &mut Option<u64>) {
    refine(g, &mut colors);
    let n = g.n();
    if count_classes(&colors) == n {
        let bits = adjacency_bits(g, &colors);
        if best.is_none_or(|b| bits < b) {
            *best = Some(bits);
        }
        return;
    }
    // first color class with more than one member
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    let target = (0..n)
        .find(|&c| size[c] > 1)
        .expect("non-discrete coloring has a large class");
    for v in (0..n).filter(|&v| colors[v] == target) {
        let split: Vec<usize> = (0..n)
            .map(|x| 2 * colors[x] + usize::from(colors[x] == target && x != v))
            .collect();
        search(g, split, best);
    }
}

/// Canonical form of a graph on at most [`MAX_CANONICAL_ORDER`] vertices.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    assert!(
        g.n() <= MAX_CANONICAL_ORDER,
        "canonical form limited to {MAX_CANONICAL_ORDER} vertices"
    );
    let colors = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut best = None;
    search(g, colors, &mut best);
    CanonicalForm {
        n: g.n(),
        bits: best.unwrap_or(0),
    }
}

/// The graph spelled out by a canonical form.
pub fn graph_from_form(form: CanonicalForm) -> Graph {
    let n = form.n;
    let total = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if form.bits >> (total - 1 - k) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).expect("canonical bits describe a simple graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn invariant_under_relabeling() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let form = canonical_form(&g);
        for p in permutations(6) {
            assert_eq!(canonical_form(&g.relabel(&p)), form);
        }
        assert_eq!(canonical_form(&graph_from_form(form)), form);
    }

    #[test]
    fn separates_non_isomorphic_graphs() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&star));
        // two 3-regular graphs on 6 vertices: K3,3 and the prism
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        let prism = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert_ne!(canonical_form(&k33), canonical_form(&prism));
    }
}
