//! Exhaustive lists of unlabeled graphs for the harness, and a seeded
//! sampler of connected bipartite graphs beyond exhaustive range.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::Rng;
use rayon::prelude::*;

use super::canon::{canonical_form, graph_from_form, CanonicalForm};
use super::Oracle;
use crate::chordal::is_chordal;
use crate::error::{Error, Result};
use crate::generators::rng_from_seed;
use crate::graph::{bipartition, Graph};

/// Largest order enumerated exhaustively.
pub const MAX_EXHAUSTIVE_ORDER: usize = 8;
/// Largest tree order enumerated exhaustively.
pub const MAX_TREE_ORDER: usize = 9;
/// Largest order the sampler produces.
pub const MAX_SAMPLED_ORDER: usize = 14;

static ALL: [OnceLock<Vec<Graph>>; MAX_EXHAUSTIVE_ORDER + 1] = [const { OnceLock::new() }; MAX_EXHAUSTIVE_ORDER + 1];
static TREES: [OnceLock<Vec<Graph>>; MAX_TREE_ORDER + 1] = [const { OnceLock::new() }; MAX_TREE_ORDER + 1];

fn dedupe(candidates: Vec<Graph>) -> Vec<Graph> {
    let forms: HashSet<CanonicalForm> = candidates.par_iter().map(canonical_form).collect();
    let mut forms: Vec<CanonicalForm> = forms.into_iter().collect();
    forms.sort();
    forms.into_iter().map(graph_from_form).collect()
}

/// Every graph on `n` unlabeled vertices, one canonical representative
/// each, built by adding a vertex with every possible neighborhood to the
/// graphs on n − 1 vertices.
pub fn all_graphs(n: usize) -> &'static [Graph] {
    assert!(
        (1..=MAX_EXHAUSTIVE_ORDER).contains(&n),
        "exhaustive enumeration covers orders 1..={MAX_EXHAUSTIVE_ORDER}"
    );
    ALL[n].get_or_init(|| {
        if n == 1 {
            return vec![Graph::empty(1)];
        }
        let smaller = all_graphs(n - 1);
        let candidates: Vec<Graph> = smaller
            .par_iter()
            .flat_map_iter(|h| {
                (0u32..1 << (n - 1)).map(move |mask| {
                    let extra = (0..n - 1).filter(move |&v| mask >> v & 1 == 1).map(|v| (v, n - 1));
                    Graph::from_edges(n, h.edges().iter().copied().chain(extra)).expect("valid extension")
                })
            })
            .collect();
        dedupe(candidates)
    })
}

/// Every tree on `n` unlabeled vertices, grown by attaching leaves.
pub fn all_trees(n: usize) -> &'static [Graph] {
    assert!(
        (1..=MAX_TREE_ORDER).contains(&n),
        "tree enumeration covers orders 1..={MAX_TREE_ORDER}"
    );
    TREES[n].get_or_init(|| {
        if n == 1 {
            return vec![Graph::empty(1)];
        }
        let candidates: Vec<Graph> = all_trees(n - 1)
            .iter()
            .flat_map(|t| {
                (0..n - 1).map(move |v| {
                    Graph::from_edges(n, t.edges().iter().copied().chain([(v, n - 1)])).expect("valid leaf")
                })
            })
            .collect();
        dedupe(candidates)
    })
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_ok()
}

pub fn bipartite_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).iter().filter(|g| is_bipartite(g)).cloned().collect()
}

pub fn connected_bipartite_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .iter()
        .filter(|g| g.is_connected() && is_bipartite(g))
        .cloned()
        .collect()
}

pub fn chordal_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .iter()
        .filter(|g| is_chordal(g).is_ok())
        .cloned()
        .collect()
}

pub fn connected_chordal_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .iter()
        .filter(|g| g.is_connected() && is_chordal(g).is_ok())
        .cloned()
        .collect()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).iter().filter(|g| g.is_connected()).cloned().collect()
}

impl Oracle {
    /// Streams every connected bipartite graph on `n` unlabeled vertices to
    /// `sink` and returns how many there were.
    pub fn enumerate_connected_bipartite<F>(&self, n: usize, mut sink: F) -> Result<usize>
    where
        F: FnMut(&Graph),
    {
        if n == 0 || n > MAX_EXHAUSTIVE_ORDER {
            return Err(Error::BudgetExceeded {
                what: "exhaustive order",
                actual: n,
                limit: MAX_EXHAUSTIVE_ORDER,
            });
        }
        let graphs = connected_bipartite_graphs(n);
        if graphs.len() > self.budget.max_graphs {
            return Err(Error::BudgetExceeded {
                what: "graph count",
                actual: graphs.len(),
                limit: self.budget.max_graphs,
            });
        }
        for g in &graphs {
            sink(g);
        }
        Ok(graphs.len())
    }
}

/// Random connected bipartite graph: class sizes uniform with both classes
/// nonempty, each cross pair an edge with probability 1/2, redrawn until
/// connected.
pub fn random_connected_bipartite<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 2, "a connected bipartite sample needs at least 2 vertices");
    loop {
        let a = rng.gen_range(1..n);
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..n {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).expect("cross pairs are valid");
        if g.is_connected() {
            return g;
        }
    }
}

/// `count` seeded samples with orders drawn uniformly from 9..=max_n when
/// max_n is beyond exhaustive range, else from 2..=max_n.
pub fn sample_connected_bipartite(seed: u64, max_n: usize, count: usize) -> Result<Vec<Graph>> {
    if max_n > MAX_SAMPLED_ORDER {
        return Err(Error::BudgetExceeded {
            what: "sampled order",
            actual: max_n,
            limit: MAX_SAMPLED_ORDER,
        });
    }
    if max_n < 2 {
        return Err(Error::BadSize(format!("sampling needs max_n >= 2, got {max_n}")));
    }
    let low = if max_n > MAX_EXHAUSTIVE_ORDER {
        MAX_EXHAUSTIVE_ORDER + 1
    } else {
        2
    };
    let mut rng = rng_from_seed(seed);
    Ok((0..count)
        .map(|_| {
            let n = rng.gen_range(low..=max_n);
            random_connected_bipartite(&mut rng, n)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
        let trees: Vec<usize> = (1..=6).map(|n| all_trees(n).len()).collect();
        assert_eq!(trees, vec![1, 1, 1, 2, 3, 6]);
        assert_eq!(connected_bipartite_graphs(2).len(), 1);
        assert_eq!(connected_bipartite_graphs(3).len(), 1);
    }

    #[test]
    fn streaming_respects_budget() {
        let o = Oracle::default();
        let mut seen = 0;
        assert_eq!(o.enumerate_connected_bipartite(3, |_| seen += 1).unwrap(), 1);
        assert_eq!(seen, 1);
        assert!(o.enumerate_connected_bipartite(9, |_| {}).is_err());
    }

    #[test]
    fn sampler_is_reproducible() {
        let a = sample_connected_bipartite(3, 12, 20).unwrap();
        let b = sample_connected_bipartite(3, 12, 20).unwrap();
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|g| (9..=12).contains(&g.n()) && g.is_connected() && is_bipartite(g)));
        assert!(sample_connected_bipartite(3, 15, 1).is_err());
    }
}
