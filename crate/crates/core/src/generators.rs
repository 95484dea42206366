//! Classic families and the composition operations that build bistable,
//! α-stable and α⁺-stable bipartite graphs from smaller ones.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bipartition, edge, Bipartition, Edge, Graph};
use crate::stability::{is_alpha_plus, is_alpha_stable, is_bistable, Ear, EarDecomposition};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// C_k on 0..k−1 in cyclic order; k even, at least 4.
pub fn even_cycle(k: usize) -> Result<Graph> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::BadSize(format!(
            "even cycle needs an even length of at least 4, got {k}"
        )));
    }
    Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))
}

/// K_{p,q} with class A = 0..p−1.
pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph> {
    if p == 0 || q == 0 {
        return Err(Error::BadSize(format!(
            "complete bipartite graph needs p, q >= 1, got {p}, {q}"
        )));
    }
    Graph::from_edges(p + q, (0..p).flat_map(|a| (p..p + q).map(move |b| (a, b))))
}

/// P_k on 0..k−1 in order.
pub fn path(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::BadSize(format!("path needs at least 2 vertices, got {k}")));
    }
    Graph::from_edges(k, (1..k).map(|i| (i - 1, i)))
}

/// Uniform labeled tree on k vertices, decoded from a random Prüfer sequence.
pub fn random_tree(k: usize, seed: u64) -> Result<Graph> {
    if k < 2 {
        return Err(Error::BadSize(format!("tree needs at least 2 vertices, got {k}")));
    }
    if k == 2 {
        return Graph::from_edges(2, [(0, 1)]);
    }
    let mut rng = rng_from_seed(seed);
    let code: Vec<usize> = (0..k - 2).map(|_| rng.gen_range(0..k)).collect();
    let mut degree = vec![1usize; k];
    for &x in &code {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(k - 1);
    for &x in &code {
        let leaf = leaves.pop_first().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(k, edges)
}

/// A graph grown ear by ear, with the ears that built it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrownGraph {
    pub graph: Graph,
    pub ears: EarDecomposition,
    pub seed: u64,
}

/// Starts from K₂ on {0 (class A), 1 (class B)} and attaches random ears
/// between a class-A and a class-B vertex until `target` vertices exist.
/// Each ear gets 2j new vertices with j geometric of mean 1, capped by what
/// is left; a chord (j = 0) is only drawn when some cross pair is still
/// non-adjacent.
pub fn ear_growth(seed: u64, target: usize) -> Result<GrownGraph> {
    if target < 2 || !target.is_multiple_of(2) {
        return Err(Error::BadSize(format!(
            "ear growth needs an even target of at least 2, got {target}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut is_a = vec![true, false];
    let mut edges: Vec<Edge> = vec![(0, 1)];
    let mut adjacent = std::collections::HashSet::from([(0usize, 1usize)]);
    let mut ears = Vec::new();
    let mut n = 2;
    while n < target {
        let left = (target - n) / 2;
        let mut pairs = 0;
        while rng.gen_bool(0.5) {
            pairs += 1;
        }
        let pairs = pairs.min(left);
        let class_a: Vec<usize> = (0..n).filter(|&v| is_a[v]).collect();
        let class_b: Vec<usize> = (0..n).filter(|&v| !is_a[v]).collect();
        let (start, end, pairs) = if pairs == 0 {
            let open: Vec<(usize, usize)> = class_a
                .iter()
                .flat_map(|&a| class_b.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| !adjacent.contains(&edge(a, b)))
                .collect();
            match open.choose(&mut rng) {
                Some(&(a, b)) => (a, b, 0),
                None => (
                    *class_a.choose(&mut rng).unwrap(),
                    *class_b.choose(&mut rng).unwrap(),
                    1,
                ),
            }
        } else {
            (
                *class_a.choose(&mut rng).unwrap(),
                *class_b.choose(&mut rng).unwrap(),
                pairs,
            )
        };
        let internal: Vec<usize> = (n..n + 2 * pairs).collect();
        for (i, _) in internal.iter().enumerate() {
            // first internal vertex neighbors the class-A start
            is_a.push(i % 2 == 1);
        }
        n += 2 * pairs;
        let ear = Ear { start, internal, end };
        for e in ear.edges() {
            adjacent.insert(e);
            edges.push(e);
        }
        ears.push(ear);
    }
    Ok(GrownGraph {
        graph: Graph::from_edges(n, edges)?,
        ears: EarDecomposition {
            base_edge: (0, 1),
            ears,
        },
        seed,
    })
}

/// Host plus path with its bistable verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composite {
    pub graph: Graph,
    pub bistable: bool,
}

/// Adds P_k on new vertices h.n()..h.n()+k−1 (in path order) to a bistable
/// host, joined by `attachments` given as (path index, host vertex). Both
/// path endpoints must be attached and the result must stay bipartite.
pub fn attach_even_path(h: &Graph, k: usize, attachments: &[(usize, usize)]) -> Result<Composite> {
    if !k.is_multiple_of(2) {
        return Err(Error::Parity(k));
    }
    if k < 2 {
        return Err(Error::BadSize(format!("path needs at least 2 vertices, got {k}")));
    }
    if !is_bistable(h)?.holds {
        return Err(Error::NotBistable);
    }
    for end in [0, k - 1] {
        if !attachments.iter().any(|&(i, _)| i == end) {
            return Err(Error::EndpointNotAttached(end));
        }
    }
    let graph = join_path_unchecked(h, k, attachments)?;
    let bistable = is_bistable(&graph)?.holds;
    Ok(Composite { graph, bistable })
}

/// The same join without any precondition beyond bipartiteness. Exists so
/// tests can build the excluded configurations.
#[doc(hidden)]
pub fn join_path_unchecked(h: &Graph, k: usize, attachments: &[(usize, usize)]) -> Result<Graph> {
    let base = h.n();
    let mut edges: Vec<Edge> = h.edges().to_vec();
    edges.extend((1..k).map(|i| (base + i - 1, base + i)));
    for &(i, v) in attachments {
        if i >= k {
            return Err(Error::VertexOutOfRange { vertex: i, n: k });
        }
        if v >= base {
            return Err(Error::VertexOutOfRange { vertex: v, n: base });
        }
        edges.push((base + i, v));
    }
    let graph = Graph::from_edges(base + k, edges)?;
    if bipartition(&graph).is_err() {
        return Err(Error::NotBipartite);
    }
    Ok(graph)
}

/// Which vertex of a piece's color class carries a connection edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PortRule {
    LowestId,
    Seeded(u64),
}

/// Pieces placed side by side, piece i occupying offsets[i]..offsets[i+1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembled {
    pub graph: Graph,
    pub offsets: Vec<usize>,
}

fn assemble(pieces: &[Graph]) -> Assembled {
    let mut graph = Graph::empty(0);
    let mut offsets = vec![0];
    for p in pieces {
        graph = graph.disjoint_union(p);
        offsets.push(graph.n());
    }
    Assembled { graph, offsets }
}

/// Replaces each vertex pair (x_i, y_i) of a bistable template by the piece
/// G_i and, for every template edge x_i y_j with i ≠ j, adds one edge from
/// class A of G_i to class B of G_j. Template classes are read as
/// X = class A sorted, Y = class B sorted.
pub fn substitute(template: &Graph, pieces: &[Graph], rule: PortRule) -> Result<Composite> {
    let tb = bipartition(template).map_err(|_| Error::NotBipartite)?;
    if !is_bistable(template)?.holds {
        return Err(Error::Precondition("template is not bistable".into()));
    }
    let x = tb.class_a();
    let y = tb.class_b();
    let p = x.len();
    if p < 2 || y.len() != p {
        return Err(Error::BadSize(format!(
            "template needs classes of equal size p >= 2, got {} and {}",
            p,
            y.len()
        )));
    }
    if pieces.len() != p {
        return Err(Error::BadSize(format!(
            "template wants {p} pieces, got {}",
            pieces.len()
        )));
    }
    let mut sides: Vec<Bipartition> = Vec::with_capacity(p);
    for (i, piece) in pieces.iter().enumerate() {
        if !is_bistable(piece)?.holds {
            return Err(Error::Precondition(format!("piece {i} is not bistable")));
        }
        sides.push(bipartition(piece).map_err(|_| Error::NotBipartite)?);
    }
    let Assembled { graph, offsets } = assemble(pieces);
    let class_of = |i: usize, want_a: bool| -> Vec<usize> {
        (0..pieces[i].n())
            .filter(|&v| sides[i].is_a(v) == want_a)
            .map(|v| offsets[i] + v)
            .collect()
    };
    let mut rng = match rule {
        PortRule::Seeded(s) => Some(rng_from_seed(s)),
        PortRule::LowestId => None,
    };
    let mut pick = |cands: Vec<usize>| -> usize {
        match rng.as_mut() {
            Some(r) => *cands.choose(r).expect("bistable pieces have both classes"),
            None => cands[0],
        }
    };
    let mut edges = graph.edges().to_vec();
    for &(u, v) in template.edges() {
        let (xu, yv) = if tb.is_a(u) { (u, v) } else { (v, u) };
        let i = x.as_slice().binary_search(&xu).expect("class A vertex");
        let j = y.as_slice().binary_search(&yv).expect("class B vertex");
        if i == j {
            continue;
        }
        let a = pick(class_of(i, true));
        let b = pick(class_of(j, false));
        edges.push((a, b));
    }
    let graph = Graph::from_edges(graph.n(), edges)?;
    let bistable = is_bistable(&graph)?.holds;
    Ok(Composite { graph, bistable })
}

/// Disjoint union joined by bridges ((piece, local vertex), (piece, local
/// vertex)), with its stability verdicts re-checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Union {
    pub graph: Graph,
    pub offsets: Vec<usize>,
    pub alpha_plus: bool,
    pub alpha_stable: bool,
}

pub type Bridge = ((usize, usize), (usize, usize));

pub fn union_connect(pieces: &[Graph], bridges: &[Bridge]) -> Result<Union> {
    let Assembled { graph, offsets } = assemble(pieces);
    let mut edges = graph.edges().to_vec();
    for &((pi, u), (pj, v)) in bridges {
        for (p, w) in [(pi, u), (pj, v)] {
            if p >= pieces.len() {
                return Err(Error::BadSize(format!("no piece {p}")));
            }
            if w >= pieces[p].n() {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: pieces[p].n(),
                });
            }
        }
        edges.push((offsets[pi] + u, offsets[pj] + v));
    }
    let graph = Graph::from_edges(graph.n(), edges)?;
    if bipartition(&graph).is_err() {
        return Err(Error::NotBipartite);
    }
    if !graph.is_connected() {
        return Err(Error::NotConnected);
    }
    let alpha_plus = is_alpha_plus(&graph)?.holds;
    let alpha_stable = is_alpha_stable(&graph)?.alpha_stable.holds;
    Ok(Union {
        graph,
        offsets,
        alpha_plus,
        alpha_stable,
    })
}
