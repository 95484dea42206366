//! α⁻-, α⁺- and α-stability, bistability, and the decompositions that
//! certify them. Bipartite graphs are decided through matching structure,
//! chordal graphs through the elimination-order greedy, and anything else
//! is sent to the oracle when small enough.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::chordal::{chordal_alpha, chordal_alpha_minus, chordal_stable_core, is_chordal};
use crate::classify::{allowed_components, classify_with_matching, cycle_in_digraph, EdgeStatus, MatchingDigraph};
use crate::error::{Error, Result};
use crate::graph::{
    bipartition, connected_components, edge, induced_subgraph, Bipartition, Edge, Graph, Subgraph, UnderDominated,
    VertexSet,
};
use crate::matching::{konig_cover, maximum_matching, maximum_stable_set, stable_core, Matching, StableSet};
use crate::oracle::Oracle;

/// Largest order sent to the oracle for graphs that are neither bipartite
/// nor chordal.
pub const ORACLE_ROUTE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    Bipartite,
    Chordal,
    Other,
}

/// Bipartite takes precedence over chordal (forests are both).
pub fn graph_class(g: &Graph) -> GraphClass {
    if bipartition(g).is_ok() {
        GraphClass::Bipartite
    } else if is_chordal(g).is_ok() {
        GraphClass::Chordal
    } else {
        GraphClass::Other
    }
}

fn oracle_route(g: &Graph) -> Result<Oracle> {
    if g.n() > ORACLE_ROUTE_LIMIT {
        return Err(Error::UnsupportedClass {
            n: g.n(),
            limit: ORACLE_ROUTE_LIMIT,
        });
    }
    Ok(Oracle::default())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaMinusCertificate {
    /// Bipartite, true: no edge lies in every maximum matching.
    NoMandatoryEdge { reference_matching: Matching },
    /// Bipartite, false: an edge in every maximum matching; deleting it
    /// lowers μ and so raises α.
    MandatoryEdge { edge: Edge },
    /// Chordal, true: the 2-dominating stability system, which is unique.
    UniqueStabilitySystem { system: VertexSet },
    /// Chordal, false: the greedy stability system and a vertex it does not
    /// dominate twice.
    UnderDominated { system: VertexSet, witness: UnderDominated },
    /// Any other class, decided literally; the edge whose deletion raises α.
    Oracle { violating_edge: Option<Edge> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaMinusVerdict {
    pub holds: bool,
    pub certificate: AlphaMinusCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlphaPlusCertificate {
    /// Bipartite, true: a matching missing at most one vertex, which is
    /// isolated.
    NearPerfectMatching { matching: Matching },
    /// Chordal, true: the intersection of all stability systems, of size ≤ 1.
    SmallCore { core: VertexSet },
    /// False: two non-adjacent vertices lying in every stability system;
    /// joining them lowers α. `component` is the component of `pair.0`.
    CommonPair { pair: Edge, component: usize },
    /// Any other class, decided literally; the non-edge whose addition
    /// lowers α.
    Oracle { violating_non_edge: Option<Edge> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaPlusVerdict {
    pub holds: bool,
    pub certificate: AlphaPlusCertificate,
}

/// An alternating cycle through every vertex except possibly one isolated
/// vertex, all with respect to `matching`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingCycleCover {
    pub matching: Matching,
    pub cycles: Vec<Vec<usize>>,
    pub isolated: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaStableVerdict {
    pub holds: bool,
    pub cycles: Option<AlternatingCycleCover>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThirdSystemReason {
    NoPerfectMatching,
    Disconnected,
    ForbiddenEdge { edge: Edge },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BistableCertificate {
    /// A perfect matching and an ear decomposition of the whole graph.
    Elementary { matching: Matching, ears: EarDecomposition },
    /// Fewer than four vertices and not K₂.
    TooSmall { n: usize },
    /// A stable set at least as large as either color class: equal to
    /// neither, or strictly larger than one of them.
    ThirdSystem { set: VertexSet, reason: ThirdSystemReason },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BistableVerdict {
    pub holds: bool,
    /// K₂ counts as bistable by convention; flagged so it can be told apart.
    pub degenerate_k2: bool,
    pub certificate: BistableCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub vertices: VertexSet,
    pub class: GraphClass,
    pub alpha: usize,
    pub mu: Option<usize>,
    pub core_size: usize,
    pub alpha_minus: bool,
    pub alpha_plus: bool,
    pub alpha_stable: bool,
    pub bistable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub n: usize,
    pub edge_count: usize,
    pub class: GraphClass,
    pub alpha: usize,
    /// Absent for large non-bipartite graphs.
    pub mu: Option<usize>,
    pub alpha_minus: AlphaMinusVerdict,
    pub alpha_plus: AlphaPlusVerdict,
    pub alpha_stable: AlphaStableVerdict,
    /// Only for bipartite graphs.
    pub bistable: Option<BistableVerdict>,
    pub per_component: Vec<ComponentSummary>,
}

/// One ear: a path from `start` (class A) through new `internal` vertices to
/// `end` (class B). An empty interior is a single edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ear {
    pub start: usize,
    pub internal: Vec<usize>,
    pub end: usize,
}

impl Ear {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.start)
            .chain(self.internal.iter().copied())
            .chain(std::iter::once(self.end))
    }

    pub fn edges(&self) -> Vec<Edge> {
        let vs: Vec<usize> = self.vertices().collect();
        vs.windows(2).map(|w| edge(w[0], w[1])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub base_edge: Edge,
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    /// Checks that the ears build exactly `g`: endpoints already present and
    /// of opposite colors, interiors new and of even length, every edge used
    /// once, every vertex reached.
    pub fn check_reconstructs(&self, g: &Graph) -> std::result::Result<(), String> {
        let n = g.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut used = vec![false; g.edge_count()];
        let take = |e: Edge, used: &mut Vec<bool>| -> std::result::Result<(), String> {
            let i = g.edge_index(e).ok_or_else(|| format!("{e:?} is not an edge"))?;
            if used[i] {
                return Err(format!("edge {e:?} used twice"));
            }
            used[i] = true;
            Ok(())
        };
        let (a, b) = self.base_edge;
        if a >= n || b >= n {
            return Err("base edge out of range".into());
        }
        take(edge(a, b), &mut used)?;
        color[a] = Some(false);
        color[b] = Some(true);
        for (i, ear) in self.ears.iter().enumerate() {
            let (Some(cs), Some(ce)) = (
                color.get(ear.start).copied().flatten(),
                color.get(ear.end).copied().flatten(),
            ) else {
                return Err(format!("ear {i}: endpoint not yet present"));
            };
            if cs == ce {
                return Err(format!("ear {i}: endpoints in the same color class"));
            }
            if ear.internal.len() % 2 != 0 {
                return Err(format!("ear {i}: odd number of internal vertices"));
            }
            let mut c = cs;
            for &x in &ear.internal {
                if x >= n || color[x].is_some() {
                    return Err(format!("ear {i}: internal vertex {x} is not new"));
                }
                c = !c;
                color[x] = Some(c);
            }
            for e in ear.edges() {
                take(e, &mut used)?;
            }
        }
        if let Some(v) = color.iter().position(Option::is_none) {
            return Err(format!("vertex {v} never reached"));
        }
        if used.iter().any(|&u| !u) {
            return Err("some edges are not covered".into());
        }
        Ok(())
    }

    /// The graphs G₀, G₀∪H₁, …, each with its vertices in original ids.
    pub fn prefixes(&self) -> Vec<Subgraph> {
        let mut vertices = vec![self.base_edge.0, self.base_edge.1];
        let mut edges = vec![edge(self.base_edge.0, self.base_edge.1)];
        let mut out = vec![prefix_graph(&vertices, &edges)];
        for ear in &self.ears {
            vertices.extend(ear.internal.iter().copied());
            edges.extend(ear.edges());
            out.push(prefix_graph(&vertices, &edges));
        }
        out
    }
}

fn prefix_graph(vertices: &[usize], edges: &[Edge]) -> Subgraph {
    let mut to_original = vertices.to_vec();
    to_original.sort_unstable();
    let local = |v: usize| to_original.binary_search(&v).expect("prefix vertex");
    let graph = Graph::from_edges(to_original.len(), edges.iter().map(|&(u, v)| (local(u), local(v))))
        .expect("prefix edges are simple");
    Subgraph { graph, to_original }
}

/// Components of the allowed-edge subgraph: bistable pieces on at least four
/// vertices, K₂ pieces (mandatory edges), and at most one isolated vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BistableDecomposition {
    pub pieces: Vec<VertexSet>,
    pub k2_pieces: Vec<Edge>,
    pub singletons: Vec<usize>,
}

fn require_bipartite(g: &Graph) -> Result<Bipartition> {
    bipartition(g).map_err(|_| Error::NotBipartite)
}

fn bipartite_alpha_minus(g: &Graph, b: &Bipartition) -> AlphaMinusVerdict {
    let cls = classify_with_matching(g, b, maximum_matching(g, b));
    match cls.mandatory().first() {
        Some(&e) => AlphaMinusVerdict {
            holds: false,
            certificate: AlphaMinusCertificate::MandatoryEdge { edge: e },
        },
        None => AlphaMinusVerdict {
            holds: true,
            certificate: AlphaMinusCertificate::NoMandatoryEdge {
                reference_matching: cls.reference_matching,
            },
        },
    }
}

/// α(G−e) = α(G) for every edge.
pub fn is_alpha_minus(g: &Graph) -> Result<AlphaMinusVerdict> {
    if let Ok(b) = bipartition(g) {
        return Ok(bipartite_alpha_minus(g, &b));
    }
    if is_chordal(g).is_ok() {
        let r = chordal_alpha_minus(g)?;
        let certificate = match r.under_dominated {
            None => AlphaMinusCertificate::UniqueStabilitySystem { system: r.system },
            Some(witness) => AlphaMinusCertificate::UnderDominated {
                system: r.system,
                witness,
            },
        };
        return Ok(AlphaMinusVerdict {
            holds: r.holds,
            certificate,
        });
    }
    let violating_edge = oracle_route(g)?.alpha_minus_violation(g)?;
    Ok(AlphaMinusVerdict {
        holds: violating_edge.is_none(),
        certificate: AlphaMinusCertificate::Oracle { violating_edge },
    })
}

fn common_pair(g: &Graph, core: &VertexSet) -> Option<AlphaPlusCertificate> {
    let s = core.as_slice();
    if s.len() < 2 {
        return None;
    }
    let comp = crate::graph::component_ids(g);
    Some(AlphaPlusCertificate::CommonPair {
        pair: (s[0], s[1]),
        component: comp[s[0]],
    })
}

/// α(G+e) = α(G) for every non-edge. Both structural routes rest on the
/// same fact: this fails exactly when two vertices lie in every stability
/// system.
pub fn is_alpha_plus(g: &Graph) -> Result<AlphaPlusVerdict> {
    if let Ok(b) = bipartition(g) {
        let core = stable_core(g, &b);
        if let Some(certificate) = common_pair(g, &core) {
            return Ok(AlphaPlusVerdict {
                holds: false,
                certificate,
            });
        }
        return Ok(AlphaPlusVerdict {
            holds: true,
            certificate: AlphaPlusCertificate::NearPerfectMatching {
                matching: maximum_matching(g, &b),
            },
        });
    }
    if is_chordal(g).is_ok() {
        let core = chordal_stable_core(g)?;
        return Ok(match common_pair(g, &core) {
            Some(certificate) => AlphaPlusVerdict {
                holds: false,
                certificate,
            },
            None => AlphaPlusVerdict {
                holds: true,
                certificate: AlphaPlusCertificate::SmallCore { core },
            },
        });
    }
    let violating_non_edge = oracle_route(g)?.alpha_plus_violation(g)?;
    Ok(AlphaPlusVerdict {
        holds: violating_non_edge.is_none(),
        certificate: AlphaPlusCertificate::Oracle { violating_non_edge },
    })
}

/// Alternating cycles through every matched vertex, for a bipartite graph
/// whose maximum matching misses at most one isolated vertex and which has
/// no mandatory edge.
fn alternating_cycle_cover(g: &Graph, b: &Bipartition, m: &Matching) -> Option<AlternatingCycleCover> {
    let unmatched = m.unmatched();
    if unmatched.len() > 1 || unmatched.iter().any(|v| g.degree(v) > 0) {
        return None;
    }
    let d = MatchingDigraph::new(g, b, m);
    let mut covered = vec![false; g.n()];
    let mut cycles = Vec::new();
    for v in 0..g.n() {
        if covered[v] || m.partner(v).is_none() {
            continue;
        }
        let cycle = cycle_in_digraph(&d, b, m, v)?;
        for &x in &cycle {
            covered[x] = true;
        }
        cycles.push(cycle);
    }
    Some(AlternatingCycleCover {
        matching: m.clone(),
        cycles,
        isolated: unmatched.as_slice().first().copied(),
    })
}

fn degenerate_k2(g: &Graph) -> bool {
    g.n() == 2 && g.edge_count() == 1
}

/// Bistable (equivalently elementary) bipartite graph: connected, with a
/// perfect matching, and every edge in some perfect matching.
pub fn is_bistable(g: &Graph) -> Result<BistableVerdict> {
    let b = require_bipartite(g)?;
    let n = g.n();
    if n < 4 && !degenerate_k2(g) {
        return Ok(BistableVerdict {
            holds: false,
            degenerate_k2: false,
            certificate: BistableCertificate::TooSmall { n },
        });
    }
    let m = maximum_matching(g, &b);
    let third = |set: VertexSet, reason| BistableVerdict {
        holds: false,
        degenerate_k2: false,
        certificate: BistableCertificate::ThirdSystem { set, reason },
    };
    if !m.is_perfect() {
        // König stable set, larger than n/2
        let set = konig_cover(g, &b, &m).members.complement(n);
        return Ok(third(set, ThirdSystemReason::NoPerfectMatching));
    }
    let comps = connected_components(g);
    if comps.len() > 1 {
        let first = &comps[0];
        let set = (0..n).filter(|&v| first.contains(v) == b.is_a(v)).collect();
        return Ok(third(set, ThirdSystemReason::Disconnected));
    }
    let cls = classify_with_matching(g, &b, m.clone());
    if let Some(&e) = cls.forbidden().first() {
        let sub = g.without_vertices(&[e.0, e.1]);
        let sb = b.restrict(&sub);
        let local = maximum_stable_set(&sub.graph, &sb).members;
        let set = sub.lift_set(&local);
        return Ok(third(set, ThirdSystemReason::ForbiddenEdge { edge: e }));
    }
    let ears = build_ears(g, &b, &m).expect("connected graph with all edges allowed has an ear decomposition");
    Ok(BistableVerdict {
        holds: true,
        degenerate_k2: degenerate_k2(g),
        certificate: BistableCertificate::Elementary { matching: m, ears },
    })
}

/// Grows the graph from the matching edge at vertex 0. Chords between
/// present vertices are taken first; otherwise the first arc leaving the
/// present part of the matching digraph is extended by breadth-first search
/// until it re-enters, giving an ear with an even interior.
fn build_ears(g: &Graph, b: &Bipartition, m: &Matching) -> Option<EarDecomposition> {
    let n = g.n();
    let d = MatchingDigraph::new(g, b, m);
    let a_of = |e: Edge| if b.is_a(e.0) { e.0 } else { e.1 };
    let b_of = |e: Edge| if b.is_a(e.0) { e.1 } else { e.0 };

    let v0 = 0;
    let p0 = m.partner(v0)?;
    let base_edge = edge(v0, p0);
    let mut in_h = vec![false; n];
    let mut node_in_h = vec![false; d.node_count()];
    let mut used = vec![false; g.edge_count()];
    in_h[v0] = true;
    in_h[p0] = true;
    node_in_h[d.node_of(v0)] = true;
    used[g.edge_index(base_edge)?] = true;
    let mut ears = Vec::new();
    let mut fresh = vec![v0, p0];
    let mut h_size = 2;

    loop {
        // chords at newly added vertices
        let mut chords: Vec<Edge> = Vec::new();
        for &x in &fresh {
            for &y in g.neighbors(x) {
                let e = edge(x, y);
                let i = g.edge_index(e)?;
                if in_h[y] && !used[i] {
                    used[i] = true;
                    chords.push(e);
                }
            }
        }
        chords.sort_unstable();
        for e in chords {
            ears.push(Ear {
                start: a_of(e),
                internal: Vec::new(),
                end: b_of(e),
            });
        }
        if h_size == n {
            break;
        }

        let (first_arc, q1) = (0..d.node_count())
            .filter(|&p| node_in_h[p])
            .flat_map(|p| d.arcs(p).iter().map(move |&(t, e)| (t, e)))
            .find(|&(t, _)| !node_in_h[t])
            .map(|(t, e)| (e, t))?;
        let mut prev: Vec<Option<(usize, Edge)>> = vec![None; d.node_count()];
        let mut seen = vec![false; d.node_count()];
        seen[q1] = true;
        let mut queue = VecDeque::from([q1]);
        let mut closing = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for &(t, e) in d.arcs(x) {
                if node_in_h[t] {
                    closing = Some((x, e));
                    break 'bfs;
                }
                if !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((x, e));
                    queue.push_back(t);
                }
            }
        }
        let (last, closing_arc) = closing?;
        let mut arcs = vec![closing_arc];
        let mut x = last;
        while x != q1 {
            let (p, e) = prev[x]?;
            arcs.push(e);
            x = p;
        }
        arcs.push(first_arc);
        arcs.reverse();
        let mut internal = Vec::with_capacity(2 * (arcs.len() - 1));
        for w in arcs.windows(2) {
            internal.push(b_of(w[0]));
            internal.push(a_of(w[1]));
        }
        let ear = Ear {
            start: a_of(arcs[0]),
            internal,
            end: b_of(*arcs.last().unwrap()),
        };
        for e in ear.edges() {
            used[g.edge_index(e)?] = true;
        }
        fresh.clear();
        for &v in &ear.internal {
            in_h[v] = true;
            node_in_h[d.node_of(v)] = true;
            fresh.push(v);
        }
        h_size += ear.internal.len();
        ears.push(ear);
    }
    Some(EarDecomposition { base_edge, ears })
}

/// Ear decomposition of a bistable graph (K₂ included).
pub fn ear_decomposition(g: &Graph) -> Result<EarDecomposition> {
    match is_bistable(g)?.certificate {
        BistableCertificate::Elementary { ears, .. } => Ok(ears),
        _ => Err(Error::NotBistable),
    }
}

/// Splits an α⁺-stable bipartite graph along its allowed edges.
pub fn bistable_decomposition(g: &Graph) -> Result<BistableDecomposition> {
    let b = require_bipartite(g)?;
    let m = maximum_matching(g, &b);
    let unmatched = m.unmatched();
    if unmatched.len() > 1 || unmatched.iter().any(|v| g.degree(v) > 0) {
        return Err(Error::NotAlphaPlus);
    }
    let cls = classify_with_matching(g, &b, m);
    let mut out = BistableDecomposition {
        pieces: Vec::new(),
        k2_pieces: Vec::new(),
        singletons: Vec::new(),
    };
    for comp in allowed_components(&cls) {
        match comp.len() {
            1 => out.singletons.push(comp[0]),
            2 => {
                let e = edge(comp[0], comp[1]);
                debug_assert_eq!(cls.status(e), Some(EdgeStatus::Mandatory));
                out.k2_pieces.push(e);
            }
            _ => out.pieces.push(VertexSet::from(comp)),
        }
    }
    out.pieces.sort();
    out.k2_pieces.sort_unstable();
    Ok(out)
}

/// The two distinct stability systems witnessing non-uniqueness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotUnique {
    pub first: VertexSet,
    pub second: VertexSet,
}

/// The unique stability system of a bipartite graph, if there is only one:
/// that happens exactly when the stable core has α members.
pub fn unique_stability_system(g: &Graph, b: &Bipartition) -> std::result::Result<StableSet, NotUnique> {
    let first = maximum_stable_set(g, b);
    let core = stable_core(g, b);
    if core.len() == first.len() {
        return Ok(first);
    }
    let v = first
        .members
        .iter()
        .find(|&v| !core.contains(v))
        .expect("a maximum stable set larger than the core leaves it");
    let sub = g.without_vertices(&[v]);
    let local = maximum_stable_set(&sub.graph, &b.restrict(&sub)).members;
    Err(NotUnique {
        first: first.members,
        second: sub.lift_set(&local),
    })
}

/// Connected bipartite α⁻-stable graph whose unique stability system is a
/// color class.
pub fn strong_unique_independence(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let Ok(b) = bipartition(g) else {
        return Ok(false);
    };
    if !bipartite_alpha_minus(g, &b).holds {
        return Ok(false);
    }
    Ok(match unique_stability_system(g, &b) {
        Ok(s) => s.members == b.class_a() || s.members == b.class_b(),
        Err(_) => false,
    })
}

fn stability_numbers(g: &Graph, class: GraphClass) -> Result<(usize, Option<usize>)> {
    let oracle = Oracle::default();
    match class {
        GraphClass::Bipartite => {
            let b = require_bipartite(g)?;
            let mu = maximum_matching(g, &b).size();
            Ok((g.n() - mu, Some(mu)))
        }
        GraphClass::Chordal => {
            let mu = if g.n() <= oracle.budget.max_vertices_exact_alpha {
                Some(oracle.mu(g)?)
            } else {
                None
            };
            Ok((chordal_alpha(g)?, mu))
        }
        GraphClass::Other => {
            let o = oracle_route(g)?;
            Ok((o.alpha(g)?, Some(o.mu(g)?)))
        }
    }
}

fn core_size(g: &Graph, class: GraphClass) -> Result<usize> {
    Ok(match class {
        GraphClass::Bipartite => stable_core(g, &require_bipartite(g)?).len(),
        GraphClass::Chordal => chordal_stable_core(g)?.len(),
        GraphClass::Other => {
            let o = oracle_route(g)?;
            let alpha = o.alpha(g)?;
            let mut count = 0;
            for v in 0..g.n() {
                if o.alpha(&g.without_vertices(&[v]).graph)? < alpha {
                    count += 1;
                }
            }
            count
        }
    })
}

fn summarize(g: &Graph, vertices: VertexSet) -> Result<ComponentSummary> {
    let class = graph_class(g);
    let (alpha, mu) = stability_numbers(g, class)?;
    let alpha_minus = is_alpha_minus(g)?.holds;
    let alpha_plus = is_alpha_plus(g)?.holds;
    let bistable = match class {
        GraphClass::Bipartite => Some(is_bistable(g)?.holds),
        _ => None,
    };
    Ok(ComponentSummary {
        vertices,
        class,
        alpha,
        mu,
        core_size: core_size(g, class)?,
        alpha_minus,
        alpha_plus,
        alpha_stable: alpha_minus && alpha_plus,
        bistable,
    })
}

/// Full report: α, μ, every verdict with its certificate, and a summary per
/// connected component.
pub fn is_alpha_stable(g: &Graph) -> Result<StabilityReport> {
    let class = graph_class(g);
    let (alpha, mu) = stability_numbers(g, class)?;
    let alpha_minus = is_alpha_minus(g)?;
    let alpha_plus = is_alpha_plus(g)?;
    let holds = alpha_minus.holds && alpha_plus.holds;
    let (cycles, bistable) = match class {
        GraphClass::Bipartite => {
            let b = require_bipartite(g)?;
            let cycles = if holds {
                alternating_cycle_cover(g, &b, &maximum_matching(g, &b))
            } else {
                None
            };
            (cycles, Some(is_bistable(g)?))
        }
        _ => (None, None),
    };
    let comps = connected_components(g);
    let per_component = if comps.len() == 1 {
        vec![ComponentSummary {
            vertices: comps[0].clone(),
            class,
            alpha,
            mu,
            core_size: core_size(g, class)?,
            alpha_minus: alpha_minus.holds,
            alpha_plus: alpha_plus.holds,
            alpha_stable: holds,
            bistable: bistable.as_ref().map(|v| v.holds),
        }]
    } else {
        comps
            .into_iter()
            .map(|c| {
                let sub = induced_subgraph(g, &c)?;
                summarize(&sub.graph, c)
            })
            .collect::<Result<_>>()?
    };
    Ok(StabilityReport {
        n: g.n(),
        edge_count: g.edge_count(),
        class,
        alpha,
        mu,
        alpha_minus,
        alpha_plus,
        alpha_stable: AlphaStableVerdict { holds, cycles },
        bistable,
        per_component,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e.iter().copied()).unwrap()
    }

    fn cycle(k: usize) -> Graph {
        Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    fn path(k: usize) -> Graph {
        Graph::from_edges(k, (1..k).map(|i| (i - 1, i))).unwrap()
    }

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    fn c6_chord() -> Graph {
        g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    }

    fn star3() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3)])
    }

    #[test]
    fn alpha_minus_examples() {
        assert!(is_alpha_minus(&k33()).unwrap().holds);
        let p4 = is_alpha_minus(&path(4)).unwrap();
        assert!(!p4.holds);
        assert_eq!(p4.certificate, AlphaMinusCertificate::MandatoryEdge { edge: (0, 1) });
        assert!(is_alpha_minus(&c6_chord()).unwrap().holds);
        // triangle: chordal, not α⁻-stable
        let tri = is_alpha_minus(&cycle(3)).unwrap();
        assert!(!tri.holds);
        // C5: neither class, oracle route
        let c5 = is_alpha_minus(&cycle(5)).unwrap();
        assert!(!c5.holds);
        assert!(matches!(
            c5.certificate,
            AlphaMinusCertificate::Oracle {
                violating_edge: Some(_)
            }
        ));
    }

    #[test]
    fn alpha_plus_examples() {
        let p4 = is_alpha_plus(&path(4)).unwrap();
        assert!(p4.holds);
        match p4.certificate {
            AlphaPlusCertificate::NearPerfectMatching { matching } => {
                assert_eq!(matching.edges(), &[(0, 1), (2, 3)])
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(!is_alpha_plus(&path(3)).unwrap().holds);
        let two = is_alpha_plus(&Graph::empty(2)).unwrap();
        assert!(!two.holds);
        assert_eq!(
            two.certificate,
            AlphaPlusCertificate::CommonPair {
                pair: (0, 1),
                component: 0
            }
        );
        assert!(is_alpha_plus(&Graph::empty(1)).unwrap().holds);
        // triangle with a pendant has core {3}; with an isolated vertex
        // added, two components have a core of size 1
        let paw = g(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]);
        assert!(is_alpha_plus(&paw).unwrap().holds);
        let paw_k1 = g(5, &[(0, 1), (1, 2), (0, 2), (0, 3)]);
        assert!(!is_alpha_plus(&paw_k1).unwrap().holds);
        assert!(is_alpha_plus(&cycle(3)).unwrap().holds);
    }

    #[test]
    fn alpha_stable_examples() {
        let c4 = is_alpha_stable(&cycle(4)).unwrap();
        assert!(c4.alpha_stable.holds);
        assert_eq!((c4.alpha, c4.mu), (2, Some(2)));
        let cover = c4.alpha_stable.cycles.unwrap();
        assert_eq!(cover.cycles.len(), 1);
        let p4 = is_alpha_stable(&path(4)).unwrap();
        assert!(!p4.alpha_stable.holds && p4.alpha_plus.holds && !p4.alpha_minus.holds);
        assert!(is_alpha_stable(&k33()).unwrap().alpha_stable.holds);
        let two_c4 = cycle(4).disjoint_union(&cycle(4));
        let r = is_alpha_stable(&two_c4).unwrap();
        assert!(r.alpha_stable.holds);
        assert_eq!(r.per_component.len(), 2);
        assert!(r.per_component.iter().all(|c| c.alpha_stable && c.core_size == 0));
    }

    #[test]
    fn bistable_examples() {
        let c4 = is_bistable(&cycle(4)).unwrap();
        assert!(c4.holds && !c4.degenerate_k2);
        let p4 = is_bistable(&path(4)).unwrap();
        assert!(!p4.holds);
        match p4.certificate {
            BistableCertificate::ThirdSystem { set, reason } => {
                assert_eq!(set, VertexSet::from(vec![0, 3]));
                assert_eq!(reason, ThirdSystemReason::ForbiddenEdge { edge: (1, 2) });
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(is_bistable(&c6_chord()).unwrap().holds);
        let k2 = is_bistable(&path(2)).unwrap();
        assert!(k2.holds && k2.degenerate_k2);
        assert!(!is_bistable(&path(3)).unwrap().holds);
        assert_eq!(is_bistable(&cycle(3)), Err(Error::NotBipartite));
        let two_c4 = is_bistable(&cycle(4).disjoint_union(&cycle(4))).unwrap();
        assert!(matches!(
            two_c4.certificate,
            BistableCertificate::ThirdSystem {
                reason: ThirdSystemReason::Disconnected,
                ..
            }
        ));
    }

    #[test]
    fn ear_examples() {
        let c4 = ear_decomposition(&cycle(4)).unwrap();
        assert_eq!(c4.base_edge, (0, 1));
        assert_eq!(
            c4.ears,
            vec![Ear {
                start: 0,
                internal: vec![3, 2],
                end: 1
            }]
        );
        let k2 = ear_decomposition(&path(2)).unwrap();
        assert!(k2.ears.is_empty());
        let h = c6_chord();
        let d = ear_decomposition(&h).unwrap();
        assert_eq!(d.ears.len(), 2);
        d.check_reconstructs(&h).unwrap();
        for p in d.prefixes() {
            assert!(is_bistable(&p.graph).unwrap().holds);
        }
        assert_eq!(ear_decomposition(&path(4)), Err(Error::NotBistable));
    }

    #[test]
    fn decomposition_examples() {
        let c4 = bistable_decomposition(&cycle(4)).unwrap();
        assert_eq!(c4.pieces, vec![VertexSet::from(vec![0, 1, 2, 3])]);
        assert!(c4.k2_pieces.is_empty());
        let p4 = bistable_decomposition(&path(4)).unwrap();
        assert!(p4.pieces.is_empty());
        assert_eq!(p4.k2_pieces, vec![(0, 1), (2, 3)]);
        let mut joined = cycle(4).disjoint_union(&cycle(4));
        joined = joined.with_edge((0, 5)).unwrap();
        let d = bistable_decomposition(&joined).unwrap();
        assert_eq!(
            d.pieces,
            vec![VertexSet::from(vec![0, 1, 2, 3]), VertexSet::from(vec![4, 5, 6, 7])]
        );
        assert!(d.k2_pieces.is_empty());
        assert_eq!(bistable_decomposition(&path(3)), Err(Error::NotAlphaPlus));
    }

    #[test]
    fn uniqueness_examples() {
        let p3 = path(3);
        let b = bipartition(&p3).unwrap();
        assert_eq!(
            unique_stability_system(&p3, &b).unwrap().members,
            VertexSet::from(vec![0, 2])
        );
        let c4 = cycle(4);
        let b = bipartition(&c4).unwrap();
        let w = unique_stability_system(&c4, &b).unwrap_err();
        let mut both = vec![w.first, w.second];
        both.sort();
        assert_eq!(both, vec![VertexSet::from(vec![0, 2]), VertexSet::from(vec![1, 3])]);
        let s = star3();
        let b = bipartition(&s).unwrap();
        assert_eq!(
            unique_stability_system(&s, &b).unwrap().members,
            VertexSet::from(vec![1, 2, 3])
        );

        assert!(strong_unique_independence(&star3()).unwrap());
        assert!(!strong_unique_independence(&path(4)).unwrap());
        assert!(!strong_unique_independence(&cycle(4)).unwrap());
        assert_eq!(strong_unique_independence(&Graph::empty(2)), Err(Error::NotConnected));
    }
}
