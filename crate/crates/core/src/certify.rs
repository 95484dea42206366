//! Re-checks every certificate in a report against the graph, without
//! calling the routine that produced it. Matching facts are recomputed from
//! scratch on the modified graphs; α is recomputed by brute force whenever
//! the graph is small enough.

use thiserror::Error;

use crate::chordal::{chordal_alpha, is_chordal};
use crate::classify::{classify_edges_by_recomputation, EdgeStatus};
use crate::graph::{bipartition, component_ids, connected_components, induced_subgraph, is_n_dominating, Edge, Graph};
use crate::matching::{has_perfect_matching, maximum_matching, Matching};
use crate::oracle::{intersect_all, Oracle};
use crate::stability::{
    graph_class, AlphaMinusCertificate, AlphaMinusVerdict, AlphaPlusCertificate, AlphaPlusVerdict, AlphaStableVerdict,
    BistableCertificate, BistableDecomposition, BistableVerdict, EarDecomposition, GraphClass, StabilityReport,
    ThirdSystemReason,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate rejected: {0}")]
pub struct Rejected(pub String);

pub type Checked = std::result::Result<(), Rejected>;

macro_rules! require {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(Rejected(format!($($fmt)+)));
        }
    };
}

/// α by brute force when within budget, else by König for bipartite
/// graphs or the elimination-order greedy for chordal ones.
fn fresh_alpha(g: &Graph) -> std::result::Result<usize, Rejected> {
    if let Ok(a) = Oracle::default().alpha(g) {
        return Ok(a);
    }
    if let Ok(b) = bipartition(g) {
        return Ok(g.n() - maximum_matching(g, &b).size());
    }
    chordal_alpha(g).map_err(|e| Rejected(format!("cannot recompute alpha: {e}")))
}

fn fresh_mu(g: &Graph) -> std::result::Result<usize, Rejected> {
    match bipartition(g) {
        Ok(b) => Ok(maximum_matching(g, &b).size()),
        Err(_) => Oracle::default()
            .mu(g)
            .map_err(|e| Rejected(format!("cannot recompute mu: {e}"))),
    }
}

fn check_matching(g: &Graph, m: &Matching) -> Checked {
    require!(m.is_in(g), "matching uses a non-edge");
    let mut seen = vec![false; g.n()];
    for &(u, v) in m.edges() {
        require!(!seen[u] && !seen[v], "matching edges share a vertex");
        seen[u] = true;
        seen[v] = true;
    }
    Ok(())
}

/// A cycle of even length at least 4, without repeats, along edges of `g`,
/// alternating in and out of `m`.
pub fn check_alternating_cycle(g: &Graph, m: &Matching, cycle: &[usize]) -> Checked {
    let k = cycle.len();
    require!(k >= 4 && k.is_multiple_of(2), "cycle {cycle:?} has length {k}");
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    require!(sorted.len() == k, "cycle {cycle:?} repeats a vertex");
    let matched = |i: usize| m.contains(crate::graph::edge(cycle[i], cycle[(i + 1) % k]));
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        require!(g.has_edge(u, v), "cycle {cycle:?} uses non-edge {u}-{v}");
        require!(
            matched(i) != matched((i + 1) % k),
            "cycle {cycle:?} does not alternate at {v}"
        );
    }
    Ok(())
}

pub fn certify_alpha_minus(g: &Graph, v: &AlphaMinusVerdict) -> Checked {
    match &v.certificate {
        AlphaMinusCertificate::NoMandatoryEdge { reference_matching } => {
            require!(v.holds, "no-mandatory-edge certificate on a negative verdict");
            check_matching(g, reference_matching)?;
            let mu = fresh_mu(g)?;
            require!(reference_matching.size() == mu, "reference matching is not maximum");
            for &e in g.edges() {
                require!(fresh_mu(&g.without_edge(e))? == mu, "deleting {e:?} lowers mu");
            }
        }
        AlphaMinusCertificate::MandatoryEdge { edge } => {
            require!(!v.holds, "mandatory edge on a positive verdict");
            require!(g.has_edge(edge.0, edge.1), "{edge:?} is not an edge");
            require!(
                fresh_mu(&g.without_edge(*edge))? < fresh_mu(g)?,
                "deleting {edge:?} keeps mu"
            );
        }
        AlphaMinusCertificate::UniqueStabilitySystem { system } => {
            require!(v.holds, "dominating system on a negative verdict");
            require!(is_chordal(g).is_ok(), "graph is not chordal");
            require!(system.is_stable_in(g), "system is not stable");
            require!(system.len() == fresh_alpha(g)?, "system is not maximum");
            require!(is_n_dominating(g, system, 2).is_ok(), "system is not 2-dominating");
        }
        AlphaMinusCertificate::UnderDominated { system, witness } => {
            require!(!v.holds, "under-dominated system on a positive verdict");
            require!(system.is_stable_in(g), "system is not stable");
            require!(system.len() == fresh_alpha(g)?, "system is not maximum");
            let w = witness.vertex;
            require!(
                w < g.n() && !system.contains(w),
                "witness {w} is not outside the system"
            );
            let count = g.neighbors(w).iter().filter(|&&x| system.contains(x)).count();
            require!(
                count < 2 && count == witness.count,
                "witness {w} has {count} neighbors in the system"
            );
        }
        AlphaMinusCertificate::Oracle { violating_edge } => match violating_edge {
            Some(e) => {
                require!(!v.holds, "violating edge on a positive verdict");
                require!(g.has_edge(e.0, e.1), "{e:?} is not an edge");
                require!(
                    fresh_alpha(&g.without_edge(*e))? > fresh_alpha(g)?,
                    "deleting {e:?} keeps alpha"
                );
            }
            None => {
                require!(v.holds, "missing violating edge on a negative verdict");
                let alpha = fresh_alpha(g)?;
                for &e in g.edges() {
                    require!(fresh_alpha(&g.without_edge(e))? == alpha, "deleting {e:?} raises alpha");
                }
            }
        },
    }
    Ok(())
}

fn alpha_with(g: &Graph, e: Edge) -> std::result::Result<usize, Rejected> {
    let h = g.with_edge(e).map_err(|err| Rejected(err.to_string()))?;
    fresh_alpha(&h)
}

pub fn certify_alpha_plus(g: &Graph, v: &AlphaPlusVerdict) -> Checked {
    match &v.certificate {
        AlphaPlusCertificate::NearPerfectMatching { matching } => {
            require!(v.holds, "near-perfect matching on a negative verdict");
            require!(bipartition(g).is_ok(), "graph is not bipartite");
            check_matching(g, matching)?;
            let unmatched = g.n() - 2 * matching.size();
            require!(unmatched <= 1, "{unmatched} vertices unmatched");
            require!(
                (0..g.n()).all(|x| matching.partner(x).is_some() || g.degree(x) == 0),
                "unmatched vertex is not isolated"
            );
        }
        AlphaPlusCertificate::SmallCore { core } => {
            require!(v.holds, "small core on a negative verdict");
            require!(core.len() <= 1, "core has {} vertices", core.len());
            if let Ok(sets) = Oracle::default().enumerate_maximum_stable_sets(g) {
                require!(
                    intersect_all(&sets) == *core,
                    "core differs from the intersection of all systems"
                );
            }
        }
        AlphaPlusCertificate::CommonPair { pair, component } => {
            require!(!v.holds, "common pair on a positive verdict");
            let (u, w) = *pair;
            require!(
                u != w && u < g.n() && w < g.n() && !g.has_edge(u, w),
                "{pair:?} is not a non-edge"
            );
            require!(component_ids(g)[u] == *component, "component index does not match");
            require!(alpha_with(g, *pair)? < fresh_alpha(g)?, "joining {pair:?} keeps alpha");
        }
        AlphaPlusCertificate::Oracle { violating_non_edge } => match violating_non_edge {
            Some(e) => {
                require!(!v.holds, "violating non-edge on a positive verdict");
                require!(!g.has_edge(e.0, e.1), "{e:?} is already an edge");
                require!(alpha_with(g, *e)? < fresh_alpha(g)?, "joining {e:?} keeps alpha");
            }
            None => {
                require!(v.holds, "missing violating non-edge on a negative verdict");
                let alpha = fresh_alpha(g)?;
                for e in crate::graph::complement_edges(g) {
                    require!(alpha_with(g, e)? == alpha, "joining {e:?} lowers alpha");
                }
            }
        },
    }
    Ok(())
}

pub fn certify_alpha_stable(
    g: &Graph,
    minus: &AlphaMinusVerdict,
    plus: &AlphaPlusVerdict,
    v: &AlphaStableVerdict,
) -> Checked {
    require!(
        v.holds == (minus.holds && plus.holds),
        "alpha-stable verdict disagrees with its parts"
    );
    if let Some(cover) = &v.cycles {
        require!(v.holds, "cycle cover on a negative verdict");
        check_matching(g, &cover.matching)?;
        let mut covered = vec![false; g.n()];
        for c in &cover.cycles {
            check_alternating_cycle(g, &cover.matching, c)?;
            c.iter().for_each(|&x| covered[x] = true);
        }
        if let Some(x) = cover.isolated {
            require!(x < g.n() && g.degree(x) == 0, "vertex {x} is not isolated");
            covered[x] = true;
        }
        require!(covered.iter().all(|&c| c), "cycles miss a vertex");
    }
    Ok(())
}

pub fn certify_ears(g: &Graph, d: &EarDecomposition) -> Checked {
    d.check_reconstructs(g).map_err(Rejected)?;
    require!(
        d.ears.len() + g.n() == g.edge_count() + 1,
        "{} ears for {} edges on {} vertices",
        d.ears.len(),
        g.edge_count(),
        g.n()
    );
    Ok(())
}

pub fn certify_bistable(g: &Graph, v: &BistableVerdict) -> Checked {
    let b = bipartition(g).map_err(|_| Rejected("graph is not bipartite".into()))?;
    let k2 = g.n() == 2 && g.edge_count() == 1;
    require!(v.degenerate_k2 == (v.holds && k2), "K2 flag is wrong");
    match &v.certificate {
        BistableCertificate::Elementary { matching, ears } => {
            require!(v.holds, "ear decomposition on a negative verdict");
            check_matching(g, matching)?;
            require!(matching.is_perfect(), "matching is not perfect");
            certify_ears(g, ears)?;
        }
        BistableCertificate::TooSmall { n } => {
            require!(!v.holds, "too-small certificate on a positive verdict");
            require!(*n == g.n() && *n < 4 && !k2, "order {n} does not justify the verdict");
        }
        BistableCertificate::ThirdSystem { set, reason } => {
            require!(!v.holds, "third system on a positive verdict");
            let (a, bb) = (b.class_a(), b.class_b());
            require!(set.is_stable_in(g), "set is not stable");
            require!(
                set.len() >= a.len() && set.len() >= bb.len(),
                "set is smaller than a color class"
            );
            // either a third maximum stable set, or proof that one class is
            // not maximum
            let third = *set != a && *set != bb;
            require!(third || a.len() != bb.len(), "set is a color class of a balanced graph");
            match reason {
                ThirdSystemReason::NoPerfectMatching => {
                    require!(!has_perfect_matching(g, &b), "graph has a perfect matching")
                }
                ThirdSystemReason::Disconnected => require!(!g.is_connected(), "graph is connected"),
                ThirdSystemReason::ForbiddenEdge { edge } => {
                    require!(g.has_edge(edge.0, edge.1), "{edge:?} is not an edge");
                    let rest = g.without_vertices(&[edge.0, edge.1]).graph;
                    require!(
                        2 * fresh_mu(&rest)? < rest.n(),
                        "{edge:?} extends to a perfect matching"
                    );
                }
            }
        }
    }
    Ok(())
}

/// Checks every verdict, number and certificate in `r`.
pub fn certify_report(g: &Graph, r: &StabilityReport) -> Checked {
    require!(
        r.n == g.n() && r.edge_count == g.edge_count(),
        "report describes another graph"
    );
    require!(r.class == graph_class(g), "class is wrong");
    require!(r.alpha == fresh_alpha(g)?, "alpha is wrong");
    if let Some(mu) = r.mu {
        require!(mu == fresh_mu(g)?, "mu is wrong");
        if r.class == GraphClass::Bipartite {
            require!(r.alpha + mu == g.n(), "alpha + mu != n on a bipartite graph");
        }
    }
    certify_alpha_minus(g, &r.alpha_minus)?;
    certify_alpha_plus(g, &r.alpha_plus)?;
    certify_alpha_stable(g, &r.alpha_minus, &r.alpha_plus, &r.alpha_stable)?;
    match (&r.bistable, r.class) {
        (Some(v), GraphClass::Bipartite) => certify_bistable(g, v)?,
        (None, GraphClass::Bipartite) => return Err(Rejected("bipartite report lacks a bistable verdict".into())),
        (Some(_), _) => return Err(Rejected("bistable verdict on a non-bipartite graph".into())),
        (None, _) => {}
    }
    let comps = connected_components(g);
    require!(r.per_component.len() == comps.len(), "wrong number of components");
    let mut alpha_sum = 0;
    for (c, s) in comps.iter().zip(&r.per_component) {
        require!(s.vertices == *c, "component vertex sets differ");
        let sub = induced_subgraph(g, c).map_err(|e| Rejected(e.to_string()))?.graph;
        require!(s.alpha == fresh_alpha(&sub)?, "component alpha is wrong");
        require!(
            s.alpha_stable == (s.alpha_minus && s.alpha_plus),
            "component alpha-stable flag inconsistent"
        );
        alpha_sum += s.alpha;
    }
    require!(alpha_sum == r.alpha, "component alphas do not add up");
    require!(
        r.alpha_minus.holds == r.per_component.iter().all(|s| s.alpha_minus),
        "alpha--stable verdict disagrees with the components"
    );
    Ok(())
}

/// The decomposition covers every vertex once, each piece is bistable,
/// and every edge between different parts lies in no maximum matching.
pub fn certify_decomposition(g: &Graph, d: &BistableDecomposition) -> Checked {
    let b = bipartition(g).map_err(|_| Rejected("graph is not bipartite".into()))?;
    let mut part = vec![usize::MAX; g.n()];
    let mut label = 0;
    let mut assign = |vs: &mut dyn Iterator<Item = usize>, part: &mut Vec<usize>| -> Checked {
        for x in vs {
            require!(
                x < g.n() && part[x] == usize::MAX,
                "vertex {x} placed twice or out of range"
            );
            part[x] = label;
        }
        label += 1;
        Ok(())
    };
    for p in &d.pieces {
        require!(p.len() >= 4, "piece of order {} is too small", p.len());
        let h = induced_subgraph(g, p).map_err(|e| Rejected(e.to_string()))?.graph;
        require!(h.is_connected(), "piece is disconnected");
        let hb = bipartition(&h).expect("induced subgraph of a bipartite graph");
        require!(has_perfect_matching(&h, &hb), "piece has no perfect matching");
        let cls = classify_edges_by_recomputation(&h, &hb);
        require!(cls.forbidden().is_empty(), "piece has an edge in no perfect matching");
        assign(&mut p.iter(), &mut part)?;
    }
    for &(u, v) in &d.k2_pieces {
        require!(g.has_edge(u, v), "K2 piece {u}-{v} is not an edge");
        assign(&mut [u, v].into_iter(), &mut part)?;
    }
    require!(d.singletons.len() <= 1, "more than one singleton");
    for &x in &d.singletons {
        require!(x < g.n() && g.degree(x) == 0, "singleton {x} is not isolated");
        assign(&mut [x].into_iter(), &mut part)?;
    }
    require!(part.iter().all(|&p| p != usize::MAX), "a vertex is in no part");
    let cls = classify_edges_by_recomputation(g, &b);
    for (e, s) in cls.iter() {
        let across = part[e.0] != part[e.1];
        require!(
            across == (s == EdgeStatus::Forbidden),
            "edge {e:?} misplaced relative to the parts"
        );
    }
    Ok(())
}
