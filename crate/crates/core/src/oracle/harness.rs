//! Registered claims checked over every small graph of a family, plus
//! seeded samples of larger connected bipartite graphs. A claim compares
//! the structural algorithms against brute force and against each other;
//! failures become report content with the first counterexample.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{
    all_graphs, all_trees, is_bipartite, sample_connected_bipartite, MAX_EXHAUSTIVE_ORDER, MAX_SAMPLED_ORDER,
    MAX_TREE_ORDER,
};
use super::{intersect_all, intersect_matchings, Oracle, OracleBudget};
use crate::chordal::{
    chordal_alpha_minus, chordal_maximum_stable_set, is_chordal, tree_alpha_plus, tree_strong_unique_independence,
};
use crate::classify::{
    allowed_degree, alternating_cycle_through, alternating_cycle_with, classify_edges, classify_edges_by_recomputation,
    symmetric_difference_cycles, EdgeStatus,
};
use crate::error::{Error, Result};
use crate::graph::{
    bipartite_complement_edges, bipartition, complement_edges, connected_components, induced_subgraph, is_n_dominating,
    pendant_vertices, Bipartition, Edge, Graph, VertexSet,
};
use crate::matching::{
    alpha_preserving_spanning_tree, has_perfect_matching, konig_cover, matching_core, maximum_matching,
    maximum_stable_set, stable_core, Dsu, Matching,
};
use crate::stability::{
    bistable_decomposition, ear_decomposition, is_alpha_minus, is_alpha_plus, is_alpha_stable, is_bistable,
    strong_unique_independence,
};

type Outcome = std::result::Result<(), String>;
pub type Check = fn(&Graph, &Oracle) -> Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    All,
    Connected,
    Bipartite,
    ConnectedBipartite,
    Chordal,
    ConnectedChordal,
    Trees,
}

impl Family {
    pub fn contains(self, g: &Graph) -> bool {
        match self {
            Family::All => true,
            Family::Connected => g.is_connected(),
            Family::Bipartite => is_bipartite(g),
            Family::ConnectedBipartite => g.is_connected() && is_bipartite(g),
            Family::Chordal => is_chordal(g).is_ok(),
            Family::ConnectedChordal => g.is_connected() && is_chordal(g).is_ok(),
            Family::Trees => g.is_tree(),
        }
    }

    fn exhaustive_limit(self) -> usize {
        match self {
            Family::Trees => MAX_TREE_ORDER,
            _ => MAX_EXHAUSTIVE_ORDER,
        }
    }

    /// Every member on exactly `n` unlabeled vertices.
    pub fn members(self, n: usize) -> Vec<Graph> {
        match self {
            Family::Trees => all_trees(n).to_vec(),
            _ => all_graphs(n).iter().filter(|g| self.contains(g)).cloned().collect(),
        }
    }
}

/// A universally quantified statement over a graph family.
#[derive(Clone, Copy, Debug)]
pub struct Claim {
    pub name: &'static str,
    pub family: Family,
    pub min_n: usize,
    /// Whether the check is cheap enough for sampled graphs beyond
    /// exhaustive range.
    pub sampled: bool,
    pub check: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph: Graph,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub name: String,
    pub instances: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub claims: Vec<ClaimReport>,
    pub seed: u64,
    pub max_n: usize,
    pub sample: usize,
}

impl HarnessReport {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub max_n: usize,
    /// Claim names to run; `None` runs every registered claim.
    pub claims: Option<Vec<String>>,
    pub seed: u64,
    pub sample: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            max_n: 6,
            claims: None,
            seed: 0,
            sample: 0,
        }
    }
}

/// Budget used by the harness: sampled graphs may carry more edges than the
/// default enumeration limit allows.
pub fn harness_oracle() -> Oracle {
    Oracle::new(OracleBudget {
        max_vertices_exact_alpha: 24,
        max_vertices_enumeration: 32,
        max_graphs: 1_000_000,
    })
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn oracle_err(e: Error) -> String {
    format!("oracle: {e}")
}

fn bip(g: &Graph) -> std::result::Result<Bipartition, String> {
    bipartition(g).map_err(|_| "expected a bipartite graph".to_string())
}

fn verdicts_agree(named: &[(&str, bool)]) -> Outcome {
    let first = named[0].1;
    if named.iter().all(|&(_, v)| v == first) {
        return Ok(());
    }
    let listing: Vec<String> = named.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Err(format!("conditions disagree: {}", listing.join(", ")))
}

/// All spanning trees, as edge lists, found by trying every (n−1)-subset of
/// the edges.
pub fn spanning_trees(g: &Graph) -> Vec<Vec<Edge>> {
    let n = g.n();
    let m = g.edge_count();
    if n == 0 {
        return Vec::new();
    }
    let k = n - 1;
    if k > m {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    assert!(m < 64, "spanning tree enumeration limited to 63 edges");
    let mut out = Vec::new();
    let mut mask: u64 = (1u64 << k) - 1;
    let limit = 1u64 << m;
    while mask < limit {
        let mut dsu = Dsu::new(n);
        let edges: Vec<Edge> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| g.edges()[i]).collect();
        if edges.iter().all(|&(u, v)| dsu.union(u, v)) {
            out.push(edges);
        }
        // next subset of the same size (Gosper)
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

/// A spanning subgraph in which every vertex has degree exactly 2, i.e. a
/// partition of the vertices into cycles.
pub fn has_cycle_partition(g: &Graph) -> bool {
    fn go(g: &Graph, i: usize, deg: &mut [usize]) -> bool {
        if i == g.edge_count() {
            return deg.iter().all(|&d| d == 2);
        }
        let (u, v) = g.edges()[i];
        // every vertex whose last incident edge is behind us must be complete
        if deg[u] < 2 && deg[v] < 2 {
            deg[u] += 1;
            deg[v] += 1;
            if feasible(g, i + 1, deg) && go(g, i + 1, deg) {
                return true;
            }
            deg[u] -= 1;
            deg[v] -= 1;
        }
        feasible(g, i + 1, deg) && go(g, i + 1, deg)
    }
    fn feasible(g: &Graph, next: usize, deg: &[usize]) -> bool {
        let mut left = vec![0usize; g.n()];
        for &(u, v) in &g.edges()[next..] {
            left[u] += 1;
            left[v] += 1;
        }
        (0..g.n()).all(|x| deg[x] + left[x] >= 2)
    }
    if g.n() == 0 {
        return true;
    }
    let mut deg = vec![0; g.n()];
    go(g, 0, &mut deg)
}

/// |N(X)| > |X| for every nonempty proper subset X of `side`.
pub fn hall_surplus(g: &Graph, side: &VertexSet) -> bool {
    let s = side.as_slice();
    let k = s.len();
    if k == 0 {
        return true;
    }
    assert!(k < 32, "Hall surplus brute force limited to 31 vertices per side");
    for mask in 1u32..(1 << k) - 1 {
        let mut nb = vec![false; g.n()];
        let mut size = 0;
        for (i, &v) in s.iter().enumerate() {
            if mask >> i & 1 == 1 {
                size += 1;
                for &w in g.neighbors(v) {
                    nb[w] = true;
                }
            }
        }
        if nb.iter().filter(|&&x| x).count() <= size {
            return false;
        }
    }
    true
}

fn bfs_distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn pendant_distance_parities(g: &Graph) -> (bool, bool) {
    let pendants: Vec<usize> = pendant_vertices(g).iter().collect();
    let (mut all_even, mut all_odd) = (true, true);
    for (i, &p) in pendants.iter().enumerate() {
        let d = bfs_distances(g, p);
        for &q in &pendants[i + 1..] {
            if d[q].is_multiple_of(2) {
                all_odd = false;
            } else {
                all_even = false;
            }
        }
    }
    (all_even, all_odd)
}

fn is_path_graph(g: &Graph) -> bool {
    g.is_tree() && (0..g.n()).all(|v| g.degree(v) <= 2)
}

/// Strong unique independence by definition: exactly one stability system
/// S, and V − S stable too.
fn strongly_uniquely_independent(g: &Graph, o: &Oracle) -> std::result::Result<bool, String> {
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    Ok(sets.len() == 1 && sets[0].complement(g.n()).is_stable_in(g))
}

/// Size of the intersection of all stability systems, by enumeration.
fn oracle_core(g: &Graph, o: &Oracle) -> std::result::Result<VertexSet, String> {
    Ok(intersect_all(&o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?))
}

fn components_rule(
    g: &Graph,
    o: &Oracle,
    per: fn(&Graph, &Oracle) -> Result<bool>,
) -> std::result::Result<bool, String> {
    let mut all_hold = true;
    let mut core_one = 0;
    for c in connected_components(g) {
        let sub = induced_subgraph(g, &c).map_err(|e| e.to_string())?.graph;
        all_hold &= per(&sub, o).map_err(oracle_err)?;
        if oracle_core(&sub, o)?.len() == 1 {
            core_one += 1;
        }
    }
    Ok(all_hold && core_one <= 1)
}

// ---- claims ----

fn konig(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let mu = maximum_matching(g, &b).size();
    let alpha = o.alpha(g).map_err(oracle_err)?;
    ensure!(alpha + mu == g.n(), "alpha {alpha} + mu {mu} != n {}", g.n());
    let s = maximum_stable_set(g, &b);
    ensure!(s.members.is_stable_in(g), "Konig stable set is not stable");
    ensure!(
        s.len() == alpha,
        "Konig stable set has size {} but alpha is {alpha}",
        s.len()
    );
    Ok(())
}

fn konig_cover_claim(g: &Graph, _o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let m = maximum_matching(g, &b);
    let cover = konig_cover(g, &b, &m);
    ensure!(cover.covers(g), "cover misses an edge");
    ensure!(
        cover.members.len() == m.size(),
        "cover size {} != mu {}",
        cover.members.len(),
        m.size()
    );
    Ok(())
}

fn alpha_minus_claim(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let structural = is_alpha_minus(g).map_err(|e| e.to_string())?.holds;
    let definition = o.def_alpha_minus(g).map_err(oracle_err)?;
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    let dominating = sets.iter().all(|s| is_n_dominating(g, s, 2).is_ok());
    let m = maximum_matching(g, &b);
    let mu_kept = g
        .edges()
        .iter()
        .all(|&e| maximum_matching(&g.without_edge(e), &b).size() == m.size());
    let ms = o.enumerate_maximum_matchings(g).map_err(oracle_err)?;
    let no_common = intersect_matchings(&ms).is_empty();
    verdicts_agree(&[
        ("structural", structural),
        ("definition", definition),
        ("all systems 2-dominating", dominating),
        ("mu(G-e)=mu", mu_kept),
        ("no common matching edge", no_common),
    ])
}

fn alpha_plus_claim(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let n = g.n();
    let structural = is_alpha_plus(g).map_err(|e| e.to_string())?.holds;
    let definition = o.def_alpha_plus(g).map_err(oracle_err)?;
    let pm = has_perfect_matching(g, &b);
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    let partition = sets.iter().any(|s| sets.contains(&s.complement(n)));
    let empty_core = intersect_all(&sets).is_empty();
    let empty_core_structural = stable_core(g, &b).is_empty();
    let balanced = b.is_balanced();
    let classes_are_systems = balanced && sets.contains(&b.class_a()) && sets.contains(&b.class_b());
    let mu = maximum_matching(g, &b).size();
    let mut mu_full = balanced;
    for e in complement_edges(g) {
        if !mu_full {
            break;
        }
        mu_full = o.mu(&g.with_edge(e).map_err(|e| e.to_string())?).map_err(oracle_err)? == mu;
    }
    let mut mu_bip = balanced;
    for e in bipartite_complement_edges(g, &b) {
        if !mu_bip {
            break;
        }
        mu_bip = maximum_matching(&g.with_edge(e).map_err(|e| e.to_string())?, &b).size() == mu;
    }
    verdicts_agree(&[
        ("structural", structural),
        ("definition", definition),
        ("perfect matching", pm),
        ("two systems partition V", partition),
        ("empty core", empty_core),
        ("empty core (structural)", empty_core_structural),
        ("color classes are systems", classes_are_systems),
        ("balanced, mu(G+e)=mu", mu_full),
        ("balanced, mu(G+e)=mu on bipartite complement", mu_bip),
    ])
}

fn alpha_plus_any_claim(g: &Graph, o: &Oracle) -> Outcome {
    let structural = is_alpha_plus(g).map_err(|e| e.to_string())?.holds;
    let definition = o.def_alpha_plus(g).map_err(oracle_err)?;
    let rule = components_rule(g, o, |h, o| o.def_alpha_plus(h))?;
    verdicts_agree(&[
        ("structural", structural),
        ("definition", definition),
        ("component rule", rule),
    ])
}

fn alpha_stable_claim(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let n = g.n();
    let report = is_alpha_stable(g).map_err(|e| e.to_string())?;
    let structural = report.alpha_stable.holds;
    let definition = o.def_alpha_stable(g).map_err(oracle_err)?;
    let pms = o.enumerate_perfect_matchings(g).map_err(oracle_err)?;
    let pm_no_common = !pms.is_empty() && intersect_matchings(&pms).is_empty();
    let m = maximum_matching(g, &b);
    let mu = m.size();
    let cls = classify_edges(g, &b);
    let balanced = b.is_balanced();
    let deletions_keep = g
        .edges()
        .iter()
        .all(|&e| maximum_matching(&g.without_edge(e), &b).size() == mu);
    let mut additions_full = true;
    for e in complement_edges(g) {
        if !additions_full {
            break;
        }
        additions_full = o.mu(&g.with_edge(e).map_err(|e| e.to_string())?).map_err(oracle_err)? == mu;
    }
    let mut additions_bip = true;
    for e in bipartite_complement_edges(g, &b) {
        if !additions_bip {
            break;
        }
        additions_bip = maximum_matching(&g.with_edge(e).map_err(|e| e.to_string())?, &b).size() == mu;
    }
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    let ms = o.enumerate_maximum_matchings(g).map_err(oracle_err)?;
    let both_cores_empty = intersect_all(&sets).is_empty() && intersect_matchings(&ms).is_empty();

    let decomposes = match bistable_decomposition(g) {
        Ok(d) => {
            d.k2_pieces.is_empty()
                && d.singletons.is_empty()
                && d.pieces.iter().all(|p| {
                    p.len() >= 4
                        && induced_subgraph(g, p)
                            .map(|s| is_bistable(&s.graph).map(|v| v.holds).unwrap_or(false))
                            .unwrap_or(false)
                })
        }
        Err(_) => false,
    };
    let allowed_two = allowed_degree(&cls).map(|d| d.iter().all(|&x| x >= 2)).unwrap_or(false);
    let mut pm_degree = vec![0usize; n];
    for &(u, v) in g.edges() {
        if pms.iter().any(|p| p.contains((u, v))) {
            pm_degree[u] += 1;
            pm_degree[v] += 1;
        }
    }
    let allowed_two_oracle = !pms.is_empty() && pm_degree.iter().all(|&d| d >= 2);
    let cycles_everywhere =
        m.is_perfect() && (0..n).all(|v| matches!(alternating_cycle_through(g, &b, &cls, v), Ok(Some(_))));
    verdicts_agree(&[
        ("structural", structural),
        ("definition", definition),
        ("perfect matchings with empty intersection", pm_no_common),
        (
            "perfect matching, no mandatory edge",
            m.is_perfect() && cls.mandatory().is_empty(),
        ),
        (
            "balanced, mu(G-e)=mu=mu(G+u)",
            balanced && deletions_keep && additions_full,
        ),
        (
            "balanced, mu(G-e)=mu=mu(G+u) on bipartite complement",
            balanced && deletions_keep && additions_bip,
        ),
        ("empty stable and matching cores", both_cores_empty),
        ("bistable pieces of order >= 4", decomposes),
        ("allowed degree >= 2", allowed_two),
        ("allowed degree >= 2 (oracle)", allowed_two_oracle),
        ("alternating cycle through every vertex", cycles_everywhere),
    ])
}

fn alpha_stable_any_claim(g: &Graph, o: &Oracle) -> Outcome {
    let structural = is_alpha_stable(g).map_err(|e| e.to_string())?.alpha_stable.holds;
    let definition = o.def_alpha_stable(g).map_err(oracle_err)?;
    let rule = components_rule(g, o, |h, o| o.def_alpha_stable(h))?;
    verdicts_agree(&[
        ("structural", structural),
        ("definition", definition),
        ("component rule", rule),
    ])
}

fn bistable_claim(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let n = g.n();
    let class_a = b.class_a();
    let class_b = b.class_b();
    let structural = is_bistable(g).map_err(|e| e.to_string())?.holds;
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    let mut classes = vec![class_a.clone(), class_b.clone()];
    classes.sort();
    let two_systems = sets == classes;
    let mut covers: Vec<VertexSet> = sets.iter().map(|s| s.complement(n)).collect();
    covers.sort();
    let cover_irreducible = b.is_balanced() && covers == classes;
    let hall_both = hall_surplus(g, &class_a) && hall_surplus(g, &class_b);
    let hall_a = b.is_balanced() && hall_surplus(g, &class_a);
    let mut minus_pair_plus = true;
    let mut minus_pair_pm = true;
    for a in class_a.iter() {
        for bv in class_b.iter() {
            let h = g.without_vertices(&[a, bv]).graph;
            minus_pair_plus &= o.def_alpha_plus(&h).map_err(oracle_err)?;
            minus_pair_pm &= 2 * o.mu(&h).map_err(oracle_err)? == h.n();
        }
    }
    let pms = o.enumerate_perfect_matchings(g).map_err(oracle_err)?;
    let union: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| pms.iter().any(|p| p.contains(e)))
        .collect();
    let every_edge_in_pm = g.is_connected() && union.len() == g.edge_count();
    let union_graph = Graph::from_edges(n, union).map_err(|e| e.to_string())?;
    let elementary = !pms.is_empty() && union_graph.is_connected();
    let all_allowed = g.is_connected() && has_perfect_matching(g, &b) && classify_edges(g, &b).forbidden().is_empty();
    let ears = match ear_decomposition(g) {
        Ok(d) => {
            d.check_reconstructs(g)
                .map_err(|e| format!("ear decomposition invalid: {e}"))?;
            ensure!(
                d.ears.len() + n == g.edge_count() + 1,
                "{} ears, expected |E| - n + 1 = {}",
                d.ears.len(),
                g.edge_count() + 1 - n
            );
            for (i, p) in d.prefixes().iter().enumerate() {
                ensure!(
                    is_bistable(&p.graph).map(|v| v.holds).unwrap_or(false),
                    "ear prefix {i} is not bistable"
                );
            }
            true
        }
        Err(_) => false,
    };
    verdicts_agree(&[
        ("structural", structural),
        ("exactly the two color classes", two_systems),
        ("cover-irreducible", cover_irreducible),
        ("Hall surplus on both sides", hall_both),
        ("balanced, Hall surplus on A", hall_a),
        ("G-a-b alpha+-stable", minus_pair_plus),
        ("G-a-b has a perfect matching", minus_pair_pm),
        ("connected, every edge in a perfect matching", every_edge_in_pm),
        ("perfect matchings span a connected graph", elementary),
        ("connected, perfect matching, no forbidden edge", all_allowed),
        ("ear decomposition", ears),
    ])?;
    if structural {
        ensure!(
            o.def_alpha_stable(g).map_err(oracle_err)?,
            "bistable but not alpha-stable"
        );
        ensure!(
            intersect_matchings(&pms).is_empty(),
            "bistable but perfect matchings share an edge"
        );
    }
    Ok(())
}

fn core_not_one(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let core = oracle_core(g, o)?;
    ensure!(
        core.len() != 1,
        "stability systems share exactly one vertex: {:?}",
        core
    );
    ensure!(stable_core(g, &b).len() != 1, "structural core has size 1");
    Ok(())
}

fn chordal_not_alpha_stable(g: &Graph, o: &Oracle) -> Outcome {
    ensure!(
        !o.def_alpha_stable(g).map_err(oracle_err)?,
        "connected chordal graph is alpha-stable"
    );
    ensure!(
        !is_alpha_stable(g).map_err(|e| e.to_string())?.alpha_stable.holds,
        "structural verdict says alpha-stable"
    );
    Ok(())
}

fn chordal_claim(g: &Graph, o: &Oracle) -> Outcome {
    let peo = is_chordal(g).map_err(|_| "expected a chordal graph".to_string())?;
    let greedy = chordal_maximum_stable_set(g, &peo).map_err(|e| e.to_string())?;
    let alpha = o.alpha(g).map_err(oracle_err)?;
    ensure!(greedy.members.is_stable_in(g), "greedy set is not stable");
    ensure!(greedy.len() == alpha, "greedy {} != alpha {alpha}", greedy.len());
    let r = chordal_alpha_minus(g).map_err(|e| e.to_string())?;
    let definition = o.def_alpha_minus(g).map_err(oracle_err)?;
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    verdicts_agree(&[
        ("structural", r.holds),
        ("definition", definition),
        ("unique system", sets.len() == 1),
    ])?;
    if r.holds {
        ensure!(
            sets == vec![r.system.clone()],
            "2-dominating system is not the only one"
        );
    }
    Ok(())
}

fn edge_classification(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let fast = classify_edges(g, &b);
    let slow = classify_edges_by_recomputation(g, &b);
    ensure!(
        fast.statuses() == slow.statuses(),
        "fast {:?} vs recomputed {:?}",
        fast.statuses(),
        slow.statuses()
    );
    let ms = o.enumerate_maximum_matchings(g).map_err(oracle_err)?;
    for (e, s) in fast.iter() {
        let count = ms.iter().filter(|m| m.contains(e)).count();
        let expected = if count == ms.len() {
            EdgeStatus::Mandatory
        } else if count == 0 {
            EdgeStatus::Forbidden
        } else {
            EdgeStatus::Optional
        };
        ensure!(s == expected, "edge {e:?}: classified {s:?}, oracle says {expected:?}");
    }
    let mut core = matching_core(g, &b);
    core.sort_unstable();
    ensure!(fast.mandatory() == core, "mandatory set differs from matching core");
    Ok(())
}

fn cores(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    ensure!(
        stable_core(g, &b) == intersect_all(&sets),
        "stable core differs from intersection"
    );
    let ms = o.enumerate_maximum_matchings(g).map_err(oracle_err)?;
    let mut core = matching_core(g, &b);
    core.sort_unstable();
    let mut inter = intersect_matchings(&ms);
    inter.sort_unstable();
    ensure!(
        core == inter,
        "matching core {core:?} differs from intersection {inter:?}"
    );
    Ok(())
}

fn spanning_tree_claim(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let t = alpha_preserving_spanning_tree(g, &b).map_err(|e| e.to_string())?;
    ensure!(t.is_tree() && t.n() == g.n(), "not a spanning tree");
    ensure!(
        t.edges().iter().all(|&(u, v)| g.has_edge(u, v)),
        "tree edge missing from graph"
    );
    let (at, ag) = (o.alpha(&t).map_err(oracle_err)?, o.alpha(g).map_err(oracle_err)?);
    ensure!(at == ag, "tree alpha {at} != graph alpha {ag}");
    let plus = o.def_alpha_plus(g).map_err(oracle_err)?;
    let mut plus_tree = false;
    for edges in spanning_trees(g) {
        let tree = Graph::from_edges(g.n(), edges).map_err(|e| e.to_string())?;
        if o.def_alpha_plus(&tree).map_err(oracle_err)? {
            plus_tree = true;
            break;
        }
    }
    verdicts_agree(&[
        ("alpha+-stable", plus),
        ("has an alpha+-stable spanning tree", plus_tree),
    ])
}

fn dominating_systems(g: &Graph, o: &Oracle) -> Outcome {
    let definition = o.def_alpha_minus(g).map_err(oracle_err)?;
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    let dominating = sets.iter().all(|s| is_n_dominating(g, s, 2).is_ok());
    verdicts_agree(&[("alpha--stable", definition), ("every system 2-dominating", dominating)])
}

fn no_common_pair(g: &Graph, o: &Oracle) -> Outcome {
    let definition = o.def_alpha_plus(g).map_err(oracle_err)?;
    let core = oracle_core(g, o)?;
    verdicts_agree(&[
        ("alpha+-stable", definition),
        ("no pair in every system", core.len() <= 1),
    ])
}

fn unique_implies_minus(g: &Graph, o: &Oracle) -> Outcome {
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    if sets.len() == 1 {
        ensure!(
            o.def_alpha_minus(g).map_err(oracle_err)?,
            "unique independence graph is not alpha--stable"
        );
    }
    Ok(())
}

fn pendant_in_some_system(g: &Graph, o: &Oracle) -> Outcome {
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    for p in pendant_vertices(g).iter() {
        ensure!(
            sets.iter().any(|s| s.contains(p)),
            "pendant {p} lies in no stability system"
        );
    }
    Ok(())
}

fn pendants_in_unique_system(g: &Graph, o: &Oracle) -> Outcome {
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    if sets.len() == 1 {
        ensure!(
            pendant_vertices(g).is_subset(&sets[0]),
            "pendant outside the unique stability system"
        );
    }
    Ok(())
}

fn disconnected_rules(g: &Graph, o: &Oracle) -> Outcome {
    let minus = o.def_alpha_minus(g).map_err(oracle_err)?;
    let mut each_minus = true;
    for c in connected_components(g) {
        let sub = induced_subgraph(g, &c).map_err(|e| e.to_string())?.graph;
        each_minus &= o.def_alpha_minus(&sub).map_err(oracle_err)?;
    }
    verdicts_agree(&[("alpha--stable", minus), ("every component alpha--stable", each_minus)])?;
    let plus = o.def_alpha_plus(g).map_err(oracle_err)?;
    let plus_rule = components_rule(g, o, |h, o| o.def_alpha_plus(h))?;
    verdicts_agree(&[("alpha+-stable", plus), ("component rule", plus_rule)])?;
    let stable = o.def_alpha_stable(g).map_err(oracle_err)?;
    let stable_rule = components_rule(g, o, |h, o| o.def_alpha_stable(h))?;
    verdicts_agree(&[("alpha-stable", stable), ("component rule", stable_rule)])
}

fn trees_claim(g: &Graph, o: &Oracle) -> Outcome {
    let n = g.n();
    let b = bip(g)?;
    if n >= 3 {
        let sui = strongly_uniquely_independent(g, o)?;
        let (larger, smaller) = if b.class_a().len() >= b.class_b().len() {
            (b.class_a(), b.class_b())
        } else {
            (b.class_b(), b.class_a())
        };
        let pendants_larger = larger.len() > smaller.len() && pendant_vertices(g).is_subset(&larger);
        let minus = o.def_alpha_minus(g).map_err(oracle_err)?;
        let (even, _) = pendant_distance_parities(g);
        let structural = tree_strong_unique_independence(g).map_err(|e| e.to_string())?;
        verdicts_agree(&[
            ("strong unique independence", sui),
            ("alpha--stable, pendants in larger class", minus && pendants_larger),
            ("pendant distances even", even),
            ("structural", structural),
        ])?;
    }
    if n >= 2 {
        let plus = o.def_alpha_plus(g).map_err(oracle_err)?;
        let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
        let partition = sets.iter().any(|s| sets.contains(&s.complement(n)));
        let pm = 2 * o.mu(g).map_err(oracle_err)? == n;
        let greedy = tree_alpha_plus(g).map_err(|e| e.to_string())?;
        verdicts_agree(&[
            ("alpha+-stable", plus),
            ("two systems partition V", partition),
            ("perfect matching", pm),
            ("leaf-matching greedy", greedy.holds),
        ])?;
        let (_, odd) = pendant_distance_parities(g);
        let path_even = is_path_graph(g) && n.is_multiple_of(2);
        verdicts_agree(&[
            ("alpha+-stable path", plus && is_path_graph(g)),
            ("isomorphic to an even path", path_even),
            ("pendant distances odd", odd),
            ("path flag", greedy.is_path_2n),
        ])?;
    }
    Ok(())
}

fn strong_unique_claim(g: &Graph, o: &Oracle) -> Outcome {
    let sui = strongly_uniquely_independent(g, o)?;
    let structural = strong_unique_independence(g).map_err(|e| e.to_string())?;
    let Ok(b) = bipartition(g) else {
        return verdicts_agree(&[("strong unique independence", sui), ("structural", structural)]);
    };
    let larger = if b.class_a().len() >= b.class_b().len() {
        b.class_a()
    } else {
        b.class_b()
    };
    let mut tree_sui = false;
    let mut tree_minus_larger = false;
    for edges in spanning_trees(g) {
        let t = Graph::from_edges(g.n(), edges).map_err(|e| e.to_string())?;
        if !tree_sui && strongly_uniquely_independent(&t, o)? {
            tree_sui = true;
        }
        if !tree_minus_larger && o.def_alpha_minus(&t).map_err(oracle_err)? && pendant_vertices(&t).is_subset(&larger) {
            tree_minus_larger = true;
        }
        if tree_sui && tree_minus_larger {
            break;
        }
    }
    let minus = o.def_alpha_minus(g).map_err(oracle_err)?;
    let sets = o.enumerate_maximum_stable_sets(g).map_err(oracle_err)?;
    let class_is_system = minus && sets.len() == 1 && (sets[0] == b.class_a() || sets[0] == b.class_b());
    verdicts_agree(&[
        ("strong unique independence", sui),
        ("strongly uniquely independent spanning tree", tree_sui),
        (
            "alpha--stable spanning tree, pendants in larger class",
            tree_minus_larger,
        ),
        ("alpha--stable, a color class is the unique system", class_is_system),
        ("structural", structural),
    ])
}

fn alpha_stable_subgraph(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    if !o.def_alpha_stable(g).map_err(oracle_err)? {
        return Ok(());
    }
    for s in o.enumerate_maximum_stable_sets(g).map_err(oracle_err)? {
        let meets_a = s.iter().any(|v| b.is_a(v));
        let meets_b = s.iter().any(|v| !b.is_a(v));
        if !(meets_a && meets_b) {
            continue;
        }
        let keep: VertexSet = (0..g.n())
            .filter(|&v| if b.is_a(v) { s.contains(v) } else { !s.contains(v) })
            .collect();
        let h = induced_subgraph(g, &keep).map_err(|e| e.to_string())?.graph;
        ensure!(
            o.def_alpha_stable(&h).map_err(oracle_err)?,
            "subgraph from system {:?} is not alpha-stable",
            s
        );
    }
    Ok(())
}

fn alternating_cycle_pairs(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let pms = o.enumerate_perfect_matchings(g).map_err(oracle_err)?;
    let Some(reference) = pms.first() else {
        return Ok(());
    };
    for other in &pms[1..] {
        let family = symmetric_difference_cycles(g, reference, other).map_err(|e| e.to_string())?;
        for v in 0..g.n() {
            if reference.partner(v) == other.partner(v) {
                continue;
            }
            let cycle = alternating_cycle_with(g, &b, reference, v)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no alternating cycle through {v}"))?;
            check_alternating(g, reference, &cycle)?;
            ensure!(
                family.cycles.iter().any(|c| c.contains(&v)),
                "{v} missing from symmetric difference"
            );
        }
        for c in &family.cycles {
            check_alternating(g, reference, c)?;
            check_alternating(g, other, c)?;
        }
    }
    Ok(())
}

fn check_alternating(g: &Graph, m: &Matching, cycle: &[usize]) -> Outcome {
    let k = cycle.len();
    ensure!(k >= 4 && k.is_multiple_of(2), "cycle {cycle:?} has bad length");
    let mut seen = cycle.to_vec();
    seen.sort_unstable();
    seen.dedup();
    ensure!(seen.len() == k, "cycle {cycle:?} repeats a vertex");
    let inside: Vec<bool> = (0..k)
        .map(|i| {
            let (u, v) = (cycle[i], cycle[(i + 1) % k]);
            m.contains(crate::graph::edge(u, v))
        })
        .collect();
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        ensure!(g.has_edge(u, v), "cycle {cycle:?} uses non-edge {u}-{v}");
        ensure!(inside[i] != inside[(i + 1) % k], "cycle {cycle:?} does not alternate");
    }
    Ok(())
}

fn disjoint_matchings_claim(g: &Graph, o: &Oracle) -> Outcome {
    let pms = o.enumerate_perfect_matchings(g).map_err(oracle_err)?;
    let mut pair = None;
    'outer: for (i, m1) in pms.iter().enumerate() {
        for m2 in &pms[i + 1..] {
            if m1.edges().iter().all(|&e| !m2.contains(e)) {
                pair = Some((m1, m2));
                break 'outer;
            }
        }
    }
    let cycles = has_cycle_partition(g);
    verdicts_agree(&[
        ("two disjoint perfect matchings", pair.is_some()),
        ("cycle partition", cycles),
    ])?;
    if let Some((m1, m2)) = pair {
        let family = symmetric_difference_cycles(g, m1, m2).map_err(|e| e.to_string())?;
        ensure!(family.shared_edges.is_empty(), "disjoint matchings share an edge");
        let covered: usize = family.cycles.iter().map(Vec::len).sum();
        ensure!(covered == g.n(), "cycles cover {covered} of {} vertices", g.n());
    }
    Ok(())
}

fn hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    fn extend(g: &Graph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = g.n();
        if path.len() == n {
            return g.has_edge(path[n - 1], path[0]);
        }
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if !used[w] {
                used[w] = true;
                path.push(w);
                if extend(g, path, used) {
                    return true;
                }
                path.pop();
                used[w] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    extend(g, &mut vec![0], &mut used)
}

fn two_cycle_partitions(g: &Graph, _o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let n = g.n();
    let structural = is_bistable(g).map_err(|e| e.to_string())?.holds;
    // subsets containing vertex 0, so each partition is seen once
    for mask in (1u32..1 << n).filter(|m| m & 1 == 1 && *m != (1u32 << n) - 1) {
        let c1: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let c2 = c1.complement(n);
        if c1.len() < 4 || c2.len() < 4 {
            continue;
        }
        let h1 = induced_subgraph(g, &c1).map_err(|e| e.to_string())?.graph;
        let h2 = induced_subgraph(g, &c2).map_err(|e| e.to_string())?.graph;
        if !hamiltonian(&h1) || !hamiltonian(&h2) {
            continue;
        }
        let joined = |x: &VertexSet, y: &VertexSet| {
            g.edges().iter().any(|&(u, v)| {
                (x.contains(u) && b.is_a(u) && y.contains(v) && !b.is_a(v))
                    || (x.contains(v) && b.is_a(v) && y.contains(u) && !b.is_a(u))
            })
        };
        let cross = joined(&c1, &c2) && joined(&c2, &c1);
        verdicts_agree(&[("bistable", structural), ("A1-B2 and A2-B1 edges", cross)])?;
    }
    Ok(())
}

fn plus_decomposition(g: &Graph, o: &Oracle) -> Outcome {
    let plus = o.def_alpha_plus(g).map_err(oracle_err)?;
    let decomposes = match bistable_decomposition(g) {
        Ok(d) => {
            let mut covered = vec![false; g.n()];
            let mut ok = d.singletons.is_empty() || g.n() == 1;
            for p in &d.pieces {
                let h = induced_subgraph(g, p).map_err(|e| e.to_string())?.graph;
                ok &= is_bistable(&h).map(|v| v.holds).unwrap_or(false);
                p.iter().for_each(|v| covered[v] = true);
            }
            for &(u, v) in &d.k2_pieces {
                ok &= g.has_edge(u, v);
                covered[u] = true;
                covered[v] = true;
            }
            for &v in &d.singletons {
                covered[v] = true;
            }
            ensure!(covered.iter().all(|&c| c), "decomposition misses a vertex");
            ok
        }
        Err(_) => false,
    };
    verdicts_agree(&[("alpha+-stable", plus), ("bistable decomposition", decomposes)])
}

fn negated_konig(g: &Graph, o: &Oracle) -> Outcome {
    let b = bip(g)?;
    let mu = maximum_matching(g, &b).size();
    let alpha = o.alpha(g).map_err(oracle_err)?;
    ensure!(alpha + mu != g.n(), "alpha + mu = n holds (expected to fail)");
    Ok(())
}

const fn claim(name: &'static str, family: Family, min_n: usize, sampled: bool, check: Check) -> Claim {
    Claim {
        name,
        family,
        min_n,
        sampled,
        check,
    }
}

/// Every claim run by default.
pub fn registered_claims() -> Vec<Claim> {
    use Family::*;
    vec![
        claim("konig", Bipartite, 1, true, konig),
        claim("konig-cover", Bipartite, 1, true, konig_cover_claim),
        claim("alpha-minus", Bipartite, 1, true, alpha_minus_claim),
        claim("alpha-plus", ConnectedBipartite, 2, true, alpha_plus_claim),
        claim("alpha-plus-components", Bipartite, 1, true, alpha_plus_any_claim),
        claim("alpha-stable", ConnectedBipartite, 2, true, alpha_stable_claim),
        claim("alpha-stable-components", Bipartite, 1, true, alpha_stable_any_claim),
        claim("bistable", ConnectedBipartite, 4, true, bistable_claim),
        claim("core-not-one", ConnectedBipartite, 2, true, core_not_one),
        claim(
            "chordal-not-alpha-stable",
            ConnectedChordal,
            2,
            false,
            chordal_not_alpha_stable,
        ),
        claim("chordal", Chordal, 1, false, chordal_claim),
        claim("edge-classification", Bipartite, 1, true, edge_classification),
        claim("cores", Bipartite, 1, true, cores),
        claim("spanning-tree", ConnectedBipartite, 1, false, spanning_tree_claim),
        claim("dominating-systems", All, 1, true, dominating_systems),
        claim("no-common-pair", All, 1, true, no_common_pair),
        claim("unique-implies-alpha-minus", All, 1, true, unique_implies_minus),
        claim("pendant-in-some-system", All, 1, true, pendant_in_some_system),
        claim("pendants-in-unique-system", All, 1, true, pendants_in_unique_system),
        claim("component-rules", All, 1, true, disconnected_rules),
        claim("trees", Trees, 2, false, trees_claim),
        claim("strong-unique-independence", Connected, 1, false, strong_unique_claim),
        claim(
            "alpha-stable-subgraph",
            ConnectedBipartite,
            4,
            true,
            alpha_stable_subgraph,
        ),
        claim("alternating-cycles", Bipartite, 2, true, alternating_cycle_pairs),
        claim(
            "disjoint-perfect-matchings",
            Bipartite,
            2,
            false,
            disjoint_matchings_claim,
        ),
        claim(
            "two-cycle-partitions",
            ConnectedBipartite,
            8,
            false,
            two_cycle_partitions,
        ),
        claim(
            "alpha-plus-decomposition",
            ConnectedBipartite,
            1,
            true,
            plus_decomposition,
        ),
    ]
}

/// A deliberately false claim (α + μ ≠ n) for checking that failures are
/// caught and reported. Not run by default.
pub fn self_test_claim() -> Claim {
    claim("self-test", Family::Bipartite, 1, true, negated_konig)
}

pub fn find_claim(name: &str) -> Option<Claim> {
    registered_claims()
        .into_iter()
        .chain([self_test_claim()])
        .find(|c| c.name == name)
}

/// Runs the configured claims: exhaustively up to min(max_n, 8) (trees to
/// 9 when max_n reaches 8), then on `sample` seeded connected bipartite
/// graphs.
pub fn run(cfg: &HarnessConfig) -> Result<HarnessReport> {
    let claims = match &cfg.claims {
        None => registered_claims(),
        Some(names) => names
            .iter()
            .map(|n| find_claim(n).ok_or_else(|| Error::Precondition(format!("unknown claim '{n}'"))))
            .collect::<Result<_>>()?,
    };
    run_claims(&claims, cfg)
}

pub fn run_claims(claims: &[Claim], cfg: &HarnessConfig) -> Result<HarnessReport> {
    if cfg.max_n > MAX_SAMPLED_ORDER {
        return Err(Error::BudgetExceeded {
            what: "max_n",
            actual: cfg.max_n,
            limit: MAX_SAMPLED_ORDER,
        });
    }
    if cfg.max_n > MAX_EXHAUSTIVE_ORDER && cfg.sample == 0 {
        return Err(Error::Precondition(format!(
            "max_n beyond {MAX_EXHAUSTIVE_ORDER} needs a sample count"
        )));
    }
    let samples = if cfg.sample > 0 && cfg.max_n >= 2 {
        sample_connected_bipartite(cfg.seed, cfg.max_n, cfg.sample)?
    } else {
        Vec::new()
    };
    let oracle = harness_oracle();
    let reports = claims
        .iter()
        .map(|c| {
            let top = if c.family == Family::Trees && cfg.max_n >= MAX_EXHAUSTIVE_ORDER {
                c.family.exhaustive_limit()
            } else {
                cfg.max_n.min(c.family.exhaustive_limit())
            };
            let mut instances: Vec<Graph> = (c.min_n.max(1)..=top).flat_map(|n| c.family.members(n)).collect();
            if c.sampled {
                instances.extend(
                    samples
                        .iter()
                        .filter(|g| g.n() >= c.min_n && c.family.contains(g))
                        .cloned(),
                );
            }
            let outcomes: Vec<Outcome> = instances.par_iter().map(|g| (c.check)(g, &oracle)).collect();
            let failure = outcomes.iter().position(|r| r.is_err());
            ClaimReport {
                name: c.name.to_string(),
                instances: instances.len(),
                passed: failure.is_none(),
                counterexample: failure.map(|i| Counterexample {
                    graph: instances[i].clone(),
                    message: outcomes[i].clone().unwrap_err(),
                }),
            }
        })
        .collect();
    Ok(HarnessReport {
        claims: reports,
        seed: cfg.seed,
        max_n: cfg.max_n,
        sample: cfg.sample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(spanning_trees(&c4).len(), 4);
        assert!(has_cycle_partition(&c4));
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!has_cycle_partition(&p4));
        let b = bipartition(&c4).unwrap();
        assert!(hall_surplus(&c4, &b.class_a()));
        let b = bipartition(&p4).unwrap();
        assert!(!hall_surplus(&p4, &b.class_a()));
        assert!(hamiltonian(&c4));
        assert!(!hamiltonian(&p4));
    }

    #[test]
    fn small_run_passes_and_self_test_fails() {
        let cfg = HarnessConfig {
            max_n: 4,
            ..HarnessConfig::default()
        };
        let report = run(&cfg).unwrap();
        for c in &report.claims {
            assert!(c.passed, "{} failed: {:?}", c.name, c.counterexample);
        }
        let neg = run_claims(&[self_test_claim()], &cfg).unwrap();
        assert!(!neg.all_passed());
        assert!(neg.claims[0].counterexample.is_some());
    }

    #[test]
    fn rejects_bad_configs() {
        let too_big = HarnessConfig {
            max_n: 15,
            sample: 10,
            ..HarnessConfig::default()
        };
        assert!(run(&too_big).is_err());
        let unsampled = HarnessConfig {
            max_n: 10,
            ..HarnessConfig::default()
        };
        assert!(run(&unsampled).is_err());
        let unknown = HarnessConfig {
            claims: Some(vec!["nope".into()]),
            ..HarnessConfig::default()
        };
        assert!(run(&unknown).is_err());
    }
}
