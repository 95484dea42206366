//! Commands behind the `alphastab` binary. Each returns its output text or
//! a [`Failure`] carrying the exit code.

use std::fmt::Write as _;
use std::time::Instant;

use alphastab::certify::{certify_decomposition, certify_ears, certify_report};
use alphastab::generators::{
    complete_bipartite, ear_growth, even_cycle, path, random_tree, substitute, union_connect, Bridge, PortRule,
};
use alphastab::graph::{Edge, ParsedGraph};
use alphastab::oracle::harness::{self, HarnessConfig, HarnessReport};
use alphastab::stability::{
    AlphaMinusCertificate, AlphaPlusCertificate, AlternatingCycleCover, BistableCertificate, ComponentSummary, Ear,
    GraphClass,
};
use alphastab::{
    bipartition, bistable_decomposition, ear_decomposition, has_perfect_matching, is_alpha_stable, parse_graph,
    write_graph, Error, Graph, VertexSet,
};
use serde::{Deserialize, Serialize};

pub const EXIT_CLAIM_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn unsupported(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_UNSUPPORTED,
            message: message.into(),
        }
    }
}

pub type Outcome<T = String> = Result<T, Failure>;

pub fn load(path: &str) -> Outcome<ParsedGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
    parse_graph(&text).map_err(|e| Failure::input(format!("{path}: {e}")))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// ---- analyze ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub alpha_minus: bool,
    pub alpha_plus: bool,
    pub alpha_stable: bool,
    pub bistable: Option<bool>,
    pub degenerate_k2: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificates {
    pub alpha_minus: AlphaMinusCertificate,
    pub alpha_plus: AlphaPlusCertificate,
    pub alternating_cycles: Option<AlternatingCycleCover>,
    pub bistable: Option<BistableCertificate>,
    /// Whether every certificate re-checked against the input.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub analysis_ms: f64,
    pub verification_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub input: String,
    pub n: usize,
    pub edge_count: usize,
    pub duplicate_edges: usize,
    pub class: GraphClass,
    pub alpha: usize,
    pub mu: Option<usize>,
    /// α + μ = n, checked on bipartite graphs only.
    pub konig_identity: Option<bool>,
    pub verdicts: Verdicts,
    pub certificates: Certificates,
    pub per_component: Vec<ComponentSummary>,
    pub timing: Timing,
}

pub fn analyze(input: &str, parsed: &ParsedGraph) -> Outcome<AnalyzeReport> {
    let g = &parsed.graph;
    let start = Instant::now();
    let r = is_alpha_stable(g).map_err(|e| match e {
        Error::UnsupportedClass { .. } => Failure::unsupported(e.to_string()),
        other => Failure::input(other.to_string()),
    })?;
    let analysis_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let verified = certify_report(g, &r).is_ok();
    let verification_ms = start.elapsed().as_secs_f64() * 1e3;
    let konig_identity = match (r.class, r.mu) {
        (GraphClass::Bipartite, Some(mu)) => Some(r.alpha + mu == r.n),
        _ => None,
    };
    Ok(AnalyzeReport {
        input: input.to_string(),
        n: r.n,
        edge_count: r.edge_count,
        duplicate_edges: parsed.duplicate_edges,
        class: r.class,
        alpha: r.alpha,
        mu: r.mu,
        konig_identity,
        verdicts: Verdicts {
            alpha_minus: r.alpha_minus.holds,
            alpha_plus: r.alpha_plus.holds,
            alpha_stable: r.alpha_stable.holds,
            bistable: r.bistable.as_ref().map(|v| v.holds),
            degenerate_k2: r.bistable.as_ref().is_some_and(|v| v.degenerate_k2),
        },
        certificates: Certificates {
            alpha_minus: r.alpha_minus.certificate,
            alpha_plus: r.alpha_plus.certificate,
            alternating_cycles: r.alpha_stable.cycles,
            bistable: r.bistable.map(|v| v.certificate),
            verified,
        },
        per_component: r.per_component,
        timing: Timing {
            analysis_ms,
            verification_ms,
        },
    })
}

fn edge_text(e: Edge) -> String {
    format!("{}-{}", e.0, e.1)
}

fn set_text(s: &VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn minus_reason(c: &AlphaMinusCertificate) -> String {
    match c {
        AlphaMinusCertificate::NoMandatoryEdge { .. } => "no mandatory edge".into(),
        AlphaMinusCertificate::MandatoryEdge { edge } => format!("mandatory edge {}", edge_text(*edge)),
        AlphaMinusCertificate::UniqueStabilitySystem { system } => {
            format!("2-dominating stability system {}", set_text(system))
        }
        AlphaMinusCertificate::UnderDominated { system, witness } => format!(
            "vertex {} has {} neighbor(s) in stability system {}",
            witness.vertex,
            witness.count,
            set_text(system)
        ),
        AlphaMinusCertificate::Oracle { violating_edge: None } => "exact search".into(),
        AlphaMinusCertificate::Oracle {
            violating_edge: Some(e),
        } => {
            format!("deleting {} raises alpha (exact search)", edge_text(*e))
        }
    }
}

fn plus_reason(c: &AlphaPlusCertificate) -> String {
    match c {
        AlphaPlusCertificate::NearPerfectMatching { matching } => {
            let edges: Vec<String> = matching.edges().iter().map(|&e| edge_text(e)).collect();
            format!("matching {}", edges.join(" "))
        }
        AlphaPlusCertificate::SmallCore { core } => format!("common core {}", set_text(core)),
        AlphaPlusCertificate::CommonPair { pair, .. } => {
            format!("{} and {} lie in every stability system", pair.0, pair.1)
        }
        AlphaPlusCertificate::Oracle {
            violating_non_edge: None,
        } => "exact search".into(),
        AlphaPlusCertificate::Oracle {
            violating_non_edge: Some(e),
        } => {
            format!("adding {} lowers alpha (exact search)", edge_text(*e))
        }
    }
}

fn bistable_reason(c: &BistableCertificate) -> String {
    match c {
        BistableCertificate::Elementary { ears, .. } => {
            let k = ears.ears.len();
            format!("{k} ear{}", if k == 1 { "" } else { "s" })
        }
        BistableCertificate::TooSmall { n } => format!("only {n} vertices"),
        BistableCertificate::ThirdSystem { set, reason } => {
            let why = match reason {
                alphastab::stability::ThirdSystemReason::NoPerfectMatching => "no perfect matching".to_string(),
                alphastab::stability::ThirdSystemReason::Disconnected => "disconnected".to_string(),
                alphastab::stability::ThirdSystemReason::ForbiddenEdge { edge } => {
                    format!("edge {} in no perfect matching", edge_text(*edge))
                }
            };
            format!("{why}; stable set {}", set_text(set))
        }
    }
}

pub fn render_analysis(r: &AnalyzeReport) -> String {
    let mut out = String::new();
    let class = match r.class {
        GraphClass::Bipartite => "bipartite",
        GraphClass::Chordal => "chordal",
        GraphClass::Other => "other",
    };
    let _ = writeln!(out, "input: {}", r.input);
    let _ = writeln!(out, "vertices: {}  edges: {}  class: {class}", r.n, r.edge_count);
    if r.duplicate_edges > 0 {
        let _ = writeln!(out, "duplicate edges ignored: {}", r.duplicate_edges);
    }
    let mu = r.mu.map_or("-".to_string(), |m| m.to_string());
    let _ = write!(out, "α={} μ={mu}", r.alpha);
    if let Some(k) = r.konig_identity {
        let _ = write!(out, "  α+μ=n: {}", yes(k));
    }
    out.push('\n');
    let v = &r.verdicts;
    let c = &r.certificates;
    let _ = writeln!(
        out,
        "α⁻-stable: {} ({})",
        yes(v.alpha_minus),
        minus_reason(&c.alpha_minus)
    );
    let _ = writeln!(out, "α⁺-stable: {} ({})", yes(v.alpha_plus), plus_reason(&c.alpha_plus));
    let _ = writeln!(out, "α-stable: {}", yes(v.alpha_stable));
    if let (Some(b), Some(cert)) = (v.bistable, &c.bistable) {
        let k2 = if v.degenerate_k2 { ", K₂" } else { "" };
        let _ = writeln!(out, "bistable: {}{k2} ({})", yes(b), bistable_reason(cert));
    }
    if r.per_component.len() > 1 {
        let _ = writeln!(out, "components: {}", r.per_component.len());
        for s in &r.per_component {
            let _ = writeln!(
                out,
                "  {}: α={} α⁻ {} α⁺ {} α-stable {}",
                set_text(&s.vertices),
                s.alpha,
                yes(s.alpha_minus),
                yes(s.alpha_plus),
                yes(s.alpha_stable)
            );
        }
    }
    let _ = writeln!(out, "certificates verified: {}", yes(c.verified));
    out
}

pub fn cmd_analyze(path: &str, as_json: bool) -> Outcome {
    let parsed = load(path)?;
    let report = analyze(path, &parsed)?;
    Ok(if as_json {
        json(&report)
    } else {
        render_analysis(&report)
    })
}

// ---- decompose ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub input: String,
    pub pieces: Vec<VertexSet>,
    pub k2: Vec<Edge>,
    pub singletons: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarReport {
    pub input: String,
    pub base_edge: Edge,
    pub ears: Vec<Ear>,
}

fn precondition(g: &Graph, e: Error) -> Failure {
    let mut msg = format!("precondition failed: {e}");
    if let Ok(b) = bipartition(g) {
        if !has_perfect_matching(g, &b) {
            msg.push_str(" (no perfect matching)");
        }
    }
    Failure::unsupported(msg)
}

pub fn cmd_decompose(path: &str, ears: bool, as_json: bool) -> Outcome {
    let g = load(path)?.graph;
    if ears {
        let d = ear_decomposition(&g).map_err(|e| precondition(&g, e))?;
        certify_ears(&g, &d).map_err(|e| Failure {
            code: EXIT_CLAIM_FAILED,
            message: e.to_string(),
        })?;
        let report = EarReport {
            input: path.to_string(),
            base_edge: d.base_edge,
            ears: d.ears,
        };
        if as_json {
            return Ok(json(&report));
        }
        let mut out = format!("base {}\n", edge_text(report.base_edge));
        for ear in &report.ears {
            let inner: Vec<String> = ear.internal.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "ear ({},[{}],{})", ear.start, inner.join(","), ear.end);
        }
        return Ok(out);
    }
    let d = bistable_decomposition(&g).map_err(|e| precondition(&g, e))?;
    certify_decomposition(&g, &d).map_err(|e| Failure {
        code: EXIT_CLAIM_FAILED,
        message: e.to_string(),
    })?;
    let report = DecomposeReport {
        input: path.to_string(),
        pieces: d.pieces,
        k2: d.k2_pieces,
        singletons: d.singletons,
    };
    if as_json {
        return Ok(json(&report));
    }
    let mut out = String::new();
    if report.pieces.is_empty() {
        out.push_str("pieces: none\n");
    }
    for p in &report.pieces {
        let _ = writeln!(out, "piece {}", set_text(p));
    }
    let k2: Vec<String> = report.k2.iter().map(|&e| edge_text(e)).collect();
    let _ = writeln!(out, "k2: {}", if k2.is_empty() { "none".into() } else { k2.join(" ") });
    if let Some(v) = report.singletons.first() {
        let _ = writeln!(out, "isolated: {v}");
    }
    Ok(out)
}

// ---- generate ----

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenerateArgs {
    pub family: String,
    pub params: Vec<String>,
    pub seed: Option<u64>,
    pub template: Option<String>,
    pub pieces: Option<String>,
    pub bridges: Option<String>,
}

fn number(s: &str, what: &str) -> Outcome<usize> {
    s.parse()
        .map_err(|_| Failure::input(format!("{what}: expected a non-negative integer, got {s:?}")))
}

fn bad(e: Error) -> Failure {
    Failure::input(e.to_string())
}

/// Named small graphs: `c<k>`, `p<k>`, `k<p>x<q>`, `ear<n>` (grown from the
/// given seed), `t<k>` (random tree from the seed).
pub fn named_graph(spec: &str, seed: u64) -> Outcome<Graph> {
    let spec = spec.trim();
    let fail = || Failure::input(format!("unknown graph name {spec:?}"));
    if let Some(rest) = spec.strip_prefix("ear") {
        return ear_growth(seed, number(rest, spec)?).map(|g| g.graph).map_err(bad);
    }
    if let Some(rest) = spec.strip_prefix('k') {
        let (p, q) = rest.split_once('x').ok_or_else(fail)?;
        return complete_bipartite(number(p, spec)?, number(q, spec)?).map_err(bad);
    }
    if let Some(rest) = spec.strip_prefix('c') {
        return even_cycle(number(rest, spec)?).map_err(bad);
    }
    if let Some(rest) = spec.strip_prefix('p') {
        return path(number(rest, spec)?).map_err(bad);
    }
    if let Some(rest) = spec.strip_prefix('t') {
        return random_tree(number(rest, spec)?, seed).map_err(bad);
    }
    Err(fail())
}

fn piece_list(args: &GenerateArgs, seed: u64) -> Outcome<Vec<Graph>> {
    let list = args
        .pieces
        .as_deref()
        .ok_or_else(|| Failure::input("--pieces is required"))?;
    list.split(',')
        .enumerate()
        .map(|(i, s)| named_graph(s, seed.wrapping_add(i as u64)))
        .collect()
}

/// Bridges written `piece:vertex-piece:vertex`, comma separated.
fn parse_bridges(text: &str) -> Outcome<Vec<Bridge>> {
    let end = |s: &str| -> Outcome<(usize, usize)> {
        let (p, v) = s
            .split_once(':')
            .ok_or_else(|| Failure::input(format!("bridge end {s:?} is not piece:vertex")))?;
        Ok((number(p, "bridge piece")?, number(v, "bridge vertex")?))
    };
    text.split(',')
        .map(|b| {
            let (x, y) = b
                .split_once('-')
                .ok_or_else(|| Failure::input(format!("bridge {b:?} is not piece:vertex-piece:vertex")))?;
            Ok((end(x)?, end(y)?))
        })
        .collect()
}

fn params_exact<'a>(args: &'a GenerateArgs, count: usize, usage: &str) -> Outcome<&'a [String]> {
    if args.params.len() != count {
        return Err(Failure::input(format!("usage: generate {} {usage}", args.family)));
    }
    Ok(&args.params)
}

pub fn cmd_generate(args: &GenerateArgs) -> Outcome {
    let mut meta: Vec<(String, String)> = vec![("family".into(), args.family.clone())];
    if !args.params.is_empty() {
        meta.push(("params".into(), args.params.join(",")));
    }
    let seed = args.seed.unwrap_or(0);
    let graph = match args.family.as_str() {
        "cycle" => even_cycle(number(&params_exact(args, 1, "<k>")?[0], "k")?).map_err(bad)?,
        "complete-bipartite" => {
            let p = params_exact(args, 2, "<p> <q>")?;
            complete_bipartite(number(&p[0], "p")?, number(&p[1], "q")?).map_err(bad)?
        }
        "path" => path(number(&params_exact(args, 1, "<k>")?[0], "k")?).map_err(bad)?,
        "tree" => {
            meta.push(("seed".into(), seed.to_string()));
            random_tree(number(&params_exact(args, 1, "<k>")?[0], "k")?, seed).map_err(bad)?
        }
        "ear-growth" => {
            meta.push(("seed".into(), seed.to_string()));
            let grown = ear_growth(seed, number(&params_exact(args, 1, "<n>")?[0], "n")?).map_err(bad)?;
            meta.push(("ears".into(), grown.ears.ears.len().to_string()));
            grown.graph
        }
        "substitute" => {
            params_exact(args, 0, "--template <name> --pieces <name,...>")?;
            let template = args
                .template
                .as_deref()
                .ok_or_else(|| Failure::input("--template is required"))?;
            let pieces = piece_list(args, seed)?;
            let rule = match args.seed {
                Some(s) => {
                    meta.push(("seed".into(), s.to_string()));
                    PortRule::Seeded(s)
                }
                None => PortRule::LowestId,
            };
            meta.push(("template".into(), template.to_string()));
            meta.push(("pieces".into(), args.pieces.clone().unwrap_or_default()));
            substitute(&named_graph(template, seed)?, &pieces, rule)
                .map_err(bad)?
                .graph
        }
        "union" => {
            params_exact(args, 0, "--pieces <name,...> [--bridges p:v-q:w,...]")?;
            let pieces = piece_list(args, seed)?;
            let bridges = match &args.bridges {
                Some(text) => parse_bridges(text)?,
                None => (1..pieces.len()).map(|j| ((j - 1, 0), (j, 0))).collect(),
            };
            meta.push(("pieces".into(), args.pieces.clone().unwrap_or_default()));
            let u = union_connect(&pieces, &bridges).map_err(bad)?;
            let offsets: Vec<String> = u.offsets.iter().map(|o| o.to_string()).collect();
            meta.push(("offsets".into(), offsets.join(",")));
            u.graph
        }
        other => {
            return Err(Failure::input(format!(
            "unknown family {other:?}; expected cycle, complete-bipartite, path, tree, ear-growth, substitute or union"
        )))
        }
    };
    let r = is_alpha_stable(&graph).map_err(bad)?;
    certify_report(&graph, &r).map_err(|e| Failure {
        code: EXIT_CLAIM_FAILED,
        message: e.to_string(),
    })?;
    meta.push(("alpha".into(), r.alpha.to_string()));
    meta.push(("alpha_minus".into(), r.alpha_minus.holds.to_string()));
    meta.push(("alpha_plus".into(), r.alpha_plus.holds.to_string()));
    meta.push(("alpha_stable".into(), r.alpha_stable.holds.to_string()));
    if let Some(b) = &r.bistable {
        meta.push(("bistable".into(), b.holds.to_string()));
    }
    let mut out = String::new();
    for (k, v) in meta {
        let _ = writeln!(out, "# {k}={v}");
    }
    out.push_str(&write_graph(&graph));
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}

/// Reads the `# key=value` lines at the top of a generated file.
pub fn metadata(text: &str) -> Vec<(String, String)> {
    text.lines()
        .map_while(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

// ---- verify ----

pub fn verify(cfg: &HarnessConfig) -> Outcome<HarnessReport> {
    harness::run(cfg).map_err(|e| Failure::input(e.to_string()))
}

pub fn render_verification(r: &HarnessReport) -> String {
    let mut out = String::new();
    let width = r.claims.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.claims {
        let status = if c.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{:<width$}  {:>6}  {status}", c.name, c.instances);
        if let Some(ce) = &c.counterexample {
            let _ = writeln!(out, "  {}", ce.message);
            for line in write_graph(&ce.graph).lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    let passed = r.claims.iter().filter(|c| c.passed).count();
    let _ = writeln!(
        out,
        "{passed}/{} claims passed (max_n={}, sample={}, seed={})",
        r.claims.len(),
        r.max_n,
        r.sample,
        r.seed
    );
    out
}

/// Output text plus exit code: 0 when every claim passes, 1 otherwise.
pub fn cmd_verify(cfg: &HarnessConfig, as_json: bool) -> Outcome<(String, u8)> {
    let report = verify(cfg)?;
    let code = if report.all_passed() { 0 } else { EXIT_CLAIM_FAILED };
    let text = if as_json {
        json(&report)
    } else {
        render_verification(&report)
    };
    Ok((text, code))
}
