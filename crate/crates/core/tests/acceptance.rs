//! The ten acceptance criteria, one PASS/FAIL line each. Runs with its own
//! main so the lines print without `--nocapture`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use alphastab::certify::{certify_bistable, certify_ears, certify_report};
use alphastab::generators::{ear_growth, even_cycle, path, substitute, union_connect, Bridge, PortRule};
use alphastab::oracle::harness::{run, HarnessConfig};
use alphastab::oracle::Oracle;
use alphastab::{bipartition, ear_decomposition, is_alpha_minus, is_alpha_plus, is_alpha_stable, is_bistable, Graph};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_917;

fn claims(names: &[&str], max_n: usize, sample: usize) -> Outcome {
    let report = run(&HarnessConfig {
        max_n,
        claims: Some(names.iter().map(|s| s.to_string()).collect()),
        seed: SEED,
        sample,
    })
    .map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for c in &report.claims {
        if let Some(ce) = &c.counterexample {
            return Err(format!(
                "{}: {} on {} vertices {:?}",
                c.name,
                ce.message,
                ce.graph.n(),
                ce.graph.edges()
            ));
        }
        summary.push(format!("{} x{}", c.name, c.instances));
    }
    Ok(summary.join(", "))
}

fn konig() -> Outcome {
    claims(&["konig"], 14, 1000)
}

fn alpha_minus() -> Outcome {
    claims(&["alpha-minus", "dominating-systems"], 8, 0)
}

fn alpha_plus() -> Outcome {
    claims(&["alpha-plus", "alpha-plus-components"], 8, 0)
}

fn alpha_stable() -> Outcome {
    claims(&["alpha-stable", "alpha-stable-components"], 8, 0)
}

fn bistable() -> Outcome {
    claims(&["bistable"], 8, 0)
}

fn negative_sweeps() -> Outcome {
    claims(&["core-not-one", "chordal-not-alpha-stable"], 8, 0)
}

fn holds_bistable(g: &Graph) -> bool {
    is_bistable(g).map(|v| v.holds).unwrap_or(false)
}

fn constructive() -> Outcome {
    let mut rng = alphastab::generators::rng_from_seed(SEED);
    for seed in 0..500u64 {
        let target = 2 + 2 * (seed as usize % 20);
        let grown = ear_growth(seed, target).map_err(|e| e.to_string())?;
        let g = &grown.graph;
        let fail = |what: &str| format!("ear_growth seed {seed}: {what}");
        grown.ears.check_reconstructs(g).map_err(|e| fail(&e))?;
        let v = is_bistable(g).map_err(|e| e.to_string())?;
        certify_bistable(g, &v).map_err(|e| fail(&e.to_string()))?;
        if !v.holds {
            return Err(fail("grown graph is not bistable"));
        }
        let d = ear_decomposition(g).map_err(|e| fail(&e.to_string()))?;
        certify_ears(g, &d).map_err(|e| fail(&e.to_string()))?;
        if let Some(i) = d.prefixes().iter().position(|p| !holds_bistable(&p.graph)) {
            return Err(fail(&format!("prefix {i} is not bistable")));
        }
    }

    for trial in 0..500u64 {
        let p = rng.gen_range(2..=4);
        let template = ear_growth(rng.gen(), 2 * p).map_err(|e| e.to_string())?.graph;
        let pieces: Vec<Graph> = (0..p)
            .map(|_| ear_growth(rng.gen(), 2 * rng.gen_range(1..=5)).map(|x| x.graph))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let rule = if trial % 5 == 0 {
            PortRule::LowestId
        } else {
            PortRule::Seeded(rng.gen())
        };
        let c = substitute(&template, &pieces, rule).map_err(|e| format!("substitute trial {trial}: {e}"))?;
        let v = is_bistable(&c.graph).map_err(|e| e.to_string())?;
        certify_bistable(&c.graph, &v).map_err(|e| format!("substitute trial {trial}: {e}"))?;
        if !(c.bistable && v.holds) {
            return Err(format!("substitute trial {trial}: result not bistable"));
        }
    }

    for trial in 0..500u64 {
        let k = rng.gen_range(2..=4);
        let pieces: Vec<Graph> = (0..k)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    even_cycle(2 * rng.gen_range(2..=5))
                } else {
                    ear_growth(rng.gen(), 2 * rng.gen_range(2..=5)).map(|x| x.graph)
                }
            })
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        // a random tree of bridges keeps the union bipartite and connected
        let bridges: Vec<Bridge> = (1..k)
            .map(|j| {
                let i = rng.gen_range(0..j);
                (
                    (i, rng.gen_range(0..pieces[i].n())),
                    (j, rng.gen_range(0..pieces[j].n())),
                )
            })
            .collect();
        let u = union_connect(&pieces, &bridges).map_err(|e| format!("union trial {trial}: {e}"))?;
        let r = is_alpha_stable(&u.graph).map_err(|e| e.to_string())?;
        certify_report(&u.graph, &r).map_err(|e| format!("union trial {trial}: {e}"))?;
        if !(u.alpha_stable && u.alpha_plus && r.alpha_stable.holds) {
            return Err(format!("union trial {trial}: result not alpha-stable"));
        }
    }
    Ok("500 ear-growth, 500 substitute, 500 union trials".into())
}

fn chordal() -> Outcome {
    claims(&["chordal"], 8, 0)
}

fn edge_classification() -> Outcome {
    claims(&["edge-classification"], 14, 1000)
}

fn named_instances() -> Outcome {
    let oracle = Oracle::default();
    let check = |name: &str, ok: bool| if ok { Ok(()) } else { Err(format!("{name} failed")) };
    let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
    let systems = oracle.enumerate_maximum_stable_sets(&k33).map_err(|e| e.to_string())?;
    let b = bipartition(&k33).unwrap();
    check(
        "K3,3",
        is_alpha_minus(&k33).unwrap().holds
            && oracle.def_alpha_minus(&k33).unwrap()
            && systems == vec![b.class_a(), b.class_b()],
    )?;

    let c6_chord = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
    check(
        "C6 plus a chord",
        is_alpha_minus(&c6_chord).unwrap().holds && oracle.def_alpha_minus(&c6_chord).unwrap(),
    )?;

    for k in (2..=14).step_by(2) {
        let p = path(k).unwrap();
        check(
            &format!("P{k}"),
            is_alpha_plus(&p).unwrap().holds && oracle.def_alpha_plus(&p).unwrap(),
        )?;
    }
    for k in (4..=14).step_by(2) {
        let c = even_cycle(k).unwrap();
        check(
            &format!("C{k}"),
            is_alpha_stable(&c).unwrap().alpha_stable.holds && oracle.def_alpha_stable(&c).unwrap(),
        )?;
    }
    Ok("K3,3, C6 plus chord, P2..P14, C4..C14".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Konig identity", konig),
        ("alpha- equivalence", alpha_minus),
        ("alpha+ equivalence", alpha_plus),
        ("alpha-stable equivalence", alpha_stable),
        ("bistable equivalence", bistable),
        ("negative structure sweeps", negative_sweeps),
        ("constructive round-trips", constructive),
        ("chordal path", chordal),
        ("differential edge classification", edge_classification),
        ("named instances", named_instances),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
