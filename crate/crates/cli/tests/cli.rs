use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use alphastab::certify::certify_report;
use alphastab::oracle::harness::HarnessReport;
use alphastab::{induced_subgraph, is_alpha_stable, is_bistable, parse_graph};
use alphastab_cli::{metadata, AnalyzeReport, DecomposeReport, EarReport};
use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphastab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_text_and_json() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let out = bin(&["analyze", s(&c4)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("α=2 μ=2"), "{text}");
    assert!(text.contains("α-stable: yes"), "{text}");
    assert!(text.contains("bistable: yes"), "{text}");

    let p4 = write(&dir, "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    let text = stdout(&bin(&["analyze", s(&p4)]));
    assert!(text.contains("α⁺-stable: yes"), "{text}");
    assert!(text.contains("α⁻-stable: no (mandatory edge 0-1)"), "{text}");

    let out = bin(&["analyze", s(&c4), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let raw = stdout(&out);
    let report: AnalyzeReport = serde_json::from_str(&raw).unwrap();
    assert_eq!(
        serde_json::from_str::<AnalyzeReport>(&serde_json::to_string(&report).unwrap()).unwrap(),
        report
    );
    assert_eq!(report.konig_identity, Some(true));
    assert!(report.certificates.verified);
    let value: serde_json::Value = serde_json::from_str(&raw).unwrap();
    for key in ["input", "class", "alpha", "mu", "verdicts", "certificates", "timing"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn analyze_other_class_and_errors() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let text = stdout(&bin(&["analyze", s(&c5)]));
    assert!(text.contains("class: other"), "{text}");
    assert!(text.contains("exact search"), "{text}");

    let garbage = write(&dir, "bad.txt", "3 2\n0 1\n");
    let out = bin(&["analyze", s(&garbage)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(bin(&["analyze", "/nonexistent/graph.txt"]).status.code(), Some(2));

    // C17 is neither bipartite nor chordal and too large for exact search
    let edges: String = (0..17).map(|i| format!("{} {}\n", i, (i + 1) % 17)).collect();
    let c17 = write(&dir, "c17.txt", &format!("17 17\n{edges}"));
    assert_eq!(bin(&["analyze", s(&c17)]).status.code(), Some(3));
}

#[test]
fn decompose_and_ears() {
    let dir = TempDir::new().unwrap();
    let c4 = write(&dir, "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let text = stdout(&bin(&["decompose", s(&c4), "--ears"]));
    assert_eq!(text, "base 0-1\near (0,[3,2],1)\n");
    let ears: EarReport = serde_json::from_str(&stdout(&bin(&["decompose", s(&c4), "--ears", "--json"]))).unwrap();
    assert_eq!(ears.base_edge, (0, 1));

    let p4 = write(&dir, "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    let text = stdout(&bin(&["decompose", s(&p4)]));
    assert_eq!(text, "pieces: none\nk2: 0-1 2-3\n");

    let p3 = write(&dir, "p3.txt", "3 2\n0 1\n1 2\n");
    let out = bin(&["decompose", s(&p3)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no perfect matching"));
    assert_eq!(bin(&["decompose", s(&p4), "--ears"]).status.code(), Some(3));

    // two C4s joined by a bridge: the pieces re-verify on their own
    let g = write(&dir, "two.txt", "8 9\n0 1\n1 2\n2 3\n3 0\n4 5\n5 6\n6 7\n7 4\n1 4\n");
    let d: DecomposeReport = serde_json::from_str(&stdout(&bin(&["decompose", s(&g), "--json"]))).unwrap();
    assert_eq!(d.pieces.len(), 2);
    let graph = parse_graph(&std::fs::read_to_string(&g).unwrap()).unwrap().graph;
    for p in &d.pieces {
        assert!(is_bistable(&induced_subgraph(&graph, p).unwrap().graph).unwrap().holds);
    }
}

#[test]
fn generate_then_analyze() {
    let dir = TempDir::new().unwrap();
    let cases: &[&[&str]] = &[
        &["cycle", "6"],
        &["complete-bipartite", "3", "3"],
        &["path", "6"],
        &["tree", "9", "--seed", "4"],
        &["ear-growth", "8", "--seed", "7"],
        &["substitute", "--template", "c4", "--pieces", "c4,c4"],
        &[
            "substitute",
            "--template",
            "k3x3",
            "--pieces",
            "c4,ear6,k2x2",
            "--seed",
            "11",
        ],
        &["union", "--pieces", "c4,c4"],
        &["union", "--pieces", "c4,p4", "--bridges", "0:0-1:0"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let mut full = vec!["generate"];
        full.extend_from_slice(args);
        let out = bin(&full);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = stdout(&out);
        let meta = metadata(&text);
        let get = |k: &str| meta.iter().find(|(key, _)| key == k).map(|(_, v)| v.clone());
        assert_eq!(get("family").as_deref(), Some(args[0]));
        let path = write(&dir, &format!("g{i}.txt"), &text);
        let report: AnalyzeReport = serde_json::from_str(&stdout(&bin(&["analyze", s(&path), "--json"]))).unwrap();
        assert_eq!(
            get("alpha_stable"),
            Some(report.verdicts.alpha_stable.to_string()),
            "{args:?}"
        );
        assert_eq!(
            get("alpha_minus"),
            Some(report.verdicts.alpha_minus.to_string()),
            "{args:?}"
        );
        assert_eq!(
            get("alpha_plus"),
            Some(report.verdicts.alpha_plus.to_string()),
            "{args:?}"
        );
        assert_eq!(
            get("bistable"),
            report.verdicts.bistable.map(|b| b.to_string()),
            "{args:?}"
        );
        let g = parse_graph(&text).unwrap().graph;
        certify_report(&g, &is_alpha_stable(&g).unwrap()).unwrap();
    }

    let text = stdout(&bin(&["generate", "ear-growth", "8", "--seed", "7"]));
    assert!(text.contains("# seed=7"));
    assert!(text.contains("# bistable=true"));
    let text = stdout(&bin(&[
        "generate",
        "substitute",
        "--template",
        "c4",
        "--pieces",
        "c4,c4",
    ]));
    assert!(text.contains("# bistable=true"));
    assert_eq!(parse_graph(&text).unwrap().graph.n(), 8);

    for bad in [
        &["cycle", "5"][..],
        &["cycle"],
        &["hypercube", "3"],
        &["ear-growth", "7"],
        &["substitute", "--template", "p4", "--pieces", "c4,c4"],
        &["union", "--pieces", "c4,c4", "--bridges", "0:0-1:1,0:1-1:1"],
    ] {
        let mut full = vec!["generate"];
        full.extend_from_slice(bad);
        assert_eq!(bin(&full).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn verify_subsets_and_exit_codes() {
    let out = bin(&["verify", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = bin(&["verify", "--max-n", "6", "--claims", "konig,bistable", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: HarnessReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.claims.len(), 2);
    assert!(report.claims.iter().all(|c| c.passed && c.instances > 0));

    let out = bin(&["verify", "--max-n", "6", "--claims", "self-test", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: HarnessReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.claims[0].counterexample.is_some());

    let a = stdout(&bin(&[
        "verify",
        "--max-n",
        "12",
        "--sample",
        "30",
        "--seed",
        "3",
        "--claims",
        "konig,alpha-plus",
        "--json",
    ]));
    let b = stdout(&bin(&[
        "verify",
        "--max-n",
        "12",
        "--sample",
        "30",
        "--seed",
        "3",
        "--claims",
        "konig,alpha-plus",
        "--json",
    ]));
    assert_eq!(a, b);

    assert_eq!(
        bin(&["verify", "--max-n", "15", "--sample", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(bin(&["verify", "--max-n", "10"]).status.code(), Some(2));
    assert_eq!(bin(&["verify", "--claims", "nope"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}
