use loosecycle::constructions::{build_extremal_example, threshold};
use loosecycle::format::{parse_3g_str, to_3g_string, FormatError};
use loosecycle::harness::{read_jsonl, records_to_csv, run_campaign, same_up_to_timing, ExperimentConfig, HarnessError};
use loosecycle::{GraphError, ThreeGraph};

fn config(text: &str) -> ExperimentConfig {
    ExperimentConfig::from_toml_str(text).unwrap()
}

#[test]
fn threshold_check_up_to_forty() {
    let recs = run_campaign(&config("campaign = \"threshold-check\"\nn = { min = 6, max = 40 }")).unwrap();
    assert_eq!(recs.len(), 18);
    for r in &recs {
        assert!(r.verified, "{r:?}");
        let g = build_extremal_example(r.n).unwrap();
        assert_eq!(r.counters.min_degree, Some(g.graph.min_vertex_degree()));
        assert_eq!(r.counters.threshold, threshold(r.n).ok());
        if r.n <= 12 {
            assert_eq!(r.outcome, "refuted_certificate");
        }
    }
}

#[test]
fn dense_random_graphs_tile_nearly_perfectly() {
    let recs = run_campaign(&config(
        "campaign = \"dichotomy-probe\"\nn = [64]\nedge_prob = 0.55\nseeds = { start = 0, count = 20 }",
    ))
    .unwrap();
    assert_eq!(recs.len(), 20);
    for r in &recs {
        assert!(r.verified);
        assert!(r.counters.uncovered.unwrap() <= 8, "{r:?}");
    }
}

#[test]
fn extremal_suite_solves_h1_plus() {
    let recs = run_campaign(&config(
        "campaign = \"extremal-suite\"\nfamily = \"h1-plus\"\nn = { min = 8, max = 40, step = 4 }",
    ))
    .unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r.outcome == "found" && r.verified), "{recs:?}");
}

#[test]
fn found_implies_verified_and_jsonl_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let mut cfg = config(
        "campaign = \"extremal-suite\"\nfamily = \"random-extremal\"\nn = [24, 32]\nseeds = [0, 1, 2]",
    );
    cfg.output = Some(out.clone());
    let first = run_campaign(&cfg).unwrap();
    assert!(first.iter().filter(|r| r.outcome == "found").all(|r| r.verified));
    assert_eq!(read_jsonl(&out).unwrap(), first);

    // a second run appends, and matches the first apart from timing
    let second = run_campaign(&cfg).unwrap();
    assert!(same_up_to_timing(&first, &second));
    assert_eq!(read_jsonl(&out).unwrap().len(), 2 * first.len());

    let csv = records_to_csv(&first);
    assert_eq!(csv.lines().count(), first.len() + 1);
    assert!(csv.starts_with("id,family,n,seed"));
}

#[test]
fn tiling_bench_never_beats_exact() {
    let recs = run_campaign(&config("campaign = \"tiling-bench\"\nn = [8, 9, 10]\nseeds = [3, 4]")).unwrap();
    for r in &recs {
        assert!(r.verified);
        if let Some(exact) = r.counters.exact_tiling_size {
            assert!(r.counters.tiling_size.unwrap() <= exact);
        }
    }
}

#[test]
fn invalid_configs_are_rejected() {
    for bad in [
        "campaign = \"threshold-check\"\nn = [7]",
        "campaign = \"threshold-check\"\nn = { min = 10, max = 8 }",
        "campaign = \"extremal-suite\"\nn = [16]",
        "campaign = \"dichotomy-probe\"\nn = [16]\nedge_prob = 1.5",
        "campaign = \"dichotomy-probe\"\nn = [16]\nseeds = []",
    ] {
        assert!(matches!(ExperimentConfig::from_toml_str(bad), Err(HarnessError::Config(_))), "{bad}");
    }
    assert!(matches!(
        ExperimentConfig::from_toml_str("campaign = \"nope\"\nn = [6]"),
        Err(HarnessError::Toml(_))
    ));
}

#[test]
fn format_examples() {
    let k6 = ThreeGraph::complete(6);
    assert_eq!(parse_3g_str(&to_3g_string(&k6, &[])).unwrap(), k6);
    assert!(matches!(
        parse_3g_str("3 1\n0 0 1\n"),
        Err(FormatError::Graph { source: GraphError::RepeatedVertex(..), .. })
    ));
    assert!(matches!(
        parse_3g_str("4 2\n0 1 2\n0 1 2\n"),
        Err(FormatError::Graph { source: GraphError::DuplicateEdge(_), .. })
    ));
}
