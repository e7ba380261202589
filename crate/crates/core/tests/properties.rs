use proptest::prelude::*;

use loosecycle::constructions::threshold;
use loosecycle::format::{parse_3g, parse_3g_str, to_3g_string, write_3g};
use loosecycle::hypergraph::binom2;
use loosecycle::loose::verify_loose_hamilton_cycle;
use loosecycle::search::{find_loose_hamilton_cycle, SearchOptions, SearchResult};
use loosecycle::tiling::{
    exact_max_y_tiling, extend_to_maximal, find_forbidden_configuration, greedy_max_y_tiling, is_y_free, max_codegree_le_one,
    YTiling,
};
use loosecycle::tripartite::{greedy_tripartite_path, random_tripartite};
use loosecycle::{check_certificate, ThreeGraph, VertexSet};

/// A graph on `n` vertices whose triples are kept when their byte is below `cut`.
fn graph(n_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ThreeGraph> {
    (n_range, any::<u8>(), prop::collection::vec(any::<u8>(), 220)).prop_map(|(n, cut, bytes)| {
        let mut kept = Vec::new();
        let mut i = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if bytes[i] < cut {
                        kept.push((a, b, c));
                    }
                    i += 1;
                }
            }
        }
        ThreeGraph::new(n, kept).unwrap()
    })
}

fn even_graph(ns: &'static [usize]) -> impl Strategy<Value = ThreeGraph> {
    graph(4..=12).prop_filter("even n from the list", move |h| ns.contains(&h.n()))
}

fn decision(r: &SearchResult) -> Option<bool> {
    match r {
        SearchResult::Found(_) => Some(true),
        SearchResult::RefutedExhaustive | SearchResult::RefutedCertificate(_) => Some(false),
        SearchResult::BudgetExceeded(_) => None,
    }
}

proptest! {
    #[test]
    fn handshake_and_links(h in graph(3..=12), bits in any::<u16>()) {
        let n = h.n();
        let e = h.num_edges();
        prop_assert_eq!((0..n).map(|v| h.degree(v)).sum::<usize>(), 3 * e);
        let mut co = 0;
        for u in 0..n {
            for v in u + 1..n {
                co += h.codegree(u, v).unwrap();
            }
        }
        prop_assert_eq!(co, 3 * e);
        let b = VertexSet::from_slice(n, &(0..n).filter(|v| bits >> v & 1 == 1).collect::<Vec<_>>());
        for v in 0..n {
            prop_assert_eq!(h.link_graph(v).unwrap().num_edges(), h.degree(v));
            prop_assert_eq!(h.deg_into(v, &b) as i64 + h.deg_into_complement(v, &b), binom2(b.len()) as i64);
        }
    }

    #[test]
    fn text_round_trip(h in graph(3..=12)) {
        let back = parse_3g_str(&to_3g_string(&h, &["generated".to_string()])).unwrap();
        prop_assert_eq!(&back, &h);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.3g");
        write_3g(&h, &path).unwrap();
        prop_assert_eq!(parse_3g(&path).unwrap(), h);
    }

    #[test]
    fn tiling_bounds_and_y_free_equivalence(h in graph(4..=11), seed in any::<u64>()) {
        let greedy = greedy_max_y_tiling(&h, seed);
        prop_assert!(greedy.validate(&h).is_ok());
        let exact = exact_max_y_tiling(&h, 5_000_000);
        prop_assert!(exact.tiling.validate(&h).is_ok());
        if exact.optimal {
            prop_assert!(greedy.len() <= exact.tiling.len());
            prop_assert_eq!(is_y_free(&h), exact.tiling.is_empty());
        }
        prop_assert_eq!(is_y_free(&h), max_codegree_le_one(&h));
    }

    #[test]
    fn augmentation_strictly_improves(h in graph(8..=12), order in Just((0..12).collect::<Vec<usize>>()).prop_shuffle()) {
        let order: Vec<usize> = order.into_iter().filter(|&v| v < h.n()).collect();
        let mut t = YTiling::default();
        extend_to_maximal(&h, &mut t, &order);
        if let Some(imp) = find_forbidden_configuration(&h, &t) {
            prop_assert!(imp.tiling.validate(&h).is_ok());
            prop_assert!(imp.tiling.len() > t.len());
        }
    }

    #[test]
    fn tripartite_path_shape(m in 2usize..7, p in 0.3f64..1.0, seed in any::<u64>()) {
        let (h, parts) = random_tripartite(m, p, seed);
        let run = greedy_tripartite_path(&h, [&parts[0], &parts[1], &parts[2]], 0.3, 0.1).unwrap();
        prop_assert!(verify_loose_path_or_empty(&h, &run.path.seq));
        for (i, &v) in run.path.seq.iter().enumerate() {
            let part = match i % 4 {
                0 => 0,
                2 => 2,
                _ => 1,
            };
            prop_assert!(parts[part].contains(v));
        }
        prop_assert_eq!(run.omitted, 4 * m - run.path.seq.len());
    }
}

fn verify_loose_path_or_empty(h: &ThreeGraph, seq: &[usize]) -> bool {
    seq.len() <= 1 || loosecycle::loose::check_path(h, seq).is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn search_routes_agree_and_are_sound(h in even_graph(&[6, 8])) {
        let with = find_loose_hamilton_cycle(&h, &SearchOptions::default()).unwrap();
        let plain = find_loose_hamilton_cycle(&h, &SearchOptions::exhaustive(u64::MAX)).unwrap();
        prop_assert_eq!(decision(&with.result), decision(&plain.result));
        match &with.result {
            SearchResult::Found(c) => prop_assert!(verify_loose_hamilton_cycle(&h, c)),
            SearchResult::RefutedCertificate(c) => prop_assert_eq!(check_certificate(&h, c), Ok(true)),
            _ => {}
        }
    }

    #[test]
    fn decision_is_isomorphism_invariant(
        h in even_graph(&[6, 8, 10]),
        perm in Just((0..10).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let n = h.n();
        // the labels below n, in shuffled order, form a permutation of [0, n)
        let ranked: Vec<usize> = perm.iter().copied().filter(|&v| v < n).collect();
        let g = h.relabel(&ranked);
        let a = find_loose_hamilton_cycle(&h, &SearchOptions::default()).unwrap();
        let b = find_loose_hamilton_cycle(&g, &SearchOptions::default()).unwrap();
        prop_assert_eq!(decision(&a.result), decision(&b.result));
        if let SearchResult::Found(c) = &a.result {
            let moved = loosecycle::LooseCycle::new(c.seq.iter().map(|&v| ranked[v]).collect());
            prop_assert!(verify_loose_hamilton_cycle(&g, &moved));
        }
    }
}

#[test]
fn threshold_tracks_seven_sixteenths() {
    for n in (6..=10_000).step_by(2) {
        let t = threshold(n).unwrap() as f64;
        let target = 7.0 / 16.0 * binom2(n) as f64;
        assert!((t - target).abs() <= n as f64, "n = {n}: {t} vs {target}");
    }
}
