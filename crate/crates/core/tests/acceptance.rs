//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Reference values are computed here by brute force, independent of
//! the library's search code.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use loosecycle::constructions::{build_extremal_example, build_h1, build_h1_plus, fano_plane, h1_shape, random_extremal, random_graph, triples};
use loosecycle::extremal::{solve_extremal, ExtremalReport};
use loosecycle::harness::{exhaustive_n6_scan, run_campaign, same_up_to_timing, ExperimentConfig};
use loosecycle::loose::{check_path, verify_loose_hamilton_cycle};
use loosecycle::search::{find_loose_hamilton_cycle, SearchOptions, SearchResult};
use loosecycle::tiling::{classify_link, classify_mask, exact_max_y_tiling, is_y_free, max_y_free_edges, LinkClassKind, LinkWitness};
use loosecycle::tripartite::{greedy_tripartite_path, random_tripartite};
use loosecycle::{check_certificate, threshold, Parameters, ThreeGraph, VertexSet};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn binom2(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

fn min_degree_from_edges(h: &ThreeGraph) -> usize {
    let mut deg = vec![0usize; h.n()];
    for (a, b, c) in triples(h) {
        deg[a] += 1;
        deg[b] += 1;
        deg[c] += 1;
    }
    deg.into_iter().min().unwrap_or(0)
}

/// Independent loose Hamilton cycle check straight from the definition.
fn is_loose_hamilton_cycle(h: &ThreeGraph, seq: &[usize]) -> bool {
    let n = h.n();
    if seq.len() != n || n % 2 == 1 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n / 2).all(|i| h.has_edge(seq[2 * i], seq[2 * i + 1], seq[(2 * i + 2) % n]))
}

fn c1_threshold() -> Verdict {
    let mut bad = Vec::new();
    for n in (6..=200).step_by(2) {
        let c = if n % 4 == 0 { 2 } else { 1 };
        let expected = binom2(n - 1) - binom2(3 * n / 4) + c;
        let g = build_extremal_example(n).expect("even n ≥ 6");
        let delta = min_degree_from_edges(&g.graph) as u64;
        if threshold(n) != Ok(expected) || delta + 1 != expected || g.graph.min_vertex_degree() as u64 != delta {
            bad.push(n);
        }
    }
    verdict(bad.is_empty(), format!("98 even n in [6, 200], mismatches {bad:?}"))
}

fn c2_refutation() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [6, 8, 10, 12] {
        let h = build_extremal_example(n).unwrap().graph;
        let out = find_loose_hamilton_cycle(&h, &SearchOptions::default()).unwrap();
        let cert_ok = matches!(&out.result, SearchResult::RefutedCertificate(c) if check_certificate(&h, c) == Ok(true));
        ok &= cert_ok;
        notes.push(format!("n={n} certificate {}", if cert_ok { "ok" } else { "MISSING" }));
        if n <= 8 {
            let out = find_loose_hamilton_cycle(&h, &SearchOptions::exhaustive(u64::MAX)).unwrap();
            let ex_ok = matches!(out.result, SearchResult::RefutedExhaustive);
            ok &= ex_ok;
            notes.push(format!("n={n} exhaustive {} ({} nodes)", if ex_ok { "ok" } else { "MISSING" }, out.nodes_expanded));
        }
    }
    verdict(ok, notes.join(", "))
}

fn c3_n6_scan() -> Verdict {
    let r = exhaustive_n6_scan();
    let h1 = build_h1(6).unwrap().graph;
    let mut perm = [0usize, 1, 2, 3, 4, 5];
    let mut h1_ham = false;
    permutations(&mut perm, 0, &mut |p| h1_ham |= is_loose_hamilton_cycle(&h1, p));
    let bucket_sum: u64 = r.buckets.iter().map(|b| b.hamiltonian + b.non_hamiltonian).sum();
    let k6 = &r.buckets[10];
    let pass = r.total == 1 << 20
        && bucket_sum == r.total
        && r.disagreements == 0
        && r.budget_exceeded == 0
        && !h1_ham
        && min_degree_from_edges(&h1) == 4
        && r.buckets[4].non_hamiltonian > 0
        && k6.hamiltonian == 1
        && k6.non_hamiltonian == 0;
    verdict(
        pass,
        format!(
            "{} graphs, {} disagreements, {} over budget, H1(6) non-Hamiltonian with δ1 = 4 ({} in that bucket), least forcing δ1 = {:?}",
            r.total, r.disagreements, r.budget_exceeded, r.buckets[4].non_hamiltonian, r.least_forcing_degree
        ),
    )
}

fn permutations(p: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Largest family of triples on `[0, m)` pairwise sharing at most one vertex.
fn max_partial_triple_system(m: usize) -> usize {
    let all: Vec<[usize; 3]> = (0..m)
        .flat_map(|a| (a + 1..m).flat_map(move |b| (b + 1..m).map(move |c| [a, b, c])))
        .collect();
    fn go(all: &[[usize; 3]], i: usize, used: &mut Vec<[usize; 3]>, best: &mut usize) {
        if used.len() + (all.len() - i) <= *best {
            return;
        }
        if i == all.len() {
            *best = used.len();
            return;
        }
        let t = all[i];
        if used.iter().all(|u| u.iter().filter(|x| t.contains(x)).count() <= 1) {
            used.push(t);
            go(all, i + 1, used, best);
            used.pop();
        }
        go(all, i + 1, used, best);
    }
    let mut best = 0;
    go(&all, 0, &mut Vec::new(), &mut best);
    best
}

fn c4_y_free() -> Verdict {
    let mut ok = true;
    let mut found = Vec::new();
    for m in 3..=7 {
        let (count, g, closed) = max_y_free_edges(m, u64::MAX);
        let bound = binom2(m) as usize / 3;
        ok &= closed && count <= bound && is_y_free(&g) && g.num_edges() == count && count == max_partial_triple_system(m);
        found.push(format!("m={m}: {count} ≤ {bound}"));
    }
    let fano = fano_plane();
    let fano_ok = is_y_free(&fano) && fano.num_edges() == 7 && 3 * fano.num_edges() == binom2(7) as usize;
    verdict(ok && fano_ok, format!("{}; Fano plane 7 edges, Y-free {}", found.join(", "), is_y_free(&fano)))
}

fn c5_classification() -> Verdict {
    let edges_of = |mask: u16| -> Vec<(usize, usize)> { (0..16).filter(|i| mask >> i & 1 == 1).map(|i| (i / 4, i % 4)).collect() };
    let mut bad = 0u32;
    let mut seven1 = 0u32;
    let u = 0;
    let vi = [1, 2, 3, 4];
    let vj = [5, 6, 7, 8];
    for mask in 0..=u16::MAX {
        let es = edges_of(mask);
        let covers = |l: u8, r: u8| es.iter().all(|&(a, b)| l >> a & 1 == 1 || r >> b & 1 == 1);
        let mut min_cover = 8;
        let mut one_each = false;
        for l in 0u8..16 {
            for r in 0u8..16 {
                if covers(l, r) {
                    let size = (l.count_ones() + r.count_ones()) as usize;
                    min_cover = min_cover.min(size);
                    one_each |= l.count_ones() == 1 && r.count_ones() == 1;
                }
            }
        }
        let mut three_matching = false;
        for x in 0..es.len() {
            for y in x + 1..es.len() {
                for z in y + 1..es.len() {
                    let t = [es[x], es[y], es[z]];
                    three_matching |= t[0].0 != t[1].0 && t[0].0 != t[2].0 && t[1].0 != t[2].0 && t[0].1 != t[1].1 && t[0].1 != t[2].1 && t[1].1 != t[2].1;
                }
            }
        }
        let cls = classify_mask(mask);
        let expected = if es.len() <= 6 {
            LinkClassKind::Le6
        } else if three_matching {
            LinkClassKind::Ge7Three
        } else if one_each {
            LinkClassKind::Seven1
        } else {
            LinkClassKind::Ge7Two
        };
        let witness_ok = match &cls.witness {
            LinkWitness::Matching(p) => {
                p.iter().all(|&(a, b)| es.contains(&(a, b)))
                    && (0..3).all(|i| (i + 1..3).all(|j| p[i].0 != p[j].0 && p[i].1 != p[j].1))
            }
            LinkWitness::Cover { left, right } => {
                let l = left.iter().fold(0u8, |m, &a| m | 1 << a);
                let r = right.iter().fold(0u8, |m, &b| m | 1 << b);
                !three_matching && covers(l, r) && left.len() + right.len() == min_cover
            }
        };
        let dichotomy = es.len() < 7 || three_matching || min_cover <= 2;
        if cls.kind == LinkClassKind::Seven1 {
            seven1 += 1;
        }
        let seven_ok = cls.kind != LinkClassKind::Seven1 || es.len() == 7;

        let h = ThreeGraph::new(9, es.iter().map(|&(a, b)| (u, vi[a], vj[b]))).unwrap();
        // classify_link reports its witness in graph labels
        let relabeled = match &cls.witness {
            LinkWitness::Matching(p) => LinkWitness::Matching(p.map(|(a, b)| (vi[a], vj[b]))),
            LinkWitness::Cover { left, right } => LinkWitness::Cover {
                left: left.iter().map(|&a| vi[a]).collect(),
                right: right.iter().map(|&b| vj[b]).collect(),
            },
        };
        let via_graph = classify_link(&h, u, &vi, &vj).map(|c| (c.kind, c.edges, c.witness));
        if cls.kind != expected || cls.edges as usize != es.len() || !witness_ok || !dichotomy || !seven_ok || via_graph != Some((cls.kind, cls.edges, relabeled)) {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("65536 bipartite graphs on (4, 4), {seven1} of class T7_1, {bad} mismatches"))
}

/// Maximum Y-tiling by memoized search over vertex subsets.
fn brute_tiling(h: &ThreeGraph) -> usize {
    let n = h.n();
    assert!(n <= 16);
    let mut quads: Vec<Vec<u32>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let e = [(a, b, c), (a, b, d), (a, c, d), (b, c, d)].iter().filter(|&&(x, y, z)| h.has_edge(x, y, z)).count();
                    if e >= 2 {
                        quads[a].push(1 << a | 1 << b | 1 << c | 1 << d);
                    }
                }
            }
        }
    }
    fn best(s: u32, quads: &[Vec<u32>], memo: &mut HashMap<u32, usize>) -> usize {
        if s.count_ones() < 4 {
            return 0;
        }
        if let Some(&v) = memo.get(&s) {
            return v;
        }
        let low = s.trailing_zeros() as usize;
        let rest = s & !(1 << low);
        let mut v = best(rest, quads, memo);
        for &q in &quads[low] {
            if q & s == q {
                v = v.max(1 + best(s & !q, quads, memo));
            }
        }
        memo.insert(s, v);
        v
    }
    best(((1u64 << n) - 1) as u32, &quads, &mut HashMap::new())
}

fn c6_tiling() -> Verdict {
    let mut bad = 0;
    for i in 0..200u64 {
        let n = 4 + (i % 9) as usize;
        let p = 0.05 + 0.1 * (i % 7) as f64;
        let h = random_graph(n, p, 1000 + i).unwrap();
        let e = exact_max_y_tiling(&h, u64::MAX);
        if !e.optimal || e.tiling.validate(&h).is_err() || e.tiling.len() != brute_tiling(&h) {
            bad += 1;
        }
    }
    let k8 = ThreeGraph::complete(8);
    let h16 = h1_shape(16).unwrap().graph;
    let k8_t = exact_max_y_tiling(&k8, u64::MAX);
    let h16_t = exact_max_y_tiling(&h16, u64::MAX);
    let fixed = k8_t.optimal && k8_t.tiling.len() == 2 && brute_tiling(&k8) == 2 && h16_t.optimal && h16_t.tiling.len() == 3 && brute_tiling(&h16) == 3;
    verdict(
        bad == 0 && fixed,
        format!("200 random graphs n in [4, 12], {bad} mismatches; K8 → {}, H1(16) → {}", k8_t.tiling.len(), h16_t.tiling.len()),
    )
}

/// The balance identity and the `x a b c x …` completion pattern.
fn contracts_hold(r: &ExtremalReport) -> bool {
    let Some(art) = &r.artifacts else {
        return false;
    };
    let (a1, b1, path) = (&art.a1, &art.b1, &art.completion.seq);
    let balanced = b1.len() + 3 == 3 * a1.len();
    let pattern = path.len() % 4 == 1
        && path.len() == a1.len() + b1.len()
        && path.iter().enumerate().all(|(i, &v)| if i % 4 == 0 { a1.contains(v) } else { b1.contains(v) });
    let mut seen = VertexSet::new(a1.universe());
    let distinct = path.iter().all(|&v| seen.insert(v));
    balanced && pattern && distinct
}

fn c7_c8_extremal() -> (Verdict, Verdict) {
    let mut contract_runs = 0;
    let mut contract_bad = 0;
    let mut check = |r: &ExtremalReport, h: &ThreeGraph| -> bool {
        match r.cycle() {
            Some(c) => {
                contract_runs += 1;
                if !contracts_hold(r) {
                    contract_bad += 1;
                }
                verify_loose_hamilton_cycle(h, c) && is_loose_hamilton_cycle(h, &c.seq)
            }
            None => false,
        }
    };
    let mut plus_ok = 0;
    let plus_ns = [16, 24, 32, 48, 64];
    for n in plus_ns {
        let h = build_h1_plus(n).unwrap().graph;
        if check(&solve_extremal(&h, &Parameters::default()), &h) {
            plus_ok += 1;
        }
    }
    let t48 = threshold(48).unwrap() as usize;
    let mut eligible = 0;
    let mut solved = 0;
    for seed in 0..20 {
        let h = random_extremal(48, 0.0005, seed).unwrap().graph;
        if h.min_vertex_degree() < t48 {
            continue;
        }
        eligible += 1;
        if check(&solve_extremal(&h, &Parameters::from_beta(0.0005).with_seed(seed)), &h) {
            solved += 1;
        }
    }
    let c7 = verdict(
        plus_ok == plus_ns.len() && eligible > 0 && 10 * solved >= 9 * eligible,
        format!("H1_plus {plus_ok}/{}; random_extremal(48) {solved}/{eligible} of 20 seeds meeting threshold {t48}", plus_ns.len()),
    );
    let c8 = verdict(
        contract_runs > 0 && contract_bad == 0,
        format!("{contract_runs} successful runs, {contract_bad} violating |B1| = 3(|A1| - 1) or the x a b c pattern"),
    );
    (c7, c8)
}

fn c9_tripartite() -> Verdict {
    let (h, parts) = random_tripartite(20, 1.0, 0);
    let complete = greedy_tripartite_path(&h, [&parts[0], &parts[1], &parts[2]], 1.0, 0.01).unwrap();
    let complete_ok = complete.omitted <= 3 && check_path(&h, &complete.path.seq).is_ok();
    let mut within = 0;
    let mut within_8 = 0;
    let mut worst = 0;
    let mut bound = 0.0;
    for seed in 0..20 {
        let (h, parts) = random_tripartite(50, 0.8, seed);
        let run = greedy_tripartite_path(&h, [&parts[0], &parts[1], &parts[2]], 0.8, 0.1).unwrap();
        bound = run.bound;
        worst = worst.max(run.omitted);
        within_8 += usize::from(run.omitted <= 8);
        if run.omitted as f64 <= run.bound && check_path(&h, &run.path.seq).is_ok() {
            within += 1;
        }
    }
    verdict(
        complete_ok && within >= 18,
        format!(
            "complete m=20 omits {}; random m=50 within 8εm/d + 3 = {bound} on {within}/20 seeds (max omitted {worst}, at most 8 omitted on {within_8}/20)",
            complete.omitted
        ),
    )
}

fn c10_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let configs = [
        "campaign = \"threshold-check\"\nn = [6, 8, 10, 12, 14]",
        "campaign = \"dichotomy-probe\"\nn = [16, 24]\nseeds = { start = 0, count = 3 }",
        "campaign = \"extremal-suite\"\nfamily = \"h1-plus\"\nn = [16, 20]\nseeds = [0, 1]",
        "campaign = \"extremal-suite\"\nfamily = \"random-extremal\"\nn = [24]\nseeds = { start = 0, count = 3 }",
        "campaign = \"tiling-bench\"\nn = [8, 10]\nseeds = { start = 0, count = 3 }",
    ];
    let mut ok = true;
    let mut total = 0;
    for (i, text) in configs.into_iter().enumerate() {
        let mut runs = Vec::new();
        let mut files = Vec::new();
        for threads in [1, 4] {
            let path = dir.path().join(format!("c{i}_t{threads}.jsonl"));
            let mut cfg = ExperimentConfig::from_toml_str(text).unwrap();
            cfg.threads = Some(threads);
            cfg.output = Some(path.clone());
            runs.push(run_campaign(&cfg).unwrap());
            let text = std::fs::read_to_string(&path).unwrap();
            let lines: Vec<serde_json::Value> = text
                .lines()
                .map(|l| {
                    let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                    v["counters"]["millis"] = 0.into();
                    v
                })
                .collect();
            files.push(lines);
        }
        total += runs[0].len();
        ok &= !runs[0].is_empty() && same_up_to_timing(&runs[0], &runs[1]) && files[0] == files[1];
    }
    verdict(ok, format!("5 campaigns, {total} records each repeated on 1 and 4 threads"))
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Verdict, f64)> = Vec::new();
    let criteria: [(u32, &str, fn() -> Verdict); 6] = [
        (1, "threshold and construction degrees", c1_threshold),
        (2, "extremal examples are refuted", c2_refutation),
        (3, "n = 6 oracle equivalence", c3_n6_scan),
        (4, "Y-free edge bound", c4_y_free),
        (5, "bipartite link classification", c5_classification),
        (6, "exact Y-tiling oracle", c6_tiling),
    ];
    for (k, name, f) in criteria {
        let t = Instant::now();
        let v = f();
        results.push((k, name, v, t.elapsed().as_secs_f64()));
    }
    let t = Instant::now();
    let (c7, c8) = c7_c8_extremal();
    results.push((7, "extremal solver end to end", c7, t.elapsed().as_secs_f64()));
    results.push((8, "balance and completion contracts", c8, 0.0));
    for (k, name, f) in [(9, "greedy tripartite path", c9_tripartite as fn() -> Verdict), (10, "campaign determinism", c10_determinism)] {
        let t = Instant::now();
        let v = f();
        results.push((k, name, v, t.elapsed().as_secs_f64()));
    }

    let mut failed = 0;
    for (k, name, v, secs) in &results {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("{tag} {k:>2} {name} [{secs:.2}s]: {}", v.detail);
        failed += usize::from(!v.pass);
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
