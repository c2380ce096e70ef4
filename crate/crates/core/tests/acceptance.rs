//! Acceptance criteria 1-10. Each test prints one PASS/FAIL line.

mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use rand_core::RngCore;
use serde_json::json;

use common::*;
use ramsey_games::colouring::{
    check_forcing_structure, search_h_free_colouring, Colour, Condition, ForcingStructure,
    SearchVerdict,
};
use ramsey_games::density::{
    balancedness, format_rational, local_density, two_density, DensityKind, Rational,
};
use ramsey_games::forcing::{colour_bases, forced_set, RootPolicy};
use ramsey_games::game::{
    decide_extendability, derive_seed, play_two_round, stream_rng, subgraph_count_statistics,
    ColouringSource, GameConfig, RoundOneStatus, RoundTwoRate, Verdict,
};
use ramsey_games::graph::families::{complete, cycle, triangle_with_pendant, two_triangles_joined_by_path};
use ramsey_games::graph::{canonical_form, graphs_up_to_isomorphism};
use ramsey_games::product::{edge_rooted_product, reduced_edge_rooted_product, RootedGraph};
use ramsey_games::{Edge, Graph};

/// Outcome of one criterion; `artifact` is the byte-level output compared for determinism.
struct Report {
    pass: bool,
    summary: String,
    artifact: String,
}

fn announce(id: u32, title: &str, report: &Report, elapsed: Duration) {
    let status = if report.pass { "PASS" } else { "FAIL" };
    // bypass the harness capture so the line always shows
    let _ = writeln!(
        std::io::stdout(),
        "criterion {id:>2} [{status}] {title}: {} ({:.2}s)",
        report.summary,
        elapsed.as_secs_f64()
    );
}

fn run(id: u32, title: &str, f: fn() -> Report) -> Report {
    let start = Instant::now();
    let report = f();
    announce(id, title, &report, start.elapsed());
    report
}

// 1. Density ground truth.

const C1_TIME_LIMIT: Duration = Duration::from_secs(1);

fn c1_density_ground_truth() -> Report {
    let start = Instant::now();
    let cases = [
        ("K2", complete(2), Rational::new(1, 2)),
        ("K3", complete(3), Rational::from_integer(2)),
        ("C4", cycle(4), Rational::new(3, 2)),
        ("K4", complete(4), Rational::new(5, 2)),
        ("triangle+pendant", triangle_with_pendant(), Rational::from_integer(2)),
    ];
    let mut wrong = Vec::new();
    let mut values = BTreeMap::new();
    for (name, g, want) in &cases {
        let got = two_density(g).unwrap();
        values.insert(*name, format_rational(&got));
        if got != *want {
            wrong.push(format!("{name}: {} != {}", format_rational(&got), format_rational(want)));
        }
    }
    let elapsed = start.elapsed();
    Report {
        pass: wrong.is_empty() && elapsed < C1_TIME_LIMIT,
        summary: if wrong.is_empty() {
            format!("5/5 exact m2 values, {:.1} ms", elapsed.as_secs_f64() * 1e3)
        } else {
            wrong.join("; ")
        },
        artifact: serde_json::to_string(&values).unwrap(),
    }
}

// 2. Two-balanced graphs with d2 > 1 are strictly 1-balanced and strictly balanced.

fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in g.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn c2_two_balanced_sweep() -> Report {
    let one = Rational::from_integer(1);
    let (mut connected, mut qualifying) = (0, 0);
    let mut counterexamples = Vec::new();
    for n in 1..=7 {
        for h in graphs_up_to_isomorphism(n) {
            if !is_connected(&h) || h.edge_count() == 0 {
                continue;
            }
            connected += 1;
            if !balancedness(&h, DensityKind::TwoDensity, false).unwrap()
                || local_density(&h, DensityKind::TwoDensity).unwrap() <= one
            {
                continue;
            }
            qualifying += 1;
            if !balancedness(&h, DensityKind::OneDensity, true).unwrap()
                || !balancedness(&h, DensityKind::Density, true).unwrap()
            {
                counterexamples.push(h.to_edge_list());
            }
        }
    }
    Report {
        pass: counterexamples.is_empty() && qualifying > 0,
        summary: format!(
            "{qualifying} qualifying of {connected} connected graphs, {} counterexamples",
            counterexamples.len()
        ),
        artifact: json!({"connected": connected, "qualifying": qualifying, "counterexamples": counterexamples}).to_string(),
    }
}

// 3. Products: m2 of the full product is max{m2(G), m2(H)}; reduced products drop below m2(H).

const C3_MAX_PRODUCT_VERTICES: usize = 16;

fn c3_product_sweep() -> Report {
    // graphs on at most five vertices with density at least 1
    let graphs: Vec<Graph> = (3..=5)
        .flat_map(graphs_up_to_isomorphism)
        .filter(|g| g.edge_count() >= g.vertex_count())
        .collect();
    let (mut full_checked, mut reduced_checked) = (0usize, 0usize);
    let mut failures = Vec::new();
    for g in &graphs {
        let m2g = two_density(g).unwrap();
        for h in &graphs {
            let m2h = two_density(h).unwrap();
            for &(a, b) in h.edges() {
                let rooted = RootedGraph::new(h.clone(), a, b).unwrap();
                let decreasing = two_density(&h.without_edge((a, b))).unwrap() < m2h;
                for k in 1..=2 {
                    if g.vertex_count() + k * g.edge_count() * (h.vertex_count() - 2) > C3_MAX_PRODUCT_VERTICES {
                        continue;
                    }
                    let full = edge_rooted_product(g, &rooted, k).unwrap();
                    full_checked += 1;
                    if two_density(&full.graph).unwrap() != m2g.max(m2h) {
                        failures.push(format!("(b) G={} H={} h=({a},{b}) k={k}", g.to_json(), h.to_json()));
                    }
                    if decreasing {
                        let reduced = reduced_edge_rooted_product(g, &rooted, k).unwrap();
                        reduced_checked += 1;
                        if two_density(&reduced.graph).unwrap() >= m2h {
                            failures.push(format!("(c) G={} H={} h=({a},{b}) k={k}", g.to_json(), h.to_json()));
                        }
                    }
                }
            }
        }
    }
    Report {
        pass: failures.is_empty() && full_checked > 0 && reduced_checked > 0,
        summary: format!(
            "{full_checked} full and {reduced_checked} reduced products, {} counterexamples",
            failures.len()
        ),
        artifact: json!({"full": full_checked, "reduced": reduced_checked, "failures": failures}).to_string(),
    }
}

// 4. The C4 / K3 products.

fn c4_cycle_triangle_products() -> Report {
    let k3 = RootedGraph::new(complete(3), 0, 1).unwrap();
    let full = edge_rooted_product(&cycle(4), &k3, 2).unwrap().graph;
    let reduced = reduced_edge_rooted_product(&cycle(4), &k3, 2).unwrap().graph;
    // independent construction: two internally disjoint cherries on every cycle edge
    let mut edges = Vec::new();
    let mut next = 4;
    for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
        for _ in 0..2 {
            edges.push((a, next));
            edges.push((next, b));
            next += 1;
        }
    }
    let expected = Graph::from_edges(next, edges).unwrap();
    let counts = [
        full.vertex_count(),
        full.edge_count(),
        reduced.vertex_count(),
        reduced.edge_count(),
    ];
    let iso = canonical_form(&reduced) == canonical_form(&expected);
    Report {
        pass: counts == [12, 20, 12, 16] && iso,
        summary: format!(
            "full {}/{}, reduced {}/{}, cherry structure {}",
            counts[0],
            counts[1],
            counts[2],
            counts[3],
            if iso { "matches" } else { "differs" }
        ),
        artifact: json!({"counts": counts, "isomorphic": iso, "reduced": reduced.to_json()}).to_string(),
    }
}

// 5. Two-colour triangle Ramsey numbers.

const C5_TIME_LIMIT: Duration = Duration::from_secs(60);
const C5_BUDGET: u64 = 10_000_000;

/// Whether some red/blue colouring of `g` has no monochromatic triangle, over all 2^e colourings.
fn brute_force_triangle_free(g: &Graph) -> bool {
    let k3 = complete(3);
    let e = g.edge_count();
    (0u32..1 << e).any(|mask| {
        let a: BTreeMap<Edge, Colour> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, if mask >> i & 1 == 1 { Colour::Blue } else { Colour::Red }))
            .collect();
        naive_mono_free(&a, g.vertex_count(), &k3)
    })
}

fn c5_ramsey_sanity() -> Report {
    let k3 = complete(3);
    let start = Instant::now();
    let k5 = search_h_free_colouring(&complete(5), &k3, 2, C5_BUDGET).unwrap();
    let k6 = search_h_free_colouring(&complete(6), &k3, 2, C5_BUDGET).unwrap();
    let elapsed = start.elapsed();
    let k5_ok = match &k5.verdict {
        SearchVerdict::Found { colouring } => naive_mono_free(colouring.assignment(), 5, &k3),
        _ => false,
    };
    let k6_ok = k6.verdict == SearchVerdict::NoneExists && !brute_force_triangle_free(&complete(6));
    Report {
        pass: k5_ok && k6_ok && elapsed < C5_TIME_LIMIT,
        summary: format!(
            "K5 {} ({} nodes), K6 {} ({} nodes), re-validated by enumeration: {}",
            verdict_name(&k5.verdict),
            k5.nodes,
            verdict_name(&k6.verdict),
            k6.nodes,
            k5_ok && k6_ok
        ),
        artifact: json!({"k5": k5, "k6": k6}).to_string(),
    }
}

fn verdict_name(v: &SearchVerdict) -> &'static str {
    match v {
        SearchVerdict::Found { .. } => "found",
        SearchVerdict::NoneExists => "none-exists",
        SearchVerdict::Unknown => "unknown",
    }
}

// 6. Forcing soundness and oracle agreement on gadget instances.

const C6_INSTANCES: u64 = 200;
const C6_MAX_VERTICES: usize = 12;
const C6_MAX_NEW_EDGES: usize = 8;
const C6_SEED: u64 = 0x6a0d_6e75;

fn c6_forcing_soundness() -> Report {
    let k3 = complete(3);
    let (mut forced_checked, mut oracle_checked) = (0usize, 0usize);
    let mut failures = Vec::new();
    let mut verdicts = Vec::new();
    for i in 0..C6_INSTANCES {
        let seed = derive_seed(C6_SEED, &[i]);
        let inst = gadget(seed, C6_MAX_VERTICES);
        let (g, phi) = (inst.graph(), &inst.phi);
        let bases = colour_bases(phi, &k3, RootPolicy::AllEdges).unwrap();
        let forced = forced_set(&bases, 2, &k3, g.vertex_count()).unwrap();
        let green: Vec<Edge> = forced
            .forced_pairs(Colour::Green)
            .iter()
            .copied()
            .filter(|&(a, b)| !g.has_edge(a, b))
            .collect();
        if inst.targets.iter().any(|t| !green.contains(t)) {
            failures.push(format!("instance {i}: target not green-forced"));
        }
        for &p in &green {
            forced_checked += 1;
            let out = decide_extendability(g, phi, &[p], &k3, 2, 1_000_000).unwrap();
            if !matches!(out.verdict, Verdict::NotExtendable { .. }) {
                failures.push(format!("instance {i}: forced pair {p:?} was {}", out.verdict.label()));
            }
        }
        // a random round-two set, always containing one forced pair
        let missing = non_edges(g);
        let mut rng = stream_rng(seed, 9);
        let size = (rng.next_u64() % (C6_MAX_NEW_EDGES as u64 + 1)) as usize;
        let mut new: Vec<Edge> = vec![inst.targets[0]];
        while new.len() < size.min(missing.len()) {
            let p = missing[(rng.next_u64() % missing.len() as u64) as usize];
            if !new.contains(&p) {
                new.push(p);
            }
        }
        let mut options = vec![new.clone()];
        options.push(new.iter().copied().filter(|&p| !green.contains(&p)).collect());
        for set in options {
            oracle_checked += 1;
            let out = decide_extendability(g, phi, &set, &k3, 2, 1_000_000).unwrap();
            let truth = naive_extendable(phi, &set, &k3, 2);
            let agrees = match &out.verdict {
                Verdict::Extendable { .. } => truth,
                Verdict::NotExtendable { certificate } => !truth && certificate.validate(phi, &set, &k3, 2),
                Verdict::Unknown => false,
            };
            if !agrees {
                failures.push(format!("instance {i}: {} vs enumeration {truth} on {set:?}", out.verdict.label()));
            }
            verdicts.push(out.verdict.label());
        }
    }
    Report {
        pass: failures.is_empty() && forced_checked >= C6_INSTANCES as usize,
        summary: format!(
            "{forced_checked} forced pairs not extendable, {oracle_checked} oracle comparisons, {} disagreements",
            failures.len()
        ),
        artifact: json!({"verdicts": verdicts, "failures": failures}).to_string(),
    }
}

// 7. Forcing-structure checks.

fn c7_forcing_structures() -> Report {
    let mut lines = Vec::new();
    let mut pass = true;
    for len in [2, 3] {
        let r = check_forcing_structure(&two_triangles_joined_by_path(len), &ForcingStructure::cherry_triangle(len)).unwrap();
        pass &= r.holds;
        lines.push(format!("l={len} holds={}", r.holds));
    }
    let disjoint = ForcingStructure::new(
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2)]).unwrap(),
        Graph::from_edges(6, [(3, 4), (4, 5), (3, 5)]).unwrap(),
        vec![],
    )
    .unwrap();
    let r = check_forcing_structure(&complete(3), &disjoint).unwrap();
    pass &= r.violated_condition() == Some(Condition::II);
    lines.push(format!("disjoint triangles {:?}", r.violated_condition()));
    let single = ForcingStructure::new(
        Graph::from_edges(4, [(0, 2)]).unwrap(),
        Graph::from_edges(4, [(1, 3)]).unwrap(),
        vec![(0, 1)],
    )
    .unwrap();
    let r = check_forcing_structure(&complete(3), &single).unwrap();
    pass &= r.violated_condition() == Some(Condition::IV);
    lines.push(format!("single edges {:?}", r.violated_condition()));
    Report {
        pass,
        summary: lines.join(", "),
        artifact: lines.join("\n"),
    }
}

// 8. Triangle counts in G(n, p) rarely exceed K times their order of magnitude.

const C8_N: usize = 50;
const C8_P: f64 = 0.3;
const C8_K: f64 = 10.0;
const C8_TRIALS: usize = 200;
const C8_MAX_FRACTION: f64 = 0.15;
const C8_SEED: u64 = 0x5eed_0008;

fn c8_few_subgraphs() -> Report {
    let s = subgraph_count_statistics(&complete(3), C8_N, C8_P, C8_TRIALS, C8_SEED, C8_K).unwrap();
    Report {
        pass: s.violation_fraction <= C8_MAX_FRACTION,
        summary: format!(
            "fraction above K n^3 p^3 = {:.1}: {:.3} (limit {C8_MAX_FRACTION}), mean count {:.1}",
            s.markov_threshold, s.violation_fraction, s.mean_copies
        ),
        artifact: serde_json::to_string(&s).unwrap(),
    }
}

// 9. Green-forced pairs under the adversarial greedy colouring.

const C9_N: usize = 60;
const C9_C: f64 = 0.6;
const C9_TRIALS: u64 = 50;
const C9_SEED: u64 = 0x5eed_0009;
const C9_PILOT_SEED: u64 = 0x9170_7001;
const C9_PILOT_TRIALS: u64 = 1000;
/// Pilot (1000 trials, seed `C9_PILOT_SEED`): mean and standard deviation of the
/// per-trial green-forced pair count among trials whose round one succeeded.
const C9_PILOT_MEAN: f64 = 10.979689;
const C9_PILOT_SD: f64 = 4.697125;
const C9_TIME_LIMIT: Duration = Duration::from_secs(600);

fn c9_config(seed: u64) -> GameConfig {
    let mut cfg = GameConfig::new(C9_N, complete(3), 2, C9_C, RoundTwoRate::Coefficient(1.0));
    cfg.colouring_source = ColouringSource::AdversarialGreedy;
    cfg.seed = seed;
    cfg
}

/// Green-forced pair counts for trials whose round-one colouring exists, and the number of stuck trials.
fn green_forced_counts(master: u64, trials: u64) -> (Vec<usize>, usize) {
    let mut counts = Vec::new();
    let mut stuck = 0;
    for t in 0..trials {
        let tr = play_two_round(&c9_config(derive_seed(master, &[t]))).unwrap();
        match (&tr.round_one.status, &tr.forced) {
            (RoundOneStatus::Coloured, Some(f)) => counts.push(f.forced_pairs[Colour::Green as usize]),
            _ => stuck += 1,
        }
    }
    (counts, stuck)
}

fn mean_sd(xs: &[usize]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<usize>() as f64 / n;
    let var = xs.iter().map(|&x| (x as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn c9_forced_pair_band() -> Report {
    let start = Instant::now();
    let (counts, stuck) = green_forced_counts(C9_SEED, C9_TRIALS);
    let (mean, _) = mean_sd(&counts);
    let half = 3.0 * C9_PILOT_SD / (counts.len() as f64).sqrt();
    let (lo, hi) = (C9_PILOT_MEAN - half, C9_PILOT_MEAN + half);
    let pass = mean > 0.0 && (lo..=hi).contains(&mean) && start.elapsed() < C9_TIME_LIMIT;
    Report {
        pass,
        summary: format!(
            "mean {mean:.3} over {} coloured trials ({stuck} stuck), band [{lo:.3}, {hi:.3}]",
            counts.len()
        ),
        artifact: json!({"counts": counts, "stuck": stuck}).to_string(),
    }
}

#[test]
#[ignore = "pilot run that fixes the criterion 9 band"]
fn c9_pilot() {
    let (counts, stuck) = green_forced_counts(C9_PILOT_SEED, C9_PILOT_TRIALS);
    let (mean, sd) = mean_sd(&counts);
    let _ = writeln!(
        std::io::stdout(),
        "pilot: {} coloured trials, {stuck} stuck, mean {mean:.6}, sd {sd:.6}",
        counts.len()
    );
}

#[test]
fn criterion_01_density_ground_truth() {
    assert!(run(1, "density ground truth", c1_density_ground_truth).pass);
}

#[test]
fn criterion_02_two_balanced_sweep() {
    assert!(run(2, "2-balanced sweep", c2_two_balanced_sweep).pass);
}

#[test]
fn criterion_03_product_density_sweep() {
    assert!(run(3, "product density sweep", c3_product_sweep).pass);
}

#[test]
fn criterion_04_cycle_triangle_products() {
    assert!(run(4, "C4 / K3 products", c4_cycle_triangle_products).pass);
}

#[test]
fn criterion_05_ramsey_sanity() {
    assert!(run(5, "triangle Ramsey sanity", c5_ramsey_sanity).pass);
}

#[test]
fn criterion_06_forcing_soundness() {
    assert!(run(6, "forcing soundness", c6_forcing_soundness).pass);
}

#[test]
fn criterion_07_forcing_structures() {
    assert!(run(7, "forcing structures", c7_forcing_structures).pass);
}

#[test]
fn criterion_08_few_subgraphs() {
    assert!(run(8, "triangle count tail", c8_few_subgraphs).pass);
}

#[test]
fn criterion_09_forced_pair_band() {
    assert!(run(9, "green-forced pair band", c9_forced_pair_band).pass);
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let criteria: [fn() -> Report; 9] = [
        c1_density_ground_truth,
        c2_two_balanced_sweep,
        c3_product_sweep,
        c4_cycle_triangle_products,
        c5_ramsey_sanity,
        c6_forcing_soundness,
        c7_forcing_structures,
        c8_few_subgraphs,
        c9_forced_pair_band,
    ];
    let differing: Vec<usize> = criteria
        .iter()
        .enumerate()
        .filter(|(_, f)| f().artifact != f().artifact)
        .map(|(i, _)| i + 1)
        .collect();
    let report = Report {
        pass: differing.is_empty(),
        summary: format!("criteria 1-9 rerun twice, differing artifacts: {differing:?}"),
        artifact: String::new(),
    };
    announce(10, "determinism", &report, start.elapsed());
    assert!(report.pass);
}
