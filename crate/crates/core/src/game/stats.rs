//! Subgraph counts, packings and edge-distribution extremes in `G(n, p)`.

use serde::Serialize;

use super::{sample_gnp, stream_rng, AUX_STREAM};
use crate::error::{Error, Result};
use crate::graph::{find_copies, max_edge_disjoint_copies, Graph, PackingMode};
use rand_core::RngCore;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialCounts {
    pub edges: usize,
    pub copies: usize,
    /// Size of a first-fit edge-disjoint packing of copies.
    pub packing: usize,
    /// Extremes of `e(X) / C(|X|, 2)` over the vertex-set family.
    pub min_internal_density: f64,
    pub max_internal_density: f64,
    /// Extremes of `e(X, Y) / (|X| |Y|)` over the vertex-set family.
    pub min_cross_density: f64,
    pub max_cross_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountStatistics {
    pub n: usize,
    pub prob: f64,
    /// `K n^v p^e`.
    pub markov_threshold: f64,
    pub mean_copies: f64,
    /// Fraction of trials with more than `markov_threshold` copies.
    pub violation_fraction: f64,
    pub trials: Vec<TrialCounts>,
}

/// Number of disjoint vertex-set pairs `(X, Y)` scanned per trial.
const FAMILY_SIZE: usize = 16;

/// Samples `trials` graphs `G(n, prob)` (seeds `seed, seed + 1, ...`) and
/// records copies of `f`, packings and density extremes over a fixed random
/// family of disjoint pairs `(X, Y)` with `|X| = |Y| = n / 3`.
pub fn subgraph_count_statistics(
    f: &Graph,
    n: usize,
    prob: f64,
    trials: usize,
    seed: u64,
    markov_k: f64,
) -> Result<CountStatistics> {
    const OP: &str = "subgraph_count_statistics";
    if f.edge_count() == 0 {
        return Err(Error::domain(OP, "pattern needs at least one edge"));
    }
    if trials == 0 {
        return Err(Error::domain(OP, "trials must be at least 1"));
    }
    if markov_k.is_nan() || markov_k <= 1.0 {
        return Err(Error::domain(OP, "K must exceed 1"));
    }
    let family = vertex_set_family(n, seed);
    let mut rows = Vec::with_capacity(trials);
    for t in 0..trials {
        let g = sample_gnp(n, prob, seed.wrapping_add(t as u64))?;
        let copies = find_copies(f, &g).len();
        let packing = max_edge_disjoint_copies(f, &g, PackingMode::Greedy)?.size();
        let mut internal = Vec::new();
        let mut cross = Vec::new();
        for (x, y) in &family {
            for set in [x, y] {
                let pairs = set.len() * set.len().saturating_sub(1) / 2;
                if pairs > 0 {
                    internal.push(internal_edges(&g, set) as f64 / pairs as f64);
                }
            }
            if !x.is_empty() {
                cross.push(cross_edges(&g, x, y) as f64 / (x.len() * y.len()) as f64);
            }
        }
        let (min_i, max_i) = extremes(&internal);
        let (min_c, max_c) = extremes(&cross);
        rows.push(TrialCounts {
            edges: g.edge_count(),
            copies,
            packing,
            min_internal_density: min_i,
            max_internal_density: max_i,
            min_cross_density: min_c,
            max_cross_density: max_c,
        });
    }
    let threshold =
        markov_k * (n as f64).powi(f.vertex_count() as i32) * prob.powi(f.edge_count() as i32);
    let violations = rows.iter().filter(|r| r.copies as f64 > threshold).count();
    Ok(CountStatistics {
        n,
        prob,
        markov_threshold: threshold,
        mean_copies: rows.iter().map(|r| r.copies as f64).sum::<f64>() / trials as f64,
        violation_fraction: violations as f64 / trials as f64,
        trials: rows,
    })
}

fn extremes(values: &[f64]) -> (f64, f64) {
    values.iter().fold((f64::NAN, f64::NAN), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// Disjoint pairs drawn by ranking vertices on random keys from the auxiliary stream.
fn vertex_set_family(n: usize, seed: u64) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut rng = stream_rng(seed, AUX_STREAM);
    let k = n / 3;
    (0..FAMILY_SIZE)
        .map(|_| {
            let mut keyed: Vec<(u64, usize)> = (0..n).map(|v| (rng.next_u64(), v)).collect();
            keyed.sort_unstable();
            let mut x: Vec<usize> = keyed[..k].iter().map(|&(_, v)| v).collect();
            let mut y: Vec<usize> = keyed[k..2 * k].iter().map(|&(_, v)| v).collect();
            x.sort_unstable();
            y.sort_unstable();
            (x, y)
        })
        .collect()
}

fn internal_edges(g: &Graph, set: &[usize]) -> usize {
    set.iter()
        .enumerate()
        .map(|(i, &a)| set[i + 1..].iter().filter(|&&b| g.has_edge(a, b)).count())
        .sum()
}

fn cross_edges(g: &Graph, x: &[usize], y: &[usize]) -> usize {
    x.iter()
        .map(|&a| y.iter().filter(|&&b| g.has_edge(a, b)).count())
        .sum()
}
