//! Brute-force oracles and instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand_core::RngCore;

use ramsey_games::colouring::{Colour, Colouring};
use ramsey_games::density::{DensityKind, Rational};
use ramsey_games::game::stream_rng;
use ramsey_games::graph::edge;
use ramsey_games::{Edge, Graph};

pub fn all_pairs(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

pub fn non_edges(g: &Graph) -> Vec<Edge> {
    all_pairs(g.vertex_count())
        .into_iter()
        .filter(|&(a, b)| !g.has_edge(a, b))
        .collect()
}

/// Graphs on `lo..=hi` vertices with independent fair-coin edges.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let edges = all_pairs(n).into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// A uniformly random permutation of `0..n`, as a proptest strategy.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Total colouring of `g` picking colour `choices[i] % palette` for the i-th edge.
pub fn colour_by(g: &Graph, choices: &[u8], palette: usize) -> Colouring {
    let pairs = g
        .edges()
        .iter()
        .zip(choices.iter().cycle())
        .map(|(&e, &c)| (e, Colour::ALL[c as usize % palette]));
    Colouring::from_assignments(g.clone(), pairs).unwrap()
}

/// Every unlabelled copy, found by trying all injective vertex maps.
pub fn naive_copies(pattern: &Graph, host: &Graph) -> BTreeSet<(Vec<Edge>, Vec<usize>)> {
    let mut out = BTreeSet::new();
    let mut map = Vec::new();
    let mut used = vec![false; host.vertex_count()];
    extend_maps(pattern, host, &mut map, &mut used, &mut |m| {
        let mut edges: Vec<Edge> = pattern.edges().iter().map(|&(a, b)| edge(m[a], m[b])).collect();
        edges.sort_unstable();
        let mut vertices = m.to_vec();
        vertices.sort_unstable();
        out.insert((edges, vertices));
    });
    out
}

fn extend_maps(
    pattern: &Graph,
    host: &Graph,
    map: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]),
) {
    let p = map.len();
    if p == pattern.vertex_count() {
        visit(map);
        return;
    }
    for v in 0..host.vertex_count() {
        if used[v] {
            continue;
        }
        let fits = (0..p).all(|q| !pattern.has_edge(p, q) || host.has_edge(v, map[q]));
        if fits {
            used[v] = true;
            map.push(v);
            extend_maps(pattern, host, map, used, visit);
            map.pop();
            used[v] = false;
        }
    }
}

pub fn naive_has_copy(pattern: &Graph, host: &Graph) -> bool {
    !naive_copies(pattern, host).is_empty()
}

/// Graph on `0..n` made of the pairs with the given colour.
pub fn class_graph(assignment: &BTreeMap<Edge, Colour>, n: usize, colour: Colour) -> Graph {
    Graph::from_edges(
        n,
        assignment.iter().filter(|(_, &c)| c == colour).map(|(&e, _)| e),
    )
    .unwrap()
}

pub fn naive_mono_free(assignment: &BTreeMap<Edge, Colour>, n: usize, pattern: &Graph) -> bool {
    Colour::ALL
        .iter()
        .all(|&c| !naive_has_copy(pattern, &class_graph(assignment, n, c)))
}

/// Whether some colouring of the new edges from the palette avoids a
/// monochromatic pattern, by trying all `palette^k` assignments.
pub fn naive_extendable(phi: &Colouring, new_edges: &[Edge], pattern: &Graph, palette: usize) -> bool {
    let n = phi.host().vertex_count();
    let k = new_edges.len();
    let total = palette.pow(k as u32);
    (0..total).any(|mut code| {
        let mut a = phi.assignment().clone();
        for &e in new_edges {
            a.insert(edge(e.0, e.1), Colour::ALL[code % palette]);
            code /= palette;
        }
        naive_mono_free(&a, n, pattern)
    })
}

/// Whether `pair` is a `colour`-base: some embedding of the pattern sends one
/// pattern edge onto `pair` and every other pattern edge onto a `colour` edge.
pub fn naive_is_base(phi: &Colouring, pattern: &Graph, pair: Edge, colour: Colour) -> bool {
    let n = phi.host().vertex_count();
    let class = class_graph(phi.assignment(), n, colour);
    let mut found = false;
    let mut map = Vec::new();
    let mut used = vec![false; n];
    let complete = ramsey_games::graph::families::complete(n);
    extend_maps(pattern, &complete, &mut map, &mut used, &mut |m| {
        if found {
            return;
        }
        found = pattern.edges().iter().any(|&(a, b)| {
            edge(m[a], m[b]) == pair
                && pattern
                    .edges()
                    .iter()
                    .filter(|&&f| f != (a, b))
                    .all(|&(c, d)| class.has_edge(m[c], m[d]))
        });
    });
    found
}

fn fraction(kind: DensityKind, v: usize, e: usize) -> Rational {
    let (v, e) = (v as i64, e as i64);
    match kind {
        DensityKind::Density => Rational::new(e, v),
        _ if e == 0 => Rational::from_integer(0),
        DensityKind::OneDensity => Rational::new(e, v - 1),
        DensityKind::TwoDensity if v == 2 => Rational::new(1, 2),
        DensityKind::TwoDensity => Rational::new(e - 1, v - 2),
    }
}

pub fn naive_local_density(g: &Graph, kind: DensityKind) -> Rational {
    fraction(kind, g.vertex_count(), g.edge_count())
}

/// Maximum density over induced subgraphs on every non-empty vertex subset.
pub fn naive_max_density(g: &Graph, kind: DensityKind) -> Rational {
    let n = g.vertex_count();
    (1u32..1 << n)
        .map(|mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let e = g.edges().iter().filter(|&&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1).count();
            fraction(kind, vs.len(), e)
        })
        .max()
        .unwrap_or_else(|| Rational::from_integer(0))
}

/// Balancedness by listing every edge subset, padded with any number of
/// isolated vertices.
pub fn naive_balanced(g: &Graph, kind: DensityKind, strict: bool) -> bool {
    let n = g.vertex_count();
    let whole = naive_local_density(g, kind);
    let edges = g.edges();
    (1u32..1 << edges.len()).all(|mask| {
        let sub: Vec<Edge> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        let span: BTreeSet<usize> = sub.iter().flat_map(|&(a, b)| [a, b]).collect();
        (span.len()..=n).all(|v| {
            let proper = v < n || sub.len() < edges.len();
            let d = fraction(kind, v, sub.len());
            if strict && proper {
                d < whole
            } else {
                d <= whole
            }
        })
    })
}

/// A triangle-free-by-colour instance in which every target pair carries a red
/// cherry and a blue cherry, so the targets are green-forced for `K3` with two
/// colours. Random extra edges are coloured at random; instances with a
/// monochromatic triangle are redrawn.
pub struct Gadget {
    pub phi: Colouring,
    pub targets: Vec<Edge>,
}

impl Gadget {
    pub fn graph(&self) -> &Graph {
        self.phi.host()
    }
}

pub fn gadget(seed: u64, max_n: usize) -> Gadget {
    let mut rng = stream_rng(seed, 7);
    let mut below = |k: u64| (rng.next_u64() % k) as usize;
    let k3 = ramsey_games::graph::families::complete(3);
    loop {
        let targets_wanted = 1 + below(3);
        let core = 2 + below(3);
        let n_cap = 6 + below((max_n - 5) as u64);
        let mut next = core;
        let mut a: BTreeMap<Edge, Colour> = BTreeMap::new();
        let mut targets = Vec::new();
        for _ in 0..targets_wanted {
            if next + 2 > n_cap {
                break;
            }
            let x = below(core as u64);
            let y = (x + 1 + below(core as u64 - 1)) % core;
            let t = edge(x, y);
            if targets.contains(&t) {
                continue;
            }
            targets.push(t);
            for (apex, colour) in [(next, Colour::Red), (next + 1, Colour::Blue)] {
                a.insert(edge(x, apex), colour);
                a.insert(edge(y, apex), colour);
            }
            next += 2;
        }
        let n = next.max(n_cap.min(next + below(3)));
        for p in all_pairs(n) {
            if a.contains_key(&p) || targets.contains(&p) {
                continue;
            }
            if below(5) == 0 {
                a.insert(p, if below(2) == 0 { Colour::Red } else { Colour::Blue });
            }
        }
        if naive_mono_free(&a, n, &k3) && !targets.is_empty() {
            let g = Graph::from_edges(n, a.keys().copied()).unwrap();
            let phi = Colouring::from_assignments(g, a).unwrap();
            return Gadget { phi, targets };
        }
    }
}

/// Three pairs of a triangle `{0, 1, 2}`, each carrying a red and a blue
/// cherry: the triangle is a green-forced copy of `K3` with three colours.
pub fn green_forced_triangle() -> Colouring {
    let mut a = BTreeMap::new();
    let mut apex = 3;
    for (x, y) in [(0, 1), (1, 2), (0, 2)] {
        for colour in [Colour::Red, Colour::Blue] {
            a.insert(edge(x, apex), colour);
            a.insert(edge(y, apex), colour);
            apex += 1;
        }
    }
    let g = Graph::from_edges(apex, a.keys().copied()).unwrap();
    Colouring::from_assignments(g, a).unwrap()
}
