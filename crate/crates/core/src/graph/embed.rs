//! Non-induced subgraph embeddings and unlabelled copies.
//!
//! The matcher backtracks over pattern vertices in a degree-guided order:
//! the highest-degree vertex first, then repeatedly the vertex with the most
//! already-placed neighbours (ties by degree, then label). Candidates for a
//! vertex with a placed neighbour come from that neighbour's host
//! neighbourhood; every candidate must have host degree at least the pattern
//! degree.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{edge, Edge, Graph};

/// Injective pattern-to-host vertex map; `map[p]` is the image of pattern vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and edge preservation.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.map.len() != pattern.vertex_count() {
            return false;
        }
        let distinct: BTreeSet<usize> = self.map.iter().copied().collect();
        distinct.len() == self.map.len()
            && self.map.iter().all(|&v| v < host.vertex_count())
            && pattern
                .edges()
                .iter()
                .all(|&(a, b)| host.has_edge(self.map[a], self.map[b]))
    }

    /// The unlabelled image of this embedding.
    pub fn image(&self, pattern: &Graph) -> SubgraphCopy {
        SubgraphCopy::from_map(pattern, &self.map)
    }
}

/// An unlabelled copy of a pattern: the image vertex and edge sets.
///
/// Ordering is lexicographic by the sorted edge list, then by vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubgraphCopy {
    pub edges: Vec<Edge>,
    pub vertices: Vec<usize>,
}

impl SubgraphCopy {
    pub(crate) fn from_map(pattern: &Graph, map: &[usize]) -> Self {
        let mut edges: Vec<Edge> = pattern
            .edges()
            .iter()
            .map(|&(a, b)| edge(map[a], map[b]))
            .collect();
        edges.sort_unstable();
        let mut vertices = map.to_vec();
        vertices.sort_unstable();
        SubgraphCopy { edges, vertices }
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&edge(e.0, e.1)).is_ok()
    }
}

struct Plan {
    order: Vec<usize>,
    // For each position, the pattern vertices placed earlier that are adjacent to it.
    back: Vec<Vec<usize>>,
}

fn plan(pattern: &Graph, fixed: &[usize]) -> Plan {
    let n = pattern.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let place = |v: usize, placed: &mut Vec<bool>, links: &mut Vec<usize>, order: &mut Vec<usize>| {
        placed[v] = true;
        order.push(v);
        for &w in pattern.neighbours(v) {
            links[w] += 1;
        }
    };
    for &v in fixed {
        place(v, &mut placed, &mut links, &mut order);
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], pattern.degree(a))
                    .cmp(&(links[b], pattern.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("an unplaced vertex remains");
        place(next, &mut placed, &mut links, &mut order);
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            pattern
                .neighbours(v)
                .iter()
                .copied()
                .filter(|&w| position[w] < i)
                .collect()
        })
        .collect();
    Plan { order, back }
}

/// Calls `visit` with every embedding of `pattern` into `host` that extends
/// the partial assignment `fixed` (pairs of pattern vertex, host vertex).
///
/// Enumeration order is deterministic. Returns `Break` if `visit` did.
pub fn for_each_embedding<F>(
    pattern: &Graph,
    host: &Graph,
    fixed: &[(usize, usize)],
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = pattern.vertex_count();
    if n > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return ControlFlow::Continue(());
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; host.vertex_count()];
    for &(p, h) in fixed {
        if p >= n || h >= host.vertex_count() || map[p] != usize::MAX || used[h] {
            return ControlFlow::Continue(());
        }
        map[p] = h;
        used[h] = true;
    }
    let fixed_vertices: Vec<usize> = fixed.iter().map(|&(p, _)| p).collect();
    for &(p, h) in fixed {
        if host.degree(h) < pattern.degree(p) {
            return ControlFlow::Continue(());
        }
        let broken = pattern
            .neighbours(p)
            .iter()
            .any(|&q| map[q] != usize::MAX && !host.has_edge(h, map[q]));
        if broken {
            return ControlFlow::Continue(());
        }
    }
    let plan = plan(pattern, &fixed_vertices);
    let mut state = Search {
        pattern,
        host,
        plan: &plan,
        map: &mut map,
        used: &mut used,
        visit: &mut visit,
    };
    state.extend(fixed.len())
}

struct Search<'a, F> {
    pattern: &'a Graph,
    host: &'a Graph,
    plan: &'a Plan,
    map: &'a mut Vec<usize>,
    used: &'a mut Vec<bool>,
    visit: &'a mut F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Search<'_, F> {
    fn extend(&mut self, depth: usize) -> ControlFlow<()> {
        if depth == self.plan.order.len() {
            return (self.visit)(self.map);
        }
        let pv = self.plan.order[depth];
        let back = &self.plan.back[depth];
        let need = self.pattern.degree(pv);
        let anchor = back
            .iter()
            .map(|&w| self.map[w])
            .min_by_key(|&h| (self.host.degree(h), h));
        let candidates: Vec<usize> = match anchor {
            Some(h) => self.host.neighbours(h).to_vec(),
            None => (0..self.host.vertex_count()).collect(),
        };
        for cand in candidates {
            if self.used[cand] || self.host.degree(cand) < need {
                continue;
            }
            if !back.iter().all(|&w| self.host.has_edge(cand, self.map[w])) {
                continue;
            }
            self.map[pv] = cand;
            self.used[cand] = true;
            let flow = self.extend(depth + 1);
            self.used[cand] = false;
            self.map[pv] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// All distinct unlabelled copies of `pattern` in `host` (non-induced),
/// sorted by image edge list.
pub fn find_copies(pattern: &Graph, host: &Graph) -> Vec<SubgraphCopy> {
    let mut copies = BTreeSet::new();
    let _ = for_each_embedding(pattern, host, &[], |map| {
        copies.insert(SubgraphCopy::from_map(pattern, map));
        ControlFlow::Continue(())
    });
    copies.into_iter().collect()
}

/// Copies of `pattern` in `host` whose edge set contains the host edge `e`.
pub fn find_copies_through(pattern: &Graph, host: &Graph, e: Edge) -> Vec<SubgraphCopy> {
    let mut copies = BTreeSet::new();
    if !host.has_edge(e.0, e.1) {
        return Vec::new();
    }
    for &(a, b) in pattern.edges() {
        for fixed in [[(a, e.0), (b, e.1)], [(a, e.1), (b, e.0)]] {
            let _ = for_each_embedding(pattern, host, &fixed, |map| {
                copies.insert(SubgraphCopy::from_map(pattern, map));
                ControlFlow::Continue(())
            });
        }
    }
    copies.into_iter().collect()
}

/// Whether some copy of `pattern` in `host` uses the host edge `e`.
pub fn has_copy_through(pattern: &Graph, host: &Graph, e: Edge) -> bool {
    if !host.has_edge(e.0, e.1) {
        return false;
    }
    pattern.edges().iter().any(|&(a, b)| {
        [[(a, e.0), (b, e.1)], [(a, e.1), (b, e.0)]]
            .iter()
            .any(|fixed| for_each_embedding(pattern, host, fixed, |_| ControlFlow::Break(())).is_break())
    })
}

/// Whether `host` contains at least one copy of `pattern`.
pub fn has_copy(pattern: &Graph, host: &Graph) -> bool {
    for_each_embedding(pattern, host, &[], |_| ControlFlow::Break(())).is_break()
}
