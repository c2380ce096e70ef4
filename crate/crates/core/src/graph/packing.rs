//! Edge-disjoint packings of pattern copies.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{find_copies, Edge, Graph, SubgraphCopy};
use crate::error::{Error, Result};

/// Exact packing refuses to run on more copies than this unless overridden.
pub const DEFAULT_EXACT_PACKING_CAP: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PackingMode {
    /// Maximum packing by branch and bound.
    Exact,
    /// Maximal packing: first-fit over copies in their sorted order.
    Greedy,
}

/// Pairwise edge-disjoint copies of a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyPacking {
    pub copies: Vec<SubgraphCopy>,
}

impl CopyPacking {
    pub fn size(&self) -> usize {
        self.copies.len()
    }

    pub fn is_edge_disjoint(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.copies
            .iter()
            .flat_map(|c| c.edges.iter())
            .all(|&e| seen.insert(e))
    }
}

pub fn max_edge_disjoint_copies(
    pattern: &Graph,
    host: &Graph,
    mode: PackingMode,
) -> Result<CopyPacking> {
    max_edge_disjoint_copies_with_cap(pattern, host, mode, DEFAULT_EXACT_PACKING_CAP)
}

pub fn max_edge_disjoint_copies_with_cap(
    pattern: &Graph,
    host: &Graph,
    mode: PackingMode,
    cap: usize,
) -> Result<CopyPacking> {
    const OP: &str = "max_edge_disjoint_copies";
    if pattern.edge_count() == 0 {
        return Err(Error::domain(OP, "pattern must have at least one edge"));
    }
    let copies = find_copies(pattern, host);
    match mode {
        PackingMode::Greedy => Ok(greedy(copies)),
        PackingMode::Exact => {
            if copies.len() > cap {
                return Err(Error::budget(
                    OP,
                    format!(
                        "{} copies exceed the exact-mode cap of {cap}; use greedy mode",
                        copies.len()
                    ),
                ));
            }
            Ok(exact(copies, host, pattern.edge_count()))
        }
    }
}

fn greedy(copies: Vec<SubgraphCopy>) -> CopyPacking {
    let mut used = std::collections::HashSet::<Edge>::new();
    let mut chosen = Vec::new();
    for c in copies {
        if c.edges.iter().all(|e| !used.contains(e)) {
            used.extend(c.edges.iter().copied());
            chosen.push(c);
        }
    }
    CopyPacking { copies: chosen }
}

struct Exact {
    masks: Vec<Vec<u64>>,
    per_copy: usize,
    best: Vec<usize>,
    chosen: Vec<usize>,
    used: Vec<u64>,
}

impl Exact {
    fn conflicts(&self, i: usize) -> bool {
        self.masks[i].iter().zip(&self.used).any(|(m, u)| m & u != 0)
    }

    fn toggle(&mut self, i: usize) {
        for (u, m) in self.used.iter_mut().zip(&self.masks[i]) {
            *u ^= m;
        }
    }

    fn run(&mut self, idx: usize, free_edges: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let remaining = self.masks.len() - idx;
        if self.chosen.len() + remaining.min(free_edges / self.per_copy) <= self.best.len() {
            return;
        }
        let Some(next) = (idx..self.masks.len()).find(|&i| !self.conflicts(i)) else {
            return;
        };
        self.toggle(next);
        self.chosen.push(next);
        self.run(next + 1, free_edges - self.per_copy);
        self.chosen.pop();
        self.toggle(next);
        self.run(next + 1, free_edges);
    }
}

fn exact(copies: Vec<SubgraphCopy>, host: &Graph, per_copy: usize) -> CopyPacking {
    let index: HashMap<Edge, usize> = host
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let words = host.edge_count().div_ceil(64).max(1);
    let masks = copies
        .iter()
        .map(|c| {
            let mut mask = vec![0u64; words];
            for e in &c.edges {
                let i = index[e];
                mask[i / 64] |= 1 << (i % 64);
            }
            mask
        })
        .collect();
    let mut search = Exact {
        masks,
        per_copy,
        best: Vec::new(),
        chosen: Vec::new(),
        used: vec![0; words],
    };
    search.run(0, host.edge_count());
    let best = search.best;
    CopyPacking {
        copies: best.into_iter().map(|i| copies[i].clone()).collect(),
    }
}
