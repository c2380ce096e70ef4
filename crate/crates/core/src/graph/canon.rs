//! Canonical labelling by individualisation and refinement.
//!
//! Every branch of the search tree is explored and the lexicographically
//! smallest relabelled edge list wins, so the cost grows with the size of the
//! automorphism group. Intended for the small graphs used in catalogues and
//! structural checks.

use super::{edge, Edge, Graph};

/// A relabelled representative shared by exactly the graphs isomorphic to the input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().copied()).expect("canonical edges are valid")
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.vertex_count();
    let mut best: Option<Vec<Edge>> = None;
    if n > 0 {
        explore(g, vec![(0..n).collect()], &mut best);
    }
    CanonicalForm {
        n,
        edges: best.unwrap_or_default(),
    }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && degree_sequence(a) == degree_sequence(b)
        && canonical_form(a) == canonical_form(b)
}

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0usize; k];
                    for &w in g.neighbours(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == k {
            return next;
        }
        cells = next;
    }
}

fn explore(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<Vec<Edge>>) {
    let cells = refine(g, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let mut label = vec![0usize; g.vertex_count()];
            for (i, cell) in cells.iter().enumerate() {
                label[cell[0]] = i;
            }
            let mut edges: Vec<Edge> = g
                .edges()
                .iter()
                .map(|&(a, b)| edge(label[a], label[b]))
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges < *b) {
                *best = Some(edges);
            }
        }
        Some(target) => {
            for &v in &cells[target] {
                let mut split = Vec::with_capacity(cells.len() + 1);
                split.extend_from_slice(&cells[..target]);
                split.push(vec![v]);
                split.push(cells[target].iter().copied().filter(|&w| w != v).collect());
                split.extend_from_slice(&cells[target + 1..]);
                explore(g, split, best);
            }
        }
    }
}
