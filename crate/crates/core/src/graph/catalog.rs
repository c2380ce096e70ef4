use std::collections::BTreeSet;

use super::{canonical_form, CanonicalForm, Graph};

/// One representative of every isomorphism class of graphs on exactly `n`
/// vertices, ordered by edge count and then canonical edge list.
///
/// Classes on `k` vertices are grown from those on `k - 1` by adding a vertex
/// with every possible neighbourhood. Practical up to `n = 7` (1044 classes).
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let mut layer: BTreeSet<CanonicalForm> = BTreeSet::new();
    layer.insert(canonical_form(&Graph::empty(0)));
    for k in 1..=n {
        let mut next = BTreeSet::new();
        for form in &layer {
            for subset in 0u64..(1 << (k - 1)) {
                let extra = (0..k - 1).filter(|&v| subset >> v & 1 == 1).map(|v| (v, k - 1));
                let g = Graph::from_edges(k, form.edges.iter().copied().chain(extra))
                    .expect("catalogue edges are valid");
                next.insert(canonical_form(&g));
            }
        }
        layer = next;
    }
    let mut graphs: Vec<Graph> = layer.iter().map(CanonicalForm::to_graph).collect();
    graphs.sort_by(|a, b| a.edge_count().cmp(&b.edge_count()).then_with(|| a.cmp(b)));
    graphs
}
