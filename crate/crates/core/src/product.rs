//! k-fold edge-rooted products `G ⊗k (H, h)` and their reduced forms.
//!
//! Vertex layout: the central copy of `G` keeps labels `0..v(G)`. New vertices
//! follow in blocks, one block per (central edge in lexicographic order, copy
//! index `1..=k`), and within a block the non-root vertices of `H` appear in
//! increasing label order. For a central edge `{x, y}` with `x < y`, `x` plays
//! the first root endpoint of `H` and `y` the second.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

/// A graph with a distinguished root edge `(u, v)`; `u` is attached to the
/// smaller endpoint of each central edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    graph: Graph,
    root: (usize, usize),
}

impl RootedGraph {
    pub fn new(graph: Graph, u: usize, v: usize) -> Result<Self> {
        if !graph.has_edge(u, v) {
            return Err(Error::domain(
                "rooted graph",
                format!("root {{{u},{v}}} is not an edge"),
            ));
        }
        Ok(RootedGraph {
            graph,
            root: (u, v),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> (usize, usize) {
        self.root
    }
}

/// One attached copy of `H` on a central edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub edge: Edge,
    /// Copy index in `1..=k`.
    pub copy: usize,
    /// The new (non-central) vertices of this copy.
    pub vertices: Vec<usize>,
    /// Edges of this copy other than the root.
    pub edges: Vec<Edge>,
    /// Image of every vertex of `H`, root endpoints included.
    pub vertex_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub central_vertices: Vec<usize>,
    /// Edges of the central copy of `G`; absent from `graph` when reduced.
    pub central_edges: Vec<Edge>,
    /// Sorted by (central edge, copy index).
    pub attachments: Vec<Attachment>,
    pub reduced: bool,
}

impl ProductGraph {
    pub fn attachment(&self, central: Edge, copy: usize) -> Option<&Attachment> {
        let key = (edge(central.0, central.1), copy);
        self.attachments
            .binary_search_by(|a| (a.edge, a.copy).cmp(&key))
            .ok()
            .map(|i| &self.attachments[i])
    }
}

#[derive(Serialize)]
struct Annotation<'a> {
    reduced: bool,
    central_vertices: &'a [usize],
    central_edges: Vec<[usize; 2]>,
    attachments: &'a [Attachment],
}

#[derive(Serialize)]
struct ProductRepr<'a> {
    n: usize,
    edges: Vec<[usize; 2]>,
    annotation: Annotation<'a>,
}

impl Serialize for ProductGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = |es: &[Edge]| es.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>();
        ProductRepr {
            n: self.graph.vertex_count(),
            edges: pairs(self.graph.edges()),
            annotation: Annotation {
                reduced: self.reduced,
                central_vertices: &self.central_vertices,
                central_edges: pairs(&self.central_edges),
                attachments: &self.attachments,
            },
        }
        .serialize(s)
    }
}

pub fn edge_rooted_product(g: &Graph, h: &RootedGraph, k: usize) -> Result<ProductGraph> {
    build(g, h, k, false)
}

pub fn reduced_edge_rooted_product(g: &Graph, h: &RootedGraph, k: usize) -> Result<ProductGraph> {
    build(g, h, k, true)
}

fn build(g: &Graph, h: &RootedGraph, k: usize, reduced: bool) -> Result<ProductGraph> {
    const OP: &str = "edge_rooted_product";
    if k == 0 {
        return Err(Error::domain(OP, "k must be positive"));
    }
    if g.edge_count() == 0 {
        return Err(Error::domain(OP, "G must have at least one edge"));
    }
    let hg = &h.graph;
    if hg.vertex_count() <= 2 {
        return Err(Error::domain(OP, "H needs a vertex outside its root edge"));
    }
    let (u, v) = h.root;
    let others: Vec<usize> = (0..hg.vertex_count()).filter(|&w| w != u && w != v).collect();
    let mut next = g.vertex_count();
    let mut edges: Vec<Edge> = if reduced { Vec::new() } else { g.edges().to_vec() };
    let mut attachments = Vec::with_capacity(g.edge_count() * k);
    let root = edge(u, v);
    for &(x, y) in g.edges() {
        for copy in 1..=k {
            let mut vertex_map = vec![0usize; hg.vertex_count()];
            vertex_map[u] = x;
            vertex_map[v] = y;
            let mut vertices = Vec::with_capacity(others.len());
            for &w in &others {
                vertex_map[w] = next;
                vertices.push(next);
                next += 1;
            }
            let copy_edges: Vec<Edge> = hg
                .edges()
                .iter()
                .filter(|&&f| f != root)
                .map(|&(a, b)| edge(vertex_map[a], vertex_map[b]))
                .collect();
            edges.extend(&copy_edges);
            let mut sorted_edges = copy_edges;
            sorted_edges.sort_unstable();
            attachments.push(Attachment {
                edge: (x, y),
                copy,
                vertices,
                edges: sorted_edges,
                vertex_map,
            });
        }
    }
    Ok(ProductGraph {
        graph: Graph::from_edges(next, edges)?,
        central_vertices: (0..g.vertex_count()).collect(),
        central_edges: g.edges().to_vec(),
        attachments,
        reduced,
    })
}
