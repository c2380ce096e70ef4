//! Simple undirected graphs on the vertex set `0..n`.
//!
//! A [`Graph`] is immutable once built. Every operation that "changes" a
//! graph returns a new one, so values can be shared freely between threads.

mod canon;
mod catalog;
mod embed;
pub mod families;
mod packing;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use catalog::graphs_up_to_isomorphism;
pub use embed::{
    find_copies, find_copies_through, for_each_embedding, has_copy, has_copy_through, Embedding,
    SubgraphCopy,
};
pub use packing::{
    max_edge_disjoint_copies, max_edge_disjoint_copies_with_cap, CopyPacking, PackingMode,
    DEFAULT_EXACT_PACKING_CAP,
};
pub use parse::parse_graph;

/// An unordered vertex pair, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalises `{a, b}` to `(min, max)`.
#[inline]
pub fn edge(a: usize, b: usize) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Simple undirected graph with labelled vertices `0..n`.
///
/// Equality, ordering and hashing look only at `n` and the edge set.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    neighbours: Vec<Vec<usize>>,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::build(n, Vec::new())
    }

    /// Builds a graph from an edge iterator. Duplicates collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::domain("graph", format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::domain(
                    "graph",
                    format!("edge {{{a},{b}}} has an endpoint outside 0..{n}"),
                ));
            }
            set.insert(edge(a, b));
        }
        Ok(Self::build(n, set.into_iter().collect()))
    }

    // `edges` must be sorted, unique, normalised and in range.
    fn build(n: usize, edges: Vec<Edge>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        let mut neighbours = vec![Vec::new(); n];
        for &(a, b) in &edges {
            bits[a * words + b / 64] |= 1 << (b % 64);
            bits[b * words + a / 64] |= 1 << (a % 64);
            neighbours[a].push(b);
            neighbours[b].push(a);
        }
        for list in &mut neighbours {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            neighbours,
            words,
            bits,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && (self.bits[a * self.words + b / 64] >> (b % 64)) & 1 == 1
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.neighbours[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.neighbours[v].len()
    }

    /// Vertices with at least one incident edge.
    pub fn non_isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) > 0).collect()
    }

    /// Same vertex set with `e` removed (no-op when `e` is absent).
    pub fn without_edge(&self, e: Edge) -> Graph {
        let e = edge(e.0, e.1);
        Self::build(
            self.n,
            self.edges.iter().copied().filter(|&f| f != e).collect(),
        )
    }

    /// Same vertex set with extra edges added.
    pub fn with_edges<I: IntoIterator<Item = Edge>>(&self, extra: I) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.iter().copied().chain(extra))
    }

    /// Edge union of two graphs on the same vertex count.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::domain(
                "graph union",
                format!("vertex counts differ ({} vs {})", self.n, other.n),
            ));
        }
        self.with_edges(other.edges.iter().copied())
    }

    /// Applies `perm` (old label -> new label), which must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::domain("relabel", "argument is not a permutation"));
        }
        Graph::from_edges(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    /// Subgraph induced by `vertices`, relabelled order-preservingly to `0..|S|`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&v| v >= self.n) {
            return Err(Error::domain(
                "induced_subgraph",
                format!("vertex {bad} out of range 0..{}", self.n),
            ));
        }
        let order: Vec<usize> = set.into_iter().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]))
            .collect::<Vec<_>>();
        Ok(Self::build(order.len(), edges))
    }

    /// Adjacency rows as bitmasks; only meaningful for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| (0..self.n).map(|v| self.bits[v * self.words]).collect())
    }

    /// Edge-list text: a header line with `n`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    /// Compact JSON form `{"n":..,"edges":[[u,v],..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialisation cannot fail")
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Graph {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.edges).cmp(&(other.n, &other.edges))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::from_edges(repr.n, repr.edges.into_iter().map(|[a, b]| (a, b)))
            .map_err(serde::de::Error::custom)
    }
}
