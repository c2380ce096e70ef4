//! Named graph families used by tests, fixtures and the CLI.

use super::{Edge, Graph};

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Graph::from_edges(n, edges).expect("complete graph edges are valid")
}

/// `C_n` on `0 - 1 - ... - (n-1) - 0`; needs `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

/// Star with one centre (vertex 0) and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are valid")
}

/// Triangle `0 1 2` with a pendant edge `2 - 3`.
pub fn triangle_with_pendant() -> Graph {
    Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).expect("valid")
}

/// Vertex-disjoint union; `b` is shifted past `a`'s vertices.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.vertex_count();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(x, y)| (x + shift, y + shift)));
    Graph::from_edges(shift + b.vertex_count(), edges).expect("union edges are valid")
}

/// Two triangles whose apex vertices are joined by a path with `len` edges.
///
/// Vertices `0 1 2` and `3 4 5` are the triangles; 2 and 5 are the path ends,
/// with internal path vertices numbered from 6 upwards.
pub fn two_triangles_joined_by_path(len: usize) -> Graph {
    assert!(len >= 1, "path length must be positive");
    let mut edges: Vec<Edge> = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
    let internal: Vec<usize> = (6..6 + len - 1).collect();
    let mut chain = vec![2];
    chain.extend(&internal);
    chain.push(5);
    edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    Graph::from_edges(6 + len - 1, edges).expect("valid")
}
