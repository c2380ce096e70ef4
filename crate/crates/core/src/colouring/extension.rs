//! Extending a colouring of `G` to newly arrived edges.

use super::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::{edge, has_copy_through, Edge, Graph};

/// Normalises `new_edges` and checks they are distinct, in range and absent from `host`.
pub(crate) fn validate_new_edges(op: &'static str, host: &Graph, new_edges: &[Edge]) -> Result<Vec<Edge>> {
    let n = host.vertex_count();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(new_edges.len());
    for &(a, b) in new_edges {
        if a == b || a >= n || b >= n {
            return Err(Error::domain(op, format!("{{{a},{b}}} is not a pair of distinct vertices in 0..{n}")));
        }
        let e = edge(a, b);
        if host.has_edge(e.0, e.1) {
            return Err(Error::domain(op, format!("new edge {{{},{}}} is already an edge of G", e.0, e.1)));
        }
        if !seen.insert(e) {
            return Err(Error::domain(op, format!("new edge {{{},{}}} listed twice", e.0, e.1)));
        }
        out.push(e);
    }
    Ok(out)
}

/// Colours each new edge green unless that would complete a green copy of
/// `pattern`, in which case it becomes red. Edges are processed in the given order.
pub fn greedy_third_colour_extension(
    phi: &Colouring,
    new_edges: &[Edge],
    pattern: &Graph,
) -> Result<Colouring> {
    const OP: &str = "greedy_third_colour_extension";
    if !phi.is_total() {
        return Err(Error::domain(OP, "colouring of G is not total"));
    }
    if phi.uses(Colour::Green) {
        return Err(Error::domain(OP, "colouring of G already uses green"));
    }
    let new_edges = validate_new_edges(OP, phi.host(), new_edges)?;
    let n = phi.host().vertex_count();
    let mut green = Graph::empty(n);
    let mut extra = Vec::with_capacity(new_edges.len());
    for e in new_edges {
        let trial = green.with_edges([e])?;
        if has_copy_through(pattern, &trial, e) {
            extra.push((e, Colour::Red));
        } else {
            green = trial;
            extra.push((e, Colour::Green));
        }
    }
    let host = phi.host().with_edges(extra.iter().map(|&(e, _)| e))?;
    let mut out = phi.extend_host(host)?;
    for (e, c) in extra {
        out.set(e, c)?;
    }
    debug_assert!(!crate::graph::has_copy(pattern, &out.colour_class(Colour::Green)));
    Ok(out)
}

/// Colours every new edge with `colour`, leaving `phi` untouched.
pub fn extend_uniformly(phi: &Colouring, new_edges: &[Edge], colour: Colour) -> Result<Colouring> {
    let new_edges = validate_new_edges("extend_uniformly", phi.host(), new_edges)?;
    let host = phi.host().with_edges(new_edges.iter().copied())?;
    let mut out = phi.extend_host(host)?;
    for e in new_edges {
        out.set(e, colour)?;
    }
    Ok(out)
}
