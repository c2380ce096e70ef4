//! Edge colourings and monochromatic-copy detection.

pub(crate) mod engine;
mod extension;
mod search;
mod structure;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, find_copies, Edge, Graph, SubgraphCopy};

pub(crate) use extension::validate_new_edges;
pub use extension::{extend_uniformly, greedy_third_colour_extension};
pub use search::{search_h_free_colouring, SearchOutcome, SearchVerdict};
pub use structure::{
    check_forcing_structure, Condition, ForcingReport, ForcingStructure, Violation,
    FORCING_SCAN_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red,
    Blue,
    Green,
}

impl Colour {
    pub const ALL: [Colour; 3] = [Colour::Red, Colour::Blue, Colour::Green];

    /// The first `size` colours: `{red, blue}` or `{red, blue, green}`.
    pub fn palette(size: usize) -> Result<&'static [Colour]> {
        match size {
            2 => Ok(&Self::ALL[..2]),
            3 => Ok(&Self::ALL[..]),
            _ => Err(Error::domain("palette", format!("palette must be 2 or 3, got {size}"))),
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }

    pub(crate) fn from_index(i: usize) -> Colour {
        Self::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
            Colour::Green => "green",
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Colour {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "red" => Ok(Colour::Red),
            "blue" => Ok(Colour::Blue),
            "green" => Ok(Colour::Green),
            other => Err(Error::parse(1, other, "colour must be red, blue or green")),
        }
    }
}

/// A partial or total assignment of colours to the edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    host: Graph,
    assignment: BTreeMap<Edge, Colour>,
}

impl Colouring {
    /// The empty (partial) colouring of `host`.
    pub fn new(host: Graph) -> Self {
        Colouring {
            host,
            assignment: BTreeMap::new(),
        }
    }

    pub fn from_assignments<I>(host: Graph, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Edge, Colour)>,
    {
        let mut c = Colouring::new(host);
        for (e, colour) in pairs {
            c.set(e, colour)?;
        }
        Ok(c)
    }

    /// Colours every edge of `host` with `colour`.
    pub fn uniform(host: Graph, colour: Colour) -> Self {
        let assignment = host.edges().iter().map(|&e| (e, colour)).collect();
        Colouring { host, assignment }
    }

    pub fn set(&mut self, e: Edge, colour: Colour) -> Result<()> {
        let e = edge(e.0, e.1);
        if !self.host.has_edge(e.0, e.1) {
            return Err(Error::domain(
                "colouring",
                format!("{{{},{}}} is not an edge of the host", e.0, e.1),
            ));
        }
        match self.assignment.insert(e, colour) {
            Some(old) if old != colour => Err(Error::domain(
                "colouring",
                format!("edge {{{},{}}} coloured both {old} and {colour}", e.0, e.1),
            )),
            _ => Ok(()),
        }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn get(&self, e: Edge) -> Option<Colour> {
        self.assignment.get(&edge(e.0, e.1)).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<Edge, Colour> {
        &self.assignment
    }

    pub fn is_total(&self) -> bool {
        self.assignment.len() == self.host.edge_count()
    }

    pub fn uses(&self, colour: Colour) -> bool {
        self.assignment.values().any(|&c| c == colour)
    }

    /// Graph on the host's vertex set formed by the `colour` edges.
    pub fn colour_class(&self, colour: Colour) -> Graph {
        let edges = self
            .assignment
            .iter()
            .filter(|&(_, &c)| c == colour)
            .map(|(&e, _)| e);
        Graph::from_edges(self.host.vertex_count(), edges).expect("coloured edges are host edges")
    }

    /// Same assignment on a larger host (same vertex count, superset of edges).
    pub fn extend_host(&self, host: Graph) -> Result<Colouring> {
        Colouring::from_assignments(host, self.assignment.iter().map(|(&e, &c)| (e, c)))
    }

    /// Keeps only the assignments on edges of `sub`.
    pub fn restrict(&self, sub: &Graph) -> Result<Colouring> {
        Colouring::from_assignments(
            sub.clone(),
            self.assignment
                .iter()
                .filter(|(e, _)| sub.has_edge(e.0, e.1))
                .map(|(&e, &c)| (e, c)),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("colouring serialisation cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct ColouredEdge {
    u: usize,
    v: usize,
    colour: Colour,
}

#[derive(Serialize, Deserialize)]
struct ColouringRepr {
    edges: Vec<ColouredEdge>,
}

impl Serialize for Colouring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColouringRepr {
            edges: self
                .assignment
                .iter()
                .map(|(&(u, v), &colour)| ColouredEdge { u, v, colour })
                .collect(),
        }
        .serialize(s)
    }
}

/// Reads `{"edges": [{"u":..,"v":..,"colour":"red|blue|green"}, ...]}` against `host`.
pub fn parse_colouring(text: &str, host: &Graph) -> Result<Colouring> {
    let repr: ColouringRepr = serde_json::from_str(text).map_err(|e| {
        Error::parse(e.line(), text.trim().chars().take(32).collect::<String>(), e.to_string())
    })?;
    Colouring::from_assignments(
        host.clone(),
        repr.edges.into_iter().map(|ce| ((ce.u, ce.v), ce.colour)),
    )
}

/// Copies of `pattern` among the `colour` edges of a total colouring.
pub fn monochromatic_copies(
    colouring: &Colouring,
    pattern: &Graph,
    colour: Colour,
) -> Result<Vec<SubgraphCopy>> {
    if !colouring.is_total() {
        return Err(Error::domain("monochromatic_copies", "colouring is not total"));
    }
    Ok(find_copies(pattern, &colouring.colour_class(colour)))
}

/// First monochromatic copy of `pattern` in any colour, if one exists.
pub fn find_monochromatic_copy(
    colouring: &Colouring,
    pattern: &Graph,
) -> Option<(Colour, SubgraphCopy)> {
    Colour::ALL.iter().find_map(|&c| {
        find_copies(pattern, &colouring.colour_class(c))
            .into_iter()
            .next()
            .map(|copy| (c, copy))
    })
}
