//! Colour bases, colour-forced pairs and colour-forced copies.
//!
//! A pair `{x, y}` is a χ-base when some χ-monochromatic copy of `H - h` has
//! the endpoints of `h` on `x` and `y`; colouring `{x, y}` with χ would then
//! complete a χ-monochromatic `H`. A pair is χ-forced when it is a base in
//! every other colour of the palette, so χ is its only safe colour. With two
//! colours a green-forced pair has no safe colour at all.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring};
use crate::error::{Error, Result};
use crate::graph::{edge, find_copies, for_each_embedding, Edge, Graph, SubgraphCopy};

/// Which edges of `H` may play the missing edge of a base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RootPolicy {
    /// Only the given edge of `H`.
    Fixed(Edge),
    /// Any edge of `H`.
    #[default]
    AllEdges,
}

/// One monochromatic copy of `H - removed` supported on a pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseWitness {
    pub colour: Colour,
    /// The edge of `H` mapped onto the pair.
    pub removed: Edge,
    /// Image of every vertex of `H`.
    pub map: Vec<usize>,
    /// Image edges of `H - removed`.
    pub edges: Vec<Edge>,
}

impl BaseWitness {
    /// Re-checks the witness against a colouring from scratch.
    pub fn is_valid(&self, phi: &Colouring, pattern: &Graph, pair: Edge) -> bool {
        let (a, b) = self.removed;
        let distinct: BTreeSet<usize> = self.map.iter().copied().collect();
        pattern.has_edge(a, b)
            && self.map.len() == pattern.vertex_count()
            && distinct.len() == self.map.len()
            && edge(self.map[a], self.map[b]) == edge(pair.0, pair.1)
            && pattern
                .edges()
                .iter()
                .filter(|&&e| e != edge(a, b))
                .all(|&(p, q)| phi.get((self.map[p], self.map[q])) == Some(self.colour))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseMap {
    n: usize,
    /// Pair -> one witness per colour, in colour order.
    pairs: BTreeMap<Edge, Vec<BaseWitness>>,
    /// Base pairs that are already edges of the coloured graph.
    host_edges: BTreeSet<Edge>,
}

impl BaseMap {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs that are a base in at least one colour.
    pub fn pairs(&self) -> impl Iterator<Item = Edge> + '_ {
        self.pairs.keys().copied()
    }

    pub fn colours(&self, pair: Edge) -> Vec<Colour> {
        self.pairs
            .get(&edge(pair.0, pair.1))
            .map(|ws| ws.iter().map(|w| w.colour).collect())
            .unwrap_or_default()
    }

    pub fn is_base(&self, pair: Edge, colour: Colour) -> bool {
        self.witness(pair, colour).is_some()
    }

    pub fn witness(&self, pair: Edge, colour: Colour) -> Option<&BaseWitness> {
        self.pairs
            .get(&edge(pair.0, pair.1))
            .and_then(|ws| ws.iter().find(|w| w.colour == colour))
    }

    pub fn is_host_edge(&self, pair: Edge) -> bool {
        self.host_edges.contains(&edge(pair.0, pair.1))
    }

    /// Number of χ-bases.
    pub fn count(&self, colour: Colour) -> usize {
        self.pairs
            .values()
            .filter(|ws| ws.iter().any(|w| w.colour == colour))
            .count()
    }
}

/// Finds every base pair of a total colouring, with one witness per (pair, colour).
pub fn colour_bases(phi: &Colouring, pattern: &Graph, policy: RootPolicy) -> Result<BaseMap> {
    const OP: &str = "colour_bases";
    if !phi.is_total() {
        return Err(Error::domain(OP, "colouring is not total"));
    }
    let roots: Vec<Edge> = match policy {
        RootPolicy::Fixed((a, b)) => {
            if !pattern.has_edge(a, b) {
                return Err(Error::domain(OP, format!("root {{{a},{b}}} is not an edge of H")));
            }
            vec![edge(a, b)]
        }
        RootPolicy::AllEdges => pattern.edges().to_vec(),
    };
    let host = phi.host();
    let n = host.vertex_count();
    let mut pairs: BTreeMap<Edge, Vec<BaseWitness>> = BTreeMap::new();
    if n < pattern.vertex_count() || pattern.edge_count() == 0 {
        return Ok(BaseMap { n, pairs, host_edges: BTreeSet::new() });
    }
    let reduced: Vec<(Edge, Graph)> = roots.iter().map(|&h| (h, pattern.without_edge(h))).collect();
    for colour in Colour::ALL {
        let class = phi.colour_class(colour);
        if class.edge_count() + 1 < pattern.edge_count() {
            continue;
        }
        for x in 0..n {
            for y in x + 1..n {
                let found = reduced.iter().find_map(|(h, rest)| {
                    supported_copy(rest, &class, *h, (x, y)).map(|map| (*h, rest, map))
                });
                if let Some((removed, rest, map)) = found {
                    let mut edges: Vec<Edge> =
                        rest.edges().iter().map(|&(p, q)| edge(map[p], map[q])).collect();
                    edges.sort_unstable();
                    pairs.entry((x, y)).or_default().push(BaseWitness {
                        colour,
                        removed,
                        map,
                        edges,
                    });
                }
            }
        }
    }
    let host_edges = pairs.keys().copied().filter(|&(x, y)| host.has_edge(x, y)).collect();
    Ok(BaseMap { n, pairs, host_edges })
}

/// First embedding of `rest` into `class` sending the root `(a, b)` onto `{x, y}`.
fn supported_copy(rest: &Graph, class: &Graph, (a, b): Edge, (x, y): Edge) -> Option<Vec<usize>> {
    let mut out = None;
    for fixed in [[(a, x), (b, y)], [(a, y), (b, x)]] {
        let _ = for_each_embedding(rest, class, &fixed, |map| {
            out = Some(map.to_vec());
            ControlFlow::Break(())
        });
        if out.is_some() {
            break;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedSet {
    pub palette: usize,
    /// χ-forced pairs, indexed by colour (red, blue, green).
    pub pairs: [Vec<Edge>; 3],
    /// χ-forced copies of `H` in the complete graph, indexed by colour.
    pub copies: [Vec<SubgraphCopy>; 3],
}

impl ForcedSet {
    pub fn forced_pairs(&self, colour: Colour) -> &[Edge] {
        &self.pairs[colour.index()]
    }

    pub fn forced_copies(&self, colour: Colour) -> &[SubgraphCopy] {
        &self.copies[colour.index()]
    }

    pub fn is_forced(&self, pair: Edge, colour: Colour) -> bool {
        self.pairs[colour.index()].binary_search(&edge(pair.0, pair.1)).is_ok()
    }

    /// Pairs with no safe colour: green-forced with two colours, forced in
    /// every colour with three.
    pub fn dead_pairs(&self) -> Vec<Edge> {
        match self.palette {
            2 => self.pairs[Colour::Green.index()].clone(),
            _ => {
                let [r, b, g] = &self.pairs;
                r.iter()
                    .filter(|p| b.binary_search(p).is_ok() && g.binary_search(p).is_ok())
                    .copied()
                    .collect()
            }
        }
    }

    /// Headline pair count: green-forced pairs with two colours, the largest
    /// per-colour count with three.
    pub fn headline_pairs(&self) -> usize {
        match self.palette {
            2 => self.pairs[Colour::Green.index()].len(),
            _ => self.pairs.iter().map(Vec::len).max().unwrap_or(0),
        }
    }

    /// Headline copy count, chosen like [`ForcedSet::headline_pairs`].
    pub fn headline_copies(&self) -> usize {
        match self.palette {
            2 => self.copies[Colour::Green.index()].len(),
            _ => self.copies.iter().map(Vec::len).max().unwrap_or(0),
        }
    }
}

/// Derives forced pairs and forced copies from a base map.
pub fn forced_set(bases: &BaseMap, palette: usize, pattern: &Graph, n: usize) -> Result<ForcedSet> {
    let active = Colour::palette(palette)?;
    if bases.n != n {
        return Err(Error::domain(
            "forced_set",
            format!("base map covers {} vertices, not {n}", bases.n),
        ));
    }
    let mut pairs: [Vec<Edge>; 3] = Default::default();
    for colour in Colour::ALL {
        pairs[colour.index()] = bases
            .pairs
            .iter()
            .filter(|(_, ws)| {
                active
                    .iter()
                    .filter(|&&other| other != colour)
                    .all(|&other| ws.iter().any(|w| w.colour == other))
            })
            .map(|(&p, _)| p)
            .collect();
    }
    let copies = pairs.clone().map(|forced| {
        if forced.len() < pattern.edge_count() {
            return Vec::new();
        }
        let graph = Graph::from_edges(n, forced).expect("base pairs lie in 0..n");
        find_copies(pattern, &graph)
    });
    Ok(ForcedSet { palette, pairs, copies })
}
