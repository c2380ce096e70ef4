//! Can a monochromatic-free colouring of `G` absorb new edges?

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::colouring::engine::{Constraint, Engine, Outcome};
use crate::colouring::{find_monochromatic_copy, validate_new_edges, Colour, Colouring};
use crate::error::{Error, Result};
use crate::forcing::{colour_bases, forced_set, BaseMap, BaseWitness, ForcedSet, RootPolicy};
use crate::graph::{find_copies, find_copies_through, has_copy, Edge, Graph, SubgraphCopy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtendOptions {
    /// Try forced-pair and forced-copy certificates before searching.
    pub fast_path: bool,
    pub root_policy: RootPolicy,
    /// Search node cap.
    pub budget: u64,
}

impl ExtendOptions {
    pub fn with_budget(budget: u64) -> Self {
        ExtendOptions {
            fast_path: true,
            root_policy: RootPolicy::AllEdges,
            budget,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedPairEvidence {
    pub pair: Edge,
    /// One base witness per colour that the pair may not take.
    pub witnesses: Vec<BaseWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// A new edge that is a base in every palette colour.
    ForcedPair(ForcedPairEvidence),
    /// A copy of `H` made of new edges, each forced to `colour`.
    ForcedCopy {
        colour: Colour,
        copy: SubgraphCopy,
        edges: Vec<ForcedPairEvidence>,
    },
    /// The search tree was explored completely.
    Exhaustive { nodes: u64, constraints: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Extendable { colouring: Colouring },
    NotExtendable { certificate: Certificate },
    Unknown,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Extendable { .. } => "extendable",
            Verdict::NotExtendable { .. } => "not-extendable",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionOutcome {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub nodes: u64,
}

/// [`decide_extendability_with`] using the fast path and every root edge.
pub fn decide_extendability(
    g: &Graph,
    phi: &Colouring,
    new_edges: &[Edge],
    pattern: &Graph,
    palette: usize,
    budget: u64,
) -> Result<ExtensionOutcome> {
    decide_extendability_with(g, phi, new_edges, pattern, palette, &ExtendOptions::with_budget(budget))
}

/// Decides whether `phi` extends to `G + new_edges` without a monochromatic `pattern`.
pub fn decide_extendability_with(
    g: &Graph,
    phi: &Colouring,
    new_edges: &[Edge],
    pattern: &Graph,
    palette: usize,
    options: &ExtendOptions,
) -> Result<ExtensionOutcome> {
    let forced = if options.fast_path {
        let bases = colour_bases(phi, pattern, options.root_policy)?;
        let set = forced_set(&bases, palette, pattern, g.vertex_count())?;
        Some((bases, set))
    } else {
        None
    };
    decide_inner(
        g,
        phi,
        new_edges,
        pattern,
        palette,
        options.budget,
        forced.as_ref().map(|(b, f)| (b, f)),
    )
}

pub(crate) fn decide_inner(
    g: &Graph,
    phi: &Colouring,
    new_edges: &[Edge],
    pattern: &Graph,
    palette: usize,
    budget: u64,
    forced: Option<(&BaseMap, &ForcedSet)>,
) -> Result<ExtensionOutcome> {
    const OP: &str = "decide_extendability";
    let colours = Colour::palette(palette)?;
    if budget == 0 {
        return Err(Error::domain(OP, "node budget must be positive"));
    }
    if phi.host() != g {
        return Err(Error::domain(OP, "colouring is not on G"));
    }
    if !phi.is_total() {
        return Err(Error::domain(OP, "colouring of G is not total"));
    }
    if let Some(c) = phi.assignment().values().find(|c| !colours.contains(c)) {
        return Err(Error::domain(OP, format!("colouring uses {c}, outside the palette")));
    }
    if let Some((colour, copy)) = find_monochromatic_copy(phi, pattern) {
        return Err(Error::domain(
            OP,
            format!("colouring of G already has a {colour} copy on edges {:?}", copy.edges),
        ));
    }
    let new_edges = validate_new_edges(OP, g, new_edges)?;
    let union = g.with_edges(new_edges.iter().copied())?;
    if new_edges.is_empty() {
        return Ok(ExtensionOutcome {
            verdict: Verdict::Extendable { colouring: phi.clone() },
            nodes: 0,
        });
    }
    if let Some((bases, set)) = forced {
        if let Some(certificate) = fast_certificate(bases, set, &new_edges, pattern, colours) {
            return Ok(ExtensionOutcome {
                verdict: Verdict::NotExtendable { certificate },
                nodes: 0,
            });
        }
    }

    let index: HashMap<Edge, usize> = new_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut copies = BTreeSet::new();
    for &e in &new_edges {
        copies.extend(find_copies_through(pattern, &union, e));
    }
    let mut constraints = Vec::with_capacity(copies.len());
    for copy in &copies {
        let mut fixed = copy.edges.iter().filter_map(|&e| phi.get(e));
        let required = match fixed.next() {
            None => None,
            Some(c) if fixed.all(|d| d == c) => Some(c.index() as u8),
            Some(_) => continue,
        };
        constraints.push(Constraint {
            free: copy.edges.iter().filter_map(|e| index.get(e).copied()).collect(),
            required,
        });
    }
    let engine = Engine {
        edge_count: new_edges.len(),
        palette: palette as u8,
        constraints,
        symmetric: false,
    };
    let (outcome, nodes) = engine.run(budget);
    let verdict = match outcome {
        Outcome::Solution(assign) => {
            let mut colouring = phi.extend_host(union)?;
            for (&e, c) in new_edges.iter().zip(assign) {
                colouring.set(e, Colour::from_index(c as usize))?;
            }
            Verdict::Extendable { colouring }
        }
        Outcome::Exhausted => Verdict::NotExtendable {
            certificate: Certificate::Exhaustive {
                nodes,
                constraints: engine.constraints.len(),
            },
        },
        Outcome::OutOfBudget => Verdict::Unknown,
    };
    Ok(ExtensionOutcome { verdict, nodes })
}

fn evidence(bases: &BaseMap, pair: Edge, colours: &[Colour]) -> ForcedPairEvidence {
    ForcedPairEvidence {
        pair,
        witnesses: colours
            .iter()
            .filter_map(|&c| bases.witness(pair, c).cloned())
            .collect(),
    }
}

fn fast_certificate(
    bases: &BaseMap,
    set: &ForcedSet,
    new_edges: &[Edge],
    pattern: &Graph,
    colours: &[Colour],
) -> Option<Certificate> {
    let dead: BTreeSet<Edge> = set.dead_pairs().into_iter().collect();
    if let Some(&pair) = new_edges.iter().find(|e| dead.contains(e)) {
        return Some(Certificate::ForcedPair(evidence(bases, pair, colours)));
    }
    let n = bases.vertex_count();
    for &colour in colours {
        let forced: Vec<Edge> = new_edges
            .iter()
            .copied()
            .filter(|&e| set.is_forced(e, colour))
            .collect();
        if forced.len() < pattern.edge_count() {
            continue;
        }
        let graph = Graph::from_edges(n, forced).expect("new edges are in range");
        if let Some(copy) = find_copies(pattern, &graph).into_iter().next() {
            let others: Vec<Colour> = colours.iter().copied().filter(|&c| c != colour).collect();
            let edges = copy.edges.iter().map(|&e| evidence(bases, e, &others)).collect();
            return Some(Certificate::ForcedCopy { colour, copy, edges });
        }
    }
    None
}

impl Certificate {
    /// Re-derives the certificate from scratch against `phi` and the new edges.
    ///
    /// Exhaustive certificates are replayed with the fast path off and the
    /// recorded node count as budget.
    pub fn validate(
        &self,
        phi: &Colouring,
        new_edges: &[Edge],
        pattern: &Graph,
        palette: usize,
    ) -> bool {
        let Ok(colours) = Colour::palette(palette) else {
            return false;
        };
        let arrived: BTreeSet<Edge> = new_edges.iter().map(|&(a, b)| crate::graph::edge(a, b)).collect();
        let covers = |ev: &ForcedPairEvidence, needed: &[Colour]| {
            needed.iter().all(|&c| {
                ev.witnesses
                    .iter()
                    .any(|w| w.colour == c && w.is_valid(phi, pattern, ev.pair))
            })
        };
        match self {
            Certificate::ForcedPair(ev) => arrived.contains(&ev.pair) && covers(ev, colours),
            Certificate::ForcedCopy { colour, copy, edges } => {
                let others: Vec<Colour> = colours.iter().copied().filter(|c| c != colour).collect();
                let n = phi.host().vertex_count();
                let Ok(image) = Graph::from_edges(n, copy.edges.iter().copied()) else {
                    return false;
                };
                copy.edges.len() == pattern.edge_count()
                    && has_copy(pattern, &image)
                    && copy.edges.iter().all(|e| arrived.contains(e))
                    && edges.len() == copy.edges.len()
                    && edges.iter().zip(&copy.edges).all(|(ev, e)| ev.pair == *e && covers(ev, &others))
            }
            Certificate::Exhaustive { nodes, .. } => {
                let options = ExtendOptions {
                    fast_path: false,
                    root_policy: RootPolicy::AllEdges,
                    budget: (*nodes).max(1),
                };
                matches!(
                    decide_extendability_with(phi.host(), phi, new_edges, pattern, palette, &options),
                    Ok(ExtensionOutcome {
                        verdict: Verdict::NotExtendable { certificate: Certificate::Exhaustive { .. } },
                        ..
                    })
                )
            }
        }
    }
}
