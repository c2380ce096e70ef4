//! One play of the two-round game.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::extend::{decide_inner, ExtensionOutcome};
use super::{
    sample_gnp, sample_round_two, ColouringSource, GameConfig, Probabilities,
};
use crate::colouring::{
    find_monochromatic_copy, search_h_free_colouring, Colour, Colouring, SearchVerdict,
};
use crate::error::{Error, Result};
use crate::forcing::{colour_bases, forced_set, RootPolicy};
use crate::graph::{edge, for_each_embedding, has_copy_through, Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoundOneStatus {
    Coloured,
    /// Exhaustive search proved every colouring has a monochromatic copy.
    NoneExists,
    /// The search budget ran out.
    Unknown,
    /// The greedy heuristic met an edge where every colour completes a copy.
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundOne {
    pub source: ColouringSource,
    pub heuristic: bool,
    pub status: RoundOneStatus,
    pub search_nodes: u64,
}

/// Per-colour counts are ordered red, blue, green.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedSummary {
    pub bases: [usize; 3],
    pub forced_pairs: [usize; 3],
    pub forced_copies: [usize; 3],
    /// Pairs with no safe colour.
    pub dead_pairs: usize,
    pub headline_pairs: usize,
    pub headline_copies: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameTranscript {
    pub config: GameConfig,
    pub probabilities: Probabilities,
    pub round_one: RoundOne,
    pub graph: Graph,
    pub colouring: Option<Colouring>,
    pub forced: Option<ForcedSummary>,
    pub round_two_edges: Vec<Edge>,
    pub outcome: Option<ExtensionOutcome>,
}

impl GameTranscript {
    /// `extendable`, `not-extendable`, `unknown`, or the failed round-one status.
    pub fn label(&self) -> &'static str {
        match (&self.outcome, self.round_one.status) {
            (Some(out), _) => out.verdict.label(),
            (None, RoundOneStatus::NoneExists) => "round-one-none-exists",
            (None, RoundOneStatus::Stuck) => "round-one-stuck",
            (None, _) => "round-one-unknown",
        }
    }
}

/// Plays one game with the configuration's seed.
pub fn play_two_round(config: &GameConfig) -> Result<GameTranscript> {
    let probabilities = config.probabilities()?;
    let pattern = &config.pattern;
    let (graph, phi, round_one) = round_one(config, probabilities.p)?;
    let mut transcript = GameTranscript {
        config: config.clone(),
        probabilities,
        round_one,
        graph,
        colouring: None,
        forced: None,
        round_two_edges: Vec::new(),
        outcome: None,
    };
    let Some(phi) = phi else {
        return Ok(transcript);
    };
    let g = &transcript.graph;
    let bases = colour_bases(&phi, pattern, config.root_policy)?;
    let set = forced_set(&bases, config.palette, pattern, g.vertex_count())?;
    transcript.forced = Some(ForcedSummary {
        bases: Colour::ALL.map(|c| bases.count(c)),
        forced_pairs: Colour::ALL.map(|c| set.forced_pairs(c).len()),
        forced_copies: Colour::ALL.map(|c| set.forced_copies(c).len()),
        dead_pairs: set.dead_pairs().len(),
        headline_pairs: set.headline_pairs(),
        headline_copies: set.headline_copies(),
    });
    let arrivals = sample_round_two(g, probabilities.q, config.seed)?;
    let forced = config.fast_path.then_some((&bases, &set));
    let outcome = decide_inner(
        g,
        &phi,
        &arrivals,
        pattern,
        config.palette,
        config.extend_budget,
        forced,
    )?;
    transcript.round_two_edges = arrivals;
    transcript.colouring = Some(phi);
    transcript.outcome = Some(outcome);
    Ok(transcript)
}

fn round_one(config: &GameConfig, p: f64) -> Result<(Graph, Option<Colouring>, RoundOne)> {
    let pattern = &config.pattern;
    let palette = Colour::palette(config.palette)?;
    let mut info = RoundOne {
        source: config.colouring_source,
        heuristic: config.colouring_source == ColouringSource::AdversarialGreedy,
        status: RoundOneStatus::Coloured,
        search_nodes: 0,
    };
    match config.colouring_source {
        ColouringSource::Supplied => {
            let phi = config.supplied()?.expect("checked by probabilities()");
            if let Some(c) = phi.assignment().values().find(|c| !palette.contains(c)) {
                return Err(Error::domain("supplied colouring", format!("uses {c}, outside the palette")));
            }
            if let Some((colour, copy)) = find_monochromatic_copy(&phi, pattern) {
                return Err(Error::domain(
                    "supplied colouring",
                    format!("has a {colour} copy of the pattern on edges {:?}", copy.edges),
                ));
            }
            Ok((phi.host().clone(), Some(phi), info))
        }
        ColouringSource::Search => {
            let g = sample_gnp(config.n, p, config.seed)?;
            let out = search_h_free_colouring(&g, pattern, config.palette, config.search_budget)?;
            info.search_nodes = out.nodes;
            let phi = match out.verdict {
                SearchVerdict::Found { colouring } => Some(colouring),
                SearchVerdict::NoneExists => {
                    info.status = RoundOneStatus::NoneExists;
                    None
                }
                SearchVerdict::Unknown => {
                    info.status = RoundOneStatus::Unknown;
                    None
                }
            };
            Ok((g, phi, info))
        }
        ColouringSource::AdversarialGreedy => {
            let g = sample_gnp(config.n, p, config.seed)?;
            let phi = adversarial_greedy(&g, pattern, palette, config.root_policy);
            if phi.is_none() {
                info.status = RoundOneStatus::Stuck;
            }
            Ok((g, phi, info))
        }
    }
}

/// Colours the edges of `g` in lexicographic order. Each edge takes the colour
/// that completes no copy of `pattern` and creates the fewest new monochromatic
/// near-copies (a copy of the pattern minus one edge, counted with the pair
/// that would complete it); ties go to the earlier colour.
pub(crate) fn adversarial_greedy(
    g: &Graph,
    pattern: &Graph,
    palette: &[Colour],
    policy: RootPolicy,
) -> Option<Colouring> {
    let n = g.vertex_count();
    let roots: Vec<Edge> = match policy {
        RootPolicy::Fixed((a, b)) => vec![edge(a, b)],
        RootPolicy::AllEdges => pattern.edges().to_vec(),
    };
    let reduced: Vec<(Edge, Graph)> = roots.iter().map(|&h| (h, pattern.without_edge(h))).collect();
    let mut classes: Vec<Vec<Edge>> = vec![Vec::new(); palette.len()];
    let mut phi = Colouring::new(g.clone());
    for &e in g.edges() {
        let mut best: Option<(usize, usize)> = None;
        for (i, class) in classes.iter().enumerate() {
            let trial = Graph::from_edges(n, class.iter().copied().chain([e])).expect("valid");
            if has_copy_through(pattern, &trial, e) {
                continue;
            }
            let cost = near_copies_through(&reduced, &trial, e);
            if best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, i));
            }
        }
        let (_, i) = best?;
        classes[i].push(e);
        phi.set(e, palette[i]).expect("edge of g");
    }
    Some(phi)
}

fn near_copies_through(reduced: &[(Edge, Graph)], host: &Graph, e: Edge) -> usize {
    let mut seen: BTreeSet<(Vec<Edge>, Edge)> = BTreeSet::new();
    for (root, rest) in reduced {
        for &(a, b) in rest.edges() {
            for fixed in [[(a, e.0), (b, e.1)], [(a, e.1), (b, e.0)]] {
                let _ = for_each_embedding(rest, host, &fixed, |map| {
                    let mut edges: Vec<Edge> =
                        rest.edges().iter().map(|&(p, q)| edge(map[p], map[q])).collect();
                    edges.sort_unstable();
                    seen.insert((edges, edge(map[root.0], map[root.1])));
                    ControlFlow::Continue(())
                });
            }
        }
    }
    seen.len()
}
