//! The two-round Ramsey game: sampling, round-one colourings, round-two
//! arrivals, extendability verdicts and Monte Carlo sweeps.
//!
//! Randomness comes from ChaCha20 (`rand_chacha` 0.3.1). A 64-bit seed is
//! expanded into a key with `SeedableRng::seed_from_u64`; round one draws from
//! stream 1 and round two from stream 2. A pair `{i, j}` (scanned with `i < j`
//! in lexicographic order) is included when `(next_u64() >> 11) * 2^-53 < prob`.

mod extend;
mod play;
mod stats;
mod sweep;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, Colouring};
use crate::density::{max_density, DensityKind, Rational};
use crate::error::{Error, Result};
use crate::forcing::RootPolicy;
use crate::graph::{Edge, Graph};

pub use extend::{
    decide_extendability, decide_extendability_with, Certificate, ExtendOptions,
    ExtensionOutcome, ForcedPairEvidence, Verdict,
};
pub use play::{play_two_round, ForcedSummary, GameTranscript, RoundOne, RoundOneStatus};
pub use stats::{subgraph_count_statistics, CountStatistics, TrialCounts};
pub use sweep::{
    monte_carlo, GridPoint, PointStatistics, RateMode, SweepConfig, SweepTable, TrialSummary,
    CSV_HEADER,
};

pub const ROUND_ONE_STREAM: u64 = 1;
pub const ROUND_TWO_STREAM: u64 = 2;
/// Stream for auxiliary draws such as the vertex-set family of the count statistics.
pub const AUX_STREAM: u64 = 3;

/// The generator for `(seed, stream)`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform draw from `[0, 1)` with 53 random bits.
pub(crate) fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Folds `parts` into `master` with one SplitMix64 step per part.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(master, |h, &p| SplitMix64::seed_from_u64(h ^ p).next_u64())
}

fn check_probability(op: &'static str, name: &str, prob: f64) -> Result<()> {
    if (0.0..=1.0).contains(&prob) {
        Ok(())
    } else {
        Err(Error::domain(op, format!("{name} = {prob} violates 0 <= {name} <= 1")))
    }
}

/// `G(n, prob)` drawn from round-one stream of `seed`.
pub fn sample_gnp(n: usize, prob: f64, seed: u64) -> Result<Graph> {
    sample_gnp_on_stream(n, prob, seed, ROUND_ONE_STREAM)
}

pub fn sample_gnp_on_stream(n: usize, prob: f64, seed: u64, stream: u64) -> Result<Graph> {
    check_probability("sample_gnp", "prob", prob)?;
    let mut rng = stream_rng(seed, stream);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if unit_f64(&mut rng) < prob {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// How the round-two probability is given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoundTwoRate {
    /// `q` itself.
    Probability(f64),
    /// `ω`, with `q = ω n^-2` for two colours and `q = ω n^(-1/m(H))` for three.
    Coefficient(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColouringSource {
    /// First colouring found by exhaustive search.
    Search,
    /// Taken from the configuration; its edges are the round-one graph.
    Supplied,
    /// Heuristic: each edge in order gets the colour creating the fewest new near-copies.
    AdversarialGreedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouredEdge {
    pub u: usize,
    pub v: usize,
    pub colour: Colour,
}

fn default_budget() -> u64 {
    1_000_000
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameConfig {
    pub n: usize,
    /// The graph `H` to avoid.
    pub pattern: Graph,
    pub palette: usize,
    /// Round one uses `p = c n^(-1/m2(H))`.
    pub c: f64,
    pub q: RoundTwoRate,
    pub colouring_source: ColouringSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supplied_colouring: Option<Vec<ColouredEdge>>,
    #[serde(default = "default_budget")]
    pub search_budget: u64,
    #[serde(default = "default_budget")]
    pub extend_budget: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub root_policy: RootPolicy,
    #[serde(default = "default_true")]
    pub fast_path: bool,
}

/// Evaluated edge probabilities of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Probabilities {
    pub p: f64,
    pub q: f64,
}

impl GameConfig {
    pub fn new(n: usize, pattern: Graph, palette: usize, c: f64, q: RoundTwoRate) -> Self {
        GameConfig {
            n,
            pattern,
            palette,
            c,
            q,
            colouring_source: ColouringSource::AdversarialGreedy,
            supplied_colouring: None,
            search_budget: default_budget(),
            extend_budget: default_budget(),
            seed: 0,
            root_policy: RootPolicy::AllEdges,
            fast_path: true,
        }
    }

    /// Validates the configuration and evaluates `p` and `q`, clamped to `[0, 1]`.
    ///
    /// Exponents are exact rationals converted to floating point once.
    pub fn probabilities(&self) -> Result<Probabilities> {
        const OP: &str = "game config";
        Colour::palette(self.palette)?;
        if self.n == 0 {
            return Err(Error::domain(OP, "n must be positive"));
        }
        if self.pattern.edge_count() < 2 {
            return Err(Error::domain(OP, "pattern needs at least two edges"));
        }
        if !(self.c.is_finite() && self.c >= 0.0) {
            return Err(Error::domain(OP, format!("c = {} must be finite and non-negative", self.c)));
        }
        if self.search_budget == 0 || self.extend_budget == 0 {
            return Err(Error::domain(OP, "budgets must be positive"));
        }
        if self.colouring_source == ColouringSource::Supplied && self.supplied_colouring.is_none() {
            return Err(Error::domain(OP, "colouring_source supplied needs supplied_colouring"));
        }
        if let RootPolicy::Fixed((a, b)) = self.root_policy {
            if !self.pattern.has_edge(a, b) {
                return Err(Error::domain(OP, format!("root {{{a},{b}}} is not an edge of the pattern")));
            }
        }
        let m2 = max_density(&self.pattern, DensityKind::TwoDensity)?.value;
        let n = self.n as f64;
        let p = (self.c * n.powf(neg_reciprocal(m2))).min(1.0);
        let q = match self.q {
            RoundTwoRate::Probability(q) => {
                check_probability(OP, "q", q)?;
                q
            }
            RoundTwoRate::Coefficient(w) => {
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::domain(OP, format!("q coefficient {w} must be finite and non-negative")));
                }
                let exponent = if self.palette == 2 {
                    -2.0
                } else {
                    neg_reciprocal(max_density(&self.pattern, DensityKind::Density)?.value)
                };
                (w * n.powf(exponent)).min(1.0)
            }
        };
        Ok(Probabilities { p, q })
    }

    /// The supplied colouring on its own edge set, checked against `n`.
    pub fn supplied(&self) -> Result<Option<Colouring>> {
        let Some(list) = &self.supplied_colouring else {
            return Ok(None);
        };
        let host = Graph::from_edges(self.n, list.iter().map(|ce| (ce.u, ce.v)))?;
        Colouring::from_assignments(host, list.iter().map(|ce| ((ce.u, ce.v), ce.colour))).map(Some)
    }
}

fn neg_reciprocal(r: Rational) -> f64 {
    -(*r.denom() as f64) / (*r.numer() as f64)
}

/// Round-two arrivals: `G(n, q)` from stream 2 with the edges of `g` removed.
pub fn sample_round_two(g: &Graph, q: f64, seed: u64) -> Result<Vec<Edge>> {
    let extra = sample_gnp_on_stream(g.vertex_count(), q, seed, ROUND_TWO_STREAM)?;
    Ok(extra
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| !g.has_edge(a, b))
        .collect())
}
