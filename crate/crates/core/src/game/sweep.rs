//! Monte Carlo sweeps over `(n, c, q, palette)` grids.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{derive_seed, play_two_round, GameConfig, GameTranscript, RoundTwoRate};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RateMode {
    /// Grid `q` values are coefficients `ω`.
    #[default]
    Coefficient,
    /// Grid `q` values are probabilities.
    Probability,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Everything except the grid axes; its `seed` is the master seed.
    pub base: GameConfig,
    pub n: Vec<usize>,
    pub c: Vec<f64>,
    pub q_coeff: Vec<f64>,
    pub palette: Vec<usize>,
    #[serde(default)]
    pub q_mode: RateMode,
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub n: usize,
    pub c: f64,
    pub q_coeff: f64,
    pub palette: usize,
}

impl SweepConfig {
    /// Grid points with `n` varying slowest and `palette` fastest.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &c in &self.c {
                for &q_coeff in &self.q_coeff {
                    for &palette in &self.palette {
                        out.push(GridPoint { n, c, q_coeff, palette });
                    }
                }
            }
        }
        out
    }

    /// The game configuration of one trial at one grid point.
    pub fn trial_config(&self, point: &GridPoint, trial: usize) -> GameConfig {
        let q = match self.q_mode {
            RateMode::Coefficient => RoundTwoRate::Coefficient(point.q_coeff),
            RateMode::Probability => RoundTwoRate::Probability(point.q_coeff),
        };
        GameConfig {
            n: point.n,
            c: point.c,
            q,
            palette: point.palette,
            seed: derive_seed(
                self.base.seed,
                &[
                    point.n as u64,
                    point.c.to_bits(),
                    point.q_coeff.to_bits(),
                    point.palette as u64,
                    trial as u64,
                ],
            ),
            ..self.base.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointStatistics {
    pub point: GridPoint,
    pub trials: usize,
    pub extendable: usize,
    pub not_extendable: usize,
    /// Budget exhaustion in either round.
    pub unknown: usize,
    /// Trials where round one produced no colouring (included in `unknown`).
    pub round_one_failures: usize,
    /// Means over trials with a round-one colouring; NaN if there were none.
    pub mean_forced_pairs: f64,
    pub mean_forced_copies: f64,
}

impl PointStatistics {
    pub fn frac(&self, count: usize) -> f64 {
        count as f64 / self.trials as f64
    }

    /// Normal-approximation 95% half-width for the not-extendable fraction.
    pub fn ci_halfwidth(&self) -> f64 {
        let p = self.frac(self.not_extendable);
        1.96 * (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<PointStatistics>,
}

pub const CSV_HEADER: [&str; 11] = [
    "n",
    "c",
    "q_coeff",
    "palette",
    "trials",
    "frac_extendable",
    "frac_not_extendable",
    "frac_unknown",
    "mean_forced_pairs",
    "mean_forced_copies",
    "ci_halfwidth",
];

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.point.n.to_string(),
                r.point.c.to_string(),
                r.point.q_coeff.to_string(),
                r.point.palette.to_string(),
                r.trials.to_string(),
                format!("{:.6}", r.frac(r.extendable)),
                format!("{:.6}", r.frac(r.not_extendable)),
                format!("{:.6}", r.frac(r.unknown)),
                format!("{:.6}", r.mean_forced_pairs),
                format!("{:.6}", r.mean_forced_copies),
                format!("{:.6}", r.ci_halfwidth()),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

/// Compact per-trial record kept by sweeps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialSummary {
    pub label: &'static str,
    pub headline_pairs: Option<usize>,
    pub headline_copies: Option<usize>,
}

impl From<&GameTranscript> for TrialSummary {
    fn from(t: &GameTranscript) -> Self {
        TrialSummary {
            label: t.label(),
            headline_pairs: t.forced.as_ref().map(|f| f.headline_pairs),
            headline_copies: t.forced.as_ref().map(|f| f.headline_copies),
        }
    }
}

/// Runs `trials` games at every grid point on `threads` worker threads.
///
/// Results are merged by (point, trial) index, so the table does not depend
/// on scheduling.
pub fn monte_carlo(sweep: &SweepConfig, trials: usize, threads: usize) -> Result<SweepTable> {
    if trials == 0 {
        return Err(Error::domain("monte_carlo", "trials must be at least 1"));
    }
    let points = sweep.points();
    for p in &points {
        sweep.trial_config(p, 0).probabilities()?;
    }
    let jobs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| (0..trials).map(move |t| (i, t)))
        .collect();
    let run = || {
        jobs.par_iter()
            .map(|&(i, t)| play_two_round(&sweep.trial_config(&points[i], t)).map(|tr| TrialSummary::from(&tr)))
            .collect::<Result<Vec<_>>>()
    };
    let summaries = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::domain("monte_carlo", e.to_string()))?
        .install(run)?;
    let rows = points
        .iter()
        .zip(summaries.chunks(trials))
        .map(|(&point, chunk)| aggregate(point, chunk))
        .collect();
    Ok(SweepTable { rows })
}

pub(crate) fn aggregate(point: GridPoint, chunk: &[TrialSummary]) -> PointStatistics {
    let count = |label: &str| chunk.iter().filter(|s| s.label == label).count();
    let extendable = count("extendable");
    let not_extendable = count("not-extendable");
    let round_one_failures = chunk.iter().filter(|s| s.label.starts_with("round-one")).count();
    let mean = |f: fn(&TrialSummary) -> Option<usize>| {
        let values: Vec<usize> = chunk.iter().filter_map(f).collect();
        if values.is_empty() {
            f64::NAN
        } else {
            values.iter().sum::<usize>() as f64 / values.len() as f64
        }
    };
    PointStatistics {
        point,
        trials: chunk.len(),
        extendable,
        not_extendable,
        unknown: chunk.len() - extendable - not_extendable,
        round_one_failures,
        mean_forced_pairs: mean(|s| s.headline_pairs),
        mean_forced_copies: mean(|s| s.headline_copies),
    }
}
