use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use ramsey_games::colouring::{
    check_forcing_structure, parse_colouring, search_h_free_colouring, Colour, ForcingStructure,
    SearchVerdict,
};
use ramsey_games::density::{
    balance_report, find_m2_decreasing_edge, format_rational, local_density, max_density_with_cap,
    DensityKind, DEFAULT_VERTEX_CAP,
};
use ramsey_games::forcing::{colour_bases, forced_set, RootPolicy};
use ramsey_games::game::{
    derive_seed, monte_carlo, play_two_round, GameConfig, GameTranscript, RoundOneStatus,
    SweepConfig, Verdict,
};
use ramsey_games::graph::{parse_graph, Graph};
use ramsey_games::product::{edge_rooted_product, reduced_edge_rooted_product, RootedGraph};

use crate::manifest::{now_ms, RunManifest};
use crate::{Cli, Command, KindArg, Predicate};

#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Budget(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<ramsey_games::Error> for CliError {
    fn from(e: ramsey_games::Error) -> Self {
        match e {
            ramsey_games::Error::Budget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// Result of a subcommand: the artefact text, the resolved configuration, the
/// master seed it used, and a budget-exhaustion message if one applies.
struct Output {
    text: String,
    config: Value,
    seed: Option<u64>,
    exhausted: Option<String>,
}

impl Output {
    fn new(text: String, config: Value) -> Self {
        Output {
            text,
            config,
            seed: None,
            exhausted: None,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artefacts serialise");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let started = now_ms();
    let out = dispatch(cli)?;
    let name = serde_json::to_value(&cli.command)
        .ok()
        .and_then(|v| v.get("subcommand").and_then(Value::as_str).map(str::to_string))
        .unwrap_or_default();
    let manifest = RunManifest::new(&name, out.config, out.seed.or(cli.global.seed), started);
    match cli.global.out.as_deref().filter(|p| *p != Path::new("-")) {
        Some(path) => {
            fs::write(path, &out.text)
                .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
            let mut sidecar = path.as_os_str().to_owned();
            sidecar.push(".manifest.json");
            let sidecar = PathBuf::from(sidecar);
            fs::write(&sidecar, pretty(&manifest))
                .map_err(|e| CliError::Domain(format!("{}: {e}", sidecar.display())))?;
            if !cli.global.quiet {
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            std::io::stdout()
                .write_all(out.text.as_bytes())
                .map_err(|e| CliError::Domain(format!("stdout: {e}")))?;
            eprintln!("{}", serde_json::to_string(&manifest).expect("manifest serialises"));
        }
    }
    match out.exhausted {
        Some(message) => Err(CliError::Budget(message)),
        None => Ok(()),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let args = serde_json::to_value(&cli.command).expect("arguments serialise");
    match &cli.command {
        Command::Density { graph, kind, cap } => density(&read_graph(graph)?, *kind, *cap, args),
        Command::Check { graph, predicate } => check(&read_graph(graph)?, *predicate, args),
        Command::Product { g, h, root, k, reduced } => {
            let h = RootedGraph::new(read_graph(h)?, root.0, root.1)?;
            let g = read_graph(g)?;
            let product = if *reduced {
                reduced_edge_rooted_product(&g, &h, *k)?
            } else {
                edge_rooted_product(&g, &h, *k)?
            };
            Ok(Output::new(pretty(&product), args))
        }
        Command::ColourSearch { g, h, colours, budget } => {
            let outcome = search_h_free_colouring(&read_graph(g)?, &read_graph(h)?, *colours, *budget)?;
            let mut out = Output::new(pretty(&outcome), args);
            if outcome.verdict == SearchVerdict::Unknown {
                out.exhausted = Some(format!("colour_search: budget of {budget} nodes exhausted"));
            }
            Ok(out)
        }
        Command::CheckForcing { h, red, blue, matching } => {
            let (red, blue, m) = (read_graph(red)?, read_graph(blue)?, read_graph(matching)?);
            let n = red.vertex_count().max(blue.vertex_count()).max(m.vertex_count());
            let widen = |g: &Graph| Graph::from_edges(n, g.edges().iter().copied());
            let s = ForcingStructure::new(widen(&red)?, widen(&blue)?, m.edges().to_vec())?;
            let report = check_forcing_structure(&read_graph(h)?, &s)?;
            Ok(Output::new(pretty(&report), args))
        }
        Command::Forced { g, colouring, h, palette, root, witnesses } => {
            let g = read_graph(g)?;
            let phi = parse_colouring(&read(colouring)?, &g)?;
            let h = read_graph(h)?;
            let policy = root.map_or(RootPolicy::AllEdges, RootPolicy::Fixed);
            let bases = colour_bases(&phi, &h, policy)?;
            let set = forced_set(&bases, *palette, &h, g.vertex_count())?;
            let per_colour = |f: &dyn Fn(Colour) -> Value| -> Value {
                Colour::ALL.iter().map(|&c| (c.name().to_string(), f(c))).collect()
            };
            let mut report = json!({
                "palette": palette,
                "bases": per_colour(&|c| json!(bases.count(c))),
                "forced_pairs": per_colour(&|c| json!(set.forced_pairs(c))),
                "forced_copy_counts": per_colour(&|c| json!(set.forced_copies(c).len())),
                "dead_pairs": set.dead_pairs(),
            });
            if *witnesses {
                report["forced_copies"] = per_colour(&|c| json!(set.forced_copies(c)));
                report["base_witnesses"] = bases
                    .pairs()
                    .map(|p| {
                        json!({
                            "pair": p,
                            "host_edge": bases.is_host_edge(p),
                            "witnesses": bases.colours(p).iter().map(|&c| bases.witness(p, c)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
            }
            Ok(Output::new(pretty(&report), args))
        }
        Command::Simulate { config, trials } => simulate(cli, config, *trials),
        Command::Sweep { config, trials } => {
            let mut sweep: SweepConfig = read_json(config)?;
            if let Some(seed) = cli.global.seed {
                sweep.base.seed = seed;
            }
            let trials = trials.unwrap_or(sweep.trials);
            sweep.trials = trials;
            let table = monte_carlo(&sweep, trials, cli.global.threads)?;
            let mut out = Output::new(table.to_csv(), serde_json::to_value(&sweep).expect("config serialises"));
            out.seed = Some(sweep.base.seed);
            Ok(out)
        }
    }
}

fn density(g: &Graph, kind: KindArg, cap: Option<usize>, args: Value) -> Result<Output, CliError> {
    let (dk, maximise) = match kind {
        KindArg::M => (DensityKind::Density, true),
        KindArg::M1 => (DensityKind::OneDensity, true),
        KindArg::M2 => (DensityKind::TwoDensity, true),
        KindArg::D => (DensityKind::Density, false),
        KindArg::D1 => (DensityKind::OneDensity, false),
        KindArg::D2 => (DensityKind::TwoDensity, false),
    };
    let text = if maximise {
        let report = max_density_with_cap(g, dk, cap.unwrap_or(DEFAULT_VERTEX_CAP))?;
        let witness: Vec<String> = report.witness.iter().map(usize::to_string).collect();
        format!("{}\nwitness: {}\n", format_rational(&report.value), witness.join(" "))
    } else {
        format!("{}\n", format_rational(&local_density(g, dk)?))
    };
    Ok(Output::new(text, args))
}

fn check(g: &Graph, predicate: Predicate, args: Value) -> Result<Output, CliError> {
    let (kind, strict) = match predicate {
        Predicate::M2DecreasingEdge => {
            let edge = find_m2_decreasing_edge(g)?;
            let report = json!({ "predicate": predicate, "holds": edge.is_some(), "edge": edge });
            return Ok(Output::new(pretty(&report), args));
        }
        Predicate::Balanced => (DensityKind::Density, false),
        Predicate::StrictlyBalanced => (DensityKind::Density, true),
        Predicate::OneBalanced => (DensityKind::OneDensity, false),
        Predicate::StrictlyOneBalanced => (DensityKind::OneDensity, true),
        Predicate::TwoBalanced => (DensityKind::TwoDensity, false),
        Predicate::StrictlyTwoBalanced => (DensityKind::TwoDensity, true),
    };
    let report = balance_report(g, kind, strict)?;
    let body = json!({
        "predicate": predicate,
        "holds": report.holds,
        "counterexample": report.counterexample,
    });
    Ok(Output::new(pretty(&body), args))
}

fn simulate(cli: &Cli, path: &Path, trials: usize) -> Result<Output, CliError> {
    let mut config: GameConfig = read_json(path)?;
    if let Some(seed) = cli.global.seed {
        config.seed = seed;
    }
    if trials == 0 {
        return Err(CliError::Domain("simulate: trials must be at least 1".into()));
    }
    let resolved = serde_json::to_value(&config).expect("config serialises");
    let transcripts: Vec<GameTranscript> = if trials == 1 {
        vec![play_two_round(&config)?]
    } else {
        let configs: Vec<GameConfig> = (0..trials)
            .map(|t| GameConfig {
                seed: derive_seed(config.seed, &[t as u64]),
                ..config.clone()
            })
            .collect();
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads.max(1))
            .build()
            .map_err(|e| CliError::Domain(e.to_string()))?
            .install(|| configs.par_iter().map(play_two_round).collect::<Result<Vec<_>, _>>())?
    };
    let exhausted = transcripts.iter().any(|t| {
        t.round_one.status == RoundOneStatus::Unknown
            || matches!(&t.outcome, Some(o) if o.verdict == Verdict::Unknown)
    });
    let text = if trials == 1 {
        pretty(&transcripts[0])
    } else {
        pretty(&transcripts)
    };
    Ok(Output {
        text,
        config: resolved,
        seed: Some(config.seed),
        exhausted: exhausted.then(|| "simulate: a search budget was exhausted".to_string()),
    })
}
