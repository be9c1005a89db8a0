//! Batch driver around the library: build stages, color them, check
//! nonrepetitiveness and rigidity, and collect sofic statistics. Every run
//! prints a single JSON report to standard output; files are written only
//! through explicit `--out`/`--csv`. All randomness flows from `--seed`.

mod parse;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use schreier::builders::{
    cayley_ball, cycle_graph, path_graph, random_involution_schreier, random_schreier,
    schreier_from_permutations, GroupFamily,
};
use schreier::coloring::{
    adaptive_color, find_repetitive_path, moser_tardos_color, PathWitness,
};
use schreier::dynamics::{colored_automorphisms, extract_repetition};
use schreier::graph::Coloring;
use schreier::io::{read_graph, write_graph};
use schreier::measures::{
    clopen_u_fraction, clopen_v_fraction, distribution_csv, distribution_to_document,
    empirical_measure, gamma_r_vertex_fraction, is_sofic_stage, tv_distance, write_distribution,
};
use schreier::{Error, Result, Rooted};

use parse::{inverse_pairing, parse_decimal, parse_family, parse_permutations, rational_string};
use report::{error_payload, exit_code, file_digest, RunReport};

#[derive(Debug, Parser, Serialize)]
#[command(name = "schreier", version, about = "Schreier-graph stages: build, color, verify, measure")]
struct Cli {
    /// Seed for every random choice the command makes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output file (graph, colored graph, or distribution, per command).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Node-expansion cap for path searches (per root for censuses).
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,

    /// Emit the report as JSON (the default and only format).
    #[arg(long, global = true, default_value_t = true)]
    json: bool,

    /// Include wall-clock timing in the report. Off by default so that
    /// reruns are byte-identical.
    #[arg(long, global = true, default_value_t = false)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
enum Command {
    /// Write a graph file for one of the built-in families.
    Build {
        #[command(subcommand)]
        family: Family,
    },
    /// Color a graph nonrepetitively by constructive resampling.
    Color {
        #[arg(long)]
        graph: PathBuf,
        /// Alphabet size (the starting size with --adaptive).
        #[arg(long, default_value_t = 4)]
        alphabet: u32,
        /// Half-length cap for repetitive-path events.
        #[arg(long, default_value_t = 4)]
        half_length: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_resamples: u64,
        /// Double the alphabet on cap failure instead of giving up.
        #[arg(long, default_value_t = false)]
        adaptive: bool,
    },
    /// Check a colored graph for repetitive paths up to a half-length cap.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        half_length: usize,
    },
    /// Decide rigidity (no nontrivial colored-labeled automorphism) and,
    /// on failure, extract the repetitive witness it forces.
    Rigidity {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Reference-ball vertex fractions of a stage.
    SoficStats {
        #[arg(long)]
        graph: PathBuf,
        /// Reference family: integers, free:<rank>, or lattice:<dim>.
        #[arg(long)]
        family: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value = "0.01")]
        epsilon: String,
    },
    /// Empirical distribution of colored r-ball types over a random root.
    Measure {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Also write a pattern-hash/frequency summary for plotting.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Pairwise total-variation distances between stage distributions.
    Converge {
        #[arg(long)]
        radius: usize,
        /// Colored graph files, in stage order.
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
enum Family {
    /// Cycle on n vertices (a complete integers stage).
    Cycle { n: usize },
    /// Segment on n vertices (a truncated integers stage).
    Path { n: usize },
    /// Radius-r ball of the integers rooted at the origin.
    IntegersBall {
        #[arg(long)]
        radius: usize,
    },
    /// Radius-r ball of the rank-k free group rooted at the identity.
    FreeBall {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        radius: usize,
    },
    /// Radius-r ball of the d-dimensional integer lattice.
    LatticeBall {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        radius: usize,
    },
    /// Coset graph of a permutation action, e.g. --gens "(12),(123),(132)"
    /// --base 1 (points are 1-based; every generator's inverse must be
    /// listed).
    Perm {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        base: usize,
    },
    /// Random stage for the rank-k free group: k seeded uniform
    /// permutations.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Random stage with k involutive generators (perfect matchings); k = 3
    /// gives a random cubic stage. n must be even.
    Matchings {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();

    let mut digests = BTreeMap::new();
    for path in input_paths(&cli.command) {
        if let Ok(d) = file_digest(&path) {
            digests.insert(path.display().to_string(), d);
        }
    }

    let outcome = run(&cli);
    let (payload, code) = match outcome {
        Ok(payload) => (payload, 0),
        Err(ref err) => (error_payload(err), exit_code(err)),
    };

    let report = RunReport {
        command: serde_json::to_value(&cli.command).expect("command echo"),
        seed: cli.seed,
        input_digests: digests,
        payload,
        timing_ms: cli.timings.then(|| started.elapsed().as_millis()),
        version: env!("CARGO_PKG_VERSION"),
    };
    print!("{}", report.render());
    std::process::exit(code);
}

fn input_paths(cmd: &Command) -> Vec<PathBuf> {
    match cmd {
        Command::Build { .. } => Vec::new(),
        Command::Color { graph, .. }
        | Command::Check { graph, .. }
        | Command::Rigidity { graph }
        | Command::SoficStats { graph, .. }
        | Command::Measure { graph, .. } => vec![graph.clone()],
        Command::Converge { graphs, .. } => graphs.clone(),
    }
}

fn require_out(cli: &Cli) -> Result<&PathBuf> {
    cli.out
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("this command writes a file; pass --out <path>".into()))
}

fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Build { family } => cmd_build(cli, family),
        Command::Color {
            graph,
            alphabet,
            half_length,
            max_resamples,
            adaptive,
        } => cmd_color(cli, graph, *alphabet, *half_length, *max_resamples, *adaptive),
        Command::Check { graph, half_length } => cmd_check(cli, graph, *half_length),
        Command::Rigidity { graph } => cmd_rigidity(graph),
        Command::SoficStats {
            graph,
            family,
            radius,
            epsilon,
        } => cmd_sofic_stats(graph, family, *radius, epsilon),
        Command::Measure { graph, radius, csv } => cmd_measure(cli, graph, *radius, csv.as_ref()),
        Command::Converge { radius, graphs } => cmd_converge(graphs, *radius),
    }
}

fn cmd_build(cli: &Cli, family: &Family) -> Result<Value> {
    let out = require_out(cli)?;
    let (label, rooted) = match family {
        Family::Cycle { n } => {
            GroupFamily::Cyclic { n: *n }.validate()?;
            (format!("cycle:{n}"), cycle_graph(*n))
        }
        Family::Path { n } => {
            if *n == 0 {
                return Err(Error::InvalidInput("segment length must be positive".into()));
            }
            (format!("path:{n}"), path_graph(*n))
        }
        Family::IntegersBall { radius } => (
            format!("integers-ball:{radius}"),
            cayley_ball(&GroupFamily::Integers, *radius)?,
        ),
        Family::FreeBall { rank, radius } => (
            format!("free-ball:{rank}:{radius}"),
            cayley_ball(&GroupFamily::Free { rank: *rank }, *radius)?,
        ),
        Family::LatticeBall { dim, radius } => (
            format!("lattice-ball:{dim}:{radius}"),
            cayley_ball(&GroupFamily::IntegerLattice { dim: *dim }, *radius)?,
        ),
        Family::Perm { gens, base } => {
            let perms = parse_permutations(gens)?;
            let pairing = inverse_pairing(&perms)?;
            if *base == 0 {
                return Err(Error::InvalidInput("base point is 1-based".into()));
            }
            (
                format!("perm:base={base}"),
                schreier_from_permutations(&perms, &pairing, base - 1)?,
            )
        }
        Family::Random { n, rank } => (
            format!("random:{n}:{rank}"),
            Rooted::new(random_schreier(*n, *rank, cli.seed), 0)?,
        ),
        Family::Matchings { n, count } => (
            format!("matchings:{n}:{count}"),
            Rooted::new(random_involution_schreier(*n, *count, cli.seed)?, 0)?,
        ),
    };
    write_graph(&rooted, out)?;
    let g = rooted.graph();
    let directed_edges: usize = g
        .maps()
        .iter()
        .map(|m| m.iter().filter(|t| t.is_some()).count())
        .sum();
    Ok(json!({
        "family": label,
        "n_vertices": g.n_vertices(),
        "directed_edges": directed_edges,
        "complete": g.is_complete(),
        "out": out.display().to_string(),
    }))
}

fn cmd_color(
    cli: &Cli,
    graph: &PathBuf,
    alphabet: u32,
    half_length: usize,
    max_resamples: u64,
    adaptive: bool,
) -> Result<Value> {
    let out = require_out(cli)?;
    let x = read_graph(graph)?;
    let (coloring, final_alphabet, resamples, attempts) = if adaptive {
        let r = adaptive_color(x.graph(), alphabet, half_length, cli.seed, max_resamples)?;
        (r.coloring, r.alphabet_size, r.resamples, r.attempts)
    } else {
        let r = moser_tardos_color(x.graph(), alphabet, half_length, cli.seed, max_resamples)?;
        (r.coloring, alphabet, r.resamples, 1)
    };
    let colored = x.forget_colors().with_coloring(coloring)?;
    write_graph(&colored, out)?;
    Ok(json!({
        "alphabet_size": final_alphabet,
        "half_length": half_length,
        "resamples": resamples,
        "attempts": attempts,
        "out": out.display().to_string(),
    }))
}

fn cmd_check(cli: &Cli, graph: &PathBuf, half_length: usize) -> Result<Value> {
    let x = read_graph(graph)?;
    let coloring = require_coloring(&x)?;
    let witness = find_repetitive_path(x.graph(), coloring, half_length, cli.budget)?;
    Ok(json!({
        "half_length": half_length,
        "nonrepetitive": witness.is_none(),
        "witness": witness.as_ref().map(witness_json),
    }))
}

fn witness_json(w: &PathWitness) -> Value {
    json!(w.vertices())
}

fn require_coloring(x: &Rooted) -> Result<&Coloring> {
    x.coloring()
        .ok_or_else(|| Error::InvalidInput("graph file carries no coloring".into()))
}

fn cmd_rigidity(graph: &PathBuf) -> Result<Value> {
    let x = read_graph(graph)?;
    let auts = colored_automorphisms(x.graph(), x.coloring())?;
    let rigid = auts.len() == 1;
    let witness = match auts.iter().find(|a| !a.is_identity()) {
        Some(theta) => {
            let mono;
            let coloring = match x.coloring() {
                Some(c) => c,
                None => {
                    mono = Coloring::monochrome(x.graph().n_vertices());
                    &mono
                }
            };
            let w = extract_repetition(x.graph(), coloring, theta)?;
            Some(w)
        }
        None => None,
    };
    Ok(json!({
        "rigid": rigid,
        "automorphism_count": auts.len(),
        "witness": witness.as_ref().map(witness_json),
        "witness_half_length": witness.as_ref().map(PathWitness::half_length),
    }))
}

fn cmd_sofic_stats(graph: &PathBuf, family: &str, radius: usize, epsilon: &str) -> Result<Value> {
    let x = read_graph(graph)?;
    let reference = cayley_ball(&parse_family(family)?, radius)?;
    let eps: BigRational = parse_decimal(epsilon)?;
    let gamma = gamma_r_vertex_fraction(x.graph(), &reference, radius)?;
    let u = clopen_u_fraction(x.graph(), &reference, radius)?;
    let stage = is_sofic_stage(x.graph(), &reference, radius, &eps)?;
    Ok(json!({
        "family": family,
        "radius": radius,
        "epsilon": rational_string(&eps),
        "gamma_fraction": rational_string(&gamma),
        "clopen_u_fraction": rational_string(&u),
        "is_stage": stage,
    }))
}

fn cmd_measure(cli: &Cli, graph: &PathBuf, radius: usize, csv: Option<&PathBuf>) -> Result<Value> {
    let x = read_graph(graph)?;
    let mu = empirical_measure(x.graph(), x.coloring(), radius)?;
    // the repetitive clopen set needs a coloring; report it when present
    let v_fraction = match x.coloring() {
        Some(c) => Some(clopen_v_fraction(x.graph(), c, radius, cli.budget)?),
        None => None,
    };
    if let Some(out) = cli.out.as_ref() {
        write_distribution(&mu, out)?;
    }
    if let Some(csv_path) = csv {
        std::fs::write(csv_path, distribution_csv(&mu)).map_err(|e| Error::Io {
            path: csv_path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    let doc = distribution_to_document(&mu);
    Ok(json!({
        "radius": radius,
        "support_size": mu.support_size(),
        "clopen_v_fraction": v_fraction.as_ref().map(rational_string),
        "distribution": serde_json::to_value(&doc).expect("distribution echo"),
        "out": cli.out.as_ref().map(|p| p.display().to_string()),
        "csv": csv.map(|p| p.display().to_string()),
    }))
}

fn cmd_converge(graphs: &[PathBuf], radius: usize) -> Result<Value> {
    let mut measures = Vec::new();
    let mut names = Vec::new();
    for path in graphs {
        let x = read_graph(path)?;
        measures.push(empirical_measure(x.graph(), x.coloring(), radius)?);
        names.push(path.display().to_string());
    }
    let mut pairwise = Vec::new();
    for a in &measures {
        let mut row = Vec::new();
        for b in &measures {
            row.push(rational_string(&tv_distance(a, b)?));
        }
        pairwise.push(row);
    }
    let mut consecutive = Vec::new();
    for pair in measures.windows(2) {
        consecutive.push(rational_string(&tv_distance(&pair[0], &pair[1])?));
    }
    Ok(json!({
        "radius": radius,
        "stages": names,
        "pairwise_tv": pairwise,
        "consecutive_tv": consecutive,
    }))
}
