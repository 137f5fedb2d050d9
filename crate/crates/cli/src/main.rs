//! `qitool`: generate graphs, build split pairs, check quasi-isometries,
//! refute weightings and search for feasible weightings.
//!
//! Exit codes: 0 success or a positive answer, 1 a legitimate negative
//! answer, 2 usage, input or I/O error.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qi_core::constructions::{
    attach_pendant_paths, families, mycielski, orient, partial_vertex_split, random_high_girth, subdivide, OrientMode,
    Orientation,
};
use qi_core::graph::{chromatic_number_exact, diameter, girth, DEFAULT_CHI_VERTEX_LIMIT};
use qi_core::io::{read_instance, InstanceFile, MapSection, Metadata};
use qi_core::qi::check_quasi_isometry;
use qi_core::solver::{self, LpOptions, Status};
use qi_core::witness::{refute_weighting, RefuteOptions, DEFAULT_LIGHT_THRESHOLD};
use qi_core::{EdgeWeighting, Execution, Graph};

#[derive(Parser)]
#[command(
    name = "qitool",
    version,
    about = "Quasi-isometry toolkit for graphs with edge lengths"
)]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Instance file (JSON, edge list or DIMACS); `-` or omitted reads stdin.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Attach an orientation to an instance.
    Orient {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        mode: OrientChoice,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Split every vertex into an in-copy and an out-copy.
    Split {
        #[command(flatten)]
        input: Input,
        /// Orientation to use when the instance carries none.
        #[arg(long, value_enum)]
        orient: Option<OrientChoice>,
        #[arg(long)]
        seed: Option<u64>,
        /// Split only the vertices with index below this bound.
        #[arg(long)]
        only_below: Option<usize>,
    },
    /// Replace every edge by a path with `t` edges.
    Subdivide {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        t: usize,
    },
    /// Hang a path of length `base + i·stride` off every vertex `i`.
    Attach {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        base: usize,
        #[arg(long, default_value_t = 0)]
        stride: usize,
    },
    /// Check the embedded map at (L, C); exit 0 iff it passes.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long = "L")]
        l: f64,
        #[arg(long = "C")]
        c: f64,
    },
    /// Refute that the split projection is a (1, C)-quasi-isometry onto (H, w).
    Refute {
        #[command(flatten)]
        input: Input,
        #[arg(long = "C")]
        c: u32,
        #[arg(long, default_value_t = DEFAULT_LIGHT_THRESHOLD)]
        threshold: f64,
        #[arg(long, default_value_t = qi_core::oriented::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Search for a weighting making the split projection a (1, C)-quasi-isometry.
    SolveWeights {
        #[command(flatten)]
        input: Input,
        #[arg(long = "C")]
        c: u32,
        #[arg(long, value_enum, default_value_t = SolveMode::Lp)]
        mode: SolveMode,
        /// Comma-separated grid for `--mode grid` and for the LP oracle.
        #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 1.5, 2.0, 2.5])]
        grid: Vec<f64>,
        #[arg(long, default_value_t = solver::DEFAULT_EDGE_LIMIT)]
        edge_limit: usize,
        #[arg(long, default_value_t = 50)]
        max_rounds: usize,
        /// Skip the grid oracle in LP mode.
        #[arg(long)]
        no_oracle: bool,
        /// Report unconfirmed refutations as UNSAT (basis "hint").
        #[arg(long)]
        accept_hint: bool,
    },
    /// Girth, chromatic number, diameter and degree profile.
    Stats {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CHI_VERTEX_LIMIT)]
        chi_limit: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graph with short cycles deleted (largest component kept).
    RandomGirth {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        girth: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Iterated Mycielskian of K2 (one iteration gives C5, two the Grötzsch graph).
    Mycielski {
        #[arg(long)]
        iterations: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    /// Smallest cubic graph of the given girth (3 to 8).
    Cage {
        #[arg(long)]
        girth: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientChoice {
    Random,
    LowToHigh,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMode {
    Grid,
    Lp,
}

fn read_input(input: &Input) -> Result<InstanceFile> {
    let text = match &input.input {
        None => read_stdin()?,
        Some(p) if p.as_os_str() == "-" => read_stdin()?,
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
    };
    Ok(read_instance(&text)?)
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .context("reading standard input")?;
    Ok(s)
}

fn emit(value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        // a closed downstream pipe (e.g. `| head`) is not an error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn orient_mode(choice: OrientChoice, seed: Option<u64>) -> Result<OrientMode> {
    match (choice, seed) {
        (OrientChoice::LowToHigh, _) => Ok(OrientMode::LowToHigh),
        (OrientChoice::Random, Some(seed)) => Ok(OrientMode::Random { seed }),
        (OrientChoice::Random, None) => bail!("random orientation needs an explicit --seed"),
    }
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn generate(cmd: &GenCommand) -> Result<InstanceFile> {
    let (graph, name, seed, p) = match *cmd {
        GenCommand::RandomGirth { n, p, girth, seed } => {
            let sample = random_high_girth(n, p, girth, seed)?;
            let ps = params(&[
                ("n", json!(n)),
                ("p", json!(p)),
                ("girth", json!(girth)),
                ("deleted", json!(sample.deleted)),
            ]);
            (sample.graph, "random-girth", Some(seed), ps)
        }
        GenCommand::Mycielski { iterations } => {
            let mut g = families::complete(2);
            for _ in 0..iterations {
                g = mycielski(&g);
            }
            (g, "mycielski", None, params(&[("iterations", json!(iterations))]))
        }
        GenCommand::Cycle { n } => (families::cycle(n)?, "cycle", None, params(&[("n", json!(n))])),
        GenCommand::Path { n } => {
            if n == 0 {
                bail!("a path needs at least one vertex");
            }
            (families::path(n), "path", None, params(&[("n", json!(n))]))
        }
        GenCommand::Cage { girth } => (
            families::cubic_cage(girth)?,
            "cage",
            None,
            params(&[("girth", json!(girth))]),
        ),
    };
    let meta = Metadata::describe(&graph, name, seed, p);
    Ok(InstanceFile::new(graph, meta))
}

/// New instance on `graph` mapping into `base` via `image`.
fn derived(base: InstanceFile, graph: Graph, image: Vec<usize>, name: &str, p: Map<String, Value>) -> InstanceFile {
    let seed = base.metadata.seed;
    let meta = Metadata::describe(&graph, name, seed, p);
    let mut out = InstanceFile::new(graph, meta);
    out.map = Some(MapSection {
        image,
        codomain: Box::new(base),
    });
    out
}

fn orientation_for(inst: &InstanceFile, choice: Option<OrientChoice>, seed: Option<u64>) -> Result<Orientation> {
    if let Some(c) = choice {
        return Ok(orient(&inst.graph, orient_mode(c, seed)?));
    }
    match inst.orientation_of()? {
        Some(o) => Ok(o),
        None => bail!("instance has no orientation; pass --orient random|low-to-high (with --seed for random)"),
    }
}

fn weights_or_unit(inst: &InstanceFile) -> Result<EdgeWeighting> {
    Ok(inst.weighting()?.unwrap_or_else(|| EdgeWeighting::unit(&inst.graph)))
}

fn run(cli: Cli) -> Result<u8> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Gen(cmd) => emit(&generate(&cmd)?)?,
        Command::Orient { input, mode, seed } => {
            let mut inst = read_input(&input)?;
            let o = orient(&inst.graph, orient_mode(mode, seed)?);
            inst.set_orientation(Some(&o));
            emit(&inst)?;
        }
        Command::Split {
            input,
            orient: choice,
            seed,
            only_below,
        } => {
            let mut inst = read_input(&input)?;
            let o = orientation_for(&inst, choice, seed)?;
            inst.set_orientation(Some(&o));
            let n = inst.graph.vertex_count();
            let mask: Vec<bool> = (0..n).map(|v| only_below.is_none_or(|k| v < k)).collect();
            let s = partial_vertex_split(&inst.graph, &o, &mask)?;
            let mut ps = params(&[]);
            if let Some(k) = only_below {
                ps.insert("only_below".into(), json!(k));
            }
            let image = s.projection.image().to_vec();
            emit(&derived(inst, s.split_graph, image, "split", ps))?;
        }
        Command::Subdivide { input, t } => {
            let inst = read_input(&input)?;
            let sub = subdivide(&inst.graph, t)?;
            let image = sub.map.image().to_vec();
            emit(&derived(
                inst,
                sub.graph,
                image,
                "subdivide",
                params(&[("t", json!(t))]),
            ))?;
        }
        Command::Attach { input, base, stride } => {
            let inst = read_input(&input)?;
            let att = attach_pendant_paths(&inst.graph, base, stride)?;
            let image = att.anchor.image().to_vec();
            let ps = params(&[
                ("base", json!(base)),
                ("stride", json!(stride)),
                ("tips", json!(att.tips)),
            ]);
            emit(&derived(inst, att.graph, image, "attach", ps))?;
        }
        Command::Verify { input, l, c } => {
            let inst = read_input(&input)?;
            let map = inst.vertex_map()?.context("instance has no embedded map to verify")?;
            let target = &inst.map.as_ref().expect("map present").codomain;
            let (wg, wh) = (inst.weighting()?, target.weighting()?);
            let report = check_quasi_isometry(&inst.graph, wg.as_ref(), &target.graph, wh.as_ref(), &map, l, c)?;
            emit(&report)?;
            return Ok(if report.verdict { 0 } else { 1 });
        }
        Command::Refute {
            input,
            c,
            threshold,
            budget,
        } => {
            let inst = read_input(&input)?;
            let o = orientation_for(&inst, None, None)?;
            let w = weights_or_unit(&inst)?;
            let s = qi_core::constructions::vertex_split(&inst.graph, &o)?;
            let opts = RefuteOptions {
                threshold,
                budget,
                exec,
            };
            let report = refute_weighting(&s, &inst.graph, &o, &w, c, &opts)?;
            return match report.certificate {
                Some(cert) => {
                    emit(&cert)?;
                    Ok(0)
                }
                None => {
                    emit(&json!({ "result": "none", "metadata": report.metadata }))?;
                    Ok(1)
                }
            };
        }
        Command::SolveWeights {
            input,
            c,
            mode,
            grid,
            edge_limit,
            max_rounds,
            no_oracle,
            accept_hint,
        } => {
            let inst = read_input(&input)?;
            let o = orientation_for(&inst, None, None)?;
            let s = qi_core::constructions::vertex_split(&inst.graph, &o)?;
            let outcome = match mode {
                SolveMode::Grid => solver::solve_bruteforce(&s, &inst.graph, c, &grid, edge_limit, exec)?,
                SolveMode::Lp => {
                    let opts = LpOptions {
                        max_rounds,
                        oracle_grid: (!no_oracle).then_some(grid),
                        oracle_edge_limit: edge_limit,
                        accept_hint,
                        exec,
                        ..Default::default()
                    };
                    solver::solve_lp(&s, &inst.graph, c, &opts)?
                }
            };
            emit(&outcome)?;
            return Ok(if outcome.status == Status::Sat { 0 } else { 1 });
        }
        Command::Stats { input, chi_limit } => {
            let inst = read_input(&input)?;
            emit(&stats(&inst.graph, chi_limit))?;
        }
    }
    Ok(0)
}

fn stats(g: &Graph, chi_limit: usize) -> Value {
    let n = g.vertex_count();
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut histogram = vec![0usize; g.max_degree() + 1];
    for &d in &degrees {
        histogram[d] += 1;
    }
    let mean = if n == 0 {
        0.0
    } else {
        2.0 * g.edge_count() as f64 / n as f64
    };
    json!({
        "vertex_count": n,
        "edge_count": g.edge_count(),
        "connected": g.is_connected(),
        "girth": girth(g).map_or(json!("infinity"), |x| json!(x)),
        "chi_exact": chromatic_number_exact(g, chi_limit).ok(),
        "chi_greedy": qi_core::constructions::greedy_chi(g),
        "diameter": diameter(g).ok(),
        "degree": {
            "min": degrees.iter().min(),
            "max": degrees.iter().max(),
            "mean": mean,
            "histogram": histogram,
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
