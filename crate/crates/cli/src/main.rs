//! `cpn`: generate, route through and verify cycle prefix digraphs.

mod export;
mod record;
mod verify;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cycle_prefix::containers::container;
use cycle_prefix::oracle::{diameter_of, verify_container, Network};
use cycle_prefix::routing::{reach_walk, restricted_route, shortest_path};
use cycle_prefix::topology::standard_origin;
use cycle_prefix::{NetworkParams, Vertex, Walk};
use serde_json::json;

use record::ExperimentRecord;
use verify::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "cpn",
    version,
    about = "Cycle prefix digraphs Γ_Δ(D) and Γ_Δ(D,−r)"
)]
struct Cli {
    /// Δ: the alphabet is 1..=Δ+1
    #[arg(long, global = true)]
    delta: Option<usize>,
    /// D: vertex length
    #[arg(long, global = true)]
    dee: Option<usize>,
    /// Number of deleted partial rotations
    #[arg(long, global = true, default_value_t = 0)]
    r: usize,
    /// Output format; route, container and params print text unless jsonl
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Refuse to materialize larger digraphs
    #[arg(long, global = true, default_value_t = 2520)]
    max_vertices: u64,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suppress human-readable summaries on stderr
    #[arg(long, global = true)]
    quiet: bool,
    /// Add elapsed_ms to records (breaks byte-identical output)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Unique geodesic in Γ_Δ(D)
    Shortest,
    /// Path of length at most D+r
    Restricted,
    /// Walk of length exactly D+r
    Reach,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export the arc list, or distance tables with --distances
    Gen {
        #[arg(long)]
        distances: bool,
        /// Only distances from this vertex
        #[arg(long, requires = "distances")]
        from: Option<String>,
    },
    /// Route from X to Y
    Route {
        x: String,
        y: String,
        #[arg(long, value_enum, default_value_t = Mode::Shortest)]
        mode: Mode,
    },
    /// Build and check Δ disjoint paths from X to Y (r = 0)
    Container { x: String, y: String },
    /// Run a verification suite over one instance or the default grid
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Pairs drawn by sampled checks
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Size and degree figures for an instance
    Params,
}

/// A check ran and failed.
#[derive(Debug)]
struct CheckFailed;

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("check failed")
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<CheckFailed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match &cli.command {
        Command::Gen { distances, from } => cmd_gen(cli, *distances, from.as_deref(), &mut out),
        Command::Route { x, y, mode } => cmd_route(cli, x, y, *mode, &mut out),
        Command::Container { x, y } => cmd_container(cli, x, y, &mut out),
        Command::Verify { suite, samples } => cmd_verify(cli, *suite, *samples, &mut out),
        Command::Params => cmd_params(cli, &mut out),
    };
    out.flush()?;
    result
}

fn explicit_params(cli: &Cli) -> Result<NetworkParams> {
    match (cli.delta, cli.dee) {
        (Some(delta), Some(dee)) => Ok(NetworkParams::new(delta, dee, cli.r)?),
        _ => bail!("--delta and --dee are required here"),
    }
}

/// Parameters from flags, with D and Δ inferred from the vertices when absent.
fn params_for(cli: &Cli, texts: &[&str]) -> Result<(NetworkParams, Vec<Vertex>)> {
    let raw: Vec<Vertex> = texts
        .iter()
        .map(|t| t.parse::<Vertex>().with_context(|| format!("vertex {t:?}")))
        .collect::<Result<_>>()?;
    let dee = cli.dee.unwrap_or(raw[0].len());
    let top = raw
        .iter()
        .flat_map(|v| v.iter().copied())
        .max()
        .unwrap_or(1) as usize;
    let delta = cli.delta.unwrap_or(dee.max(top.saturating_sub(1)));
    let g = NetworkParams::new(delta, dee, cli.r)?;
    let vertices = texts
        .iter()
        .map(|t| {
            g.parse_vertex(t)
                .with_context(|| format!("vertex {t:?} in {g}"))
        })
        .collect::<Result<_>>()?;
    Ok((g, vertices))
}

fn jsonl(cli: &Cli) -> bool {
    cli.format == Some(Format::Jsonl)
}

fn finish(rec: ExperimentRecord, cli: &Cli, start: Instant, out: &mut impl Write) -> Result<()> {
    let mut rec = rec;
    if cli.timing {
        rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    if jsonl(cli) {
        rec.write_line(out)?;
    }
    if rec.pass {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}

fn cmd_gen(cli: &Cli, distances: bool, from: Option<&str>, out: &mut impl Write) -> Result<()> {
    let g = explicit_params(cli)?;
    let net = Network::build_capped(&g, cli.max_vertices)?;
    let rows = if distances {
        let sources = match from {
            Some(t) => vec![g.parse_vertex(t)?],
            None => net.vertices().to_vec(),
        };
        export::write_distances(&net, &sources, cli.format.unwrap_or(Format::Csv), out)?
    } else {
        export::write_arcs(&net, cli.format.unwrap_or(Format::Dot), out)?
    };
    if !cli.quiet {
        let what = if distances { "distance rows" } else { "arcs" };
        eprintln!("{g}: {} vertices, {rows} {what}", net.len());
    }
    Ok(())
}

fn cmd_route(cli: &Cli, x: &str, y: &str, mode: Mode, out: &mut impl Write) -> Result<()> {
    let start = Instant::now();
    let (g, vs) = params_for(cli, &[x, y])?;
    let (x, y) = (vs[0], vs[1]);
    let walk: Walk = match mode {
        Mode::Shortest => shortest_path(&x, &y, &g)?.into_walk(),
        Mode::Restricted => restricted_route(&x, &y, &g)?.into_walk(),
        Mode::Reach => reach_walk(&x, &y, &g)?,
    };
    let valid = Walk::new(walk.vertices().to_vec(), g).is_ok();
    let bound_ok = match mode {
        Mode::Shortest => true,
        Mode::Restricted => walk.len() <= g.dee() + g.r(),
        Mode::Reach => walk.len() == g.dee() + g.r(),
    };
    let mode_name = mode.to_possible_value().unwrap().get_name().to_string();
    let verts: Vec<String> = walk.vertices().iter().map(|v| g.format_vertex(v)).collect();
    let ops: Vec<String> = walk.ops().iter().map(|o| o.to_string()).collect();
    if !jsonl(cli) {
        writeln!(
            out,
            "{g}: {} → {} ({mode_name})",
            verts[0],
            verts[verts.len() - 1]
        )?;
        writeln!(out, "  {}", verts[0])?;
        for (op, v) in ops.iter().zip(&verts[1..]) {
            writeln!(out, "  {op:<4}{v}")?;
        }
        writeln!(out, "length {}", walk.len())?;
    }
    let rec = ExperimentRecord::new(
        "route",
        &g,
        json!({"x": verts[0], "y": verts[verts.len() - 1], "mode": mode_name}),
        json!({"vertices": verts, "ops": ops, "length": walk.len()}),
        valid && bound_ok,
    );
    finish(rec, cli, start, out)
}

fn cmd_container(cli: &Cli, x: &str, y: &str, out: &mut impl Write) -> Result<()> {
    let start = Instant::now();
    let (g, vs) = params_for(cli, &[x, y])?;
    let c = container(&vs[0], &vs[1], &g)?;
    let report = verify_container(&c, &g);
    let bound = g.dee() + 2;
    let pass = report.valid && report.length <= bound;
    let paths: Vec<Vec<String>> = c
        .paths
        .iter()
        .map(|p| p.iter().map(|v| g.format_vertex(v)).collect())
        .collect();
    if !jsonl(cli) {
        writeln!(
            out,
            "{g}: container {} → {}",
            paths[0][0],
            paths[0][paths[0].len() - 1]
        )?;
        for p in &paths {
            let pairing = if p.len() > 2 {
                format!("{} ⇝ {}", p[1], p[p.len() - 2])
            } else {
                "direct arc".to_string()
            };
            writeln!(out, "  [{pairing}] length {}: {}", p.len() - 1, p.join(" "))?;
        }
        let verdict = if report.valid {
            "internally disjoint"
        } else {
            "INVALID"
        };
        writeln!(
            out,
            "verdict: {verdict}; container length {} (bound {bound})",
            report.length
        )?;
        for issue in &report.issues {
            writeln!(out, "  issue: {issue:?}")?;
        }
    }
    let rec = ExperimentRecord::new(
        "container",
        &g,
        json!({"x": paths[0][0], "y": paths[0][paths[0].len() - 1]}),
        json!({
            "paths": paths,
            "lengths": c.paths.iter().map(|p| p.len() - 1).collect::<Vec<_>>(),
            "valid": report.valid,
            "length": report.length,
            "issues": report.issues.iter().map(|i| format!("{i:?}")).collect::<Vec<_>>(),
        }),
        pass,
    );
    finish(rec, cli, start, out)
}

fn cmd_verify(cli: &Cli, suite: Suite, samples: Option<usize>, out: &mut impl Write) -> Result<()> {
    let instance = match (cli.delta, cli.dee) {
        (None, None) => None,
        _ => Some(explicit_params(cli)?),
    };
    let opts = verify::Options {
        suite,
        instance,
        max_vertices: cli.max_vertices,
        seed: cli.seed,
        samples,
        timing: cli.timing,
    };
    let records = verify::run(&opts)?;
    if records.is_empty() {
        bail!(
            "no instance of suite {} fits under --max-vertices {}",
            suite.name(),
            cli.max_vertices
        );
    }
    for rec in &records {
        rec.write_line(out)?;
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    if !cli.quiet {
        eprintln!(
            "verify {}: {} instances, {} passed, {failed} failed",
            suite.name(),
            records.len(),
            records.len() - failed
        );
    }
    if failed > 0 {
        Err(CheckFailed.into())
    } else {
        Ok(())
    }
}

fn cmd_params(cli: &Cli, out: &mut impl Write) -> Result<()> {
    let start = Instant::now();
    let g = explicit_params(cli)?;
    // outer None: above the cap; inner None: not strongly connected
    let diam = if g.vertex_count() <= cli.max_vertices {
        Some(diameter_of(&Network::build_capped(&g, cli.max_vertices)?)?)
    } else {
        None
    };
    if !jsonl(cli) {
        writeln!(out, "{g}")?;
        writeln!(out, "  vertices   {}", g.vertex_count())?;
        writeln!(out, "  arcs       {}", g.arc_count())?;
        writeln!(out, "  out-degree {}", g.out_degree())?;
        writeln!(
            out,
            "  origin     {}",
            g.format_vertex(&standard_origin(&g))
        )?;
        match diam {
            Some(Some(d)) => writeln!(out, "  diameter   {d}")?,
            Some(None) => writeln!(out, "  diameter   infinite")?,
            None => writeln!(out, "  diameter   above --max-vertices")?,
        }
    }
    let rec = ExperimentRecord::new(
        "params",
        &g,
        json!({}),
        json!({
            "vertices": g.vertex_count(),
            "arcs": g.arc_count(),
            "out_degree": g.out_degree(),
            "diameter": diam.flatten(),
            "diameter_computed": diam.is_some(),
        }),
        true,
    );
    finish(rec, cli, start, out)
}
