use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reeb_complement::geom::parse_rational;
use reeb_complement::mesh::{BuiltinName, BuiltinSpec};
use reeb_complement::pipeline::{run, validate_file, Input, RunConfig};
use reeb_complement::simplify::{ImportanceMeasure, Side, Simplification, SimplificationMode};

/// Reeb complement of a bivariate piecewise-linear field.
#[derive(Parser)]
#[command(name = "reebc", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Mesh file in the rcm text format.
    #[arg(long, conflicts_with = "builtin")]
    mesh: Option<PathBuf>,
    /// Builtin example: eq1, eq2, diamond-pair, eq2_f1, eq2_f2.
    #[arg(long)]
    builtin: Option<BuiltinName>,
    /// Grid cells per side for builtins.
    #[arg(long, default_value_t = 64)]
    resolution: usize,
    /// Builtin domain is [-X, X]².
    #[arg(long, default_value = "3")]
    extent: String,

    /// Cancel arcs whose importance is below this threshold.
    #[arg(long)]
    simplify: Option<String>,
    #[arg(long, default_value = "persistence")]
    measure: ImportanceMeasure,
    #[arg(long, default_value = "consider")]
    mode: SimplificationMode,
    /// 1, 2 or both.
    #[arg(long, default_value = "both")]
    side: Side,

    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Check cells against the brute-force oracle at this grid resolution.
    #[arg(long)]
    oracle_check: Option<usize>,
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Re-read a JSON artifact and check its invariants.
    Validate { json: PathBuf },
}

fn config(cli: Cli) -> Result<RunConfig, String> {
    let input = match (cli.mesh, cli.builtin) {
        (Some(path), None) => Input::Mesh(path),
        (None, Some(name)) => {
            let extent = parse_rational(&cli.extent).map_err(|e| format!("--extent: {e}"))?;
            Input::Builtin(BuiltinSpec { name, extent, resolution: cli.resolution })
        }
        _ => return Err("exactly one of --mesh or --builtin is required".into()),
    };
    let simplify = match cli.simplify {
        Some(t) => {
            let threshold = parse_rational(&t).map_err(|e| format!("--simplify: {e}"))?;
            Some((Simplification { measure: cli.measure, threshold, mode: cli.mode }, cli.side))
        }
        None => None,
    };
    Ok(RunConfig {
        input,
        simplify,
        output: cli.output,
        svg: cli.svg,
        dot: cli.dot,
        oracle_check: cli.oracle_check,
        verbose: cli.verbose,
    })
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    if let Some(Command::Validate { json }) = cli.command.take() {
        return match validate_file(&json) {
            Ok(s) => {
                println!("ok: {} rectangles, {} cells ({} labelled), {} adjacencies", s.rectangles, s.cells, s.labelled, s.adjacencies);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        };
    }
    let config = match config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&config) {
        Ok(out) => {
            let cg = &out.complement;
            println!(
                "arcs {} x {}, {} rectangles, {} cells, {} adjacencies",
                cg.graphs[0].arcs.len(),
                cg.graphs[1].arcs.len(),
                cg.rectangles.len(),
                cg.cells.len(),
                cg.adjacency.len()
            );
            if config.output.is_none() {
                for c in &cg.cells {
                    println!("  {} {}", c.id, c.label.map_or("-", |l| l.as_str()));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
