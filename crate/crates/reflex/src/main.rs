//! Command-line surface: generate family graphs, verify edge-reflexivity,
//! reproduce the published tables, and export to interchange formats.
//!
//! Exit codes: 0 = success / all expectations met, 1 = expectation mismatch,
//! 2 = input error.

use clap::{Parser, Subcommand, ValueEnum};
use reflex::families::LadderConvention;
use reflex::formats;
use reflex::store::{now_unix, tool_version, RunRecord, Store};
use reflex::verifier::{self, Mode};
use reflex::{CubicGraph, FamilySpec};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "reflex", version, about = "edge-reflexivity of cubic graphs")]
struct Cli {
    /// How ladder length parameters are counted in theta ladders.
    #[arg(long, global = true, default_value = "squares")]
    ladder_convention: LadderConvention,
    /// Worker threads for batch verification (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family graph and write its canonical .cub form.
    Gen {
        /// Family spec, e.g. `theta:2,2,5`, `prism:4`, `tl:1,3,3`,
        /// `program:@ops.txt`, `k33`.
        spec: String,
        /// Output path (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify edge-reflexivity of a family spec or a `@file.cub`.
    Verify {
        input: String,
        #[arg(long, default_value = "fast")]
        mode: Mode,
        /// Emit the full report as JSON instead of a summary line.
        #[arg(long)]
        json: bool,
        /// Result store path (defaults to $REFLEX_STORE or ./reflex-store.jsonl).
        #[arg(long)]
        store: Option<PathBuf>,
        /// Skip the store entirely (no lookup, no append).
        #[arg(long)]
        no_store: bool,
    },
    /// Run a reproduction table and compare against the published verdicts.
    Reproduce {
        /// theta | prisms | theta-ladders | base-cases | k33-subdivisions |
        /// fusenes | stretch | all
        table: String,
        #[arg(long, default_value = "fast")]
        mode: Mode,
        #[arg(long)]
        json: bool,
        /// Directory for the markdown + JSON artifacts (default: current).
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Export a graph to another format.
    Export {
        input: String,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Graph6,
    Json,
}

fn load_graph(input: &str, convention: LadderConvention) -> Result<CubicGraph, String> {
    if let Some(path) = input.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        formats::read_cub(&text).map_err(|e| format!("{path}: {e}"))
    } else {
        let spec: FamilySpec = input.parse().map_err(|e| format!("{e}"))?;
        spec.generate(convention).map_err(|e| format!("{e}"))
    }
}

fn write_out(out: Option<&Path>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let convention = cli.ladder_convention;
    match cli.command {
        Command::Gen { spec, out } => {
            let g = load_graph(&spec, convention)?;
            write_out(out.as_deref(), &formats::write_cub(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            input,
            mode,
            json,
            store,
            no_store,
        } => {
            let g = load_graph(&input, convention)?;
            if !g.is_valid() {
                let reasons: Vec<String> =
                    g.validate().iter().map(|v| v.to_string()).collect();
                return Err(format!("invalid graph: {}", reasons.join("; ")));
            }
            let hash = formats::graph_hash(&g);
            let storage = (!no_store).then(|| Store::open(store.as_deref()));
            let cached = match &storage {
                Some(s) => s
                    .lookup(&hash, tool_version(), convention, mode)
                    .map_err(|e| e.to_string())?,
                None => None,
            };
            let (report, fresh) = match cached {
                Some(rec) => (rec.report, false),
                None => (verifier::verify_edge_reflexive(&g, mode), true),
            };
            if fresh {
                if let Some(s) = &storage {
                    let family = (!input.starts_with('@')).then(|| input.clone());
                    s.append(&RunRecord {
                        graph_hash: hash,
                        family,
                        report: report.clone(),
                        timestamp: now_unix(),
                        tool_version: tool_version().to_string(),
                        ladder_convention: convention,
                        mode,
                    })
                    .map_err(|e| e.to_string())?;
                }
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                println!(
                    "{}: {}{}",
                    input,
                    if report.reflexive {
                        "edge-reflexive"
                    } else {
                        "not edge-reflexive"
                    },
                    report
                        .reason
                        .as_deref()
                        .map(|r| format!(" ({r})"))
                        .unwrap_or_default()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce {
            table,
            mode,
            json,
            out_dir,
        } => {
            let tables: Vec<&str> = if table == "all" {
                vec![
                    "theta",
                    "prisms",
                    "theta-ladders",
                    "base-cases",
                    "k33-subdivisions",
                    "fusenes",
                    "stretch",
                ]
            } else {
                vec![table.as_str()]
            };
            let mut all_pass = true;
            for t in tables {
                let result =
                    verifier::reproduce(t, convention, mode).map_err(|e| e.to_string())?;
                all_pass &= result.all_pass;
                let md = verifier::to_markdown(&result);
                if json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&result).expect("result serializes")
                    );
                } else {
                    print!("{md}");
                }
                std::fs::create_dir_all(&out_dir)
                    .map_err(|e| format!("{}: {e}", out_dir.display()))?;
                let base = out_dir.join(format!("reproduce-{t}"));
                std::fs::write(base.with_extension("md"), &md)
                    .map_err(|e| e.to_string())?;
                std::fs::write(
                    base.with_extension("json"),
                    serde_json::to_string_pretty(&result).expect("result serializes"),
                )
                .map_err(|e| e.to_string())?;
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Export { input, format, out } => {
            let g = load_graph(&input, convention)?;
            let content = match format {
                ExportFormat::Dot => formats::to_dot(&g),
                ExportFormat::Graph6 => {
                    if g.half_edge_count() > 0 {
                        return Err("graph6 export requires a half-edge-free graph".into());
                    }
                    if g.has_multi_edge() {
                        return Err("graph6 export requires a simple graph".into());
                    }
                    let simple = reflex::SimpleGraph::new(g.n(), g.full_edges().iter().copied())
                        .map_err(|e| e.to_string())?;
                    let mut s = formats::to_graph6(&simple);
                    s.push('\n');
                    s
                }
                ExportFormat::Json => {
                    let report = verifier::verify_edge_reflexive(&g, Mode::Fast);
                    let mut s =
                        serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            write_out(out.as_deref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
