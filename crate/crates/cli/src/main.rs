use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hubpaths::apsp::{apsp, round_depth, ApspOutcome};
use hubpaths::format::{parse_graph, GraphFile};
use hubpaths::hubset::{build_hub_hierarchy_metered, shortest_negative_cycle_metered, HierarchyOutcome, HubHierarchy};
use hubpaths::parametric::{min_mean_cycle_karp, min_ratio_binary_search, min_ratio_parametric, Rational, RatioAnswer};
use hubpaths::verify::{verify_graph, verify_random};
use hubpaths::{Digraph, Meter, Path};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

/// Parallel shortest paths through hub-set hierarchies.
#[derive(Parser)]
#[command(name = "hubpaths", version)]
struct Cli {
    /// Write the result document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Det,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Binary,
    Parametric,
}

#[derive(Subcommand)]
enum Command {
    /// All-pairs distances with depth parameter d (rounded down to a power of two).
    Apsp {
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// The negative cycle with the fewest edges, if any.
    Negcycle { graph: PathBuf },
    /// Hub-set hierarchy up to depth d.
    Hubs {
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "det")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimum mean cycle.
    Minmean { graph: PathBuf },
    /// Minimum cost-to-time ratio cycle.
    Minratio {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "parametric")]
        method: Method,
        /// Bisection rounds for --method binary.
        #[arg(long, default_value_t = 60)]
        iterations: usize,
    },
    /// Check every algorithm against brute-force oracles.
    Verify {
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Work and depth of apsp for several depth parameters.
    Bench {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<usize>,
        /// Also report wall-clock time (makes the output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
}

fn load(path: &FsPath) -> Result<GraphFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn check_depth(g: &Digraph, d: usize) -> Result<()> {
    if d == 0 || d > g.n() {
        bail!("--d {d} must lie in [1, {}]", g.n());
    }
    Ok(())
}

fn number(x: f64) -> Value {
    if x == f64::INFINITY {
        json!("inf")
    } else if x == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        json!(x)
    }
}

fn rational(x: &Rational) -> Value {
    json!(x.to_string())
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn path_doc(p: &Path) -> Value {
    json!({
        "vertices": one_based(&p.vertices),
        "hops": p.hops(),
        "weight": number(p.length),
    })
}

fn hierarchy_doc(h: &HubHierarchy) -> Value {
    json!({
        "provenance": h.provenance,
        "d": h.d(),
        "sizes": h.sizes(),
        "levels": h.levels.iter().map(|l| one_based(l)).collect::<Vec<_>>(),
        "hitting_sets": h.hitting,
    })
}

/// A finished command: its document and whether the instance was infeasible.
struct Outcome {
    doc: Value,
    infeasible: bool,
    verify_failed: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome {
            doc,
            infeasible: false,
            verify_failed: false,
        }
    }
}

fn cmd_apsp(file: &GraphFile, d: usize) -> Result<Outcome> {
    let g = file.graph();
    check_depth(g, d)?;
    Ok(match apsp(g, d)? {
        ApspOutcome::Distances(r) => Outcome::ok(json!({
            "command": "apsp",
            "status": "ok",
            "n": g.n(),
            "d_requested": d,
            "d": r.d,
            "distances": r.dist.rows().map(|row| row.iter().map(|&x| number(x)).collect()).collect::<Vec<Vec<Value>>>(),
            "hubs": hierarchy_doc(&r.hierarchy),
            "meter": r.meter,
        })),
        ApspOutcome::NegativeCycle { cycle, meter } => Outcome {
            doc: json!({
                "command": "apsp",
                "status": "negative-cycle",
                "n": g.n(),
                "d_requested": d,
                "d": round_depth(d),
                "negative_cycle": path_doc(&cycle.cycle),
                "meter": meter,
            }),
            infeasible: true,
            verify_failed: false,
        },
    })
}

fn cmd_negcycle(file: &GraphFile) -> Result<Outcome> {
    let g = file.graph();
    let mut meter = Meter::new();
    let found = shortest_negative_cycle_metered(g, &mut meter);
    Ok(Outcome::ok(json!({
        "command": "negcycle",
        "status": if found.is_some() { "negative-cycle" } else { "none" },
        "n": g.n(),
        "negative_cycle": found.map(|c| path_doc(&c.cycle)),
        "meter": meter.report()?,
    })))
}

fn cmd_hubs(file: &GraphFile, d: usize, mode: Mode, seed: u64) -> Result<Outcome> {
    let g = file.graph();
    check_depth(g, d)?;
    let d = round_depth(d);
    Ok(match mode {
        Mode::Sampled => Outcome::ok(json!({
            "command": "hubs",
            "status": "ok",
            "n": g.n(),
            "hubs": hierarchy_doc(&HubHierarchy::sampled(g.n(), d, seed)?),
        })),
        Mode::Det => {
            let mut meter = Meter::new();
            match build_hub_hierarchy_metered(g, d, &mut meter)? {
                HierarchyOutcome::Hubs(h) => Outcome::ok(json!({
                    "command": "hubs",
                    "status": "ok",
                    "n": g.n(),
                    "hubs": hierarchy_doc(&h),
                    "meter": meter.report()?,
                })),
                HierarchyOutcome::Cycle(c) => Outcome {
                    doc: json!({
                        "command": "hubs",
                        "status": "negative-cycle",
                        "n": g.n(),
                        "negative_cycle": path_doc(&c.cycle),
                        "meter": meter.report()?,
                    }),
                    infeasible: true,
                    verify_failed: false,
                },
            }
        }
    })
}

fn ratio_doc(ans: &RatioAnswer) -> Value {
    json!({
        "lambda": number(ans.lambda_star),
        "exact": ans.exact.as_ref().map(rational),
        "witness": path_doc(&ans.witness),
        "certificate": match &ans.exact_certificate {
            Some(p) => p.iter().map(rational).collect::<Vec<_>>(),
            None => ans.certificate.iter().map(|&x| number(x)).collect(),
        },
        "stats": ans.stats,
    })
}

fn cmd_minmean(file: &GraphFile) -> Result<Outcome> {
    let g = file.graph();
    let (karp, _) = min_mean_cycle_karp(g)?;
    let ans = hubpaths::parametric::min_mean_cycle(g)?;
    let mut doc = ratio_doc(&ans);
    doc["command"] = json!("minmean");
    doc["karp_lambda"] = number(karp);
    Ok(Outcome::ok(doc))
}

fn cmd_minratio(file: &GraphFile, method: Method, iterations: usize) -> Result<Outcome> {
    let tg = file.timed();
    Ok(Outcome::ok(match method {
        Method::Parametric => {
            let mut doc = ratio_doc(&min_ratio_parametric(&tg)?);
            doc["command"] = json!("minratio");
            doc["method"] = json!("parametric");
            doc
        }
        Method::Binary => {
            if iterations == 0 {
                bail!("--iterations must be at least 1");
            }
            let iv = min_ratio_binary_search(&tg, iterations)?;
            let (exact_lo, exact_hi) = match iv.exact_history.as_ref().and_then(|h| h.last()) {
                Some((lo, hi)) => (rational(lo), rational(hi)),
                None => (Value::Null, Value::Null),
            };
            json!({
                "command": "minratio",
                "method": "binary",
                "iterations": iv.history.len() - 1,
                "lo": number(iv.lo),
                "hi": number(iv.hi),
                "exact_lo": exact_lo,
                "exact_hi": exact_hi,
            })
        }
    }))
}

fn cmd_verify(graph: Option<&FsPath>, count: usize, seed: u64) -> Result<Outcome> {
    let report = match graph {
        Some(p) => verify_graph(&load(p)?.timed()),
        None => verify_random(seed, count),
    };
    let ok = report.ok();
    Ok(Outcome {
        doc: json!({ "command": "verify", "ok": ok, "report": report }),
        infeasible: false,
        verify_failed: !ok,
    })
}

fn cmd_bench(file: &GraphFile, ds: &[usize], timing: bool) -> Result<Outcome> {
    let g = file.graph();
    let mut runs = Vec::new();
    for &d in ds {
        check_depth(g, d)?;
        let start = Instant::now();
        let out = apsp(g, d)?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let (status, meter) = match &out {
            ApspOutcome::Distances(r) => ("ok", &r.meter),
            ApspOutcome::NegativeCycle { meter, .. } => ("negative-cycle", meter),
        };
        let mut run = json!({
            "d_requested": d,
            "d": round_depth(d),
            "status": status,
            "work": meter.total_work,
            "depth": meter.total_depth,
            "measured_work": meter.measured_work,
            "measured_depth": meter.measured_depth,
        });
        if let ApspOutcome::Distances(r) = &out {
            run["hub_sizes"] = json!(r.hierarchy.sizes());
        }
        if timing {
            run["wall_ms"] = json!(elapsed);
        }
        runs.push(run);
    }
    Ok(Outcome::ok(json!({
        "command": "bench",
        "n": g.n(),
        "m": g.m(),
        "runs": runs,
    })))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Apsp { graph, d } => cmd_apsp(&load(graph)?, *d),
        Command::Negcycle { graph } => cmd_negcycle(&load(graph)?),
        Command::Hubs { graph, d, mode, seed } => cmd_hubs(&load(graph)?, *d, *mode, *seed),
        Command::Minmean { graph } => cmd_minmean(&load(graph)?),
        Command::Minratio {
            graph,
            method,
            iterations,
        } => cmd_minratio(&load(graph)?, *method, *iterations),
        Command::Verify { graph, count, seed } => cmd_verify(graph.as_deref(), *count, *seed),
        Command::Bench { graph, d, timing } => cmd_bench(&load(graph)?, d, *timing),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut text = serde_json::to_string_pretty(&outcome.doc).expect("serializable document");
    text.push('\n');
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    if outcome.verify_failed {
        ExitCode::from(EXIT_VERIFY_FAILED)
    } else if outcome.infeasible {
        ExitCode::from(EXIT_INFEASIBLE)
    } else {
        ExitCode::SUCCESS
    }
}
