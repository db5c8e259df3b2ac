//! `staudt` — batch exploration of projective lines over small finite rings.
//!
//! Subcommands:
//!   ring    axioms, units, and the five-units / two-unit conditions
//!   line    points, distant graph (DOT/JSON export), components
//!   verify  classify all harmonicity preservers and match each to Jordan data
//!
//! Exit codes: 0 success, 1 falsification, 2 usage or parse error,
//! 3 resource cap exceeded. JSON output is byte-identical for identical
//! configurations (including the seed), regardless of `--threads`.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use staudt_core::error::Error;
use staudt_core::preservers::verify_staudt_theorem;
use staudt_core::projline::{
    build_distant_graph, check_condition_i_prime, components, export_line, to_dot, ProjectiveLine,
};
use staudt_core::report::{ConditionsReport, RingReport, VerifyReport};
use staudt_core::ring::{
    build_ring, check_condition_five_units, check_ring_axioms, check_two_unit, parse_ring_spec,
};
use staudt_core::{Caps, Ring};

#[derive(Parser)]
#[command(
    name = "staudt",
    version,
    about = "Projective lines over finite rings: distant graphs, harmonic quadruples, and harmonicity preservers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Ring size limit for full GL₂ enumeration.
    #[arg(long, global = true)]
    gl2_cap: Option<usize>,

    /// Node budget for the classification search.
    #[arg(long, global = true)]
    node_budget: Option<u64>,

    /// Cap on internal parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized passes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Include wall-clock timing in JSON reports. Off by default so that
    /// repeated runs stay byte-identical.
    #[arg(long, global = true)]
    emit_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check ring axioms and report units and the theorem hypotheses.
    Ring { spec: String },
    /// Enumerate the projective line and export its distant graph.
    Line {
        spec: String,
        /// Also write the distant graph as DOT to this path.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Classify all harmonicity preservers and match them to Jordan data.
    Verify {
        spec: String,
        /// Target ring spec; defaults to the source.
        target: Option<String>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore failure: the global pool can only be set once (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(falsified) => {
            if falsified {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::Falsified(_) => 1,
                Error::Resource(_) => 3,
                _ => 2,
            })
        }
    }
}

fn caps_from(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(cap) = cli.gl2_cap {
        caps.gl2_ring_size = cap;
    }
    if let Some(budget) = cli.node_budget {
        caps.node_budget = budget;
    }
    if let Ok(dir) = std::env::var("STAUDT_CACHE_DIR") {
        if !dir.is_empty() {
            caps.cache_dir = Some(PathBuf::from(dir));
        }
    }
    caps
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))
        }
    }
}

fn build(spec: &str, caps: &Caps) -> Result<Ring, Error> {
    build_ring(&parse_ring_spec(spec)?, caps)
}

/// Runs the selected command; `Ok(true)` means a falsification was detected.
fn run(cli: &Cli) -> Result<bool, Error> {
    let caps = caps_from(cli);
    match &cli.command {
        Command::Ring { spec } => {
            let ring = build(spec, &caps)?;
            let axioms = check_ring_axioms(&ring);
            let five = check_condition_five_units(&ring, &caps, cli.seed);
            let two = check_two_unit(&ring);
            let report = RingReport {
                ring: ring.label().to_string(),
                size: ring.size(),
                characteristic: ring.characteristic(),
                unit_count: ring.units().len(),
                axioms_pass: axioms.passed(),
                conditions: ConditionsReport::from_parts(&five, two, None),
                axioms,
            };
            match cli.format {
                Format::Json => emit(
                    cli,
                    &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
                )?,
                _ => {
                    let mut text = format!(
                        "ring {}: {} elements, {} units, characteristic {}\n",
                        report.ring, report.size, report.unit_count, report.characteristic
                    );
                    text.push_str(&format!(
                        "axioms: {}\n",
                        if report.axioms_pass { "pass" } else { "FAIL" }
                    ));
                    for failure in report.axioms.failures() {
                        text.push_str(&format!(
                            "  {} fails at {:?}\n",
                            failure.axiom, failure.witness
                        ));
                    }
                    if let Some((a, b)) = report.axioms.noncommutative_witness {
                        text.push_str(&format!("noncommutative: {a}·{b} ≠ {b}·{a}\n"));
                    }
                    text.push_str(&format!(
                        "condition (i) five-units: {}\n",
                        verdict_text(report.conditions.five_units)
                    ));
                    if let Some(w) = &report.conditions.five_units_witness {
                        text.push_str(&format!("  blocking 5-tuple: {w:?}\n"));
                    }
                    text.push_str(&format!(
                        "condition (ii) 2 is a unit: {}\n",
                        if report.conditions.two_unit {
                            "holds"
                        } else {
                            "fails"
                        }
                    ));
                    emit(cli, &text)?;
                }
            }
            if !report.axioms_pass {
                return Err(Error::Falsified("ring axioms failed".into()));
            }
            Ok(false)
        }
        Command::Line { spec, graph } => {
            let ring = build(spec, &caps)?;
            let line = ProjectiveLine::build(&ring)?;
            let dgraph = build_distant_graph(&line);
            if let Some(path) = graph {
                std::fs::write(path, to_dot(&line, &dgraph)).map_err(|e| {
                    Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            match cli.format {
                Format::Json => {
                    let export = export_line(&line, &dgraph);
                    emit(
                        cli,
                        &format!("{}\n", serde_json::to_string_pretty(&export).unwrap()),
                    )?;
                }
                Format::Dot => emit(cli, &to_dot(&line, &dgraph))?,
                Format::Text => {
                    let comps = components(&dgraph);
                    let ip = check_condition_i_prime(&line, &dgraph, &caps);
                    let mut text = format!(
                        "line over {}: {} points, {} component(s)\n",
                        ring.label(),
                        line.len(),
                        comps.len()
                    );
                    for (i, c) in comps.iter().enumerate() {
                        text.push_str(&format!("  component {i}: {} points\n", c.len()));
                    }
                    let degrees: Vec<usize> = line.ids().map(|p| dgraph.degree(p)).collect();
                    let (min, max) = (
                        degrees.iter().min().copied().unwrap_or(0),
                        degrees.iter().max().copied().unwrap_or(0),
                    );
                    text.push_str(&format!("degrees: min {min}, max {max}\n"));
                    text.push_str(&format!(
                        "condition (i′): {}\n",
                        verdict_text(match ip.verdict {
                            staudt_core::ring::Verdict::Holds => Some(true),
                            staudt_core::ring::Verdict::Fails => Some(false),
                            staudt_core::ring::Verdict::Unresolved => None,
                        })
                    ));
                    emit(cli, &text)?;
                }
            }
            Ok(false)
        }
        Command::Verify { spec, target } => {
            let source = build(spec, &caps)?;
            let target_ring = match target {
                Some(t) => build(t, &caps)?,
                None => Ring::clone(&source),
            };
            let verification = verify_staudt_theorem(&source, &target_ring, &caps, cli.seed)?;
            let report = VerifyReport::from_verification(&verification, cli.emit_timing);
            match cli.format {
                Format::Json => emit(
                    cli,
                    &format!("{}\n", serde_json::to_string_pretty(&report).unwrap()),
                )?,
                _ => {
                    let mut text = format!(
                        "verify {}{}\n",
                        report.ring,
                        report
                            .target_ring
                            .as_ref()
                            .map(|t| format!(" -> {t}"))
                            .unwrap_or_default()
                    );
                    text.push_str(&format!(
                        "conditions: (i) {}, (ii) {}, (i′) {}\n",
                        verdict_text(report.conditions.five_units),
                        if report.conditions.two_unit {
                            "holds"
                        } else {
                            "fails"
                        },
                        verdict_text(report.conditions.i_prime.flatten()),
                    ));
                    text.push_str(&format!(
                        "points: {}, harmonic quadruples: {}, preservers: {}\n",
                        report.counts.points,
                        report.counts.harmonic_quads,
                        report.counts.preservers
                    ));
                    text.push_str(&format!(
                        "matched: {} of {} preserver×component pairs, {} Jordan map(s) used\n",
                        report.matches.len(),
                        verification.matches.len(),
                        verification.jordan_maps.len()
                    ));
                    if !report.unmatched.is_empty() {
                        text.push_str(&format!("unmatched preservers: {:?}\n", report.unmatched));
                    }
                    if verification.falsified {
                        text.push_str("FALSIFIED: hypotheses hold but matching failed\n");
                    }
                    emit(cli, &text)?;
                }
            }
            Ok(verification.falsified)
        }
    }
}

fn verdict_text(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "unresolved",
    }
}
