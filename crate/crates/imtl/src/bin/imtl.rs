use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use imtl::formula::{enumerate_formulas, Formula};
use imtl::modelfile::{load_model, render_model, Model};
use imtl::search::{
    find_countermodel_with_progress, imtl_schemas, soundness_sweep_with_depth, Enumeration,
    ProgressEvent, SearchConfig, SearchOutcome, SweepReport,
};
use imtl::transform::{check_pointwise_equivalence, mt2_to_nim, nim_to_mt1, nim_to_mt3, MtRef};
use imtl::worldset::WorldSet;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Workbench for an intuitionistic modal logic: neighborhood and
/// multi-topological models, transformations, equivalence checking, and
/// bounded countermodel search.
#[derive(Parser)]
#[command(name = "imtl", version)]
struct Cli {
    /// Output style: prose, or one JSON record per line
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Mt1,
    Mt3,
    Nim,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula in a model and report where it holds
    Check {
        /// Model file of any kind
        #[arg(long)]
        model: PathBuf,
        /// Formula text, e.g. "[]p -> p"
        #[arg(long)]
        formula: String,
    },
    /// Convert a model to another shape; the result goes to stdout
    Transform {
        /// Source model file (nim for mt1/mt3 targets, mt2 for nim)
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
    },
    /// Compare truth pointwise between a neighborhood model and a
    /// topological one, over all formulas up to a depth
    Equiv {
        /// Pass twice: first the nim file, then the mt1/mt2/mt3 file
        #[arg(long = "model", required = true)]
        models: Vec<PathBuf>,
        /// Formula nesting depth (atoms have depth 1)
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Comma-separated propositional variables; defaults to the
        /// neighborhood model's valuation keys
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Search for a model and world refuting a formula
    Search {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Extra variables for valuations, beyond the formula's own
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        /// Worker threads: 1 sequential, 0 one per core
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Sample random models with this seed instead of enumerating
        #[arg(long)]
        seed: Option<u64>,
        /// Sample count for seeded search
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Check a model file's invariants
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
    /// Sweep the axiom schemas over bounded model spaces
    Soundness {
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Comma-separated variables the instances draw on
        #[arg(long, value_delimiter = ',', default_values_t = [String::from("p"), String::from("q")])]
        vars: Vec<String>,
        /// Instantiation depth for schema metavariables
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Sample random models with this seed instead of enumerating
        #[arg(long)]
        seed: Option<u64>,
        /// Sample count for seeded sweeps
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

const HOLDS: u8 = 0;
const FAILS: u8 = 1;
const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Check { model, formula } => cmd_check(&model, &formula, cli.format),
        Command::Transform { model, target } => cmd_transform(&model, target, cli.format),
        Command::Equiv {
            models,
            depth,
            vars,
        } => cmd_equiv(&models, depth, vars, cli.format),
        Command::Search {
            formula,
            max_worlds,
            vars,
            jobs,
            seed,
            samples,
        } => cmd_search(&formula, max_worlds, vars, jobs, seed, samples, cli.format),
        Command::Validate { model } => cmd_validate(&model, cli.format),
        Command::Soundness {
            max_worlds,
            vars,
            depth,
            seed,
            samples,
        } => cmd_soundness(max_worlds, vars, depth, seed, samples, cli.format),
    }
}

fn enumeration(seed: Option<u64>, samples: usize) -> Enumeration {
    match seed {
        Some(seed) => Enumeration::Randomized { samples, seed },
        None => Enumeration::Exhaustive,
    }
}

fn parse_formula(text: &str) -> anyhow::Result<Formula> {
    text.parse::<Formula>()
        .with_context(|| format!("cannot parse formula '{text}'"))
}

/// Loads a model and insists it is valid; command preconditions say
/// "valid model", so violations here are input errors.
fn load_valid(path: &Path) -> anyhow::Result<Model> {
    let model = load_model(path)?;
    let violations = model.validate_rendered();
    if !violations.is_empty() {
        bail!(
            "{} is not a valid {} model:\n  {}",
            path.display(),
            model.kind(),
            violations.join("\n  ")
        );
    }
    Ok(model)
}

fn render_truth(truth: WorldSet, worlds: usize) -> String {
    if truth == WorldSet::full(worlds) {
        "W".to_owned()
    } else {
        truth.to_string()
    }
}

fn set_to_json(set: WorldSet) -> Vec<usize> {
    set.iter().collect()
}

fn cmd_check(path: &Path, formula: &str, format: Format) -> anyhow::Result<u8> {
    let model = load_valid(path)?;
    let formula = parse_formula(formula)?;
    let worlds = model.world_count();
    let truth = model.truth_set(&formula);
    let satisfied = truth == WorldSet::full(worlds);
    match format {
        Format::Human => {
            println!(
                "{}; {}",
                render_truth(truth, worlds),
                if satisfied { "satisfied" } else { "not satisfied" }
            );
        }
        Format::Records => {
            println!(
                "{}",
                json!({
                    "type": "check",
                    "kind": model.kind().as_str(),
                    "worlds": worlds,
                    "formula": formula.to_string(),
                    "truth_set": set_to_json(truth),
                    "satisfied": satisfied,
                })
            );
        }
    }
    Ok(if satisfied { HOLDS } else { FAILS })
}

fn cmd_transform(path: &Path, target: Target, format: Format) -> anyhow::Result<u8> {
    let source = load_valid(path)?;
    let source_kind = source.kind();
    let unsupported = || {
        anyhow::anyhow!(
            "unsupported direction: {source_kind} -> {}; supported: nim -> mt1, nim -> mt3, mt2 -> nim",
            match target {
                Target::Mt1 => "mt1",
                Target::Mt3 => "mt3",
                Target::Nim => "nim",
            }
        )
    };
    let result = match (source, target) {
        (Model::Nim(m), Target::Mt1) => Model::Mt1(nim_to_mt1(&m)?),
        (Model::Nim(m), Target::Mt3) => Model::Mt3(nim_to_mt3(&m)?),
        (Model::Mt2(m), Target::Nim) => Model::Nim(mt2_to_nim(&m)?),
        _ => return Err(unsupported()),
    };
    let spaces = match &result {
        Model::Mt1(m) => Some(m.spaces.len()),
        Model::Mt2(m) => Some(m.spaces.len()),
        Model::Mt3(m) => Some(m.spaces.len()),
        Model::Nim(_) => None,
    };
    let file = render_model(&result);
    match format {
        Format::Human => {
            match spaces {
                Some(spaces) => eprintln!("worlds: {}, spaces: {spaces}", result.world_count()),
                None => eprintln!("worlds: {}", result.world_count()),
            }
            print!("{file}");
        }
        Format::Records => {
            println!(
                "{}",
                json!({
                    "type": "transform",
                    "source": source_kind.as_str(),
                    "target": result.kind().as_str(),
                    "worlds": result.world_count(),
                    "spaces": spaces,
                    "file": file,
                })
            );
        }
    }
    Ok(HOLDS)
}

fn cmd_equiv(
    models: &[PathBuf],
    depth: usize,
    vars: Vec<String>,
    format: Format,
) -> anyhow::Result<u8> {
    let [nim_path, mt_path] = models else {
        bail!("pass --model twice: first the nim file, then the mt1/mt2/mt3 file");
    };
    let Model::Nim(nim) = load_valid(nim_path)? else {
        bail!("{} must be a nim model", nim_path.display());
    };
    let mt = load_valid(mt_path)?;
    let mt_ref = match &mt {
        Model::Mt1(m) => MtRef::from(m),
        Model::Mt2(m) => MtRef::from(m),
        Model::Mt3(m) => MtRef::from(m),
        Model::Nim(_) => bail!("{} must be an mt1, mt2, or mt3 model", mt_path.display()),
    };
    let vars = if vars.is_empty() {
        nim.valuation.keys().cloned().collect()
    } else {
        vars
    };
    let formulas = enumerate_formulas(&vars, depth)?;
    let report = check_pointwise_equivalence(&nim, mt_ref, &formulas)?;
    match format {
        Format::Human => {
            println!(
                "{} formulas x {} worlds: {} mismatches",
                report.formula_count,
                report.world_count,
                report.mismatches.len()
            );
            for mismatch in report.mismatches.iter().take(10) {
                println!(
                    "  {} @ world {}: nim={}, {}={}",
                    mismatch.formula,
                    mismatch.world,
                    mismatch.nim_verdict,
                    mt.kind(),
                    mismatch.mt_verdict
                );
            }
            if report.mismatches.len() > 10 {
                println!("  ... and {} more", report.mismatches.len() - 10);
            }
        }
        Format::Records => {
            println!(
                "{}",
                json!({
                    "type": "equivalence",
                    "kind": mt.kind().as_str(),
                    "formulas": report.formula_count,
                    "worlds": report.world_count,
                    "mismatches": report.mismatches.len(),
                })
            );
            for mismatch in &report.mismatches {
                println!(
                    "{}",
                    json!({
                        "type": "mismatch",
                        "formula": mismatch.formula.to_string(),
                        "world": mismatch.world,
                        "nim": mismatch.nim_verdict,
                        "mt": mismatch.mt_verdict,
                    })
                );
            }
        }
    }
    Ok(if report.holds() { HOLDS } else { FAILS })
}

fn cmd_search(
    formula: &str,
    max_worlds: usize,
    vars: Vec<String>,
    jobs: usize,
    seed: Option<u64>,
    samples: usize,
    format: Format,
) -> anyhow::Result<u8> {
    let formula = parse_formula(formula)?;
    let cfg = SearchConfig {
        max_worlds,
        variables: vars,
        time_limit: None,
        enumeration: enumeration(seed, samples),
        jobs,
    };
    let progress = |event: ProgressEvent| match (format, event) {
        (Format::Human, ProgressEvent::LevelFinished {
            worlds,
            frames_checked,
        }) => {
            eprintln!("searched {frames_checked} frames up to {worlds} worlds");
        }
        (Format::Human, _) => {}
        (Format::Records, event) => {
            let (stage, worlds, frames) = match event {
                ProgressEvent::LevelStarted { worlds } => ("level_started", worlds, None),
                ProgressEvent::FramesChecked {
                    worlds,
                    frames_checked,
                } => ("frames_checked", worlds, Some(frames_checked)),
                ProgressEvent::LevelFinished {
                    worlds,
                    frames_checked,
                } => ("level_finished", worlds, Some(frames_checked)),
            };
            println!(
                "{}",
                json!({
                    "type": "progress",
                    "stage": stage,
                    "worlds": worlds,
                    "frames_checked": frames,
                })
            );
        }
    };
    match find_countermodel_with_progress(&formula, &cfg, progress)? {
        SearchOutcome::Countermodel { model, world } => {
            let worlds = model.frame.world_count();
            let file = render_model(&Model::Nim(model));
            match format {
                Format::Human => {
                    eprintln!("countermodel with {worlds} worlds, refuted at world {world}");
                    print!("{file}");
                }
                Format::Records => {
                    println!(
                        "{}",
                        json!({
                            "type": "countermodel",
                            "worlds": worlds,
                            "world": world,
                            "file": file,
                        })
                    );
                }
            }
            Ok(FAILS)
        }
        SearchOutcome::NoCountermodelUpTo {
            max_worlds,
            frames_checked,
        } => {
            match format {
                Format::Human => {
                    println!("no countermodel up to {max_worlds} worlds ({frames_checked} frames checked)");
                }
                Format::Records => {
                    println!(
                        "{}",
                        json!({
                            "type": "no_countermodel",
                            "max_worlds": max_worlds,
                            "frames_checked": frames_checked,
                        })
                    );
                }
            }
            Ok(HOLDS)
        }
    }
}

fn cmd_validate(path: &Path, format: Format) -> anyhow::Result<u8> {
    let model = load_model(path)?;
    let violations = model.validate_rendered();
    match format {
        Format::Human => {
            if violations.is_empty() {
                println!(
                    "valid {} model with {} worlds",
                    model.kind(),
                    model.world_count()
                );
            } else {
                println!("invalid {} model:", model.kind());
                for violation in &violations {
                    println!("  {violation}");
                }
            }
        }
        Format::Records => {
            println!(
                "{}",
                json!({
                    "type": "validate",
                    "kind": model.kind().as_str(),
                    "worlds": model.world_count(),
                    "valid": violations.is_empty(),
                    "violations": violations,
                })
            );
        }
    }
    Ok(if violations.is_empty() { HOLDS } else { FAILS })
}

fn cmd_soundness(
    max_worlds: usize,
    vars: Vec<String>,
    depth: usize,
    seed: Option<u64>,
    samples: usize,
    format: Format,
) -> anyhow::Result<u8> {
    let cfg = SearchConfig {
        max_worlds,
        variables: vars,
        time_limit: None,
        enumeration: enumeration(seed, samples),
        jobs: 1,
    };
    let report = soundness_sweep_with_depth(&imtl_schemas(), &cfg, depth)?;
    render_sweep(&report, format);
    Ok(if report.sound() { HOLDS } else { FAILS })
}

fn render_sweep(report: &SweepReport, format: Format) {
    match format {
        Format::Human => {
            for outcome in &report.outcomes {
                println!(
                    "{}: {} instances per model, {} violating pairs",
                    outcome.schema.name, outcome.instances_per_model, outcome.violating_pairs
                );
                for sample in &outcome.samples {
                    println!(
                        "  counterexample: {} fails at world {} of a {}-world model",
                        sample.instance,
                        sample.world,
                        sample.model.frame.world_count()
                    );
                }
            }
            let verdict = if report.sound() { "sound" } else { "unsound" };
            println!(
                "{verdict}: {} models over {} frames at instantiation depth {}",
                report.models_checked, report.frames_checked, report.instantiation_depth
            );
        }
        Format::Records => {
            for outcome in &report.outcomes {
                println!(
                    "{}",
                    json!({
                        "type": "schema",
                        "name": outcome.schema.name,
                        "template": outcome.schema.template.to_string(),
                        "instances_per_model": outcome.instances_per_model,
                        "violating_pairs": outcome.violating_pairs,
                        "samples": outcome.samples.iter().map(|s| json!({
                            "instance": s.instance.to_string(),
                            "world": s.world,
                            "file": render_model(&Model::Nim(s.model.clone())),
                        })).collect::<Vec<_>>(),
                    })
                );
            }
            println!(
                "{}",
                json!({
                    "type": "sweep",
                    "sound": report.sound(),
                    "models_checked": report.models_checked,
                    "frames_checked": report.frames_checked,
                    "instantiation_depth": report.instantiation_depth,
                    "violating_pairs": report.total_violating_pairs(),
                })
            );
        }
    }
}
