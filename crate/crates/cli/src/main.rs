//! `intersub`: exact intersubjectivity analysis for GPT measurements.
//!
//! Every subcommand writes a JSON report to standard output. Exit codes:
//! 0 = computed (whatever the boolean verdict), 2 = invalid input,
//! 3 = guard exceeded or infeasible model.

use clap::{Parser, Subcommand};
use intersub_core::catalog::{CatalogModel, ExpectedValue};
use intersub_core::io::{self, ModelSource, Report, ReportValue};
use intersub_core::{
    acceptance, catalog, cis_degree, classical_degree, cone, coin_toss_degree, discriminate,
    intersubjectivity_degree, is_classical, is_extremal, is_sharp_effect,
    is_tomographically_complete, perfectly_distinguishing_states, quantum, sharpness_degree,
    witness, Distinguishing, Effect, Error, Measurement, Rat, StateSpace,
};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "intersub",
    about = "Exact intersubjectivity, sharpness and measurement analysis on GPT polytopes",
    version
)]
struct Cli {
    /// Suppress witnesses in the report.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Intersubjectivity degree of a measurement.
    Degree {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        measurement: String,
        /// Reject measurements with more outcomes than this.
        #[arg(long)]
        max_outcomes: Option<usize>,
    },
    /// Sharpness degree of a measurement.
    Sharpness {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        measurement: String,
    },
    /// Complete-intersubjectivity degree (minimum over coarse-grainings).
    CisDegree {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        measurement: String,
        #[arg(long)]
        max_outcomes: Option<usize>,
    },
    /// Is the measurement an extreme point of the measurement set?
    Extremal {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        measurement: String,
    },
    /// Is a single effect sharp?
    SharpEffect {
        #[arg(long)]
        model: Option<String>,
        /// Effect file: {"model": optional, "linear": [...], "constant": r}.
        #[arg(long)]
        effect: PathBuf,
    },
    /// Is the model classical (a simplex)?
    ClassicalCheck {
        #[arg(long)]
        model: String,
    },
    /// Unit-norm indecomposable effects (extremal rays of the positive cone).
    Rays {
        #[arg(long)]
        model: String,
    },
    /// Constructive witnesses separating intersubjectivity from complete
    /// intersubjectivity.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Optimal minimum-error discrimination of an ensemble.
    Discriminate {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        ensemble: PathBuf,
    },
    /// States perfectly distinguished by a measurement, when they exist.
    Distinguish {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        measurement: String,
    },
    /// Do the given measurements separate the state space?
    TomoCheck {
        #[arg(long)]
        model: String,
        /// Repeatable measurement file or catalog name.
        #[arg(long = "measurement", required = true)]
        measurements: Vec<String>,
    },
    /// Degree of a coin-tossing measurement from its weights.
    CoinToss {
        /// Comma-separated exact weights, e.g. "3/4,1/8,1/8".
        #[arg(long)]
        weights: String,
    },
    /// Closed-form degree of a measurement on a classical system.
    ClassicalDegree {
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        measurement: String,
    },
    /// Quantum POVM checks.
    Quantum {
        #[command(subcommand)]
        kind: QuantumKind,
    },
    /// Built-in example catalog.
    Catalog {
        #[command(subcommand)]
        kind: CatalogKind,
    },
    /// Seeded random models and measurements.
    Random {
        #[command(subcommand)]
        kind: RandomKind,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Three-outcome witness from a pair of indecomposable effects.
    ThreeOutcome {
        #[arg(long)]
        model: String,
    },
    /// Sharp witness with more outcomes than the CIS bound allows.
    ManyOutcome {
        #[arg(long)]
        model: String,
    },
}

#[derive(Subcommand)]
enum QuantumKind {
    /// Is the POVM projective?
    IsPvm {
        #[arg(long)]
        povm: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Pairwise-support intersubjectivity test.
    Intersubjective {
        #[arg(long)]
        povm: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Extremality of the POVM.
    Extremal {
        #[arg(long)]
        povm: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Closed-form degree of an unbiased qubit measurement.
    QubitDegree {
        /// Comma-separated Bloch vector, e.g. "0.6,0,0".
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Subcommand)]
enum CatalogKind {
    /// List entry names.
    List,
    /// Show one entry with its expected-property table.
    Show { name: String },
    /// Write an entry's model/measurement/POVM files into a directory.
    Export {
        name: String,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Subcommand)]
enum RandomKind {
    /// Seeded random polytope model.
    Model {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
    },
    /// Seeded random measurement on a model.
    Measurement {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        outcomes: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if let Some(report) = report {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json(cli.quiet))
                        .expect("report serializes")
                );
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::GuardExceeded { .. })
        | Some(Error::Infeasible(_))
        | Some(Error::DegenerateSample(_))
        | Some(Error::TheoremViolation(_)) => 3,
        _ => 2,
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

/// Resolves a model argument: a catalog entry name, or a path to a model
/// JSON file.
fn resolve_model(spec: &str) -> anyhow::Result<Arc<StateSpace>> {
    if let Ok(entry) = catalog::load_example(spec) {
        if let CatalogModel::Gpt(space) = entry.model {
            return Ok(space);
        }
        anyhow::bail!("catalog entry `{spec}` is quantum; it has no polytope model");
    }
    Ok(io::model_from_json(&read_json(Path::new(spec))?)?)
}

fn resolve_model_source(
    source: &Option<ModelSource>,
    flag: &Option<String>,
) -> anyhow::Result<Arc<StateSpace>> {
    if let Some(spec) = flag {
        return resolve_model(spec);
    }
    match source {
        Some(ModelSource::Inline(space)) => Ok(space.clone()),
        Some(ModelSource::Reference(name)) => resolve_model(name),
        None => anyhow::bail!("no model given; pass --model or embed one in the file"),
    }
}

/// Resolves a measurement argument: a catalog entry name with a GPT
/// measurement, or a path to a measurement JSON file.
fn resolve_measurement(spec: &str, model_flag: &Option<String>) -> anyhow::Result<Measurement> {
    if let Ok(entry) = catalog::load_example(spec) {
        if let Some(m) = entry.measurement {
            return Ok(m);
        }
        anyhow::bail!("catalog entry `{spec}` has no GPT measurement");
    }
    let parts = io::measurement_parts_from_json(&read_json(Path::new(spec))?)?;
    let space = resolve_model_source(&parts.model, model_flag)?;
    Ok(io::build_measurement(&parts, space)?)
}

fn guard_outcomes(m: &Measurement, max: Option<usize>) -> anyhow::Result<()> {
    if let Some(cap) = max {
        if m.num_outcomes() > cap {
            return Err(Error::GuardExceeded {
                what: "outcome count (per --max-outcomes)",
                got: m.num_outcomes(),
                limit: cap,
            }
            .into());
        }
    }
    Ok(())
}

fn parse_rat_list(text: &str) -> anyhow::Result<Vec<Rat>> {
    text.split(',')
        .map(|s| Ok(intersub_core::parse_rat(s)?))
        .collect()
}

fn run(cli: &Cli) -> anyhow::Result<Option<Report>> {
    let report = match &cli.command {
        Command::Degree {
            model,
            measurement,
            max_outcomes,
        } => {
            let m = resolve_measurement(measurement, model)?;
            guard_outcomes(&m, *max_outcomes)?;
            let rep = intersubjectivity_degree(&m)?;
            Report::new("degree", rep.value.clone()).with_degree_report(&rep)
        }
        Command::Sharpness { model, measurement } => {
            let m = resolve_measurement(measurement, model)?;
            let rep = sharpness_degree(&m)?;
            Report::new("sharpness", rep.value.clone()).with_degree_report(&rep)
        }
        Command::CisDegree {
            model,
            measurement,
            max_outcomes,
        } => {
            let m = resolve_measurement(measurement, model)?;
            guard_outcomes(&m, *max_outcomes)?;
            let rep = cis_degree(&m)?;
            Report::new("cis-degree", rep.value.clone()).with_degree_report(&rep)
        }
        Command::Extremal { model, measurement } => {
            let m = resolve_measurement(measurement, model)?;
            Report::new("extremal", is_extremal(&m)?)
        }
        Command::SharpEffect { model, effect } => {
            let (source, linear, constant) = io::effect_parts_from_json(&read_json(effect)?)?;
            let space = resolve_model_source(&source, model)?;
            let eff = Effect::new(space, linear, constant)?;
            Report::new("sharp-effect", is_sharp_effect(&eff)?)
        }
        Command::ClassicalCheck { model } => {
            let space = resolve_model(model)?;
            let rays = cone::nonneg_cone_rays(&space)?;
            Report::new("classical-check", is_classical(&space)?)
                .extra("num_rays", json!(rays.len()))
                .extra("linear_dim", json!(space.linear_dim()))
        }
        Command::Rays { model } => {
            let space = resolve_model(model)?;
            let rays = cone::nonneg_cone_rays(&space)?;
            let listed: Vec<Value> = rays
                .rays()
                .iter()
                .map(|r| {
                    json!({
                        "linear": r.linear().iter().map(intersub_core::format_rat).collect::<Vec<_>>(),
                        "constant": intersub_core::format_rat(r.constant()),
                        "values": r.values().iter().map(intersub_core::format_rat).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Report::new("rays", intersub_core::rat::int(rays.len() as i64))
                .extra("rays", Value::Array(listed))
        }
        Command::Construct { kind } => match kind {
            ConstructKind::ThreeOutcome { model } => {
                let space = resolve_model(model)?;
                match witness::three_outcome_witness(&space)? {
                    witness::ThreeOutcomeWitness::Classical => {
                        Report::new("construct three-outcome", false)
                            .extra("verdict", json!("classical"))
                    }
                    witness::ThreeOutcomeWitness::Witness {
                        measurement,
                        degree,
                        cis,
                    } => Report::new("construct three-outcome", true)
                        .witness("measurement", io::measurement_to_json(&measurement, false))
                        .extra("degree", json!(intersub_core::format_rat(&degree.value)))
                        .extra("cis_degree", json!(intersub_core::format_rat(&cis.value)))
                        .extra(
                            "cis_witness_partition",
                            Value::Array(
                                cis.witness_partition
                                    .map(|p| {
                                        p.blocks()
                                            .iter()
                                            .map(|b| json!(b))
                                            .collect::<Vec<_>>()
                                    })
                                    .unwrap_or_default(),
                            ),
                        ),
                }
            }
            ConstructKind::ManyOutcome { model } => {
                let space = resolve_model(model)?;
                match witness::many_outcome_witness(&space)? {
                    witness::ManyOutcomeWitness::Classical => {
                        Report::new("construct many-outcome", false)
                            .extra("verdict", json!("classical"))
                    }
                    witness::ManyOutcomeWitness::Witness {
                        measurement,
                        degree,
                    } => Report::new("construct many-outcome", true)
                        .witness("measurement", io::measurement_to_json(&measurement, false))
                        .extra("degree", json!(intersub_core::format_rat(&degree.value)))
                        .extra(
                            "cis_outcome_bound",
                            json!(witness::cis_outcome_bound(&space)),
                        )
                        .extra("outcomes", json!(measurement.num_outcomes())),
                }
            }
        },
        Command::Discriminate { model, ensemble } => {
            let parts = io::ensemble_parts_from_json(&read_json(ensemble)?)?;
            let space = resolve_model_source(&parts.model, model)?;
            let e = io::build_ensemble(&parts, space)?;
            let (optimal, value) = discriminate(&e)?;
            Report::new("discriminate", value)
                .witness("measurement", io::measurement_to_json(&optimal, false))
        }
        Command::Distinguish { model, measurement } => {
            let m = resolve_measurement(measurement, model)?;
            match perfectly_distinguishing_states(&m)? {
                Distinguishing::Found(states) => {
                    let listed: Vec<Value> = states
                        .iter()
                        .map(|s| {
                            Value::Array(
                                s.iter()
                                    .map(|x| Value::String(intersub_core::format_rat(x)))
                                    .collect(),
                            )
                        })
                        .collect();
                    Report::new("distinguish", true).witness("states", Value::Array(listed))
                }
                Distinguishing::NotFound { outcome } => Report::new("distinguish", false)
                    .extra("failing_outcome", json!(outcome)),
            }
        }
        Command::TomoCheck {
            model,
            measurements,
        } => {
            let space = resolve_model(model)?;
            let ms: Vec<Measurement> = measurements
                .iter()
                .map(|spec| resolve_measurement(spec, &Some(model.clone())))
                .collect::<anyhow::Result<_>>()?;
            Report::new("tomo-check", is_tomographically_complete(&space, &ms)?)
        }
        Command::CoinToss { weights } => {
            let w = parse_rat_list(weights)?;
            Report::new("coin-toss", coin_toss_degree(&w)?)
        }
        Command::ClassicalDegree { model, measurement } => {
            let m = resolve_measurement(measurement, model)?;
            Report::new("classical-degree", classical_degree(&m)?)
        }
        Command::Quantum { kind } => match kind {
            QuantumKind::IsPvm { povm, tol } => {
                let p = io::povm_from_json(&read_json(povm)?)?;
                let verdict = match tol {
                    Some(t) => quantum::is_pvm_with_tol(&p, *t)?,
                    None => quantum::is_pvm(&p)?,
                };
                Report::new("quantum is-pvm", verdict)
            }
            QuantumKind::Intersubjective { povm, tol } => {
                let p = io::povm_from_json(&read_json(povm)?)?;
                let check = match tol {
                    Some(t) => quantum::is_intersubjective_povm_with_tol(&p, *t)?,
                    None => quantum::is_intersubjective_povm(&p)?,
                };
                let mut report =
                    Report::new("quantum intersubjective", check.intersubjective);
                if let Some((a, b)) = check.offending_pair {
                    report = report.witness("offending_pair", json!([a, b]));
                }
                report
            }
            QuantumKind::Extremal { povm, tol } => {
                let p = io::povm_from_json(&read_json(povm)?)?;
                let verdict = match tol {
                    Some(t) => quantum::is_extremal_povm_with_tol(&p, *t)?,
                    None => quantum::is_extremal_povm(&p)?,
                };
                Report::new("quantum extremal", verdict)
            }
            QuantumKind::QubitDegree { lambda } => {
                let parts: Vec<f64> = lambda
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|e| anyhow::anyhow!("bad component `{s}`: {e}"))
                    })
                    .collect::<anyhow::Result<_>>()?;
                if parts.len() != 3 {
                    anyhow::bail!("--lambda needs exactly three components");
                }
                let value =
                    quantum::unbiased_qubit_degree(&[parts[0], parts[1], parts[2]])?;
                Report {
                    command: "quantum qubit-degree".into(),
                    value: ReportValue::Real(value),
                    witnesses: Default::default(),
                    extra: Default::default(),
                }
            }
        },
        Command::Catalog { kind } => match kind {
            CatalogKind::List => {
                let names: Vec<Value> = catalog::CATALOG_NAMES
                    .iter()
                    .map(|n| json!(n))
                    .collect();
                Report::new(
                    "catalog list",
                    intersub_core::rat::int(catalog::CATALOG_NAMES.len() as i64),
                )
                .extra("entries", Value::Array(names))
            }
            CatalogKind::Show { name } => {
                let entry = catalog::load_example(name)?;
                catalog_show_report(&entry)
            }
            CatalogKind::Export { name, dir } => {
                let entry = catalog::load_example(name)?;
                let written = export_entry(&entry, dir)?;
                Report::new("catalog export", ReportValue::Text(name.clone())).extra(
                    "files",
                    Value::Array(written.into_iter().map(|p| json!(p)).collect()),
                )
            }
        },
        Command::Random { kind } => match kind {
            RandomKind::Model {
                seed,
                dim,
                vertices,
            } => {
                let space = catalog::random_model(*seed, *dim, *vertices)?;
                Report::new("random model", ReportValue::Text(space.name().into()))
                    .extra("model", io::model_to_json(&space))
            }
            RandomKind::Measurement {
                model,
                seed,
                outcomes,
            } => {
                let space = resolve_model(model)?;
                let m = catalog::random_measurement(&space, *outcomes, *seed)?;
                Report::new("random measurement", ReportValue::Text("ok".into()))
                    .extra("measurement", io::measurement_to_json(&m, true))
            }
        },
        Command::Selftest => {
            let results = acceptance::run_all(|r| println!("{}", r.line()));
            let all = results.iter().all(|r| r.passed);
            let lines: Vec<Value> = results.iter().map(|r| json!(r.line())).collect();
            Report::new("selftest", all).extra("criteria", Value::Array(lines))
        }
    };
    Ok(Some(report))
}

fn catalog_show_report(entry: &catalog::CatalogEntry) -> Report {
    let mut report = Report::new("catalog show", ReportValue::Text(entry.name.into()));
    match &entry.model {
        CatalogModel::Gpt(space) => {
            report = report.extra("model", io::model_to_json(space));
        }
        CatalogModel::Quantum { dim } => {
            report = report.extra("model", json!({"quantum_dim": dim}));
        }
    }
    if let Some(m) = &entry.measurement {
        report = report.extra("measurement", io::measurement_to_json(m, false));
    }
    if let Some(p) = &entry.povm {
        report = report.extra("povm", io::povm_to_json(p));
    }
    let expected: Vec<Value> = entry
        .expected
        .iter()
        .map(|row| {
            let value = match &row.value {
                ExpectedValue::Bool(b) => json!(b),
                ExpectedValue::Degree(d) => json!(intersub_core::format_rat(d)),
                ExpectedValue::DegreeBelow(d) => {
                    json!(format!("< {}", intersub_core::format_rat(d)))
                }
            };
            json!({
                "property": row.property,
                "expected": value,
                "provenance": row.provenance,
                "note": row.note,
            })
        })
        .collect();
    report.extra("expected", Value::Array(expected))
}

fn export_entry(entry: &catalog::CatalogEntry, dir: &Path) -> anyhow::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut write = |name: String, value: &Value| -> anyhow::Result<()> {
        let path = dir.join(&name);
        std::fs::write(&path, serde_json::to_string_pretty(value)?)?;
        written.push(path.display().to_string());
        Ok(())
    };
    match &entry.model {
        CatalogModel::Gpt(space) => {
            write(
                format!("{}.model.json", entry.name),
                &io::model_to_json(space),
            )?;
        }
        CatalogModel::Quantum { .. } => {}
    }
    if let Some(m) = &entry.measurement {
        write(
            format!("{}.measurement.json", entry.name),
            &io::measurement_to_json(m, true),
        )?;
    }
    if let Some(p) = &entry.povm {
        write(format!("{}.povm.json", entry.name), &io::povm_to_json(p))?;
    }
    Ok(written)
}
