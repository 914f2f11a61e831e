//! The `gqt` command line.
//!
//! Exit codes: 0 success, 1 law violations or failed preconditions, 2 usage,
//! parse or I/O errors (message on stderr, nothing on stdout).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::check::{check_laws, check_notes, fuzz, GeneratorParams, ParamError};
use crate::compat::classify_pair;
use crate::entangle::{check_entanglement_preconditions, entangled_states};
use crate::io::{load_model, load_quantum, serialize_model, DocError};
use crate::model::{validate_model, Model};
use crate::observable::eigenstates_of_observable;
use crate::proposition::modal_status;
use crate::quantum::{CMatrix, QuantumError, Tolerance};
use crate::{GqtError, StateRef};

#[derive(Debug, Parser)]
#[command(
    name = "gqt",
    version,
    about = "Finite models of Generalized Quantum Theory"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the model laws (idempotence, annihilation, consistency,
    /// exclusion, completeness)
    Validate { model: PathBuf },
    /// Pairwise classification of all observables and eigenstate tables
    Report { model: PathBuf },
    /// Eigenstates of one observable
    Eigen {
        model: PathBuf,
        #[arg(long)]
        observable: String,
    },
    /// Apply a sequence of measurement results to a state
    Measure {
        model: PathBuf,
        #[arg(long)]
        state: String,
        /// Comma-separated obs=value steps, applied left to right
        #[arg(long, value_delimiter = ',')]
        steps: Vec<String>,
    },
    /// Entangled states for a global observable and local observables
    Entangle {
        model: PathBuf,
        #[arg(long)]
        global: String,
        #[arg(long, value_delimiter = ',')]
        locals: Vec<String>,
    },
    /// Quantum backend commands
    #[command(subcommand)]
    Quantum(QuantumCommand),
    /// Generate random valid models and check every law on them
    Fuzz(FuzzArgs),
    /// Check every law and theorem on a model
    Check { model: PathBuf },
}

#[derive(Debug, Subcommand)]
enum QuantumCommand {
    /// Compile a quantum document into a model by orbit closure
    Build {
        doc: PathBuf,
        /// Maximum number of orbit states [default: document value, else 256]
        #[arg(long)]
        cap: Option<usize>,
        /// Numerical tolerance [default: document value, else 1e-9]
        #[arg(long)]
        tol: Option<f64>,
        /// Where to write the model document
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
struct FuzzArgs {
    /// Maximum number of states per model
    #[arg(long)]
    states: usize,
    /// Maximum number of free propositions per model
    #[arg(long)]
    props: usize,
    /// Maximum number of observables per model
    #[arg(long)]
    obs: usize,
    #[arg(long)]
    seed: u64,
    /// Number of models
    #[arg(long)]
    count: u64,
    #[arg(long, default_value_t = 4)]
    max_spectrum: usize,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error(transparent)]
    Model(#[from] GqtError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
}

struct Output {
    text: String,
    code: i32,
}

fn ok(text: String) -> Output {
    Output { text, code: 0 }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Validate { model } => validate(&load_model(model)?, json),
        Command::Report { model } => report(&load_model(model)?, json),
        Command::Eigen { model, observable } => eigen(&load_model(model)?, observable, json),
        Command::Measure {
            model,
            state,
            steps,
        } => measure(&load_model(model)?, state, steps, json),
        Command::Entangle {
            model,
            global,
            locals,
        } => entangle(&load_model(model)?, global, locals, json),
        Command::Quantum(QuantumCommand::Build {
            doc,
            cap,
            tol,
            output,
        }) => quantum_build(doc, *cap, *tol, output, json),
        Command::Fuzz(args) => run_fuzz(args, json),
        Command::Check { model } => check(&load_model(model)?, json),
    }
}

fn validate(model: &Model, json: bool) -> Result<Output, CliError> {
    let report = validate_model(model);
    let code = i32::from(!report.is_empty());
    let text = if json {
        pretty(&json!({ "violations": report.violations, "count": report.len() }))
    } else {
        let mut s = String::new();
        for v in report.iter() {
            writeln!(s, "{v}").unwrap();
        }
        writeln!(s, "{} violations", report.len()).unwrap();
        s
    };
    Ok(Output { text, code })
}

fn eigen_rows(model: &Model, name: &str) -> Result<Vec<(String, String)>, CliError> {
    let a = model.observable(name)?;
    Ok(eigenstates_of_observable(a)
        .into_iter()
        .map(|(z, i)| (a.spectrum()[i].clone(), model.space().name(z).to_string()))
        .collect())
}

fn report(model: &Model, json: bool) -> Result<Output, CliError> {
    let validation = validate_model(model);
    let names: Vec<&str> = model.observables().map(|a| a.name()).collect();
    let mut pairs = Vec::new();
    for (i, a) in model.observables().enumerate() {
        for b in model.observables().skip(i + 1) {
            let (class, evidence) = classify_pair(a, b)?;
            let common: Vec<(String, String, String)> = evidence
                .common
                .iter()
                .map(|c| {
                    (
                        model.space().name(c.state).to_string(),
                        a.spectrum()[c.a].clone(),
                        b.spectrum()[c.b].clone(),
                    )
                })
                .collect();
            pairs.push((a.name(), b.name(), class, common, evidence.witness));
        }
    }
    let class_of = |x: &str, y: &str| {
        pairs
            .iter()
            .find(|(a, b, ..)| (*a == x && *b == y) || (*a == y && *b == x))
            .map(|p| format!("{:?}", p.2))
            .unwrap_or_else(|| "-".to_string())
    };
    let code = i32::from(!validation.is_empty());
    if json {
        let pair_values: Vec<Value> = pairs
            .iter()
            .map(|(a, b, class, common, witness)| {
                json!({
                    "left": a,
                    "right": b,
                    "class": class,
                    "common_eigenstates": common
                        .iter()
                        .map(|(z, va, vb)| json!({ "state": z, "left": va, "right": vb }))
                        .collect::<Vec<_>>(),
                    "witness": witness,
                })
            })
            .collect();
        let mut eigen = serde_json::Map::new();
        for name in &names {
            let rows = eigen_rows(model, name)?;
            eigen.insert(
                name.to_string(),
                rows.iter()
                    .map(|(v, z)| json!({ "value": v, "state": z }))
                    .collect::<Vec<_>>()
                    .into(),
            );
        }
        let text = pretty(&json!({
            "states": model.space().names(),
            "observables": names,
            "pairs": pair_values,
            "eigenstates": eigen,
            "violations": validation.violations,
        }));
        return Ok(Output { text, code });
    }

    let mut s = String::new();
    writeln!(s, "states: {}", model.space().names().join(", ")).unwrap();
    writeln!(s, "observables: {}", names.join(", ")).unwrap();
    writeln!(s).unwrap();
    writeln!(s, "pair classes").unwrap();
    let mut cells: Vec<Vec<String>> = vec![std::iter::once(String::new())
        .chain(names.iter().map(|n| n.to_string()))
        .collect()];
    for x in &names {
        let mut row = vec![x.to_string()];
        for y in &names {
            row.push(if x == y {
                "-".to_string()
            } else {
                class_of(x, y)
            });
        }
        cells.push(row);
    }
    let widths: Vec<usize> = (0..=names.len())
        .map(|c| {
            cells
                .iter()
                .map(|r| r[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        writeln!(s, "  {}", line.join("  ").trim_end()).unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "common eigenstates").unwrap();
    for (a, b, _, common, _) in &pairs {
        let list: Vec<String> = common
            .iter()
            .map(|(z, va, vb)| format!("{z} ({a}={va}, {b}={vb})"))
            .collect();
        let shown = if list.is_empty() {
            "∅".to_string()
        } else {
            list.join(", ")
        };
        writeln!(s, "  {a} {b}: {shown}").unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "eigenstates").unwrap();
    for name in &names {
        writeln!(s, "  {name}").unwrap();
        for (v, z) in eigen_rows(model, name)? {
            writeln!(s, "    {v}  {z}").unwrap();
        }
    }
    writeln!(s).unwrap();
    for v in validation.iter() {
        writeln!(s, "{v}").unwrap();
    }
    writeln!(s, "{} violations", validation.len()).unwrap();
    Ok(Output { text: s, code })
}

fn eigen(model: &Model, observable: &str, json: bool) -> Result<Output, CliError> {
    let rows = eigen_rows(model, observable)?;
    Ok(ok(if json {
        pretty(&json!({
            "observable": observable,
            "eigenstates": rows.iter().map(|(v, z)| json!({ "value": v, "state": z })).collect::<Vec<_>>(),
        }))
    } else {
        rows.iter().map(|(v, z)| format!("{v}  {z}\n")).collect()
    }))
}

fn parse_steps(steps: &[String]) -> Result<Vec<(&str, &str)>, CliError> {
    steps
        .iter()
        .map(|s| {
            s.split_once('=')
                .filter(|(o, v)| !o.is_empty() && !v.is_empty())
                .ok_or_else(|| CliError::Usage(format!("step {s:?} is not of the form obs=value")))
        })
        .collect()
}

fn measure(model: &Model, state: &str, steps: &[String], json: bool) -> Result<Output, CliError> {
    let steps = parse_steps(steps)?;
    let space = model.space();
    let mut z = model.state(state)?;
    let mut trace = Vec::new();
    for &(obs, value) in &steps {
        let branch = model.observable(obs)?.branch(value)?;
        let status = match z {
            StateRef::Proper(_) => Some(modal_status(branch, z)?),
            StateRef::Zero => None,
        };
        let next = branch.yes().apply(z);
        trace.push((obs, value, status, space.display(next).to_string()));
        z = next;
    }
    Ok(ok(if json {
        pretty(&json!({
            "initial": state,
            "steps": trace
                .iter()
                .map(|(o, v, st, to)| json!({ "observable": o, "value": v, "status": st, "state": to }))
                .collect::<Vec<_>>(),
            "final": space.display(z),
        }))
    } else {
        let mut s = format!("{state}\n");
        for (o, v, st, to) in &trace {
            let st = st
                .map(|m| format!("{m:?}").to_lowercase())
                .unwrap_or_else(|| "-".into());
            writeln!(s, "{o}={v} ({st}) -> {to}").unwrap();
        }
        writeln!(s, "final: {}", space.display(z)).unwrap();
        s
    }))
}

fn entangle(
    model: &Model,
    global: &str,
    locals: &[String],
    json: bool,
) -> Result<Output, CliError> {
    let locals: Vec<&str> = locals.iter().map(String::as_str).collect();
    let report = check_entanglement_preconditions(model, global, &locals)?;
    if !report.is_empty() {
        let text = if json {
            pretty(&json!({ "preconditions": report.violations, "states": Value::Null }))
        } else {
            let mut s = String::new();
            for v in &report.violations {
                writeln!(s, "precondition failed: {v}").unwrap();
            }
            s
        };
        return Ok(Output { text, code: 1 });
    }
    let e = entangled_states(model, global, &locals)?;
    let names: Vec<&str> = e.states.iter().map(|&z| model.space().name(z)).collect();
    Ok(ok(if json {
        pretty(&json!({ "preconditions": [], "states": names }))
    } else {
        let mut s = String::from("preconditions: ok\n");
        writeln!(s, "entangled: {}", names.join(", ")).unwrap();
        s
    }))
}

fn number(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn fmt9(x: f64) -> String {
    format!("{:.9}", number(x))
}

fn matrix_text(m: &CMatrix) -> Vec<String> {
    m.rows()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|c| {
                    let im = number(c.im);
                    let sign = if im < 0.0 { '-' } else { '+' };
                    format!("{}{sign}{}i", fmt9(c.re), fmt9(im.abs()))
                })
                .collect();
            format!("[{}]", cells.join("  "))
        })
        .collect()
}

fn matrix_json(m: &CMatrix) -> Value {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|c| json!([number(c.re), number(c.im)]))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into()
}

fn quantum_build(
    doc: &Path,
    cap: Option<usize>,
    tol: Option<f64>,
    output: &Path,
    json: bool,
) -> Result<Output, CliError> {
    let tol = tol.map(Tolerance::new).transpose()?;
    let build = load_quantum(doc)?.build(cap, tol)?;
    let model = &build.orbit.model;
    std::fs::write(output, serialize_model(model)).map_err(|source| CliError::Write {
        path: output.display().to_string(),
        source,
    })?;
    let failed = !build.report.is_empty() || !build.family_violations.is_empty();
    let names = model.space().names();
    let text = if json {
        pretty(&json!({
            "output": output.display().to_string(),
            "cap": build.cap,
            "tolerance": build.tolerance.value(),
            "states": names
                .iter()
                .zip(&build.orbit.states)
                .map(|(n, z)| json!({ "name": n, "matrix": matrix_json(&z.normalized()) }))
                .collect::<Vec<_>>(),
            "family_violations": build
                .family_violations
                .iter()
                .map(|(a, v)| json!({ "observable": a, "violations": v }))
                .collect::<Vec<_>>(),
            "compatibility_gaps": build.gaps.iter().map(|g| json!({
                "left": g.left,
                "right": g.right,
                "commutator_norm": number(g.commutator_norm),
            })).collect::<Vec<_>>(),
            "violations": build.report.violations,
        }))
    } else {
        let mut s = String::new();
        writeln!(
            s,
            "{} states (cap {}, tol {:e})",
            names.len(),
            build.cap,
            build.tolerance.value()
        )
        .unwrap();
        for (n, z) in names.iter().zip(&build.orbit.states) {
            writeln!(s, "{n}").unwrap();
            for row in matrix_text(&z.normalized()) {
                writeln!(s, "  {row}").unwrap();
            }
        }
        for (a, vs) in &build.family_violations {
            for v in vs {
                writeln!(s, "family {a}: {v}").unwrap();
            }
        }
        for g in &build.gaps {
            writeln!(
                s,
                "compatible but not commuting: {} {} (commutator {})",
                g.left,
                g.right,
                fmt9(g.commutator_norm)
            )
            .unwrap();
        }
        for v in build.report.iter() {
            writeln!(s, "{v}").unwrap();
        }
        writeln!(s, "wrote {}", output.display()).unwrap();
        s
    };
    Ok(Output {
        text,
        code: i32::from(failed),
    })
}

fn run_fuzz(args: &FuzzArgs, json: bool) -> Result<Output, CliError> {
    let params = GeneratorParams {
        n_states: args.states,
        n_props: args.props,
        n_obs: args.obs,
        max_spectrum: args.max_spectrum,
        seed: args.seed,
    };
    let summary = fuzz(&params, args.count)?;
    let code = i32::from(summary.violations > 0);
    let text = if json {
        pretty(&serde_json::to_value(&summary).expect("summary serializes"))
    } else {
        let mut s = String::new();
        writeln!(s, "models checked: {}", summary.models_checked).unwrap();
        writeln!(s, "violations: {}", summary.violations).unwrap();
        for (law, n) in &summary.violations_by_law {
            let c = &summary.first_counterexample[law];
            writeln!(
                s,
                "  {law}: {n} (first: seed {}, {})",
                c.params.seed, c.violation
            )
            .unwrap();
        }
        writeln!(s, "notes: {}", summary.notes).unwrap();
        for (kind, n) in &summary.notes_by_kind {
            writeln!(s, "  {kind}: {n}").unwrap();
        }
        s
    };
    Ok(Output { text, code })
}

fn check(model: &Model, json: bool) -> Result<Output, CliError> {
    let violations = check_laws(model);
    let notes = check_notes(model);
    let code = i32::from(!violations.is_empty());
    let text = if json {
        pretty(&json!({ "violations": violations, "notes": notes, "count": violations.len() }))
    } else {
        let mut s = String::new();
        for v in &violations {
            writeln!(s, "{v}").unwrap();
        }
        for n in &notes {
            writeln!(s, "note: {n}").unwrap();
        }
        writeln!(s, "{} violations", violations.len()).unwrap();
        s
    };
    Ok(Output { text, code })
}
