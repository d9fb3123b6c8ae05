use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::error::ExprError;
use super::eval::eval_str;
use super::parser::parse;
use super::scene::{BladeMap, Scene, SceneError};
use crate::conformal::ObjectParams;
use crate::mvcore::{format_real, Tolerance};
use crate::neuron::{
    generate_dataset, train, write_dataset, GeometricNeuron, NeuronMode, Normalization, Objective,
    TrainConfig,
};
use crate::versor::{compose, Mode, Parity, Versor};

/// Conformal geometric algebra in Cl(4,1).
#[derive(Debug, Parser)]
#[command(name = "ga", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
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
    /// Evaluate an expression and print the resulting multivector.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Zero coefficients below tolerance before printing.
        #[arg(long)]
        chop: bool,
    },
    /// Apply a versor (or a chain, first acting first) to scene objects.
    #[command(group(ArgGroup::new("spec").required(true).args(["versor", "chain"])))]
    Transform {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        versor: Option<String>,
        #[arg(long, num_args = 1..)]
        chain: Vec<String>,
        /// Defaults to reflection for odd versors and motion for even ones.
        #[arg(long, value_parser = ["motion", "reflection"])]
        mode: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Transform only these objects; others are copied unchanged.
        #[arg(long, num_args = 1..)]
        only: Vec<String>,
    },
    /// Print kind, representation and parameters of every scene object.
    Classify {
        #[arg(long)]
        scene: PathBuf,
    },
    /// Learn a versor with a single geometric neuron.
    Train {
        /// Target versor expression.
        #[arg(long)]
        versor: String,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5000)]
        epochs: usize,
        #[arg(long, default_value_t = 0.1)]
        lr: f64,
        /// Defaults to the parity of the target.
        #[arg(long, value_parser = ["even", "odd"])]
        parity: Option<String>,
        #[arg(long, default_value = "twisted-adjoint", value_parser = ["signed-sandwich", "twisted-adjoint"])]
        mode: String,
        /// Standard deviation of Gaussian noise on targets.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value = "unit-norm", value_parser = ["raw", "point-e0", "unit-norm"])]
        normalization: String,
        #[arg(long, default_value_t = 0.1)]
        penalty: f64,
        /// Samples per step; 0 is the full set.
        #[arg(long, default_value_t = 0)]
        batch: usize,
        /// Stop once the loss is below this value.
        #[arg(long, default_value_t = 1e-12)]
        stop: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the generated samples to this file.
        #[arg(long)]
        save_data: Option<PathBuf>,
    },
}

enum Failure {
    /// Exit status 2.
    Usage(String),
    /// Exit status 1.
    Domain(String),
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<SceneError> for Failure {
    fn from(e: SceneError) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Domain(format!("{}: {e}", path.display()))
}

/// Runs the `ga` command line; returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

/// `GA_TOLERANCE` replaces the relative tolerance.
fn env_rel() -> Result<Option<f64>, Failure> {
    match std::env::var("GA_TOLERANCE") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x >= 0.0 => Ok(Some(x)),
            _ => Err(Failure::Usage(format!(
                "GA_TOLERANCE must be a nonnegative number, got '{s}'"
            ))),
        },
    }
}

fn load_scene(path: &Path, rel: Option<f64>) -> Result<Scene, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(Scene::from_json(&text, rel)?)
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Domain(format!("writing output: {e}")))
}

fn emit_json(stdout: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    emit(stdout, &s)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let rel = env_rel()?;
    let format = cli.format;
    match cli.command {
        Command::Eval { expr, chop } => {
            let tol = rel.map_or(Tolerance::DEFAULT, Tolerance::with_rel);
            let tree = parse(&expr)?;
            let mut mv = eval_str(&expr, &Scene::default(), &tol)?;
            if chop {
                mv = mv.chop(&tol);
            }
            match format {
                Format::Text => emit(stdout, &format!("{mv}\n")),
                Format::Json => emit_json(
                    stdout,
                    &json!({
                        "expression": tree.to_string(),
                        "result": BladeMap(&mv),
                        "text": mv.to_string(),
                    }),
                ),
            }
        }
        Command::Transform {
            scene,
            versor,
            chain,
            mode,
            out,
            only,
        } => {
            let mut scene = load_scene(&scene, rel)?;
            let tol = scene.effective_tolerance(rel);
            for name in &only {
                if !scene.objects.contains_key(name) {
                    return Err(Failure::Usage(format!("--only: no object named '{name}'")));
                }
            }
            let specs: Vec<String> = versor.into_iter().chain(chain).collect();
            let mut vs = Vec::with_capacity(specs.len());
            for spec in &specs {
                let mv = eval_str(spec, &scene, &tol)?;
                vs.push(Versor::with_tolerance(mv, &tol)?);
            }
            let v = compose(&vs)?;
            let mode = mode
                .as_deref()
                .and_then(Mode::parse)
                .unwrap_or_else(|| v.natural_mode());
            scene.transform(&v, mode, &only, &tol)?;
            let text = scene.to_json();
            match out {
                None => emit(stdout, &text),
                Some(path) => {
                    write_file(&path, &text)?;
                    match format {
                        Format::Text => emit(
                            stdout,
                            &format!(
                                "transformed {} objects ({mode}) -> {}\n",
                                if only.is_empty() {
                                    scene.objects.len()
                                } else {
                                    only.len()
                                },
                                path.display()
                            ),
                        ),
                        Format::Json => emit_json(
                            stdout,
                            &json!({
                                "out": path.display().to_string(),
                                "mode": mode.name(),
                                "objects": scene.objects.keys().collect::<Vec<_>>(),
                            }),
                        ),
                    }
                }
            }
        }
        Command::Classify { scene } => {
            let scene = load_scene(&scene, rel)?;
            match format {
                Format::Text => {
                    let mut s = String::new();
                    for (name, obj) in &scene.objects {
                        s.push_str(&format!(
                            "{name}: {} ({}) {}\n",
                            obj.kind,
                            repr_name(obj.repr),
                            params_text(&obj.params)
                        ));
                    }
                    emit(stdout, &s)
                }
                Format::Json => {
                    let map: serde_json::Map<String, Value> = scene
                        .objects
                        .iter()
                        .map(|(name, obj)| {
                            (
                                name.clone(),
                                json!({
                                    "kind": obj.kind.name(),
                                    "representation": repr_name(obj.repr),
                                    "params": params_json(&obj.params),
                                }),
                            )
                        })
                        .collect();
                    emit_json(stdout, &Value::Object(map))
                }
            }
        }
        Command::Train {
            versor,
            n,
            seed,
            epochs,
            lr,
            parity,
            mode,
            noise,
            normalization,
            penalty,
            batch,
            stop,
            out,
            save_data,
        } => {
            if !(lr.is_finite() && lr > 0.0) {
                return Err(Failure::Usage(format!("--lr must be positive, got {lr}")));
            }
            if !(noise.is_finite() && noise >= 0.0) {
                return Err(Failure::Usage(format!("--noise must be >= 0, got {noise}")));
            }
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let tol = rel.map_or(Tolerance::DEFAULT, Tolerance::with_rel);
            let target = Versor::with_tolerance(eval_str(&versor, &Scene::default(), &tol)?, &tol)?;
            let parity = parity
                .as_deref()
                .and_then(Parity::parse)
                .unwrap_or_else(|| target.parity());
            let mode = NeuronMode::parse(&mode).expect("clap restricts values");
            let normalization =
                Normalization::parse(&normalization).expect("clap restricts values");
            let samples = generate_dataset(&target, target.natural_mode(), n, seed, noise)?;
            if let Some(path) = &save_data {
                let mut buf = Vec::new();
                write_dataset(&mut buf, &samples).expect("writing to memory");
                write_file(
                    path,
                    &String::from_utf8(buf).expect("dataset text is utf-8"),
                )?;
            }
            let start = GeometricNeuron::near_identity(parity, mode, seed);
            let cfg = TrainConfig {
                learning_rate: lr,
                epochs,
                batch,
                seed,
                tolerance: stop,
                objective: Objective {
                    normalization,
                    penalty,
                },
                ..TrainConfig::default()
            };
            let report = train(&start, &samples, &cfg)?;
            let body = match format {
                Format::Text => report.to_text(),
                Format::Json => {
                    let v = json!({
                        "target": versor,
                        "parity": report.neuron.parity.name(),
                        "mode": report.neuron.mode.name(),
                        "normalization": normalization.name(),
                        "epochs_run": report.epochs_run,
                        "converged": report.converged,
                        "final_loss": report.final_loss(),
                        "theta_norm": report.neuron.threshold.coeff_norm(),
                        "weight": BladeMap(&report.neuron.weight),
                        "threshold": BladeMap(&report.neuron.threshold),
                        "history": report.history,
                    });
                    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
                    s.push('\n');
                    s
                }
            };
            match out {
                None => emit(stdout, &body),
                Some(path) => {
                    write_file(&path, &body)?;
                    if format == Format::Text {
                        emit(
                            stdout,
                            &format!(
                                "final loss {:e} after {} epochs -> {}\n",
                                report.final_loss(),
                                report.epochs_run,
                                path.display()
                            ),
                        )?;
                    }
                    Ok(())
                }
            }
        }
    }
}

fn repr_name(r: crate::conformal::Representation) -> &'static str {
    match r {
        crate::conformal::Representation::Opns => "opns",
        crate::conformal::Representation::Ipns => "ipns",
    }
}

fn vec_text(v: crate::conformal::EuclideanVector) -> String {
    format!(
        "({}, {}, {})",
        format_real(v.x),
        format_real(v.y),
        format_real(v.z)
    )
}

fn params_text(p: &ObjectParams) -> String {
    match p {
        ObjectParams::Point { location } => format!("location={}", vec_text(*location)),
        ObjectParams::Round {
            center,
            radius2,
            reality,
            ..
        } => format!(
            "center={} radius2={} {}",
            vec_text(*center),
            format_real(*radius2),
            format!("{reality:?}").to_lowercase()
        ),
        ObjectParams::FlatPoint { location } => format!("location={}", vec_text(*location)),
        ObjectParams::Line { direction, moment } => {
            format!("direction={} moment={moment}", vec_text(*direction))
        }
        ObjectParams::Plane { normal, distance } => format!(
            "normal={} distance={}",
            vec_text(*normal),
            format_real(*distance)
        ),
        ObjectParams::Space => String::new(),
    }
}

fn params_json(p: &ObjectParams) -> Value {
    match p {
        ObjectParams::Point { location } | ObjectParams::FlatPoint { location } => {
            json!({ "location": location.to_array() })
        }
        ObjectParams::Round {
            center,
            radius2,
            reality,
            ..
        } => json!({
            "center": center.to_array(),
            "radius2": radius2,
            "reality": format!("{reality:?}").to_lowercase(),
        }),
        ObjectParams::Line { direction, moment } => json!({
            "direction": direction.to_array(),
            "moment": BladeMap(moment),
        }),
        ObjectParams::Plane { normal, distance } => json!({
            "normal": normal.to_array(),
            "distance": distance,
        }),
        ObjectParams::Space => json!({}),
    }
}
