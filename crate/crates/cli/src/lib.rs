//! Library half of the `suprematrix` binary: argument definitions, document
//! formats and the subcommands. Every command is deterministic given its
//! flags and seed.
//!
//! Exit codes: 0 success or quantum-valid, 1 representable but not a quantum
//! state (`validate` only), 2 malformed input, 3 violated constraint
//! (range, Hermiticity, trace, unitarity, Kraus completeness), 4 I/O failure.

pub mod document;
pub mod error;

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use suprematrix::entropy::{matrix_element_entropy_diagnostic, qutrit_entropic_suite, Permutation};
use suprematrix::geometry::{
    qutrit_triadas, render_triada_svg, render_triadas_svg, SvgOptions, TriadaGeometry,
};
use suprematrix::qubit::{
    qubit_ball_check, qubit_density_from_probabilities, qubit_eigenvalues_probability_form,
};
use suprematrix::qutrit::{
    purity, quantumness_report, qutrit_density_from_probabilities,
    qutrit_probabilities_from_density,
};
use suprematrix::sampling::SeededGenerator;
use suprematrix::QutritProbabilities;

pub use document::{ChannelDocument, Kind, Representation, State, StateDocument};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "suprematrix",
    version,
    about = "Qubit and qutrit states as spin-projection probabilities"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// State document to read, `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    pub input: PathBuf,

    /// Destination, `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    pub output: PathBuf,

    #[arg(long, global = true, env = "SUPREMATRIX_SEED", default_value_t = 0)]
    pub seed: u64,

    /// SVG units per unit side length.
    #[arg(long, global = true, default_value_t = 100.0)]
    pub scale: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Switch between density-matrix and probability representations.
    Convert {
        /// Target representation; defaults to the one the input is not in.
        #[arg(long, value_enum)]
        to: Option<Representation>,
    },
    /// Check every quantumness inequality; exit 1 if the state is not quantum.
    Validate,
    /// Triangle sides, Malevich square areas and their sums.
    Geometry,
    /// Draw the triadas of squares as SVG.
    Render,
    /// Affine maps of the probability vector.
    Channel {
        #[command(subcommand)]
        action: ChannelAction,
    },
    /// Emit random states as JSON lines.
    Sample {
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Kind::Qutrit)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Representation::Density)]
        representation: Representation,
    },
    /// Relative entropies between the artificial qubit distributions.
    Entropy,
}

#[derive(Debug, Subcommand)]
pub enum ChannelAction {
    /// Print the 8 x 8 matrix and offset acting on the probabilities.
    Derive {
        /// Channel document, `-` for stdin.
        channel: PathBuf,
    },
    /// Transform the state read from `--input`.
    Apply {
        /// Channel document.
        channel: PathBuf,
    },
}

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

pub fn read_source(path: &Path) -> CliResult<String> {
    if is_stdio(path) {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::io("reading stdin", e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading {}", path.display()), e))
    }
}

pub fn write_sink(path: &Path, text: &str) -> CliResult<()> {
    if is_stdio(path) {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| CliError::io("writing stdout", e))
    } else {
        std::fs::write(path, text)
            .map_err(|e| CliError::io(format!("writing {}", path.display()), e))
    }
}

/// Serializes through `serde_json::Value`, whose maps keep keys sorted.
pub fn to_sorted_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("documents serialize to JSON")
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            let _ = writeln!(out, "{prefix} = {v}");
        }
    }
}

/// Renders a document in the requested format, newline terminated.
pub fn render_document(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            flatten("", v, &mut s);
            s
        }
    }
}

fn read_state(global: &GlobalArgs) -> CliResult<(StateDocument, State)> {
    let doc = StateDocument::parse(&read_source(&global.input)?)?;
    let state = doc.state()?;
    Ok((doc, state))
}

fn require_qutrit(state: State, command: &str) -> CliResult<QutritProbabilities> {
    match state {
        State::Qutrit(q) => Ok(q),
        State::Qubit(_) => Err(CliError::malformed(format!(
            "`{command}` needs a qutrit state"
        ))),
    }
}

fn triada_value(t: &TriadaGeometry) -> Value {
    to_sorted_value(t)
}

/// Geometry summary: one triada for a qubit, three for a qutrit.
pub fn geometry_value(state: &State) -> CliResult<Value> {
    Ok(match state {
        State::Qubit(p) => json!({ "triadas": [triada_value(&TriadaGeometry::new(p)?)] }),
        State::Qutrit(q) => to_sorted_value(&qutrit_triadas(q)?),
    })
}

fn entropic_value(q: &QutritProbabilities) -> Value {
    to_sorted_value(&qutrit_entropic_suite(q))
}

/// Full report and whether the state is a quantum state.
pub fn report(state: &State) -> CliResult<(Value, bool)> {
    let geometry = geometry_value(state)?;
    match state {
        State::Qubit(p) => {
            let check = qubit_ball_check(p);
            let (high, low) = qubit_eigenvalues_probability_form(p);
            let value = json!({
                "kind": "qubit",
                "quantumness": {
                    "ball": to_sorted_value(&check),
                    "eigenvalues": [high, low],
                    "verdict": check.valid,
                },
                "geometry": geometry,
                "purity": qubit_density_from_probabilities(p).trace_of_square(),
            });
            Ok((value, check.valid))
        }
        State::Qutrit(q) => {
            let quantumness = quantumness_report(q);
            let value = json!({
                "kind": "qutrit",
                "quantumness": to_sorted_value(&quantumness),
                "geometry": geometry,
                "entropic": entropic_value(q),
                "purity": purity(q),
            });
            Ok((value, quantumness.verdict))
        }
    }
}

fn merge_metadata(original: Option<Value>, extra: Map<String, Value>) -> Value {
    let mut m = match original {
        Some(Value::Object(m)) => m,
        Some(other) => Map::from_iter([("labels".to_string(), other)]),
        None => Map::new(),
    };
    m.extend(extra);
    Value::Object(m)
}

fn svg_options(global: &GlobalArgs) -> CliResult<SvgOptions> {
    if !(global.scale.is_finite() && global.scale > 0.0) {
        return Err(CliError::malformed(format!(
            "--scale must be positive, got {}",
            global.scale
        )));
    }
    Ok(SvgOptions {
        scale: global.scale,
        ..SvgOptions::default()
    })
}

/// Runs one command and returns the exit code of a completed run.
pub fn run(cli: &Cli) -> CliResult<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Convert { to } => {
            let (doc, state) = read_state(g)?;
            let target = to.unwrap_or(doc.representation.other());
            let out = StateDocument::from_state(&state, target, doc.metadata);
            write_sink(
                &g.output,
                &render_document(&to_sorted_value(&out), g.format),
            )?;
            Ok(0)
        }
        Command::Validate => {
            let (_, state) = read_state(g)?;
            let (value, valid) = report(&state)?;
            write_sink(&g.output, &render_document(&value, g.format))?;
            Ok(if valid { 0 } else { 1 })
        }
        Command::Geometry => {
            let (_, state) = read_state(g)?;
            write_sink(
                &g.output,
                &render_document(&geometry_value(&state)?, g.format),
            )?;
            Ok(0)
        }
        Command::Render => {
            let (_, state) = read_state(g)?;
            let options = svg_options(g)?;
            let svg = match state {
                State::Qubit(p) => render_triada_svg(&TriadaGeometry::new(&p)?, &options),
                State::Qutrit(q) => render_triadas_svg(&qutrit_triadas(&q)?, &options),
            };
            write_sink(&g.output, &svg)?;
            Ok(0)
        }
        Command::Channel { action } => run_channel(g, action),
        Command::Sample {
            count,
            kind,
            representation,
        } => {
            let text = sample_lines(g.seed, *count, *kind, *representation)?;
            write_sink(&g.output, &text)?;
            Ok(0)
        }
        Command::Entropy => {
            let (_, state) = read_state(g)?;
            let q = require_qutrit(state, "entropy")?;
            let rho = qutrit_density_from_probabilities(&q);
            let diagnostic = Permutation::all()
                .into_iter()
                .map(|s| {
                    Ok(to_sorted_value(&matrix_element_entropy_diagnostic(
                        &rho, s,
                    )?))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let value = json!({
                "relative_entropies": entropic_value(&q),
                "matrix_element_form": diagnostic,
            });
            write_sink(&g.output, &render_document(&value, g.format))?;
            Ok(0)
        }
    }
}

fn run_channel(g: &GlobalArgs, action: &ChannelAction) -> CliResult<u8> {
    match action {
        ChannelAction::Derive { channel } => {
            let doc = ChannelDocument::parse(&read_source(channel)?)?;
            let map = doc.channel()?.affine_map()?;
            let mut value = to_sorted_value(&map);
            value["kind"] = to_sorted_value(&doc.kind);
            write_sink(&g.output, &render_document(&value, g.format))?;
            Ok(0)
        }
        ChannelAction::Apply { channel } => {
            let ch = ChannelDocument::parse(&read_source(channel)?)?;
            let channel = ch.channel()?;
            let (doc, state) = read_state(g)?;
            let q = require_qutrit(state, "channel apply")?;
            let out = channel.apply(&q)?;
            let metadata = merge_metadata(
                doc.metadata,
                Map::from_iter([
                    ("channel".to_string(), to_sorted_value(&ch.kind)),
                    ("input_psd".to_string(), Value::Bool(out.input_psd)),
                    ("output_psd".to_string(), Value::Bool(out.output_psd)),
                ]),
            );
            let result = StateDocument::from_state(
                &State::Qutrit(out.probabilities),
                doc.representation,
                Some(metadata),
            );
            write_sink(
                &g.output,
                &render_document(&to_sorted_value(&result), g.format),
            )?;
            Ok(0)
        }
    }
}

/// `count` Ginibre states, one compact JSON document per line.
pub fn sample_lines(
    seed: u64,
    count: usize,
    kind: Kind,
    representation: Representation,
) -> CliResult<String> {
    if count == 0 {
        return Err(CliError::malformed("--count must be at least 1"));
    }
    let mut g = SeededGenerator::new(seed);
    let mut text = String::new();
    for index in 0..count {
        let state = match kind {
            Kind::Qubit => {
                let m = g.sample_density_matrix::<2>();
                State::Qubit(suprematrix::qubit::qubit_probabilities_from_density(&m)?)
            }
            Kind::Qutrit => {
                let m = g.sample_density_matrix::<3>();
                State::Qutrit(qutrit_probabilities_from_density(&m)?)
            }
        };
        let metadata = json!({ "seed": seed, "index": index });
        let doc = StateDocument::from_state(&state, representation, Some(metadata));
        text.push_str(&serde_json::to_string(&to_sorted_value(&doc)).expect("values serialize"));
        text.push('\n');
    }
    Ok(text)
}
