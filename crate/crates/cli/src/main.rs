//! Command-line front end.
//!
//! Exit status: 0 proved / holds / valid, 1 countermodel / fails / invalid,
//! 2 unknown, 3 usage, parse or file errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use relgraph::conversion::{lift, ConversionTrace, DEFAULT_STEP_LIMIT};
use relgraph::dot::graph_to_dot;
use relgraph::engine::{prove, verify_derivation, Derivation, HypothesisMode, ProveConfig, Step, Verdict};
use relgraph::graph::{difference_slice, Graph, Label, Slice};
use relgraph::semantics::{falsifying_pair, parse_model, render_model, DEFAULT_ORACLE_BITS};
use relgraph::term::{parse_inclusion, parse_term, Inclusion, ParseError};

#[derive(Parser)]
#[command(name = "relgraph", version, about = "Refutation prover for binary-relation inclusions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Erase,
    Hzero,
}

#[derive(Subcommand)]
enum Command {
    /// Prove an inclusion `L <= K` or find a countermodel.
    Prove {
        goal: String,
        /// File of hypotheses, one inclusion per line; `#` starts a comment.
        #[arg(long)]
        hyp: Option<PathBuf>,
        /// Largest number of nested expansions.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Largest model size for the exhaustive countermodel search.
        #[arg(long = "model-max", default_value_t = 3)]
        model_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Erase)]
        mode: Mode,
        /// Write the derivation of a proof to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Ceiling on slices visited by the search.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// List the derivation steps of a proof.
        #[arg(long)]
        explain: bool,
    },
    /// Convert a term, or an inclusion's difference slice, to a basic graph.
    Convert {
        input: String,
        /// Treat the input as an inclusion.
        #[arg(long)]
        inclusion: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check an inclusion in a model file.
    CheckModel { model: PathBuf, inclusion: String },
    /// Draw a term, inclusion, or structured slice or graph file as DOT.
    Render {
        /// A term or inclusion; with `--file`, a path to a structured slice or graph.
        input: String,
        #[arg(long)]
        file: bool,
        /// Draw the input as given instead of its basic graph.
        #[arg(long)]
        raw: bool,
    },
    /// Replay a derivation or conversion trace.
    Verify { trace: PathBuf },
}

/// Writes to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

/// Like `say!` without the newline.
macro_rules! say_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

/// Failures that map to an exit status of 3.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

fn parse_error(what: &str, text: &str, e: ParseError) -> anyhow::Error {
    let caret = " ".repeat(e.column.saturating_sub(1));
    anyhow!("{what}: {e}\n  {text}\n  {caret}^")
}

fn goal(text: &str) -> Result<Inclusion> {
    parse_inclusion(text).map_err(|e| parse_error("goal", text, e))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn hypotheses(path: &Path) -> Result<Vec<Inclusion>> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let h = parse_inclusion(line)
            .map_err(|e| parse_error(&format!("{} line {}", path.display(), i + 1), line, e))?;
        out.push(h);
    }
    Ok(out)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn explain(d: &Derivation) -> String {
    let mut out = String::new();
    for (i, step) in d.steps.iter().enumerate() {
        let line = match step {
            Step::Conversion(c) => format!("convert {:?} at {:?}", c.rule, c.position),
            Step::Expansion { slice, u, v, template, .. } => {
                format!("expand slice {slice} at ({u}, {v}) with {template}")
            }
            Step::Erasure { slice, hypothesis, morphism, .. } => {
                let map: Vec<String> = morphism.map.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                format!("erase slice {slice} by hypothesis slice {hypothesis} via {}", map.join(" "))
            }
        };
        out.push_str(&format!("{i:>4}  {line}\n"));
    }
    out.push_str(&format!("final graph: {}\n", d.final_graph));
    for s in d.final_graph.iter() {
        if let Some(w) = relgraph::morphism::is_zero_slice(s) {
            let map: Vec<String> = w.morphism.map.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            out.push_str(&format!("  zero by {} via {}\n", relgraph::graph::render_label(&w.arc.label), map.join(" ")));
        } else {
            out.push_str("  erasable by a hypothesis\n");
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_prove(
    text: &str,
    hyp: Option<&Path>,
    cfg: ProveConfig,
    trace: Option<&Path>,
    format: Format,
    show_steps: bool,
) -> Result<u8, Usage> {
    let g = goal(text)?;
    let hyps = match hyp {
        Some(p) => hypotheses(p)?,
        None => Vec::new(),
    };
    if format == Format::Dot {
        return Err(Usage(anyhow!("prove supports --format text or structured")));
    }
    let verdict = prove(&g, &hyps, &cfg);
    if let (Some(path), Verdict::Proved(d)) = (trace, &verdict) {
        fs::write(path, json(d)).with_context(|| format!("writing {}", path.display()))?;
    }
    if format == Format::Structured {
        say!("{}", json(&verdict));
    } else {
        match &verdict {
            Verdict::Proved(d) => {
                say!(
                    "proved: {} conversion steps, {} expansions, {} erasures",
                    d.conversions(),
                    d.expansions(),
                    d.erasures()
                );
                if show_steps {
                    say_raw!("{}", explain(d));
                }
            }
            Verdict::Countermodel { model, pair } => {
                say!("countermodel: ({}, {}) is in the left side but not the right side", pair.0, pair.1);
                say_raw!("{}", render_model(model));
            }
            Verdict::Unknown { depth, frontier, reason } => {
                say!("unknown: {reason} (depth {depth}, {frontier} open slices)");
            }
        }
    }
    Ok(match verdict {
        Verdict::Proved(_) => 0,
        Verdict::Countermodel { .. } => 1,
        Verdict::Unknown { .. } => 2,
    })
}

fn start_graph(input: &str, inclusion: bool) -> Result<Graph> {
    if inclusion {
        let inc = goal(input)?;
        Ok(Graph::from_slices([difference_slice(Label::from(&inc.lhs), Label::from(&inc.rhs))]))
    } else {
        let t = parse_term(input).map_err(|e| parse_error("term", input, e))?;
        Ok(lift(&Label::from(&t)))
    }
}

fn cmd_convert(input: &str, inclusion: bool, format: Format) -> Result<u8, Usage> {
    let start = start_graph(input, inclusion)?;
    let trace = ConversionTrace::record(start, DEFAULT_STEP_LIMIT).map_err(|e| anyhow!("{e}"))?;
    match format {
        Format::Text => {
            say!("{}", trace.result);
            say!("{} steps", trace.steps.len());
        }
        Format::Structured => say!("{}", json(&trace)),
        Format::Dot => say_raw!("{}", graph_to_dot(&trace.result)),
    }
    Ok(0)
}

fn cmd_check_model(path: &Path, text: &str) -> Result<u8, Usage> {
    let source = read(path)?;
    let model = parse_model(&source).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let inc = goal(text)?;
    match falsifying_pair(&model, &inc) {
        None => {
            say!("holds");
            Ok(0)
        }
        Some((a, b)) => {
            say!("fails: ({a}, {b}) is in the left side but not the right side");
            Ok(1)
        }
    }
}

fn cmd_render(input: &str, file: bool, raw: bool) -> Result<u8, Usage> {
    let g = if file {
        let text = read(Path::new(input))?;
        match serde_json::from_str::<Graph>(&text) {
            Ok(g) => g,
            Err(_) => Graph::from_slices([serde_json::from_str::<Slice>(&text)
                .with_context(|| format!("{input}: not a structured slice or graph"))?]),
        }
    } else {
        start_graph(input, input.contains("<="))?
    };
    let g = if raw {
        g
    } else {
        ConversionTrace::record(g, DEFAULT_STEP_LIMIT).map_err(|e| anyhow!("{e}"))?.result
    };
    say_raw!("{}", graph_to_dot(&g));
    Ok(0)
}

fn cmd_verify(path: &Path) -> Result<u8, Usage> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{}: not JSON", path.display()))?;
    let outcome = if value.get("goal").is_some() {
        let d: Derivation = serde_json::from_value(value).with_context(|| format!("{}: not a derivation", path.display()))?;
        verify_derivation(&d).map_err(|e| e.to_string())
    } else {
        let t: ConversionTrace =
            serde_json::from_value(value).with_context(|| format!("{}: not a trace", path.display()))?;
        t.verify().map_err(|(i, reason)| format!("step {i}: {reason}"))
    };
    match outcome {
        Ok(()) => {
            say!("valid");
            Ok(0)
        }
        Err(e) => {
            say!("invalid: {e}");
            Ok(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Usage> {
    match cli.command {
        Command::Prove {
            goal,
            hyp,
            depth,
            model_max,
            mode,
            trace,
            budget,
            format,
            explain,
        } => {
            if model_max == 0 {
                return Err(Usage(anyhow!("--model-max must be positive")));
            }
            let defaults = ProveConfig::default();
            let cfg = ProveConfig {
                max_depth: depth,
                model_max,
                mode: match mode {
                    Mode::Erase => HypothesisMode::Erase,
                    Mode::Hzero => HypothesisMode::Hzero,
                },
                search_budget: match budget {
                    Some(0) => return Err(Usage(anyhow!("--budget must be positive"))),
                    Some(b) => b,
                    None => defaults.search_budget,
                },
                oracle_bits: DEFAULT_ORACLE_BITS,
                ..defaults
            };
            cmd_prove(&goal, hyp.as_deref(), cfg, trace.as_deref(), format, explain)
        }
        Command::Convert { input, inclusion, format } => cmd_convert(&input, inclusion, format),
        Command::CheckModel { model, inclusion } => cmd_check_model(&model, &inclusion),
        Command::Render { input, file, raw } => cmd_render(&input, file, raw),
        Command::Verify { trace } => cmd_verify(&trace),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
