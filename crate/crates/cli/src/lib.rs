//! Command-line orchestration of the qtk verification suites.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qtk_core::basicrep::verify_basic_rep;
use qtk_core::cluster::{self, seize, MatchData, Mutation, SeizureSite};
use qtk_core::gdaha::{self, ClosedForms, GdahaType};
use qtk_core::mconv::{self, PrintedPipeline};
use qtk_core::qtorus::{element_to_json, Quiver, Torus};
use qtk_core::report::Report;
use qtk_core::transport::{self, TransportGolden, TriangleChart};
use qtk_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "qtk", version, about = "Exact verification of quantum-torus, GDAHA and cluster identities")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock timings in the manifest (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Transport matrices of a tessellated triangle.
    Transport {
        #[command(subcommand)]
        action: TransportAction,
    },
    /// Quiver inspection, mutation and seizure.
    Quiver {
        #[command(subcommand)]
        action: QuiverAction,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Emit computed artifacts.
    Emit {
        #[command(subcommand)]
        action: EmitAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum TransportAction {
    /// Print `T_index` for rank `n`.
    Emit {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        index: usize,
        /// Quantum (Weyl-ordered) instead of classical.
        #[arg(long)]
        quantum: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuiverAction {
    /// Show a quiver file, or the Fock–Goncharov quiver of a rank-`n` triangle.
    Show {
        #[arg(long, conflicts_with = "n")]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Mutate at a vertex.
    Mutate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Seize a rhombus, erasing one of its degree-(1,1) vertices.
    Seize {
        #[arg(long)]
        input: PathBuf,
        /// Four comma-separated vertices `Z1,Z2,Z3,Z4`.
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<String>,
        #[arg(long)]
        erase: String,
        #[arg(long)]
        monomial: String,
        #[arg(long, default_value = "1")]
        value: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum EmitAction {
    /// The generator matrices, Hecke parameters and cyclic scalar.
    Generators {
        #[arg(long = "type", visible_alias = "kind", value_enum)]
        kind: Kind,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    D4,
    E6,
}

impl Kind {
    fn gdaha(self) -> GdahaType {
        match self {
            Kind::D4 => GdahaType::D4,
            Kind::E6 => GdahaType::E6,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Transport,
    D4,
    E6,
    Functor,
    Match,
    BasicRep,
    Dims,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Replacement for the suite's reference data (printed matrices, closed
    /// forms, pipeline or match data).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Replacement surface description (d4, e6).
    #[arg(long)]
    pub surface: Option<PathBuf>,
    /// Truncation degree (basic-rep).
    #[arg(long, default_value_t = 6)]
    pub degree: i64,
    /// Random parameter points (basic-rep).
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Deterministic record of one run.
#[derive(Serialize, Debug)]
pub struct RunManifest {
    pub command: String,
    pub config_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: bool,
    pub reports: Vec<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

/// Process outcome: exit status and rendered output.
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_json(path: &PathBuf) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn config_hash(config: &Value) -> String {
    let digest = Sha256::digest(config.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Transport => "transport",
        Suite::D4 => "d4",
        Suite::E6 => "e6",
        Suite::Functor => "functor",
        Suite::Match => "match",
        Suite::BasicRep => "basic-rep",
        Suite::Dims => "dims",
        Suite::All => "all",
    }
}

fn run_suite(s: Suite, a: &VerifyArgs) -> Result<Report> {
    let input = a.input.as_ref().map(read).transpose()?;
    Ok(match s {
        Suite::Transport => {
            let g = match &input {
                Some(t) => TransportGolden::from_json(t)?,
                None => TransportGolden::builtin(),
            };
            transport::verify_transport_with(&g)
        }
        Suite::D4 | Suite::E6 => {
            let kind = if s == Suite::D4 { GdahaType::D4 } else { GdahaType::E6 };
            let closed = match &input {
                Some(t) => ClosedForms::from_json(t)?,
                None => ClosedForms::builtin(kind),
            };
            let surface = match &a.surface {
                Some(p) => read(p)?,
                None => (if kind == GdahaType::D4 { gdaha::D4_SURFACE } else { gdaha::E6_SURFACE }).to_string(),
            };
            gdaha::verify(kind, &surface, &closed)
        }
        Suite::Functor => {
            let printed = match &input {
                Some(t) => PrintedPipeline::from_json(t)?,
                None => PrintedPipeline::builtin(),
            };
            mconv::verify_functor_with(&gdaha::build_d4()?, &printed)
        }
        Suite::Match => {
            let data = match &input {
                Some(t) => MatchData::from_json(t)?,
                None => MatchData::builtin(),
            };
            cluster::verify_match_with(&gdaha::build_e6()?, &gdaha::build_d4()?, &data)
        }
        Suite::BasicRep => verify_basic_rep(a.degree, a.trials, a.seed),
        Suite::Dims => transport::verify_dims(),
        Suite::All => unreachable!("expanded by the caller"),
    })
}

fn verify(a: &VerifyArgs, timings: bool) -> Result<RunManifest> {
    if a.suite == Suite::All && (a.input.is_some() || a.surface.is_some()) {
        return Err(Error::Parse("--input/--surface need a single suite".into()));
    }
    let suites: Vec<Suite> = if a.suite == Suite::All {
        vec![Suite::Transport, Suite::D4, Suite::E6, Suite::Functor, Suite::Match, Suite::BasicRep, Suite::Dims]
    } else {
        vec![a.suite]
    };
    let mut reports = Vec::new();
    let mut times = BTreeMap::new();
    for s in suites {
        let start = Instant::now();
        reports.push(run_suite(s, a)?);
        times.insert(suite_name(s).to_string(), start.elapsed().as_millis());
    }
    let uses_seed = matches!(a.suite, Suite::BasicRep | Suite::All);
    let config = json!({
        "suite": suite_name(a.suite),
        "input": a.input.as_ref().map(|p| p.display().to_string()),
        "surface": a.surface.as_ref().map(|p| p.display().to_string()),
        "degree": a.degree,
        "trials": a.trials,
        "seed": a.seed,
    });
    Ok(RunManifest {
        command: format!("verify {}", suite_name(a.suite)),
        config_hash: config_hash(&config),
        seed: uses_seed.then_some(a.seed),
        passed: reports.iter().all(Report::passed),
        reports,
        timings_ms: timings.then_some(times),
    })
}

fn render_manifest(m: &RunManifest, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(m).expect("manifest serializes") + "\n",
        Format::Text => {
            let mut s = String::new();
            for r in &m.reports {
                s.push_str(&r.to_string());
                if !s.ends_with('\n') {
                    s.push('\n');
                }
            }
            if let Some(t) = &m.timings_ms {
                for (k, v) in t {
                    s.push_str(&format!("time {k}: {v} ms\n"));
                }
            }
            s.push_str(if m.passed { "ALL PASSED\n" } else { "FAILED\n" });
            s
        }
    }
}

fn quiver_text(q: &Quiver, root: u64) -> String {
    let mut s = format!("root order {root}, {} vertices\n", q.len());
    for i in 0..q.len() {
        s.push_str(&format!("  {}{}\n", q.name(i), if q.is_frozen(i) { " (frozen)" } else { "" }));
    }
    for (i, j, w) in q.arrows() {
        s.push_str(&format!("  {} -> {} weight {}/2\n", q.name(i), q.name(j), w));
    }
    s
}

/// A quiver file, or the output of `quiver mutate`/`quiver seize`.
fn load_quiver(path: &PathBuf) -> Result<(Quiver, u64)> {
    let v = read_json(path)?;
    Quiver::from_json(v.get("quiver").unwrap_or(&v))
}

fn render_value(v: &Value, text: String, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("value serializes") + "\n",
        Format::Text => text,
    }
}

fn quiver_action(a: &QuiverAction, format: Format) -> Result<String> {
    match a {
        QuiverAction::Show { input, n } => {
            let (q, root) = match (input, n) {
                (Some(p), _) => load_quiver(p)?,
                (None, Some(n)) => {
                    let c = TriangleChart::new(*n, "Z")?;
                    (c.quiver().clone(), c.torus().root_order())
                }
                (None, None) => return Err(Error::Parse("quiver show needs --input or --n".into())),
            };
            Ok(render_value(&q.to_json(root), quiver_text(&q, root), format))
        }
        QuiverAction::Mutate { input, vertex } => {
            let (q, root) = load_quiver(input)?;
            let m = Mutation::new(&Torus::new(q, root), vertex)?;
            let mq = m.source().quiver();
            let images: BTreeMap<String, String> =
                mq.names().iter().enumerate().map(|(j, n)| (n.clone(), m.image(j).to_string())).collect();
            let v = json!({"quiver": mq.to_json(root), "images": images});
            let mut text = quiver_text(mq, root);
            for (k, x) in &images {
                text.push_str(&format!("  {k}' -> {x}\n"));
            }
            Ok(render_value(&v, text, format))
        }
        QuiverAction::Seize { input, cycle, erase, monomial, value } => {
            let (q, root) = load_quiver(input)?;
            let cycle: [String; 4] =
                cycle.clone().try_into().map_err(|_| Error::Parse("--cycle needs four vertices".into()))?;
            let site = SeizureSite { cycle, erase: erase.clone(), monomial: monomial.clone(), value: value.clone() };
            let torus = Torus::new(q, root);
            let s = seize(&torus, &site)?;
            let idx = torus.index(erase)?;
            let img = s.hom.image(idx);
            let reduced = s.target().quiver();
            let v = json!({"quiver": reduced.to_json(root), "substitution": {erase.clone(): element_to_json(img)}});
            let text = format!("{}  {erase} -> {img}\n", quiver_text(reduced, root));
            Ok(render_value(&v, text, format))
        }
    }
}

fn transport_action(a: &TransportAction, format: Format) -> Result<String> {
    let TransportAction::Emit { n, index, quantum } = a;
    let c = TriangleChart::new(*n, "Z")?;
    let m = if *quantum { c.transport_quantum(*index)? } else { c.transport_classical(*index)? };
    let v = json!({"n": n, "index": index, "quantum": quantum, "matrix": m.to_json()});
    Ok(render_value(&v, m.to_string(), format))
}

fn emit_action(a: &EmitAction, format: Format) -> Result<String> {
    let EmitAction::Generators { kind } = a;
    let p = gdaha::build(kind.gdaha())?;
    let mut gens = serde_json::Map::new();
    let mut hecke = serde_json::Map::new();
    let mut text = String::new();
    for (i, n) in p.names.iter().enumerate() {
        gens.insert(n.clone(), p.generators[i].to_json());
        hecke.insert(n.clone(), Value::Array(p.hecke[i].iter().map(element_to_json).collect()));
        let hk: Vec<String> = p.hecke[i].iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("{n} (Hecke parameters {}):\n{}", hk.join(", "), p.generators[i]));
    }
    text.push_str(&format!("cyclic product = {}\n", p.cyclic));
    let v = json!({"kind": kind.gdaha().name(), "generators": gens, "hecke": hecke, "cyclic": element_to_json(&p.cyclic)});
    Ok(render_value(&v, text, format))
}

/// Runs a parsed command line; errors map to exit status 2, failed
/// identities to 1.
pub fn run(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Verify(a) => verify(a, cli.timings).map(|m| (if m.passed { 0 } else { 1 }, render_manifest(&m, cli.format))),
        Command::Transport { action } => transport_action(action, cli.format).map(|s| (0, s)),
        Command::Quiver { action } => quiver_action(action, cli.format).map(|s| (0, s)),
        Command::Emit { action } => emit_action(action, cli.format).map(|s| (0, s)),
    };
    match res {
        Ok((status, output)) => Outcome { status, output },
        Err(e) => Outcome { status: 2, output: format!("error: {e}\n") },
    }
}

/// Caps rayon's pool at `QTK_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("QTK_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|n| *n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
