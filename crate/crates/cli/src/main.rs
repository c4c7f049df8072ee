//! `twinprof`: solve partial domination, partial vertex cover and counting
//! sentences along a contraction sequence.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use twinprof::logic::{model_check_repeats, model_check_with, parse_sentence, CountingSentence, ModelCheckResult};
use twinprof::oracle::{brute_count, brute_pds, brute_pvc, Best};
use twinprof::pds::solve_pds_with;
use twinprof::pvc::solve_pvc_with;
use twinprof::seqtool::{exact_min_width, fixture_family, Family, SeqSearchLimits};
use twinprof::trigraph::{parse_graph, parse_sequence, play_sequence, validate_sequence, ContractionSequence, Replay, Trigraph, ValidationReport};
use twinprof::{Engine, Error, PartialResult, SolveOptions};

#[derive(Parser)]
#[command(name = "twinprof", version, about = "Profile dynamic programs over twin-width contraction sequences")]
#[command(after_help = "Exit codes: 0 YES/OK, 1 NO, 2 usage or input error, 3 internal invariant violation.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a sequence contracts the graph to one vertex.
    Validate(Inputs),
    /// Report the width of a valid sequence.
    Width(Inputs),
    /// Partial dominating set: do k vertices dominate at least t vertices?
    Pds(Solve),
    /// Partial vertex cover: do k vertices touch at least t edges?
    Pvc(Solve),
    /// Model-check a counting sentence.
    Mc(ModelCheck),
    /// Brute-force references, without a sequence.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Generate a graph from a fixture family together with a sequence.
    Gen(Generate),
    /// Exact minimum width by exhaustive search (small graphs only).
    Minwidth(MinWidth),
}

#[derive(Args)]
struct Inputs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seq: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    OnDemand,
    Sweep,
}

#[derive(Args)]
struct Tuning {
    #[arg(long, value_enum, default_value = "on-demand")]
    engine: EngineArg,
    /// Assert the decomposition and solution invariants while solving.
    #[arg(long)]
    check: bool,
}

impl Tuning {
    fn options(&self) -> SolveOptions {
        let engine = match self.engine {
            EngineArg::OnDemand => Engine::OnDemand,
            EngineArg::Sweep => Engine::Sweep,
        };
        SolveOptions { engine, check: self.check }
    }
}

#[derive(Args)]
struct Solve {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(short)]
    k: usize,
    #[arg(short)]
    t: u64,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args)]
struct ModelCheck {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long)]
    sentence: PathBuf,
    /// Let x1..xk repeat vertices. Without it the variables take pairwise distinct vertices.
    #[arg(long)]
    allow_repeats: bool,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Subcommand)]
enum OracleCommand {
    Pds(OracleSolve),
    Pvc(OracleSolve),
    Mc(OracleModelCheck),
}

#[derive(Args)]
struct OracleSolve {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short)]
    k: usize,
    #[arg(short)]
    t: u64,
}

#[derive(Args)]
struct OracleModelCheck {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    sentence: PathBuf,
    /// Let x1..xk repeat vertices.
    #[arg(long)]
    allow_repeats: bool,
}

#[derive(Args)]
struct Generate {
    /// path, cycle, cograph or grid (size x size).
    #[arg(long)]
    family: String,
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the graph file here.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Also write the sequence file here.
    #[arg(long)]
    seq_out: Option<PathBuf>,
}

#[derive(Args)]
struct MinWidth {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = SeqSearchLimits::default().max_n)]
    max_n: usize,
    #[arg(long)]
    seq_out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl Failure {
    fn at(path: &Path, e: Error) -> Self {
        Failure::from(e).map(|m| format!("{}: {m}", path.display()))
    }

    fn map(self, f: impl FnOnce(String) -> String) -> Self {
        match self {
            Failure::Input(m) => Failure::Input(f(m)),
            Failure::Invariant(m) => Failure::Invariant(f(m)),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<(bool, Map<String, Value>), Failure>;

struct Loader {
    digests: Map<String, Value>,
}

impl Loader {
    fn read(&mut self, role: &str, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.digests.insert(role.into(), json!(hex::encode(Sha256::digest(&bytes))));
        String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{}: not valid UTF-8", path.display())))
    }

    fn graph(&mut self, path: &Path) -> Result<Trigraph, Failure> {
        let text = self.read("graph", path)?;
        parse_graph(&text).map_err(|e| Failure::at(path, e))
    }

    fn sequence(&mut self, path: &Path, n: usize) -> Result<ContractionSequence, Failure> {
        let text = self.read("seq", path)?;
        parse_sequence(&text, n).map_err(|e| Failure::at(path, e))
    }

    fn sentence(&mut self, path: &Path) -> Result<CountingSentence, Failure> {
        let text = self.read("sentence", path)?;
        parse_sentence(&text).map_err(|e| Failure::at(path, e))
    }

    fn replay(&mut self, inputs: &Inputs) -> Result<(Trigraph, Replay), Failure> {
        let g = self.graph(&inputs.graph)?;
        let c = self.sequence(&inputs.seq, g.num_vertices())?;
        let replay = play_sequence(&g, &c).map_err(|e| Failure::at(&inputs.seq, e))?;
        Ok((g, replay))
    }
}

fn sequence_fields(out: &mut Map<String, Value>, replay: &Replay) {
    out.insert("width".into(), json!(replay.width()));
    out.insert("steps".into(), json!(replay.steps().len()));
}

fn partial_report(r: &PartialResult, replay: &Replay) -> (bool, Map<String, Value>) {
    let mut out = Map::new();
    out.insert("value".into(), json!(r.best_value));
    let witness = r.witness.clone().map(|mut w| {
        w.sort_unstable();
        w
    });
    out.insert("witness".into(), json!(witness));
    out.insert("profiles".into(), json!(r.profiles));
    sequence_fields(&mut out, replay);
    (r.feasible, out)
}

fn model_check_report(r: &ModelCheckResult, replay: &Replay) -> (bool, Map<String, Value>) {
    let mut out = Map::new();
    out.insert("count".into(), json!(r.count));
    out.insert("witness".into(), json!(r.witness));
    out.insert("template".into(), json!(r.template.as_ref().map(|h| h.to_string())));
    out.insert("profiles".into(), json!(r.profiles));
    sequence_fields(&mut out, replay);
    (r.answer, out)
}

fn oracle_report(best: Option<Best>, t: u64, sorted: bool) -> (bool, Map<String, Value>) {
    let mut out = Map::new();
    let value = best.as_ref().map(|b| b.value);
    let witness = best.map(|mut b| {
        if sorted {
            b.witness.sort_unstable();
        }
        b.witness
    });
    out.insert("value".into(), json!(value));
    out.insert("witness".into(), json!(witness));
    (value.is_some_and(|v| v >= t), out)
}

fn run(command: &Command, load: &mut Loader) -> Outcome {
    match command {
        Command::Validate(inputs) => {
            let g = load.graph(&inputs.graph)?;
            let c = load.sequence(&inputs.seq, g.num_vertices())?;
            let mut out = Map::new();
            match validate_sequence(&g, &c) {
                ValidationReport::Valid { width } => {
                    out.insert("width".into(), json!(width));
                    out.insert("steps".into(), json!(c.steps.len()));
                    Ok((true, out))
                }
                ValidationReport::Invalid(v) => {
                    out.insert("violation".into(), json!(v.to_string()));
                    Ok((false, out))
                }
            }
        }
        Command::Width(inputs) => {
            let (_, replay) = load.replay(inputs)?;
            let mut out = Map::new();
            sequence_fields(&mut out, &replay);
            Ok((true, out))
        }
        Command::Pds(s) => {
            let (_, replay) = load.replay(&s.inputs)?;
            let r = solve_pds_with(&replay, s.k, s.t, s.tuning.options())?;
            Ok(partial_report(&r, &replay))
        }
        Command::Pvc(s) => {
            let (_, replay) = load.replay(&s.inputs)?;
            let r = solve_pvc_with(&replay, s.k, s.t, s.tuning.options())?;
            Ok(partial_report(&r, &replay))
        }
        Command::Mc(m) => {
            let (_, replay) = load.replay(&m.inputs)?;
            let sentence = load.sentence(&m.sentence)?;
            let r = if m.allow_repeats {
                model_check_repeats(&replay, &sentence, m.tuning.options())?
            } else {
                model_check_with(&replay, &sentence, m.tuning.options())?
            };
            Ok(model_check_report(&r, &replay))
        }
        Command::Oracle(OracleCommand::Pds(o)) => {
            let g = load.graph(&o.graph)?;
            let best = if o.k == 0 { Some(Best { value: 0, witness: vec![] }) } else { brute_pds(&g, o.k)? };
            Ok(oracle_report(best, o.t, true))
        }
        Command::Oracle(OracleCommand::Pvc(o)) => {
            let g = load.graph(&o.graph)?;
            let best = if o.k == 0 { Some(Best { value: 0, witness: vec![] }) } else { brute_pvc(&g, o.k)? };
            Ok(oracle_report(best, o.t, true))
        }
        Command::Oracle(OracleCommand::Mc(o)) => {
            let g = load.graph(&o.graph)?;
            let sentence = load.sentence(&o.sentence)?;
            let best = brute_count(&g, &sentence, !o.allow_repeats)?;
            let (_, mut out) = oracle_report(best.clone(), sentence.t, false);
            let count = best.as_ref().map_or(0, |b| b.value);
            out.remove("value");
            out.insert("count".into(), json!(count));
            let answer = if best.is_some() { count >= sentence.t } else { false };
            Ok((answer, out))
        }
        Command::Gen(gen) => {
            let family: Family = gen.family.parse()?;
            let fx = fixture_family(family, gen.size, gen.seed)?;
            let (graph, seq) = (fx.graph.to_graph_text(), fx.sequence.to_text());
            for (path, text) in [(&gen.graph_out, &graph), (&gen.seq_out, &seq)] {
                if let Some(path) = path {
                    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                }
            }
            let mut out = Map::new();
            out.insert("width".into(), json!(fx.width));
            out.insert("steps".into(), json!(fx.sequence.steps.len()));
            out.insert("graph".into(), json!(graph));
            out.insert("sequence".into(), json!(seq));
            Ok((true, out))
        }
        Command::Minwidth(mw) => {
            let g = load.graph(&mw.graph)?;
            let limits = SeqSearchLimits {
                max_n: mw.max_n,
                ..Default::default()
            };
            let (width, seq) = exact_min_width(&g, &limits)?;
            if let Some(path) = &mw.seq_out {
                fs::write(path, seq.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            let mut out = Map::new();
            out.insert("width".into(), json!(width));
            out.insert("steps".into(), json!(seq.steps.len()));
            out.insert("sequence".into(), json!(seq.to_text()));
            Ok((true, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut load = Loader { digests: Map::new() };
    let outcome = run(&cli.command, &mut load);
    let (yes, mut report) = match outcome {
        Ok(done) => done,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Invariant(m)) => {
            eprintln!("internal error: {m}");
            return ExitCode::from(3);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    report.insert("schema".into(), json!(1));
    report.insert("command".into(), json!(argv.join(" ")));
    report.insert("inputs".into(), Value::Object(load.digests));
    report.insert("answer".into(), json!(if yes { "YES" } else { "NO" }));
    report.insert("wall_time_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    println!("{}", Value::Object(report));
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
