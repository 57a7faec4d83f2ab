//! The `bt-fas` command line.
//!
//! Results go to stdout as one JSON document; diagnostics go to stderr.
//! Exit codes: 0 success, 1 usage or parse error, 2 precondition violated
//! (including a certificate that fails verification), 3 internal invariant
//! violated.

pub mod format;
mod selftest;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::c4free::{fas_c4free, LemmaError, TraceRecord};
use crate::census::{census_sums, first_count_enumerated, sec_count_enumerated, vertex_counts};
use crate::engine::{solve, SolveError, SolveOutcome};
use crate::gen::{enumerate_bt, random_bt, random_c4free, GenSpec};
use crate::graph::{Arc, BipartiteDigraph, FourCycle};
use crate::oracle::{max_c4_packing_exact, min_fas_exact};
use crate::packing::{check_packing, greedy_pack};

#[derive(Debug, Parser)]
#[command(
    name = "bt-fas",
    version,
    about = "Arc-disjoint 4-cycles or a small feedback arc set in bipartite tournaments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate instances.
    Gen(GenArgs),
    /// Find k arc-disjoint 4-cycles or a feedback arc set of size at most 7(k-1).
    Solve {
        /// Instance file, or `-` for stdin.
        instance: PathBuf,
        #[arg(long)]
        k: usize,
        /// Include the recursion trace of the 4-cycle-free step.
        #[arg(long)]
        trace: bool,
    },
    /// Feedback arc set of a 4-cycle-free instance, at most one arc per absent pair.
    #[command(name = "fas-c4free")]
    FasC4free {
        instance: PathBuf,
        #[arg(long)]
        trace: bool,
    },
    /// Greedy arc-disjoint 4-cycle packing.
    Pack {
        instance: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Exact minimum feedback arc set or maximum 4-cycle packing.
    Oracle {
        instance: PathBuf,
        #[arg(long, conflicts_with = "max_packing", required_unless_present = "max_packing")]
        min_fas: bool,
        #[arg(long)]
        max_packing: bool,
    },
    /// Check a feedback arc set or packing certificate against an instance.
    Verify {
        instance: PathBuf,
        /// JSON document with a `fas` field, or a JSON array of arcs.
        #[arg(long, conflicts_with = "packing", required_unless_present = "packing")]
        fas: Option<PathBuf>,
        /// JSON document with a `packing` field, or a JSON array of cycles.
        #[arg(long)]
        packing: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Per-vertex first/sec counts and their sums.
    Census { instance: PathBuf },
    /// Exhaustive checks over every tournament with equal sides up to --max-side.
    Selftest {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        max_side: u8,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenMode {
    Random,
    RandomC4free,
    Enumerate,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value_t = GenMode::Random)]
    mode: GenMode,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    bias: f64,
    /// Output file; a directory when several instances are generated.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of random instances, with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    count: u64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Precondition(String),
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Precondition(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// A successful run: the stdout document and the exit code.
struct Done {
    body: String,
    code: i32,
}

impl Done {
    fn json(value: &impl Serialize) -> Self {
        Self::json_with_code(value, 0)
    }

    fn json_with_code(value: &impl Serialize, code: i32) -> Self {
        let mut body = serde_json::to_string_pretty(value).expect("reports serialize");
        body.push('\n');
        Done { body, code }
    }
}

/// Runs the command line. `color` enables ANSI colour in diagnostics.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, stderr) {
        Ok(done) => {
            if stdout.write_all(done.body.as_bytes()).is_err() {
                return 1;
            }
            done.code
        }
        Err(failure) => {
            let prefix = if color { "\x1b[1;31merror:\x1b[0m" } else { "error:" };
            let _ = writeln!(stderr, "{prefix} {}", failure.message());
            failure.exit_code()
        }
    }
}

fn dispatch(command: Command, stderr: &mut dyn Write) -> Result<Done, Failure> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Solve { instance, k, trace } => solve_cmd(&read_instance(&instance)?, k, trace),
        Command::FasC4free { instance, trace } => fas_c4free_cmd(&read_instance(&instance)?, trace),
        Command::Pack { instance, limit } => Ok(pack_cmd(&read_instance(&instance)?, limit)),
        Command::Oracle { instance, min_fas, .. } => oracle_cmd(&read_instance(&instance)?, min_fas),
        Command::Verify { instance, fas, packing, k } => {
            let graph = read_instance(&instance)?;
            match (fas, packing) {
                (Some(path), _) => verify_fas(&graph, &read_arc_list(&path, "fas")?, k),
                (None, Some(path)) => verify_packing(&graph, &read_cycle_list(&path)?, k),
                (None, None) => Err(Failure::Usage("one of --fas or --packing is required".into())),
            }
        }
        Command::Census { instance } => census_cmd(&read_instance(&instance)?),
        Command::Selftest { max_side } => {
            let report = selftest::run(max_side as usize);
            for f in &report.failures {
                let _ = writeln!(stderr, "selftest failure: {f}");
            }
            let code = if report.failures.is_empty() { 0 } else { 3 };
            Ok(Done::json_with_code(&report, code))
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn read_instance(path: &Path) -> Result<BipartiteDigraph, Failure> {
    format::parse(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_arcs(value: &Value) -> Result<Vec<Arc>, Failure> {
    let items = value.as_array().ok_or_else(|| Failure::Usage("expected an array of arcs".into()))?;
    items
        .iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| Failure::Usage(format!("expected an arc string, found {v}")))?
                .parse::<Arc>()
                .map_err(|e| Failure::Usage(e.to_string()))
        })
        .collect()
}

/// A bare array, or the `field` member of an object.
fn certificate_field<'a>(doc: &'a Value, field: &str) -> Result<&'a Value, Failure> {
    match doc {
        Value::Array(_) => Ok(doc),
        Value::Object(map) => map.get(field).ok_or_else(|| Failure::Usage(format!("document has no `{field}` field"))),
        _ => Err(Failure::Usage("certificate must be a JSON array or object".into())),
    }
}

fn read_arc_list(path: &Path, field: &str) -> Result<Vec<Arc>, Failure> {
    parse_arcs(certificate_field(&read_json(path)?, field)?)
}

/// Cycles as arrays of four arcs in cycle order.
fn read_cycle_list(path: &Path) -> Result<Vec<Vec<Arc>>, Failure> {
    let doc = read_json(path)?;
    let items = certificate_field(&doc, "packing")?
        .as_array()
        .ok_or_else(|| Failure::Usage("expected an array of cycles".into()))?;
    items.iter().map(parse_arcs).collect()
}

fn arc_strings<'a>(arcs: impl IntoIterator<Item = &'a Arc>) -> Vec<String> {
    arcs.into_iter().map(Arc::to_string).collect()
}

fn cycle_strings(cycles: &[FourCycle]) -> Vec<Vec<String>> {
    cycles.iter().map(|c| arc_strings(&c.arcs())).collect()
}

fn gen(args: GenArgs) -> Result<Done, Failure> {
    let spec =
        GenSpec::new(args.m, args.n, args.seed).with_bias(args.bias).map_err(|e| Failure::Usage(e.to_string()))?;
    let instances: Vec<(String, BipartiteDigraph)> = match args.mode {
        GenMode::Enumerate => {
            let all = enumerate_bt(args.m, args.n).map_err(|e| Failure::Precondition(e.to_string()))?;
            all.enumerate().map(|(c, g)| (format!("bt-{}x{}-{c:05}.txt", args.m, args.n), g)).collect()
        }
        GenMode::Random | GenMode::RandomC4free => (0..args.count)
            .map(|offset| {
                let seed = args.seed.wrapping_add(offset);
                let spec = spec.with_seed(seed);
                let (tag, g) = match args.mode {
                    GenMode::Random => ("random", random_bt(&spec)),
                    _ => ("random-c4free", random_c4free(&spec)),
                };
                (format!("{tag}-{}x{}-s{seed}.txt", args.m, args.n), g)
            })
            .collect(),
    };

    let single = args.mode != GenMode::Enumerate && args.count == 1;
    match (args.out, single) {
        (None, true) => Ok(Done { body: format::render(&instances[0].1), code: 0 }),
        (None, false) => Err(Failure::Usage("--out DIR is required when generating several instances".into())),
        (Some(path), true) => {
            fs::write(&path, format::render(&instances[0].1))?;
            Ok(Done::json(&GenReport { mode: "gen", files: vec![path.display().to_string()] }))
        }
        (Some(dir), false) => {
            fs::create_dir_all(&dir)?;
            let mut files = Vec::with_capacity(instances.len());
            for (name, g) in &instances {
                let path = dir.join(name);
                fs::write(&path, format::render(g))?;
                files.push(path.display().to_string());
            }
            Ok(Done::json(&GenReport { mode: "gen", files }))
        }
    }
}

#[derive(Serialize)]
struct GenReport {
    mode: &'static str,
    files: Vec<String>,
}

#[derive(Serialize)]
struct SolveReport {
    mode: &'static str,
    k: usize,
    branch: &'static str,
    lambda: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fas: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma_part: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    backward_part: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<Vec<String>>,
    packing: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceRecord>>,
}

fn solve_cmd(graph: &BipartiteDigraph, k: usize, trace: bool) -> Result<Done, Failure> {
    let outcome = solve(graph, k).map_err(|e| match e {
        SolveError::NotATournament { .. } => Failure::Precondition(e.to_string()),
        _ => Failure::Internal(e.to_string()),
    })?;
    let report = match outcome {
        SolveOutcome::Cycles(cycles) => SolveReport {
            mode: "solve",
            k,
            branch: "cycles",
            lambda: graph.lambda(),
            bound: None,
            fas: None,
            lemma_part: None,
            backward_part: None,
            order: None,
            packing: cycle_strings(&cycles),
            trace: None,
        },
        SolveOutcome::Fas(out) => SolveReport {
            mode: "solve",
            k,
            branch: "fas",
            lambda: graph.lambda(),
            bound: Some(out.bound),
            fas: Some(arc_strings(&out.fas)),
            lemma_part: Some(arc_strings(&out.lemma_part)),
            backward_part: Some(arc_strings(&out.backward_part)),
            order: Some(out.order.sequence().iter().map(ToString::to_string).collect()),
            packing: cycle_strings(&out.packing),
            trace: trace.then_some(out.lemma.trace),
        },
    };
    Ok(Done::json(&report))
}

#[derive(Serialize)]
struct FasReport {
    mode: &'static str,
    lambda: usize,
    bound: usize,
    fas: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceRecord>>,
}

fn fas_c4free_cmd(graph: &BipartiteDigraph, trace: bool) -> Result<Done, Failure> {
    let cert = fas_c4free(graph).map_err(|e @ LemmaError::HasFourCycle(_)| Failure::Precondition(e.to_string()))?;
    if cert.fas.len() > cert.bound || !graph.is_feedback_arc_set(&cert.fas).unwrap_or(false) {
        return Err(Failure::Internal(format!("certificate of size {} failed re-verification", cert.fas.len())));
    }
    Ok(Done::json(&FasReport {
        mode: "fas-c4free",
        lambda: graph.lambda(),
        bound: cert.bound,
        fas: arc_strings(&cert.fas),
        trace: trace.then_some(cert.trace),
    }))
}

#[derive(Serialize)]
struct PackReport {
    mode: &'static str,
    lambda: usize,
    maximal: bool,
    residual_lambda: usize,
    packing: Vec<Vec<String>>,
}

fn pack_cmd(graph: &BipartiteDigraph, limit: Option<usize>) -> Done {
    let p = greedy_pack(graph, limit);
    Done::json(&PackReport {
        mode: "pack",
        lambda: graph.lambda(),
        maximal: p.maximal,
        residual_lambda: p.residual.lambda(),
        packing: cycle_strings(&p.cycles),
    })
}

#[derive(Serialize)]
struct OracleReport {
    mode: &'static str,
    kind: &'static str,
    value: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    fas: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    packing: Option<Vec<Vec<String>>>,
}

fn oracle_cmd(graph: &BipartiteDigraph, min_fas: bool) -> Result<Done, Failure> {
    let precondition = |e: crate::oracle::OracleError| Failure::Precondition(e.to_string());
    let report = if min_fas {
        let r = min_fas_exact(graph).map_err(precondition)?;
        if !graph.is_feedback_arc_set(&r.witness).unwrap_or(false) || r.witness.len() != r.value {
            return Err(Failure::Internal("oracle witness failed re-verification".into()));
        }
        OracleReport {
            mode: "oracle",
            kind: "min-fas",
            value: r.value,
            fas: Some(arc_strings(&r.witness)),
            packing: None,
        }
    } else {
        let r = max_c4_packing_exact(graph).map_err(precondition)?;
        check_packing(graph, &r.witness).map_err(Failure::Internal)?;
        OracleReport {
            mode: "oracle",
            kind: "max-packing",
            value: r.value,
            fas: None,
            packing: Some(cycle_strings(&r.witness)),
        }
    };
    Ok(Done::json(&report))
}

#[derive(Serialize)]
struct VerifyReport {
    mode: &'static str,
    kind: &'static str,
    valid: bool,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn verdict(kind: &'static str, size: usize, k: Option<usize>, result: Result<(), String>) -> Done {
    let valid = result.is_ok();
    let report = VerifyReport { mode: "verify", kind, valid, size, k, reason: result.err() };
    Done::json_with_code(&report, if valid { 0 } else { 2 })
}

fn verify_fas(graph: &BipartiteDigraph, arcs: &[Arc], k: Option<usize>) -> Result<Done, Failure> {
    let set: BTreeSet<Arc> = arcs.iter().copied().collect();
    let check = || -> Result<(), String> {
        if set.len() != arcs.len() {
            return Err("arc listed twice".into());
        }
        match graph.is_feedback_arc_set(&set) {
            Ok(true) => {}
            Ok(false) => return Err("deleting the arcs leaves a cycle".into()),
            Err(e) => return Err(e.to_string()),
        }
        if let Some(k) = k {
            let bound = k.checked_sub(1).map(|b| 7 * b).ok_or("no feedback arc set meets the bound for k = 0")?;
            if set.len() > bound {
                return Err(format!("{} arcs exceed the bound {bound}", set.len()));
            }
        }
        Ok(())
    };
    Ok(verdict("fas", arcs.len(), k, check()))
}

fn verify_packing(graph: &BipartiteDigraph, cycles: &[Vec<Arc>], k: Option<usize>) -> Result<Done, Failure> {
    let check = || -> Result<(), String> {
        let parsed: Vec<FourCycle> = cycles
            .iter()
            .map(|arcs| {
                FourCycle::from_arcs(arcs).ok_or_else(|| format!("{} is not a 4-cycle", arc_strings(arcs).join(" ")))
            })
            .collect::<Result<_, _>>()?;
        check_packing(graph, &parsed)?;
        if let Some(k) = k {
            if parsed.len() < k {
                return Err(format!("{} cycles, fewer than {k}", parsed.len()));
            }
        }
        Ok(())
    };
    Ok(verdict("packing", cycles.len(), k, check()))
}

#[derive(Serialize)]
struct VertexLine {
    vertex: String,
    first: usize,
    sec: usize,
}

#[derive(Serialize)]
struct CensusReport {
    mode: &'static str,
    lambda: usize,
    vertices: Vec<VertexLine>,
    sum_first: usize,
    sum_sec: usize,
    count2: usize,
    count3: usize,
    reversed_sum_first: usize,
    reversed_sum_sec: usize,
}

fn census_cmd(graph: &BipartiteDigraph) -> Result<Done, Failure> {
    let sums = census_sums(graph);
    let reversed = census_sums(&graph.reverse());
    let counts = vertex_counts(graph);
    for c in &counts {
        let enumerated = (
            first_count_enumerated(graph, c.vertex).expect("vertex in range"),
            sec_count_enumerated(graph, c.vertex).expect("vertex in range"),
        );
        if enumerated != (c.first, c.sec) {
            return Err(Failure::Internal(format!("closed form and enumeration disagree at {}", c.vertex)));
        }
    }
    if sums.sum_first != sums.count2
        || sums.sum_sec != sums.count3
        || sums.sum_first != reversed.sum_sec
        || sums.sum_sec != reversed.sum_first
    {
        return Err(Failure::Internal(format!("class count identities fail: {sums:?} vs reversed {reversed:?}")));
    }
    Ok(Done::json(&CensusReport {
        mode: "census",
        lambda: graph.lambda(),
        vertices: counts
            .iter()
            .map(|c| VertexLine { vertex: c.vertex.to_string(), first: c.first, sec: c.sec })
            .collect(),
        sum_first: sums.sum_first,
        sum_sec: sums.sum_sec,
        count2: sums.count2,
        count3: sums.count3,
        reversed_sum_first: reversed.sum_first,
        reversed_sum_sec: reversed.sum_sec,
    }))
}
