//! Command-line front end. `run` returns the process exit status:
//! 0 pass, 1 check or verification failure, 2 usage error, 3 budget-partial.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::budget::{Budget, BUDGET_ENV, DEFAULT_BUDGET};
use crate::diagnosis::{
    build_assignment, diagnose, distinguishable, generate_syndrome, tg_formula, verify_tg, AdversaryPolicy, Model,
    Outcome, VerifyMode, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::export;
use crate::fault::FaultSet;
use crate::label::CubeParams;
use crate::props::run_props;
use crate::structure::{good_neighbor_fault_set, is_g_good_neighbor_set, kappa_g_bruteforce, KappaOptions};
use crate::topology::{swap_isomorphism, Topology, TopologyKind};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "letq", version, about = "Locally exchanged twisted cubes: structure and conditional diagnosis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a topology and export it.
    Gen(GenArgs),
    /// Run the structural property suite.
    Props(PropsArgs),
    /// Certify the R^g-vertex-connectivity by exhaustive search.
    Kappa(KappaArgs),
    /// Emit the core A and its neighborhoods N(A), N[A].
    Faultset(FaultsetArgs),
    /// Decide whether two fault sets are distinguishable.
    Distinguish(DistinguishArgs),
    /// Verify the g-good-neighbor conditional diagnosability.
    VerifyTg(VerifyArgs),
    /// Inject faults, generate a syndrome and diagnose it.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Letq,
    Ltq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    EdgeList,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Pmc,
    Mm,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Pmc => Model::Pmc,
            ModelArg::Mm => Model::MmStar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    AllZeros,
    AllOnes,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct Shape {
    #[arg(long, value_enum, default_value_t = FamilyArg::Letq)]
    pub family: FamilyArg,
    #[arg(short = 's')]
    pub s: Option<u32>,
    #[arg(short = 't')]
    pub t: Option<u32>,
    /// LTQ dimension.
    #[arg(short = 'n', long = "dimension")]
    pub dimension: Option<u32>,
}

impl Shape {
    fn kind(&self) -> Result<TopologyKind> {
        match self.family {
            FamilyArg::Letq => {
                let (Some(s), Some(t)) = (self.s, self.t) else {
                    return Err(Error::Parameter("LeTQ needs -s and -t".into()));
                };
                Ok(TopologyKind::Letq(CubeParams::new(s, t)?))
            }
            FamilyArg::Ltq => {
                let n = self.dimension.ok_or_else(|| Error::Parameter("LTQ needs -n".into()))?;
                if n == 0 {
                    return Err(Error::Parameter("LTQ dimension must be at least 1".into()));
                }
                Ok(TopologyKind::Ltq { n })
            }
        }
    }

    fn params(&self) -> Result<CubeParams> {
        match self.kind()? {
            TopologyKind::Letq(p) => Ok(p),
            TopologyKind::Ltq { .. } => Err(Error::UnsupportedFamily("this command needs a LeTQ (-s, -t)".into())),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Work {
    /// Work cap for exhaustive searches.
    #[arg(long, env = BUDGET_ENV)]
    pub budget: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub shape: Shape,
    #[arg(long, value_enum, default_value_t = Format::EdgeList)]
    pub format: Format,
    /// Group LeTQ vertices by cluster in DOT output.
    #[arg(long)]
    pub clusters: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Check this edge list instead of the built topology.
    #[arg(long)]
    pub edge_list: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct KappaArgs {
    #[command(flatten)]
    pub shape: Shape,
    #[arg(short = 'g', default_value_t = 0)]
    pub g: usize,
    #[command(flatten)]
    pub work: Work,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct FaultsetArgs {
    #[command(flatten)]
    pub shape: Shape,
    #[arg(short = 'g', default_value_t = 0)]
    pub g: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct DistinguishArgs {
    #[command(flatten)]
    pub shape: Shape,
    #[arg(long, value_enum, default_value_t = ModelArg::Pmc)]
    pub model: ModelArg,
    /// Comma-separated labels.
    #[arg(long, allow_hyphen_values = true)]
    pub f1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f2: Option<String>,
    /// Newline-delimited label file for the first set.
    #[arg(long)]
    pub f1_file: Option<PathBuf>,
    #[arg(long)]
    pub f2_file: Option<PathBuf>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub shape: Shape,
    #[arg(short = 'g', default_value_t = 0)]
    pub g: usize,
    #[arg(long, value_enum, default_value_t = ModelArg::Pmc)]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Number of sampled pairs.
    #[arg(long = "n", default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Bound to verify instead of the closed-form value.
    #[arg(short = 'T')]
    pub claimed: Option<usize>,
    #[command(flatten)]
    pub work: Work,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub shape: Shape,
    #[arg(long, value_enum, default_value_t = ModelArg::Pmc)]
    pub model: ModelArg,
    #[arg(short = 'g', default_value_t = 0)]
    pub g: usize,
    /// Largest fault set considered; defaults to the closed-form t_g.
    #[arg(short = 'T')]
    pub max_size: Option<usize>,
    /// Comma-separated labels of the injected faults (may be empty).
    #[arg(long, allow_hyphen_values = true)]
    pub fault: Option<String>,
    #[arg(long)]
    pub fault_file: Option<PathBuf>,
    /// Inject a random g-good-neighbor set of this size.
    #[arg(long)]
    pub random_fault: Option<usize>,
    #[arg(long, value_enum, default_value_t = PolicyArg::Random)]
    pub policy: PolicyArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub work: Work,
    #[command(flatten)]
    pub out: Output,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("letq: {e}");
            match e {
                Error::Json(_) | Error::IsomorphismNotFound(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Props(a) => cmd_props(&a),
        Command::Kappa(a) => cmd_kappa(&a),
        Command::Faultset(a) => cmd_faultset(&a),
        Command::Distinguish(a) => cmd_distinguish(&a),
        Command::VerifyTg(a) => cmd_verify_tg(&a),
        Command::Simulate(a) => cmd_simulate(&a),
    }
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn emit_json(out: &Output, value: &Value) -> Result<()> {
    emit(out, &(serde_json::to_string_pretty(value)? + "\n"))
}

/// Notes that `p` was answered on `LeTQ(t,s)` through the block-swap map.
fn relabelling(p: CubeParams) -> Result<Option<Value>> {
    let (np, swapped) = p.normalized();
    if !swapped {
        return Ok(None);
    }
    let map = swap_isomorphism(np)?;
    Ok(Some(json!({
        "computed_on": np.to_string(),
        "reported_on": p.to_string(),
        "map": "(A,B,c) -> (B,A,1-c)",
        "method": map.method,
    })))
}

/// Carries a vertex set of the normalized cube back to `p`'s labels.
fn to_original(p: CubeParams, set: &FaultSet) -> Result<FaultSet> {
    let (np, swapped) = p.normalized();
    if !swapped {
        return Ok(set.clone());
    }
    let map = swap_isomorphism(np)?;
    Ok(set.members().iter().map(|&v| map.map[v]).collect())
}

pub fn cmd_gen(a: &GenArgs) -> Result<i32> {
    let topo = Topology::build(a.shape.kind()?)?;
    let text = match a.format {
        Format::EdgeList | Format::Text => export::edge_list(&topo),
        Format::Dot => export::dot(&topo, a.clusters),
        Format::Json => serde_json::to_string_pretty(&export::adjacency_json(&topo))? + "\n",
    };
    emit(&a.out, &text)?;
    Ok(EXIT_PASS)
}

pub fn cmd_props(a: &PropsArgs) -> Result<i32> {
    let kind = a.shape.kind()?;
    let topo = match &a.edge_list {
        Some(path) => export::read_edge_list(kind, &std::fs::read_to_string(path)?)?,
        None => Topology::build(kind)?,
    };
    let report = run_props(&topo);
    match a.format {
        Format::Json => emit_json(&a.out, &serde_json::to_value(&report)?)?,
        _ => emit(&a.out, &report.to_text())?,
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

pub fn cmd_kappa(a: &KappaArgs) -> Result<i32> {
    let topo = Topology::build(a.shape.kind()?)?;
    let options = KappaOptions { budget: a.work.budget.unwrap_or(DEFAULT_BUDGET), jobs: a.work.jobs };
    let report = kappa_g_bruteforce(&topo, a.g, &options)?;
    let mut value = report.to_json(topo.width());
    value["topology"] = json!(topo.kind().to_string());
    emit_json(&a.out, &value)?;
    Ok(if report.partial {
        EXIT_PARTIAL
    } else if report.formula.is_some() && report.certified != report.formula {
        EXIT_FAIL
    } else {
        EXIT_PASS
    })
}

pub fn cmd_faultset(a: &FaultsetArgs) -> Result<i32> {
    let p = a.shape.params()?;
    let (np, _) = p.normalized();
    let w = good_neighbor_fault_set(np, a.g)?;
    let core = to_original(p, &w.core)?;
    let boundary = to_original(p, &w.boundary)?;
    let closed = to_original(p, &w.closed)?;
    let topo = Topology::letq(p.s(), p.t())?;
    let closed_level = a.g.max(np.s() as usize - 1);
    let ok = is_g_good_neighbor_set(&topo, &boundary, a.g) && is_g_good_neighbor_set(&topo, &closed, closed_level);
    match a.format {
        Format::Json => {
            let width = p.width();
            let mut v = json!({
                "s": p.s(),
                "t": p.t(),
                "g": a.g,
                "core": core.render(width),
                "boundary": boundary.render(width),
                "closed": closed.render(width),
                "sizes": [core.len(), boundary.len(), closed.len()],
                "boundary_level": a.g,
                "closed_level": closed_level,
                "good_neighbor_checks": ok,
            });
            if let Some(r) = relabelling(p)? {
                v["relabelling"] = r;
            }
            emit_json(&a.out, &v)?;
        }
        _ => emit(&a.out, &boundary.to_lines(p.width()))?,
    }
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn read_set(topo: &Topology, list: &Option<String>, file: &Option<PathBuf>, what: &str) -> Result<FaultSet> {
    match (list, file) {
        (Some(l), None) => FaultSet::parse_list(topo, l),
        (None, Some(f)) => FaultSet::parse_lines(topo, &std::fs::read_to_string(f)?),
        (None, None) => Err(Error::Parameter(format!("{what} is required"))),
        (Some(_), Some(_)) => Err(Error::Parameter(format!("give {what} as a list or a file, not both"))),
    }
}

pub fn cmd_distinguish(a: &DistinguishArgs) -> Result<i32> {
    let topo = Topology::build(a.shape.kind()?)?;
    let f1 = read_set(&topo, &a.f1, &a.f1_file, "--f1")?;
    let f2 = read_set(&topo, &a.f2, &a.f2_file, "--f2")?;
    let report = distinguishable(&topo, a.model.into(), &f1, &f2)?;
    emit_json(&a.out, &report.to_json(topo.width()))?;
    Ok(EXIT_PASS)
}

pub fn cmd_verify_tg(a: &VerifyArgs) -> Result<i32> {
    let p = a.shape.params()?;
    let topo = Topology::letq(p.s(), p.t())?;
    let mode = match a.mode {
        ModeArg::Exhaustive => VerifyMode::Exhaustive,
        ModeArg::Sampled => VerifyMode::Sampled { samples: a.samples, seed: a.seed },
    };
    let options = VerifyOptions { budget: a.work.budget, jobs: a.work.jobs, claimed: a.claimed };
    let report = verify_tg(&topo, a.g, a.model.into(), mode, &options)?;
    let mut v = report.to_json();
    if let Some(r) = relabelling(p)? {
        v["relabelling"] = r;
    }
    emit_json(&a.out, &v)?;
    Ok(match report.verdict {
        Outcome::Pass => EXIT_PASS,
        Outcome::Fail => EXIT_FAIL,
        Outcome::Partial => EXIT_PARTIAL,
    })
}

fn random_good_set(topo: &Topology, g: usize, size: usize, seed: u64) -> Result<FaultSet> {
    let n = topo.vertex_count();
    if size > n {
        return Err(Error::Parameter(format!("cannot pick {size} of {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100_000 {
        let f: FaultSet = sample(&mut rng, n, size).into_iter().collect();
        if is_g_good_neighbor_set(topo, &f, g) {
            return Ok(f);
        }
    }
    Err(Error::UnsupportedRegime(format!("no random {g}-good-neighbor set of size {size} found")))
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<i32> {
    let p = a.shape.params()?;
    let topo = Topology::letq(p.s(), p.t())?;
    let model: Model = a.model.into();
    let fault = match (&a.fault, &a.fault_file, a.random_fault) {
        (Some(l), None, None) => FaultSet::parse_list(&topo, l)?,
        (None, Some(f), None) => FaultSet::parse_lines(&topo, &std::fs::read_to_string(f)?)?,
        (None, None, Some(k)) => random_good_set(&topo, a.g, k, a.seed)?,
        (None, None, None) => FaultSet::empty(),
        _ => return Err(Error::Parameter("give at most one of --fault, --fault-file, --random-fault".into())),
    };
    let formula = tg_formula(p.normalized().0, a.g, model).ok();
    let bound = match (a.max_size, formula) {
        (Some(t), _) | (None, Some(t)) => t,
        (None, None) => return Err(Error::Parameter("no closed-form t_g here; pass -T".into())),
    };
    let policy = match a.policy {
        PolicyArg::AllZeros => AdversaryPolicy::AllZeros,
        PolicyArg::AllOnes => AdversaryPolicy::AllOnes,
        PolicyArg::Random => AdversaryPolicy::SeededRandom(a.seed),
    };
    let assignment = build_assignment(&topo, model);
    let syndrome = generate_syndrome(&assignment, &fault, policy);
    let bits: String = syndrome.outcomes().iter().map(|&b| if b { '1' } else { '0' }).collect();
    let digest: String = Sha256::digest(bits.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    let budget = Budget::new(a.work.budget.unwrap_or(DEFAULT_BUDGET));
    let result = diagnose(&syndrome, a.g, bound, &budget);
    let width = topo.width();
    let unique = result.unique().is_some();
    let correct = result.unique() == Some(&fault);
    let status = if !result.complete {
        "partial"
    } else if correct {
        "recovered"
    } else if result.candidates.len() > 1 {
        "ambiguous"
    } else if result.candidates.is_empty() {
        "no-candidate"
    } else {
        "wrong"
    };
    let v = json!({
        "s": p.s(),
        "t": p.t(),
        "model": model,
        "g": a.g,
        "T": bound,
        "formula_tg": formula,
        "injected": fault.render(width),
        "injected_is_good_neighbor": is_g_good_neighbor_set(&topo, &fault, a.g),
        "policy": policy.to_string(),
        "tests": assignment.len(),
        "positive_tests": bits.matches('1').count(),
        "syndrome_sha256": digest,
        "candidates": result.candidates.iter().map(|c| c.render(width)).collect::<Vec<_>>(),
        "complete": result.complete,
        "unique": unique,
        "correct": correct,
        "status": status,
    });
    emit_json(&a.out, &v)?;
    Ok(if !result.complete {
        EXIT_PARTIAL
    } else if correct {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        run(std::iter::once("letq").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(code(&["gen", "--family", "letq", "-s", "1"]), EXIT_USAGE);
        assert_eq!(code(&["no-such-command"]), EXIT_USAGE);
        assert_eq!(code(&["kappa", "-s", "0", "-t", "1"]), EXIT_USAGE);
    }

    #[test]
    fn parses_every_subcommand() {
        for args in [
            vec!["letq", "gen", "-s", "1", "-t", "1"],
            vec!["letq", "gen", "--family", "ltq", "-n", "3", "--format", "json"],
            vec!["letq", "props", "-s", "2", "-t", "2", "--format", "json"],
            vec!["letq", "kappa", "-s", "1", "-t", "2", "-g", "1", "--budget", "10"],
            vec!["letq", "faultset", "-s", "2", "-t", "2", "-g", "1"],
            vec!["letq", "distinguish", "-s", "1", "-t", "1", "--model", "mm", "--f1", "000", "--f2", ""],
            vec!["letq", "verify-tg", "-s", "1", "-t", "1", "-g", "1", "--mode", "sampled", "--n", "10", "-T", "3"],
            vec!["letq", "simulate", "-s", "1", "-t", "1", "--random-fault", "2", "--policy", "all-ones"],
        ] {
            Cli::try_parse_from(&args).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        }
    }
}
