use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::fault::FaultSet;
use crate::graph::Graph;
use crate::structure::{good_neighbor_sets, is_g_good_neighbor_set};
use crate::topology::Topology;

use super::assignment::Model;
use super::distinguish::separator;
use super::formula::{indistinguishable_witness, tg_formula, WitnessPair};

/// Exhaustive verification runs without an explicit budget up to this many
/// vertices.
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 16;

const SAMPLE_CHUNK: u64 = 4096;
const MAX_ATTEMPTS_PER_SAMPLE: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum VerifyMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Work cap. Setting it also lifts the exhaustive vertex limit.
    pub budget: Option<u64>,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    /// Size bound to verify instead of the closed-form value.
    pub claimed: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Partial,
}

/// The upper-bound witness and how it fared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub pair: WitnessPair,
    pub good_neighbor: bool,
    pub within_bound: bool,
    pub indistinguishable: bool,
}

impl WitnessCheck {
    pub fn ok(&self) -> bool {
        self.good_neighbor && self.within_bound && self.indistinguishable
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub s: u32,
    pub t: u32,
    pub g: usize,
    pub model: Model,
    /// The bound `T` under test.
    pub claimed_tg: usize,
    pub formula_tg: usize,
    pub mode: VerifyMode,
    pub checked_pairs: u64,
    /// Sampled mode: draws discarded because repair overflowed `T`.
    pub rejected: Option<u64>,
    pub counterexample: Option<(FaultSet, FaultSet)>,
    pub witness: Option<WitnessCheck>,
    pub verdict: Outcome,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Outcome::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        let width = self.s + self.t + 1;
        let pair = |a: &FaultSet, b: &FaultSet| json!({"F1": a.render(width), "F2": b.render(width)});
        json!({
            "s": self.s,
            "t": self.t,
            "g": self.g,
            "model": self.model,
            "claimed_tg": self.claimed_tg,
            "formula_tg": self.formula_tg,
            "mode": self.mode,
            "checked_pairs": self.checked_pairs,
            "rejected": self.rejected,
            "verdict": self.verdict,
            "counterexample": self.counterexample.as_ref().map(|(a, b)| pair(a, b)),
            "witness_pair": self.witness.as_ref().map(|w| {
                let mut v = pair(&w.pair.f1, &w.pair.f2);
                v["good_neighbor"] = json!(w.good_neighbor);
                v["within_bound"] = json!(w.within_bound);
                v["indistinguishable"] = json!(w.indistinguishable);
                v
            }),
        })
    }
}

fn check_witness(topo: &Topology, g: usize, model: Model, bound: usize) -> Result<WitnessCheck> {
    let params = topo.letq_params()?;
    let pair = indistinguishable_witness(params, g, model)?;
    Ok(WitnessCheck {
        good_neighbor: is_g_good_neighbor_set(topo, &pair.f1, g) && is_g_good_neighbor_set(topo, &pair.f2, g),
        within_bound: pair.max_len() <= bound + 1,
        indistinguishable: pair.f1 != pair.f2 && separator(topo.graph(), model, &pair.f1, &pair.f2).is_none(),
        pair,
    })
}

struct PairScan {
    checked: u64,
    counterexample: Option<(usize, usize)>,
    complete: bool,
}

/// Checks every pair `i < j` of `sets`, stopping at the lexicographically
/// first indistinguishable pair.
fn scan_pairs(graph: &Graph, model: Model, sets: &[FaultSet], budget: &Budget) -> PairScan {
    let m = sets.len();
    let first_bad = AtomicUsize::new(usize::MAX);
    let rows: Vec<(Option<usize>, bool)> = (0..m)
        .into_par_iter()
        .map(|i| {
            if i > first_bad.load(Ordering::Relaxed) {
                return (None, true);
            }
            if !budget.charge((m - i - 1) as u64) {
                return (None, false);
            }
            let bad = (i + 1..m).find(|&j| separator(graph, model, &sets[i], &sets[j]).is_none());
            if bad.is_some() {
                first_bad.fetch_min(i, Ordering::Relaxed);
            }
            (bad, true)
        })
        .collect();
    let mut checked = 0u64;
    for (i, (bad, complete)) in rows.into_iter().enumerate() {
        if !complete {
            return PairScan { checked, counterexample: None, complete: false };
        }
        if let Some(j) = bad {
            checked += (j - i) as u64;
            return PairScan { checked, counterexample: Some((i, j)), complete: true };
        }
        checked += (m - i - 1) as u64;
    }
    PairScan { checked, counterexample: None, complete: true }
}

fn residual_deficit(graph: &Graph, in_set: &[bool], g: usize) -> Option<usize> {
    (0..graph.vertex_count()).find(|&v| !in_set[v] && graph.neighbors(v).iter().filter(|&&w| !in_set[w]).count() < g)
}

/// Adds deficient vertices until the set is `g`-good; `None` if it outgrows `max`.
fn repair(graph: &Graph, mut in_set: Vec<bool>, g: usize, max: usize) -> Option<FaultSet> {
    let mut size = in_set.iter().filter(|&&b| b).count();
    if size > max {
        return None;
    }
    while let Some(v) = residual_deficit(graph, &in_set, g) {
        in_set[v] = true;
        size += 1;
        if size > max {
            return None;
        }
    }
    Some(FaultSet::new((0..in_set.len()).filter(|&v| in_set[v])))
}

/// Random greedy growth: each step adds a neighbor of the current set or,
/// half of the time, a uniformly random vertex.
fn grow(graph: &Graph, rng: &mut ChaCha8Rng, mut in_set: Vec<bool>, target: usize) -> Vec<bool> {
    let n = graph.vertex_count();
    let mut members: Vec<usize> = (0..n).filter(|&v| in_set[v]).collect();
    if members.is_empty() {
        let v = rng.gen_range(0..n);
        in_set[v] = true;
        members.push(v);
    }
    while members.len() < target.min(n) {
        let v = if rng.gen_bool(0.5) {
            let anchor = *members.choose(rng).expect("nonempty");
            *graph.neighbors(anchor).choose(rng).unwrap_or(&anchor)
        } else {
            rng.gen_range(0..n)
        };
        if !in_set[v] {
            in_set[v] = true;
            members.push(v);
        }
    }
    in_set
}

fn members_of(in_set: &[bool]) -> impl Iterator<Item = usize> + '_ {
    (0..in_set.len()).filter(|&v| in_set[v])
}

/// Draws a pair of `g`-good sets of size at most `max`. A third of the draws
/// are independent, a third perturb the first set, and a third take the
/// open and closed neighborhoods of a small random core.
fn draw_pair(graph: &Graph, rng: &mut ChaCha8Rng, g: usize, max: usize) -> Option<(FaultSet, FaultSet)> {
    let n = graph.vertex_count();
    let (first, second) = match rng.gen_range(0..3) {
        0 => {
            let k1 = rng.gen_range(1..=max);
            let k2 = rng.gen_range(1..=max);
            (grow(graph, rng, vec![false; n], k1), grow(graph, rng, vec![false; n], k2))
        }
        1 => {
            let k1 = rng.gen_range(1..=max);
            let base = grow(graph, rng, vec![false; n], k1);
            let mut other = base.clone();
            let members: Vec<usize> = members_of(&base).collect();
            for _ in 0..rng.gen_range(1..=2) {
                let anchor = *members.choose(rng).expect("nonempty");
                let v = *graph.neighbors(anchor).choose(rng).unwrap_or(&anchor);
                other[v] = !other[v];
            }
            (base, other)
        }
        _ => {
            let k = rng.gen_range(1..=(1usize << g).min(max));
            let core = grow(graph, rng, vec![false; n], k);
            let mut open = vec![false; n];
            for v in members_of(&core) {
                for &w in graph.neighbors(v) {
                    open[w] = !core[w];
                }
            }
            let closed: Vec<bool> = open.iter().zip(&core).map(|(a, b)| *a || *b).collect();
            (open, closed)
        }
    };
    let f1 = repair(graph, first, g, max)?;
    let f2 = repair(graph, second, g, max)?;
    (f1 != f2).then_some((f1, f2))
}

struct ChunkResult {
    accepted: u64,
    rejected: u64,
    counterexample: Option<(FaultSet, FaultSet)>,
}

fn sample_chunk(graph: &Graph, model: Model, g: usize, max: usize, seed: u64, chunk: u64, want: u64) -> ChunkResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut out = ChunkResult { accepted: 0, rejected: 0, counterexample: None };
    let mut attempts = 0;
    while out.accepted < want && attempts < want * MAX_ATTEMPTS_PER_SAMPLE {
        attempts += 1;
        match draw_pair(graph, &mut rng, g, max) {
            None => out.rejected += 1,
            Some((f1, f2)) => {
                out.accepted += 1;
                if separator(graph, model, &f1, &f2).is_none() {
                    out.counterexample = Some((f1, f2));
                    break;
                }
            }
        }
    }
    out
}

/// Verifies that every pair of distinct `g`-good-neighbor conditional faulty
/// sets of size at most `T` is distinguishable, and that the known
/// indistinguishable pair fits within `T + 1`. `T` is the closed-form value
/// unless `options.claimed` overrides it.
pub fn verify_tg(
    topo: &Topology,
    g: usize,
    model: Model,
    mode: VerifyMode,
    options: &VerifyOptions,
) -> Result<VerifyReport> {
    let p = topo.letq_params()?;
    let (np, swapped) = p.normalized();
    let normalized;
    let topo = if swapped {
        normalized = Topology::letq(np.s(), np.t())?;
        &normalized
    } else {
        topo
    };
    let formula_tg = tg_formula(np, g, model)?;
    let bound = options.claimed.unwrap_or(formula_tg);
    let graph = topo.graph();
    let n = graph.vertex_count();
    if matches!(mode, VerifyMode::Exhaustive) && options.budget.is_none() && n > EXHAUSTIVE_VERTEX_LIMIT {
        return Err(Error::UnsupportedRegime(format!(
            "exhaustive verification of {} vertices needs an explicit budget (default limit {EXHAUSTIVE_VERTEX_LIMIT})",
            n
        )));
    }
    let budget = Budget::new(options.budget.unwrap_or(DEFAULT_BUDGET));
    let witness = check_witness(topo, g, model, bound)?;
    let run = || -> VerifyReport {
        let (checked_pairs, rejected, counterexample, complete) = match mode {
            VerifyMode::Exhaustive => {
                let sets = good_neighbor_sets(graph, g, bound, &budget);
                if !sets.complete {
                    (0, None, None, false)
                } else {
                    let scan = scan_pairs(graph, model, &sets.sets, &budget);
                    let ce = scan.counterexample.map(|(i, j)| (sets.sets[i].clone(), sets.sets[j].clone()));
                    (scan.checked, None, ce, scan.complete)
                }
            }
            VerifyMode::Sampled { samples, seed } => {
                let chunks = samples.div_ceil(SAMPLE_CHUNK);
                let first_bad = AtomicUsize::new(usize::MAX);
                let results: Vec<Option<ChunkResult>> = (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        if c as usize > first_bad.load(Ordering::Relaxed) {
                            return None;
                        }
                        let want = SAMPLE_CHUNK.min(samples - c * SAMPLE_CHUNK);
                        let r = sample_chunk(graph, model, g, bound.max(1), seed, c, want);
                        if r.counterexample.is_some() {
                            first_bad.fetch_min(c as usize, Ordering::Relaxed);
                        }
                        Some(r)
                    })
                    .collect();
                let (mut accepted, mut rejected, mut ce) = (0, 0, None);
                for r in results.into_iter().flatten() {
                    accepted += r.accepted;
                    rejected += r.rejected;
                    if r.counterexample.is_some() {
                        ce = r.counterexample;
                        break;
                    }
                }
                (accepted, Some(rejected), ce, budget.charge(accepted))
            }
        };
        let verdict = if counterexample.is_some() || !witness.ok() {
            Outcome::Fail
        } else if !complete {
            Outcome::Partial
        } else {
            Outcome::Pass
        };
        VerifyReport {
            s: np.s(),
            t: np.t(),
            g,
            model,
            claimed_tg: bound,
            formula_tg,
            mode,
            checked_pairs,
            rejected,
            counterexample,
            witness: Some(witness.clone()),
            verdict,
        }
    };
    if options.jobs == 0 {
        Ok(run())
    } else {
        Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start {} workers: {e}", options.jobs)))?
            .install(run))
    }
}
