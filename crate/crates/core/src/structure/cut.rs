use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::error::{param_err, Error, Result};
use crate::fault::FaultSet;
use crate::graph::Graph;
use crate::label::CubeParams;
use crate::topology::{swap_isomorphism, Topology};

use super::subsets::{SubsetWalk, Walk};
use super::witness::good_neighbor_fault_set;

/// True iff `topo - faults` is disconnected and has minimum degree at least `g`.
pub fn is_rg_cut(topo: &Topology, faults: &FaultSet, g: usize) -> bool {
    let removed = faults.to_bitset(topo.vertex_count());
    let graph = topo.graph();
    graph.min_degree_without(&removed).is_some_and(|d| d >= g) && graph.is_disconnected_without(&removed)
}

/// `2^g (s - g + 1)` for `1 <= s <= t` and `0 <= g <= s`.
pub fn kappa_g_formula(params: CubeParams, g: usize) -> Result<usize> {
    let s = params.s() as usize;
    if !params.is_normalized() {
        return param_err(format!("{params} has s > t"));
    }
    if g > s {
        return param_err(format!("g={g} exceeds s={s}"));
    }
    Ok((1usize << g) * (s - g + 1))
}

#[derive(Debug, Clone)]
pub struct KappaOptions {
    /// Search nodes allowed before the report is flagged partial.
    pub budget: u64,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for KappaOptions {
    fn default() -> Self {
        KappaOptions { budget: DEFAULT_BUDGET, jobs: 0 }
    }
}

/// Result of an exhaustive `R^g`-cut search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutReport {
    pub g: usize,
    /// Closed-form value when the topology is a LeTQ with `g <= min(s,t)`.
    pub formula: Option<usize>,
    /// Certified minimum cut size. `None` when partial or when no cut exists.
    pub certified: Option<usize>,
    /// Every vertex set smaller than this has been ruled out.
    pub lower_bound: usize,
    pub witness: Option<FaultSet>,
    /// Component sizes of `topo - witness`, largest first.
    pub components: Vec<usize>,
    pub partial: bool,
}

#[derive(Serialize)]
struct CutJson {
    g: usize,
    formula: Option<usize>,
    certified: Option<usize>,
    lower_bound: usize,
    partial: bool,
    witness: Option<Vec<String>>,
    components: Vec<usize>,
}

impl CutReport {
    pub fn to_json(&self, width: u32) -> serde_json::Value {
        serde_json::to_value(CutJson {
            g: self.g,
            formula: self.formula,
            certified: self.certified,
            lower_bound: self.lower_bound,
            partial: self.partial,
            witness: self.witness.as_ref().map(|w| w.render(width)),
            components: self.components.clone(),
        })
        .expect("plain data serializes")
    }

    /// True when the search finished and agrees with the closed form.
    pub fn matches_formula(&self) -> bool {
        !self.partial && self.formula.is_some() && self.certified == self.formula
    }
}

/// Lexicographically first `R^g`-cut of size exactly `k`, or `Err(())` when
/// the budget ran out before the size was exhausted.
fn search_size(graph: &Graph, g: usize, k: usize, budget: &Budget) -> std::result::Result<Option<Vec<usize>>, ()> {
    let n = graph.vertex_count();
    if k == 0 || k + 2 > n {
        return Ok(None);
    }
    let best_root = AtomicUsize::new(usize::MAX);
    let results: Vec<(Option<Vec<usize>>, bool)> = (0..=(n - k))
        .into_par_iter()
        .map(|root| {
            if root > best_root.load(Ordering::Relaxed) {
                return (None, true);
            }
            let mut walk = SubsetWalk::new(graph, g, budget);
            match walk.rooted(root, k, |w| graph.is_disconnected_without(w.removed())) {
                Walk::Stopped => {
                    best_root.fetch_min(root, Ordering::Relaxed);
                    (Some(walk.chosen().to_vec()), true)
                }
                Walk::Done => (None, true),
                Walk::OutOfBudget => (None, false),
            }
        })
        .collect();
    // A witness at root r is final once every smaller root finished cleanly.
    for (found, complete) in results {
        if !complete {
            return Err(());
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn formula_for(topo: &Topology, g: usize) -> Option<usize> {
    let p = topo.params()?;
    kappa_g_formula(p.normalized().0, g).ok()
}

/// The `N(A)` construction expressed in the labels of `topo`.
fn construction_cut(topo: &Topology, g: usize) -> Option<FaultSet> {
    let p = topo.params()?;
    let (np, swapped) = p.normalized();
    let w = good_neighbor_fault_set(np, g).ok()?;
    if !swapped {
        return Some(w.boundary);
    }
    let map = swap_isomorphism(np).ok()?;
    Some(w.boundary.members().iter().map(|&u| map.map[u]).collect())
}

fn component_sizes(topo: &Topology, cut: &FaultSet) -> Vec<usize> {
    let mut sizes: Vec<usize> =
        topo.graph().components_without(&cut.to_bitset(topo.vertex_count())).iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Smallest `R^g`-vertex-cut by exhaustive search over subsets of increasing
/// size, in lexicographic order within each size.
pub fn kappa_g_bruteforce(topo: &Topology, g: usize, options: &KappaOptions) -> Result<CutReport> {
    let budget = Budget::new(options.budget);
    let run = || -> Result<CutReport> {
        let graph = topo.graph();
        let n = graph.vertex_count();
        let formula = formula_for(topo, g);
        for k in 1..n.saturating_sub(1) {
            match search_size(graph, g, k, &budget) {
                Ok(Some(cut)) => {
                    let cut = FaultSet::new(cut);
                    return Ok(CutReport {
                        g,
                        formula,
                        certified: Some(k),
                        lower_bound: k,
                        components: component_sizes(topo, &cut),
                        witness: Some(cut),
                        partial: false,
                    });
                }
                Ok(None) => {}
                Err(()) => {
                    let witness = construction_cut(topo, g).filter(|f| is_rg_cut(topo, f, g));
                    return Ok(CutReport {
                        g,
                        formula,
                        certified: None,
                        lower_bound: k,
                        components: witness.as_ref().map(|w| component_sizes(topo, w)).unwrap_or_default(),
                        witness,
                        partial: true,
                    });
                }
            }
        }
        Ok(CutReport {
            g,
            formula,
            certified: None,
            lower_bound: n.saturating_sub(1),
            witness: None,
            components: Vec::new(),
            partial: false,
        })
    };
    if options.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start {} workers: {e}", options.jobs)))?
            .install(run)
    }
}
