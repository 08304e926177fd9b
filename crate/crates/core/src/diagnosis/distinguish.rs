use serde::Serialize;

use crate::error::{param_err, Result};
use crate::fault::FaultSet;
use crate::graph::Graph;
use crate::label::render;

use super::assignment::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Distinguishable,
    Indistinguishable,
}

/// The structure that separates a distinguishable pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separator {
    /// PMC: `outside` is in neither set and is adjacent to `differing`, which
    /// lies in the symmetric difference.
    Edge { outside: usize, differing: usize },
    /// MM*: `u`, `v` are both adjacent to the comparator `w` as required by
    /// `condition` (1, 2 or 3).
    Triple { condition: u8, u: usize, v: usize, w: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishReport {
    pub model: Model,
    pub f1: FaultSet,
    pub f2: FaultSet,
    pub verdict: Verdict,
    pub separator: Option<Separator>,
}

#[derive(Serialize)]
struct ReportJson {
    model: Model,
    f1: Vec<String>,
    f2: Vec<String>,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<serde_json::Value>,
}

impl DistinguishReport {
    pub fn is_distinguishable(&self) -> bool {
        self.verdict == Verdict::Distinguishable
    }

    pub fn to_json(&self, width: u32) -> serde_json::Value {
        let r = |v| render(v, width);
        let witness = self.separator.map(|s| match s {
            Separator::Edge { outside, differing } => serde_json::json!({
                "edge": [r(outside), r(differing)],
            }),
            Separator::Triple { condition, u, v, w } => serde_json::json!({
                "condition": condition,
                "u": r(u),
                "v": r(v),
                "w": r(w),
            }),
        });
        serde_json::to_value(ReportJson {
            model: self.model,
            f1: self.f1.render(width),
            f2: self.f2.render(width),
            verdict: self.verdict,
            witness,
        })
        .expect("plain data serializes")
    }
}

const OUT: u8 = 0;
const ONLY1: u8 = 1;
const ONLY2: u8 = 2;

fn membership(n: usize, f1: &FaultSet, f2: &FaultSet) -> Vec<u8> {
    let mut m = vec![OUT; n];
    for &v in f1.members() {
        m[v] |= ONLY1;
    }
    for &v in f2.members() {
        m[v] |= ONLY2;
    }
    m
}

fn in_sym_diff(x: u8) -> bool {
    x == ONLY1 || x == ONLY2
}

pub(crate) fn pmc_separator(graph: &Graph, f1: &FaultSet, f2: &FaultSet) -> Option<Separator> {
    let m = membership(graph.vertex_count(), f1, f2);
    (0..graph.vertex_count()).filter(|&v| in_sym_diff(m[v])).find_map(|v| {
        graph.neighbors(v).iter().find(|&&u| m[u] == OUT).map(|&u| Separator::Edge { outside: u, differing: v })
    })
}

pub(crate) fn mm_separator(graph: &Graph, f1: &FaultSet, f2: &FaultSet) -> Option<Separator> {
    let n = graph.vertex_count();
    let m = membership(n, f1, f2);
    let outside = || (0..n).filter(|&w| m[w] == OUT);
    // (1) a fault-free comparator w sees a fault-free u and some v in the
    // symmetric difference.
    for w in outside() {
        let nb = graph.neighbors(w);
        if let (Some(&u), Some(&v)) = (nb.iter().find(|&&x| m[x] == OUT), nb.iter().find(|&&x| in_sym_diff(m[x]))) {
            return Some(Separator::Triple { condition: 1, u, v, w });
        }
    }
    // (2)/(3) a fault-free comparator sees two vertices of F1-F2 (or F2-F1).
    for (condition, side) in [(2u8, ONLY1), (3u8, ONLY2)] {
        for w in outside() {
            let mut hits = graph.neighbors(w).iter().filter(|&&x| m[x] == side);
            if let (Some(&u), Some(&v)) = (hits.next(), hits.next()) {
                return Some(Separator::Triple { condition, u, v, w });
            }
        }
    }
    None
}

pub(crate) fn separator(graph: &Graph, model: Model, f1: &FaultSet, f2: &FaultSet) -> Option<Separator> {
    match model {
        Model::Pmc => pmc_separator(graph, f1, f2),
        Model::MmStar => mm_separator(graph, f1, f2),
    }
}

/// Decides whether `(f1, f2)` is a distinguishable pair under `model`.
pub fn distinguishable<G: AsRef<Graph>>(
    topo: G,
    model: Model,
    f1: &FaultSet,
    f2: &FaultSet,
) -> Result<DistinguishReport> {
    if f1 == f2 {
        return param_err("the two fault sets are equal");
    }
    let graph = topo.as_ref();
    if let Some(&v) = f1.members().iter().chain(f2.members()).find(|&&v| v >= graph.vertex_count()) {
        return param_err(format!("vertex {v} is out of range"));
    }
    let separator = separator(graph, model, f1, f2);
    Ok(DistinguishReport {
        model,
        f1: f1.clone(),
        f2: f2.clone(),
        verdict: if separator.is_some() { Verdict::Distinguishable } else { Verdict::Indistinguishable },
        separator,
    })
}

pub fn pmc_distinguishable<G: AsRef<Graph>>(topo: G, f1: &FaultSet, f2: &FaultSet) -> Result<DistinguishReport> {
    distinguishable(topo, Model::Pmc, f1, f2)
}

pub fn mm_distinguishable<G: AsRef<Graph>>(topo: G, f1: &FaultSet, f2: &FaultSet) -> Result<DistinguishReport> {
    distinguishable(topo, Model::MmStar, f1, f2)
}
