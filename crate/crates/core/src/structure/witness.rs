use serde::Serialize;

use crate::error::{param_err, Result};
use crate::fault::FaultSet;
use crate::label::CubeParams;
use crate::topology::Topology;

/// The core `A` of a good-neighbor construction with its open and closed
/// neighborhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodNeighborWitness {
    pub g: usize,
    pub core: FaultSet,
    /// `N(A)`.
    pub boundary: FaultSet,
    /// `N[A]`.
    pub closed: FaultSet,
}

#[derive(Serialize)]
struct WitnessJson {
    s: u32,
    t: u32,
    g: usize,
    core: Vec<String>,
    boundary: Vec<String>,
    closed: Vec<String>,
}

impl GoodNeighborWitness {
    /// JSON rendering with labels of `params`.
    pub fn to_json(&self, params: CubeParams) -> serde_json::Value {
        let w = params.width();
        serde_json::to_value(WitnessJson {
            s: params.s(),
            t: params.t(),
            g: self.g,
            core: self.core.render(w),
            boundary: self.boundary.render(w),
            closed: self.closed.render(w),
        })
        .expect("plain data serializes")
    }
}

/// Builds `A` (labels free in the top `g` a-bits, zero elsewhere) together
/// with `N(A)` and `N[A]` taken from the adjacency of `LeTQ(s,t)`.
pub fn good_neighbor_fault_set(params: CubeParams, g: usize) -> Result<GoodNeighborWitness> {
    if !params.is_normalized() {
        return param_err(format!("{params} has s > t; normalize with the swap map first"));
    }
    let s = params.s() as usize;
    if g > s {
        return param_err(format!("g={g} exceeds s={s}"));
    }
    let topo = Topology::letq(params.s(), params.t())?;
    let shift = s - g;
    let core: FaultSet = (0..1usize << g).map(|top| params.compose(top << shift, 0, 0)).collect();
    let closed: FaultSet =
        core.members().iter().flat_map(|&u| std::iter::once(u).chain(topo.neighbors(u).iter().copied())).collect();
    let boundary = closed.difference(&core);
    Ok(GoodNeighborWitness { g, core, boundary, closed })
}

/// True iff every vertex outside `faults` keeps at least `g` neighbors
/// outside `faults`.
pub fn is_g_good_neighbor_set(topo: &Topology, faults: &FaultSet, g: usize) -> bool {
    let removed = faults.to_bitset(topo.vertex_count());
    topo.graph().min_degree_without(&removed).is_none_or(|d| d >= g)
}
