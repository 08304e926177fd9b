//! Locally twisted cubes `LTQ_n` and locally exchanged twisted cubes
//! `LeTQ(s,t)`: adjacency rules, construction and structural decompositions.
//!
//! Neighbor lists are produced by applying the bit rules to each vertex. The
//! `*_adjacent` predicates are a second, pairwise reading of the same rules and
//! are used to cross-validate constructed graphs.

use serde::Serialize;

use crate::error::{param_err, Error, Result};
use crate::graph::Graph;
use crate::iso::{self, IsoSearch, SearchLimits};
use crate::label::{render, Coordinate, CubeParams, VertexLabel, MAX_LABEL_WIDTH};

/// Default cap on the label width of a fully materialized topology.
pub const DEFAULT_MAX_BUILD_WIDTH: u32 = 24;

/// Largest vertex count for which isomorphism fallbacks run a search.
pub const ISO_SEARCH_MAX_VERTICES: usize = 1 << 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    #[serde(rename = "LTQ")]
    Ltq,
    #[serde(rename = "LeTQ")]
    Letq,
}

/// Which graph a [`Topology`] realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TopologyKind {
    Ltq { n: u32 },
    Letq(CubeParams),
}

impl TopologyKind {
    pub fn family(&self) -> Family {
        match self {
            TopologyKind::Ltq { .. } => Family::Ltq,
            TopologyKind::Letq(_) => Family::Letq,
        }
    }

    pub fn width(&self) -> u32 {
        match self {
            TopologyKind::Ltq { n } => *n,
            TopologyKind::Letq(p) => p.width(),
        }
    }
}

impl std::fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TopologyKind::Ltq { n } => write!(f, "LTQ_{n}"),
            TopologyKind::Letq(p) => write!(f, "{p}"),
        }
    }
}

/// Flip masks of the locally twisted rules acting on a block of `dim` bits
/// whose lowest bit sits at `offset`.
fn twisted_block_masks(u: usize, offset: u32, dim: u32, out: &mut Vec<usize>) {
    let low = (u >> offset) & 1;
    out.push(1 << offset);
    if dim >= 2 {
        out.push(1 << (offset + 1));
    }
    for k in 2..dim {
        out.push((1 << (offset + k)) | (low << (offset + k - 1)));
    }
}

fn ltq_neighbor_values(u: usize, n: u32) -> Vec<usize> {
    let mut masks = Vec::with_capacity(n as usize);
    twisted_block_masks(u, 0, n, &mut masks);
    let mut out: Vec<usize> = masks.into_iter().map(|m| u ^ m).collect();
    out.sort_unstable();
    out
}

fn letq_neighbor_values(u: usize, p: CubeParams) -> Vec<usize> {
    let mut masks = Vec::with_capacity(p.s().max(p.t()) as usize + 1);
    masks.push(1);
    if u & 1 == 1 {
        twisted_block_masks(u, 1, p.t(), &mut masks);
    } else {
        twisted_block_masks(u, p.t() + 1, p.s(), &mut masks);
    }
    let mut out: Vec<usize> = masks.into_iter().map(|m| u ^ m).collect();
    out.sort_unstable();
    out
}

/// Neighbors of `u` in `LTQ_n`, sorted.
pub fn ltq_neighbors(u: VertexLabel, n: u32) -> Result<Vec<VertexLabel>> {
    if n == 0 || n > MAX_LABEL_WIDTH {
        return param_err(format!("LTQ dimension {n} out of range"));
    }
    if u.width() != n {
        return param_err(format!("label {u} has width {}, LTQ_{n} needs {n}", u.width()));
    }
    Ok(ltq_neighbor_values(u.index(), n).into_iter().map(|v| VertexLabel::new(v as u64, n)).collect())
}

/// Neighbors of `u` in `LeTQ(s,t)`, sorted.
pub fn letq_neighbors(u: VertexLabel, params: CubeParams) -> Result<Vec<VertexLabel>> {
    if u.width() != params.width() {
        return param_err(format!("label {u} has width {}, {params} needs {}", u.width(), params.width()));
    }
    Ok(letq_neighbor_values(u.index(), params).into_iter().map(|v| params.label(v)).collect())
}

fn bit(x: usize, i: u32) -> usize {
    (x >> i) & 1
}

/// Pairwise adjacency test for `LTQ_n` on `n`-bit values.
pub fn ltq_adjacent(u: usize, v: usize, n: u32) -> bool {
    twisted_block_adjacent(u, v, n)
}

/// Adjacency of two `dim`-bit strings under the locally twisted rules, checked
/// bit by bit.
fn twisted_block_adjacent(u: usize, v: usize, dim: u32) -> bool {
    let same_except = |skip: &[u32]| (0..dim).all(|i| skip.contains(&i) || bit(u, i) == bit(v, i));
    // flip u_k for k in {0, 1}
    for k in 0..dim.min(2) {
        if bit(u, k) != bit(v, k) && same_except(&[k]) {
            return true;
        }
    }
    // flip u_k and set u_{k-1} = v_{k-1} xor u_0 for 2 <= k <= dim-1
    for k in 2..dim {
        if bit(u, k) != bit(v, k) && bit(u, k - 1) == bit(v, k - 1) ^ bit(u, 0) && same_except(&[k, k - 1]) {
            return true;
        }
    }
    false
}

/// Pairwise adjacency test for `LeTQ(s,t)` on packed label values.
pub fn letq_adjacent(u: usize, v: usize, p: CubeParams) -> bool {
    let (au, bu, cu) = (p.a_block(u), p.b_block(u), p.class_bit(u));
    let (av, bv, cv) = (p.a_block(v), p.b_block(v), p.class_bit(v));
    if cu != cv {
        // rule (1): only c differs
        return au == av && bu == bv;
    }
    if cu == 1 {
        // rule (2): c = c' = 1, b-block moves, a-block fixed
        au == av && exchanged_block_adjacent(bu, bv, p.t())
    } else {
        // rule (3): c = c' = 0, a-block moves, b-block fixed
        bu == bv && exchanged_block_adjacent(au, av, p.s())
    }
}

/// Rules (a), (b), (c) of one block: single flip of bit 0 or 1; for k >= 2 a
/// flip of bits k and k-1 when bit 0 is 1 on both sides, or of bit k alone
/// when bit 0 is 0 on both sides.
fn exchanged_block_adjacent(x: usize, y: usize, dim: u32) -> bool {
    let diff = x ^ y;
    if diff == 0 {
        return false;
    }
    for k in 0..dim.min(2) {
        if diff == 1 << k {
            return true;
        }
    }
    for k in 2..dim {
        if bit(x, 0) == 1 && bit(y, 0) == 1 && diff == (1 << k) | (1 << (k - 1)) {
            return true;
        }
        if bit(x, 0) == 0 && bit(y, 0) == 0 && diff == 1 << k {
            return true;
        }
    }
    false
}

/// An immutable, fully materialized topology.
#[derive(Debug, Clone)]
pub struct Topology {
    kind: TopologyKind,
    graph: Graph,
}

impl AsRef<Graph> for Topology {
    fn as_ref(&self) -> &Graph {
        &self.graph
    }
}

impl Topology {
    pub fn build(kind: TopologyKind) -> Result<Self> {
        Self::build_with_limit(kind, DEFAULT_MAX_BUILD_WIDTH)
    }

    pub fn build_with_limit(kind: TopologyKind, max_width: u32) -> Result<Self> {
        let width = kind.width();
        if let TopologyKind::Ltq { n } = kind {
            if n == 0 {
                return param_err("LTQ dimension must be at least 1");
            }
        }
        if width > max_width || width > MAX_LABEL_WIDTH {
            return Err(Error::Capacity { width, limit: max_width.min(MAX_LABEL_WIDTH) });
        }
        let n = 1usize << width;
        let rows: Vec<Vec<usize>> = match kind {
            TopologyKind::Ltq { n: dim } => (0..n).map(|u| ltq_neighbor_values(u, dim)).collect(),
            TopologyKind::Letq(p) => (0..n).map(|u| letq_neighbor_values(u, p)).collect(),
        };
        let graph = Graph::from_rows(rows)?;
        Ok(Topology { kind, graph })
    }

    pub fn letq(s: u32, t: u32) -> Result<Self> {
        Self::build(TopologyKind::Letq(CubeParams::new(s, t)?))
    }

    pub fn ltq(n: u32) -> Result<Self> {
        Self::build(TopologyKind::Ltq { n })
    }

    /// Wraps an externally supplied graph claimed to be the given topology.
    /// Nothing is checked; used to run property suites on edited graphs.
    pub fn from_parts(kind: TopologyKind, graph: Graph) -> Result<Self> {
        if graph.vertex_count() != 1usize << kind.width() {
            return param_err(format!(
                "{kind} needs {} vertices, graph has {}",
                1usize << kind.width(),
                graph.vertex_count()
            ));
        }
        Ok(Topology { kind, graph })
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn family(&self) -> Family {
        self.kind.family()
    }

    pub fn params(&self) -> Option<CubeParams> {
        match self.kind {
            TopologyKind::Letq(p) => Some(p),
            TopologyKind::Ltq { .. } => None,
        }
    }

    /// Cube parameters, or an unsupported-family error for `LTQ_n`.
    pub fn letq_params(&self) -> Result<CubeParams> {
        self.params().ok_or_else(|| Error::UnsupportedFamily(format!("{} is not a LeTQ topology", self.kind)))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn width(&self) -> u32 {
        self.kind.width()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.graph.neighbors(v)
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        VertexLabel::new(v as u64, self.width())
    }

    pub fn render(&self, v: usize) -> String {
        render(v, self.width())
    }

    pub fn parse_label(&self, s: &str) -> Result<usize> {
        Ok(VertexLabel::parse_with_width(s, self.width())?.index())
    }

    /// Compares every vertex pair against the pairwise adjacency predicate.
    /// Returns the first disagreeing pair, if any. Quadratic; meant for
    /// validation of small instances.
    pub fn cross_validate(&self) -> Option<(usize, usize)> {
        let n = self.vertex_count();
        for u in 0..n {
            for v in 0..n {
                let expected = match self.kind {
                    TopologyKind::Ltq { n: dim } => ltq_adjacent(u, v, dim),
                    TopologyKind::Letq(p) => letq_adjacent(u, v, p),
                };
                if expected != self.graph.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

/// The cross neighbor `u*`: the same label with the class bit flipped.
pub fn cross_neighbor(u: VertexLabel) -> VertexLabel {
    VertexLabel::new(u.value() ^ 1, u.width())
}

/// Class-0 clusters `L_i` (grouped by `B(u)`) and class-1 clusters `R_j`
/// (grouped by `A(u)`). Cluster members are sorted, which is also the order of
/// their free block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterPartition {
    pub class0: Vec<Vec<usize>>,
    pub class1: Vec<Vec<usize>>,
}

pub fn cluster_partition(topo: &Topology) -> Result<ClusterPartition> {
    let p = topo.letq_params()?;
    let class0 = (0..1usize << p.t()).map(|b| (0..1usize << p.s()).map(|a| p.compose(a, b, 0)).collect()).collect();
    let class1 = (0..1usize << p.s()).map(|a| (0..1usize << p.t()).map(|b| p.compose(a, b, 1)).collect()).collect();
    Ok(ClusterPartition { class0, class1 })
}

impl ClusterPartition {
    /// Number of edges joining two distinct clusters of the same class.
    pub fn same_class_cross_edges(&self, g: &Graph) -> usize {
        let mut owner = vec![usize::MAX; g.vertex_count()];
        for (i, c) in self.class0.iter().enumerate() {
            for &v in c {
                owner[v] = i;
            }
        }
        let offset = self.class0.len();
        for (j, c) in self.class1.iter().enumerate() {
            for &v in c {
                owner[v] = offset + j;
            }
        }
        let class_of = |o: usize| o >= offset;
        g.edges().filter(|&(u, v)| class_of(owner[u]) == class_of(owner[v]) && owner[u] != owner[v]).count()
    }

    /// True iff every class-0 cluster induces exactly `LTQ_s` and every class-1
    /// cluster exactly `LTQ_t` under the free-block labeling.
    pub fn clusters_match_ltq(&self, topo: &Topology) -> Result<bool> {
        let p = topo.letq_params()?;
        let ltq_s = Topology::ltq(p.s())?;
        let ltq_t = Topology::ltq(p.t())?;
        let g = topo.graph();
        Ok(self.class0.iter().all(|c| g.induced(c) == *ltq_s.graph())
            && self.class1.iter().all(|c| g.induced(c) == *ltq_t.graph()))
    }
}

/// The half of a topology with one coordinate fixed, plus every edge leaving it.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub coordinate: Coordinate,
    pub value: u8,
    pub half: Vec<usize>,
    /// Edges `(u, v)` with `u` in the half and `v` in the other half, sorted.
    pub cross_edges: Vec<(usize, usize)>,
}

impl Decomposition {
    /// True iff no vertex is an endpoint of two cross edges.
    pub fn cross_edges_form_matching(&self) -> bool {
        let mut ends: Vec<usize> = self.cross_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let total = ends.len();
        ends.sort_unstable();
        ends.dedup();
        ends.len() == total
    }
}

pub fn decompose(topo: &Topology, coordinate: Coordinate, value: u8) -> Result<Decomposition> {
    let p = topo.letq_params()?;
    if value > 1 {
        return param_err(format!("coordinate value must be 0 or 1, got {value}"));
    }
    let pos = p.bit_of(coordinate)?;
    match coordinate {
        Coordinate::A(_) if p.s() < 2 => {
            return param_err(format!("cannot fix {coordinate}: it is the only a-coordinate"))
        }
        Coordinate::B(_) if p.t() < 2 => {
            return param_err(format!("cannot fix {coordinate}: it is the only b-coordinate"))
        }
        _ => {}
    }
    let value_bit = value as usize;
    let half: Vec<usize> = (0..topo.vertex_count()).filter(|&u| bit(u, pos) == value_bit).collect();
    let cross_edges = half
        .iter()
        .flat_map(|&u| topo.neighbors(u).iter().filter(move |&&v| bit(v, pos) != value_bit).map(move |&v| (u, v)))
        .collect();
    Ok(Decomposition { coordinate, value, half, cross_edges })
}

/// How an isomorphism was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoMethod {
    /// The closed-form candidate map passed full edge verification.
    Candidate,
    /// The candidate failed; the map came from a search.
    Search,
}

/// A verified vertex bijection `map[v_source] = v_target`.
#[derive(Debug, Clone)]
pub struct VertexMap {
    pub map: Vec<usize>,
    pub method: IsoMethod,
    /// Number of source edges the candidate map failed to preserve.
    pub candidate_defects: usize,
}

/// Checks that `map` is a bijection carrying the edge set of `from` exactly
/// onto that of `to`. Returns the number of source edges not preserved, or
/// `None` if `map` is not a bijection between equal-size vertex sets.
pub fn edge_defects(from: &Graph, to: &Graph, map: &[usize]) -> Option<usize> {
    let n = from.vertex_count();
    if to.vertex_count() != n || map.len() != n {
        return None;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return None;
        }
        hit[m] = true;
    }
    let defects = from.edges().filter(|&(u, v)| !to.has_edge(map[u], map[v])).count();
    Some(defects + from.edge_count().abs_diff(to.edge_count()))
}

fn verified_or_search(from: &Graph, to: &Graph, candidate: Vec<usize>, what: &str) -> Result<VertexMap> {
    let defects = edge_defects(from, to, &candidate).unwrap_or(usize::MAX);
    if defects == 0 {
        return Ok(VertexMap { map: candidate, method: IsoMethod::Candidate, candidate_defects: 0 });
    }
    if from.vertex_count() > ISO_SEARCH_MAX_VERTICES {
        return Err(Error::IsomorphismNotFound(format!(
            "{what}: candidate map broke {defects} edges and {} vertices exceed the search limit",
            from.vertex_count()
        )));
    }
    match iso::find_isomorphism(from, to, SearchLimits::default()) {
        IsoSearch::Found(map) => Ok(VertexMap { map, method: IsoMethod::Search, candidate_defects: defects }),
        IsoSearch::NotIsomorphic => Err(Error::IsomorphismNotFound(format!(
            "{what}: candidate map broke {defects} edges; search proved the graphs non-isomorphic"
        ))),
        IsoSearch::GaveUp { nodes } => Err(Error::IsomorphismNotFound(format!(
            "{what}: candidate map broke {defects} edges; search gave up after {nodes} nodes"
        ))),
    }
}

/// A verified isomorphism `LeTQ(s,t) -> LeTQ(t,s)`.
///
/// The candidate exchanges the a- and b-blocks and flips the class bit; a
/// search replaces it if edge verification fails.
pub fn swap_isomorphism(params: CubeParams) -> Result<VertexMap> {
    let src = Topology::build(TopologyKind::Letq(params))?;
    let dst_params = params.swapped();
    let dst = Topology::build(TopologyKind::Letq(dst_params))?;
    let candidate = (0..src.vertex_count())
        .map(|u| {
            let (a, b, c) = (params.a_block(u), params.b_block(u), params.class_bit(u));
            dst_params.compose(b, a, 1 - c)
        })
        .collect();
    verified_or_search(src.graph(), dst.graph(), candidate, &format!("{params} -> {dst_params}"))
}

/// A verified isomorphism from the half of `decompose(topo, coordinate, value)`
/// onto `LeTQ(s-1,t)` (a-coordinate) or `LeTQ(s,t-1)` (b-coordinate).
///
/// `map[i]` is the image of `half[i]`. The candidate drops the fixed bit from
/// every label.
pub fn half_isomorphism(topo: &Topology, coordinate: Coordinate, value: u8) -> Result<(Decomposition, VertexMap)> {
    let p = topo.letq_params()?;
    let dec = decompose(topo, coordinate, value)?;
    let pos = p.bit_of(coordinate)?;
    let target_params = match coordinate {
        Coordinate::A(_) => CubeParams::new(p.s() - 1, p.t())?,
        Coordinate::B(_) => CubeParams::new(p.s(), p.t() - 1)?,
    };
    let target = Topology::build(TopologyKind::Letq(target_params))?;
    let low_mask = (1usize << pos) - 1;
    let candidate = dec.half.iter().map(|&u| ((u >> (pos + 1)) << pos) | (u & low_mask)).collect();
    let half_graph = topo.graph().induced(&dec.half);
    let map = verified_or_search(
        &half_graph,
        target.graph(),
        candidate,
        &format!("{p} with {coordinate}={value} -> {target_params}"),
    )?;
    Ok((dec, map))
}
