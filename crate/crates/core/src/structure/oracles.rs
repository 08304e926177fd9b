use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::topology::Topology;

/// True iff the graph has no 3-cycle.
pub fn is_triangle_free<G: AsRef<Graph>>(graph: G) -> bool {
    let g = graph.as_ref();
    g.edges().all(|(u, v)| sorted_intersection_len(g.neighbors(u), g.neighbors(v)) == 0)
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Maximum of `|N(u) ∩ N(v)|` over all pairs of distinct vertices.
pub fn max_common_neighbors<G: AsRef<Graph>>(graph: G) -> usize {
    let g = graph.as_ref();
    let n = g.vertex_count();
    let mut count = vec![0usize; n];
    let mut touched = Vec::new();
    let mut best = 0;
    for u in 0..n {
        for &w in g.neighbors(u) {
            for &v in g.neighbors(w) {
                if v != u {
                    if count[v] == 0 {
                        touched.push(v);
                    }
                    count[v] += 1;
                }
            }
        }
        for &v in &touched {
            best = best.max(count[v]);
            count[v] = 0;
        }
        touched.clear();
    }
    best
}

/// Exhaustive certification of [`min_order_with_min_degree`] runs up to this
/// many vertices.
pub const MIN_ORDER_EXHAUSTIVE_LIMIT: usize = 1 << 9;

const MIN_ORDER_NODE_LIMIT: u64 = 50_000_000;

/// Smallest order of a subgraph with minimum degree at least `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinOrder {
    /// Exhaustively certified minimum with an attaining vertex set.
    Exact { order: usize, witness: Vec<usize> },
    /// Not exhaustively certified: `lower` is the `2^g` bound and `witness`
    /// (of size `lower`) attains it.
    Bound { lower: usize, witness: Vec<usize> },
    /// No nonempty subgraph has minimum degree `g`.
    None,
}

impl MinOrder {
    pub fn order(&self) -> Option<usize> {
        match self {
            MinOrder::Exact { order, .. } => Some(*order),
            MinOrder::Bound { lower, .. } => Some(*lower),
            MinOrder::None => None,
        }
    }
}

/// Vertices of the `g`-core: what survives repeatedly deleting vertices of
/// degree below `g`.
fn core_vertices(g: &Graph, min_deg: usize) -> Vec<bool> {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < min_deg).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < min_deg {
                    alive[w] = false;
                    stack.push(w);
                }
            }
        }
    }
    alive
}

struct OrderSearch<'a> {
    g: &'a Graph,
    need: usize,
    in_set: Vec<bool>,
    banned: Vec<bool>,
    deg_in: Vec<usize>,
    set: Vec<usize>,
    best: usize,
    best_set: Vec<usize>,
    nodes: u64,
}

impl OrderSearch<'_> {
    fn add(&mut self, v: usize) {
        self.in_set[v] = true;
        self.set.push(v);
        for &w in self.g.neighbors(v) {
            self.deg_in[w] += 1;
        }
    }

    fn remove(&mut self, v: usize) {
        self.in_set[v] = false;
        self.set.pop();
        for &w in self.g.neighbors(v) {
            self.deg_in[w] -= 1;
        }
    }

    /// Returns false when the node budget runs out.
    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > MIN_ORDER_NODE_LIMIT {
            return false;
        }
        if self.set.len() >= self.best {
            return true;
        }
        // Branch on the deficient vertex with the fewest usable neighbors.
        let mut pick: Option<(usize, usize)> = None;
        let mut max_short = 0;
        for &x in &self.set {
            if self.deg_in[x] >= self.need {
                continue;
            }
            let short = self.need - self.deg_in[x];
            let options = self.g.neighbors(x).iter().filter(|&&y| !self.in_set[y] && !self.banned[y]).count();
            if options < short {
                return true;
            }
            max_short = max_short.max(short);
            if pick.is_none_or(|(_, o)| options < o) {
                pick = Some((x, options));
            }
        }
        let Some((x, _)) = pick else {
            self.best = self.set.len();
            self.best_set = self.set.clone();
            return true;
        };
        if self.set.len() + max_short >= self.best {
            return true;
        }
        let options: Vec<usize> =
            self.g.neighbors(x).iter().copied().filter(|&y| !self.in_set[y] && !self.banned[y]).collect();
        let mut banned_here = Vec::new();
        let mut ok = true;
        for y in options {
            self.add(y);
            ok = self.dfs();
            self.remove(y);
            if !ok {
                break;
            }
            self.banned[y] = true;
            banned_here.push(y);
        }
        for y in banned_here {
            self.banned[y] = false;
        }
        ok
    }
}

/// Smallest order of a subgraph of `topo` whose minimum degree is at least
/// `g`. Exhaustive up to [`MIN_ORDER_EXHAUSTIVE_LIMIT`] vertices; above that,
/// LeTQ topologies with `g <= min(s,t)` return the `2^g` bound together with
/// the good-neighbor core set attaining it.
pub fn min_order_with_min_degree(topo: &Topology, g: usize) -> Result<MinOrder> {
    let graph = topo.graph();
    let n = graph.vertex_count();
    if n > MIN_ORDER_EXHAUSTIVE_LIMIT {
        let p = topo
            .letq_params()
            .map_err(|_| Error::UnsupportedRegime(format!("{} is too large for an exhaustive search", topo.kind())))?;
        let (np, swapped) = p.normalized();
        if g > np.s() as usize {
            return Err(Error::UnsupportedRegime(format!("g={g} exceeds min(s,t) for {p}")));
        }
        let w = super::good_neighbor_fault_set(np, g)?;
        let witness = if swapped {
            // The core lies in the a-block of the normalized cube; map it back.
            let back = crate::topology::swap_isomorphism(np)?;
            let mut v: Vec<usize> = w.core.members().iter().map(|&u| back.map[u]).collect();
            v.sort_unstable();
            v
        } else {
            w.core.members().to_vec()
        };
        return Ok(MinOrder::Bound { lower: 1 << g, witness });
    }
    if n == 0 {
        return Ok(MinOrder::None);
    }
    if g == 0 {
        return Ok(MinOrder::Exact { order: 1, witness: vec![0] });
    }
    let alive = core_vertices(graph, g);
    if !alive.iter().any(|&a| a) {
        return Ok(MinOrder::None);
    }
    // Smallest component of the g-core is the starting incumbent.
    let dead: Vec<usize> = (0..n).filter(|&v| !alive[v]).collect();
    let removed = crate::graph::bitset_of(n, &dead);
    let incumbent = graph.components_without(&removed).into_iter().min_by_key(Vec::len).expect("core is nonempty");
    let mut search = OrderSearch {
        g: graph,
        need: g,
        in_set: vec![false; n],
        banned: vec![false; n],
        deg_in: vec![0; n],
        set: Vec::new(),
        best: 0,
        best_set: Vec::new(),
        nodes: 0,
    };
    // Iterative deepening: look for a set of at most `k` vertices, k = g+1, ...
    for k in (g + 1)..incumbent.len() {
        search.best = k + 1;
        for (v, &a) in alive.iter().enumerate() {
            search.banned[v] = !a;
        }
        for root in 0..n {
            if search.banned[root] {
                continue;
            }
            search.add(root);
            let ok = search.dfs();
            search.remove(root);
            if !ok {
                return Err(Error::UnsupportedRegime(format!(
                    "minimum-order search exceeded {MIN_ORDER_NODE_LIMIT} nodes"
                )));
            }
            search.banned[root] = true;
            if search.best <= k {
                let mut witness = search.best_set;
                witness.sort_unstable();
                return Ok(MinOrder::Exact { order: witness.len(), witness });
            }
        }
    }
    Ok(MinOrder::Exact { order: incumbent.len(), witness: incumbent })
}
