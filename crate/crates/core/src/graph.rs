//! Compact undirected simple graphs over vertices `0..n`.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Undirected simple graph in compressed sparse row form. Neighbor lists are
/// sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl AsRef<Graph> for Graph {
    fn as_ref(&self) -> &Graph {
        self
    }
}

impl Graph {
    /// Builds a graph from per-vertex neighbor rows. Rows are sorted; the
    /// result must be symmetric, loop-free and without repeated neighbors.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(rows.iter().map(Vec::len).sum());
        offsets.push(0);
        for (v, mut row) in rows.into_iter().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("vertex {v} has a repeated neighbor")));
            }
            if let Some(&bad) = row.iter().find(|&&w| w == v || w >= n) {
                return Err(Error::Input(format!("vertex {v} has invalid neighbor {bad}")));
            }
            targets.extend(row);
            offsets.push(targets.len());
        }
        let g = Graph { offsets, targets };
        for u in 0..n {
            for &v in g.neighbors(u) {
                if !g.has_edge(v, u) {
                    return Err(Error::Input(format!("edge {u}->{v} has no reverse")));
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph from an undirected edge list; duplicate edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rows = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Input(format!("invalid edge ({u},{v}) for {n} vertices")));
            }
            rows[u].push(v);
            rows[v].push(u);
        }
        for row in &mut rows {
            row.sort_unstable();
            row.dedup();
        }
        Graph::from_rows(rows)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Connected components of `G - removed`, each sorted, ordered by their
    /// smallest vertex.
    pub fn components_without(&self, removed: &FixedBitSet) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = removed.clone();
        seen.grow(n);
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen.contains(w) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&FixedBitSet::with_capacity(self.vertex_count()))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff `G - removed` has at least two components.
    pub fn is_disconnected_without(&self, removed: &FixedBitSet) -> bool {
        let n = self.vertex_count();
        let Some(start) = (0..n).find(|&v| !removed.contains(v)) else {
            return false;
        };
        let mut seen = removed.clone();
        seen.grow(n);
        seen.insert(start);
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen.contains(w) {
                    seen.insert(w);
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached + removed.count_ones(..) < n
    }

    /// Minimum degree of `G - removed`, or `None` if nothing remains.
    pub fn min_degree_without(&self, removed: &FixedBitSet) -> Option<usize> {
        (0..self.vertex_count())
            .filter(|&v| !removed.contains(v))
            .map(|v| self.neighbors(v).iter().filter(|&&w| !removed.contains(w)).count())
            .min()
    }

    /// Open neighborhood `N(S) = (union of N(v), v in S) - S`, sorted.
    pub fn open_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = FixedBitSet::with_capacity(self.vertex_count());
        for &v in set {
            inside.insert(v);
        }
        let mut out = FixedBitSet::with_capacity(self.vertex_count());
        for &v in set {
            for &w in self.neighbors(v) {
                if !inside.contains(w) {
                    out.insert(w);
                }
            }
        }
        out.ones().collect()
    }

    /// Subgraph induced by `set`, relabeled to `0..set.len()` in the order given.
    pub fn induced(&self, set: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in set.iter().enumerate() {
            pos[v] = i;
        }
        let rows = set
            .iter()
            .map(|&v| self.neighbors(v).iter().filter_map(|&w| (pos[w] != usize::MAX).then_some(pos[w])).collect())
            .collect();
        Graph::from_rows(rows).expect("induced subgraph of a valid graph is valid")
    }

    /// Degree multiset, ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// True iff the graph is a single cycle through every vertex.
    pub fn is_single_cycle(&self) -> bool {
        self.vertex_count() >= 3 && (0..self.vertex_count()).all(|v| self.degree(v) == 2) && self.is_connected()
    }
}

/// Bit set over `0..n` holding `members`.
pub fn bitset_of(n: usize, members: &[usize]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(n);
    for &v in members {
        set.insert(v);
    }
    set
}
