use fixedbitset::FixedBitSet;

use crate::budget::Budget;
use crate::fault::FaultSet;
use crate::graph::Graph;

const CHARGE_EVERY: u64 = 1 << 10;

/// Outcome of a rooted walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Walk {
    Done,
    Stopped,
    OutOfBudget,
}

/// Lexicographic walk over vertex subsets whose complement keeps minimum
/// degree at least `g`. Vertices skipped over are kept for good, so a kept
/// vertex whose residual degree drops below `g` prunes the branch.
pub(crate) struct SubsetWalk<'a> {
    graph: &'a Graph,
    g: usize,
    removed: FixedBitSet,
    chosen: Vec<usize>,
    lost: Vec<usize>,
    pending: u64,
    budget: &'a Budget,
}

impl<'a> SubsetWalk<'a> {
    pub(crate) fn new(graph: &'a Graph, g: usize, budget: &'a Budget) -> Self {
        let n = graph.vertex_count();
        SubsetWalk {
            graph,
            g,
            removed: FixedBitSet::with_capacity(n),
            chosen: Vec::new(),
            lost: vec![0; n],
            pending: 0,
            budget,
        }
    }

    pub(crate) fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub(crate) fn removed(&self) -> &FixedBitSet {
        &self.removed
    }

    fn residual(&self, x: usize) -> usize {
        self.graph.degree(x) - self.lost[x]
    }

    fn add(&mut self, v: usize) -> bool {
        self.removed.insert(v);
        self.chosen.push(v);
        let mut ok = true;
        for &w in self.graph.neighbors(v) {
            self.lost[w] += 1;
            if w < v && !self.removed[w] && self.residual(w) < self.g {
                ok = false;
            }
        }
        ok
    }

    fn remove(&mut self, v: usize) {
        self.removed.set(v, false);
        self.chosen.pop();
        for &w in self.graph.neighbors(v) {
            self.lost[w] -= 1;
        }
    }

    fn tick(&mut self) -> bool {
        self.pending += 1;
        if self.pending >= CHARGE_EVERY {
            let units = std::mem::take(&mut self.pending);
            return self.budget.charge(units);
        }
        true
    }

    fn leaf_ok(&self) -> bool {
        let last = *self.chosen.last().expect("nonempty");
        (last + 1..self.graph.vertex_count()).all(|x| self.removed[x] || self.residual(x) >= self.g)
    }

    fn dfs<F: FnMut(&Self) -> bool>(&mut self, start: usize, left: usize, visit: &mut F) -> Walk {
        if !self.tick() {
            return Walk::OutOfBudget;
        }
        if left == 0 {
            if self.leaf_ok() && visit(self) {
                return Walk::Stopped;
            }
            return Walk::Done;
        }
        let n = self.graph.vertex_count();
        for v in start..=(n - left) {
            if v > start && self.residual(v - 1) < self.g {
                break;
            }
            let flow = if self.add(v) { self.dfs(v + 1, left - 1, visit) } else { Walk::Done };
            if flow != Walk::Done {
                return flow;
            }
            self.remove(v);
        }
        Walk::Done
    }

    /// Visits, in lexicographic order, every `k`-subset with smallest element
    /// `root` whose removal leaves minimum degree at least `g`. The visitor
    /// returns true to stop; the walk then keeps the stopping subset chosen.
    pub(crate) fn rooted<F: FnMut(&Self) -> bool>(&mut self, root: usize, k: usize, mut visit: F) -> Walk {
        debug_assert!(self.chosen.is_empty() && k >= 1);
        if (0..root).any(|x| self.graph.degree(x) < self.g) {
            return Walk::Done;
        }
        let flow = if self.add(root) { self.dfs(root + 1, k - 1, &mut visit) } else { Walk::Done };
        let units = std::mem::take(&mut self.pending);
        let budget_ok = self.budget.charge(units);
        if flow != Walk::Stopped {
            self.remove(root);
        }
        match flow {
            Walk::Done if !budget_ok => Walk::OutOfBudget,
            other => other,
        }
    }
}

/// All `g`-good-neighbor conditional faulty sets with at most `max_size`
/// members, ordered by size and then lexicographically.
#[derive(Debug, Clone)]
pub struct GoodSetEnumeration {
    pub sets: Vec<FaultSet>,
    /// False when the budget ran out; `sets` is then a prefix of the order.
    pub complete: bool,
}

pub fn good_neighbor_sets(graph: &Graph, g: usize, max_size: usize, budget: &Budget) -> GoodSetEnumeration {
    let n = graph.vertex_count();
    let mut sets = Vec::new();
    if graph.min_degree_without(&FixedBitSet::with_capacity(n)).is_none_or(|d| d >= g) {
        sets.push(FaultSet::empty());
    }
    let mut walk = SubsetWalk::new(graph, g, budget);
    for k in 1..=max_size.min(n) {
        for root in 0..=(n - k) {
            let flow = walk.rooted(root, k, |w| {
                sets.push(FaultSet::new(w.chosen().iter().copied()));
                false
            });
            if flow == Walk::OutOfBudget {
                return GoodSetEnumeration { sets, complete: false };
            }
        }
    }
    GoodSetEnumeration { sets, complete: true }
}
