//! Isomorphism search by colour refinement with individualization.
//!
//! Both graphs are refined together as one disjoint union, so colour ids are
//! directly comparable between them. Initial colours combine degree with the
//! number of 4-cycles through each vertex.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Search-tree nodes explored before giving up.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoSearch {
    /// `map[v]` is the image in the second graph of vertex `v` of the first.
    Found(Vec<usize>),
    NotIsomorphic,
    GaveUp {
        nodes: u64,
    },
}

/// Pairs of vertices at distance two, counted with multiplicity, give the
/// number of 4-cycles through each vertex.
fn four_cycles_through(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut count = vec![0usize; n];
    let mut touched = Vec::new();
    (0..n)
        .map(|v| {
            for &w in g.neighbors(v) {
                for &x in g.neighbors(w) {
                    if x != v {
                        if count[x] == 0 {
                            touched.push(x);
                        }
                        count[x] += 1;
                    }
                }
            }
            let total = touched.iter().map(|&x| count[x] * (count[x] - 1) / 2).sum();
            for &x in &touched {
                count[x] = 0;
            }
            touched.clear();
            total
        })
        .collect()
}

struct Union<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    n: usize,
}

impl Union<'_> {
    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (g, shift) = if v < self.n { (self.g1, 0) } else { (self.g2, self.n) };
        g.neighbors(v - shift).iter().map(move |&w| w + shift)
    }

    /// Refines `colors` to the coarsest equitable partition below it, with
    /// canonical (sort-based) colour ids.
    fn refine(&self, colors: &mut [u32]) {
        let total = colors.len();
        let mut classes = count_classes(colors);
        loop {
            let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..total)
                .map(|v| {
                    let mut nb: Vec<u32> = self.neighbors(v).map(|w| colors[w]).collect();
                    nb.sort_unstable();
                    (colors[v], nb, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut next = 0u32;
            for i in 0..sigs.len() {
                if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                    next += 1;
                }
                colors[sigs[i].2] = next;
            }
            let now = next as usize + 1;
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    /// Colour classes must have the same size on both sides.
    fn balanced(&self, colors: &[u32]) -> bool {
        let k = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut diff = vec![0i64; k];
        for (v, &c) in colors.iter().enumerate() {
            diff[c as usize] += if v < self.n { 1 } else { -1 };
        }
        diff.iter().all(|&d| d == 0)
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub fn find_isomorphism(g1: &Graph, g2: &Graph, limits: SearchLimits) -> IsoSearch {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() || g1.degree_sequence() != g2.degree_sequence() {
        return IsoSearch::NotIsomorphic;
    }
    let u = Union { g1, g2, n };
    let c1 = four_cycles_through(g1);
    let c2 = four_cycles_through(g2);
    let mut keys: Vec<(usize, usize)> =
        (0..n).map(|v| (g1.degree(v), c1[v])).chain((0..n).map(|v| (g2.degree(v), c2[v]))).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let mut colors: Vec<u32> = keys.drain(..).map(|k| sorted.binary_search(&k).unwrap() as u32).collect();
    let mut nodes = 0u64;
    match search(&u, &mut colors, &mut nodes, limits) {
        Some(Some(map)) => IsoSearch::Found(map),
        Some(None) => IsoSearch::NotIsomorphic,
        None => IsoSearch::GaveUp { nodes },
    }
}

/// `Some(Some(map))` found, `Some(None)` exhausted, `None` out of budget.
fn search(u: &Union<'_>, colors: &mut [u32], nodes: &mut u64, limits: SearchLimits) -> Option<Option<Vec<usize>>> {
    *nodes += 1;
    if *nodes > limits.max_nodes {
        return None;
    }
    u.refine(colors);
    if !u.balanced(colors) {
        return Some(None);
    }
    let n = u.n;
    let k = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut size = vec![0usize; k];
    for &c in &colors[..n] {
        size[c as usize] += 1;
    }
    // Smallest non-singleton cell, lowest colour on ties.
    let Some(cell) = (0..k).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c)) else {
        let mut pos = vec![0usize; k];
        for v in n..2 * n {
            pos[colors[v] as usize] = v - n;
        }
        let map: Vec<usize> = (0..n).map(|v| pos[colors[v] as usize]).collect();
        let ok = u.g1.edges().all(|(a, b)| u.g2.has_edge(map[a], map[b]));
        return Some(ok.then_some(map));
    };
    let cell = cell as u32;
    let pick = (0..n).find(|&v| colors[v] == cell).unwrap();
    let fresh = k as u32;
    for w in (n..2 * n).filter(|&w| colors[w] == cell) {
        let mut branch = colors.to_vec();
        branch[pick] = fresh;
        branch[w] = fresh;
        match search(u, &mut branch, nodes, limits)? {
            Some(map) => return Some(Some(map)),
            None => continue,
        }
    }
    Some(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::edge_defects;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn relabeled_cycle() {
        let g1 = cycle(8);
        let perm = [3, 7, 1, 0, 5, 2, 6, 4];
        let g2 = Graph::from_edges(8, g1.edges().map(|(a, b)| (perm[a], perm[b]))).unwrap();
        match find_isomorphism(&g1, &g2, SearchLimits::default()) {
            IsoSearch::Found(map) => assert_eq!(edge_defects(&g1, &g2, &map), Some(0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn distinguishes_c6_from_two_triangles() {
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(find_isomorphism(&cycle(6), &two, SearchLimits::default()), IsoSearch::NotIsomorphic);
    }

    #[test]
    fn cube_is_not_ltq3() {
        let q3 =
            Graph::from_edges(8, (0..8).flat_map(|u| (0..3).map(move |k| (u, u ^ (1 << k)))).filter(|(u, v)| u < v))
                .unwrap();
        let ltq3 = crate::topology::Topology::ltq(3).unwrap();
        assert_eq!(find_isomorphism(&q3, ltq3.graph(), SearchLimits::default()), IsoSearch::NotIsomorphic);
    }
}
