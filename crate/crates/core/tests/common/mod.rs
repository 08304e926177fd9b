//! Definition-level syndrome oracle shared by the integration tests and
//! the acceptance harness. Written against the graph alone: it does not
//! use the crate's test assignment, consistency check or separators.

#![allow(dead_code)]

use letq::graph::Graph;

/// A test as (tester, compared vertices). PMC tests compare one vertex.
pub struct RawTest {
    pub tester: usize,
    pub targets: Vec<usize>,
}

pub fn pmc_tests(g: &Graph) -> Vec<RawTest> {
    g.edges()
        .flat_map(|(u, v)| [RawTest { tester: u, targets: vec![v] }, RawTest { tester: v, targets: vec![u] }])
        .collect()
}

pub fn mm_tests(g: &Graph) -> Vec<RawTest> {
    let mut out = Vec::new();
    for w in 0..g.vertex_count() {
        let nb = g.neighbors(w);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                out.push(RawTest { tester: w, targets: vec![nb[i], nb[j]] });
            }
        }
    }
    out
}

/// Every syndrome (as a bit vector over `tests`) some behaviour of the
/// faulty testers in `faulty` can produce, found by scanning all 2^m.
pub fn consistent_syndromes(tests: &[RawTest], faulty: u64) -> Vec<bool> {
    let m = tests.len();
    assert!(m <= 20, "too many tests to enumerate");
    let is_faulty = |v: usize| faulty >> v & 1 == 1;
    (0u64..1 << m)
        .map(|x| {
            tests
                .iter()
                .enumerate()
                .all(|(i, t)| is_faulty(t.tester) || (x >> i & 1 == 1) == t.targets.iter().any(|&v| is_faulty(v)))
        })
        .collect()
}

/// True iff no syndrome is consistent with both fault sets.
pub fn distinguishable_by_definition(tests: &[RawTest], f1: u64, f2: u64) -> bool {
    let a = consistent_syndromes(tests, f1);
    let b = consistent_syndromes(tests, f2);
    !a.iter().zip(&b).any(|(&x, &y)| x && y)
}

/// All subsets of `0..n` with at most `k` members, as bitmasks.
pub fn subsets_up_to(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize <= k).collect()
}

pub fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}
