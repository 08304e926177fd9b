use fixedbitset::FixedBitSet;

use crate::budget::Budget;
use crate::fault::FaultSet;
use crate::structure::{SubsetWalk, Walk};

use super::assignment::{is_consistent, Syndrome};

/// Every `g`-good-neighbor conditional faulty set of size at most `T`
/// consistent with a syndrome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnosis {
    /// Ordered by size, then lexicographically.
    pub candidates: Vec<FaultSet>,
    /// False when the budget ran out before enumeration finished.
    pub complete: bool,
}

impl Diagnosis {
    /// The single candidate, if the syndrome pins one down.
    pub fn unique(&self) -> Option<&FaultSet> {
        match self.candidates.as_slice() {
            [only] if self.complete => Some(only),
            _ => None,
        }
    }
}

/// Enumerates candidate fault sets by size and then lexicographically.
pub fn diagnose(syndrome: &Syndrome<'_>, g: usize, max_size: usize, budget: &Budget) -> Diagnosis {
    let graph = syndrome.assignment().graph();
    let n = graph.vertex_count();
    let mut candidates = Vec::new();
    if graph.min_degree_without(&FixedBitSet::with_capacity(n)).is_none_or(|d| d >= g)
        && is_consistent(syndrome, &FaultSet::empty())
    {
        candidates.push(FaultSet::empty());
    }
    let mut walk = SubsetWalk::new(graph, g, budget);
    for k in 1..=max_size.min(n) {
        for root in 0..=(n - k) {
            let flow = walk.rooted(root, k, |w| {
                let f = FaultSet::new(w.chosen().iter().copied());
                if is_consistent(syndrome, &f) {
                    candidates.push(f);
                }
                false
            });
            if flow == Walk::OutOfBudget {
                return Diagnosis { candidates, complete: false };
            }
        }
    }
    Diagnosis { candidates, complete: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnosis::{build_assignment, common_syndrome, generate_syndrome, AdversaryPolicy, Model};
    use crate::topology::Topology;

    #[test]
    fn empty_fault_set() {
        let topo = Topology::letq(1, 2).unwrap();
        let a = build_assignment(&topo, Model::Pmc);
        let s = Syndrome::zeros(&a);
        for t in [0, 1, 3] {
            let d = diagnose(&s, 0, t, &Budget::unlimited());
            assert_eq!(d.candidates, vec![FaultSet::empty()]);
        }
    }

    #[test]
    fn cross_edge_fault_is_recovered() {
        let topo = Topology::letq(1, 1).unwrap();
        let a = build_assignment(&topo, Model::Pmc);
        let f = FaultSet::parse_list(&topo, "000,001").unwrap();
        for policy in AdversaryPolicy::standard(3) {
            let s = generate_syndrome(&a, &f, policy);
            let d = diagnose(&s, 1, 3, &Budget::unlimited());
            assert_eq!(d.unique(), Some(&f), "{policy}");
        }
    }

    #[test]
    fn mm_overclaim_is_ambiguous() {
        let topo = Topology::letq(1, 1).unwrap();
        let a = build_assignment(&topo, Model::MmStar);
        let f1 = FaultSet::parse_list(&topo, "000,110").unwrap();
        let f2 = FaultSet::parse_list(&topo, "101,011").unwrap();
        let s = common_syndrome(&a, &f1, &f2).unwrap();
        let d = diagnose(&s, 1, 2, &Budget::unlimited());
        assert!(d.candidates.contains(&f1) && d.candidates.contains(&f2));
        assert!(d.unique().is_none());
    }
}
