use proptest::prelude::*;

use letq::budget::Budget;
use letq::diagnosis::{
    build_assignment, diagnose, distinguishable, generate_syndrome, is_consistent, tg_formula, AdversaryPolicy, Model,
};
use letq::fault::FaultSet;
use letq::label::CubeParams;
use letq::structure::{good_neighbor_sets, is_g_good_neighbor_set, is_rg_cut};
use letq::topology::{cluster_partition, Topology};

fn params(max_sum: u32) -> impl Strategy<Value = (u32, u32)> {
    (1..max_sum).prop_flat_map(move |s| (Just(s), 1..=max_sum - s))
}

fn topo_and_set(max_sum: u32) -> impl Strategy<Value = (Topology, FaultSet)> {
    params(max_sum).prop_flat_map(|(s, t)| {
        let n = 1usize << (s + t + 1);
        (Just(Topology::letq(s, t).unwrap()), proptest::collection::btree_set(0..n, 0..n.min(12)))
            .prop_map(|(topo, set)| (topo, FaultSet::new(set)))
    })
}

fn model() -> impl Strategy<Value = Model> {
    prop_oneof![Just(Model::Pmc), Just(Model::MmStar)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjacency_is_symmetric_and_follows_the_degree_law((s, t) in params(8)) {
        let topo = Topology::letq(s, t).unwrap();
        let p = topo.letq_params().unwrap();
        let g = topo.graph();
        prop_assert_eq!(g.vertex_count(), 1usize << (s + t + 1));
        for u in 0..g.vertex_count() {
            prop_assert!(!g.has_edge(u, u));
            for &v in g.neighbors(u) {
                prop_assert!(g.has_edge(v, u));
            }
            let want = if p.class_bit(u) == 0 { s + 1 } else { t + 1 };
            prop_assert_eq!(g.degree(u), want as usize);
        }
    }

    #[test]
    fn cross_neighbor_is_a_unique_involution((s, t) in params(8)) {
        let topo = Topology::letq(s, t).unwrap();
        let p = topo.letq_params().unwrap();
        let g = topo.graph();
        for u in 0..g.vertex_count() {
            let across: Vec<usize> =
                g.neighbors(u).iter().copied().filter(|&v| p.class_bit(v) != p.class_bit(u)).collect();
            prop_assert_eq!(across.len(), 1);
            let star = across[0];
            prop_assert_eq!(star, u ^ 1);
            prop_assert!(g.neighbors(star).contains(&u));
        }
    }

    #[test]
    fn cluster_mates_cross_into_distinct_clusters((s, t) in params(7)) {
        let topo = Topology::letq(s, t).unwrap();
        let parts = cluster_partition(&topo).unwrap();
        let n = topo.vertex_count();
        let mut owner = vec![usize::MAX; n];
        for (i, c) in parts.class0.iter().chain(&parts.class1).enumerate() {
            for &v in c {
                owner[v] = i;
            }
        }
        for c in parts.class0.iter().chain(&parts.class1) {
            let mut seen: Vec<usize> = c.iter().map(|&u| owner[u ^ 1]).collect();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), c.len());
        }
    }

    #[test]
    fn rg_cut_is_monotone_in_g((topo, f) in topo_and_set(5), g in 0usize..4) {
        if is_rg_cut(&topo, &f, g) {
            for lower in 0..g {
                prop_assert!(is_rg_cut(&topo, &f, lower));
            }
        }
    }

    #[test]
    fn verdicts_are_symmetric((topo, f1) in topo_and_set(5), extra in 0usize..64, m in model()) {
        let n = topo.vertex_count();
        let mut f2 = f1.clone();
        let x = extra % n;
        if !f2.insert(x) {
            f2 = f2.difference(&FaultSet::new([x]));
        }
        let a = distinguishable(&topo, m, &f1, &f2).unwrap();
        let b = distinguishable(&topo, m, &f2, &f1).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn generated_syndromes_are_consistent((topo, f) in topo_and_set(5), seed in any::<u64>(), m in model()) {
        let a = build_assignment(&topo, m);
        for policy in AdversaryPolicy::standard(seed) {
            let syn = generate_syndrome(&a, &f, policy);
            prop_assert!(is_consistent(&syn, &f), "{}", policy);
        }
    }

    #[test]
    fn pmc_diagnosis_recovers_small_good_sets(idx in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let topo = Topology::letq(1, 2).unwrap();
        let t = tg_formula(topo.letq_params().unwrap(), 1, Model::Pmc).unwrap();
        let sets = good_neighbor_sets(topo.graph(), 1, t, &Budget::unlimited()).sets;
        let f = idx.get(&sets);
        let a = build_assignment(&topo, Model::Pmc);
        let syn = generate_syndrome(&a, f, AdversaryPolicy::SeededRandom(seed));
        let d = diagnose(&syn, 1, t, &Budget::unlimited());
        prop_assert_eq!(d.unique(), Some(f));
    }
}

#[test]
fn union_of_two_bounded_sets_never_covers_the_cube() {
    for s in 1..6u32 {
        for t in s..=6 - s {
            let p = CubeParams::new(s, t).unwrap();
            for g in 0..=s as usize {
                let bound = tg_formula(p, g, Model::Pmc).unwrap();
                assert_eq!(bound, (1 << g) * (s as usize - g + 2) - 1);
                assert!(2 * bound < p.vertex_count(), "{p} g={g}");
            }
        }
    }
}

#[test]
fn good_neighbor_sets_match_the_predicate() {
    let topo = Topology::letq(1, 1).unwrap();
    for g in 0..=2 {
        let listed = good_neighbor_sets(topo.graph(), g, 8, &Budget::unlimited());
        assert!(listed.complete);
        let direct: Vec<u64> = (0u64..256)
            .filter(|&m| is_g_good_neighbor_set(&topo, &FaultSet::new((0..8).filter(|v| m >> v & 1 == 1)), g))
            .collect();
        assert_eq!(listed.sets.len(), direct.len(), "g={g}");
    }
}
