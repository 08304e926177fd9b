mod common;

use common::*;
use letq::diagnosis::{mm_distinguishable, pmc_distinguishable, Model};
use letq::fault::FaultSet;
use letq::topology::Topology;

fn check_against_definition(model: Model) {
    let topo = Topology::letq(1, 1).unwrap();
    let g = topo.graph();
    let tests = match model {
        Model::Pmc => pmc_tests(g),
        Model::MmStar => mm_tests(g),
    };
    let sets = subsets_up_to(8, 2);
    let syndromes: Vec<Vec<bool>> = sets.iter().map(|&f| consistent_syndromes(&tests, f)).collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let expected = !syndromes[i].iter().zip(&syndromes[j]).any(|(&x, &y)| x && y);
            let f1 = FaultSet::new(members(sets[i]));
            let f2 = FaultSet::new(members(sets[j]));
            let r = match model {
                Model::Pmc => pmc_distinguishable(&topo, &f1, &f2),
                Model::MmStar => mm_distinguishable(&topo, &f1, &f2),
            }
            .unwrap();
            assert_eq!(r.is_distinguishable(), expected, "{model} {f1:?} {f2:?}");
        }
    }
}

#[test]
fn pmc_matches_syndrome_definition() {
    check_against_definition(Model::Pmc);
}

#[test]
fn mm_matches_syndrome_definition() {
    check_against_definition(Model::MmStar);
}

#[test]
fn oracle_test_counts() {
    let topo = Topology::letq(1, 1).unwrap();
    assert_eq!(pmc_tests(topo.graph()).len(), 16);
    assert_eq!(mm_tests(topo.graph()).len(), 8);
}

// Adding a common vertex to an indistinguishable pair leaves F1 - F2 and
// F2 - F1 alone and only shrinks the fault-free part, so no separator can
// appear.
#[test]
fn common_augmentation_keeps_indistinguishability() {
    let topo = Topology::letq(1, 1).unwrap();
    let sets = subsets_up_to(8, 3);
    for model in [Model::Pmc, Model::MmStar] {
        let tests = match model {
            Model::Pmc => pmc_tests(topo.graph()),
            Model::MmStar => mm_tests(topo.graph()),
        };
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if distinguishable_by_definition(&tests, a, b) {
                    continue;
                }
                for x in 0..8 {
                    let (a2, b2) = (a | 1 << x, b | 1 << x);
                    if a2 == b2 {
                        continue;
                    }
                    let f1 = FaultSet::new(members(a2));
                    let f2 = FaultSet::new(members(b2));
                    let r = letq::diagnosis::distinguishable(&topo, model, &f1, &f2).unwrap();
                    assert!(!r.is_distinguishable(), "{model} {f1:?} {f2:?}");
                }
            }
        }
    }
}
