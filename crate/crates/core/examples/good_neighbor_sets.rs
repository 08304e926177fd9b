//! The fault sets N(A) and N[A] around the cube A, and a census of small
//! g-good-neighbor sets in LeTQ(1,2).

use letq::budget::Budget;
use letq::label::CubeParams;
use letq::structure::{good_neighbor_fault_set, good_neighbor_sets, is_g_good_neighbor_set};
use letq::topology::Topology;

fn main() -> letq::error::Result<()> {
    let p = CubeParams::new(2, 3)?;
    let topo = Topology::letq(2, 3)?;
    for g in 0..=2 {
        let w = good_neighbor_fault_set(p, g)?;
        println!(
            "g={g}: |A|={} |N(A)|={} |N[A]|={}  N(A) good: {}  N[A] good: {}",
            w.core.len(),
            w.boundary.len(),
            w.closed.len(),
            is_g_good_neighbor_set(&topo, &w.boundary, g),
            is_g_good_neighbor_set(&topo, &w.closed, g)
        );
        println!("  N(A) = {:?}", w.boundary.render(p.width()));
    }

    let small = Topology::letq(1, 2)?;
    for g in 0..=1 {
        let e = good_neighbor_sets(small.graph(), g, 3, &Budget::unlimited());
        let mut by_size = [0usize; 4];
        for f in &e.sets {
            by_size[f.len()] += 1;
        }
        println!("{} g={g}: sets of size 0..=3 -> {:?}", small.kind(), by_size);
    }
    Ok(())
}
