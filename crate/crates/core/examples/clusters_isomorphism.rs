//! Cluster partition of LeTQ(2,2), the halves along each coordinate and
//! the block-swap isomorphism LeTQ(1,3) -> LeTQ(3,1).

use letq::label::CubeParams;
use letq::topology::{cluster_partition, half_isomorphism, swap_isomorphism, Topology};

fn main() -> letq::error::Result<()> {
    let topo = Topology::letq(2, 2)?;
    let p = topo.letq_params()?;
    let parts = cluster_partition(&topo)?;
    println!(
        "{}: {} class-0 clusters of size {}, {} class-1 clusters of size {}",
        topo.kind(),
        parts.class0.len(),
        parts.class0[0].len(),
        parts.class1.len(),
        parts.class1[0].len()
    );
    println!("same-class cross edges: {}", parts.same_class_cross_edges(topo.graph()));
    println!("every cluster is an LTQ: {}", parts.clusters_match_ltq(&topo)?);

    for coord in p.coordinates() {
        for value in 0..=1u8 {
            match half_isomorphism(&topo, coord, value) {
                Ok((dec, map)) => println!(
                    "  {coord}={value}: {} cross edges, matching {}, half iso via {:?}",
                    dec.cross_edges.len(),
                    dec.cross_edges_form_matching(),
                    map.method
                ),
                Err(e) => println!("  {coord}={value}: {e}"),
            }
        }
    }

    let map = swap_isomorphism(CubeParams::new(1, 3)?)?;
    let src = CubeParams::new(1, 3)?;
    println!("\nswap LeTQ(1,3) -> LeTQ(3,1) ({:?}):", map.method);
    for u in [0, 1, 6, 31] {
        println!("  {} -> {}", letq::label::render(u, src.width()), letq::label::render(map.map[u], src.width()));
    }
    Ok(())
}
