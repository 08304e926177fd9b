//! Triangle-freeness, common-neighbor counts and the smallest subgraph of
//! minimum degree g, over a few small cubes.

use letq::structure::{is_triangle_free, max_common_neighbors, min_order_with_min_degree, MinOrder};
use letq::topology::Topology;

fn main() -> letq::error::Result<()> {
    for (s, t) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
        let topo = Topology::letq(s, t)?;
        let g = topo.graph();
        print!(
            "{}: triangle-free {}, max common neighbors {}",
            topo.kind(),
            is_triangle_free(g),
            max_common_neighbors(g)
        );
        for level in 0..=s.min(t) as usize {
            match min_order_with_min_degree(&topo, level)? {
                MinOrder::Exact { order, .. } => print!(", g={level}: {order}"),
                MinOrder::Bound { lower, .. } => print!(", g={level}: <= {lower}"),
                MinOrder::None => print!(", g={level}: none"),
            }
        }
        println!();
    }
    Ok(())
}
