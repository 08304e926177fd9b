//! Build LeTQ(1,2) and LTQ_3, print counts and the three export formats.

use letq::export::{adjacency_json, dot, edge_list};
use letq::topology::Topology;

fn main() -> letq::error::Result<()> {
    let letq = Topology::letq(1, 2)?;
    println!("{}: {} vertices, {} edges", letq.kind(), letq.vertex_count(), letq.graph().edge_count());
    for v in [0, 1, 5] {
        let nbrs: Vec<String> = letq.graph().neighbors(v).iter().map(|&u| letq.render(u)).collect();
        println!("  N({}) = {{{}}}", letq.render(v), nbrs.join(", "));
    }
    println!("\nedge list:\n{}", edge_list(&letq));
    println!("DOT with clusters:\n{}", dot(&letq, true));

    let ltq = Topology::ltq(3)?;
    println!("{}", serde_json::to_string_pretty(&adjacency_json(&ltq))?);
    Ok(())
}
