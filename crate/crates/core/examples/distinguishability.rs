//! Pairwise distinguishability under both models, with the separating
//! test that certifies each verdict.

use letq::diagnosis::{distinguishable, Model};
use letq::fault::FaultSet;
use letq::topology::Topology;

fn main() -> letq::error::Result<()> {
    let topo = Topology::letq(1, 1)?;
    let pairs = [("000,110", "101,011"), ("000", "000,001"), ("", "010"), ("000,001", "100,101")];
    for model in [Model::Pmc, Model::MmStar] {
        println!("{model}:");
        for (a, b) in pairs {
            let f1 = FaultSet::parse_list(&topo, a)?;
            let f2 = FaultSet::parse_list(&topo, b)?;
            let r = distinguishable(&topo, model, &f1, &f2)?;
            println!("  {{{a}}} vs {{{b}}}: {}", serde_json::to_string(&r.to_json(topo.width()))?);
        }
    }
    Ok(())
}
