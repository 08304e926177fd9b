//! Exhaustive and sampled checks of the conditional diagnosability, plus
//! an over-claim that produces a counterexample.

use letq::diagnosis::{tg_formula, verify_tg, Model, VerifyMode, VerifyOptions};
use letq::label::CubeParams;
use letq::topology::Topology;

fn main() -> letq::error::Result<()> {
    let options = VerifyOptions::default();
    for (s, t, g, model) in [(1, 1, 1, Model::Pmc), (1, 1, 0, Model::MmStar), (1, 2, 1, Model::Pmc)] {
        let topo = Topology::letq(s, t)?;
        let r = verify_tg(&topo, g, model, VerifyMode::Exhaustive, &options)?;
        println!("{} g={g} {model}: T={} {:?} after {} pairs", topo.kind(), r.formula_tg, r.verdict, r.checked_pairs);
    }

    let topo = Topology::letq(2, 2)?;
    let mode = VerifyMode::Sampled { samples: 20_000, seed: 7 };
    let r = verify_tg(&topo, 1, Model::MmStar, mode, &options)?;
    println!("{} g=1 MM* sampled: T={} {:?}", topo.kind(), r.formula_tg, r.verdict);
    println!(
        "closed forms for LeTQ(3,5): PMC {:?}, MM* {:?}",
        (0..=3).map(|g| tg_formula(CubeParams::new(3, 5).unwrap(), g, Model::Pmc).unwrap()).collect::<Vec<_>>(),
        (0..=3).map(|g| tg_formula(CubeParams::new(3, 5).unwrap(), g, Model::MmStar).unwrap()).collect::<Vec<_>>()
    );

    let small = Topology::letq(1, 1)?;
    let over = VerifyOptions { claimed: Some(3), ..VerifyOptions::default() };
    let r = verify_tg(&small, 0, Model::Pmc, VerifyMode::Exhaustive, &over)?;
    println!("\nclaiming T=3 for {} g=0 PMC:\n{}", small.kind(), serde_json::to_string_pretty(&r.to_json())?);
    Ok(())
}
