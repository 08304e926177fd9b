//! Inject faults, let faulty testers answer under each adversary policy,
//! and diagnose the syndrome.

use letq::budget::Budget;
use letq::diagnosis::{build_assignment, diagnose, generate_syndrome, tg_formula, AdversaryPolicy, Model};
use letq::fault::FaultSet;
use letq::topology::Topology;

fn main() -> letq::error::Result<()> {
    let topo = Topology::letq(1, 2)?;
    let p = topo.letq_params()?;
    let g = 1;
    for model in [Model::Pmc, Model::MmStar] {
        let t = tg_formula(p, g, model)?;
        let assignment = build_assignment(&topo, model);
        let fault = FaultSet::parse_list(&topo, "0000,0001")?;
        println!("{} {model}: {} tests, T={t}, injected {:?}", topo.kind(), assignment.len(), fault.render(p.width()));
        for policy in AdversaryPolicy::standard(11) {
            let syndrome = generate_syndrome(&assignment, &fault, policy);
            let d = diagnose(&syndrome, g, t, &Budget::unlimited());
            let found: Vec<_> = d.candidates.iter().map(|c| c.render(p.width())).collect();
            println!("  {policy}: {} positive, candidates {found:?}", syndrome.positives().count());
        }
    }
    Ok(())
}
