//! Closed-form R^g-connectivity next to the exhaustive search, and a
//! budget-limited run that ends with a partial report.

use letq::structure::{kappa_g_bruteforce, kappa_g_formula, KappaOptions};
use letq::topology::Topology;

fn main() -> letq::error::Result<()> {
    let options = KappaOptions { jobs: 0, ..KappaOptions::default() };
    for (s, t) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (1, 4)] {
        let topo = Topology::letq(s, t)?;
        let p = topo.letq_params()?;
        for g in 0..=s as usize {
            let report = kappa_g_bruteforce(&topo, g, &options)?;
            println!(
                "{} g={g}: formula {:?} certified {:?} components {:?} witness {:?}",
                topo.kind(),
                kappa_g_formula(p, g).ok(),
                report.certified,
                report.components,
                report.witness.as_ref().map(|w| w.render(p.width()))
            );
        }
    }

    let big = Topology::letq(3, 3)?;
    let capped = KappaOptions { budget: 1_000_000, jobs: 0 };
    let report = kappa_g_bruteforce(&big, 2, &capped)?;
    println!(
        "{} g=2 with budget {}: partial {}, lower bound {}, construction cut size {:?}",
        big.kind(),
        capped.budget,
        report.partial,
        report.lower_bound,
        report.witness.as_ref().map(|w| w.len())
    );
    Ok(())
}
