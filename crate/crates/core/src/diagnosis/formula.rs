use crate::error::{param_err, Error, Result};
use crate::fault::FaultSet;
use crate::label::CubeParams;
use crate::structure::good_neighbor_fault_set;
use crate::topology::Topology;

use super::assignment::Model;

fn check_range(params: CubeParams, g: usize) -> Result<(usize, usize)> {
    if !params.is_normalized() {
        return param_err(format!("{params} has s > t; normalize with the swap map first"));
    }
    let (s, t) = (params.s() as usize, params.t() as usize);
    if g > s {
        return param_err(format!("g={g} exceeds s={s}"));
    }
    Ok((s, t))
}

/// Closed-form `g`-good-neighbor conditional diagnosability of `LeTQ(s,t)`.
pub fn tg_formula(params: CubeParams, g: usize, model: Model) -> Result<usize> {
    let (s, t) = check_range(params, g)?;
    let generic = (1usize << g) * (s - g + 2) - 1;
    match model {
        Model::Pmc => Ok(generic),
        Model::MmStar => match (g, s, t) {
            (0 | 1, 1, 1) => Ok(1),
            (0, _, _) => Ok(s + 1),
            (1, 2, _) => Ok(4),
            (1, _, _) => Ok(2 * s + 1),
            (_, 2.., _) => Ok(generic),
            _ => Err(Error::UnsupportedRegime(format!("no MM* value for {params} with g={g}"))),
        },
    }
}

/// An indistinguishable pair of `g`-good-neighbor conditional faulty sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub f1: FaultSet,
    pub f2: FaultSet,
}

impl WitnessPair {
    pub fn max_len(&self) -> usize {
        self.f1.len().max(self.f2.len())
    }
}

fn parse_pair(topo: &Topology, f1: &str, f2: &str) -> Result<WitnessPair> {
    Ok(WitnessPair { f1: FaultSet::parse_list(topo, f1)?, f2: FaultSet::parse_list(topo, f2)? })
}

/// The pair showing `t_g` cannot be larger than [`tg_formula`].
pub fn indistinguishable_witness(params: CubeParams, g: usize, model: Model) -> Result<WitnessPair> {
    let (s, t) = check_range(params, g)?;
    let topo = Topology::letq(params.s(), params.t())?;
    match model {
        Model::MmStar if s == 1 && t == 1 => parse_pair(&topo, "000,110", "101,011"),
        Model::MmStar if g == 1 && s == 2 => {
            let label = |a: &str, c: u8| format!("{a}{}{c}", "0".repeat(t));
            let shared: Vec<String> = ["00", "11", "10", "01"].iter().map(|a| label(a, 1)).collect();
            let list = |a: &str| format!("{},{}", label(a, 0), shared.join(","));
            parse_pair(&topo, &list("00"), &list("11"))
        }
        Model::MmStar if g == 0 => {
            let v = 0;
            let open = FaultSet::new(topo.neighbors(v).iter().copied());
            let mut closed = open.clone();
            closed.insert(v);
            Ok(WitnessPair { f1: open, f2: closed })
        }
        _ => {
            let w = good_neighbor_fault_set(params, g)?;
            Ok(WitnessPair { f1: w.boundary, f2: w.closed })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnosis::distinguishable;
    use crate::structure::is_g_good_neighbor_set;

    fn p(s: u32, t: u32) -> CubeParams {
        CubeParams::new(s, t).unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(tg_formula(p(1, 1), 1, Model::Pmc).unwrap(), 3);
        assert_eq!(tg_formula(p(1, 1), 1, Model::MmStar).unwrap(), 1);
        assert_eq!(tg_formula(p(2, 2), 1, Model::MmStar).unwrap(), 4);
        assert_eq!(tg_formula(p(1, 2), 0, Model::MmStar).unwrap(), 2);
        assert_eq!(tg_formula(p(1, 2), 1, Model::MmStar).unwrap(), 3);
        assert_eq!(tg_formula(p(3, 4), 1, Model::MmStar).unwrap(), 7);
        assert_eq!(tg_formula(p(3, 3), 2, Model::MmStar).unwrap(), 11);
        assert!(tg_formula(p(2, 2), 3, Model::Pmc).is_err());
        assert!(tg_formula(p(2, 1), 0, Model::Pmc).is_err());
    }

    #[test]
    fn special_pairs() {
        let w = indistinguishable_witness(p(1, 1), 1, Model::MmStar).unwrap();
        assert_eq!(w.f1.render(3), vec!["000", "110"]);
        assert_eq!(w.f2.render(3), vec!["011", "101"]);
        let w = indistinguishable_witness(p(2, 2), 1, Model::MmStar).unwrap();
        assert_eq!(w.f1.render(5), vec!["00000", "00001", "01001", "10001", "11001"]);
        assert_eq!(w.f2.render(5), vec!["00001", "01001", "10001", "11000", "11001"]);
        let w = indistinguishable_witness(p(1, 1), 1, Model::Pmc).unwrap();
        assert_eq!((w.f1.len(), w.f2.len()), (2, 4));
    }

    #[test]
    fn every_witness_is_an_indistinguishable_good_pair() {
        for s in 1..=3u32 {
            for t in s..=(6 - s) {
                let topo = Topology::letq(s, t).unwrap();
                for g in 0..=s as usize {
                    for model in [Model::Pmc, Model::MmStar] {
                        let w = indistinguishable_witness(p(s, t), g, model).unwrap();
                        let tg = tg_formula(p(s, t), g, model).unwrap();
                        let ctx = format!("({s},{t}) g={g} {model}");
                        assert!(w.max_len() <= tg + 1, "{ctx}");
                        assert!(is_g_good_neighbor_set(&topo, &w.f1, g), "{ctx}");
                        assert!(is_g_good_neighbor_set(&topo, &w.f2, g), "{ctx}");
                        assert!(!distinguishable(&topo, model, &w.f1, &w.f2).unwrap().is_distinguishable(), "{ctx}");
                    }
                }
            }
        }
    }
}
