//! Structural oracles, good-neighbor fault-set constructions and
//! `R^g`-vertex-connectivity.

mod cut;
mod oracles;
mod subsets;
mod witness;

pub use cut::{is_rg_cut, kappa_g_bruteforce, kappa_g_formula, CutReport, KappaOptions};
pub use oracles::{
    is_triangle_free, max_common_neighbors, min_order_with_min_degree, MinOrder, MIN_ORDER_EXHAUSTIVE_LIMIT,
};
pub use subsets::{good_neighbor_sets, GoodSetEnumeration};
pub(crate) use subsets::{SubsetWalk, Walk};
pub use witness::{good_neighbor_fault_set, is_g_good_neighbor_set, GoodNeighborWitness};
