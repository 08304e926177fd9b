//! PMC and MM* diagnosis: test assignments, syndromes, distinguishability,
//! conditional diagnosability and a brute-force decoder.

mod assignment;
mod distinguish;
mod formula;
mod solve;
mod verify;

pub use assignment::{
    build_assignment, common_syndrome, generate_syndrome, is_consistent, AdversaryPolicy, Model, Syndrome, Test,
    TestAssignment,
};
pub use distinguish::{
    distinguishable, mm_distinguishable, pmc_distinguishable, DistinguishReport, Separator, Verdict,
};
pub use formula::{indistinguishable_witness, tg_formula, WitnessPair};
pub use solve::{diagnose, Diagnosis};
pub use verify::{verify_tg, Outcome, VerifyMode, VerifyOptions, VerifyReport, WitnessCheck, EXHAUSTIVE_VERTEX_LIMIT};
