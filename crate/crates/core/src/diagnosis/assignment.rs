use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fault::FaultSet;
use crate::graph::Graph;
use crate::label::render;
use crate::topology::Topology;

/// Comparison model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "pmc")]
    Pmc,
    #[serde(rename = "mm")]
    MmStar,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Pmc => "PMC",
            Model::MmStar => "MM*",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pmc" => Ok(Model::Pmc),
            "mm" | "mm*" | "mmstar" => Ok(Model::MmStar),
            _ => Err(Error::Parameter(format!("unknown model {s:?} (expected pmc or mm)"))),
        }
    }
}

/// A single test. Under PMC `tester` examines `tested`; under MM* `tester`
/// compares the outputs of `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Test {
    Pmc { tester: usize, tested: usize },
    Mm { u: usize, v: usize, tester: usize },
}

impl Test {
    pub fn tester(&self) -> usize {
        match *self {
            Test::Pmc { tester, .. } | Test::Mm { tester, .. } => tester,
        }
    }

    /// Outcome a fault-free tester reports when `faulty` holds.
    pub fn expected(&self, faulty: impl Fn(usize) -> bool) -> bool {
        match *self {
            Test::Pmc { tested, .. } => faulty(tested),
            Test::Mm { u, v, .. } => faulty(u) || faulty(v),
        }
    }

    /// `(u,v)` for PMC, `(u,v)_w` for MM*.
    pub fn render(&self, width: u32) -> String {
        match *self {
            Test::Pmc { tester, tested } => format!("({},{})", render(tester, width), render(tested, width)),
            Test::Mm { u, v, tester } => {
                format!("({},{})_{}", render(u, width), render(v, width), render(tester, width))
            }
        }
    }
}

/// Every test a model performs on a topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestAssignment {
    model: Model,
    width: u32,
    graph: Graph,
    tests: Vec<Test>,
}

impl TestAssignment {
    pub fn build(topo: &Topology, model: Model) -> Self {
        let g = topo.graph();
        let mut tests = Vec::new();
        for w in 0..g.vertex_count() {
            let nbrs = g.neighbors(w);
            match model {
                Model::Pmc => tests.extend(nbrs.iter().map(|&v| Test::Pmc { tester: w, tested: v })),
                Model::MmStar => {
                    for (i, &u) in nbrs.iter().enumerate() {
                        tests.extend(nbrs[i + 1..].iter().map(|&v| Test::Mm { u, v, tester: w }));
                    }
                }
            }
        }
        TestAssignment { model, width: topo.width(), graph: g.clone(), tests }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tests(&self) -> &[Test] {
        &self.tests
    }

    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }
}

pub fn build_assignment(topo: &Topology, model: Model) -> TestAssignment {
    TestAssignment::build(topo, model)
}

/// What faulty testers report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdversaryPolicy {
    AllZeros,
    AllOnes,
    SeededRandom(u64),
}

impl AdversaryPolicy {
    /// The three policies used by round-trip checks.
    pub fn standard(seed: u64) -> [AdversaryPolicy; 3] {
        [AdversaryPolicy::AllZeros, AdversaryPolicy::AllOnes, AdversaryPolicy::SeededRandom(seed)]
    }
}

impl fmt::Display for AdversaryPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversaryPolicy::AllZeros => f.write_str("all-zeros"),
            AdversaryPolicy::AllOnes => f.write_str("all-ones"),
            AdversaryPolicy::SeededRandom(s) => write!(f, "seeded-random({s})"),
        }
    }
}

/// Outcomes of every test of an assignment, in assignment order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syndrome<'a> {
    assignment: &'a TestAssignment,
    outcomes: Vec<bool>,
}

#[derive(Serialize)]
struct OutcomeJson {
    test: String,
    outcome: u8,
}

impl<'a> Syndrome<'a> {
    pub fn new(assignment: &'a TestAssignment, outcomes: Vec<bool>) -> Result<Self> {
        if outcomes.len() != assignment.len() {
            return Err(Error::Input(format!(
                "syndrome has {} outcomes for {} tests",
                outcomes.len(),
                assignment.len()
            )));
        }
        Ok(Syndrome { assignment, outcomes })
    }

    pub fn zeros(assignment: &'a TestAssignment) -> Self {
        Syndrome { assignment, outcomes: vec![false; assignment.len()] }
    }

    pub fn assignment(&self) -> &'a TestAssignment {
        self.assignment
    }

    pub fn outcomes(&self) -> &[bool] {
        &self.outcomes
    }

    pub fn outcome(&self, i: usize) -> bool {
        self.outcomes[i]
    }

    /// Tests reading 1, with their positions.
    pub fn positives(&self) -> impl Iterator<Item = (usize, &Test)> + '_ {
        self.assignment.tests.iter().enumerate().filter(|&(i, _)| self.outcomes[i])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let w = self.assignment.width;
        let rows: Vec<OutcomeJson> = self
            .assignment
            .tests
            .iter()
            .zip(&self.outcomes)
            .map(|(t, &o)| OutcomeJson { test: t.render(w), outcome: o as u8 })
            .collect();
        serde_json::to_value(rows).expect("plain data serializes")
    }
}

/// The syndrome produced when exactly `fault` is faulty.
pub fn generate_syndrome<'a>(
    assignment: &'a TestAssignment,
    fault: &FaultSet,
    policy: AdversaryPolicy,
) -> Syndrome<'a> {
    let mut rng = match policy {
        AdversaryPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let outcomes = assignment
        .tests
        .iter()
        .map(|t| {
            if !fault.contains(t.tester()) {
                return t.expected(|x| fault.contains(x));
            }
            match policy {
                AdversaryPolicy::AllZeros => false,
                AdversaryPolicy::AllOnes => true,
                AdversaryPolicy::SeededRandom(_) => rng.as_mut().expect("seeded").gen(),
            }
        })
        .collect();
    Syndrome { assignment, outcomes }
}

/// A syndrome consistent with both sets, if one exists. Tests whose tester
/// is faulty in both read 0.
pub fn common_syndrome<'a>(assignment: &'a TestAssignment, f1: &FaultSet, f2: &FaultSet) -> Option<Syndrome<'a>> {
    let mut outcomes = Vec::with_capacity(assignment.len());
    for t in &assignment.tests {
        let w = t.tester();
        let e1 = (!f1.contains(w)).then(|| t.expected(|x| f1.contains(x)));
        let e2 = (!f2.contains(w)).then(|| t.expected(|x| f2.contains(x)));
        outcomes.push(match (e1, e2) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => false,
        });
    }
    Some(Syndrome { assignment, outcomes })
}

/// True iff every test with a fault-free tester reads what `fault` predicts.
pub fn is_consistent(syndrome: &Syndrome<'_>, fault: &FaultSet) -> bool {
    syndrome
        .assignment
        .tests
        .iter()
        .zip(&syndrome.outcomes)
        .all(|(t, &o)| fault.contains(t.tester()) || t.expected(|x| fault.contains(x)) == o)
}
