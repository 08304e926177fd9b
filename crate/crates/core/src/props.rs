//! Structural property suite run against a built or loaded topology.

use serde::Serialize;

use crate::label::{Coordinate, CubeParams};
use crate::structure::{is_triangle_free, max_common_neighbors, min_order_with_min_degree, MinOrder};
use crate::topology::{cluster_partition, half_isomorphism, Topology, TopologyKind};

/// Pairwise adjacency re-checks are skipped above this many vertices.
pub const CROSS_VALIDATE_LIMIT: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropsReport {
    pub topology: String,
    pub checks: Vec<PropCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
}

impl PropsReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&PropCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.topology);
        for c in &self.checks {
            out += &format!("{} {:<22} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        if let Some(shape) = &self.shape {
            out += &format!("shape: {shape}\n");
        }
        out
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> PropCheck {
    PropCheck { name, passed, detail: detail.into() }
}

/// Runs every check that applies to the topology's family.
pub fn run_props(topo: &Topology) -> PropsReport {
    let mut checks = Vec::new();
    let g = topo.graph();
    let n = topo.vertex_count();
    checks.push(check("vertex-count", n == 1usize << topo.width(), format!("{n} vertices")));
    if n <= CROSS_VALIDATE_LIMIT {
        let bad = topo.cross_validate();
        let detail = match bad {
            None => "edge set matches the pairwise rules".to_string(),
            Some((u, v)) => format!("pair {} {} disagrees with the rules", topo.render(u), topo.render(v)),
        };
        checks.push(check("adjacency-rules", bad.is_none(), detail));
    }
    match topo.kind() {
        TopologyKind::Ltq { n: dim } => {
            let regular = g.min_degree() == dim as usize && g.max_degree() == dim as usize;
            checks.push(check("regular", regular, format!("degrees {}..{}", g.min_degree(), g.max_degree())));
            checks.push(check("connected", g.is_connected(), ""));
        }
        TopologyKind::Letq(p) => letq_checks(topo, p, &mut checks),
    }
    let shape = (n == 8 && g.is_single_cycle()).then(|| "8-cycle".to_string());
    PropsReport { topology: topo.kind().to_string(), checks, shape }
}

fn letq_checks(topo: &Topology, p: CubeParams, checks: &mut Vec<PropCheck>) {
    let g = topo.graph();
    let n = topo.vertex_count();
    let (s, t) = (p.s() as usize, p.t() as usize);

    let bad_degree = (0..n).find(|&u| g.degree(u) != if p.class_bit(u) == 0 { s + 1 } else { t + 1 });
    checks.push(check(
        "degree-law",
        bad_degree.is_none(),
        match bad_degree {
            None => format!("class 0 has degree {}, class 1 has degree {}", s + 1, t + 1),
            Some(u) => format!("{} has degree {}", topo.render(u), g.degree(u)),
        },
    ));

    let cross: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| p.class_bit(u) != p.class_bit(v)).collect();
    let perfect = cross.len() == n / 2 && cross.iter().all(|&(u, v)| u ^ v == 1);
    checks.push(check("cross-matching", perfect, format!("{} cross edges, {} expected", cross.len(), n / 2)));

    let mut problems = Vec::new();
    let expected = 1usize << (s + t - 1);
    let coords = p.coordinates().into_iter().filter(|c| match c {
        Coordinate::A(_) => s >= 2,
        Coordinate::B(_) => t >= 2,
    });
    let mut tried = 0;
    for coord in coords {
        for value in 0..=1u8 {
            tried += 1;
            match half_isomorphism(topo, coord, value) {
                Ok((dec, _)) => {
                    if dec.cross_edges.len() != expected || !dec.cross_edges_form_matching() {
                        problems.push(format!("{coord}={value}: {} cross edges", dec.cross_edges.len()));
                    }
                }
                Err(e) => {
                    let dec = crate::topology::decompose(topo, coord, value);
                    let edges = dec.as_ref().map(|d| d.cross_edges.len()).unwrap_or(0);
                    let matching = dec.as_ref().map(|d| d.cross_edges_form_matching()).unwrap_or(false);
                    let mut note = format!("{coord}={value}: half not isomorphic ({e})");
                    if edges != expected || !matching {
                        note = format!("{coord}={value}: {edges} cross edges, half not isomorphic");
                    }
                    problems.push(note);
                }
            }
        }
    }
    let detail = if problems.is_empty() {
        format!("{tried} halves, {expected} independent cross edges each")
    } else {
        problems.join("; ")
    };
    checks.push(check("decomposition", problems.is_empty(), detail));

    match cluster_partition(topo) {
        Ok(parts) => {
            let leaks = parts.same_class_cross_edges(g);
            let ltq = parts.clusters_match_ltq(topo).unwrap_or(false);
            checks.push(check(
                "clusters",
                leaks == 0 && ltq,
                format!(
                    "{} class-0 and {} class-1 clusters, {leaks} same-class cross edges, LTQ match: {ltq}",
                    parts.class0.len(),
                    parts.class1.len()
                ),
            ));
        }
        Err(e) => checks.push(check("clusters", false, e.to_string())),
    }

    checks.push(check("triangle-free", is_triangle_free(g), ""));
    let common = max_common_neighbors(g);
    checks.push(check("no-k23", common <= 2, format!("max common neighbors {common}")));

    let mut orders = Vec::new();
    let mut ok = true;
    for level in 0..=s.min(t) {
        match min_order_with_min_degree(topo, level) {
            Ok(MinOrder::Exact { order, .. }) => {
                ok &= order >= 1 << level;
                orders.push(format!("g={level}: {order}"));
            }
            Ok(MinOrder::Bound { lower, witness }) => {
                let sub = g.induced(&witness);
                ok &= witness.len() == lower && sub.min_degree() >= level;
                orders.push(format!("g={level}: bound {lower}"));
            }
            Ok(MinOrder::None) => orders.push(format!("g={level}: none")),
            Err(e) => {
                ok = false;
                orders.push(format!("g={level}: {e}"));
            }
        }
    }
    checks.push(check("good-neighbor-order", ok, orders.join(", ")));
}
