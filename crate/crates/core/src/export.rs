//! Edge-list, DOT and JSON renderings of a topology, and edge-list import.

use std::fmt::Write as _;

use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::topology::{cluster_partition, Topology, TopologyKind};

/// One `label label` line per edge, `u < v`, in lexicographic order.
pub fn edge_list(topo: &Topology) -> String {
    let mut out = String::new();
    for (u, v) in topo.graph().edges() {
        let _ = writeln!(out, "{} {}", topo.render(u), topo.render(v));
    }
    out
}

/// Undirected DOT graph. With `clusters`, LeTQ vertices are grouped into
/// one subgraph per cluster.
pub fn dot(topo: &Topology, clusters: bool) -> String {
    let name = match topo.kind() {
        TopologyKind::Ltq { n } => format!("LTQ_{n}"),
        TopologyKind::Letq(p) => format!("LeTQ_{}_{}", p.s(), p.t()),
    };
    let mut out = format!("graph {name} {{\n");
    let groups = if clusters { cluster_partition(topo).ok() } else { None };
    match groups {
        Some(parts) => {
            let all = parts.class0.iter().map(|c| (0, c)).chain(parts.class1.iter().map(|c| (1, c)));
            for (i, (class, members)) in all.enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{i} {{");
                let _ = writeln!(out, "    label=\"class {class}\";");
                for &v in members {
                    let _ = writeln!(out, "    \"{}\";", topo.render(v));
                }
                out += "  }\n";
            }
        }
        None => {
            for v in 0..topo.vertex_count() {
                let _ = writeln!(out, "  \"{}\";", topo.render(v));
            }
        }
    }
    for (u, v) in topo.graph().edges() {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", topo.render(u), topo.render(v));
    }
    out += "}\n";
    out
}

/// `{"family", "s", "t" | "n", "vertices", "edges"}` with rendered labels.
pub fn adjacency_json(topo: &Topology) -> serde_json::Value {
    let vertices: Vec<String> = (0..topo.vertex_count()).map(|v| topo.render(v)).collect();
    let edges: Vec<[String; 2]> = topo.graph().edges().map(|(u, v)| [topo.render(u), topo.render(v)]).collect();
    match topo.kind() {
        TopologyKind::Ltq { n } => json!({
            "family": topo.family(),
            "n": n,
            "vertices": vertices,
            "edges": edges,
        }),
        TopologyKind::Letq(p) => json!({
            "family": topo.family(),
            "s": p.s(),
            "t": p.t(),
            "vertices": vertices,
            "edges": edges,
        }),
    }
}

/// Reads `label label` lines as a graph on the vertex set of `kind`. Blank
/// lines and `#` comments are skipped. The result is not checked against
/// the adjacency rules; that is what the property suite is for.
pub fn read_edge_list(kind: TopologyKind, text: &str) -> Result<Topology> {
    let width = kind.width();
    if width > crate::topology::DEFAULT_MAX_BUILD_WIDTH {
        return Err(Error::Capacity { width, limit: crate::topology::DEFAULT_MAX_BUILD_WIDTH });
    }
    let n = 1usize << width;
    let parse = |s: &str, line: usize| -> Result<usize> {
        if s.len() != width as usize || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Input(format!("line {line}: {s:?} is not a {width}-bit label")));
        }
        Ok(usize::from_str_radix(s, 2).expect("binary digits"))
    };
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Input(format!("line {}: expected two labels", i + 1)));
        };
        edges.push((parse(a, i + 1)?, parse(b, i + 1)?));
    }
    let graph = Graph::from_edges(n, edges)?;
    Topology::from_parts(kind, graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let topo = Topology::letq(1, 1).unwrap();
        let text = edge_list(&topo);
        assert_eq!(text.lines().count(), 8);
        assert_eq!(text.lines().next(), Some("000 001"));
        let back = read_edge_list(topo.kind(), &text).unwrap();
        assert_eq!(back.graph(), topo.graph());
    }

    #[test]
    fn json_counts() {
        let topo = Topology::ltq(3).unwrap();
        let j = adjacency_json(&topo);
        assert_eq!(j["family"], "LTQ");
        assert_eq!(j["n"], 3);
        assert_eq!(j["vertices"].as_array().unwrap().len(), 8);
        assert_eq!(j["edges"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn dot_shape() {
        let topo = Topology::letq(1, 2).unwrap();
        let d = dot(&topo, true);
        assert!(d.starts_with("graph LeTQ_1_2 {"));
        assert_eq!(d.matches(" -- ").count(), 20);
        assert_eq!(d.matches("subgraph cluster_").count(), 4 + 2);
        assert_eq!(d.matches('{').count(), d.matches('}').count());
    }

    #[test]
    fn rejects_bad_lines() {
        let kind = Topology::letq(1, 1).unwrap().kind();
        assert!(read_edge_list(kind, "000 00x\n").is_err());
        assert!(read_edge_list(kind, "000\n").is_err());
        assert!(read_edge_list(kind, "000 000\n").is_err());
    }
}
