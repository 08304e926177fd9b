//! Vertex sets hypothesized or injected as faulty.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::bitset_of;
use crate::label::{render, VertexLabel};
use crate::topology::Topology;

/// A set of vertices, kept sorted and duplicate-free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaultSet {
    members: Vec<usize>,
}

impl FaultSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        FaultSet { members }
    }

    pub fn empty() -> Self {
        FaultSet::default()
    }

    /// Builds a set and checks every member is a vertex of `topo`.
    pub fn within(topo: &Topology, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set = FaultSet::new(members);
        if let Some(&bad) = set.members.iter().find(|&&v| v >= topo.vertex_count()) {
            return Err(Error::Input(format!("vertex {bad} is not in {}", topo.kind())));
        }
        Ok(set)
    }

    pub fn from_labels(topo: &Topology, labels: &[VertexLabel]) -> Result<Self> {
        let width = topo.width();
        if let Some(l) = labels.iter().find(|l| l.width() != width) {
            return Err(Error::Input(format!("label {l} does not have width {width}")));
        }
        FaultSet::within(topo, labels.iter().map(VertexLabel::index))
    }

    /// Parses a comma-separated label list; the empty string is the empty set.
    pub fn parse_list(topo: &Topology, text: &str) -> Result<Self> {
        let members = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| topo.parse_label(s))
            .collect::<Result<Vec<_>>>()?;
        FaultSet::within(topo, members)
    }

    /// Parses newline-delimited labels. Blank lines and `#` comments are skipped.
    pub fn parse_lines(topo: &Topology, text: &str) -> Result<Self> {
        let members = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| topo.parse_label(l))
            .collect::<Result<Vec<_>>>()?;
        FaultSet::within(topo, members)
    }

    /// One label per line, ascending.
    pub fn to_lines(&self, width: u32) -> String {
        self.members.iter().map(|&v| render(v, width) + "\n").collect()
    }

    pub fn render(&self, width: u32) -> Vec<String> {
        self.members.iter().map(|&v| render(v, width)).collect()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn to_bitset(&self, n: usize) -> FixedBitSet {
        bitset_of(n, &self.members)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.members.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, v);
                true
            }
        }
    }

    pub fn union(&self, other: &FaultSet) -> FaultSet {
        FaultSet::new(self.members.iter().chain(&other.members).copied())
    }

    pub fn intersection(&self, other: &FaultSet) -> FaultSet {
        FaultSet { members: self.members.iter().copied().filter(|&v| other.contains(v)).collect() }
    }

    pub fn difference(&self, other: &FaultSet) -> FaultSet {
        FaultSet { members: self.members.iter().copied().filter(|&v| !other.contains(v)).collect() }
    }

    pub fn symmetric_difference(&self, other: &FaultSet) -> FaultSet {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_disjoint(&self, other: &FaultSet) -> bool {
        self.members.iter().all(|&v| !other.contains(v))
    }
}

impl FromIterator<usize> for FaultSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        FaultSet::new(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let topo = Topology::letq(1, 1).unwrap();
        let f = FaultSet::parse_list(&topo, "001, 000").unwrap();
        assert_eq!(f.members(), &[0, 1]);
        assert_eq!(f.to_lines(3), "000\n001\n");
        let g = FaultSet::parse_lines(&topo, "# faults\n000\n\n001 # cross edge\n").unwrap();
        assert_eq!(f, g);
        assert!(FaultSet::parse_list(&topo, "").unwrap().is_empty());
        assert!(FaultSet::parse_list(&topo, "0000").is_err());
        assert!(FaultSet::parse_list(&topo, "00x").is_err());
    }

    #[test]
    fn set_algebra() {
        let a = FaultSet::new([1, 2, 3]);
        let b = FaultSet::new([3, 4]);
        assert_eq!(a.symmetric_difference(&b).members(), &[1, 2, 4]);
        assert_eq!(a.intersection(&b).members(), &[3]);
        assert!(!a.is_disjoint(&b));
        let mut c = FaultSet::new([5, 1, 1]);
        assert_eq!(c.members(), &[1, 5]);
        assert!(c.insert(3));
        assert!(!c.insert(3));
        assert_eq!(c.members(), &[1, 3, 5]);
    }
}
