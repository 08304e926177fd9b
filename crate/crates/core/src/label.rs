//! Cube parameters and vertex labels.
//!
//! A label of `LeTQ(s,t)` is the bit string `a_{s-1}..a_0 b_{t-1}..b_0 c`. It is
//! packed into a machine word with `c` at bit 0, `b_j` at bit `1 + j` and `a_i`
//! at bit `t + 1 + i`, so the textual rendering is exactly the binary
//! representation of the packed value, most significant bit first. Numeric
//! order and lexicographic order of renderings therefore coincide.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param_err, Error, Result};

/// Widest label the packed encoding supports.
pub const MAX_LABEL_WIDTH: u32 = 62;

/// The `(s, t)` pair of a locally exchanged twisted cube.
///
/// The orientation given by the caller is kept; use [`CubeParams::normalized`]
/// to obtain the `s <= t` form explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeParams {
    s: u32,
    t: u32,
}

impl CubeParams {
    pub fn new(s: u32, t: u32) -> Result<Self> {
        if s == 0 || t == 0 {
            return param_err(format!("s and t must be at least 1 (got s={s}, t={t})"));
        }
        if s + t + 1 > MAX_LABEL_WIDTH {
            return Err(Error::Capacity { width: s + t + 1, limit: MAX_LABEL_WIDTH });
        }
        Ok(CubeParams { s, t })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Label width `s + t + 1`.
    pub fn width(&self) -> u32 {
        self.s + self.t + 1
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.width()
    }

    pub fn is_normalized(&self) -> bool {
        self.s <= self.t
    }

    /// The same cube with `s` and `t` exchanged.
    pub fn swapped(&self) -> CubeParams {
        CubeParams { s: self.t, t: self.s }
    }

    /// Returns the `s <= t` orientation and whether a swap was needed.
    pub fn normalized(&self) -> (CubeParams, bool) {
        if self.is_normalized() {
            (*self, false)
        } else {
            (self.swapped(), true)
        }
    }

    /// The a-block `A(u)` of a packed label.
    pub fn a_block(&self, u: usize) -> usize {
        (u >> (self.t + 1)) & ((1usize << self.s) - 1)
    }

    /// The b-block `B(u)` of a packed label.
    pub fn b_block(&self, u: usize) -> usize {
        (u >> 1) & ((1usize << self.t) - 1)
    }

    /// The class bit `C(u)`: 0 for `L`, 1 for `R`.
    pub fn class_bit(&self, u: usize) -> usize {
        u & 1
    }

    /// Packs `(A, B, c)` into a label value.
    pub fn compose(&self, a: usize, b: usize, c: usize) -> usize {
        debug_assert!(a < (1 << self.s) && b < (1 << self.t) && c < 2);
        (a << (self.t + 1)) | (b << 1) | c
    }

    /// Bit position of a coordinate inside the packed label.
    pub fn bit_of(&self, coord: Coordinate) -> Result<u32> {
        match coord {
            Coordinate::A(i) if i < self.s => Ok(self.t + 1 + i),
            Coordinate::B(j) if j < self.t => Ok(1 + j),
            _ => param_err(format!("coordinate {coord} out of range for LeTQ({},{})", self.s, self.t)),
        }
    }

    /// Every a- and b-coordinate, a-block first.
    pub fn coordinates(&self) -> Vec<Coordinate> {
        (0..self.s).map(Coordinate::A).chain((0..self.t).map(Coordinate::B)).collect()
    }

    pub fn label(&self, value: usize) -> VertexLabel {
        VertexLabel::new(value as u64, self.width())
    }
}

impl fmt::Display for CubeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeTQ({},{})", self.s, self.t)
    }
}

/// One of the `a_i` or `b_j` positions of a label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coordinate {
    A(u32),
    B(u32),
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::A(i) => write!(f, "a{i}"),
            Coordinate::B(j) => write!(f, "b{j}"),
        }
    }
}

impl FromStr for Coordinate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s.split_at(s.len().min(1));
        let idx: u32 = tail.parse().map_err(|_| Error::Parameter(format!("bad coordinate `{s}`")))?;
        match head {
            "a" | "A" => Ok(Coordinate::A(idx)),
            "b" | "B" => Ok(Coordinate::B(idx)),
            _ => param_err(format!("bad coordinate `{s}` (expected a<i> or b<j>)")),
        }
    }
}

/// A fixed-width binary vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    width: u32,
    value: u64,
}

impl VertexLabel {
    /// Panics if `value` does not fit in `width` bits or `width` exceeds the
    /// packed encoding.
    pub fn new(value: u64, width: u32) -> Self {
        assert!((1..=MAX_LABEL_WIDTH).contains(&width), "label width {width} out of range");
        assert!(value >> width == 0, "value {value} does not fit in {width} bits");
        VertexLabel { width, value }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn index(&self) -> usize {
        self.value as usize
    }

    pub fn bit(&self, pos: u32) -> bool {
        (self.value >> pos) & 1 == 1
    }

    /// Parses a label and checks it has the expected width.
    pub fn parse_with_width(s: &str, width: u32) -> Result<Self> {
        let label: VertexLabel = s.parse()?;
        if label.width != width {
            return Err(Error::Input(format!("label `{s}` has {} bits, expected {width}", label.width)));
        }
        Ok(label)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width as usize)
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > MAX_LABEL_WIDTH as usize {
            return Err(Error::Input(format!("bad label `{s}`")));
        }
        if !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Input(format!("label `{s}` is not a bit string")));
        }
        let value = u64::from_str_radix(s, 2).map_err(|e| Error::Input(e.to_string()))?;
        Ok(VertexLabel { width: s.len() as u32, value })
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Renders a vertex index at the given width.
pub fn render(value: usize, width: u32) -> String {
    format!("{:0width$b}", value, width = width as usize)
}
