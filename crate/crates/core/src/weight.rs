//! Extended integer weights and weight functions on `V(G)×V(H)` and `E(G)×E(H)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{HomError, Result};
use crate::graph::{expect_end, parse_usize, Graph};

/// An integer or negative infinity. `NegInf` is absorbing under addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    NegInf,
    Finite(i64),
}

impl Weight {
    pub const ZERO: Weight = Weight::Finite(0);

    pub fn checked_add(self, other: Weight) -> Result<Weight> {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.checked_add(b).map(Weight::Finite).ok_or(HomError::Overflow),
            _ => Ok(Weight::NegInf),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Weight::NegInf
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Weight::Finite(x) => Some(x),
            Weight::NegInf => None,
        }
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::ZERO
    }
}

impl From<i64> for Weight {
    fn from(x: i64) -> Self {
        Weight::Finite(x)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::NegInf => f.write_str("-inf"),
            Weight::Finite(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Weight {
    type Err = HomError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "-inf" {
            return Ok(Weight::NegInf);
        }
        s.parse::<i64>()
            .map(Weight::Finite)
            .map_err(|_| HomError::Malformed(format!("bad weight `{s}`")))
    }
}

/// Compares `a` with a threshold, treating `NegInf` as below every integer.
pub fn meets_threshold(a: Weight, threshold: i64) -> bool {
    a.cmp(&Weight::Finite(threshold)) != Ordering::Less
}

fn pair(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Sparse weight function. Missing entries weigh zero.
///
/// Edge weights are keyed by the unordered pair of `G`-endpoints and the
/// unordered pair of `H`-endpoints they are mapped to.
/// Unordered `G`-pair and unordered `H`-pair.
type EdgeKey = ((usize, usize), (usize, usize));

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightModel {
    vertex: BTreeMap<(usize, usize), Weight>,
    edge: BTreeMap<EdgeKey, Weight>,
}

impl WeightModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_vertex(&mut self, v: usize, a: usize, w: Weight) {
        if w == Weight::ZERO {
            self.vertex.remove(&(v, a));
        } else {
            self.vertex.insert((v, a), w);
        }
    }

    pub fn set_edge(&mut self, u: usize, v: usize, a: usize, b: usize, w: Weight) {
        let key = (pair(u, v), pair(a, b));
        if w == Weight::ZERO {
            self.edge.remove(&key);
        } else {
            self.edge.insert(key, w);
        }
    }

    pub fn vertex_weight(&self, v: usize, a: usize) -> Weight {
        self.vertex.get(&(v, a)).copied().unwrap_or_default()
    }

    pub fn edge_weight(&self, u: usize, v: usize, a: usize, b: usize) -> Weight {
        self.edge.get(&(pair(u, v), pair(a, b))).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.vertex.is_empty() && self.edge.is_empty()
    }

    pub fn vertex_entries(&self) -> impl Iterator<Item = (usize, usize, Weight)> + '_ {
        self.vertex.iter().map(|(&(v, a), &w)| (v, a, w))
    }

    pub fn edge_entries(&self) -> impl Iterator<Item = (usize, usize, usize, usize, Weight)> + '_ {
        self.edge.iter().map(|(&((u, v), (a, b)), &w)| (u, v, a, b, w))
    }

    /// Checks that every entry refers to vertices and edges that exist.
    pub fn validate(&self, g: &Graph, h: &Graph) -> Result<()> {
        for (v, a, _) in self.vertex_entries() {
            if v >= g.n() || a >= h.n() {
                return Err(HomError::Malformed(format!("vertex weight ({v}, {a}) out of range")));
            }
        }
        for (u, v, a, b, _) in self.edge_entries() {
            if !g.has_edge(u, v) {
                return Err(HomError::Malformed(format!("weight on non-edge {u} {v} of G")));
            }
            if !h.has_edge(a, b) {
                return Err(HomError::Malformed(format!("weight on non-edge {a} {b} of H")));
            }
        }
        Ok(())
    }

    /// Parses `vw <v> <a> <w>` and `ew <u> <v> <a> <b> <w>` records.
    pub fn parse(text: &str) -> Result<WeightModel> {
        let mut wm = WeightModel::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            let bad = |e: HomError| HomError::parse(line_no, e.to_string());
            match tok.next() {
                Some("vw") => {
                    let v = parse_usize(tok.next(), line_no)?;
                    let a = parse_usize(tok.next(), line_no)?;
                    let w: Weight = tok
                        .next()
                        .ok_or_else(|| HomError::parse(line_no, "missing weight"))?
                        .parse()
                        .map_err(bad)?;
                    expect_end(tok, line_no)?;
                    wm.set_vertex(v, a, w);
                }
                Some("ew") => {
                    let u = parse_usize(tok.next(), line_no)?;
                    let v = parse_usize(tok.next(), line_no)?;
                    let a = parse_usize(tok.next(), line_no)?;
                    let b = parse_usize(tok.next(), line_no)?;
                    let w: Weight = tok
                        .next()
                        .ok_or_else(|| HomError::parse(line_no, "missing weight"))?
                        .parse()
                        .map_err(bad)?;
                    expect_end(tok, line_no)?;
                    wm.set_edge(u, v, a, b, w);
                }
                Some(other) => return Err(HomError::parse(line_no, format!("unknown record `{other}`"))),
                None => unreachable!(),
            }
        }
        Ok(wm)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, a, w) in self.vertex_entries() {
            writeln!(s, "vw {v} {a} {w}").unwrap();
        }
        for (u, v, a, b, w) in self.edge_entries() {
            writeln!(s, "ew {u} {v} {a} {b} {w}").unwrap();
        }
        s
    }
}
