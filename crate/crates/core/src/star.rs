//! The common-neighbour property: no two distinct vertices share two or more
//! neighbours, where a loop puts a vertex into its own neighbourhood.
//!
//! A graph has the property exactly when it contains none of seven small
//! graphs as an induced subgraph; [`forbidden_witness`] finds one.

use std::fmt;

use crate::graph::Graph;

pub fn has_property_star(h: &Graph) -> bool {
    common_neighbor_violation(h).is_none()
}

/// First pair `u < v` sharing two or more neighbours, with two of them.
pub fn common_neighbor_violation(h: &Graph) -> Option<(usize, usize, usize, usize)> {
    let n = h.n();
    for u in 0..n {
        for v in u + 1..n {
            let mut common = h.neighbors(u).iter().filter(|&&x| h.has_edge(v, x));
            if let (Some(&x), Some(&y)) = (common.next(), common.next()) {
                return Some((u, v, x, y));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForbiddenPattern {
    /// Two looped vertices joined by an edge.
    A,
    /// Triangle with one looped vertex.
    B,
    /// Four-cycle.
    C,
    /// Four-cycle with one looped vertex.
    D,
    /// Four-cycle with loops on two opposite vertices.
    E,
    /// Four-cycle plus one chord.
    F,
    /// Complete graph on four vertices.
    G,
}

impl ForbiddenPattern {
    pub const ALL: [ForbiddenPattern; 7] = [
        ForbiddenPattern::A,
        ForbiddenPattern::B,
        ForbiddenPattern::C,
        ForbiddenPattern::D,
        ForbiddenPattern::E,
        ForbiddenPattern::F,
        ForbiddenPattern::G,
    ];

    pub fn graph(self) -> Graph {
        use ForbiddenPattern::*;
        let c4 = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let edges: Vec<(usize, usize)> = match self {
            A => vec![(0, 0), (0, 1), (1, 1)],
            B => vec![(0, 0), (0, 1), (0, 2), (1, 2)],
            C => c4.to_vec(),
            D => [&c4[..], &[(0, 0)]].concat(),
            E => [&c4[..], &[(0, 0), (2, 2)]].concat(),
            F => [&c4[..], &[(0, 2)]].concat(),
            G => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        };
        let n = if self == A {
            2
        } else if self == B {
            3
        } else {
            4
        };
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letter())
    }
}

/// An induced copy of a forbidden pattern: pattern vertex `i` sits at `embedding[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub pattern: ForbiddenPattern,
    pub embedding: Vec<usize>,
}

/// Searches the patterns in order `(a)` to `(g)`; the first induced copy found
/// (embeddings in lexicographic order) is returned.
pub fn forbidden_witness(h: &Graph) -> Option<ForbiddenWitness> {
    for pattern in ForbiddenPattern::ALL {
        let p = pattern.graph();
        let mut emb = Vec::with_capacity(p.n());
        if embed(h, &p, &mut emb) {
            return Some(ForbiddenWitness {
                pattern,
                embedding: emb,
            });
        }
    }
    None
}

fn embed(h: &Graph, p: &Graph, emb: &mut Vec<usize>) -> bool {
    let i = emb.len();
    if i == p.n() {
        return true;
    }
    for x in 0..h.n() {
        if emb.contains(&x) {
            continue;
        }
        let consistent = (0..i).all(|j| p.has_edge(i, j) == h.has_edge(x, emb[j])) && p.has_loop(i) == h.has_loop(x);
        if consistent {
            emb.push(x);
            if embed(h, p, emb) {
                return true;
            }
            emb.pop();
        }
    }
    false
}
