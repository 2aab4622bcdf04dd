//! Catalogue of named target graphs.

use crate::error::{HomError, Result};
use crate::graph::Graph;

fn numbered(k: usize) -> Vec<String> {
    (1..=k).map(|i| i.to_string()).collect()
}

/// Path on `k` vertices, labelled `1..=k`.
pub fn path(k: usize) -> Graph {
    let mut g = Graph::new(k);
    for i in 1..k {
        g.add_edge(i - 1, i).unwrap();
    }
    g.with_labels(numbered(k))
}

/// Cycle on `k >= 3` vertices, labelled `1..=k`.
pub fn cycle(k: usize) -> Graph {
    assert!(k >= 3, "cycles need at least three vertices");
    let mut g = path(k);
    g.add_edge(k - 1, 0).unwrap();
    g
}

pub fn complete(k: usize) -> Graph {
    let mut g = Graph::new(k);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v).unwrap();
        }
    }
    g.with_labels(numbered(k))
}

/// Complete graph with a loop on every vertex.
pub fn reflexive_complete(k: usize) -> Graph {
    let mut g = complete(k);
    for v in 0..k {
        g.add_edge(v, v).unwrap();
    }
    g
}

/// Complement of the path on `k` vertices.
pub fn complement_of_path(k: usize) -> Graph {
    let mut g = Graph::new(k);
    for u in 0..k {
        for v in u + 2..k {
            g.add_edge(u, v).unwrap();
        }
    }
    g.with_labels(numbered(k))
}

/// Two looped vertices joined by an edge; the max-cut target.
pub fn loop_edge() -> Graph {
    Graph::from_edges(2, &[(0, 0), (0, 1), (1, 1)])
        .unwrap()
        .with_labels(["a", "b"])
}

/// A loopless vertex `a` joined to a looped vertex `b`; the independent-set target.
pub fn loop_pendant() -> Graph {
    Graph::from_edges(2, &[(0, 1), (1, 1)]).unwrap().with_labels(["a", "b"])
}

/// Looped `a` adjacent to an edge `bc`; the odd-cycle-transversal target.
pub fn oct_target() -> Graph {
    Graph::from_edges(3, &[(0, 0), (0, 1), (0, 2), (1, 2)])
        .unwrap()
        .with_labels(["a", "b", "c"])
}

/// The 4-cycle with vertices `a, b, c, d` in cyclic order.
pub fn c4() -> Graph {
    let g = cycle(4);
    let n = g.n();
    let mut h = Graph::new(n);
    for (u, v) in g.edges() {
        h.add_edge(u, v).unwrap();
    }
    h.with_labels(["a", "b", "c", "d"])
}

/// Parses a target name such as `Pk:5`, `P5`, `Ck:6`, `Kk:4`, `Kk-reflexive:3`,
/// `coP:5`, `C4`, `loop-edge`, `loop-pendant` or `oct`.
pub fn parse_target(spec: &str) -> Result<Graph> {
    let s = spec.trim();
    let bad = || HomError::Malformed(format!("unknown target `{spec}`"));
    match s {
        "loop-edge" => return Ok(loop_edge()),
        "loop-pendant" => return Ok(loop_pendant()),
        "oct" => return Ok(oct_target()),
        _ => {}
    }
    let (family, k) = if let Some((f, k)) = s.split_once(':') {
        (f, k)
    } else {
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        s.split_at(split)
    };
    let k: usize = k.parse().map_err(|_| bad())?;
    let family = family.trim_end_matches('k');
    if k > crate::lists::MAX_TARGET {
        return Err(HomError::Precondition(format!(
            "targets are limited to {} vertices",
            crate::lists::MAX_TARGET
        )));
    }
    match family {
        "P" if k >= 1 => Ok(path(k)),
        "C" if k == 4 => Ok(c4()),
        "C" if k >= 3 => Ok(cycle(k)),
        "K" => Ok(complete(k)),
        "Kk-reflexive" | "K-reflexive" => Ok(reflexive_complete(k)),
        "coP" => Ok(complement_of_path(k)),
        _ => {
            if s.starts_with("Kk-reflexive") || s.starts_with("K-reflexive") {
                Ok(reflexive_complete(k))
            } else {
                Err(bad())
            }
        }
    }
}
