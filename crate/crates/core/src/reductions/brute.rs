//! Exhaustive answers for the source problems of the reductions.

use crate::error::{HomError, Result};
use crate::graph::Graph;

/// Largest vertex count the subset enumerations accept.
pub const MAX_VERTICES: usize = 30;

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > MAX_VERTICES {
        return Err(HomError::Budget(format!(
            "{} vertices exceed the enumeration limit {MAX_VERTICES}",
            g.n()
        )));
    }
    Ok(())
}

fn cut_size(edges: &[(usize, usize)], side: u64) -> usize {
    edges
        .iter()
        .filter(|&&(u, v)| (side >> u & 1) != (side >> v & 1))
        .count()
}

fn plain_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().into_iter().filter(|&(u, v)| u != v).collect()
}

/// Maximum number of edges across a bipartition. Loops never count.
pub fn max_cut(g: &Graph) -> Result<usize> {
    check_size(g)?;
    let edges = plain_edges(g);
    let n = g.n();
    // Vertex n-1 is kept on side 0; flipping both sides gives the same cut.
    let half = if n == 0 { 1 } else { 1u64 << (n - 1) };
    Ok((0..half).map(|s| cut_size(&edges, s)).max().unwrap_or(0))
}

/// Largest cut whose sides have equal size, or `None` for odd `n`.
pub fn max_bisection(g: &Graph) -> Result<Option<usize>> {
    check_size(g)?;
    let n = g.n();
    if n % 2 == 1 {
        return Ok(None);
    }
    let edges = plain_edges(g);
    Ok((0..1u64 << n)
        .filter(|s| s.count_ones() as usize == n / 2)
        .map(|s| cut_size(&edges, s))
        .max())
}

/// Every side set (as a bitmask) of a maximum cut.
pub fn maximum_cuts(g: &Graph) -> Result<Vec<u64>> {
    let best = max_cut(g)?;
    let edges = plain_edges(g);
    Ok((0..1u64 << g.n()).filter(|&s| cut_size(&edges, s) == best).collect())
}

/// Size of a largest independent set. Looped vertices are never chosen.
pub fn independence_number(g: &Graph) -> Result<usize> {
    check_size(g)?;
    let n = g.n();
    let mut adj = vec![0u64; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    fn grow(adj: &[u64], allowed: u64, size: usize, best: &mut usize) {
        if allowed == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + allowed.count_ones() as usize <= *best {
            return;
        }
        let v = allowed.trailing_zeros() as usize;
        let rest = allowed & !(1 << v);
        if adj[v] >> v & 1 == 0 {
            grow(adj, rest & !adj[v], size + 1, best);
        }
        grow(adj, rest, size, best);
    }
    let mut best = 0;
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    grow(&adj, all, 0, &mut best);
    Ok(best)
}
