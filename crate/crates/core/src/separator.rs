//! Balanced vertex separators.
//!
//! A separation `(S, V1, V2)` partitions the vertices so that no edge joins
//! `V1` and `V2` and each side holds at most `β·n` vertices.

use std::collections::VecDeque;

use crate::error::{HomError, Result};
use crate::graph::Graph;

/// Balance ratio `β = num/den` with `1/2 < β < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Balance {
    num: u64,
    den: u64,
}

impl Balance {
    pub const TWO_THIRDS: Balance = Balance { num: 2, den: 3 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || 2 * num <= den || num >= den {
            return Err(HomError::Precondition(format!(
                "balance {num}/{den} must lie strictly between 1/2 and 1"
            )));
        }
        Ok(Balance { num, den })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || HomError::Malformed(format!("bad balance `{s}`"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        Balance::new(
            p.trim().parse().map_err(|_| bad())?,
            q.trim().parse().map_err(|_| bad())?,
        )
    }

    /// Whether a side with `side` vertices is allowed in a graph with `n` vertices.
    pub fn allows(self, side: usize, n: usize) -> bool {
        side as u128 * self.den as u128 <= self.num as u128 * n as u128
    }

    pub fn max_side(self, n: usize) -> usize {
        (self.num as u128 * n as u128 / self.den as u128) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub s: Vec<usize>,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
}

impl Separation {
    pub fn size(&self) -> usize {
        self.s.len()
    }
}

/// Checks partition, absence of `V1`–`V2` edges and balance.
pub fn verify_separation(g: &Graph, sep: &Separation, beta: Balance) -> bool {
    let n = g.n();
    let mut part = vec![0u8; n];
    for (tag, set) in [(1u8, &sep.s), (2, &sep.v1), (3, &sep.v2)] {
        for &v in set.iter() {
            if v >= n || part[v] != 0 {
                return false;
            }
            part[v] = tag;
        }
    }
    if part.contains(&0) {
        return false;
    }
    let crossing = g
        .edges()
        .into_iter()
        .any(|(u, v)| (part[u] == 2 && part[v] == 3) || (part[u] == 3 && part[v] == 2));
    !crossing && beta.allows(sep.v1.len(), n) && beta.allows(sep.v2.len(), n)
}

/// Components of `G - S`, each sorted, ordered by smallest vertex.
fn components_avoiding(g: &Graph, in_s: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = in_s.to_vec();
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Groups the components of `G - S` into two balanced sides, choosing the
/// most even split reachable by subset sums.
fn split_sides(g: &Graph, in_s: &[bool], beta: Balance) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let comps = components_avoiding(g, in_s);
    let rest: usize = comps.iter().map(Vec::len).sum();
    let cap = beta.max_side(n);
    if comps.iter().any(|c| c.len() > cap) {
        return None;
    }
    // reach[i][t]: some subset of the first i components sums to t.
    let mut reach = vec![vec![false; rest + 1]; comps.len() + 1];
    reach[0][0] = true;
    for (i, c) in comps.iter().enumerate() {
        for t in 0..=rest {
            if reach[i][t] {
                reach[i + 1][t] = true;
                if t + c.len() <= rest {
                    reach[i + 1][t + c.len()] = true;
                }
            }
        }
    }
    let target = (0..=rest)
        .filter(|&t| reach[comps.len()][t] && t <= cap && rest - t <= cap)
        .min_by_key(|&t| ((2 * t) as isize - rest as isize).abs())?;
    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    let mut t = target;
    for i in (0..comps.len()).rev() {
        if t >= comps[i].len() && reach[i][t - comps[i].len()] {
            t -= comps[i].len();
            v1.extend_from_slice(&comps[i]);
        } else {
            v2.extend_from_slice(&comps[i]);
        }
    }
    v1.sort_unstable();
    v2.sort_unstable();
    Some((v1, v2))
}

fn separation_for(g: &Graph, s: &[usize], beta: Balance) -> Option<Separation> {
    let mut in_s = vec![false; g.n()];
    for &v in s {
        in_s[v] = true;
    }
    split_sides(g, &in_s, beta).map(|(v1, v2)| Separation { s: s.to_vec(), v1, v2 })
}

/// Exhaustive search for a minimum-size balanced separator of size at most
/// `max_size`. `Ok(None)` means none exists within that size.
pub fn find_balanced_separator(g: &Graph, max_size: usize, beta: Balance) -> Result<Option<Separation>> {
    find_balanced_separator_with_budget(g, max_size, beta, u64::MAX)
}

/// As [`find_balanced_separator`], examining at most `budget` candidate sets.
/// Sizes are tried in increasing order and candidates of one size in
/// colexicographic order, so the first hit has minimum size.
pub fn find_balanced_separator_with_budget(
    g: &Graph,
    max_size: usize,
    beta: Balance,
    budget: u64,
) -> Result<Option<Separation>> {
    let n = g.n();
    let mut examined = 0u64;
    for size in 0..=max_size.min(n) {
        let mut c: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            if examined > budget {
                return Err(HomError::Budget(format!(
                    "separator search stopped after {budget} candidates; no balanced separator of size < {size}"
                )));
            }
            if let Some(sep) = separation_for(g, &c, beta) {
                return Ok(Some(sep));
            }
            if !next_colex(&mut c, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Where a separator returned by [`practical_separator`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatorSource {
    /// Minimum size, found by exhaustive search within the size limit.
    Exhaustive,
    /// The candidate budget ran out; the heuristic answer fits the limit.
    Heuristic,
    /// No separator within the limit was found; the heuristic answer is larger.
    Oversized,
}

/// Exhaustive search up to `limit` vertices while `candidates` lasts, then
/// the layering heuristic. Always returns a valid separation.
pub fn practical_separator(g: &Graph, limit: usize, beta: Balance, candidates: u64) -> (Separation, SeparatorSource) {
    match find_balanced_separator_with_budget(g, limit, beta, candidates) {
        Ok(Some(sep)) => (sep, SeparatorSource::Exhaustive),
        Ok(None) => (heuristic_separator(g, beta), SeparatorSource::Oversized),
        Err(_) => {
            let sep = heuristic_separator(g, beta);
            let source = if sep.size() > limit {
                SeparatorSource::Oversized
            } else {
                SeparatorSource::Heuristic
            };
            (sep, source)
        }
    }
}

/// Advances `c` to the next `k`-subset of `0..n` in colexicographic order.
fn next_colex(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, x) in c.iter_mut().enumerate().take(i) {
                *x = j;
            }
            return true;
        }
    }
    false
}

fn bfs_layers(g: &Graph, start: usize) -> Vec<Vec<usize>> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[start] = 0;
    let mut layers = vec![vec![start]];
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                if layers.len() <= dist[w] {
                    layers.push(Vec::new());
                }
                layers[dist[w]].push(w);
                queue.push_back(w);
            }
        }
    }
    layers
}

/// Breadth-first layering heuristic: the smallest balanced layer over a few
/// start vertices, then greedily shrunk while it stays a balanced separator.
/// Always succeeds; the whole vertex set is the last resort.
pub fn heuristic_separator(g: &Graph, beta: Balance) -> Separation {
    let n = g.n();
    if let Some(sep) = separation_for(g, &[], beta) {
        return sep;
    }
    let comps = g.components();
    let big = comps.iter().max_by_key(|c| c.len()).cloned().unwrap_or_default();
    let mut starts = Vec::new();
    if let Some(&first) = big.first() {
        let far = bfs_layers(g, first).last().unwrap()[0];
        starts.push(far);
        let other = bfs_layers(g, far).last().unwrap()[0];
        starts.push(other);
        starts.push(first);
        if let Some(&lo) = big.iter().min_by_key(|&&v| g.degree(v)) {
            starts.push(lo);
        }
    }
    starts.dedup();
    let mut best: Option<Separation> = None;
    for &st in &starts {
        let layers = bfs_layers(g, st);
        for layer in &layers {
            if best.as_ref().is_some_and(|b| b.s.len() <= layer.len()) {
                continue;
            }
            let mut s = layer.clone();
            s.sort_unstable();
            if let Some(sep) = separation_for(g, &s, beta) {
                best = Some(sep);
            }
        }
    }
    // Hubs first: the shortest prefix of vertices by decreasing degree that
    // leaves balanced pieces. Catches clique-plus-gadget shapes that BFS
    // layers miss.
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let bound = best.as_ref().map_or(n, |b| b.s.len());
    for len in 1..bound {
        let mut s = by_degree[..len].to_vec();
        s.sort_unstable();
        if let Some(sep) = separation_for(g, &s, beta) {
            best = Some(sep);
            break;
        }
    }
    let mut sep = best.unwrap_or_else(|| Separation {
        s: (0..n).collect(),
        v1: Vec::new(),
        v2: Vec::new(),
    });
    let mut i = 0;
    while i < sep.s.len() {
        let mut trial = sep.s.clone();
        trial.remove(i);
        match separation_for(g, &trial, beta) {
            Some(smaller) => sep = smaller,
            None => i += 1,
        }
    }
    sep
}
