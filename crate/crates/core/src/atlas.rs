//! Small-graph enumeration and seeded random graphs.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::Graph;

/// Every loopless labelled graph on `n <= 11` vertices, as an iterator.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 11, "labelled enumeration is limited to 11 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let mut g = Graph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    })
}

/// Canonical code of a loopless graph on at most 11 vertices: the largest
/// upper-triangle adjacency string over all vertex orders that respect a
/// degree-based refinement.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11);
    let mut inv: Vec<(usize, Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd, v)
        })
        .collect();
    inv.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, item) in inv.iter().enumerate() {
        if i > 0 && inv[i - 1].0 == item.0 && inv[i - 1].1 == item.1 {
            cells.last_mut().unwrap().push(item.2);
        } else {
            cells.push(vec![item.2]);
        }
    }
    let mut best = 0u64;
    let mut order = Vec::with_capacity(n);
    permute_cells(g, &mut cells, 0, &mut order, &mut best);
    best
}

fn permute_cells(g: &Graph, cells: &mut [Vec<usize>], ci: usize, order: &mut Vec<usize>, best: &mut u64) {
    if ci == cells.len() {
        let n = order.len();
        let mut code = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                code = code << 1 | g.has_edge(order[i], order[j]) as u64;
            }
        }
        *best = (*best).max(code);
        return;
    }
    let k = cells[ci].len();
    permute_within(g, cells, ci, 0, k, order, best);
}

fn permute_within(
    g: &Graph,
    cells: &mut [Vec<usize>],
    ci: usize,
    i: usize,
    k: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if i == k {
        permute_cells(g, cells, ci + 1, order, best);
        return;
    }
    for j in i..k {
        cells[ci].swap(i, j);
        order.push(cells[ci][i]);
        permute_within(g, cells, ci, i + 1, k, order, best);
        order.pop();
        cells[ci].swap(i, j);
    }
}

/// One representative of every isomorphism class of loopless graphs on `n`
/// vertices, built by adding a vertex to the classes on `n - 1` vertices.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 9, "isomorphism-class enumeration is limited to 9 vertices");
    if n == 0 {
        return vec![Graph::new(0)];
    }
    let smaller = nonisomorphic_graphs(n - 1);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for base in &smaller {
        for mask in 0u32..(1u32 << (n - 1)) {
            let mut g = Graph::new(n);
            for (u, v) in base.edges() {
                g.add_edge(u, v).unwrap();
            }
            for u in 0..n - 1 {
                if mask >> u & 1 == 1 {
                    g.add_edge(u, n - 1).unwrap();
                }
            }
            if seen.insert(canonical_code(&g)) {
                out.push(g);
            }
        }
    }
    out
}

/// Connected isomorphism classes on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    nonisomorphic_graphs(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}

/// Erdős–Rényi graph `G(n, p)` without loops.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}
