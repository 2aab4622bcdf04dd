//! Longest induced path by depth-first extension.

use crate::graph::Graph;

/// Number of vertices on a longest induced path, ignoring loops.
///
/// Stops as soon as a path with `cap + 1` vertices is found and returns
/// `cap + 1`, so a result `<= cap` is exact.
pub fn longest_induced_path(g: &Graph, cap: usize) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut best = 1;
    // adjacent[w] = number of path vertices adjacent to w (w off the path).
    let mut adjacent = vec![0usize; n];
    let mut on_path = vec![false; n];
    for s in 0..n {
        if best > cap {
            break;
        }
        on_path[s] = true;
        bump(g, s, &mut adjacent, 1);
        extend(g, s, 1, cap, &mut best, &mut adjacent, &mut on_path);
        bump(g, s, &mut adjacent, -1);
        on_path[s] = false;
    }
    best.min(cap + 1)
}

fn bump(g: &Graph, v: usize, adjacent: &mut [usize], delta: isize) {
    for &w in g.neighbors(v) {
        if w != v {
            adjacent[w] = (adjacent[w] as isize + delta) as usize;
        }
    }
}

fn extend(
    g: &Graph,
    last: usize,
    len: usize,
    cap: usize,
    best: &mut usize,
    adjacent: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
) {
    if len > *best {
        *best = len;
    }
    if *best > cap {
        return;
    }
    for &w in g.neighbors(last) {
        if w == last || on_path[w] || adjacent[w] != 1 {
            continue;
        }
        on_path[w] = true;
        bump(g, w, adjacent, 1);
        extend(g, w, len + 1, cap, best, adjacent, on_path);
        bump(g, w, adjacent, -1);
        on_path[w] = false;
        if *best > cap {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets;

    #[test]
    fn paths_cycles_and_cliques() {
        assert_eq!(longest_induced_path(&targets::path(6), 100), 6);
        assert_eq!(longest_induced_path(&targets::cycle(7), 100), 6);
        assert_eq!(longest_induced_path(&targets::complete(5), 100), 2);
        assert_eq!(longest_induced_path(&Graph::new(3), 100), 1);
        assert_eq!(longest_induced_path(&Graph::new(0), 100), 0);
    }

    #[test]
    fn cap_short_circuits() {
        assert_eq!(longest_induced_path(&targets::path(20), 5), 6);
    }
}
