//! Max-cut from not-all-equal satisfiability, and bisection from max-cut.

use std::collections::BTreeSet;

use crate::error::{HomError, Result};
use crate::graph::Graph;
use crate::models;

use super::{CnfFormula, Dialect, Goal, ReductionOutput};

/// Vertices `0..n` are the variables. Each 3-clause then adds six vertices
/// `l1 r1 l2 r2 l3 r3` closing the 9-cycle `l1 x_i r1 l2 x_j r2 l3 x_k r3`;
/// a 2-clause is a single edge. Threshold `m2 + 8·m3`.
pub fn posnae3sat_to_maxcut(phi: &CnfFormula) -> Result<ReductionOutput> {
    if phi.dialect != Dialect::PosNae3 {
        return Err(HomError::Malformed(
            "expected an all-positive not-all-equal formula".into(),
        ));
    }
    phi.validate()?;
    let mut seen = BTreeSet::new();
    for c in &phi.clauses {
        let mut key = c.clone();
        key.sort_unstable();
        if !seen.insert(key) {
            return Err(HomError::Precondition(format!("repeated clause {c:?}")));
        }
    }
    for (v, &(p, _)) in phi.occurrences().iter().enumerate() {
        if p > 3 {
            return Err(HomError::Precondition(format!(
                "variable {} occurs {p} times, at most 3 allowed",
                v + 1
            )));
        }
    }
    let mut g = Graph::new(phi.vars);
    let mut labels: Vec<String> = (1..=phi.vars).map(|i| format!("x{i}")).collect();
    let (mut m2, mut m3) = (0i64, 0i64);
    for (ci, c) in phi.clauses.iter().enumerate() {
        let xs: Vec<usize> = c.iter().map(|&l| l as usize - 1).collect();
        if xs.len() == 2 {
            m2 += 1;
            g.add_edge(xs[0], xs[1])?;
            continue;
        }
        m3 += 1;
        let mut cycle = Vec::with_capacity(9);
        for (j, &x) in xs.iter().enumerate() {
            let l = g.add_vertex();
            let r = g.add_vertex();
            labels.push(format!("l{}_{}", ci + 1, j + 1));
            labels.push(format!("r{}_{}", ci + 1, j + 1));
            cycle.extend([l, x, r]);
        }
        for i in 0..9 {
            g.add_edge(cycle[i], cycle[(i + 1) % 9])?;
        }
    }
    let g = g.with_labels(labels);
    let (target, weights) = models::maxcut(&g);
    Ok(ReductionOutput {
        graph: g,
        target,
        weights: Some(weights),
        lists: None,
        goal: Goal::AtLeast(m2 + 8 * m3),
        arrangement: None,
        claimed_slope_count: None,
        notes: "not-all-equal 3-SAT to max-cut via 9-cycle clause gadgets".into(),
    })
}

/// `F` keeps `G` on vertices `0..n` and hangs a pendant `n + v` on each `v`.
/// Threshold `n + k` on bisections.
pub fn maxcut_to_bisection(g: &Graph, k: usize) -> Result<ReductionOutput> {
    let n = g.n();
    let mut f = Graph::new(2 * n);
    for (u, v) in g.edges() {
        f.add_edge(u, v)?;
    }
    for v in 0..n {
        f.add_edge(v, n + v)?;
    }
    let labels = (0..n).map(|v| format!("v{v}")).chain((0..n).map(|v| format!("p{v}")));
    let f = f.with_labels(labels);
    let (target, weights) = models::maxcut(&f);
    Ok(ReductionOutput {
        graph: f,
        target,
        weights: Some(weights),
        lists: None,
        goal: Goal::Bisection((n + k) as i64),
        arrangement: None,
        claimed_slope_count: None,
        notes: "max-cut to max-bisection by pendant vertices".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets;

    #[test]
    fn clause_gadgets() {
        let one2 = CnfFormula::new(2, vec![vec![1, 2]], Dialect::PosNae3).unwrap();
        let out = posnae3sat_to_maxcut(&one2).unwrap();
        assert_eq!((out.graph.n(), out.graph.m(), out.threshold()), (2, 1, Some(1)));
        let one3 = CnfFormula::new(3, vec![vec![1, 2, 3]], Dialect::PosNae3).unwrap();
        let out = posnae3sat_to_maxcut(&one3).unwrap();
        assert_eq!((out.graph.n(), out.graph.m(), out.threshold()), (9, 9, Some(8)));
        assert!(out.graph.degree(0) == 2 && out.graph.is_connected());
        let empty = CnfFormula::new(1, vec![], Dialect::PosNae3).unwrap();
        let out = posnae3sat_to_maxcut(&empty).unwrap();
        assert_eq!((out.graph.n(), out.graph.m(), out.threshold()), (1, 0, Some(0)));
    }

    #[test]
    fn rejects_bad_formulas() {
        let three = CnfFormula::new(2, vec![vec![1, 2]], Dialect::ThreeSat).unwrap();
        assert!(posnae3sat_to_maxcut(&three).is_err());
        let twice = CnfFormula::new(2, vec![vec![1, 2], vec![2, 1]], Dialect::PosNae3).unwrap();
        assert!(posnae3sat_to_maxcut(&twice).is_err());
        let busy = CnfFormula::new(
            5,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![1, 5]],
            Dialect::PosNae3,
        )
        .unwrap();
        assert!(posnae3sat_to_maxcut(&busy).is_err());
    }

    #[test]
    fn pendant_construction() {
        let out = maxcut_to_bisection(&targets::complete(3), 2).unwrap();
        assert_eq!((out.graph.n(), out.graph.m(), out.threshold()), (6, 6, Some(5)));
        assert_eq!(out.graph.max_degree(), 3);
        let out = maxcut_to_bisection(&Graph::new(1), 0).unwrap();
        assert_eq!((out.graph.n(), out.graph.m(), out.threshold()), (2, 1, Some(1)));
        let out = maxcut_to_bisection(&targets::cycle(4), 4).unwrap();
        assert_eq!(out.threshold(), Some(8));
        assert_eq!(super::super::brute::max_cut(&out.graph).unwrap(), 8);
    }
}
