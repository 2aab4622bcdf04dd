//! Exhaustive reference solver for weighted list homomorphisms.
//!
//! Vertices are assigned in index order. The optimum is found first with
//! bound pruning; a second pass then returns the lexicographically least
//! homomorphism attaining it.

use crate::budget::Meter;
use crate::error::Result;
use crate::weight::Weight;

use super::{WhomInstance, WhomResult};

struct Tables {
    n: usize,
    k: usize,
    lists: Vec<Vec<usize>>,
    vw: Vec<Vec<Weight>>,
    /// Earlier neighbours of each vertex with the edge table
    /// `w[a * k + b]` for (earlier -> a, this -> b); `None` marks a non-edge of H.
    back: Vec<Vec<(usize, Vec<Option<Weight>>)>>,
    loop_w: Vec<Vec<Option<Weight>>>,
    looped: Vec<bool>,
    /// Upper bound on everything contributed by vertices `i..n`.
    tail: Vec<Weight>,
}

impl Tables {
    fn build(inst: &WhomInstance) -> Result<Tables> {
        let (g, h, w) = (&inst.g, &inst.h, &inst.weights);
        let n = g.n();
        let k = h.n();
        let lists: Vec<Vec<usize>> = (0..n).map(|v| inst.lists.get(v).iter().collect()).collect();
        let vw: Vec<Vec<Weight>> = (0..n)
            .map(|v| (0..k).map(|a| w.vertex_weight(v, a)).collect())
            .collect();
        let mut back = vec![Vec::new(); n];
        let mut loop_w = vec![vec![None; k]; n];
        for (u, v) in g.edges() {
            if u == v {
                for (a, slot) in loop_w[u].iter_mut().enumerate() {
                    if h.has_edge(a, a) {
                        *slot = Some(w.edge_weight(u, u, a, a));
                    }
                }
                continue;
            }
            let mut t = vec![None; k * k];
            for a in 0..k {
                for b in 0..k {
                    if h.has_edge(a, b) {
                        t[a * k + b] = Some(w.edge_weight(u, v, a, b));
                    }
                }
            }
            back[v].push((u, t));
        }
        let mut tail = vec![Weight::ZERO; n + 1];
        for v in (0..n).rev() {
            let mut best_v = Weight::NegInf;
            for &a in &lists[v] {
                best_v = best_v.max(vw[v][a]);
            }
            let mut total = tail[v + 1].checked_add(best_v)?;
            if g.has_loop(v) {
                let m = lists[v]
                    .iter()
                    .filter_map(|&a| loop_w[v][a])
                    .max()
                    .unwrap_or(Weight::NegInf);
                total = total.checked_add(m)?;
            }
            for (_, t) in &back[v] {
                let m = t.iter().flatten().copied().max().unwrap_or(Weight::NegInf);
                total = total.checked_add(m)?;
            }
            tail[v] = total;
        }
        Ok(Tables {
            n,
            k,
            lists,
            vw,
            back,
            loop_w,
            looped: (0..n).map(|v| g.has_loop(v)).collect(),
            tail,
        })
    }

    /// Weight gained by putting `v` on `a`, or `None` if that breaks adjacency.
    fn gain(&self, v: usize, a: usize, map: &[usize]) -> Result<Option<Weight>> {
        let mut g = self.vw[v][a];
        if self.looped[v] {
            match self.loop_w[v][a] {
                Some(x) => g = g.checked_add(x)?,
                None => return Ok(None),
            }
        }
        for (u, t) in &self.back[v] {
            match t[map[*u] * self.k + a] {
                Some(x) => g = g.checked_add(x)?,
                None => return Ok(None),
            }
        }
        Ok(Some(g))
    }
}

enum Mode {
    /// Find the optimum value; prune subtrees that cannot beat it.
    Optimum,
    /// Find the first assignment reaching `target`.
    First(Weight),
    /// Count assignments reaching the threshold.
    Count(Weight),
}

struct Search<'a> {
    t: &'a Tables,
    meter: Meter,
    mode: Mode,
    best: Option<Weight>,
    found: Option<Vec<usize>>,
    count: u64,
}

impl Search<'_> {
    fn run(&mut self, v: usize, acc: Weight, map: &mut Vec<usize>) -> Result<bool> {
        self.meter.tick()?;
        if v == self.t.n {
            match self.mode {
                Mode::Optimum => {
                    if self.best.is_none_or(|b| acc > b) {
                        self.best = Some(acc);
                    }
                }
                Mode::First(target) => {
                    if acc >= target {
                        self.found = Some(map.clone());
                        return Ok(true);
                    }
                }
                Mode::Count(th) => {
                    if acc >= th {
                        self.count += 1;
                    }
                }
            }
            return Ok(false);
        }
        let bound = acc.checked_add(self.t.tail[v])?;
        match self.mode {
            Mode::Optimum => {
                if self.best.is_some_and(|b| bound <= b) {
                    return Ok(false);
                }
            }
            Mode::First(th) | Mode::Count(th) => {
                if bound < th {
                    return Ok(false);
                }
            }
        }
        for i in 0..self.t.lists[v].len() {
            let a = self.t.lists[v][i];
            let Some(g) = self.t.gain(v, a, map)? else { continue };
            map.push(a);
            let stop = self.run(v + 1, acc.checked_add(g)?, map)?;
            map.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn search(t: &Tables, mode: Mode, budget: u64) -> Search<'_> {
    Search {
        t,
        meter: Meter::new("weighted oracle", budget, crate::budget::env_time_cap()),
        mode,
        best: None,
        found: None,
        count: 0,
    }
}

/// Exact optimum with the lexicographically least optimal witness.
/// `budget` caps the number of search nodes.
pub fn oracle_whom(inst: &WhomInstance, budget: u64) -> Result<WhomResult> {
    let t = Tables::build(inst)?;
    let mut s = search(&t, Mode::Optimum, budget);
    s.run(0, Weight::ZERO, &mut Vec::with_capacity(t.n))?;
    let Some(opt) = s.best else {
        return Ok(WhomResult::infeasible());
    };
    let used = s.meter.steps();
    let mut s2 = search(&t, Mode::First(opt), budget.saturating_sub(used));
    s2.run(0, Weight::ZERO, &mut Vec::with_capacity(t.n))?;
    let witness = s2.found.expect("the optimum is attained");
    Ok(WhomResult {
        optimum: Some(opt),
        witness: Some(witness),
        stats: Default::default(),
    })
}

/// Number of list homomorphisms with weight at least `threshold`.
pub fn count_whom(inst: &WhomInstance, threshold: Weight, budget: u64) -> Result<u64> {
    let t = Tables::build(inst)?;
    let mut s = search(&t, Mode::Count(threshold), budget);
    s.run(0, Weight::ZERO, &mut Vec::with_capacity(t.n))?;
    Ok(s.count)
}
