//! Weighted list homomorphisms to a fixed target.
//!
//! The solver alternates three steps on each connected piece of the
//! remaining graph:
//! * propagation: drop colours without support on some edge and fix vertices
//!   whose list became a singleton;
//! * branching on a high-degree vertex, used only when the target has the
//!   common-neighbour property (see [`crate::star`]);
//! * otherwise colouring a balanced separator in every way and recursing on
//!   what remains.
//!
//! Fixed vertices are removed from the instance. Their edge weights are
//! folded into per-colour vertex terms of the neighbours that remain, so each
//! weight is charged exactly once.

mod oracle;

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{HomError, Result};
use crate::graph::Graph;
use crate::hom::{self, Homomorphism};
use crate::lists::{ColorSet, ListAssignment, MAX_TARGET};
use crate::separator::{self, Balance, SeparatorSource};
use crate::star;
use crate::weight::{Weight, WeightModel};

pub use oracle::{count_whom, oracle_whom};

#[derive(Clone, Debug)]
pub struct WhomInstance {
    pub g: Graph,
    pub h: Graph,
    pub weights: WeightModel,
    pub lists: ListAssignment,
}

impl WhomInstance {
    pub fn new(g: Graph, h: Graph, weights: WeightModel, lists: ListAssignment) -> Result<Self> {
        if h.n() > MAX_TARGET {
            return Err(HomError::Precondition(format!(
                "targets are limited to {MAX_TARGET} vertices"
            )));
        }
        lists.validate(g.n(), h.n())?;
        weights.validate(&g, &h)?;
        Ok(WhomInstance { g, h, weights, lists })
    }

    /// Instance with every list equal to `V(H)`.
    pub fn with_full_lists(g: Graph, h: Graph, weights: WeightModel) -> Result<Self> {
        let lists = ListAssignment::full(g.n(), h.n());
        WhomInstance::new(g, h, weights, lists)
    }
}

/// Counters describing how a solve proceeded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub branch_steps: u64,
    pub separator_steps: u64,
    pub heuristic_separators: u64,
    /// Separators larger than the size budget; a sign the input is not an
    /// intersection graph of the expected kind.
    pub oversized_separators: u64,
    pub largest_separator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhomResult {
    /// `None` when no list homomorphism exists.
    pub optimum: Option<Weight>,
    pub witness: Option<Homomorphism>,
    pub stats: SolveStats,
}

impl WhomResult {
    pub fn infeasible() -> Self {
        WhomResult {
            optimum: None,
            witness: None,
            stats: SolveStats::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WhomConfig {
    /// Separators are searched exhaustively up to `⌈c·n^{2/3}⌉` vertices.
    pub separator_constant: f64,
    /// Candidate sets the exhaustive separator search may examine before the
    /// layering heuristic takes over.
    pub separator_candidates: u64,
    pub step_budget: u64,
    pub time_cap: Option<Duration>,
    /// Worker threads for the top levels of the recursion.
    pub jobs: usize,
}

impl Default for WhomConfig {
    fn default() -> Self {
        WhomConfig {
            separator_constant: 4.0,
            separator_candidates: 20_000,
            step_budget: u64::MAX,
            time_cap: crate::budget::env_time_cap(),
            jobs: 1,
        }
    }
}

/// Result of propagation on a whole instance.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Preprocessed {
    Infeasible,
    Reduced {
        /// Vertex `i` of `reduced` is vertex `kept[i]` of the input.
        reduced: WhomInstance,
        kept: Vec<usize>,
        fixed: Vec<(usize, usize)>,
        accumulated: Weight,
    },
}

/// A separator colouring: state, weight so far, and the fixed pairs.
type Coloured = (State, Weight, Vec<(usize, usize)>);

struct Ctx {
    k: usize,
    /// Non-loop neighbours with the index of the connecting edge.
    adj: Vec<Vec<(usize, usize)>>,
    edge_lo: Vec<usize>,
    /// `edge_w[e][a * k + b]`: weight with the lower endpoint on `a`.
    edge_w: Vec<Vec<Weight>>,
    hadj: Vec<ColorSet>,
    star: bool,
    config: WhomConfig,
    deadline: Option<Instant>,
    steps: AtomicU64,
    branch_steps: AtomicU64,
    separator_steps: AtomicU64,
    heuristic_separators: AtomicU64,
    oversized: AtomicU64,
    largest: AtomicU64,
}

#[derive(Clone)]
struct State {
    active: Vec<bool>,
    lists: Vec<ColorSet>,
    unary: Vec<Vec<Weight>>,
}

type Partial = (Weight, Vec<(usize, usize)>);

impl Ctx {
    fn new(inst: &WhomInstance, config: WhomConfig) -> Result<(Ctx, State)> {
        let (g, h) = (&inst.g, &inst.h);
        let n = g.n();
        let k = h.n();
        let hadj: Vec<ColorSet> = (0..k).map(|a| hom::target_neighborhood(h, a)).collect();
        let mut adj = vec![Vec::new(); n];
        let mut edge_lo = Vec::new();
        let mut edge_w = Vec::new();
        let mut lists: Vec<ColorSet> = inst.lists.as_slice().to_vec();
        let mut unary: Vec<Vec<Weight>> = (0..n)
            .map(|v| (0..k).map(|a| inst.weights.vertex_weight(v, a)).collect())
            .collect();
        for (u, v) in g.edges() {
            if u == v {
                let looped: ColorSet = (0..k).filter(|&a| h.has_loop(a)).collect();
                lists[u] = lists[u].and(looped);
                for a in looped.iter() {
                    unary[u][a] = unary[u][a].checked_add(inst.weights.edge_weight(u, u, a, a))?;
                }
                continue;
            }
            let e = edge_lo.len();
            edge_lo.push(u);
            let mut t = vec![Weight::NegInf; k * k];
            for a in 0..k {
                for b in hadj[a].iter() {
                    t[a * k + b] = inst.weights.edge_weight(u, v, a, b);
                }
            }
            edge_w.push(t);
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        let deadline = config.time_cap.map(|d| Instant::now() + d);
        let ctx = Ctx {
            k,
            adj,
            edge_lo,
            edge_w,
            hadj,
            star: star::has_property_star(h),
            config,
            deadline,
            steps: AtomicU64::new(0),
            branch_steps: AtomicU64::new(0),
            separator_steps: AtomicU64::new(0),
            heuristic_separators: AtomicU64::new(0),
            oversized: AtomicU64::new(0),
            largest: AtomicU64::new(0),
        };
        let state = State {
            active: vec![true; n],
            lists,
            unary,
        };
        Ok((ctx, state))
    }

    fn stats(&self) -> SolveStats {
        SolveStats {
            nodes: self.steps.load(Ordering::Relaxed),
            branch_steps: self.branch_steps.load(Ordering::Relaxed),
            separator_steps: self.separator_steps.load(Ordering::Relaxed),
            heuristic_separators: self.heuristic_separators.load(Ordering::Relaxed),
            oversized_separators: self.oversized.load(Ordering::Relaxed),
            largest_separator: self.largest.load(Ordering::Relaxed) as usize,
        }
    }

    fn tick(&self) -> Result<()> {
        let s = self.steps.fetch_add(1, Ordering::Relaxed) + 1;
        if s > self.config.step_budget {
            return Err(HomError::Budget(format!(
                "weighted solver: more than {} nodes",
                self.config.step_budget
            )));
        }
        if let Some(d) = self.deadline {
            if s & 0xff == 0 && Instant::now() > d {
                return Err(HomError::Budget("weighted solver: time cap reached".into()));
            }
        }
        Ok(())
    }

    /// Weight of edge `e` when `v` takes `a` and its other endpoint takes `b`.
    fn edge_weight(&self, e: usize, v: usize, a: usize, b: usize) -> Weight {
        if self.edge_lo[e] == v {
            self.edge_w[e][a * self.k + b]
        } else {
            self.edge_w[e][b * self.k + a]
        }
    }

    /// Fixes `v` to `a`, removing it and updating its active neighbours.
    /// Returns the weight charged to `v`.
    fn assign(&self, st: &mut State, v: usize, a: usize) -> Result<Weight> {
        let gained = st.unary[v][a];
        st.active[v] = false;
        for &(u, e) in &self.adj[v] {
            if !st.active[u] {
                continue;
            }
            st.lists[u] = st.lists[u].and(self.hadj[a]);
            for b in st.lists[u].iter() {
                let w = self.edge_weight(e, v, a, b);
                st.unary[u][b] = st.unary[u][b].checked_add(w)?;
            }
        }
        Ok(gained)
    }

    /// Arc consistency plus singleton fixing. `None` means infeasible.
    fn propagate(&self, st: &mut State, vertices: &[usize]) -> Result<Option<Partial>> {
        let mut acc = Weight::ZERO;
        let mut fixed = Vec::new();
        loop {
            let mut changed = true;
            while changed {
                changed = false;
                for &v in vertices {
                    if !st.active[v] {
                        continue;
                    }
                    let mut allowed = st.lists[v];
                    for &(u, _) in &self.adj[v] {
                        if !st.active[u] {
                            continue;
                        }
                        let mut support = ColorSet::EMPTY;
                        for b in st.lists[u].iter() {
                            support = support.or(self.hadj[b]);
                        }
                        allowed = allowed.and(support);
                    }
                    if allowed != st.lists[v] {
                        st.lists[v] = allowed;
                        changed = true;
                    }
                    if allowed.is_empty() {
                        return Ok(None);
                    }
                }
            }
            let single = vertices
                .iter()
                .copied()
                .find(|&v| st.active[v] && st.lists[v].len() == 1);
            match single {
                Some(v) => {
                    let a = st.lists[v].first().unwrap();
                    acc = acc.checked_add(self.assign(st, v, a)?)?;
                    fixed.push((v, a));
                }
                None => return Ok(Some((acc, fixed))),
            }
        }
    }

    fn active_components(&self, st: &State, vertices: &[usize]) -> Vec<Vec<usize>> {
        let mut seen: Vec<bool> = st.active.iter().map(|&a| !a).collect();
        let mut out = Vec::new();
        for &s in vertices {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &(w, _) in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn restricted(&self, st: &State, keep: &[usize]) -> State {
        let mut s = st.clone();
        s.active.iter_mut().for_each(|a| *a = false);
        for &v in keep {
            s.active[v] = true;
        }
        s
    }

    fn solve(&self, mut st: State, vertices: &[usize], depth: usize) -> Result<Option<Partial>> {
        self.tick()?;
        let Some((acc, mut fixed)) = self.propagate(&mut st, vertices)? else {
            return Ok(None);
        };
        let comps = self.active_components(&st, vertices);
        let mut total = acc;
        for comp in comps {
            let sub = self.restricted(&st, &comp);
            match self.solve_connected(sub, &comp, depth)? {
                None => return Ok(None),
                Some((w, f)) => {
                    total = total.checked_add(w)?;
                    fixed.extend(f);
                }
            }
        }
        Ok(Some((total, fixed)))
    }

    fn solve_connected(&self, st: State, comp: &[usize], depth: usize) -> Result<Option<Partial>> {
        if comp.len() == 1 {
            let v = comp[0];
            let best = st.lists[v]
                .iter()
                .max_by(|&a, &b| st.unary[v][a].cmp(&st.unary[v][b]).then(b.cmp(&a)));
            return Ok(best.map(|a| (st.unary[v][a], vec![(v, a)])));
        }
        if self.star {
            let threshold = (comp.len() as f64).cbrt().ceil() as usize;
            let (v, deg) = comp
                .iter()
                .map(|&v| (v, self.active_degree(&st, v)))
                .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)))
                .unwrap();
            if deg > threshold {
                if let Some(a) = self.branch_colour(&st, v) {
                    return self.branch(st, comp, v, a, depth);
                }
            }
        }
        self.separate(st, comp, depth)
    }

    fn active_degree(&self, st: &State, v: usize) -> usize {
        self.adj[v].iter().filter(|&&(u, _)| st.active[u]).count()
    }

    /// Lowest `a ∈ L(v)` non-adjacent to some colour of the most frequent
    /// neighbour list.
    fn branch_colour(&self, st: &State, v: usize) -> Option<usize> {
        let mut freq: Vec<(ColorSet, usize)> = Vec::new();
        for &(u, _) in &self.adj[v] {
            if !st.active[u] {
                continue;
            }
            match freq.iter_mut().find(|(s, _)| *s == st.lists[u]) {
                Some(entry) => entry.1 += 1,
                None => freq.push((st.lists[u], 1)),
            }
        }
        let common = freq.iter().max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)))?.0;
        st.lists[v]
            .iter()
            .find(|&a| common.iter().any(|b| !self.hadj[a].contains(b)))
    }

    fn branch(&self, st: State, comp: &[usize], v: usize, a: usize, depth: usize) -> Result<Option<Partial>> {
        self.branch_steps.fetch_add(1, Ordering::Relaxed);
        let mut take = st.clone();
        let gained = self.assign(&mut take, v, a)?;
        let mut skip = st;
        skip.lists[v].remove(a);
        let run_take = || -> Result<Option<Partial>> {
            Ok(match self.solve(take, comp, depth + 1)? {
                Some((w, mut f)) => {
                    f.push((v, a));
                    Some((w.checked_add(gained)?, f))
                }
                None => None,
            })
        };
        let run_skip = || self.solve(skip, comp, depth + 1);
        let (first, second) = if self.parallel(depth) {
            rayon::join(run_take, run_skip)
        } else {
            (run_take(), run_skip())
        };
        Ok(better(first?, second?))
    }

    fn parallel(&self, depth: usize) -> bool {
        self.config.jobs > 1 && depth < 3
    }

    fn find_separator(&self, st: &State, comp: &[usize]) -> Vec<usize> {
        self.separator_steps.fetch_add(1, Ordering::Relaxed);
        let g = self.induced(st, comp);
        let n = comp.len();
        let limit = (self.config.separator_constant * (n as f64).powf(2.0 / 3.0)).ceil() as usize;
        let (sep, source) =
            separator::practical_separator(&g, limit, Balance::TWO_THIRDS, self.config.separator_candidates);
        match source {
            SeparatorSource::Exhaustive => {}
            SeparatorSource::Heuristic => {
                self.heuristic_separators.fetch_add(1, Ordering::Relaxed);
            }
            SeparatorSource::Oversized => {
                self.oversized.fetch_add(1, Ordering::Relaxed);
            }
        }
        self.largest.fetch_max(sep.s.len() as u64, Ordering::Relaxed);
        sep.s.iter().map(|&i| comp[i]).collect()
    }

    fn induced(&self, st: &State, comp: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; st.active.len()];
        for (i, &v) in comp.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(comp.len());
        for (i, &v) in comp.iter().enumerate() {
            for &(u, _) in &self.adj[v] {
                let j = index[u];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    fn separate(&self, st: State, comp: &[usize], depth: usize) -> Result<Option<Partial>> {
        let s = self.find_separator(&st, comp);
        let mut colourings = Vec::new();
        self.colour_separator(st, &s, 0, Weight::ZERO, &mut Vec::new(), &mut colourings)?;
        let rest: Vec<usize> = comp.iter().copied().filter(|v| !s.contains(v)).collect();
        let finish = |(st, w, fixed): Coloured| -> Result<Option<Partial>> {
            Ok(match self.solve(st, &rest, depth + 1)? {
                Some((r, mut f)) => {
                    f.extend(fixed);
                    Some((r.checked_add(w)?, f))
                }
                None => None,
            })
        };
        let results: Vec<Result<Option<Partial>>> = if self.parallel(depth) {
            colourings.into_par_iter().map(finish).collect()
        } else {
            colourings.into_iter().map(finish).collect()
        };
        let mut best = None;
        for r in results {
            best = better(best, r?);
        }
        Ok(best)
    }

    /// Enumerates list colourings of `s` that respect adjacency among
    /// themselves, each with the state after fixing them.
    fn colour_separator(
        &self,
        st: State,
        s: &[usize],
        i: usize,
        acc: Weight,
        fixed: &mut Vec<(usize, usize)>,
        out: &mut Vec<Coloured>,
    ) -> Result<()> {
        if i == s.len() {
            out.push((st, acc, fixed.clone()));
            return Ok(());
        }
        let v = s[i];
        for a in st.lists[v].iter() {
            self.tick()?;
            let mut next = st.clone();
            let w = self.assign(&mut next, v, a)?;
            let dead = self.adj[v]
                .iter()
                .any(|&(u, _)| next.active[u] && next.lists[u].is_empty());
            if dead {
                continue;
            }
            fixed.push((v, a));
            self.colour_separator(next, s, i + 1, acc.checked_add(w)?, fixed, out)?;
            fixed.pop();
        }
        Ok(())
    }
}

/// The better of two partial solutions; ties keep the first.
fn better(a: Option<Partial>, b: Option<Partial>) -> Option<Partial> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(if y.0 > x.0 { y } else { x }),
    }
}

/// Maximum weight of a list homomorphism, with a witness.
pub fn solve_whom(inst: &WhomInstance) -> Result<WhomResult> {
    solve_whom_with(inst, WhomConfig::default())
}

pub fn solve_whom_with(inst: &WhomInstance, config: WhomConfig) -> Result<WhomResult> {
    let n = inst.g.n();
    let jobs = config.jobs;
    let (ctx, st) = Ctx::new(inst, config)?;
    let all: Vec<usize> = (0..n).collect();
    let outcome = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| HomError::Precondition(format!("thread pool: {e}")))?;
        pool.install(|| ctx.solve(st, &all, 0))?
    } else {
        ctx.solve(st, &all, 0)?
    };
    let stats = ctx.stats();
    let Some((opt, fixed)) = outcome else {
        return Ok(WhomResult {
            stats,
            ..WhomResult::infeasible()
        });
    };
    let mut map = vec![usize::MAX; n];
    for (v, a) in fixed {
        map[v] = a;
    }
    debug_assert!(map.iter().all(|&a| a != usize::MAX));
    debug_assert_eq!(hom::weight_of(&inst.g, &inst.h, &inst.weights, &map).ok(), Some(opt));
    Ok(WhomResult {
        optimum: Some(opt),
        witness: Some(map),
        stats,
    })
}

/// Runs propagation alone: supports, singleton fixing, then removal of fixed
/// vertices with their weights folded into the remaining vertex terms.
pub fn preprocess(inst: &WhomInstance) -> Result<Preprocessed> {
    let n = inst.g.n();
    let k = inst.h.n();
    let (ctx, mut st) = Ctx::new(inst, WhomConfig::default())?;
    let all: Vec<usize> = (0..n).collect();
    let Some((accumulated, fixed)) = ctx.propagate(&mut st, &all)? else {
        return Ok(Preprocessed::Infeasible);
    };
    let kept: Vec<usize> = (0..n).filter(|&v| st.active[v]).collect();
    let g = inst.g.induced_subgraph(&kept);
    let mut weights = WeightModel::new();
    let mut lists = Vec::with_capacity(kept.len());
    for (i, &v) in kept.iter().enumerate() {
        lists.push(st.lists[v]);
        for a in 0..k {
            weights.set_vertex(i, a, st.unary[v][a]);
        }
    }
    for (i, j) in g.edges() {
        if i == j {
            continue;
        }
        for a in 0..k {
            for b in 0..k {
                if inst.h.has_edge(a, b) && a <= b {
                    weights.set_edge(i, j, a, b, inst.weights.edge_weight(kept[i], kept[j], a, b));
                }
            }
        }
    }
    let reduced = WhomInstance::new(g, inst.h.clone(), weights, ListAssignment::from_sets(lists))?;
    Ok(Preprocessed::Reduced {
        reduced,
        kept,
        fixed,
        accumulated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{models, targets};

    fn full(g: Graph, h: Graph, w: WeightModel) -> WhomInstance {
        WhomInstance::with_full_lists(g, h, w).unwrap()
    }

    #[test]
    fn maxcut_of_triangle_is_two() {
        let g = targets::complete(3);
        let (h, w) = models::maxcut(&g);
        let r = solve_whom(&full(g.clone(), h.clone(), w.clone())).unwrap();
        assert_eq!(r.optimum, Some(Weight::from(2)));
        let o = oracle_whom(&full(g, h, w), u64::MAX).unwrap();
        assert_eq!(o.optimum, Some(Weight::from(2)));
        assert_eq!(o.witness, Some(vec![0, 0, 1]));
    }

    #[test]
    fn independent_set_of_c5_is_two() {
        let g = targets::cycle(5);
        let (h, w) = models::independent_set(&g);
        let r = solve_whom(&full(g, h, w)).unwrap();
        assert_eq!(r.optimum, Some(Weight::from(2)));
    }

    #[test]
    fn infeasible_versus_negative_infinity() {
        let g = targets::complete(3);
        let h = targets::path(2);
        let r = solve_whom(&full(g.clone(), h.clone(), WeightModel::new())).unwrap();
        assert_eq!(r.optimum, None);
        let mut w = WeightModel::new();
        let g2 = targets::path(2);
        w.set_edge(0, 1, 0, 1, Weight::NegInf);
        let r = solve_whom(&full(g2.clone(), h.clone(), w.clone())).unwrap();
        assert_eq!(r.optimum, Some(Weight::NegInf));
        assert_eq!(
            oracle_whom(&full(g2, h, w), u64::MAX).unwrap().optimum,
            Some(Weight::NegInf)
        );
    }

    #[test]
    fn count_matches_enumeration() {
        let g = targets::path(3);
        let (h, w) = models::maxcut(&g);
        let inst = full(g, h, w);
        assert_eq!(count_whom(&inst, Weight::NegInf, u64::MAX).unwrap(), 8);
        assert_eq!(count_whom(&inst, Weight::from(2), u64::MAX).unwrap(), 2);
    }

    #[test]
    fn preprocessing_keeps_the_optimum() {
        let g = targets::path(4);
        let h = targets::path(3);
        let mut lists = ListAssignment::full(4, 3);
        lists.set(0, ColorSet::singleton(0));
        let mut w = WeightModel::new();
        w.set_vertex(2, 0, Weight::from(3));
        w.set_edge(0, 1, 0, 1, Weight::from(5));
        let inst = WhomInstance::new(g, h, w, lists).unwrap();
        let opt = oracle_whom(&inst, u64::MAX).unwrap().optimum.unwrap();
        match preprocess(&inst).unwrap() {
            Preprocessed::Reduced {
                reduced, accumulated, ..
            } => {
                let rest = oracle_whom(&reduced, u64::MAX).unwrap().optimum.unwrap();
                assert_eq!(accumulated.checked_add(rest).unwrap(), opt);
            }
            Preprocessed::Infeasible => panic!("instance is feasible"),
        }
    }

    #[test]
    fn loops_restrict_to_looped_targets() {
        let g = Graph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        let h = targets::oct_target();
        let (_, w) = models::oct(&g);
        let r = solve_whom(&full(g.clone(), h.clone(), w.clone())).unwrap();
        assert_eq!(r.witness.as_ref().unwrap()[0], 0);
        assert_eq!(r.optimum, oracle_whom(&full(g, h, w), u64::MAX).unwrap().optimum);
    }
}
