//! Two-class formulation behind locally surjective maps to P3 and C4.
//!
//! G is bipartite with classes X and Y. Every `x` in X takes an end of P3
//! (colour 0 or 2), every `y` in Y the middle, and `y` must see each colour
//! of `sigma[y]` on some neighbour. The solver alternates between two moves:
//! on dense subproblems it finds a biclique `X' x Y'` and branches on whether
//! `X'` is all 0, all 2, or mixed (which satisfies all of `Y'` at once);
//! otherwise it colours the X part of a balanced separator, splits the
//! remaining demands of separator Y vertices between the sides, and solves
//! the sides independently.

use std::collections::HashMap;

use crate::budget::Meter;
use crate::error::{HomError, Result};
use crate::graph::Graph;
use crate::lists::ColorSet;
use crate::separator::{self, Balance};

use super::{find_biclique_with_budget, LocalConfig, LocalStats};

/// The two-class problem: `in_x[v]` marks X, `sigma[y]` lists the colours
/// (subset of {0, 2}) that Y vertex `y` must see.
#[derive(Clone, Debug)]
pub struct SurjInstance {
    pub g: Graph,
    pub in_x: Vec<bool>,
    pub sigma: Vec<ColorSet>,
}

impl SurjInstance {
    pub fn new(g: Graph, in_x: Vec<bool>, sigma: Vec<ColorSet>) -> Result<Self> {
        let n = g.n();
        if in_x.len() != n || sigma.len() != n {
            return Err(HomError::Malformed(
                "class and demand vectors must cover every vertex".into(),
            ));
        }
        if g.edges().into_iter().any(|(u, v)| in_x[u] == in_x[v]) {
            return Err(HomError::Precondition("every edge must join X to Y".into()));
        }
        let ends = ColorSet::from_iter([0, 2]);
        for v in 0..n {
            if !sigma[v].is_subset(ends) || (in_x[v] && !sigma[v].is_empty()) {
                return Err(HomError::Malformed(format!("bad demand on vertex {v}")));
            }
        }
        Ok(SurjInstance { g, in_x, sigma })
    }
}

/// Solves the two-class problem; the answer colours X with 0/2 and Y with 1.
pub fn solve_sigma_p3(inst: &SurjInstance) -> Result<Option<Vec<usize>>> {
    Ok(solve_sigma_p3_with(inst, &LocalConfig::default())?.0)
}

pub fn solve_sigma_p3_with(inst: &SurjInstance, config: &LocalConfig) -> Result<(Option<Vec<usize>>, LocalStats)> {
    let g = &inst.g;
    let mut engine = Engine {
        g,
        config,
        meter: Meter::new("surjective solver", config.step_budget, config.time_cap),
        stats: LocalStats::default(),
        mark: vec![false; g.n()],
    };
    let xs: Vec<usize> = (0..g.n()).filter(|&v| inst.in_x[v]).collect();
    let ys: Vec<(usize, ColorSet)> = (0..g.n())
        .filter(|&v| !inst.in_x[v])
        .map(|v| (v, inst.sigma[v]))
        .collect();
    let found = engine.solve(Sub { xs, ys })?;
    let map = found.map(|pairs| {
        let mut map = vec![1; g.n()];
        for (x, c) in pairs {
            map[x] = c;
        }
        map
    });
    Ok((map, engine.stats))
}

/// Exhaustive reference: the lexicographically least colouring of X (in
/// vertex order, 0 before 2) meeting every demand. `budget` caps the number
/// of colourings tried.
pub fn oracle_sigma_p3(inst: &SurjInstance, budget: u64) -> Result<Option<Vec<usize>>> {
    let g = &inst.g;
    let xs: Vec<usize> = (0..g.n()).filter(|&v| inst.in_x[v]).collect();
    if xs.len() >= 63 {
        return Err(HomError::Budget(format!("{} vertices to enumerate", xs.len())));
    }
    let mut meter = Meter::new("two-class oracle", budget, crate::budget::env_time_cap());
    let k = xs.len();
    let mut map = vec![1; g.n()];
    for mask in 0u64..(1 << k) {
        meter.tick()?;
        for (i, &x) in xs.iter().enumerate() {
            map[x] = if mask >> (k - 1 - i) & 1 == 1 { 2 } else { 0 };
        }
        let ok = (0..g.n()).filter(|&y| !inst.in_x[y]).all(|y| {
            let seen: ColorSet = g.neighbors(y).iter().map(|&x| map[x]).collect();
            inst.sigma[y].is_subset(seen)
        });
        if ok {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
struct Sub {
    xs: Vec<usize>,
    ys: Vec<(usize, ColorSet)>,
}

type Found = Vec<(usize, usize)>;

struct Engine<'a> {
    g: &'a Graph,
    config: &'a LocalConfig,
    meter: Meter,
    stats: LocalStats,
    /// Scratch membership flags, always cleared after use.
    mark: Vec<bool>,
}

impl Engine<'_> {
    fn solve(&mut self, sub: Sub) -> Result<Option<Found>> {
        self.meter.tick()?;
        let Some((sub, mut out)) = self.simplify(sub) else {
            return Ok(None);
        };
        if sub.xs.is_empty() {
            return Ok(Some(out));
        }
        let parts = self.components(&sub);
        if parts.len() > 1 {
            for part in parts {
                let Some(found) = self.solve(part)? else {
                    return Ok(None);
                };
                out.extend(found);
            }
            return Ok(Some(out));
        }
        let found = if sub.xs.len() <= self.config.enumeration_limit {
            self.enumerate(&sub)?
        } else {
            match self.dense_branch(&sub)? {
                Some(result) => result,
                None => self.separate(&sub)?,
            }
        };
        Ok(found.map(|f| {
            out.extend(f);
            out
        }))
    }

    /// Applies colours, drops satisfied demands, forces single-choice
    /// vertices and gives colour 0 to X vertices nobody depends on.
    fn simplify(&mut self, mut sub: Sub) -> Option<(Sub, Found)> {
        let mut out = Vec::new();
        loop {
            sub.ys.retain(|&(_, s)| !s.is_empty());
            let mut forced = None;
            for &x in &sub.xs {
                self.mark[x] = true;
            }
            let mut failed = false;
            for &(y, s) in &sub.ys {
                let mut nbrs = self.g.neighbors(y).iter().filter(|&&x| self.mark[x]);
                let first = nbrs.next();
                let more = nbrs.next().is_some();
                match (first, more) {
                    (None, _) => failed = true,
                    (Some(&x), false) if s.len() == 1 => forced = Some((x, s.first().unwrap())),
                    (Some(_), false) if s.len() > 1 => failed = true,
                    _ => {}
                }
                if failed || forced.is_some() {
                    break;
                }
            }
            for &x in &sub.xs {
                self.mark[x] = false;
            }
            if failed {
                return None;
            }
            match forced {
                Some((x, c)) => {
                    sub = self.assign(sub, &[(x, c)]);
                    out.push((x, c));
                }
                None => break,
            }
        }
        for &(y, _) in &sub.ys {
            self.mark[y] = true;
        }
        let (needed, idle): (Vec<usize>, Vec<usize>) = sub
            .xs
            .iter()
            .partition(|&&x| self.g.neighbors(x).iter().any(|&y| self.mark[y]));
        for &(y, _) in &sub.ys {
            self.mark[y] = false;
        }
        out.extend(idle.into_iter().map(|x| (x, 0)));
        sub.xs = needed;
        Some((sub, out))
    }

    /// Removes coloured X vertices and the demands they meet.
    fn assign(&self, sub: Sub, colours: &[(usize, usize)]) -> Sub {
        let xs = sub
            .xs
            .into_iter()
            .filter(|x| !colours.iter().any(|(v, _)| v == x))
            .collect();
        let ys = sub
            .ys
            .into_iter()
            .map(|(y, mut s)| {
                for &(x, c) in colours {
                    if self.g.has_edge(x, y) {
                        s.remove(c);
                    }
                }
                (y, s)
            })
            .collect();
        Sub { xs, ys }
    }

    fn local_graph(&self, sub: &Sub) -> (Graph, Vec<usize>) {
        let mut vertices: Vec<usize> = sub.xs.iter().copied().chain(sub.ys.iter().map(|&(y, _)| y)).collect();
        vertices.sort_unstable();
        (self.g.induced_subgraph(&vertices), vertices)
    }

    fn components(&self, sub: &Sub) -> Vec<Sub> {
        let (local, vertices) = self.local_graph(sub);
        let comps = local.components();
        if comps.len() == 1 {
            return vec![sub.clone()];
        }
        let mut which = HashMap::new();
        for (i, comp) in comps.iter().enumerate() {
            for &v in comp {
                which.insert(vertices[v], i);
            }
        }
        let mut parts = vec![
            Sub {
                xs: Vec::new(),
                ys: Vec::new()
            };
            comps.len()
        ];
        for &x in &sub.xs {
            parts[which[&x]].xs.push(x);
        }
        for &(y, s) in &sub.ys {
            parts[which[&y]].ys.push((y, s));
        }
        parts
    }

    fn enumerate(&mut self, sub: &Sub) -> Result<Option<Found>> {
        self.stats.leaves += 1;
        let k = sub.xs.len();
        let pos: HashMap<usize, usize> = sub.xs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let needs: Vec<(Vec<usize>, ColorSet)> = sub
            .ys
            .iter()
            .map(|&(y, s)| {
                let nb = self.g.neighbors(y).iter().filter_map(|x| pos.get(x).copied()).collect();
                (nb, s)
            })
            .collect();
        for mask in 0u64..(1 << k) {
            self.meter.tick()?;
            let colour = |i: usize| if mask >> (k - 1 - i) & 1 == 1 { 2 } else { 0 };
            let ok = needs
                .iter()
                .all(|(nb, s)| s.is_subset(nb.iter().map(|&i| colour(i)).collect()));
            if ok {
                return Ok(Some(sub.xs.iter().enumerate().map(|(i, &x)| (x, colour(i))).collect()));
            }
        }
        Ok(None)
    }

    /// On a dense subproblem, branches on a biclique. `Ok(None)` means the
    /// subproblem is sparse or no biclique was found in budget.
    fn dense_branch(&mut self, sub: &Sub) -> Result<Option<Option<Found>>> {
        let (local, vertices) = self.local_graph(sub);
        let n = local.n() as f64;
        let limit = (self.config.density_constant / 3.0 * n.powf(4.0 / 3.0) * n.ln()).ceil();
        if (local.m() as f64) <= limit {
            return Ok(None);
        }
        let t = self
            .config
            .biclique_side
            .unwrap_or_else(|| n.cbrt().ceil() as usize)
            .max(1);
        let (a, b) = match find_biclique_with_budget(&local, t, self.config.biclique_budget) {
            Ok(Some(pair)) => pair,
            Ok(None) => return Ok(None),
            Err(e) if e.is_budget() => return Ok(None),
            Err(e) => return Err(e),
        };
        // In a bipartite graph one side of the biclique lies in X.
        let a: Vec<usize> = a.into_iter().map(|i| vertices[i]).collect();
        let b: Vec<usize> = b.into_iter().map(|i| vertices[i]).collect();
        let x_side = if sub.xs.binary_search(&a[0]).is_ok() { a } else { b };
        self.stats.biclique_branches += 1;
        let mut choices: Vec<Vec<(usize, usize)>> = vec![
            x_side.iter().map(|&x| (x, 0)).collect(),
            x_side.iter().map(|&x| (x, 2)).collect(),
        ];
        for &x1 in &x_side {
            for &x2 in &x_side {
                if x1 != x2 {
                    choices.push(vec![(x1, 0), (x2, 2)]);
                }
            }
        }
        for colours in choices {
            let next = self.assign(sub.clone(), &colours);
            if let Some(mut found) = self.solve(next)? {
                found.extend(colours);
                return Ok(Some(Some(found)));
            }
        }
        Ok(Some(None))
    }

    fn separate(&mut self, sub: &Sub) -> Result<Option<Found>> {
        let (local, vertices) = self.local_graph(sub);
        let n = local.n() as f64;
        let limit = (self.config.separator_constant * n.powf(2.0 / 3.0) * n.ln().max(1.0).sqrt()).ceil() as usize;
        let (sep, source) =
            separator::practical_separator(&local, limit, Balance::TWO_THIRDS, self.config.separator_candidates);
        self.stats.record(&sep, source);
        let back = |xs: &[usize]| xs.iter().map(|&i| vertices[i]).collect::<Vec<_>>();
        let (s, v1, v2) = (back(&sep.s), back(&sep.v1), back(&sep.v2));
        let is_x = |v: &usize| sub.xs.binary_search(v).is_ok();
        let sx: Vec<usize> = s.iter().copied().filter(is_x).collect();
        let demand: HashMap<usize, ColorSet> = sub.ys.iter().copied().collect();
        let side_ys = |side: &[usize]| -> Vec<usize> {
            let mut ys: Vec<usize> = side.iter().copied().filter(|v| !is_x(v)).collect();
            ys.extend(
                s.iter()
                    .copied()
                    .filter(|v| !is_x(v) && side.iter().any(|&w| self.g.has_edge(*v, w))),
            );
            ys.sort_unstable();
            ys
        };
        let ys1 = side_ys(&v1);
        let ys2 = side_ys(&v2);
        let mut xs1: Vec<usize> = v1.iter().copied().filter(is_x).collect();
        let mut xs2: Vec<usize> = v2.iter().copied().filter(is_x).collect();
        xs1.sort_unstable();
        xs2.sort_unstable();
        let cut_ys: Vec<usize> = s.iter().copied().filter(|v| !is_x(v)).collect();
        let mut memo1: HashMap<Vec<ColorSet>, Option<Found>> = HashMap::new();
        let mut memo2: HashMap<Vec<ColorSet>, Option<Found>> = HashMap::new();
        let k = sx.len();
        if k >= 63 {
            return Err(HomError::Budget(format!("separator with {k} X vertices")));
        }
        for mask in 0u64..(1 << k) {
            self.meter.tick()?;
            let colours: Vec<(usize, usize)> = sx
                .iter()
                .enumerate()
                .map(|(i, &x)| (x, if mask >> (k - 1 - i) & 1 == 1 { 2 } else { 0 }))
                .collect();
            let mut left: HashMap<usize, ColorSet> = HashMap::new();
            for (&y, &s) in &demand {
                let mut s = s;
                for &(x, c) in &colours {
                    if self.g.has_edge(x, y) {
                        s.remove(c);
                    }
                }
                left.insert(y, s);
            }
            // Demands of separator Y vertices go to one side per colour.
            let mut splits: Vec<Vec<(ColorSet, ColorSet)>> = Vec::new();
            let mut dead = false;
            for &y in &cut_ys {
                let s = left[&y];
                let on1 = ys1.binary_search(&y).is_ok();
                let on2 = ys2.binary_search(&y).is_ok();
                let mut opts = Vec::new();
                for size in 0..=s.len() {
                    for part in s.subsets_of_size(size) {
                        let rest = s.minus(part);
                        if (part.is_empty() || on1) && (rest.is_empty() || on2) {
                            opts.push((part, rest));
                        }
                    }
                }
                if opts.is_empty() {
                    dead = true;
                    break;
                }
                splits.push(opts);
            }
            if dead {
                continue;
            }
            let mut pick = vec![0usize; splits.len()];
            loop {
                let mut d1 = left.clone();
                let mut d2 = left.clone();
                for (i, &y) in cut_ys.iter().enumerate() {
                    let (a, b) = splits[i][pick[i]];
                    d1.insert(y, a);
                    d2.insert(y, b);
                }
                let key1: Vec<ColorSet> = ys1.iter().map(|y| d1[y]).collect();
                let key2: Vec<ColorSet> = ys2.iter().map(|y| d2[y]).collect();
                let r1 = self.side(&xs1, &ys1, key1, &mut memo1)?;
                if let Some(r1) = r1 {
                    if let Some(r2) = self.side(&xs2, &ys2, key2, &mut memo2)? {
                        let mut found = colours.clone();
                        found.extend(r1);
                        found.extend(r2);
                        return Ok(Some(found));
                    }
                }
                if !advance(&mut pick, &splits) {
                    break;
                }
            }
        }
        Ok(None)
    }

    fn side(
        &mut self,
        xs: &[usize],
        ys: &[usize],
        key: Vec<ColorSet>,
        memo: &mut HashMap<Vec<ColorSet>, Option<Found>>,
    ) -> Result<Option<Found>> {
        if let Some(r) = memo.get(&key) {
            return Ok(r.clone());
        }
        let sub = Sub {
            xs: xs.to_vec(),
            ys: ys.iter().copied().zip(key.iter().copied()).collect(),
        };
        let r = self.solve(sub)?;
        memo.insert(key, r.clone());
        Ok(r)
    }
}

/// Mixed-radix increment; false once every combination has been seen.
fn advance(pick: &mut [usize], splits: &[Vec<(ColorSet, ColorSet)>]) -> bool {
    for i in (0..pick.len()).rev() {
        pick[i] += 1;
        if pick[i] < splits[i].len() {
            return true;
        }
        pick[i] = 0;
    }
    false
}
