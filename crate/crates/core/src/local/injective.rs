//! Separator recursion for locally injective and locally bijective list
//! homomorphisms.
//!
//! Every coloured vertex `u` that still has uncoloured neighbours carries a
//! demand: the exact set of colours those neighbours must take, one colour
//! each. A demand is fixed when `u` is coloured (guessed for injective
//! problems, forced for bijective ones and prescribed images) and split
//! between the two sides whenever a separator cuts `u`'s remaining
//! neighbourhood. Regions are solved independently once the demands on
//! their boundary are fixed.

use std::collections::HashMap;

use crate::budget::Meter;
use crate::error::Result;
use crate::graph::Graph;
use crate::lists::ColorSet;
use crate::separator::{self, Balance};

use super::{LocalConfig, LocalInstance, LocalStats};

pub(super) struct Injective<'a> {
    g: &'a Graph,
    hadj: Vec<ColorSet>,
    bijective: bool,
    lists: Vec<ColorSet>,
    sigma: &'a [Option<ColorSet>],
    config: &'a LocalConfig,
    meter: Meter,
    pub stats: LocalStats,
}

#[derive(Clone)]
struct State {
    colour: Vec<Option<usize>>,
    /// Colours still owed to uncoloured neighbours inside the current region.
    need: Vec<ColorSet>,
    /// Uncoloured neighbours inside the current region.
    open: Vec<usize>,
}

type Found = Vec<(usize, usize)>;

enum Image {
    Free,
    Exact(ColorSet),
    Impossible,
}

impl<'a> Injective<'a> {
    pub(super) fn new(inst: &'a LocalInstance, bijective: bool, config: &'a LocalConfig) -> Self {
        let g = &inst.g;
        let h = &inst.h;
        let hadj: Vec<ColorSet> = (0..h.n()).map(|a| crate::hom::target_neighborhood(h, a)).collect();
        let lists = (0..g.n())
            .map(|v| {
                let d = g.degree(v);
                inst.lists
                    .get(v)
                    .iter()
                    .filter(|&a| if bijective { h.degree(a) == d } else { h.degree(a) >= d })
                    .collect()
            })
            .collect();
        Injective {
            g,
            hadj,
            bijective,
            lists,
            sigma: &inst.sigma,
            config,
            meter: Meter::new("local solver", config.step_budget, config.time_cap),
            stats: LocalStats::default(),
        }
    }

    pub(super) fn run(&mut self) -> Result<Option<Vec<usize>>> {
        let n = self.g.n();
        let st = State {
            colour: vec![None; n],
            need: vec![ColorSet::EMPTY; n],
            open: (0..n).map(|v| self.g.degree(v)).collect(),
        };
        let all: Vec<usize> = (0..n).collect();
        Ok(self.solve(st, &all)?.map(|found| {
            let mut map = vec![0; n];
            for (v, a) in found {
                map[v] = a;
            }
            map
        }))
    }

    fn solve(&mut self, st: State, region: &[usize]) -> Result<Option<Found>> {
        self.meter.tick()?;
        if region.is_empty() {
            return Ok(Some(Vec::new()));
        }
        let (s, v1, v2) = if region.len() <= self.config.leaf_size {
            (region.to_vec(), Vec::new(), Vec::new())
        } else {
            self.split(region)
        };
        let mut found = None;
        self.colour_all(st, &s, 0, &mut Vec::new(), &mut |this, st, fixed| {
            let boundary = boundary_of(this.g, &st, &v1, &v2);
            let mut memo1 = HashMap::new();
            let mut memo2 = HashMap::new();
            this.try_splits(
                &st,
                &boundary,
                0,
                &v1,
                &v2,
                &mut Vec::new(),
                &mut memo1,
                &mut memo2,
                fixed,
                &mut found,
            )
        })?;
        Ok(found)
    }

    fn split(&mut self, region: &[usize]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let sub = self.g.induced_subgraph(region);
        let m = sub.m();
        let limit = (self.config.separator_constant * (m as f64).sqrt()).ceil().max(1.0) as usize;
        let (sep, source) =
            separator::practical_separator(&sub, limit, Balance::TWO_THIRDS, self.config.separator_candidates);
        self.stats.record(&sep, source);
        let back = |xs: &[usize]| xs.iter().map(|&i| region[i]).collect::<Vec<_>>();
        (back(&sep.s), back(&sep.v1), back(&sep.v2))
    }

    /// Colours `s[i..]` in every consistent way, calling `leaf` on each result.
    /// Stops early once `leaf` reports success.
    fn colour_all(
        &mut self,
        st: State,
        s: &[usize],
        i: usize,
        fixed: &mut Found,
        leaf: &mut dyn FnMut(&mut Self, State, &Found) -> Result<bool>,
    ) -> Result<bool> {
        if i == s.len() {
            return leaf(self, st, fixed);
        }
        let v = s[i];
        for c in self.lists[v].iter() {
            self.meter.tick()?;
            let Some((base, coloured)) = self.place(&st, v, c) else {
                continue;
            };
            let open = base.open[v];
            let options: Vec<ColorSet> = match self.exact_image(v, c) {
                Image::Impossible => continue,
                Image::Exact(exact) => {
                    if !coloured.is_subset(exact) {
                        continue;
                    }
                    let rest = exact.minus(coloured);
                    if rest.len() != open {
                        continue;
                    }
                    vec![rest]
                }
                Image::Free => self.hadj[c].minus(coloured).subsets_of_size(open),
            };
            for need in options {
                let mut next = base.clone();
                next.need[v] = need;
                fixed.push((v, c));
                let done = self.colour_all(next, s, i + 1, fixed, leaf)?;
                fixed.pop();
                if done {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Puts `c` on `v`, charging it against the demands of coloured
    /// neighbours. Returns the new state and the colours already present
    /// around `v`, or `None` on a conflict.
    fn place(&self, st: &State, v: usize, c: usize) -> Option<(State, ColorSet)> {
        let mut next = st.clone();
        next.colour[v] = Some(c);
        let mut seen = ColorSet::EMPTY;
        for &u in self.g.neighbors(v) {
            next.open[u] -= 1;
            let Some(cu) = next.colour[u] else { continue };
            if u != v {
                if !next.need[u].contains(c) {
                    return None;
                }
                next.need[u].remove(c);
            }
            if seen.contains(cu) || !self.hadj[c].contains(cu) {
                return None;
            }
            seen.insert(cu);
        }
        if let Some(s) = self.sigma[v] {
            if !seen.is_subset(s) {
                return None;
            }
        }
        Some((next, seen))
    }

    /// The neighbourhood image `v` must have when coloured `c`, if fixed.
    fn exact_image(&self, v: usize, c: usize) -> Image {
        match (self.sigma[v], self.bijective) {
            (Some(s), true) if s == self.hadj[c] => Image::Exact(s),
            (Some(s), false) if s.is_subset(self.hadj[c]) => Image::Exact(s),
            (Some(_), _) => Image::Impossible,
            (None, true) => Image::Exact(self.hadj[c]),
            (None, false) => Image::Free,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn try_splits(
        &mut self,
        st: &State,
        boundary: &[(usize, usize, usize)],
        i: usize,
        v1: &[usize],
        v2: &[usize],
        chosen: &mut Vec<ColorSet>,
        memo1: &mut HashMap<Vec<ColorSet>, Option<Found>>,
        memo2: &mut HashMap<Vec<ColorSet>, Option<Found>>,
        fixed: &Found,
        found: &mut Option<Found>,
    ) -> Result<bool> {
        if i == boundary.len() {
            let key1 = chosen.clone();
            let key2: Vec<ColorSet> = boundary
                .iter()
                .zip(chosen.iter())
                .map(|(&(u, _, _), &c1)| st.need[u].minus(c1))
                .collect();
            let r1 = match memo1.get(&key1) {
                Some(r) => r.clone(),
                None => {
                    let sub = self.side_state(st, boundary, &key1, v1);
                    let r = self.solve(sub, v1)?;
                    memo1.insert(key1, r.clone());
                    r
                }
            };
            let Some(r1) = r1 else { return Ok(false) };
            let r2 = match memo2.get(&key2) {
                Some(r) => r.clone(),
                None => {
                    let sub = self.side_state(st, boundary, &key2, v2);
                    let r = self.solve(sub, v2)?;
                    memo2.insert(key2, r.clone());
                    r
                }
            };
            let Some(r2) = r2 else { return Ok(false) };
            let mut all = fixed.clone();
            all.extend(r1);
            all.extend(r2);
            *found = Some(all);
            return Ok(true);
        }
        let (u, n1, _) = boundary[i];
        for part in st.need[u].subsets_of_size(n1) {
            chosen.push(part);
            let done = self.try_splits(st, boundary, i + 1, v1, v2, chosen, memo1, memo2, fixed, found)?;
            chosen.pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn side_state(&self, st: &State, boundary: &[(usize, usize, usize)], needs: &[ColorSet], side: &[usize]) -> State {
        let mut sub = st.clone();
        let mut inside = vec![false; self.g.n()];
        for &v in side {
            inside[v] = true;
        }
        for (&(u, _, _), &need) in boundary.iter().zip(needs) {
            sub.need[u] = need;
            sub.open[u] = self.g.neighbors(u).iter().filter(|&&w| inside[w]).count();
        }
        sub
    }
}

/// Coloured vertices with uncoloured neighbours, with how many of those lie
/// in each side.
fn boundary_of(g: &Graph, st: &State, v1: &[usize], v2: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut side = vec![0u8; g.n()];
    for &v in v1 {
        side[v] = 1;
    }
    for &v in v2 {
        side[v] = 2;
    }
    let mut out = Vec::new();
    let mut seen = vec![false; g.n()];
    for &w in v1.iter().chain(v2) {
        for &u in g.neighbors(w) {
            if st.colour[u].is_some() && !seen[u] {
                seen[u] = true;
                let n1 = g.neighbors(u).iter().filter(|&&x| side[x] == 1).count();
                let n2 = g.neighbors(u).iter().filter(|&&x| side[x] == 2).count();
                out.push((u, n1, n2));
            }
        }
    }
    out.sort_unstable();
    out
}
