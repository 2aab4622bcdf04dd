//! Exhaustive reference search for locally constrained list homomorphisms.
//!
//! Depth-first over vertices in index order, colours ascending, with sound
//! domain propagation: edge support, distinct colours in every
//! neighbourhood (injective variants) and coverage of the required
//! neighbourhood image (surjective variants and prescribed images). Every
//! complete assignment is re-checked with the plain predicates, so the first
//! one accepted is the lexicographically least solution.

use crate::budget::Meter;
use crate::error::Result;
use crate::hom::{self, LocalKind};
use crate::lists::ColorSet;

use super::{LocalInstance, LocalResult};

struct Engine<'a> {
    inst: &'a LocalInstance,
    kind: LocalKind,
    hadj: Vec<ColorSet>,
    meter: Meter,
}

impl Engine<'_> {
    /// Colours `z` must see exactly on its neighbourhood when it takes `c`.
    fn required(&self, z: usize, c: usize) -> Option<ColorSet> {
        match self.inst.sigma[z] {
            Some(s) => Some(s),
            None if self.kind.surjective() => Some(self.hadj[c]),
            None => None,
        }
    }

    fn propagate(&self, dom: &mut [ColorSet]) -> bool {
        let g = &self.inst.g;
        let n = g.n();
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                let before = dom[v];
                let mut d = dom[v];
                for &u in g.neighbors(v) {
                    if u == v {
                        continue;
                    }
                    let mut support = ColorSet::EMPTY;
                    for b in dom[u].iter() {
                        support = support.or(self.hadj[b]);
                    }
                    d = d.and(support);
                }
                // A colour is usable only if the neighbourhood can still
                // realise what it demands.
                let nb = g.neighbors(v);
                let mut reachable = ColorSet::EMPTY;
                for &u in nb {
                    reachable = reachable.or(dom[u]);
                }
                for c in d.iter() {
                    let ok = match self.required(v, c) {
                        Some(req) => {
                            req.is_subset(reachable)
                                && (!self.kind.injective() || req.len() == nb.len())
                                && req.len() <= nb.len()
                                && req.is_subset(self.hadj[c])
                        }
                        None => true,
                    };
                    if !ok {
                        d.remove(c);
                    }
                }
                if d.is_empty() {
                    return false;
                }
                if d != before {
                    dom[v] = d;
                    changed = true;
                }
            }
            for z in 0..n {
                let nb = g.neighbors(z);
                // Prescribed images bound every neighbour's colour.
                if let Some(s) = self.inst.sigma[z] {
                    for &u in nb {
                        let d = dom[u].and(s);
                        if d.is_empty() {
                            return false;
                        }
                        if d != dom[u] {
                            dom[u] = d;
                            changed = true;
                        }
                    }
                }
                if self.kind.injective() {
                    for &u in nb {
                        if dom[u].len() != 1 {
                            continue;
                        }
                        for &w in nb {
                            if w != u && dom[w].and(dom[u]) != ColorSet::EMPTY {
                                let d = dom[w].minus(dom[u]);
                                if d.is_empty() {
                                    return false;
                                }
                                dom[w] = d;
                                changed = true;
                            }
                        }
                    }
                }
                if dom[z].len() == 1 {
                    let c = dom[z].first().unwrap();
                    if let Some(req) = self.required(z, c) {
                        for x in req.iter() {
                            let mut holders = nb.iter().filter(|&&u| dom[u].contains(x));
                            match (holders.next(), holders.next()) {
                                (None, _) => return false,
                                (Some(&u), None) if dom[u].len() > 1 => {
                                    dom[u] = ColorSet::singleton(x);
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn accepts(&self, map: &[usize]) -> bool {
        let (g, h) = (&self.inst.g, &self.inst.h);
        if !hom::is_homomorphism(g, h, map).unwrap_or(false) || !hom::respects_lists(map, &self.inst.lists) {
            return false;
        }
        (0..g.n()).all(|v| {
            hom::vertex_is_local(self.kind, g, h, map, v)
                && self.inst.sigma[v].is_none_or(|s| g.neighbors(v).iter().map(|&u| map[u]).collect::<ColorSet>() == s)
        })
    }

    fn search(&mut self, dom: Vec<ColorSet>) -> Result<Option<Vec<usize>>> {
        self.meter.tick()?;
        let Some(v) = dom.iter().position(|d| d.len() > 1) else {
            let map: Vec<usize> = dom.iter().map(|d| d.first().unwrap()).collect();
            return Ok(self.accepts(&map).then_some(map));
        };
        for c in dom[v].iter() {
            let mut next = dom.clone();
            next[v] = ColorSet::singleton(c);
            if self.propagate(&mut next) {
                if let Some(found) = self.search(next)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
}

/// Decides the locally constrained list problem of the given kind, returning
/// the lexicographically least witness. `budget` caps search nodes.
pub fn oracle_local(inst: &LocalInstance, kind: LocalKind, budget: u64) -> Result<LocalResult> {
    let g = &inst.g;
    let h = &inst.h;
    let hadj: Vec<ColorSet> = (0..h.n()).map(|a| hom::target_neighborhood(h, a)).collect();
    let mut dom: Vec<ColorSet> = inst.lists.as_slice().to_vec();
    for (v, d) in dom.iter_mut().enumerate() {
        let deg = g.degree(v);
        for a in d.iter() {
            let da = h.degree(a);
            let ok = match kind {
                LocalKind::Injective => deg <= da,
                LocalKind::Bijective => deg == da,
                LocalKind::Surjective => deg >= da,
            } && (!g.has_loop(v) || h.has_loop(a));
            if !ok {
                d.remove(a);
            }
        }
    }
    let mut engine = Engine {
        inst,
        kind,
        hadj,
        meter: Meter::new("local oracle", budget, crate::budget::env_time_cap()),
    };
    if dom.iter().any(|d| d.is_empty()) || !engine.propagate(&mut dom) {
        return Ok(LocalResult::no());
    }
    Ok(match engine.search(dom)? {
        Some(map) => LocalResult::yes(map),
        None => LocalResult::no(),
    })
}
