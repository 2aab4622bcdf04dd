//! Locally injective, bijective and surjective list homomorphisms.
//!
//! The injective and bijective variants run a separator recursion that
//! guesses each coloured vertex's neighbourhood image. Locally surjective
//! homomorphisms are solved for the targets P3 and C4 only, through the
//! two-class reformulation in [`surjective`].

mod injective;
mod oracle;
pub mod surjective;

use std::time::Duration;

use crate::budget::{self, Meter};
use crate::error::{HomError, Result};
use crate::graph::Graph;
use crate::hom::{Homomorphism, LocalKind};
use crate::lists::{ColorSet, ListAssignment, MAX_TARGET};
use crate::separator::{Separation, SeparatorSource};

pub use oracle::oracle_local;
pub use surjective::{oracle_sigma_p3, solve_sigma_p3, SurjInstance};

/// A list instance with optional prescribed neighbourhood images:
/// `sigma[v] = Some(s)` demands `h(N(v)) = s`.
#[derive(Clone, Debug)]
pub struct LocalInstance {
    pub g: Graph,
    pub h: Graph,
    pub lists: ListAssignment,
    pub sigma: Vec<Option<ColorSet>>,
}

impl LocalInstance {
    pub fn new(g: Graph, h: Graph) -> Result<Self> {
        let lists = ListAssignment::full(g.n(), h.n());
        Self::with_lists(g, h, lists)
    }

    pub fn with_lists(g: Graph, h: Graph, lists: ListAssignment) -> Result<Self> {
        if h.n() > MAX_TARGET {
            return Err(HomError::Precondition(format!(
                "target has {} vertices; at most {MAX_TARGET} are supported",
                h.n()
            )));
        }
        lists.validate(g.n(), h.n())?;
        let sigma = vec![None; g.n()];
        Ok(LocalInstance { g, h, lists, sigma })
    }

    /// Prescribes the neighbourhood image of `v`.
    pub fn set_sigma(&mut self, v: usize, s: ColorSet) -> Result<()> {
        if v >= self.g.n() || !s.is_subset(ColorSet::full(self.h.n())) {
            return Err(HomError::Malformed(format!("bad image constraint on vertex {v}")));
        }
        self.sigma[v] = Some(s);
        Ok(())
    }
}

/// Counters describing how a solve went.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalStats {
    pub separators: u64,
    pub heuristic_separators: u64,
    pub oversized_separators: u64,
    pub largest_separator: usize,
    /// Dense steps that branched on a biclique.
    pub biclique_branches: u64,
    /// Subproblems finished by enumeration.
    pub leaves: u64,
}

impl LocalStats {
    pub(crate) fn record(&mut self, sep: &Separation, source: SeparatorSource) {
        self.separators += 1;
        match source {
            SeparatorSource::Exhaustive => {}
            SeparatorSource::Heuristic => self.heuristic_separators += 1,
            SeparatorSource::Oversized => self.oversized_separators += 1,
        }
        self.largest_separator = self.largest_separator.max(sep.size());
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalResult {
    pub witness: Option<Homomorphism>,
    pub stats: LocalStats,
}

impl LocalResult {
    pub fn yes(map: Homomorphism) -> Self {
        LocalResult {
            witness: Some(map),
            stats: LocalStats::default(),
        }
    }

    pub fn no() -> Self {
        LocalResult {
            witness: None,
            stats: LocalStats::default(),
        }
    }

    pub fn exists(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct LocalConfig {
    /// Regions this small are coloured outright.
    pub leaf_size: usize,
    /// Surjective subproblems with at most this many X vertices are enumerated.
    pub enumeration_limit: usize,
    /// Separator size limit factor: `c * sqrt(m)` for the injective variants,
    /// `c * n^(2/3) * sqrt(ln n)` for the surjective one.
    pub separator_constant: f64,
    pub separator_candidates: u64,
    /// Edge-count factor above which the surjective solver looks for a biclique.
    pub density_constant: f64,
    /// Biclique side; `None` means `ceil(n^(1/3))`.
    pub biclique_side: Option<usize>,
    /// Search nodes the biclique finder may visit before giving up.
    pub biclique_budget: u64,
    pub step_budget: u64,
    pub time_cap: Option<Duration>,
}

impl Default for LocalConfig {
    fn default() -> Self {
        LocalConfig {
            leaf_size: 4,
            enumeration_limit: 8,
            separator_constant: 2.0,
            separator_candidates: 20_000,
            density_constant: 1.0,
            biclique_side: None,
            biclique_budget: 100_000,
            step_budget: u64::MAX,
            time_cap: budget::env_time_cap(),
        }
    }
}

pub fn solve_lihom(inst: &LocalInstance) -> Result<LocalResult> {
    solve_injective(inst, false, &LocalConfig::default())
}

pub fn solve_lbhom(inst: &LocalInstance) -> Result<LocalResult> {
    solve_injective(inst, true, &LocalConfig::default())
}

/// Locally injective (or, with `bijective`, locally bijective) list
/// homomorphism, honouring prescribed images.
pub fn solve_injective(inst: &LocalInstance, bijective: bool, config: &LocalConfig) -> Result<LocalResult> {
    let g = &inst.g;
    // A locally injective map never sends a vertex to one of smaller degree.
    if !bijective && g.max_degree() > inst.h.max_degree() {
        return Ok(LocalResult::no());
    }
    let mut engine = injective::Injective::new(inst, bijective, config);
    let witness = engine.run()?;
    Ok(LocalResult {
        witness,
        stats: engine.stats,
    })
}

/// Dispatches on the kind; surjective instances must target P3 or C4 with
/// full lists and no prescribed images.
pub fn solve_local(inst: &LocalInstance, kind: LocalKind, config: &LocalConfig) -> Result<LocalResult> {
    match kind {
        LocalKind::Injective => solve_injective(inst, false, config),
        LocalKind::Bijective => solve_injective(inst, true, config),
        LocalKind::Surjective => {
            let plain = inst.sigma.iter().all(Option::is_none)
                && inst.lists.as_slice().iter().all(|&l| l == ColorSet::full(inst.h.n()));
            if plain && inst.h == crate::targets::path(3) {
                solve_lshom_p3_with(&inst.g, config)
            } else if plain && inst.h == crate::targets::c4() {
                solve_lshom_c4_with(&inst.g, config)
            } else {
                Err(HomError::Precondition(
                    "locally surjective solving is available for P3 and C4 without lists".into(),
                ))
            }
        }
    }
}

pub fn solve_lshom_p3(g: &Graph) -> Result<LocalResult> {
    solve_lshom_p3_with(g, &LocalConfig::default())
}

pub fn solve_lshom_c4(g: &Graph) -> Result<LocalResult> {
    solve_lshom_c4_with(g, &LocalConfig::default())
}

/// Locally surjective homomorphism to P3 (vertices 0-1-2). Each component
/// must put one colour class on the middle vertex and cover both ends from
/// every middle vertex; both choices of class are tried.
pub fn solve_lshom_p3_with(g: &Graph, config: &LocalConfig) -> Result<LocalResult> {
    let Some(side) = usable_bipartition(g) else {
        return Ok(LocalResult::no());
    };
    let mut stats = LocalStats::default();
    let mut map = vec![1; g.n()];
    for comp in g.components() {
        let mut done = false;
        for flip in [false, true] {
            let in_x: Vec<bool> = comp.iter().map(|&v| side[v] != flip).collect();
            if let Some(colours) = solve_component(g, &comp, in_x, config, &mut stats)? {
                for (&v, c) in comp.iter().zip(colours) {
                    map[v] = c;
                }
                done = true;
                break;
            }
        }
        if !done {
            return Ok(LocalResult { witness: None, stats });
        }
    }
    Ok(LocalResult {
        witness: Some(map),
        stats,
    })
}

/// Locally surjective homomorphism to C4 (cycle 0-1-2-3). A component works
/// exactly when both class orientations of the P3 problem do; the two
/// answers combine into `h1` on one class and `h2 + 1` on the other.
pub fn solve_lshom_c4_with(g: &Graph, config: &LocalConfig) -> Result<LocalResult> {
    let Some(side) = usable_bipartition(g) else {
        return Ok(LocalResult::no());
    };
    let mut stats = LocalStats::default();
    let mut map = vec![0; g.n()];
    for comp in g.components() {
        let in_x: Vec<bool> = comp.iter().map(|&v| !side[v]).collect();
        let Some(h1) = solve_component(g, &comp, in_x.clone(), config, &mut stats)? else {
            return Ok(LocalResult { witness: None, stats });
        };
        let flipped: Vec<bool> = in_x.iter().map(|&b| !b).collect();
        let Some(h2) = solve_component(g, &comp, flipped, config, &mut stats)? else {
            return Ok(LocalResult { witness: None, stats });
        };
        for (i, &v) in comp.iter().enumerate() {
            map[v] = if in_x[i] { h1[i] } else { h2[i] + 1 };
        }
    }
    Ok(LocalResult {
        witness: Some(map),
        stats,
    })
}

/// The bipartition, provided G is bipartite, loopless and has no isolated
/// vertex; otherwise no locally surjective map to P3 or C4 exists.
fn usable_bipartition(g: &Graph) -> Option<Vec<bool>> {
    if !g.isolated_vertices().is_empty() {
        return None;
    }
    g.bipartition()
}

/// Solves one component with the class `in_x` on the ends of P3. Returns
/// colours in component order (ends 0/2, middle 1).
fn solve_component(
    g: &Graph,
    comp: &[usize],
    in_x: Vec<bool>,
    config: &LocalConfig,
    stats: &mut LocalStats,
) -> Result<Option<Vec<usize>>> {
    let sub = g.induced_subgraph(comp);
    let sigma = in_x
        .iter()
        .map(|&x| {
            if x {
                ColorSet::EMPTY
            } else {
                ColorSet::from_iter([0, 2])
            }
        })
        .collect();
    let inst = SurjInstance::new(sub, in_x, sigma)?;
    let (found, s) = surjective::solve_sigma_p3_with(&inst, config)?;
    stats.separators += s.separators;
    stats.heuristic_separators += s.heuristic_separators;
    stats.oversized_separators += s.oversized_separators;
    stats.largest_separator = stats.largest_separator.max(s.largest_separator);
    stats.biclique_branches += s.biclique_branches;
    stats.leaves += s.leaves;
    Ok(found)
}

/// Disjoint sets `X'`, `Y'` of `t` vertices each with every cross pair
/// adjacent, or `None`. The first hit in lexicographic order of `X'` wins.
pub fn find_biclique(g: &Graph, t: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    find_biclique_with_budget(g, t, u64::MAX).expect("unbounded search")
}

/// As [`find_biclique`], visiting at most `budget` search nodes.
pub fn find_biclique_with_budget(g: &Graph, t: usize, budget: u64) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if t == 0 {
        return Err(HomError::Precondition("biclique side must be at least 1".into()));
    }
    let mut meter = Meter::new("biclique search", budget, None);
    let all: Vec<usize> = (0..g.n()).collect();
    let mut chosen = Vec::new();
    biclique_dfs(g, t, 0, &all, &mut chosen, &mut meter)
}

fn biclique_dfs(
    g: &Graph,
    t: usize,
    from: usize,
    common: &[usize],
    chosen: &mut Vec<usize>,
    meter: &mut Meter,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    meter.tick()?;
    let others: Vec<usize> = common.iter().copied().filter(|v| !chosen.contains(v)).collect();
    if others.len() < t {
        return Ok(None);
    }
    if chosen.len() == t {
        return Ok(Some((chosen.clone(), others[..t].to_vec())));
    }
    for v in from..g.n() {
        if g.n() - v < t - chosen.len() {
            break;
        }
        let next: Vec<usize> = common.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
        if next.len() < t {
            continue;
        }
        chosen.push(v);
        let hit = biclique_dfs(g, t, v + 1, &next, chosen, meter)?;
        chosen.pop();
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{is_locally_bijective, is_locally_injective, is_locally_surjective};
    use crate::targets;

    fn star(k: usize) -> Graph {
        Graph::from_edges(k + 1, &(1..=k).map(|i| (0, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn star_has_no_injective_map_to_triangle() {
        let inst = LocalInstance::new(star(3), targets::complete(3)).unwrap();
        assert!(!solve_lihom(&inst).unwrap().exists());
        assert!(!oracle_local(&inst, LocalKind::Injective, u64::MAX).unwrap().exists());
    }

    #[test]
    fn hexagon_wraps_twice_around_triangle() {
        let inst = LocalInstance::new(targets::cycle(6), targets::complete(3)).unwrap();
        let r = solve_lbhom(&inst).unwrap();
        let map = r.witness.unwrap();
        assert!(is_locally_bijective(&inst.g, &inst.h, &map).unwrap());
        let o = oracle_local(&inst, LocalKind::Bijective, u64::MAX).unwrap();
        assert_eq!(o.witness, Some(vec![0, 1, 2, 0, 1, 2]));
    }

    #[test]
    fn square_has_a_distance_labelling() {
        let inst = LocalInstance::new(targets::cycle(4), targets::complement_of_path(5)).unwrap();
        let map = solve_lihom(&inst).unwrap().witness.unwrap();
        assert!(is_locally_injective(&inst.g, &inst.h, &map).unwrap());
    }

    #[test]
    fn p3_examples() {
        let p3 = targets::path(3);
        assert!(!solve_lshom_p3(&targets::path(2)).unwrap().exists());
        let c4 = targets::cycle(4);
        let map = solve_lshom_p3(&c4).unwrap().witness.unwrap();
        assert!(is_locally_surjective(&c4, &p3, &map).unwrap());
        let s = star(3);
        let map = solve_lshom_p3(&s).unwrap().witness.unwrap();
        assert_eq!(map[0], 1);
        assert!(is_locally_surjective(&s, &p3, &map).unwrap());
    }

    #[test]
    fn c4_examples() {
        let h = targets::c4();
        for (g, yes) in [
            (targets::cycle(4), true),
            (targets::path(2), false),
            (targets::cycle(8), true),
        ] {
            let r = solve_lshom_c4(&g).unwrap();
            assert_eq!(r.exists(), yes);
            if let Some(map) = r.witness {
                assert!(is_locally_surjective(&g, &h, &map).unwrap());
            }
        }
    }

    #[test]
    fn pentagon_onto_pentagon() {
        let inst = LocalInstance::new(targets::cycle(5), targets::cycle(5)).unwrap();
        let o = oracle_local(&inst, LocalKind::Surjective, u64::MAX).unwrap();
        assert_eq!(o.witness, Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn isolated_vertices_block_surjectivity() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(!solve_lshom_p3(&g).unwrap().exists());
        assert!(!solve_lshom_c4(&g).unwrap().exists());
    }

    #[test]
    fn biclique_examples() {
        let k33 = Graph::from_edges(6, &(0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect::<Vec<_>>()).unwrap();
        assert_eq!(find_biclique(&k33, 3), Some((vec![0, 1, 2], vec![3, 4, 5])));
        assert_eq!(find_biclique(&targets::cycle(6), 2), None);
        let (x, y) = find_biclique(&targets::complete(4), 2).unwrap();
        assert_eq!((x, y), (vec![0, 1], vec![2, 3]));
        assert!(find_biclique_with_budget(&k33, 0, 10).is_err());
    }
}
