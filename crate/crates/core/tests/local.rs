use homlab::hom::{is_local, respects_lists, LocalKind};
use homlab::lists::{ColorSet, ListAssignment};
use homlab::local::{
    oracle_local, oracle_sigma_p3, solve_injective, solve_lshom_c4, solve_lshom_c4_with, solve_lshom_p3,
    solve_lshom_p3_with, surjective::solve_sigma_p3_with, LocalConfig, LocalInstance, SurjInstance,
};
use homlab::{atlas, targets, Graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn injective_targets() -> Vec<Graph> {
    vec![
        targets::complete(3),
        targets::c4(),
        targets::path(4),
        targets::reflexive_complete(3),
        targets::complement_of_path(4),
    ]
}

/// Small leaves and separators so the recursion does real work.
fn eager() -> LocalConfig {
    LocalConfig {
        leaf_size: 1,
        enumeration_limit: 1,
        separator_constant: 1.0,
        density_constant: 0.05,
        ..LocalConfig::default()
    }
}

fn sigma_matches(inst: &LocalInstance, map: &[usize]) -> bool {
    (0..inst.g.n())
        .all(|v| inst.sigma[v].is_none_or(|s| inst.g.neighbors(v).iter().map(|&u| map[u]).collect::<ColorSet>() == s))
}

fn check_injective(inst: &LocalInstance, bijective: bool, config: &LocalConfig) {
    let kind = if bijective {
        LocalKind::Bijective
    } else {
        LocalKind::Injective
    };
    let o = oracle_local(inst, kind, u64::MAX).unwrap();
    let s = solve_injective(inst, bijective, config).unwrap();
    assert_eq!(s.exists(), o.exists(), "{kind:?} on {inst:?}");
    if let Some(map) = &s.witness {
        assert!(is_local(kind, &inst.g, &inst.h, map).unwrap());
        assert!(respects_lists(map, &inst.lists));
        assert!(sigma_matches(inst, map));
    }
}

fn check_surjective(g: &Graph, config: &LocalConfig) {
    for (h, s) in [
        (targets::path(3), solve_lshom_p3_with(g, config).unwrap()),
        (targets::c4(), solve_lshom_c4_with(g, config).unwrap()),
    ] {
        let inst = LocalInstance::new(g.clone(), h.clone()).unwrap();
        let o = oracle_local(&inst, LocalKind::Surjective, u64::MAX).unwrap();
        assert_eq!(s.exists(), o.exists(), "target {h:?} on {g:?}");
        if let Some(map) = &s.witness {
            assert!(is_local(LocalKind::Surjective, g, &h, map).unwrap());
        }
    }
}

#[test]
fn injective_variants_agree_on_small_connected_graphs() {
    let default = LocalConfig::default();
    let config = eager();
    for n in 1..=6 {
        for g in atlas::connected_graphs(n) {
            for h in injective_targets() {
                let inst = LocalInstance::new(g.clone(), h).unwrap();
                for bijective in [false, true] {
                    check_injective(&inst, bijective, &default);
                    check_injective(&inst, bijective, &config);
                }
            }
        }
    }
}

#[test]
fn surjective_solvers_agree_on_small_connected_graphs() {
    let config = eager();
    for n in 1..=7 {
        for g in atlas::connected_graphs(n) {
            check_surjective(&g, &LocalConfig::default());
            check_surjective(&g, &config);
        }
    }
}

#[test]
fn disconnected_graphs_are_solved_per_component() {
    let mut g = targets::cycle(4);
    let base = g.n();
    for _ in 0..4 {
        g.add_vertex();
    }
    g.add_edge(base, base + 1).unwrap();
    g.add_edge(base + 2, base + 1).unwrap();
    g.add_edge(base + 3, base + 1).unwrap();
    check_surjective(&g, &LocalConfig::default());
    assert!(solve_lshom_p3(&g).unwrap().exists());
    assert!(!solve_lshom_c4(&g).unwrap().exists());
}

/// A connected bipartite graph has a locally surjective map to C4 exactly
/// when the two-class problem succeeds with either class on the ends.
#[test]
fn c4_splits_into_two_p3_problems() {
    let both = ColorSet::from_iter([0, 2]);
    for n in 2..=7 {
        for g in atlas::connected_graphs(n) {
            let Some(side) = g.bipartition() else { continue };
            let inst = LocalInstance::new(g.clone(), targets::c4()).unwrap();
            let direct = oracle_local(&inst, LocalKind::Surjective, u64::MAX).unwrap().exists();
            let halves = [false, true].iter().all(|&flip| {
                let in_x: Vec<bool> = side.iter().map(|&s| s != flip).collect();
                let sigma = in_x.iter().map(|&x| if x { ColorSet::EMPTY } else { both }).collect();
                let p = SurjInstance::new(g.clone(), in_x, sigma).unwrap();
                oracle_sigma_p3(&p, u64::MAX).unwrap().is_some()
            });
            assert_eq!(direct, halves, "{g:?}");
        }
    }
}

/// Degree-2 vertices sent to degree-2 targets see two different colours.
#[test]
fn surjective_witnesses_spread_over_degree_two_targets() {
    for n in 2..=7 {
        for g in atlas::connected_graphs(n) {
            for (h, r) in [
                (targets::path(3), solve_lshom_p3(&g).unwrap()),
                (targets::c4(), solve_lshom_c4(&g).unwrap()),
            ] {
                let Some(map) = r.witness else { continue };
                for v in 0..g.n() {
                    if g.degree(v) == 2 && h.degree(map[v]) == 2 {
                        let nb = g.neighbors(v);
                        assert_ne!(map[nb[0]], map[nb[1]]);
                    }
                }
            }
        }
    }
}

fn random_bipartite(rng: &mut ChaCha8Rng, n: usize, p: f64) -> (Graph, Vec<bool>) {
    let in_x: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if in_x[u] != in_x[v] && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    (g, in_x)
}

fn random_surj(seed: u64, max_n: usize) -> SurjInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.1..0.9);
    let (g, in_x) = random_bipartite(&mut rng, n, p);
    let sigma = in_x
        .iter()
        .map(|&x| {
            if x {
                ColorSet::EMPTY
            } else {
                [0, 2].into_iter().filter(|_| rng.gen_bool(0.6)).collect()
            }
        })
        .collect();
    SurjInstance::new(g, in_x, sigma).unwrap()
}

fn random_local(seed: u64, h: &Graph, max_n: usize) -> LocalInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.15..0.7);
    let mut g = atlas::random_graph(n, p, &mut rng);
    if rng.gen_bool(0.2) {
        let v = rng.gen_range(0..n);
        g.add_edge(v, v).unwrap();
    }
    let k = h.n();
    let mut lists = ListAssignment::full(n, k);
    for v in 0..n {
        if rng.gen_bool(0.3) {
            lists.set(v, (0..k).filter(|_| rng.gen_bool(0.7)).collect());
        }
    }
    let mut inst = LocalInstance::with_lists(g, h.clone(), lists).unwrap();
    for v in 0..n {
        if rng.gen_bool(0.15) {
            let s: ColorSet = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
            inst.set_sigma(v, s).unwrap();
        }
    }
    inst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn two_class_solver_matches_oracle(seed in any::<u64>()) {
        let inst = random_surj(seed, 16);
        let want = oracle_sigma_p3(&inst, u64::MAX).unwrap();
        for config in [LocalConfig::default(), eager()] {
            let (got, _) = solve_sigma_p3_with(&inst, &config).unwrap();
            prop_assert_eq!(got.is_some(), want.is_some());
            if let Some(map) = got {
                for y in (0..inst.g.n()).filter(|&y| !inst.in_x[y]) {
                    let seen: ColorSet = inst.g.neighbors(y).iter().map(|&x| map[x]).collect();
                    prop_assert!(inst.sigma[y].is_subset(seen));
                }
            }
        }
    }

    #[test]
    fn injective_with_lists_and_images_matches_oracle(seed in any::<u64>(), which in 0usize..5, bij in any::<bool>()) {
        let h = &injective_targets()[which];
        let inst = random_local(seed, h, 9);
        check_injective(&inst, bij, &LocalConfig::default());
        check_injective(&inst, bij, &eager());
    }
}

#[test]
fn dense_two_class_instances_branch_on_bicliques() {
    let config = LocalConfig {
        enumeration_limit: 2,
        density_constant: 0.05,
        ..LocalConfig::default()
    };
    let mut branched = 0;
    for seed in 0..60 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, in_x) = random_bipartite(&mut rng, 18, 0.8);
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
        let inst = SurjInstance::new(g, in_x, sigma).unwrap();
        let (got, stats) = solve_sigma_p3_with(&inst, &config).unwrap();
        branched += stats.biclique_branches;
        assert_eq!(got.is_some(), oracle_sigma_p3(&inst, u64::MAX).unwrap().is_some());
    }
    assert!(branched > 0);
}

#[test]
fn larger_injective_instances_use_separators() {
    let mut used = 0;
    for seed in 0..30 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = atlas::random_graph(14, 0.18, &mut rng);
        for h in [targets::complete(4), targets::cycle(5)] {
            let inst = LocalInstance::new(g.clone(), h).unwrap();
            for bijective in [false, true] {
                let kind = if bijective {
                    LocalKind::Bijective
                } else {
                    LocalKind::Injective
                };
                let s = solve_injective(&inst, bijective, &LocalConfig::default()).unwrap();
                used += s.stats.separators;
                let o = oracle_local(&inst, kind, u64::MAX).unwrap();
                assert_eq!(s.exists(), o.exists());
            }
        }
    }
    assert!(used > 0);
}
