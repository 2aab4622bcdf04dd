//! Corpora shared by the reduction tests and the acceptance runner.
#![allow(dead_code)]

use homlab::induced::longest_induced_path;
use homlab::reductions::brute;
use homlab::reductions::*;
use homlab::whom::{solve_whom, WhomInstance};
use homlab::{atlas, targets, Graph, Result, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ORACLE_BUDGET: u64 = 200_000_000;

/// Cases checked and the ones that went wrong.
#[derive(Default, Debug)]
pub struct Report {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn verify(&mut self, source: bool, out: &ReductionOutput, what: impl Fn() -> String) -> Result<()> {
        let ok = verify_reduction(|| Ok(source), out, ORACLE_BUDGET)?;
        self.check(ok, || format!("{}: source says {source}", what()));
        Ok(())
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn graphs_up_to(n: usize) -> impl Iterator<Item = Graph> {
    (1..=n).flat_map(atlas::nonisomorphic_graphs)
}

fn subsets(items: &[Vec<i64>], size: usize) -> Vec<Vec<Vec<i64>>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, c) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], size - 1) {
            rest.insert(0, c.clone());
            out.push(rest);
        }
    }
    out
}

/// Every not-all-equal formula on up to 3 variables with up to 2 clauses.
pub fn posnae_formulas() -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for n in 1..=3i64 {
        let mut clauses: Vec<Vec<i64>> = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                clauses.push(vec![a, b]);
                for c in b + 1..=n {
                    clauses.push(vec![a, b, c]);
                }
            }
        }
        for m in 0..=2 {
            for cs in subsets(&clauses, m) {
                out.push(CnfFormula::new(n as usize, cs, Dialect::PosNae3).unwrap());
            }
        }
    }
    out
}

pub fn nae_maxcut_corpus() -> Result<Report> {
    let mut r = Report::default();
    for phi in posnae_formulas() {
        let out = posnae3sat_to_maxcut(&phi)?;
        let sat = phi.brute_force(20)?.is_some();
        let cut = brute::max_cut(&out.graph)? as i64;
        r.check((cut >= out.threshold().unwrap()) == sat, || {
            format!("max cut {cut} on {phi:?}")
        });
        r.verify(sat, &out, || format!("{phi:?}"))?;
    }
    Ok(r)
}

pub fn bisection_corpus() -> Result<Report> {
    let mut r = Report::default();
    for g in graphs_up_to(5) {
        let cut = brute::max_cut(&g)?;
        for k in 0..=g.m() + 1 {
            let out = maxcut_to_bisection(&g, k)?;
            r.verify(cut >= k, &out, || format!("k={k} on {g:?}"))?;
        }
    }
    // Every maximum cut of F is a bisection, for F on up to 12 vertices.
    for g in graphs_up_to(6) {
        let f = maxcut_to_bisection(&g, 0)?.graph;
        let n = g.n() as u32;
        for side in brute::maximum_cuts(&f)? {
            r.check(side.count_ones() == n, || {
                format!("unbalanced maximum cut {side:b} of F for {g:?}")
            });
        }
    }
    Ok(r)
}

pub fn c4_grid_corpus() -> Result<Report> {
    let mut r = Report::default();
    for g in graphs_up_to(4) {
        let alpha = brute::independence_number(&g)?;
        for k in 0..=4 {
            let out = is_to_whom_c4(&g, k)?;
            r.verify(alpha >= k, &out, || format!("k={k} on {g:?}"))?;
        }
    }
    Ok(r)
}

pub fn oct_corpus() -> Result<Report> {
    let mut r = Report::default();
    let mut graphs = vec![Graph::new(1), targets::complete(2)];
    graphs.extend(atlas::nonisomorphic_graphs(3));
    for g in graphs {
        let alpha = brute::independence_number(&g)?;
        for k in 0..=g.n() + 1 {
            let out = is_to_oct_segments(&g, k)?;
            r.verify(alpha >= k, &out, || format!("k={k} on {g:?}"))?;
        }
    }
    Ok(r)
}

/// Bisections only exist for an even number of vertices. Four-vertex
/// sources already give 72-vertex instances, beyond the oracle, so the
/// corpus is every graph on 2 vertices.
pub fn maxcut_segments_corpus() -> Result<Report> {
    let mut r = Report::default();
    for g in atlas::nonisomorphic_graphs(2) {
        let best = brute::max_bisection(&g)?.expect("even order");
        for k in 0..=g.m() + 1 {
            let out = bisection_to_maxcut_segments(&g, k)?;
            r.verify(best >= k, &out, || format!("k={k} on {g:?}"))?;
        }
    }
    Ok(r)
}

/// Four-vertex sources, answered by the separator solver instead of the
/// oracle. The optimum should be the threshold at `k = 0` plus twice the
/// maximum bisection.
pub fn maxcut_segments_solver_corpus() -> Result<Report> {
    let mut r = Report::default();
    for g in atlas::nonisomorphic_graphs(4) {
        let best = brute::max_bisection(&g)?.expect("even order") as i64;
        let out = bisection_to_maxcut_segments(&g, 0)?;
        let inst = WhomInstance::with_full_lists(out.graph.clone(), out.target.clone(), out.weights.clone().unwrap())?;
        let opt = solve_whom(&inst)?.optimum;
        let want = Weight::from(out.threshold().unwrap() + 2 * best);
        r.check(opt == Some(want), || {
            format!("optimum {opt:?}, expected {want} on {g:?}")
        });
    }
    Ok(r)
}

fn cnf(vars: usize, clauses: &[&[i64]]) -> CnfFormula {
    CnfFormula::new(vars, clauses.iter().map(|c| c.to_vec()).collect(), Dialect::ThreeSat).unwrap()
}

/// Small formulas in which every variable occurs with both signs.
pub fn toy_formulas() -> Vec<CnfFormula> {
    vec![
        cnf(2, &[&[1, 2], &[-1, -2]]),
        cnf(1, &[&[1], &[-1]]),
        cnf(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]),
        cnf(3, &[&[1, 2, 3], &[-1, -2, -3]]),
        cnf(3, &[&[1, -2, 3], &[-1, 2, -3], &[1, 2, -3]]),
    ]
}

/// Formulas with exactly three literals per clause and both signs per variable.
pub fn toy_formulas3() -> Vec<CnfFormula> {
    let mut all8 = Vec::new();
    for mask in 0..8 {
        all8.push(
            (0..3)
                .map(|i| if mask >> i & 1 == 1 { -(i + 1) } else { i + 1 })
                .collect::<Vec<i64>>(),
        );
    }
    vec![
        cnf(3, &[&[1, 2, 3], &[-1, -2, -3]]),
        cnf(1, &[&[1, 1, 1], &[-1, -1, -1]]),
        cnf(3, &[&[1, -2, 3], &[-1, 2, -3], &[1, 2, -3]]),
        CnfFormula::new(3, all8, Dialect::ThreeSat).unwrap(),
        cnf(2, &[&[1, 1, 2], &[-1, -1, 2], &[1, -2, -2], &[-1, -2, -2]]),
    ]
}

pub fn loop_pendant_corpus() -> Result<Report> {
    let mut r = Report::default();
    for phi in toy_formulas3() {
        let sat = phi.brute_force(20)?.is_some();
        for clique in [false, true] {
            let out = threesat_to_lshom_loopedge(&phi, clique)?;
            r.verify(sat, &out, || format!("clique={clique} on {phi:?}"))?;
        }
    }
    Ok(r)
}

pub fn path_cycle_corpus() -> Result<Report> {
    let mut r = Report::default();
    for phi in toy_formulas() {
        let sat = phi.brute_force(20)?.is_some();
        for k in [4, 5] {
            let out = threesat_to_lshom_path(&phi, k)?;
            r.verify(sat, &out, || format!("P{k} on {phi:?}"))?;
        }
        for k in [3, 5, 6] {
            let out = threesat_to_lshom_cycle(&phi, k)?;
            r.verify(sat, &out, || format!("C{k} on {phi:?}"))?;
        }
    }
    Ok(r)
}

/// Seeded random graphs for the size and geometry checks.
pub fn size_graphs() -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..50)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            let p = rng.gen_range(0.0..1.0);
            atlas::random_graph(n, p, &mut rng)
        })
        .collect()
}

fn random_posnae(rng: &mut ChaCha8Rng) -> CnfFormula {
    let n = rng.gen_range(3..=8);
    let mut uses = vec![0; n];
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for _ in 0..rng.gen_range(0..=6) {
        let width = rng.gen_range(2..=3);
        let mut c: Vec<i64> = Vec::new();
        for _ in 0..20 {
            let v = rng.gen_range(0..n);
            if c.len() < width && uses[v] < 3 && !c.contains(&(v as i64 + 1)) {
                c.push(v as i64 + 1);
            }
        }
        let mut key = c.clone();
        key.sort_unstable();
        let dup = clauses.iter().any(|d| {
            let mut e = d.clone();
            e.sort_unstable();
            e == key
        });
        if c.len() >= 2 && !dup {
            for &v in &c {
                uses[v as usize - 1] += 1;
            }
            clauses.push(c);
        }
    }
    CnfFormula::new(n, clauses, Dialect::PosNae3).unwrap()
}

fn geometry_ok(r: &mut Report, out: &ReductionOutput, what: &str) {
    if let Err(e) = out.check_arrangement() {
        r.check(false, || format!("{what}: {e}"));
    } else {
        r.check(true, String::new);
    }
}

pub fn size_corpus() -> Result<Report> {
    let mut r = Report::default();
    for g in size_graphs() {
        let (n, m) = (g.n(), g.m());
        let out = bisection_to_maxcut_segments(&g, 1)?;
        r.check(out.graph.n() == 18 * n + 4 * m, || {
            format!("segment max-cut size on {g:?}")
        });
        geometry_ok(&mut r, &out, "segment max-cut");
        let out = is_to_oct_segments(&g, 1)?;
        r.check(out.graph.n() == 9 * n + 2 * m, || format!("oct size on {g:?}"));
        geometry_ok(&mut r, &out, "oct");
        let out = is_to_whom_c4(&g, 1)?;
        r.check(out.graph.n() == 2 * n, || format!("C4 grid size on {g:?}"));
        geometry_ok(&mut r, &out, "C4 grid");
        let out = maxcut_to_bisection(&g, 1)?;
        r.check(out.graph.n() == 2 * n && out.graph.m() == m + n, || {
            format!("bisection size on {g:?}")
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1a5e);
    for _ in 0..50 {
        let phi = random_posnae(&mut rng);
        let m3 = phi.clauses.iter().filter(|c| c.len() == 3).count();
        let m2 = phi.clauses.len() - m3;
        let out = posnae3sat_to_maxcut(&phi)?;
        r.check(
            out.graph.n() == phi.vars + 6 * m3 && out.graph.m() == m2 + 9 * m3,
            || format!("clause gadget sizes on {phi:?}"),
        );
    }
    for phi in toy_formulas() {
        for k in [4, 5] {
            geometry_ok(&mut r, &threesat_to_lshom_path(&phi, k)?, "path construction");
        }
        for k in [3, 5, 6, 7] {
            geometry_ok(&mut r, &threesat_to_lshom_cycle(&phi, k)?, "cycle construction");
        }
    }
    Ok(r)
}

/// Graphs whose segment instances have at most 60 vertices.
fn pt_free_sources() -> Vec<Graph> {
    let mut graphs = size_graphs();
    graphs.extend(graphs_up_to(4));
    graphs
}

/// Longest induced path of every segment max-cut instance is at most 6.
pub fn pt_free_maxcut() -> Result<Report> {
    let mut r = Report::default();
    for g in pt_free_sources() {
        let out = bisection_to_maxcut_segments(&g, 0)?;
        if out.graph.n() <= 60 {
            let len = longest_induced_path(&out.graph, 6);
            r.check(len <= 6, || format!("induced path on {len}+ vertices for {g:?}"));
        }
    }
    Ok(r)
}

/// Longest induced path of the oct instances, against a claimed bound.
pub fn pt_free_oct(bound: usize) -> Result<Report> {
    let mut r = Report::default();
    for g in pt_free_sources() {
        let out = is_to_oct_segments(&g, 0)?;
        if out.graph.n() <= 60 {
            let len = longest_induced_path(&out.graph, bound);
            r.check(len <= bound, || format!("induced path on {len}+ vertices for {g:?}"));
        }
    }
    Ok(r)
}
