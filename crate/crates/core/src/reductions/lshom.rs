//! 3-SAT to locally surjective homomorphisms into paths, cycles and the
//! looped pendant edge.

use crate::error::{HomError, Result};
use crate::geometry::{frac, rat, Rational};
use crate::graph::Graph;
use crate::targets;

use super::grids::{seg, Builder};
use super::{CnfFormula, Dialect, Goal, ReductionOutput};

/// One literal occurrence, in layout order.
struct Occurrence {
    var: usize,
    clause: usize,
}

/// Lengths of the paths that distinguish the path and cycle constructions.
struct Shape {
    /// Segments on the vertical path `T`.
    spine: usize,
    /// Segments on the horizontal path from each occurrence to `T`.
    link: usize,
    /// 1-based index of the `T` segment the link path ends on.
    link_hits: usize,
    /// Segments on each variable gadget path.
    variable: usize,
    /// Segments on the path between `α` and `β`.
    membership: usize,
}

fn check_formula(phi: &CnfFormula) -> Result<()> {
    if phi.dialect != Dialect::ThreeSat {
        return Err(HomError::Malformed("expected a 3-SAT formula".into()));
    }
    phi.validate()?;
    phi.require_both_polarities()
}

/// Occurrences ordered `X_1, X̃_1, X_2, X̃_2, ...`, each group in clause order.
fn layout(phi: &CnfFormula) -> Vec<Occurrence> {
    let mut out = Vec::new();
    for v in 0..phi.vars {
        for positive in [true, false] {
            for (p, c) in phi.clauses.iter().enumerate() {
                for &l in c {
                    if l.unsigned_abs() as usize == v + 1 && (l > 0) == positive {
                        out.push(Occurrence { var: v, clause: p });
                    }
                }
            }
        }
    }
    out
}

/// Points splitting `[a, b]` into `parts` equal pieces, endpoints included.
fn split(a: &Rational, b: &Rational, parts: usize) -> Vec<Rational> {
    (0..=parts)
        .map(|j| a + (b - a) * frac(j as i64, parts as i64))
        .collect()
}

/// Shared skeleton of the path and cycle constructions.
///
/// Vertex order: occurrence segments `X` in layout order, clause segments
/// `Y`, their pendants `Y'`, the spine `T`, the link path of every
/// occurrence, the variable gadget of every variable, and finally `α, β,
/// s_1..s_L` for every occurrence.
fn build(phi: &CnfFormula, shape: &Shape, target: Graph, notes: String) -> ReductionOutput {
    let occ = layout(phi);
    let lx = occ.len();
    let m = phi.clauses.len();
    let mut b = Builder::new();

    // Horizontal positions: occurrence l at 12(l+1), spine at xt.
    let xpos = |l: usize| rat(12 * (l as i64 + 1));
    let xt = rat(12 * lx as i64 + 6);
    let ypos = |p: usize| rat(lx as i64 + 3 + 4 * p as i64);
    let y_top = ypos(m.max(1) - 1);
    let z = &y_top + rat(4);
    let x_first = xpos(0) - rat(1);
    let x_last = if lx == 0 { xpos(0) } else { xpos(lx - 1) + rat(1) };

    let xs: Vec<usize> = (0..lx)
        .map(|l| {
            let s = seg(xpos(l), rat(l as i64), xpos(l), &z + rat(1));
            b.add(s, format!("x{}", l + 1))
        })
        .collect();
    let ys: Vec<usize> = (0..m)
        .map(|p| {
            b.add(
                seg(x_first.clone(), ypos(p), x_last.clone(), ypos(p)),
                format!("y{}", p + 1),
            )
        })
        .collect();
    let yps: Vec<usize> = (0..m)
        .map(|p| {
            b.add(
                seg(x_last.clone(), ypos(p), xt.clone(), ypos(p)),
                format!("yp{}", p + 1),
            )
        })
        .collect();
    for &x in &xs {
        for &y in &ys {
            b.edge(x, y);
        }
    }
    for p in 0..m {
        b.edge(ys[p], yps[p]);
    }

    // Spine: t_1..t_hit stack from the clause rows down to height 0, the
    // rest continue below 0 in unit steps.
    let hit = shape.link_hits;
    let t_top = &y_top + rat(1);
    let t_base = ypos(0) - rat(1);
    let mut ranges: Vec<(Rational, Rational)> = Vec::new();
    if hit == 1 {
        ranges.push((rat(0), t_top.clone()));
    } else {
        ranges.push((t_base.clone(), t_top.clone()));
        let floor = if hit == 2 { t_base.clone() } else { rat(lx as i64) };
        let cuts = if hit == 2 {
            vec![t_base.clone()]
        } else {
            split(&t_base, &floor, hit - 2)
        };
        for w in cuts.windows(2) {
            ranges.push((w[1].clone(), w[0].clone()));
        }
        ranges.push((rat(0), floor));
    }
    for j in 1..=shape.spine - hit {
        ranges.push((rat(-(j as i64)), rat(1 - j as i64)));
    }
    let ts: Vec<usize> = ranges
        .into_iter()
        .enumerate()
        .map(|(j, (lo, hi))| b.add(seg(xt.clone(), lo, xt.clone(), hi), format!("t{}", j + 1)))
        .collect();
    for w in ts.windows(2) {
        b.edge(w[0], w[1]);
    }
    for &yp in &yps {
        b.edge(yp, ts[0]);
    }

    for (l, &x) in xs.iter().enumerate() {
        let h = rat(l as i64) + frac(1, 2);
        let pts = split(&(xpos(l) - frac(1, 2)), &xt, shape.link);
        let mut prev = x;
        for (j, w) in pts.windows(2).enumerate() {
            let c = b.add(
                seg(w[0].clone(), h.clone(), w[1].clone(), h.clone()),
                format!("q{}_{}", l + 1, j + 1),
            );
            b.edge(prev, c);
            prev = c;
        }
        b.edge(prev, ts[hit - 1]);
    }

    for v in 0..phi.vars {
        let pos: Vec<usize> = (0..lx).filter(|&l| occ[l].var == v).collect();
        let npos = phi.occurrences()[v].0;
        let (first_pos, last_pos) = (pos[0], pos[npos - 1]);
        let (first_neg, last_neg) = (pos[npos], pos[pos.len() - 1]);
        let mut pts = split(&xpos(last_pos), &xpos(first_neg), shape.variable);
        pts[0] = xpos(first_pos) - rat(1);
        *pts.last_mut().unwrap() = xpos(last_neg) + rat(1);
        let mut chain = Vec::new();
        for (j, w) in pts.windows(2).enumerate() {
            let r = b.add(
                seg(w[0].clone(), z.clone(), w[1].clone(), z.clone()),
                format!("r{}_{}", v + 1, j + 1),
            );
            if let Some(&p) = chain.last() {
                b.edge(p, r);
            }
            chain.push(r);
        }
        for &l in &pos[..npos] {
            b.edge(chain[0], xs[l]);
        }
        for &l in &pos[npos..] {
            b.edge(*chain.last().unwrap(), xs[l]);
        }
    }

    for (l, o) in occ.iter().enumerate() {
        let (x0, y0) = (xpos(l), ypos(o.clause));
        let top = &y0 + rat(2);
        let alpha = b.add(
            seg(&x0 - rat(8), top.clone(), &x0 + frac(1, 2), top.clone()),
            format!("a{}", l + 1),
        );
        let beta = b.add(
            seg(&x0 - rat(1), &y0 - frac(1, 2), &x0 - rat(1), top.clone()),
            format!("b{}", l + 1),
        );
        b.edge(alpha, xs[l]);
        b.edge(beta, ys[o.clause]);
        b.edge(alpha, beta);
        let len = shape.membership;
        let label = |j: usize| format!("s{}_{}", l + 1, j);
        if len == 1 {
            let s = b.add(seg(&x0 - rat(9), top.clone(), &x0 - rat(1), top.clone()), label(1));
            b.edge(s, alpha);
            b.edge(s, beta);
            continue;
        }
        // Staircase descending from α's height to β, alternating vertical
        // and horizontal steps and ending horizontally on β.
        let mut prev = alpha;
        let mut made = 0;
        let start = if len % 2 == 1 {
            let s = b.add(seg(&x0 - rat(9), top.clone(), &x0 - rat(8), top.clone()), label(1));
            b.edge(s, alpha);
            prev = s;
            made = 1;
            &x0 - rat(9)
        } else {
            &x0 - rat(7)
        };
        let steps = (len - made) / 2;
        let cols: Vec<Rational> = (0..steps)
            .map(|j| &start + (&x0 - rat(2) - &start) * frac(j as i64, steps as i64))
            .chain(std::iter::once(&x0 - rat(1)))
            .collect();
        let rows: Vec<Rational> = (0..=steps)
            .map(|j| &top - frac(3, 2) * frac(j as i64, steps as i64 + 1))
            .collect();
        for j in 0..steps {
            made += 1;
            let v = b.add(
                seg(cols[j].clone(), rows[j].clone(), cols[j].clone(), rows[j + 1].clone()),
                label(made),
            );
            b.edge(prev, v);
            made += 1;
            let hz = b.add(
                seg(
                    cols[j].clone(),
                    rows[j + 1].clone(),
                    cols[j + 1].clone(),
                    rows[j + 1].clone(),
                ),
                label(made),
            );
            b.edge(v, hz);
            prev = hz;
        }
        b.edge(prev, beta);
    }

    let (graph, arr) = b.finish();
    ReductionOutput {
        graph,
        target,
        weights: None,
        lists: None,
        goal: Goal::Surjective,
        arrangement: Some(arr),
        claimed_slope_count: Some(2),
        notes,
    }
}

/// 3-SAT to locally surjective homomorphisms into the path on `k >= 4`
/// vertices. Each variable must occur with both signs.
pub fn threesat_to_lshom_path(phi: &CnfFormula, k: usize) -> Result<ReductionOutput> {
    if k < 4 {
        return Err(HomError::Precondition(format!("path targets need k >= 4, got {k}")));
    }
    check_formula(phi)?;
    let shape = Shape {
        spine: 2 * k - 1,
        link: k - 3,
        link_hits: k,
        variable: 2 * k - 3,
        membership: 2 * k - 4,
    };
    Ok(build(
        phi,
        &shape,
        targets::path(k),
        format!("3-SAT to locally surjective homomorphisms into P{k}"),
    ))
}

/// 3-SAT to locally surjective homomorphisms into the cycle on `k` vertices,
/// `k >= 3` and `k != 4`.
pub fn threesat_to_lshom_cycle(phi: &CnfFormula, k: usize) -> Result<ReductionOutput> {
    if k < 3 || k == 4 {
        return Err(HomError::Precondition(format!(
            "cycle targets need k >= 3 and k != 4, got {k}"
        )));
    }
    check_formula(phi)?;
    let shape = Shape {
        spine: k - 2,
        link: 1,
        link_hits: k - 2,
        variable: k - 1,
        membership: k - 2,
    };
    Ok(build(
        phi,
        &shape,
        targets::cycle(k),
        format!("3-SAT to locally surjective homomorphisms into C{k}"),
    ))
}

/// 3-SAT with exactly three literals per clause to locally surjective
/// homomorphisms into the looped pendant edge `a - b` (loop on `b`).
///
/// Vertex order: `x_i, y_i` for every variable; `z, q_1..q_3, p_1..p_3` for
/// every clause; `s, e, f` for every occurrence in clause order. Edges:
/// `x_i y_i`, `z q_j`, `q_j p_j`, `p_j s`, `s` to `x_i` (positive) or `y_i`
/// (negative), `s e` and `e f`. With `occ_clique` the occurrence segments
/// additionally form a clique. No arrangement is emitted.
pub fn threesat_to_lshom_loopedge(phi: &CnfFormula, occ_clique: bool) -> Result<ReductionOutput> {
    check_formula(phi)?;
    if let Some(p) = phi.clauses.iter().position(|c| c.len() != 3) {
        return Err(HomError::Malformed(format!(
            "clause {} must have exactly three literals",
            p + 1
        )));
    }
    let n = phi.vars;
    let m = phi.clauses.len();
    let mut g = Graph::new(2 * n + 16 * m);
    let mut labels = Vec::with_capacity(g.n());
    for i in 1..=n {
        labels.push(format!("x{i}"));
        labels.push(format!("y{i}"));
        g.add_edge(2 * i - 2, 2 * i - 1).unwrap();
    }
    let gadget = |p: usize| 2 * n + 7 * p;
    for p in 0..m {
        let zv = gadget(p);
        labels.push(format!("z{}", p + 1));
        labels.extend((1..=3).map(|j| format!("q{}_{j}", p + 1)));
        labels.extend((1..=3).map(|j| format!("p{}_{j}", p + 1)));
        for j in 0..3 {
            g.add_edge(zv, zv + 1 + j).unwrap();
            g.add_edge(zv + 1 + j, zv + 4 + j).unwrap();
        }
    }
    let occ_base = 2 * n + 7 * m;
    let mut occ = Vec::with_capacity(3 * m);
    for (p, c) in phi.clauses.iter().enumerate() {
        for (j, &l) in c.iter().enumerate() {
            let s = occ_base + 3 * occ.len();
            labels.push(format!("s{}_{}", p + 1, j + 1));
            labels.push(format!("e{}_{}", p + 1, j + 1));
            labels.push(format!("f{}_{}", p + 1, j + 1));
            let var = l.unsigned_abs() as usize - 1;
            let side = if l > 0 { 2 * var } else { 2 * var + 1 };
            g.add_edge(s, side).unwrap();
            g.add_edge(s, gadget(p) + 4 + j).unwrap();
            g.add_edge(s, s + 1).unwrap();
            g.add_edge(s + 1, s + 2).unwrap();
            occ.push(s);
        }
    }
    if occ_clique {
        for (i, &u) in occ.iter().enumerate() {
            for &v in &occ[i + 1..] {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    Ok(ReductionOutput {
        graph: g.with_labels(labels),
        target: targets::loop_pendant(),
        weights: None,
        lists: None,
        goal: Goal::Surjective,
        arrangement: None,
        claimed_slope_count: None,
        notes: "3-SAT to locally surjective homomorphisms into the looped pendant edge".into(),
    })
}
