//! Grid-shaped segment reductions: max-bisection to max-cut, independent set
//! to odd cycle transversal, and independent set to a weighted C4 problem.

use crate::error::{HomError, Result};
use crate::geometry::{frac, rat, Arrangement, Point, Rational, Segment};
use crate::graph::Graph;
use crate::models;
use crate::targets;
use crate::weight::{Weight, WeightModel};

use super::{Goal, ReductionOutput};

fn loopless(g: &Graph) -> Result<()> {
    if g.is_loopless() {
        Ok(())
    } else {
        Err(HomError::Precondition("the source graph must be loopless".into()))
    }
}

pub(super) fn seg(x1: Rational, y1: Rational, x2: Rational, y2: Rational) -> Segment {
    Segment::new(Point::new(x1, y1), Point::new(x2, y2)).expect("gadget segments are proper")
}

/// Builds the graph and arrangement together: one segment per vertex, edges
/// listed explicitly.
pub(super) struct Builder {
    pub(super) g: Graph,
    arr: Arrangement,
    labels: Vec<String>,
}

impl Builder {
    pub(super) fn new() -> Self {
        Builder {
            g: Graph::new(0),
            arr: Arrangement::new(),
            labels: Vec::new(),
        }
    }

    pub(super) fn add(&mut self, s: Segment, label: String) -> usize {
        self.arr.push_labeled(s, label.clone());
        self.labels.push(label);
        self.g.add_vertex()
    }

    pub(super) fn edge(&mut self, u: usize, v: usize) {
        self.g.add_edge(u, v).unwrap();
    }

    pub(super) fn finish(self) -> (Graph, Arrangement) {
        (self.g.with_labels(self.labels), self.arr)
    }
}

/// Point `Q + a·u + b·v` in the skewed frame at a pencil crossing, where `u`
/// runs along `x_i` and `v` along `y_j`.
struct Frame {
    q: (Rational, Rational),
    u: (Rational, Rational),
    v: (Rational, Rational),
}

impl Frame {
    fn at(&self, a: &Rational, b: &Rational) -> Point {
        Point::new(
            &self.q.0 + a * &self.u.0 + b * &self.v.0,
            &self.q.1 + a * &self.u.1 + b * &self.v.1,
        )
    }

    fn seg(&self, a1: Rational, b1: Rational, a2: Rational, b2: Rational) -> Segment {
        Segment::new(self.at(&a1, &b1), self.at(&a2, &b2)).expect("gadget segments are proper")
    }
}

/// Max-bisection of `G` to max-cut on a segment graph.
///
/// Vertex order: `x_1..x_n`, `y_1..y_n`, the 16 segments of each `D_i`, then
/// for every edge `ij` (i < j) the segments `α_ij, β_ij, α_ji, β_ji`.
/// `X ∪ Y` is a clique, `D_i` sees `x_i` and `y_i`, `α_ij` sees `x_i` and
/// `β_ij`, and `β_ij` sees `y_j`. Threshold `n² + 32n + 4m + 2k`.
///
/// The `x_i` form a pencil through `(-F, 0)` and the `y_j` a pencil through
/// `(0, -F)`, so every `x_i` crosses every `y_j` near `(j, i)`.
pub fn bisection_to_maxcut_segments(g: &Graph, k: usize) -> Result<ReductionOutput> {
    loopless(g)?;
    let n = g.n();
    let f = rat(10 * n as i64 + 10);
    let reach = rat(n as i64 + 2);
    let eps = frac(1, 100);
    let mut b = Builder::new();

    for i in 1..=n {
        let slope = frac(i as i64, 1) / &f;
        let y_end = &slope * (&reach + &f);
        b.add(seg(-f.clone(), rat(0), reach.clone(), y_end), format!("x{i}"));
    }
    for j in 1..=n {
        let slope = frac(j as i64, 1) / &f;
        let x_end = &slope * (&reach + &f);
        b.add(seg(rat(0), -f.clone(), x_end, reach.clone()), format!("y{j}"));
    }
    for u in 0..2 * n {
        for v in u + 1..2 * n {
            b.edge(u, v);
        }
    }

    let frame = |i: usize, j: usize| {
        let (fi, fj) = (rat(i as i64), rat(j as i64));
        // Solve y = i(x+F)/F and x = j(y+F)/F.
        let x = &fj * &f * (&f + &fi) / (&f * &f - &fi * &fj);
        let y = &fi * (&x + &f) / &f;
        Frame {
            q: (x, y),
            u: (rat(1), &fi / &f),
            v: (&fj / &f, rat(1)),
        }
    };

    for i in 1..=n {
        let fr = frame(i, i);
        for d in 1..=16 {
            let c = frac(d, 50);
            let s = fr.seg(-eps.clone(), &c + &eps, &c + &eps, -eps.clone());
            let v = b.add(s, format!("d{i}_{d}"));
            b.edge(v, i - 1);
            b.edge(v, n + i - 1);
        }
    }

    let edges: Vec<(usize, usize)> = g.edges();
    for &(p, q) in &edges {
        for (i, j) in [(p + 1, q + 1), (q + 1, p + 1)] {
            let fr = frame(i, j);
            let alpha = fr.seg(-eps.clone(), -eps.clone(), -eps.clone(), &eps * rat(2));
            let beta = fr.seg(-(&eps * rat(2)), eps.clone(), eps.clone(), eps.clone());
            let a = b.add(alpha, format!("a{i}_{j}"));
            let bb = b.add(beta, format!("b{i}_{j}"));
            b.edge(a, i - 1);
            b.edge(bb, n + j - 1);
            b.edge(a, bb);
        }
    }

    let (graph, arr) = b.finish();
    let (target, weights) = models::maxcut(&graph);
    let (n, m) = (n as i64, edges.len() as i64);
    Ok(ReductionOutput {
        graph,
        target,
        weights: Some(weights),
        lists: None,
        goal: Goal::AtLeast(n * n + 32 * n + 4 * m + 2 * k as i64),
        arrangement: Some(arr),
        claimed_slope_count: None,
        notes: "max-bisection to max-cut on segment graphs (pencil grid with 16-segment vertex gadgets)".into(),
    })
}

/// Independent set to odd cycle transversal on axis-parallel segments.
///
/// Vertex order: `x_1..x_n` (horizontal), `y_1..y_n` (vertical),
/// `d_1..d_7` for each vertex gadget, then `e_ij, e_ji` for every edge
/// `ij` (i < j). Threshold `7n + 2m + k`.
pub fn is_to_oct_segments(g: &Graph, k: usize) -> Result<ReductionOutput> {
    loopless(g)?;
    let n = g.n() as i64;
    // Grid pitch 80; gadget offsets below are in the same units.
    let lo = rat(40);
    let hi = rat(80 * n + 40);
    let mut b = Builder::new();
    for i in 1..=n {
        b.add(seg(lo.clone(), rat(80 * i), hi.clone(), rat(80 * i)), format!("x{i}"));
    }
    for j in 1..=n {
        b.add(seg(rat(80 * j), lo.clone(), rat(80 * j), hi.clone()), format!("y{j}"));
    }
    for i in 0..n as usize {
        for j in 0..n as usize {
            b.edge(i, n as usize + j);
        }
    }

    // (x1, y1, x2, y2) relative to the crossing of x_i and y_i.
    const GADGET: [(i64, i64, i64, i64); 7] = [
        (-18, -6, -18, 8),
        (-8, -6, -8, 11),
        (-22, 14, 6, 14),
        (-9, 20, 6, 20),
        (-24, 20, -7, 20),
        (-24, 10, -7, 10),
        (-18, 6, -18, 24),
    ];
    // Pairs within a gadget, 1-based as d1..d7.
    const INNER: [(usize, usize); 6] = [(1, 7), (2, 6), (6, 7), (3, 7), (5, 7), (4, 5)];
    for i in 1..=n {
        let (cx, cy) = (80 * i, 80 * i);
        let base = b.g.n();
        for (t, &(x1, y1, x2, y2)) in GADGET.iter().enumerate() {
            b.add(
                seg(rat(cx + x1), rat(cy + y1), rat(cx + x2), rat(cy + y2)),
                format!("d{i}_{}", t + 1),
            );
        }
        let (x, y) = (i as usize - 1, (n + i) as usize - 1);
        for (p, q) in INNER {
            b.edge(base + p - 1, base + q - 1);
        }
        b.edge(x, base);
        b.edge(x, base + 1);
        b.edge(y, base + 2);
        b.edge(y, base + 3);
    }

    let edges = g.edges();
    for &(p, q) in &edges {
        for (i, j) in [(p as i64 + 1, q as i64 + 1), (q as i64 + 1, p as i64 + 1)] {
            let e = b.add(
                seg(rat(80 * j), rat(80 * i - 10), rat(80 * j), rat(80 * i + 10)),
                format!("e{i}_{j}"),
            );
            b.edge(e, i as usize - 1);
            b.edge(e, (n + j) as usize - 1);
        }
    }

    let (graph, arr) = b.finish();
    let (target, weights) = models::oct(&graph);
    let m = edges.len() as i64;
    Ok(ReductionOutput {
        graph,
        target,
        weights: Some(weights),
        lists: None,
        goal: Goal::AtLeast(7 * n + 2 * m + k as i64),
        arrangement: Some(arr),
        claimed_slope_count: Some(2),
        notes: "independent set to odd cycle transversal on axis-parallel segments".into(),
    })
}

/// Independent set to weighted homomorphisms into C4 on a grid.
///
/// Vertex order: `x_1..x_n` then `y_1..y_n`; the graph is `K_{n,n}`. Every
/// vertex gains 1 on `a` and `b`. The edge `x_i y_i` may only use `ab` or
/// `cd`; for each edge `ij` of `G` the edges `x_i y_j` and `x_j y_i` may not
/// use `ab`. Threshold `2k`.
pub fn is_to_whom_c4(g: &Graph, k: usize) -> Result<ReductionOutput> {
    loopless(g)?;
    let n = g.n();
    let (a, bb, c, d) = (0, 1, 2, 3);
    let mut b = Builder::new();
    let end = rat(n as i64 + 1);
    for i in 1..=n {
        b.add(seg(rat(0), rat(i as i64), end.clone(), rat(i as i64)), format!("x{i}"));
    }
    for j in 1..=n {
        b.add(seg(rat(j as i64), rat(0), rat(j as i64), end.clone()), format!("y{j}"));
    }
    for i in 0..n {
        for j in 0..n {
            b.edge(i, n + j);
        }
    }
    let mut w = WeightModel::new();
    for v in 0..2 * n {
        w.set_vertex(v, a, Weight::from(1));
        w.set_vertex(v, bb, Weight::from(1));
    }
    for i in 0..n {
        w.set_edge(i, n + i, bb, c, Weight::NegInf);
        w.set_edge(i, n + i, a, d, Weight::NegInf);
    }
    for (p, q) in g.edges() {
        w.set_edge(p, n + q, a, bb, Weight::NegInf);
        w.set_edge(q, n + p, a, bb, Weight::NegInf);
    }
    let (graph, arr) = b.finish();
    Ok(ReductionOutput {
        graph,
        target: targets::c4(),
        weights: Some(w),
        lists: None,
        goal: Goal::AtLeast(2 * k as i64),
        arrangement: Some(arr),
        claimed_slope_count: Some(2),
        notes: "independent set to weighted C4 homomorphisms on a grid".into(),
    })
}
