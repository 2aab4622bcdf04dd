//! Standard weight models that express classic problems as weighted homomorphisms.

use crate::graph::Graph;
use crate::targets;
use crate::weight::{Weight, WeightModel};

/// Max-cut: target `loop_edge`, every edge of `G` mapped across `ab` gains 1.
pub fn maxcut(g: &Graph) -> (Graph, WeightModel) {
    let mut w = WeightModel::new();
    for (u, v) in g.edges() {
        if u != v {
            w.set_edge(u, v, 0, 1, Weight::from(1));
        }
    }
    (targets::loop_edge(), w)
}

/// Odd cycle transversal: target `oct_target`, vertices on `b` or `c` gain 1.
/// The optimum equals `n` minus the minimum transversal size.
pub fn oct(g: &Graph) -> (Graph, WeightModel) {
    let mut w = WeightModel::new();
    for v in 0..g.n() {
        w.set_vertex(v, 1, Weight::from(1));
        w.set_vertex(v, 2, Weight::from(1));
    }
    (targets::oct_target(), w)
}

/// Independent set: target `loop_pendant`, vertices on the loopless `a` gain 1.
pub fn independent_set(g: &Graph) -> (Graph, WeightModel) {
    let mut w = WeightModel::new();
    for v in 0..g.n() {
        w.set_vertex(v, 0, Weight::from(1));
    }
    (targets::loop_pendant(), w)
}
