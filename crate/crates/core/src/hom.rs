//! Homomorphism predicates and weights.

use crate::error::{HomError, Result};
use crate::graph::Graph;
use crate::lists::{ColorSet, ListAssignment};
use crate::weight::{Weight, WeightModel};

/// A map `V(G) -> V(H)` given as the image of each vertex.
pub type Homomorphism = Vec<usize>;

/// Local constraint on how a neighbourhood maps onto the target neighbourhood.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalKind {
    Injective,
    Bijective,
    Surjective,
}

impl LocalKind {
    pub fn injective(self) -> bool {
        matches!(self, LocalKind::Injective | LocalKind::Bijective)
    }

    pub fn surjective(self) -> bool {
        matches!(self, LocalKind::Surjective | LocalKind::Bijective)
    }
}

fn check_shape(g: &Graph, h: &Graph, map: &[usize]) -> Result<()> {
    if map.len() != g.n() {
        return Err(HomError::Malformed(format!(
            "map has {} entries for {} vertices",
            map.len(),
            g.n()
        )));
    }
    if let Some(v) = map.iter().position(|&a| a >= h.n()) {
        return Err(HomError::Malformed(format!(
            "vertex {v} is mapped to {} which is not a target vertex",
            map[v]
        )));
    }
    Ok(())
}

pub fn is_homomorphism(g: &Graph, h: &Graph, map: &[usize]) -> Result<bool> {
    check_shape(g, h, map)?;
    Ok(g.edges().into_iter().all(|(u, v)| h.has_edge(map[u], map[v])))
}

pub fn respects_lists(map: &[usize], lists: &ListAssignment) -> bool {
    map.len() == lists.len() && map.iter().enumerate().all(|(v, &a)| lists.get(v).contains(a))
}

/// The target neighbourhood `N_H(a)` as a colour set.
pub fn target_neighborhood(h: &Graph, a: usize) -> ColorSet {
    h.neighbors(a).iter().copied().collect()
}

/// Whether `v` satisfies the local constraint under a homomorphism `map`.
pub fn vertex_is_local(kind: LocalKind, g: &Graph, h: &Graph, map: &[usize], v: usize) -> bool {
    let target = target_neighborhood(h, map[v]);
    let mut image = ColorSet::EMPTY;
    for &u in g.neighbors(v) {
        let c = map[u];
        if kind.injective() && image.contains(c) {
            return false;
        }
        image.insert(c);
    }
    !kind.surjective() || image == target
}

fn require_hom(g: &Graph, h: &Graph, map: &[usize]) -> Result<()> {
    if !is_homomorphism(g, h, map)? {
        return Err(HomError::Contract("map is not a homomorphism".into()));
    }
    Ok(())
}

pub fn is_local(kind: LocalKind, g: &Graph, h: &Graph, map: &[usize]) -> Result<bool> {
    require_hom(g, h, map)?;
    Ok((0..g.n()).all(|v| vertex_is_local(kind, g, h, map, v)))
}

pub fn is_locally_injective(g: &Graph, h: &Graph, map: &[usize]) -> Result<bool> {
    is_local(LocalKind::Injective, g, h, map)
}

pub fn is_locally_bijective(g: &Graph, h: &Graph, map: &[usize]) -> Result<bool> {
    is_local(LocalKind::Bijective, g, h, map)
}

pub fn is_locally_surjective(g: &Graph, h: &Graph, map: &[usize]) -> Result<bool> {
    is_local(LocalKind::Surjective, g, h, map)
}

/// Vertices satisfying the local constraint, in increasing order.
pub fn happy_vertices(kind: LocalKind, g: &Graph, h: &Graph, map: &[usize]) -> Result<Vec<usize>> {
    require_hom(g, h, map)?;
    Ok((0..g.n()).filter(|&v| vertex_is_local(kind, g, h, map, v)).collect())
}

/// Total weight of a homomorphism: vertex terms plus edge terms.
pub fn weight_of(g: &Graph, h: &Graph, w: &WeightModel, map: &[usize]) -> Result<Weight> {
    require_hom(g, h, map)?;
    let mut total = Weight::ZERO;
    for (v, &a) in map.iter().enumerate() {
        total = total.checked_add(w.vertex_weight(v, a))?;
    }
    for (u, v) in g.edges() {
        total = total.checked_add(w.edge_weight(u, v, map[u], map[v]))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets;

    #[test]
    fn p3_onto_k2_is_surjective_not_injective() {
        let g = targets::path(3);
        let h = targets::path(2);
        let map = vec![0, 1, 0];
        assert!(is_homomorphism(&g, &h, &map).unwrap());
        assert!(is_locally_surjective(&g, &h, &map).unwrap());
        assert!(!is_locally_injective(&g, &h, &map).unwrap());
        assert_eq!(happy_vertices(LocalKind::Injective, &g, &h, &map).unwrap(), vec![0, 2]);
    }

    #[test]
    fn cycle_cover_is_bijective() {
        let g = targets::cycle(6);
        let h = targets::cycle(3);
        let map: Vec<usize> = (0..6).map(|i| i % 3).collect();
        assert!(is_locally_bijective(&g, &h, &map).unwrap());
    }

    #[test]
    fn non_homomorphism_is_a_contract_error() {
        let g = targets::path(2);
        let h = targets::path(2);
        assert!(matches!(
            is_locally_injective(&g, &h, &[0, 0]),
            Err(HomError::Contract(_))
        ));
        assert!(matches!(is_homomorphism(&g, &h, &[0]), Err(HomError::Malformed(_))));
        assert!(matches!(is_homomorphism(&g, &h, &[0, 2]), Err(HomError::Malformed(_))));
    }

    #[test]
    fn loops_enter_the_neighbourhood() {
        let g = Graph::from_edges(1, &[(0, 0)]).unwrap();
        let h = targets::loop_pendant();
        assert!(!is_homomorphism(&g, &h, &[0]).unwrap());
        assert!(is_homomorphism(&g, &h, &[1]).unwrap());
        assert!(!is_locally_surjective(&g, &h, &[1]).unwrap());
    }

    #[test]
    fn weight_sums_vertex_and_edge_terms() {
        let g = targets::path(2);
        let h = targets::loop_edge();
        let mut w = WeightModel::new();
        w.set_vertex(0, 1, Weight::from(2));
        w.set_edge(0, 1, 0, 1, Weight::from(5));
        assert_eq!(weight_of(&g, &h, &w, &[1, 0]).unwrap(), Weight::from(7));
        w.set_edge(0, 1, 1, 1, Weight::NegInf);
        assert_eq!(weight_of(&g, &h, &w, &[1, 1]).unwrap(), Weight::NegInf);
    }
}
