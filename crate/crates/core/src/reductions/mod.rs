//! Generators for the hardness reductions, plus a brute-force checker that a
//! generated instance answers the same as its source.
//!
//! Vertex ids follow construction order, documented on each generator.
//! Where an arrangement is emitted, segment `i` realises vertex `i`.

pub mod brute;
pub mod cnf;
mod cuts;
mod grids;
mod lshom;

use crate::error::{HomError, Result};
use crate::geometry::Arrangement;
use crate::graph::Graph;
use crate::hom::LocalKind;
use crate::lists::ListAssignment;
use crate::local::{oracle_local, LocalInstance};
use crate::weight::{meets_threshold, WeightModel};
use crate::whom::{oracle_whom, WhomInstance};

pub use cnf::{CnfFormula, Dialect};
pub use cuts::{maxcut_to_bisection, posnae3sat_to_maxcut};
pub use grids::{bisection_to_maxcut_segments, is_to_oct_segments, is_to_whom_c4};
pub use lshom::{threesat_to_lshom_cycle, threesat_to_lshom_loopedge, threesat_to_lshom_path};

/// What the generated instance is asked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Goal {
    /// Some list homomorphism weighs at least this much.
    AtLeast(i64),
    /// Some bisection of the graph cuts at least this many edges.
    Bisection(i64),
    /// A locally surjective homomorphism to the target exists.
    Surjective,
}

impl Goal {
    pub fn threshold(self) -> Option<i64> {
        match self {
            Goal::AtLeast(t) | Goal::Bisection(t) => Some(t),
            Goal::Surjective => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub target: Graph,
    pub weights: Option<WeightModel>,
    pub lists: Option<ListAssignment>,
    pub goal: Goal,
    pub arrangement: Option<Arrangement>,
    pub claimed_slope_count: Option<usize>,
    pub notes: String,
}

impl ReductionOutput {
    pub fn threshold(&self) -> Option<i64> {
        self.goal.threshold()
    }

    /// Checks that the arrangement realises exactly the instance graph and
    /// uses the claimed number of slopes.
    pub fn check_arrangement(&self) -> Result<()> {
        let Some(arr) = &self.arrangement else { return Ok(()) };
        let ig = arr.intersection_graph();
        if ig.n() != self.graph.n() || ig.edges() != self.graph.edges() {
            let extra: Vec<_> = ig
                .edges()
                .into_iter()
                .filter(|&(u, v)| !self.graph.has_edge(u, v))
                .collect();
            let missing: Vec<_> = self
                .graph
                .edges()
                .into_iter()
                .filter(|&(u, v)| !ig.has_edge(u, v))
                .collect();
            return Err(HomError::Contract(format!(
                "arrangement does not realise the instance: extra {extra:?}, missing {missing:?}"
            )));
        }
        if let Some(k) = self.claimed_slope_count {
            let got = arr.slope_count();
            if got != k {
                return Err(HomError::Contract(format!(
                    "arrangement uses {got} slopes, claimed {k}"
                )));
            }
        }
        Ok(())
    }

    /// Answers the generated instance by exhaustive search. `budget` caps
    /// oracle search nodes.
    pub fn decide(&self, budget: u64) -> Result<bool> {
        match self.goal {
            Goal::AtLeast(t) => {
                let weights = self.weights.clone().unwrap_or_default();
                let lists = self
                    .lists
                    .clone()
                    .unwrap_or_else(|| ListAssignment::full(self.graph.n(), self.target.n()));
                let inst = WhomInstance::new(self.graph.clone(), self.target.clone(), weights, lists)?;
                let r = oracle_whom(&inst, budget)?;
                Ok(r.optimum.is_some_and(|w| meets_threshold(w, t)))
            }
            Goal::Bisection(t) => Ok(brute::max_bisection(&self.graph)?.is_some_and(|c| c as i64 >= t)),
            Goal::Surjective => {
                let mut inst = LocalInstance::new(self.graph.clone(), self.target.clone())?;
                if let Some(l) = &self.lists {
                    inst = LocalInstance::with_lists(self.graph.clone(), self.target.clone(), l.clone())?;
                }
                Ok(oracle_local(&inst, LocalKind::Surjective, budget)?.exists())
            }
        }
    }
}

/// True when the source and the generated instance give the same answer.
/// Budget overruns on either side are returned as errors.
pub fn verify_reduction(source: impl FnOnce() -> Result<bool>, out: &ReductionOutput, budget: u64) -> Result<bool> {
    let want = source()?;
    Ok(out.decide(budget)? == want)
}
