//! Exact minimization of unary + hyperedge-disagreement energies.

mod brute;
pub mod generate;
mod graph;
mod instance;
pub mod maxflow;

pub use brute::{minimize_bruteforce, MAX_BRUTE_FORCE_NODES};
pub use graph::{assemble_energy, max_flow, Arc, CutGraph, CAPACITY_SCALE, MAX_CAPACITY};
pub use instance::{instance_energy, Hyperedge, Instance};

use crate::error::Result;
use crate::label::LabelVector;
use crate::Cost;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Cut,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Cut => "cut",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    /// Scaled max-flow value (cut only).
    pub flow_value: Option<i64>,
    pub augmentations: u64,
    pub phases: u64,
    pub aux_vars: usize,
    pub arcs: usize,
    /// Assignments enumerated (brute force only).
    pub evaluated: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub assignment: LabelVector,
    /// Recomputed with [`instance_energy`] from `assignment`.
    pub energy: Cost,
    pub method: Method,
    pub stats: SolveStats,
}

/// Minimum-energy assignment through one max-flow on the assembled graph.
/// Among several global minimizers the one returned is unspecified.
pub fn minimize_cut(inst: &Instance) -> Result<Solution> {
    let graph = assemble_energy(inst)?;
    let flow = max_flow(&graph);
    let assignment = LabelVector::new(flow.source_side[..inst.num_nodes()].to_vec())?;
    let energy = instance_energy(inst, &assignment)?;
    Ok(Solution {
        assignment,
        energy,
        method: Method::Cut,
        stats: SolveStats {
            flow_value: Some(flow.value),
            augmentations: flow.augmentations,
            phases: flow.phases,
            aux_vars: graph.num_aux(),
            arcs: graph.arcs.len(),
            evaluated: 0,
        },
    })
}
