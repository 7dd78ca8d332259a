use crate::concave::{ConcaveSpec, Penalty};
use crate::error::{Error, Result};
use crate::label::{deviation_from_ones, LabelVector};
use crate::Cost;

/// A set of at least two distinct nodes sharing one disagreement penalty.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperedge {
    pub members: Vec<usize>,
    pub spec: ConcaveSpec,
}

impl Hyperedge {
    pub fn new(members: Vec<usize>, spec: ConcaveSpec) -> Self {
        Hyperedge { members, spec }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Penalty when `ones` members carry label 1.
    pub(crate) fn cost_for_ones(&self, ones: usize) -> Cost {
        self.spec.samples()[deviation_from_ones(ones, self.members.len())]
    }
}

/// Unary label costs plus hyperedge disagreement penalties over nodes `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    unary: Vec<[f64; 2]>,
    hyperedges: Vec<Hyperedge>,
}

impl Instance {
    /// `unary[v] = [cost if label 0, cost if label 1]`.
    pub fn new(unary: Vec<[f64; 2]>, hyperedges: Vec<Hyperedge>) -> Result<Self> {
        if unary.is_empty() {
            return Err(Error::Parameter("instance needs at least one node".into()));
        }
        if let Some(node) = unary.iter().position(|c| !c.iter().all(|v| v.is_finite())) {
            return Err(Error::InvalidUnary { node, reason: "cost is not finite".into() });
        }
        let n = unary.len();
        for (edge, h) in hyperedges.iter().enumerate() {
            let bad = |reason: String| Err(Error::InvalidHyperedge { edge, reason });
            if h.members.len() < 2 {
                return bad(format!("needs at least 2 members, has {}", h.members.len()));
            }
            if let Some(&m) = h.members.iter().find(|&&m| m >= n) {
                return bad(format!("member {m} out of range for {n} nodes"));
            }
            let mut sorted = h.members.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return bad(format!("duplicate member {}", w[0]));
            }
            let need = h.members.len() / 2;
            if h.spec.max_deviation() < need {
                return bad(format!(
                    "penalty sampled to {} but edge of size {} needs {need}",
                    h.spec.max_deviation(),
                    h.members.len()
                ));
            }
        }
        Ok(Instance { unary, hyperedges })
    }

    pub fn num_nodes(&self) -> usize {
        self.unary.len()
    }

    pub fn unary(&self) -> &[[f64; 2]] {
        &self.unary
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    /// Same hyperedges, each node's two unary costs exchanged.
    pub fn with_swapped_unaries(&self) -> Instance {
        Instance {
            unary: self.unary.iter().map(|&[c0, c1]| [c1, c0]).collect(),
            hyperedges: self.hyperedges.clone(),
        }
    }
}

/// Sum of the chosen unary costs plus every hyperedge's disagreement.
pub fn instance_energy(inst: &Instance, x: &LabelVector) -> Result<Cost> {
    if x.len() != inst.num_nodes() {
        return Err(Error::LengthMismatch { left: x.len(), right: inst.num_nodes() });
    }
    let mut e = 0.0;
    for (c, b) in inst.unary.iter().zip(x.iter()) {
        e += c[b as usize];
    }
    for h in &inst.hyperedges {
        let ones = h.members.iter().filter(|&&m| x.get(m)).count();
        e += h.cost_for_ones(ones);
    }
    Ok(e)
}
