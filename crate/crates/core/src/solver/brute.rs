use crate::error::{Error, Result};
use crate::label::LabelVector;

use super::instance::{instance_energy, Instance};
use super::{Method, SolveStats, Solution};

pub const MAX_BRUTE_FORCE_NODES: usize = 20;

/// Enumerates all `2^n` assignments in increasing order of their bit
/// pattern (node 0 most significant) and keeps the first strict minimum.
pub fn minimize_bruteforce(inst: &Instance) -> Result<Solution> {
    let n = inst.num_nodes();
    if n > MAX_BRUTE_FORCE_NODES {
        return Err(Error::TooLarge { nodes: n, max: MAX_BRUTE_FORCE_NODES });
    }
    let bit = |i: usize| 1u32 << (n - 1 - i);
    let edges: Vec<(u32, _)> = inst
        .hyperedges()
        .iter()
        .map(|h| (h.members.iter().fold(0u32, |m, &i| m | bit(i)), h))
        .collect();

    // same summation order as instance_energy
    let energy_of = |m: u32| {
        let mut e = 0.0;
        for (i, c) in inst.unary().iter().enumerate() {
            e += c[(m & bit(i) != 0) as usize];
        }
        for (mask, h) in &edges {
            e += h.cost_for_ones((m & mask).count_ones() as usize);
        }
        e
    };

    let total = 1u64 << n;
    let mut best = (0u32, energy_of(0));
    for m in 1..total as u32 {
        let e = energy_of(m);
        if e < best.1 {
            best = (m, e);
        }
    }
    let assignment = LabelVector::from_mask(best.0 as u64, n)?;
    let energy = instance_energy(inst, &assignment)?;
    Ok(Solution {
        assignment,
        energy,
        method: Method::Brute,
        stats: SolveStats { evaluated: total, ..Default::default() },
    })
}
