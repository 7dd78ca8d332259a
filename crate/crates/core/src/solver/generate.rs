//! Seeded random instances for oracle-equivalence tests and benchmarks.
//!
//! Everything is drawn from a ChaCha8 stream seeded with the given seed:
//! node count, then per node two unary costs uniform in `[0, unary_max]`,
//! then the hyperedge count, and per hyperedge its size, distinct members,
//! penalty family and weight (uniform in `[0, weight_max]`).

use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::concave::{ConcaveSpec, Family};

use super::instance::{Hyperedge, Instance};

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyMix {
    /// Uniform over sqrt, log1p, power, trunclin and random concave tables.
    Mixed,
    Fixed(Family),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub nodes: RangeInclusive<usize>,
    pub edges: RangeInclusive<usize>,
    /// Clamped to the node count.
    pub edge_size: RangeInclusive<usize>,
    pub unary_max: f64,
    pub weight_max: f64,
    pub families: FamilyMix,
}

impl GeneratorConfig {
    /// Small enough for brute force: up to 16 nodes, 5 edges of size <= 8.
    pub fn small() -> Self {
        GeneratorConfig {
            nodes: 2..=16,
            edges: 0..=5,
            edge_size: 2..=8,
            unary_max: 10.0,
            weight_max: 5.0,
            families: FamilyMix::Mixed,
        }
    }

    /// 10,000 nodes and 2,000 sqrt-penalized hyperedges of size <= 20.
    pub fn desk_scale() -> Self {
        GeneratorConfig {
            nodes: 10_000..=10_000,
            edges: 2_000..=2_000,
            edge_size: 2..=20,
            unary_max: 10.0,
            weight_max: 5.0,
            families: FamilyMix::Fixed(Family::Sqrt),
        }
    }
}

fn random_family(rng: &mut ChaCha8Rng, max_dev: usize) -> Family {
    match rng.gen_range(0..5) {
        0 => Family::Sqrt,
        1 => Family::Log1p,
        2 => Family::Power { exponent: rng.gen_range(0.2..=1.0) },
        3 => Family::TruncLinear {
            slope: rng.gen_range(0.5..=2.0),
            cap: rng.gen_range(1..=3) as f64,
        },
        _ => {
            let mut inc: Vec<f64> = (0..max_dev).map(|_| rng.gen_range(0.0..1.0)).collect();
            inc.sort_by(|a, b| b.total_cmp(a));
            let mut values = vec![0.0];
            for d in inc {
                values.push(values.last().unwrap() + d);
            }
            Family::Table(values)
        }
    }
}

pub fn random_instance(seed: u64, cfg: &GeneratorConfig) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(cfg.nodes.clone()).max(1);
    let unary = (0..n)
        .map(|_| [rng.gen_range(0.0..=cfg.unary_max), rng.gen_range(0.0..=cfg.unary_max)])
        .collect();
    let mut hyperedges = Vec::new();
    if n >= 2 {
        let lo = (*cfg.edge_size.start()).clamp(2, n);
        let hi = (*cfg.edge_size.end()).clamp(lo, n);
        for _ in 0..rng.gen_range(cfg.edges.clone()) {
            let size = rng.gen_range(lo..=hi);
            let mut members = sample(&mut rng, n, size).into_vec();
            members.sort_unstable();
            let max_dev = (size / 2).max(1);
            let family = match &cfg.families {
                FamilyMix::Mixed => random_family(&mut rng, max_dev),
                FamilyMix::Fixed(f) => f.clone(),
            };
            let weight = rng.gen_range(0.0..=cfg.weight_max);
            let spec = ConcaveSpec::new(family, max_dev, weight).expect("generated penalty is concave");
            hyperedges.push(Hyperedge::new(members, spec));
        }
    }
    Instance::new(unary, hyperedges).expect("generated instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let cfg = GeneratorConfig::small();
        assert_eq!(random_instance(7, &cfg), random_instance(7, &cfg));
        assert_ne!(random_instance(7, &cfg), random_instance(8, &cfg));
    }

    #[test]
    fn respects_bounds() {
        let cfg = GeneratorConfig::small();
        for seed in 0..50 {
            let inst = random_instance(seed, &cfg);
            assert!(inst.num_nodes() <= 16);
            assert!(inst.hyperedges().len() <= 5);
            assert!(inst.hyperedges().iter().all(|h| (2..=8).contains(&h.len())));
        }
    }
}
