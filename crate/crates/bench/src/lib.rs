//! Shared workloads for the criterion benchmarks.

use labelcut::solver::generate::{random_instance, GeneratorConfig};
use labelcut::{ConcaveSpec, Family, Instance};

/// The 10,000-node / 2,000-hyperedge sqrt instance used as the desk-scale target.
pub fn desk_scale_instance(seed: u64) -> Instance {
    random_instance(seed, &GeneratorConfig::desk_scale())
}

pub fn sqrt_spec(k: usize) -> ConcaveSpec {
    ConcaveSpec::new(Family::Sqrt, (k / 2).max(1), 1.0).expect("sqrt is concave")
}
