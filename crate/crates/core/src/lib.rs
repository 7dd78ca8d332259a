//! Dominant-label disagreement potentials over binary labels.
//!
//! For a binary vector `x` of length `k` with `n0` zeros and `n1` ones, the
//! disagreement potential is `d(x) = g(min(n0, n1))`: a penalty on the number
//! of coordinates that deviate from the majority label. When `g` is
//! nondecreasing and concave, `d` is submodular.
//!
//! The crate provides
//!
//! * [`label`] and [`concave`]: label vectors, validated penalty tables and `d`,
//! * [`verifier`]: exhaustive and sampled lattice checks of submodularity,
//! * [`reduction`]: truncated-linear decomposition and pairwise gadgets,
//! * [`solver`]: exact minimization of unary + hyperedge energies by min-cut,
//!   with a brute-force oracle.

pub mod concave;
pub mod error;
pub mod label;
pub mod reduction;
pub mod solver;
pub mod verifier;

/// Energy value. Always finite in values produced by this crate.
pub type Cost = f64;

pub use concave::{disagreement, eval_g, make_concave_spec, ConcaveSpec, Family, Penalty, RawTable};
pub use error::{Error, Result, ValidationKind};
pub use label::{deviation, dominant_label, Dominant, LabelVector, Majority};
pub use reduction::{
    build_gadget, decompose_truncated, gadget_min_over_aux, Decomposition, GadgetFragment, Piece,
};
pub use solver::{
    assemble_energy, instance_energy, max_flow, minimize_bruteforce, minimize_cut, CutGraph,
    Hyperedge, Instance, Method, Solution,
};
pub use verifier::{
    classify_case, find_counterexample, join_meet, kappa_profile, submodular_margin,
    verify_exhaustive, verify_sampled, KappaProfile, ProofCase, VerifyReport, Violation,
};
