use proptest::prelude::*;

use labelcut::solver::generate::{random_instance, GeneratorConfig};
use labelcut::verifier::verify_sampled;
use labelcut::{
    assemble_energy, decompose_truncated, disagreement, instance_energy, minimize_bruteforce,
    minimize_cut, submodular_margin, ConcaveSpec, Family, LabelVector, Penalty,
};

fn labels(max_len: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), 1..=max_len)
}

fn label_pair(max_len: usize) -> impl Strategy<Value = (LabelVector, LabelVector)> {
    (1..=max_len).prop_flat_map(|k| {
        (proptest::collection::vec(any::<bool>(), k), proptest::collection::vec(any::<bool>(), k))
            .prop_map(|(a, b)| (LabelVector::new(a).unwrap(), LabelVector::new(b).unwrap()))
    })
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Sqrt),
        Just(Family::Log1p),
        (0.05f64..=1.0).prop_map(|exponent| Family::Power { exponent }),
        (0.0f64..5.0, 1.0f64..6.0).prop_map(|(slope, cap)| Family::TruncLinear { slope, cap }),
    ]
}

/// Nondecreasing concave table from sorted nonnegative increments.
fn concave_table(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    (0.0f64..3.0, proptest::collection::vec(0.0f64..2.0, 1..=max_len)).prop_map(|(g0, mut inc)| {
        inc.sort_by(|a, b| b.total_cmp(a));
        let mut v = vec![g0];
        for d in inc {
            v.push(v.last().unwrap() + d);
        }
        v
    })
}

proptest! {
    #[test]
    fn disagreement_permutation_invariant(bits in labels(40), fam in family(), seed in any::<u64>()) {
        let spec = ConcaveSpec::new(fam, 20, 1.0).unwrap();
        let x = LabelVector::new(bits.clone()).unwrap();
        let mut shuffled = bits;
        // deterministic shuffle driven by the seed
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let y = LabelVector::new(shuffled).unwrap();
        prop_assert_eq!(disagreement(&spec, &x).unwrap(), disagreement(&spec, &y).unwrap());
    }

    #[test]
    fn disagreement_complement_symmetric(bits in labels(40), fam in family()) {
        let spec = ConcaveSpec::new(fam, 20, 2.0).unwrap();
        let x = LabelVector::new(bits).unwrap();
        prop_assert_eq!(
            disagreement(&spec, &x).unwrap(),
            disagreement(&spec, &x.complement()).unwrap()
        );
    }

    #[test]
    fn margin_symmetric_and_nonnegative((a, b) in label_pair(40), fam in family()) {
        let spec = ConcaveSpec::new(fam, 20, 1.0).unwrap();
        let m = submodular_margin(&spec, &a, &b).unwrap();
        prop_assert_eq!(m, submodular_margin(&spec, &b, &a).unwrap());
        prop_assert!(m >= -1e-9);
    }

    #[test]
    fn chain_pairs_are_modular((a, b) in label_pair(40), values in concave_table(25)) {
        // force a <= b componentwise
        let lo = LabelVector::new(a.iter().zip(b.iter()).map(|(x, y)| x & y).collect()).unwrap();
        prop_assume!(values.len() > b.len() / 2);
        let spec = ConcaveSpec::table(values, 1.0).unwrap();
        prop_assert!(lo.le(&b));
        prop_assert_eq!(submodular_margin(&spec, &lo, &b).unwrap(), 0.0);
    }

    #[test]
    fn decomposition_reconstructs_tables(values in concave_table(32), weight in 0.0f64..10.0) {
        let spec = ConcaveSpec::table(values, weight).unwrap();
        let t_eff = spec.max_deviation();
        let dec = decompose_truncated(&spec, t_eff).unwrap();
        prop_assert!(dec.pieces.iter().all(|p| p.lambda >= 0.0));
        prop_assert!(dec.residual(&spec) < 1e-9);
    }

    #[test]
    fn cut_solution_is_self_consistent(seed in any::<u64>()) {
        let inst = random_instance(seed, &GeneratorConfig::small());
        let s = minimize_cut(&inst).unwrap();
        let e = instance_energy(&inst, &s.assignment).unwrap();
        prop_assert!((e - s.energy).abs() <= 1e-6);
    }
}

#[test]
fn sampled_verification_reproducible() {
    let spec = ConcaveSpec::new(Family::Log1p, 40, 1.0).unwrap();
    let a = verify_sampled(&spec, 80, 50_000, 42).unwrap();
    let b = verify_sampled(&spec, 80, 50_000, 42).unwrap();
    assert!(a.same_outcome(&b));
    assert_eq!(a.violation_count, 0);
}

#[test]
fn assembly_exact_at_fixed_labels() {
    let cfg = GeneratorConfig { nodes: 2..=10, ..GeneratorConfig::small() };
    for seed in 0..40 {
        let inst = random_instance(seed, &cfg);
        let graph = assemble_energy(&inst).unwrap();
        let n = inst.num_nodes();
        for m in 0..1u64 << n {
            let x = LabelVector::from_mask(m, n).unwrap();
            let want = instance_energy(&inst, &x).unwrap();
            let got = graph.min_energy_over_aux(&x).unwrap();
            assert!((want - got).abs() <= 1e-6, "seed {seed} x {x}: {want} vs {got}");
        }
    }
}

#[test]
fn swapping_unaries_complements_minimizers() {
    let cfg = GeneratorConfig { nodes: 2..=12, ..GeneratorConfig::small() };
    for seed in 0..30 {
        let inst = random_instance(seed, &cfg);
        let swapped = inst.with_swapped_unaries();
        let n = inst.num_nodes();
        for m in 0..1u64 << n {
            let x = LabelVector::from_mask(m, n).unwrap();
            let e = instance_energy(&inst, &x).unwrap();
            let f = instance_energy(&swapped, &x.complement()).unwrap();
            assert!((e - f).abs() <= 1e-9);
        }
        let a = minimize_bruteforce(&inst).unwrap();
        let b = minimize_bruteforce(&swapped).unwrap();
        assert!((a.energy - b.energy).abs() <= 1e-9);
        let e = instance_energy(&swapped, &a.assignment.complement()).unwrap();
        assert!((e - b.energy).abs() <= 1e-9, "complement of a minimizer is a minimizer");
    }
}
