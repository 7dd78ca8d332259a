use labelcut::solver::generate::{random_instance, GeneratorConfig};
use labelcut::{instance_energy, LabelVector};
use labelcut_cli::commands::{EXIT_MISMATCH, EXIT_OK};
use labelcut_cli::{minimize_instance, parse_instance, serialize_instance, MinimizeMethod};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_preserves_energies(seed in any::<u64>()) {
        let cfg = GeneratorConfig { nodes: 1..=10, ..GeneratorConfig::small() };
        let inst = random_instance(seed, &cfg);
        let back = parse_instance(&serialize_instance(&inst)).unwrap();
        let n = inst.num_nodes();
        prop_assert_eq!(back.num_nodes(), n);
        for m in 0..1u64 << n {
            let x = LabelVector::from_mask(m, n).unwrap();
            prop_assert_eq!(
                instance_energy(&inst, &x).unwrap(),
                instance_energy(&back, &x).unwrap()
            );
        }
    }
}

#[test]
fn self_check_agrees_on_random_instances() {
    for seed in 0..20 {
        let inst = random_instance(seed, &GeneratorConfig::small());
        let out = minimize_instance(&inst, MinimizeMethod::Both).unwrap();
        assert_eq!(out.exit_code, EXIT_OK, "seed {seed}");
        assert_ne!(out.exit_code, EXIT_MISMATCH);
    }
}
