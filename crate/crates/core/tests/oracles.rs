//! Implementations checked against independent brute-force oracles.

use labelcut::solver::generate::{random_instance, GeneratorConfig};
use labelcut::solver::maxflow::FlowNetwork;
use labelcut::{
    build_gadget, gadget_min_over_aux, minimize_bruteforce, minimize_cut, LabelVector, Piece,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum s-t cut by enumerating every node subset containing s but not t.
fn brute_min_cut(n: usize, edges: &[(usize, usize, i64)], s: usize, t: usize) -> i64 {
    let mut best = i64::MAX;
    for m in 0..1u32 << n {
        if m & (1 << s) == 0 || m & (1 << t) != 0 {
            continue;
        }
        let cut = edges
            .iter()
            .filter(|(u, v, _)| m & (1 << u) != 0 && m & (1 << v) == 0)
            .map(|e| e.2)
            .sum();
        best = best.min(cut);
    }
    best
}

#[test]
fn max_flow_matches_cut_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(2..=9);
        let m = rng.gen_range(0..=3 * n);
        let edges: Vec<(usize, usize, i64)> = (0..m)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..=20)))
            .filter(|(u, v, _)| u != v)
            .collect();
        let mut net = FlowNetwork::new(n);
        for &(u, v, c) in &edges {
            net.add_edge(u, v, c);
        }
        let r = net.max_flow(0, n - 1);
        assert_eq!(r.value, brute_min_cut(n, &edges, 0, n - 1));
        // the reported source side is itself a minimum cut
        let side_cut: i64 = edges
            .iter()
            .filter(|(u, v, _)| r.source_side[*u] && !r.source_side[*v])
            .map(|e| e.2)
            .sum();
        assert_eq!(side_cut, r.value);
    }
}

#[test]
fn diamond_cut_enumeration() {
    let edges = [(0, 1, 1), (1, 3, 2), (0, 2, 2), (2, 3, 1)];
    assert_eq!(brute_min_cut(4, &edges, 0, 3), 2);
}

/// Closed form of the gadget energy for one auxiliary setting.
fn gadget_closed_form(lambda: f64, q: usize, x: &LabelVector, z0: bool, z1: bool) -> f64 {
    let (n0, n1) = x.counts();
    let (q, z0, z1) = (q as f64, z0 as u8 as f64, z1 as u8 as f64);
    lambda * (n1 as f64 * (1.0 - z1) + q * z1) + lambda * (n0 as f64 * z0 + q * (1.0 - z0))
        - lambda * q
}

#[test]
fn gadget_examples_by_enumeration() {
    let cases: [(f64, usize, &str, f64); 3] =
        [(1.0, 2, "000001", 1.0), (2.0, 2, "00111", 4.0), (1.0, 1, "0011", 1.0)];
    for (lambda, q, x, want) in cases {
        let x: LabelVector = x.parse().unwrap();
        let oracle = [(false, false), (false, true), (true, false), (true, true)]
            .iter()
            .map(|&(z0, z1)| gadget_closed_form(lambda, q, &x, z0, z1))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(oracle, want);
        let members: Vec<usize> = (0..x.len()).collect();
        let g = build_gadget(Piece { cap: q, lambda }, &members, x.len()).unwrap();
        assert_eq!(gadget_min_over_aux(&g, &x).unwrap(), want);
    }
}

#[test]
fn gadget_fragment_energy_matches_closed_form() {
    for k in 2..=6 {
        for q in 1..=k / 2 {
            let members: Vec<usize> = (0..k).collect();
            let g = build_gadget(Piece { cap: q, lambda: 1.5 }, &members, k).unwrap();
            for m in 0..1u64 << k {
                let x = LabelVector::from_mask(m, k).unwrap();
                for (z0, z1) in [(false, false), (false, true), (true, false), (true, true)] {
                    let e = g.energy(|v| if v == k { z0 } else if v == k + 1 { z1 } else { x.get(v) });
                    let want = gadget_closed_form(1.5, q, &x, z0, z1);
                    assert!((e - want).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn cut_matches_brute_force_on_random_instances() {
    let cfg = GeneratorConfig::small();
    for seed in 100..400 {
        let inst = random_instance(seed, &cfg);
        let brute = minimize_bruteforce(&inst).unwrap();
        let cut = minimize_cut(&inst).unwrap();
        assert!(
            (brute.energy - cut.energy).abs() <= 1e-6,
            "seed {seed}: brute {} cut {}",
            brute.energy,
            cut.energy
        );
    }
}
