use std::collections::HashMap;

use maskperc::model::{DegreePmf, MaskSet, ScenarioConfig};
use maskperc::network::{generate_multilayer, pair_stubs, sample_colored_degrees, Layer};
use proptest::prelude::*;

fn cfg(n: usize, alpha: f64, lc: f64, ls: f64) -> ScenarioConfig {
    ScenarioConfig {
        n,
        alpha,
        dist_c: DegreePmf::poisson(lc),
        dist_s: DegreePmf::poisson(ls),
        tc: 0.5,
        ts: 0.5,
        masks: MaskSet::unmasked(),
        emergence_threshold: 0.05,
    }
}

#[test]
fn mean_degrees_within_clt_bounds() {
    let n = 20_000;
    let c = cfg(n, 0.4, 6.0, 8.0);
    for seed in 0..5 {
        let g = generate_multilayer(&c, seed);
        let mean_c = g.degrees(Layer::Community).iter().sum::<usize>() as f64 / n as f64;
        // Poisson variance equals its mean; parity repair moves at most one stub
        assert!((mean_c - 6.0).abs() <= 4.0 * (6.0 / n as f64).sqrt(), "{mean_c}");
        let members: Vec<usize> = (0..n).filter(|&i| g.school_members()[i]).collect();
        let mean_s = members.iter().map(|&i| g.degree(Layer::School, i)).sum::<usize>() as f64 / members.len() as f64;
        assert!((mean_s - 8.0).abs() <= 4.0 * (8.0 / members.len() as f64).sqrt(), "{mean_s}");
        let sd = (n as f64 * 0.4 * 0.6).sqrt();
        assert!((members.len() as f64 - 0.4 * n as f64).abs() <= 4.0 * sd);
    }
}

#[test]
fn realized_degrees_equal_sampled_degrees() {
    let c = cfg(3000, 0.5, 3.0, 5.0);
    let sampled = sample_colored_degrees(&c, 17);
    let g = generate_multilayer(&c, 17);
    assert_eq!(g.degrees(Layer::Community), sampled.community);
    assert_eq!(g.degrees(Layer::School), sampled.school);
    assert_eq!(g.school_members(), sampled.school_members.as_slice());
    for i in 0..3000 {
        if !g.school_members()[i] {
            assert_eq!(g.degree(Layer::School, i), 0);
        }
    }
}

#[test]
fn four_single_stubs_match_uniformly() {
    // three perfect matchings of four stubs, each with probability 1/3
    let trials = 30_000;
    let mut counts: HashMap<Vec<(u32, u32)>, usize> = HashMap::new();
    for seed in 0..trials {
        let mut edges = pair_stubs(&[1, 1, 1, 1], seed).unwrap();
        edges.sort();
        *counts.entry(edges).or_default() += 1;
    }
    assert_eq!(counts.len(), 3);
    let expected = trials as f64 / 3.0;
    let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 2 degrees of freedom, 0.999 quantile
    assert!(chi2 < 13.82, "chi2 = {chi2}, counts = {counts:?}");
}

#[test]
fn clustering_vanishes_with_size() {
    let small = generate_multilayer(&cfg(500, 0.0, 6.0, 1.0), 3).global_clustering();
    let large = generate_multilayer(&cfg(20_000, 0.0, 6.0, 1.0), 3).global_clustering();
    // configuration-model clustering decays like 1/n
    assert!(large < small, "{large} vs {small}");
    assert!(large < 0.005);
}

#[test]
fn odd_stub_total_is_rejected() {
    assert!(pair_stubs(&[1, 2], 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generation_is_deterministic_and_consistent(seed in any::<u64>(), alpha in 0.0f64..=1.0, lc in 0.0f64..8.0, ls in 0.0f64..8.0) {
        let c = cfg(400, alpha, lc, ls);
        let a = generate_multilayer(&c, seed);
        prop_assert_eq!(&a, &generate_multilayer(&c, seed));
        for layer in [Layer::Community, Layer::School] {
            let total: usize = a.degrees(layer).iter().sum();
            prop_assert_eq!(total, 2 * a.edges(layer).len());
        }
        for &(u, v) in a.edges(Layer::School) {
            prop_assert!(a.school_members()[u as usize] && a.school_members()[v as usize]);
        }
        prop_assert_eq!(a.slot_count(), 2 * (a.edges(Layer::Community).len() + a.edges(Layer::School).len()));
    }
}
