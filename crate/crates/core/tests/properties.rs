mod common;

use advlab::adversary::{adaptive_max, is_admissible, Caps, ObliviousSimulator, TestFunction};
use advlab::costs::{build_strong, build_subtractive, CostFunction, Rational};
use advlab::lab::{ExperimentConfig, ExperimentKind};
use advlab::probkit::{
    conditional_mutual_information, entropy, is_reachable, kl_divergence, min_cost_transport, mutual_information,
    nearest_oblivious, total_correlation, tv_distance, tv_joint, Dist, Domain, JointDist,
};
use advlab::simulate::lipschitz_transfer;
use common::{brute_adaptive_max, random_dist, random_joint};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weights(k: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001f64..1.0, k)
}

fn dist_pair() -> impl Strategy<Value = (Dist, Dist)> {
    (2usize..5).prop_flat_map(|k| (weights(k), weights(k))).prop_map(|(a, b)| {
        let d = Domain::range(a.len()).unwrap();
        (Dist::from_weights(&d, a).unwrap(), Dist::from_weights(&d, b).unwrap())
    })
}

fn eta() -> impl Strategy<Value = Rational> {
    (1i64..=8).prop_map(|q| Rational::new(q, 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pinsker((p, q) in dist_pair()) {
        let tv = tv_distance(&p, &q).unwrap();
        let kl = kl_divergence(&p, &q).unwrap();
        prop_assert!(tv <= (kl / 2.0).sqrt() + 1e-12);
    }

    #[test]
    fn tv_is_a_metric((p, q) in dist_pair(), w in weights(4)) {
        let d = p.domain().clone();
        let r = Dist::from_weights(&d, w[..d.len()].to_vec()).unwrap();
        let pq = tv_distance(&p, &q).unwrap();
        prop_assert!((pq - tv_distance(&q, &p).unwrap()).abs() < 1e-15);
        prop_assert!(pq <= tv_distance(&p, &r).unwrap() + tv_distance(&r, &q).unwrap() + 1e-12);
        let mid = p.mix(&q, 0.5).unwrap();
        prop_assert!(tv_distance(&mid, &r).unwrap()
            <= 0.5 * tv_distance(&p, &r).unwrap() + 0.5 * tv_distance(&q, &r).unwrap() + 1e-12);
    }

    #[test]
    fn product_tv_grows_at_most_linearly((p, q) in dist_pair(), n in 1usize..4) {
        let a = JointDist::product_power(&p, n).unwrap();
        let b = JointDist::product_power(&q, n).unwrap();
        prop_assert!(tv_joint(&a, &b).unwrap() <= n as f64 * tv_distance(&p, &q).unwrap() + 1e-12);
    }

    #[test]
    fn strong_transport_is_scaled_tv((p, q) in dist_pair(), eta in eta()) {
        let rho = build_strong(p.domain(), eta).unwrap();
        let cost = min_cost_transport(&p, &q, &rho).unwrap();
        let tv = tv_distance(&p, &q).unwrap();
        prop_assert!((cost - tv / eta.to_f64().unwrap()).abs() < 1e-7);
        prop_assert_eq!(is_reachable(&rho, &p, &q).unwrap(), tv <= eta.to_f64().unwrap() + 1e-7);
    }

    #[test]
    fn information_is_bounded_by_entropy(seed in any::<u64>(), k in 2usize..4) {
        let d = Domain::range(k).unwrap();
        let j = random_joint(&mut ChaCha8Rng::seed_from_u64(seed), &d, 2);
        let i = mutual_information(&j, &[0], &[1]).unwrap();
        prop_assert!(i >= 0.0);
        prop_assert!(i <= (k as f64).ln() + 1e-12);
        prop_assert!(i <= entropy(&j.coordinate(0).unwrap()) + 1e-12);
    }

    #[test]
    fn chain_rule_and_total_correlation(seed in any::<u64>()) {
        let d = Domain::range(2).unwrap();
        let j = random_joint(&mut ChaCha8Rng::seed_from_u64(seed), &d, 3);
        let whole = mutual_information(&j, &[0], &[1, 2]).unwrap();
        let parts = mutual_information(&j, &[0], &[1]).unwrap()
            + conditional_mutual_information(&j, &[0], &[2], &[1]).unwrap();
        prop_assert!((whole - parts).abs() < 1e-9);
        let tc = total_correlation(&j, &[0, 1, 2]).unwrap();
        let sum = mutual_information(&j, &[0], &[1]).unwrap() + mutual_information(&j, &[0, 1], &[2]).unwrap();
        prop_assert!((tc - sum).abs() < 1e-9);
    }

    #[test]
    fn nearest_reachable_is_reachable_and_no_farther((p, q) in dist_pair(), eta in eta()) {
        let rho = build_strong(p.domain(), eta).unwrap();
        let (r, tv) = nearest_oblivious(&rho, &p, &q).unwrap();
        prop_assert!(min_cost_transport(&p, &r, &rho).unwrap() <= 1.0 + 1e-7);
        prop_assert!((tv - tv_distance(&r, &q).unwrap()).abs() < 1e-7);
        prop_assert!(tv <= tv_distance(&p, &q).unwrap() + 1e-7);
    }

    #[test]
    fn transfer_is_feasible_and_lipschitz(seed in any::<u64>(), eta in eta(), removal in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = Domain::range(3).unwrap();
        let (dom, rho): (Domain, CostFunction) = if removal {
            build_subtractive(&d, eta).unwrap()
        } else {
            (d.clone(), build_strong(&d, eta).unwrap())
        };
        let d1 = random_dist(&mut rng, &dom);
        let d2 = random_dist(&mut rng, &dom);
        let (c1, _) = nearest_oblivious(&rho, &d1, &random_dist(&mut rng, &dom)).unwrap();
        let c2 = lipschitz_transfer(&rho, &d1, &d2, &c1).unwrap();
        prop_assert!(min_cost_transport(&d2, &c2, &rho).unwrap() <= 1.0 + 1e-7);
        prop_assert!(tv_distance(&c1, &c2).unwrap() <= tv_distance(&d1, &d2).unwrap() + 1e-7);
    }

    #[test]
    fn simulator_output_is_admissible(seed in any::<u64>(), eta in eta(), m in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = Domain::range(3).unwrap();
        let rho = build_strong(&d, eta).unwrap();
        let base = random_dist(&mut rng, &d);
        let (target, _) = nearest_oblivious(&rho, &base, &random_dist(&mut rng, &d)).unwrap();
        let sim = ObliviousSimulator::new(&rho, &base, &target).unwrap();
        for _ in 0..20 {
            let s: Vec<usize> = (0..m).map(|_| base.sample(&mut rng)).collect();
            let out = sim.corrupt(&s, &mut rng);
            prop_assert!(is_admissible(&rho, &s, &out.sample));
            prop_assert!(out.average_cost <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn count_route_matches_brute_force(seed in any::<u64>(), eta in eta(), m in 2usize..5, removal in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = Domain::range(2).unwrap();
        let (dom, rho) = if removal {
            build_subtractive(&d, eta).unwrap()
        } else {
            (d.clone(), build_strong(&d, eta).unwrap())
        };
        let base = random_dist(&mut rng, &dom);
        let f = TestFunction::random_exchangeable(2, dom.len(), &mut rng);
        let fast = adaptive_max(&f, &rho, &base, m, &Caps::default()).unwrap();
        let slow = brute_adaptive_max(&f, &rho, &base, m);
        prop_assert!((fast - slow).abs() < 1e-12, "{} vs {}", fast, slow);
    }

    #[test]
    fn cost_text_round_trips(eta in eta(), k in 1usize..5) {
        let d = Domain::range(k).unwrap();
        let (_, rho) = build_subtractive(&d, eta).unwrap();
        prop_assert_eq!(CostFunction::from_text(&rho.to_text()).unwrap(), rho);
    }

    #[test]
    fn config_overrides_round_trip(seed in any::<u64>(), trials in 1usize..100_000, q in 1i64..=6) {
        let mut c = ExperimentConfig::defaults(ExperimentKind::Certify);
        c.seed = seed;
        c.trials = trials;
        c.eta = Rational::new(q, 6);
        prop_assert_eq!(ExperimentConfig::from_text(ExperimentKind::Certify, &c.to_text()).unwrap(), c);
    }
}
