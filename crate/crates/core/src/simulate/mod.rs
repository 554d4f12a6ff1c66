//! Turning the law of an adaptively corrupted sample into a mixture of
//! i.i.d. laws that an oblivious adversary could produce.

mod blocks;
mod grouping;
mod report;
mod rounding;
mod simulation;
mod transfer;

pub use blocks::{
    block_conditional_mutual_information, block_correlation, block_mutual_information,
    single_coordinate_information,
};
pub use grouping::{goal_distribution, grouped, grouping_bound, grouping_error, Core, GroupedDist, GroupingError};
pub use report::{SimulationMethod, SimulationReport, SIMULATION_SCHEMA};
pub use rounding::{
    correlation_rounding_scan, low_degree_info_check, rounding_bound, rounding_error, LowDegreeCheck,
    RoundingError, RoundingScan,
};
pub use simulation::{
    indistinguishability_gap, mixture_of_products, simulate_empirical_oblivious, simulate_randomized_oblivious,
    Indistinguishability,
};
pub use transfer::{deviation_bound, labeled_goal_deviation, labeled_goal_deviation_mc, lipschitz_transfer};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costs::{build_strong, Rational};
    use crate::lab::majority_flip_law;
    use crate::probkit::{Dist, Domain, JointDist};

    fn coins() -> (Domain, crate::costs::CostFunction, Dist) {
        let d = Domain::range(2).unwrap();
        let rho = build_strong(&d, Rational::new(1, 2)).unwrap();
        let base = Dist::uniform(&d);
        (d, rho, base)
    }

    #[test]
    fn core_pins_the_majority() {
        let (_, rho, _) = coins();
        let law = majority_flip_law(&rho, 3).unwrap();
        let g = grouped(&law, 1, 1).unwrap();
        let goal = g.goal(&[0]).unwrap();
        assert!((goal.prob(0) - 1.0).abs() < 1e-15);
        let g = grouped(&majority_flip_law(&rho, 4).unwrap(), 2, 1).unwrap();
        assert!(grouping_error(&g, 2, 1).unwrap().value.abs() < 1e-15);
    }

    #[test]
    fn identical_bits_scan() {
        let (d, _, _) = coins();
        let law = JointDist::new(&d, 3, {
            let mut v = vec![0.0; 8];
            v[0] = 0.5;
            v[7] = 0.5;
            v
        })
        .unwrap();
        let scan = correlation_rounding_scan(&law, 2, 1).unwrap();
        assert!((scan.values[0] - 2f64.ln()).abs() < 1e-12);
        assert!(scan.values[1].abs() < 1e-12);
        assert_eq!(scan.k_star, 1);
        assert!(scan.residual() >= -1e-9);
    }

    #[test]
    fn equal_sizes_use_empirical_laws() {
        let (_, rho, base) = coins();
        let law = majority_flip_law(&rho, 2).unwrap();
        let r = simulate_empirical_oblivious(&law, &rho, &base, 2).unwrap();
        assert!(r.total_error.abs() < 1e-12);
        assert_eq!(r.mixture.len(), 2);
    }

    #[test]
    fn report_text_round_trip() {
        let (_, rho, base) = coins();
        let law = majority_flip_law(&rho, 4).unwrap();
        let r = simulate_randomized_oblivious(&law, &rho, &base, 2, 2).unwrap();
        assert!(r.triangle_holds(1e-9));
        let back = SimulationReport::from_text(&r.to_text()).unwrap();
        assert_eq!(back.to_text(), r.to_text());
        assert_eq!(back.method, r.method);
    }

    #[test]
    fn transfer_keeps_distance() {
        let (d, rho, _) = coins();
        let d1 = Dist::new(&d, vec![0.5, 0.5]).unwrap();
        let d2 = Dist::new(&d, vec![0.8, 0.2]).unwrap();
        let c1 = Dist::new(&d, vec![0.2, 0.8]).unwrap();
        let c2 = lipschitz_transfer(&rho, &d1, &d2, &c1).unwrap();
        assert!(crate::probkit::is_reachable(&rho, &d2, &c2).unwrap());
        let lhs = crate::probkit::tv_distance(&c1, &c2).unwrap();
        assert!(lhs <= 0.3 + 1e-12);
    }

    #[test]
    fn constant_label_on_iid_law_has_no_deviation() {
        let (d, _, _) = coins();
        let base = Dist::new(&d, vec![0.3, 0.7]).unwrap();
        let law = JointDist::product_power(&base, 4).unwrap();
        assert!(labeled_goal_deviation(&law, &base, None, 1, |_| 0).unwrap() < 1e-12);
        let split = labeled_goal_deviation(&law, &base, None, 2, |t| t[0]).unwrap();
        assert!(split > 0.0 && split <= deviation_bound(2, 4) + 1e-12);
    }
}
