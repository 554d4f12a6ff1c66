//! Finite distributions, joint laws, information measures and transport.

mod dist;
mod domain;
mod info;
mod joint;
mod transport;

pub(crate) use dist::check_mass;
pub use dist::{Dist, MASS_TOLERANCE};
pub use domain::{Domain, NULL_LABEL};
pub(crate) use info::{cmi_unchecked, ctc_unchecked, tv_slices};
pub use info::{
    conditional_mutual_information, conditional_total_correlation, entropy, kl_divergence,
    mutual_information, total_correlation, tv_distance, tv_joint,
};
pub use joint::{JointDist, DEFAULT_JOINT_CAP};
pub use transport::{
    is_reachable, min_cost_transport, nearest_oblivious, optimal_coupling, tv_coupling, Coupling,
    FEASIBILITY_SLACK,
};

/// The law of `n` independent draws from `p`.
pub fn product_power(p: &Dist, n: usize) -> crate::error::Result<JointDist> {
    JointDist::product_power(p, n)
}
