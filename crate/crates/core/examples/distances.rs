// Distances, information and transport between small distributions.

use advlab::costs::{build_strong, Rational};
use advlab::probkit::{
    kl_divergence, min_cost_transport, mutual_information, nearest_oblivious, tv_distance, Dist, Domain, JointDist,
};

fn main() -> advlab::Result<()> {
    let d = Domain::new(["a", "b", "c"])?;
    let p = Dist::new(&d, vec![0.5, 0.3, 0.2])?;
    let q = Dist::new(&d, vec![0.2, 0.3, 0.5])?;
    println!("tv(p, q) = {:.6}", tv_distance(&p, &q)?);
    println!("kl(p || q) = {:.6}", kl_divergence(&p, &q)?);

    let bits = Domain::range(2)?;
    let twins = JointDist::new(&bits, 2, vec![0.5, 0.0, 0.0, 0.5])?;
    println!("I(X1; X2) for identical bits = {:.6}", mutual_information(&twins, &[0], &[1])?);

    let rho = build_strong(&d, Rational::new(1, 4))?;
    println!("transport cost p -> q = {:.6}", min_cost_transport(&p, &q, &rho)?);
    let (near, gap) = nearest_oblivious(&rho, &p, &q)?;
    println!("nearest reachable to q = {:?} at tv {gap:.6}", near.probs());
    Ok(())
}
