// An adaptive adversary that imitates an oblivious target within budget.

use advlab::adversary::ObliviousSimulator;
use advlab::costs::{build_strong, Rational};
use advlab::mc::{run_trials, MeanEstimate};
use advlab::probkit::{nearest_oblivious, Dist, Domain};

fn main() -> advlab::Result<()> {
    let d = Domain::range(3)?;
    let base = Dist::uniform(&d);
    let rho = build_strong(&d, Rational::new(1, 3))?;
    let (target, _) = nearest_oblivious(&rho, &base, &Dist::point(&d, 2)?)?;
    println!("target {:?}", target.probs());

    let sim = ObliviousSimulator::new(&rho, &base, &target)?;
    let m = 400;
    let reverted = run_trials(11, 2000, |rng, _| {
        let s: Vec<usize> = (0..m).map(|_| base.sample(rng)).collect();
        sim.corrupt(&s, rng).reverted as f64
    });
    let est = MeanEstimate::from_values(&reverted);
    println!("reverted per sample of {m}: {:.3} +/- {:.3}", est.mean, est.std_err);
    Ok(())
}
