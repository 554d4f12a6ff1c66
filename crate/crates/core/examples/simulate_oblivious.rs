// Replacing an optimal adaptive adversary by a mixture of oblivious ones.

use advlab::adversary::{optimal_strategy, Caps, TestFunction};
use advlab::costs::{build_strong, Rational};
use advlab::probkit::{Dist, Domain};
use advlab::simulate::{indistinguishability_gap, simulate_randomized_oblivious};

fn main() -> advlab::Result<()> {
    let d = Domain::range(2)?;
    let base = Dist::uniform(&d);
    let rho = build_strong(&d, Rational::new(1, 4))?;
    let f = TestFunction::all_equal(2);
    let caps = Caps::default();

    let m = 6;
    let strategy = optimal_strategy(&f, &rho, m, &caps)?;
    let adaptive = strategy.pushforward(&base)?;
    let report = simulate_randomized_oblivious(&adaptive, &rho, &base, 2, 2)?;
    print!("{}", report.to_text());
    let ind = indistinguishability_gap(&adaptive, &report.mixture, &f)?;
    println!("adaptive {:.6} mixture {:.6} gap {:.6}", ind.adaptive_value, ind.mixture_value, ind.gap);
    Ok(())
}
