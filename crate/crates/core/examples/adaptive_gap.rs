// Exact adaptive and oblivious values for one test on a small domain.

use advlab::adversary::{adaptive_max, oblivious_max, Caps, TestFunction};
use advlab::costs::{build_strong, Rational};
use advlab::probkit::{Dist, Domain};

fn main() -> advlab::Result<()> {
    let d = Domain::range(2)?;
    let base = Dist::new(&d, vec![0.7, 0.3])?;
    let rho = build_strong(&d, Rational::new(1, 4))?;
    let f = TestFunction::all_equal(2);
    let caps = Caps::default();

    let obl = oblivious_max(&f, &rho, &base, 100, &caps)?;
    println!("oblivious {:.6} at {:?} (+/- {:.3})", obl.value, obl.argmax.probs(), obl.error_bound);
    for m in [2, 4, 6, 8] {
        let a = adaptive_max(&f, &rho, &base, m, &caps)?;
        println!("m = {m}: adaptive {a:.6}, gap {:.6}", a - obl.value);
    }
    Ok(())
}
