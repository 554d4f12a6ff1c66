// Additive, malicious and non-i.i.d. contamination on the same test.

use advlab::adversary::{
    adaptive_additive_max, binomial_max, malicious_max, malicious_run, noniid_max, oblivious_additive_max, Caps,
    TestFunction,
};
use advlab::costs::Rational;
use advlab::mc::trial_rng;
use advlab::probkit::{Dist, Domain};

fn main() -> advlab::Result<()> {
    let d = Domain::range(2)?;
    let base = Dist::new(&d, vec![0.7, 0.3])?;
    let f = TestFunction::exchangeable(2, |t| f64::from(u8::from(t[0] == 1 && t[1] == 1)));
    let eta = Rational::new(1, 4);
    let m = 8;
    let caps = Caps::default();

    println!("adaptive additive {:.6}", adaptive_additive_max(&f, &base, eta, m, &caps)?);
    println!("binomial          {:.6}", binomial_max(&f, &base, eta, m, &caps)?);
    println!("malicious         {:.6}", malicious_max(&f, &base, eta, m, &caps)?);
    println!("non-i.i.d.        {:.6}", noniid_max(&f, &base, eta, m, &caps)?);
    println!("oblivious         {:.6}", oblivious_additive_max(&f, &base, eta, 100, &caps)?.1);

    let mut rng = trial_rng(7, 0);
    let s = malicious_run(&base, eta, m, &|_| 1, &mut rng)?;
    println!("one malicious sample: {s:?}");
    Ok(())
}
