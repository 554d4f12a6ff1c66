use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::combinatorics::{compositions, decode, power};
use crate::error::{Error, Result};

type Evaluator = Arc<dyn Fn(&[usize]) -> f64 + Send + Sync>;

/// A test `f: X^n -> [0, 1]` used as the yardstick for corruption.
#[derive(Clone)]
pub struct TestFunction {
    arity: usize,
    eval: Evaluator,
    exchangeable: bool,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("arity", &self.arity)
            .field("exchangeable", &self.exchangeable)
            .finish()
    }
}

impl TestFunction {
    pub fn new(arity: usize, f: impl Fn(&[usize]) -> f64 + Send + Sync + 'static) -> TestFunction {
        TestFunction {
            arity,
            eval: Arc::new(f),
            exchangeable: false,
        }
    }

    /// A test whose value depends only on the multiset of its inputs.
    pub fn exchangeable(arity: usize, f: impl Fn(&[usize]) -> f64 + Send + Sync + 'static) -> TestFunction {
        TestFunction {
            exchangeable: true,
            ..TestFunction::new(arity, f)
        }
    }

    /// Exchangeable test given by its value on each count vector over
    /// `domain_size` symbols. Values are looked up by composition.
    pub fn from_composition_values(
        arity: usize,
        domain_size: usize,
        mut value: impl FnMut(&[usize]) -> f64,
    ) -> Result<TestFunction> {
        let comps = compositions(arity, domain_size);
        let mut table = std::collections::HashMap::with_capacity(comps.len());
        for c in comps {
            let v = value(&c);
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!("test value {v} outside [0, 1]")));
            }
            table.insert(c, v);
        }
        Ok(TestFunction::exchangeable(arity, move |t| {
            let mut c = vec![0; domain_size];
            for &x in t {
                c[x] += 1;
            }
            table[&c]
        }))
    }

    /// A random exchangeable test with independent uniform values per count vector.
    pub fn random_exchangeable<R: Rng + ?Sized>(arity: usize, domain_size: usize, rng: &mut R) -> TestFunction {
        TestFunction::from_composition_values(arity, domain_size, |_| rng.gen::<f64>())
            .expect("uniform values lie in [0, 1]")
    }

    /// Indicator that every input equals the first.
    pub fn all_equal(arity: usize) -> TestFunction {
        TestFunction::exchangeable(arity, |t| f64::from(u8::from(t.iter().all(|&x| x == t[0]))))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_exchangeable(&self) -> bool {
        self.exchangeable
    }

    pub fn eval(&self, t: &[usize]) -> f64 {
        (self.eval)(t)
    }

    /// Values on all of `X^n`, row-major; checks the range.
    pub fn table(&self, domain_size: usize, cap: f64) -> Result<Vec<f64>> {
        let cells = power(domain_size, self.arity);
        if cells > cap {
            return Err(Error::CapExceeded {
                what: "test function table",
                needed: cells,
                cap,
            });
        }
        let mut t = vec![0; self.arity];
        (0..cells as usize)
            .map(|i| {
                decode(i, domain_size, self.arity, &mut t);
                let v = self.eval(&t);
                if (0.0..=1.0).contains(&v) {
                    Ok(v)
                } else {
                    Err(Error::InvalidParameter(format!("test value {v} outside [0, 1] at {t:?}")))
                }
            })
            .collect()
    }

    /// Spot-checks the exchangeability flag on random tuples and shuffles.
    pub fn spot_check_exchangeable<R: Rng + ?Sized>(&self, domain_size: usize, trials: usize, rng: &mut R) -> bool {
        use rand::seq::SliceRandom;
        (0..trials).all(|_| {
            let t: Vec<usize> = (0..self.arity).map(|_| rng.gen_range(0..domain_size)).collect();
            let mut s = t.clone();
            s.shuffle(rng);
            (self.eval(&t) - self.eval(&s)).abs() < 1e-12
        })
    }
}
