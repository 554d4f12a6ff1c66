//! Experiment configuration: defaults per experiment, a flat `key = value`
//! file format, and overrides.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::adversary::Caps;
use crate::costs::Rational;
use crate::error::{Error, Result};
use crate::numfmt::fmt_num;

/// The experiments the lab can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    Counterexample,
    EasyDirection,
    SupportSize,
    DegreeLb,
    Conversions,
    PartialAdaptive,
    Certify,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::Counterexample,
        ExperimentKind::EasyDirection,
        ExperimentKind::SupportSize,
        ExperimentKind::DegreeLb,
        ExperimentKind::Conversions,
        ExperimentKind::PartialAdaptive,
        ExperimentKind::Certify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Counterexample => "counterexample",
            ExperimentKind::EasyDirection => "easy-direction",
            ExperimentKind::SupportSize => "support-size",
            ExperimentKind::DegreeLb => "degree-lb",
            ExperimentKind::Conversions => "conversions",
            ExperimentKind::PartialAdaptive => "partial-adaptive",
            ExperimentKind::Certify => "certify",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown experiment {s:?}")))
    }
}

/// Every knob of every experiment. Each experiment reads the fields it needs.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub domain_size: usize,
    pub eta: Rational,
    pub epsilon: f64,
    pub n: usize,
    /// `None` lets the experiment pick or calibrate the sample size.
    pub m: Option<usize>,
    pub k_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Grid resolution for maximizing over the simplex.
    pub resolution: usize,
    /// Number of seeded random test functions.
    pub functions: usize,
    pub support_small: usize,
    pub support_large: usize,
    pub prop_k: usize,
    pub dim: usize,
    /// `None` calibrates the inner-product threshold.
    pub tau: Option<i64>,
    pub b: f64,
    pub delta: f64,
    /// Constant in the recommended sample size.
    pub constant: f64,
    pub caps: Caps,
    pub cost_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn defaults(kind: ExperimentKind) -> ExperimentConfig {
        let mut c = ExperimentConfig {
            kind,
            domain_size: 2,
            eta: Rational::new(1, 2),
            epsilon: 0.1,
            n: 2,
            m: None,
            k_max: 2,
            trials: 20_000,
            seed: 1,
            resolution: 100,
            functions: 5,
            support_small: 400,
            support_large: 40_000,
            prop_k: 100,
            dim: 12,
            tau: None,
            b: 1.0,
            delta: 0.5,
            constant: 1.0,
            caps: Caps::default(),
            cost_file: None,
            out: None,
        };
        match kind {
            ExperimentKind::Counterexample => {
                c.m = Some(4);
                c.resolution = 200;
            }
            ExperimentKind::EasyDirection => {
                c.epsilon = 0.5;
                c.trials = 100_000;
            }
            ExperimentKind::SupportSize => {
                c.epsilon = 0.2;
            }
            ExperimentKind::DegreeLb => {
                c.n = 6;
            }
            ExperimentKind::Conversions => {
                c.eta = Rational::new(1, 3);
                c.epsilon = 0.8;
                c.m = Some(6);
            }
            ExperimentKind::PartialAdaptive => {
                c.m = Some(8);
            }
            ExperimentKind::Certify => {
                c.m = Some(8);
                c.k_max = 1;
                c.functions = 0;
                c.resolution = 200;
            }
        }
        c
    }

    /// Defaults overridden by the `key = value` lines of `text`. Blank lines
    /// and lines starting with `#` are skipped.
    pub fn from_text(kind: ExperimentKind, text: &str) -> Result<ExperimentConfig> {
        let mut c = ExperimentConfig::defaults(kind);
        c.apply_text(text)?;
        Ok(c)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            self.set(k.trim(), v.trim()).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(())
    }

    /// Sets one field from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad value {v:?} for {key}")))
        }
        match key {
            "experiment" => {
                let k: ExperimentKind = value.parse()?;
                if k != self.kind {
                    return Err(Error::InvalidParameter(format!(
                        "config is for {k}, running {}",
                        self.kind
                    )));
                }
            }
            "domain_size" => self.domain_size = num(key, value)?,
            "eta" => self.eta = parse_rational(value)?,
            "epsilon" => self.epsilon = num(key, value)?,
            "n" => self.n = num(key, value)?,
            "m" => self.m = if value == "auto" { None } else { Some(num(key, value)?) },
            "k_max" => self.k_max = num(key, value)?,
            "trials" => self.trials = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "resolution" => self.resolution = num(key, value)?,
            "functions" => self.functions = num(key, value)?,
            "support_small" => self.support_small = num(key, value)?,
            "support_large" => self.support_large = num(key, value)?,
            "prop_k" => self.prop_k = num(key, value)?,
            "dim" => self.dim = num(key, value)?,
            "tau" => self.tau = if value == "auto" { None } else { Some(num(key, value)?) },
            "b" => self.b = num(key, value)?,
            "delta" => self.delta = num(key, value)?,
            "constant" => self.constant = num(key, value)?,
            "max_states" => self.caps.max_states = num(key, value)?,
            "max_feasible" => self.caps.max_feasible = num(key, value)?,
            "cost_file" => self.cost_file = Some(PathBuf::from(value)),
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(Error::InvalidParameter(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// The configuration as ordered `(key, value)` pairs, in the same text
    /// form [`ExperimentConfig::set`] accepts.
    pub fn entries(&self) -> Vec<(String, String)> {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "auto".into());
        let mut e = vec![
            ("experiment", self.kind.to_string()),
            ("domain_size", self.domain_size.to_string()),
            ("eta", format!("{}", self.eta)),
            ("epsilon", fmt_num(self.epsilon)),
            ("n", self.n.to_string()),
            ("m", opt(self.m.map(|m| m.to_string()))),
            ("k_max", self.k_max.to_string()),
            ("trials", self.trials.to_string()),
            ("seed", self.seed.to_string()),
            ("resolution", self.resolution.to_string()),
            ("functions", self.functions.to_string()),
            ("support_small", self.support_small.to_string()),
            ("support_large", self.support_large.to_string()),
            ("prop_k", self.prop_k.to_string()),
            ("dim", self.dim.to_string()),
            ("tau", opt(self.tau.map(|t| t.to_string()))),
            ("b", fmt_num(self.b)),
            ("delta", fmt_num(self.delta)),
            ("constant", fmt_num(self.constant)),
            ("max_states", fmt_num(self.caps.max_states)),
            ("max_feasible", self.caps.max_feasible.to_string()),
        ];
        if let Some(p) = &self.cost_file {
            e.push(("cost_file", p.display().to_string()));
        }
        e.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    pub fn to_text(&self) -> String {
        self.entries().into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

/// Parses `p/q`, an integer, or a decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("bad rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: i64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(Rational::new(digits, 10i64.pow(frac.len() as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for kind in ExperimentKind::ALL {
            let c = ExperimentConfig::defaults(kind);
            assert_eq!(ExperimentConfig::from_text(kind, &c.to_text()).unwrap(), c);
        }
    }

    #[test]
    fn overrides_apply() {
        let c = ExperimentConfig::from_text(ExperimentKind::Conversions, "# c\neta = 0.25\nm = 10\n").unwrap();
        assert_eq!(c.eta, Rational::new(1, 4));
        assert_eq!(c.m, Some(10));
        assert!(ExperimentConfig::from_text(ExperimentKind::Conversions, "bogus = 1").is_err());
        assert!(ExperimentConfig::from_text(ExperimentKind::Conversions, "experiment = certify").is_err());
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("1/3").unwrap(), Rational::new(1, 3));
        assert_eq!(parse_rational("0.5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("1").unwrap(), Rational::new(1, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
