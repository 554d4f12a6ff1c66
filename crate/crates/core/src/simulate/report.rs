use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numfmt::{fmt_num, parse_num};
use crate::probkit::{Dist, Domain};

pub const SIMULATION_SCHEMA: &str = "advlab-simulation/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimulationMethod {
    /// Core chosen by the correlation scan, goals rounded per core.
    Grouped,
    /// Each corrupted sample's empirical law rounded directly.
    Empirical,
}

impl fmt::Display for SimulationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimulationMethod::Grouped => "grouped",
            SimulationMethod::Empirical => "empirical",
        })
    }
}

impl FromStr for SimulationMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grouped" => Ok(SimulationMethod::Grouped),
            "empirical" => Ok(SimulationMethod::Empirical),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown method {s:?}"),
            }),
        }
    }
}

/// Outcome of replacing an adaptive sample law by a mixture of i.i.d. laws.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationReport {
    pub method: SimulationMethod,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub k_max: usize,
    pub degree: usize,
    /// Correlation of the sample given a core of size `k`, for `k = 0..=k_max`.
    pub scan: Vec<f64>,
    pub grouping_error: f64,
    pub grouping_bound: f64,
    pub rounding_error: f64,
    pub rounding_error_exact: f64,
    pub rounding_bound: f64,
    /// Total variation between the subsampled adaptive law and the mixture.
    pub total_error: f64,
    pub mixture: Vec<(f64, Dist)>,
}

impl SimulationReport {
    /// `total <= grouping + rounding`, up to `tol`.
    pub fn triangle_holds(&self, tol: f64) -> bool {
        self.total_error <= self.grouping_error + self.rounding_error + tol
    }

    /// Line-oriented `key = value` text; the mixture is listed as
    /// `mixture.<i>.weight` and `mixture.<i>.dist` entries.
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("schema = {SIMULATION_SCHEMA}"),
            format!("method = {}", self.method),
            format!("n = {}", self.n),
            format!("m = {}", self.m),
            format!("k = {}", self.k),
            format!("k_max = {}", self.k_max),
            format!("degree = {}", self.degree),
            format!("scan = {}", self.scan.iter().map(|v| fmt_num(*v)).collect::<Vec<_>>().join(" ")),
            format!("grouping_error = {}", fmt_num(self.grouping_error)),
            format!("grouping_bound = {}", fmt_num(self.grouping_bound)),
            format!("rounding_error = {}", fmt_num(self.rounding_error)),
            format!("rounding_error_exact = {}", fmt_num(self.rounding_error_exact)),
            format!("rounding_bound = {}", fmt_num(self.rounding_bound)),
            format!("total_error = {}", fmt_num(self.total_error)),
        ];
        if let Some((_, d)) = self.mixture.first() {
            lines.push(format!("domain = {}", d.domain().labels().join(" ")));
        }
        lines.push(format!("mixture.len = {}", self.mixture.len()));
        for (i, (w, d)) in self.mixture.iter().enumerate() {
            lines.push(format!("mixture.{i}.weight = {}", fmt_num(*w)));
            let probs: Vec<String> = d.probs().iter().map(|v| fmt_num(*v)).collect();
            lines.push(format!("mixture.{i}.dist = {}", probs.join(" ")));
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }

    pub fn from_text(text: &str) -> Result<SimulationReport> {
        let mut kv = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(Error::Parse {
                line: i + 1,
                msg: "expected key = value".into(),
            })?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| {
            kv.get(k).cloned().ok_or(Error::Parse {
                line: 0,
                msg: format!("missing key {k:?}"),
            })
        };
        let int = |k: &str| -> Result<usize> {
            get(k)?.parse().map_err(|_| Error::Parse {
                line: 0,
                msg: format!("{k} is not an integer"),
            })
        };
        let num = |k: &str| -> Result<f64> {
            parse_num(&get(k)?).ok_or(Error::Parse {
                line: 0,
                msg: format!("{k} is not a number"),
            })
        };
        let nums = |s: &str| -> Result<Vec<f64>> {
            s.split_whitespace()
                .map(|t| {
                    parse_num(t).ok_or(Error::Parse {
                        line: 0,
                        msg: format!("bad number {t:?}"),
                    })
                })
                .collect()
        };
        if get("schema")? != SIMULATION_SCHEMA {
            return Err(Error::Parse {
                line: 1,
                msg: "unsupported schema".into(),
            });
        }
        let len = int("mixture.len")?;
        let mut mixture = Vec::with_capacity(len);
        if len > 0 {
            let domain = Domain::from_labels(get("domain")?.split_whitespace().map(str::to_string).collect())?;
            for i in 0..len {
                let w = num(&format!("mixture.{i}.weight"))?;
                let p = nums(&get(&format!("mixture.{i}.dist"))?)?;
                mixture.push((w, Dist::from_weights(&domain, p)?));
            }
        }
        Ok(SimulationReport {
            method: get("method")?.parse()?,
            n: int("n")?,
            m: int("m")?,
            k: int("k")?,
            k_max: int("k_max")?,
            degree: int("degree")?,
            scan: nums(&get("scan")?)?,
            grouping_error: num("grouping_error")?,
            grouping_bound: num("grouping_bound")?,
            rounding_error: num("rounding_error")?,
            rounding_error_exact: num("rounding_error_exact")?,
            rounding_bound: num("rounding_bound")?,
            total_error: num("total_error")?,
            mixture,
        })
    }
}
