//! Experiment reports: checked inequalities, named values, and a plain
//! text file that is byte-identical across runs with the same seed.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::numfmt::fmt_num;

pub const REPORT_SCHEMA: &str = "advlab-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

/// `measured <= bound + slack` or `measured >= bound - slack`.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub relation: Relation,
    pub bound: f64,
    pub slack: f64,
    /// Standard error when `measured` is a Monte Carlo estimate.
    pub std_err: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn le(name: impl Into<String>, measured: f64, bound: f64, slack: f64) -> Check {
        Check::new(name, measured, Relation::Le, bound, slack, None)
    }

    pub fn ge(name: impl Into<String>, measured: f64, bound: f64, slack: f64) -> Check {
        Check::new(name, measured, Relation::Ge, bound, slack, None)
    }

    /// A Monte Carlo check with slack of `sigmas` standard errors.
    pub fn mc(name: impl Into<String>, measured: f64, relation: Relation, bound: f64, std_err: f64, sigmas: f64) -> Check {
        Check::new(name, measured, relation, bound, sigmas * std_err, Some(std_err))
    }

    fn new(
        name: impl Into<String>,
        measured: f64,
        relation: Relation,
        bound: f64,
        slack: f64,
        std_err: Option<f64>,
    ) -> Check {
        let pass = match relation {
            Relation::Le => measured <= bound + slack,
            Relation::Ge => measured >= bound - slack,
        };
        Check {
            name: name.into(),
            measured,
            relation,
            bound,
            slack,
            std_err,
            pass,
        }
    }

    /// One line: `PASS name: measured <= bound (slack s)`.
    pub fn summary(&self) -> String {
        format!(
            "{} {}: {} {} {} (slack {})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            fmt_num(self.measured),
            self.relation,
            fmt_num(self.bound),
            fmt_num(self.slack)
        )
    }
}

/// Everything an experiment measured.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub experiment: String,
    pub config: Vec<(String, String)>,
    /// Parameters the experiment chose from data.
    pub calibrated: Vec<(String, String)>,
    pub values: Vec<(String, f64)>,
    pub checks: Vec<Check>,
    /// Kept out of the report file so reruns compare equal.
    pub wall_clock_secs: f64,
}

impl Report {
    pub fn new(experiment: impl Into<String>, config: Vec<(String, String)>) -> Report {
        Report {
            experiment: experiment.into(),
            config,
            calibrated: Vec::new(),
            values: Vec::new(),
            checks: Vec::new(),
            wall_clock_secs: 0.0,
        }
    }

    pub fn value(&mut self, name: impl Into<String>, v: f64) {
        self.values.push((name.into(), v));
    }

    pub fn calibrate(&mut self, name: impl Into<String>, v: impl fmt::Display) {
        self.calibrated.push((name.into(), v.to_string()));
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn find_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: &str| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(v);
            s.push('\n');
        };
        line("schema", REPORT_SCHEMA);
        line("version", env!("CARGO_PKG_VERSION"));
        line("experiment", &self.experiment);
        for (k, v) in &self.config {
            line(&format!("config.{k}"), v);
        }
        for (k, v) in &self.calibrated {
            line(&format!("calibrated.{k}"), v);
        }
        for (k, v) in &self.values {
            line(&format!("value.{k}"), &fmt_num(*v));
        }
        for (i, c) in self.checks.iter().enumerate() {
            line(&format!("check.{i}.name"), &c.name);
            line(&format!("check.{i}.measured"), &fmt_num(c.measured));
            line(&format!("check.{i}.relation"), &c.relation.to_string());
            line(&format!("check.{i}.bound"), &fmt_num(c.bound));
            line(&format!("check.{i}.slack"), &fmt_num(c.slack));
            if let Some(se) = c.std_err {
                line(&format!("check.{i}.std_err"), &fmt_num(se));
            }
            line(&format!("check.{i}.pass"), if c.pass { "true" } else { "false" });
        }
        line("all_pass", if self.all_pass() { "true" } else { "false" });
        s
    }

    /// Event log lines: start, one per check, and the wall clock.
    pub fn event_log(&self, seed: u64) -> String {
        let mut s = format!("event=start experiment={} seed={seed}\n", self.experiment);
        for c in &self.checks {
            s.push_str(&format!("event=check name={} pass={}\n", c.name, c.pass));
        }
        s.push_str(&format!(
            "event=done all_pass={} wall_clock_s={:.3}\n",
            self.all_pass(),
            self.wall_clock_secs
        ));
        s
    }

    /// Writes the report to `path` and the event log to `path` with `.log`
    /// appended.
    pub fn write(&self, path: &Path, seed: u64) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
        fs::write(path, self.to_text()).map_err(io)?;
        let mut log_path = path.as_os_str().to_owned();
        log_path.push(".log");
        let mut log = fs::File::create(&log_path).map_err(io)?;
        log.write_all(self.event_log(seed).as_bytes()).map_err(io)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_respect_slack() {
        assert!(Check::le("a", 1.05, 1.0, 0.1).pass);
        assert!(!Check::le("a", 1.2, 1.0, 0.1).pass);
        assert!(Check::ge("a", 0.95, 1.0, 0.1).pass);
        assert!(!Check::mc("a", 0.5, Relation::Ge, 1.0, 0.1, 3.0).pass);
    }

    #[test]
    fn text_has_no_wall_clock() {
        let mut r = Report::new("x", vec![("n".into(), "2".into())]);
        r.value("v", 1.0 / 3.0);
        r.check(Check::le("c", 0.0, 1.0, 0.0));
        let a = r.to_text();
        r.wall_clock_secs = 12.0;
        assert_eq!(a, r.to_text());
        assert!(a.contains("value.v = 0.333333333333\n"));
        assert!(a.ends_with("all_pass = true\n"));
        assert!(r.event_log(3).contains("wall_clock_s=12.000"));
    }
}
