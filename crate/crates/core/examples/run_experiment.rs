// Running a configured experiment and reading its report.

use advlab::lab::{run, ExperimentConfig, ExperimentKind};

fn main() -> advlab::Result<()> {
    let mut cfg = ExperimentConfig::defaults(ExperimentKind::PartialAdaptive);
    cfg.apply_text("trials = 2000\nseed = 3\n")?;
    let report = run(&cfg)?;
    for c in &report.checks {
        println!("{}", c.summary());
    }
    println!("all pass: {}", report.all_pass());
    Ok(())
}
