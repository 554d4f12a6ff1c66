//! Dense-tableau two-phase simplex with Bland's anti-cycling rule.
//!
//! Sized for the transportation problems in this crate (a few hundred
//! variables at most). Minimises `c . x` subject to linear rows and `x >= 0`.

use crate::error::{Error, Result};

pub const LP_TOLERANCE: f64 = 1e-9;
const PIVOT_TOLERANCE: f64 = 1e-11;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<f64>,
    rows: Vec<(Vec<f64>, Relation, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
}

impl LinearProgram {
    pub fn minimize(objective: Vec<f64>) -> Self {
        LinearProgram {
            num_vars: objective.len(),
            objective,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, rel: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.num_vars, "row width must match variables");
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau {
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    num_vars: usize,
    width: usize,
    artificial_from: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars;
        let rows: Vec<(Vec<f64>, Relation, f64)> = lp
            .rows
            .iter()
            .map(|(a, rel, b)| {
                if *b < 0.0 {
                    let flipped = match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (a.iter().map(|v| -v).collect(), flipped, -b)
                } else {
                    (a.clone(), *rel, *b)
                }
            })
            .collect();
        let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let artificials = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let artificial_from = n + slacks;
        let width = n + slacks + artificials;
        let mut t = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let (mut s, mut a) = (n, artificial_from);
        for (coeffs, rel, rhs) in rows {
            let mut row = vec![0.0; width + 1];
            row[..n].copy_from_slice(&coeffs);
            row[width] = rhs;
            match rel {
                Relation::Le => {
                    row[s] = 1.0;
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -1.0;
                    s += 1;
                    row[a] = 1.0;
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = 1.0;
                    basis.push(a);
                    a += 1;
                }
            }
            t.push(row);
        }
        Tableau {
            t,
            basis,
            num_vars: n,
            width,
            artificial_from,
        }
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut z = vec![0.0; self.width + 1];
        z[..self.width].copy_from_slice(&cost[..self.width]);
        for (row, &b) in self.t.iter().zip(&self.basis) {
            let cb = cost[b];
            if cb != 0.0 {
                for (zj, rj) in z.iter_mut().zip(row) {
                    *zj -= cb * rj;
                }
            }
        }
        z
    }

    fn pivot(&mut self, z: &mut [f64], r: usize, c: usize) {
        let p = self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f != 0.0 {
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v -= f * pv;
                    }
                    row[c] = 0.0;
                }
            }
        }
        let f = z[c];
        if f != 0.0 {
            for (v, pv) in z.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            z[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule until optimal; columns `>= allowed` never enter.
    fn optimise(&mut self, z: &mut [f64], allowed: usize) -> Result<()> {
        for _ in 0..MAX_PIVOTS {
            let entering = (0..allowed).find(|&j| z[j] < -LP_TOLERANCE);
            let Some(c) = entering else {
                return Ok(());
            };
            let mut best: Option<(f64, usize, usize)> = None;
            for (i, row) in self.t.iter().enumerate() {
                let a = row[c];
                if a > PIVOT_TOLERANCE {
                    let ratio = row[self.width] / a;
                    let better = match best {
                        None => true,
                        Some((br, _, bb)) => {
                            ratio < br - PIVOT_TOLERANCE
                                || (ratio <= br + PIVOT_TOLERANCE && self.basis[i] < bb)
                        }
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let Some((_, r, _)) = best else {
                return Err(Error::Lp("objective is unbounded".into()));
            };
            self.pivot(z, r, c);
        }
        Err(Error::Lp(format!("no convergence after {MAX_PIVOTS} pivots")))
    }

    fn run(mut self, objective: &[f64]) -> Result<LpOutcome> {
        let w = self.width;
        if self.artificial_from < w {
            let mut phase1 = vec![0.0; w];
            for v in phase1[self.artificial_from..].iter_mut() {
                *v = 1.0;
            }
            let mut z = self.reduced_costs(&phase1);
            self.optimise(&mut z, w)?;
            let infeasibility = -z[w];
            let scale = 1.0 + self.t.iter().map(|r| r[w].abs()).fold(0.0, f64::max);
            if infeasibility > LP_TOLERANCE * scale {
                return Ok(LpOutcome::Infeasible);
            }
            self.drive_out_artificials(&mut z);
        }
        let mut cost = vec![0.0; w];
        cost[..self.num_vars].copy_from_slice(objective);
        let mut z = self.reduced_costs(&cost);
        self.optimise(&mut z, self.artificial_from)?;
        let mut x = vec![0.0; self.num_vars];
        for (row, &b) in self.t.iter().zip(&self.basis) {
            if b < self.num_vars {
                x[b] = row[w].max(0.0);
            }
        }
        let value = x.iter().zip(objective).map(|(a, b)| a * b).sum();
        Ok(LpOutcome::Optimal { x, value })
    }

    fn drive_out_artificials(&mut self, z: &mut [f64]) {
        let mut r = 0;
        while r < self.t.len() {
            if self.basis[r] >= self.artificial_from {
                let col = (0..self.artificial_from).find(|&j| self.t[r][j].abs() > 1e-9);
                match col {
                    Some(c) => {
                        self.pivot(z, r, c);
                        r += 1;
                    }
                    None => {
                        self.t.remove(r);
                        self.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(lp: &LinearProgram) -> (Vec<f64>, f64) {
        match lp.solve().unwrap() {
            LpOutcome::Optimal { x, value } => (x, value),
            LpOutcome::Infeasible => panic!("expected optimal"),
        }
    }

    #[test]
    fn small_production_problem() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        let mut lp = LinearProgram::minimize(vec![-3.0, -5.0]);
        lp.add_row(vec![1.0, 0.0], Relation::Le, 4.0);
        lp.add_row(vec![0.0, 2.0], Relation::Le, 12.0);
        lp.add_row(vec![3.0, 2.0], Relation::Le, 18.0);
        let (x, v) = optimal(&lp);
        assert!((v + 36.0).abs() < 1e-9);
        assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + y s.t. x + y = 1, x >= 0.3
        let mut lp = LinearProgram::minimize(vec![1.0, 2.0]);
        lp.add_row(vec![1.0, 1.0], Relation::Eq, 1.0);
        lp.add_row(vec![1.0, 0.0], Relation::Ge, 0.3);
        let (x, v) = optimal(&lp);
        assert!((v - 1.0).abs() < 1e-9);
        assert!((x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasibility() {
        let mut lp = LinearProgram::minimize(vec![1.0]);
        lp.add_row(vec![1.0], Relation::Le, 1.0);
        lp.add_row(vec![1.0], Relation::Ge, 2.0);
        assert_eq!(lp.solve().unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        // 2x2 transport with both marginal families (one row is redundant).
        let mut lp = LinearProgram::minimize(vec![0.0, 1.0, 1.0, 0.0]);
        lp.add_row(vec![1.0, 1.0, 0.0, 0.0], Relation::Eq, 0.5);
        lp.add_row(vec![0.0, 0.0, 1.0, 1.0], Relation::Eq, 0.5);
        lp.add_row(vec![1.0, 0.0, 1.0, 0.0], Relation::Eq, 0.25);
        lp.add_row(vec![0.0, 1.0, 0.0, 1.0], Relation::Eq, 0.75);
        let (_, v) = optimal(&lp);
        assert!((v - 0.25).abs() < 1e-9);
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinearProgram::minimize(vec![-1.0]);
        lp.add_row(vec![1.0], Relation::Ge, 0.0);
        assert!(lp.solve().is_err());
    }
}
