use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::probkit::Domain;

pub type Rational = Rational64;

/// One entry of a cost table. Infinity is its own variant, never a float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cost {
    Exact(Rational),
    Real(f64),
    Infinite,
}

impl Cost {
    pub fn zero() -> Cost {
        Cost::Exact(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Cost::Infinite)
    }

    /// Finite value as a float, or `None` for infinity.
    pub fn value(&self) -> Option<f64> {
        match *self {
            Cost::Exact(r) => Some(r.to_f64().unwrap_or(f64::NAN)),
            Cost::Real(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    /// Float value with infinity mapped to `f64::INFINITY`.
    pub fn as_f64(&self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }

    fn is_zero(&self) -> bool {
        match *self {
            Cost::Exact(r) => r.is_zero(),
            Cost::Real(v) => v == 0.0,
            Cost::Infinite => false,
        }
    }
}

/// A cost function `rho: X x X -> [0, inf]` with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct CostFunction {
    domain: Domain,
    table: Vec<Cost>,
}

impl CostFunction {
    pub fn new(domain: &Domain, table: Vec<Cost>) -> Result<CostFunction> {
        let n = domain.len();
        if table.len() != n * n {
            return Err(Error::InvalidCost(format!("{} entries, expected {}", table.len(), n * n)));
        }
        for (i, c) in table.iter().enumerate() {
            match *c {
                Cost::Exact(r) if r < Rational::zero() => {
                    return Err(Error::InvalidCost(format!("negative entry {r}")))
                }
                Cost::Real(v) if !v.is_finite() || v < 0.0 => {
                    return Err(Error::InvalidCost(format!("entry {v} is not a finite non-negative real")))
                }
                _ => {}
            }
            if i / n == i % n && !c.is_zero() {
                return Err(Error::InvalidCost(format!("diagonal entry {} is not zero", i / n)));
            }
        }
        Ok(CostFunction {
            domain: domain.clone(),
            table,
        })
    }

    pub fn from_fn(domain: &Domain, mut f: impl FnMut(usize, usize) -> Cost) -> Result<CostFunction> {
        let n = domain.len();
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        CostFunction::new(domain, table)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn get(&self, x: usize, y: usize) -> Cost {
        self.table[x * self.domain.len() + y]
    }

    /// True when every finite entry is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.table.iter().all(|c| !matches!(c, Cost::Real(_)))
    }

    /// Finite destinations from `x`, in domain order.
    pub fn reachable(&self, x: usize) -> Vec<usize> {
        (0..self.domain.len()).filter(|&y| self.get(x, y).is_finite()).collect()
    }

    /// Largest number of finite entries in a row.
    pub fn degree(&self) -> usize {
        (0..self.domain.len()).map(|x| self.reachable(x).len()).max().unwrap_or(0)
    }

    /// Largest number of entries `<= b` in a row.
    pub fn budget_degree(&self, b: f64) -> usize {
        let n = self.domain.len();
        (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| self.get(x, y).value().is_some_and(|v| v <= b))
                    .count()
            })
            .max()
            .unwrap_or(0)
    }

    /// Every finite entry multiplied by `factor`.
    pub fn scaled(&self, factor: Rational) -> Result<CostFunction> {
        if factor < Rational::zero() {
            return Err(Error::InvalidParameter("scale factor must be non-negative".into()));
        }
        let table = self
            .table
            .iter()
            .map(|c| match *c {
                Cost::Exact(r) => Cost::Exact(r * factor),
                Cost::Real(v) => Cost::Real(v * factor.to_f64().unwrap_or(f64::NAN)),
                Cost::Infinite => Cost::Infinite,
            })
            .collect();
        CostFunction::new(&self.domain, table)
    }

    /// Tab-separated table: a header of labels, then one row of entries per
    /// point. Entries are decimals, `p/q` fractions when no finite decimal
    /// exists, or `inf`.
    pub fn to_text(&self) -> String {
        let n = self.domain.len();
        let mut out = self.domain.labels().join("\t");
        out.push('\n');
        for x in 0..n {
            let row: Vec<String> = (0..n).map(|y| format_cost(self.get(x, y))).collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<CostFunction> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let labels: Vec<String> = header.split_whitespace().map(str::to_string).collect();
        let domain = Domain::from_labels(labels).map_err(|e| Error::Parse {
            line: hl + 1,
            msg: e.to_string(),
        })?;
        let n = domain.len();
        let mut table = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (ln, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != n {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("expected {n} entries, found {}", fields.len()),
                });
            }
            for f in fields {
                table.push(parse_cost(f).map_err(|msg| Error::Parse { line: ln + 1, msg })?);
            }
            rows += 1;
        }
        if rows != n {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected {n} rows, found {rows}"),
            });
        }
        CostFunction::new(&domain, table)
    }
}

fn format_cost(c: Cost) -> String {
    match c {
        Cost::Infinite => "inf".to_string(),
        Cost::Real(v) => format!("{v:?}"),
        Cost::Exact(r) => exact_decimal(r).unwrap_or_else(|| format!("{}/{}", r.numer(), r.denom())),
    }
}

/// Terminating decimal expansion of `r`, if the denominator allows one.
fn exact_decimal(r: Rational) -> Option<String> {
    let mut d = *r.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return None;
    }
    let digits = twos.max(fives);
    let scale = 10i128.pow(digits);
    let scaled = *r.numer() as i128 * scale / *r.denom() as i128;
    if digits == 0 {
        return Some(scaled.to_string());
    }
    let sign = if scaled < 0 { "-" } else { "" };
    let a = scaled.unsigned_abs();
    let int = a / scale as u128;
    let frac = a % scale as u128;
    Some(format!("{sign}{int}.{frac:0width$}", width = digits as usize))
}

fn parse_cost(s: &str) -> std::result::Result<Cost, String> {
    if s == "inf" {
        return Ok(Cost::Infinite);
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.parse().map_err(|_| format!("bad fraction {s:?}"))?;
        let q: i64 = q.parse().map_err(|_| format!("bad fraction {s:?}"))?;
        if q == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Cost::Exact(Rational::new(p, q)));
    }
    if let Some(r) = parse_decimal(s) {
        return Ok(Cost::Exact(r));
    }
    s.parse::<f64>()
        .map(Cost::Real)
        .map_err(|_| format!("bad entry {s:?}"))
}

/// Plain decimals with at most 15 fractional digits become exact rationals.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits_ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    let (neg, int) = match int.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, int),
    };
    if int.is_empty() || !digits_ok(int) || !digits_ok(frac) || frac.len() > 15 || int.len() > 3 {
        return None;
    }
    let scale = 10i64.pow(frac.len() as u32);
    let num = int.parse::<i64>().ok()? * scale + if frac.is_empty() { 0 } else { frac.parse::<i64>().ok()? };
    Some(Rational::new(if neg { -num } else { num }, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_formatting() {
        assert_eq!(exact_decimal(Rational::new(3, 2)).as_deref(), Some("1.5"));
        assert_eq!(exact_decimal(Rational::new(4, 1)).as_deref(), Some("4"));
        assert_eq!(exact_decimal(Rational::new(1, 40)).as_deref(), Some("0.025"));
        assert_eq!(exact_decimal(Rational::new(10, 3)), None);
        assert_eq!(parse_decimal("0.025"), Some(Rational::new(1, 40)));
    }

    #[test]
    fn rejects_bad_tables() {
        let d = Domain::range(2).unwrap();
        let one = Cost::Exact(Rational::from_integer(1));
        assert!(CostFunction::new(&d, vec![one, one, one, Cost::zero()]).is_err());
        assert!(CostFunction::new(&d, vec![Cost::zero(), Cost::Real(-1.0), one, Cost::zero()]).is_err());
        assert!(CostFunction::new(&d, vec![Cost::zero()]).is_err());
    }
}
