//! Functions sampled on a uniform grid over one period, with CSV round-trip.

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid needs at least two nodes, got {0}")]
    TooFewNodes(usize),
    #[error("period must be positive and finite, got {0}")]
    BadPeriod(f64),
    #[error("non-finite sample at node {0}")]
    NonFiniteSample(usize),
    #[error("csv line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("csv nodes are not uniform: node {index} is t = {found}, expected {expected}")]
    NonUniformNodes { index: usize, found: f64, expected: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Real samples at the `n + 1` uniform nodes `i * period / n` of `[0, period]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    period: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(period: f64, values: Vec<f64>) -> Result<Self, GridError> {
        if !(period.is_finite() && period > 0.0) {
            return Err(GridError::BadPeriod(period));
        }
        if values.len() < 2 {
            return Err(GridError::TooFewNodes(values.len()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(GridError::NonFiniteSample(i));
        }
        Ok(Self { period, values })
    }

    pub fn constant(period: f64, n: usize, value: f64) -> Result<Self, GridError> {
        Self::new(period, vec![value; n + 1])
    }

    pub fn from_fn(period: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self, GridError> {
        let values = (0..=n).map(|i| f(i as f64 * period / n as f64)).collect();
        Self::new(period, values)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Number of subintervals (one less than the number of nodes).
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        self.period / self.n() as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.period / self.n() as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Piecewise-linear evaluation with periodic wrap of the argument.
    pub fn eval_linear(&self, t: f64) -> f64 {
        let n = self.n() as f64;
        let mut u = (t / self.period).rem_euclid(1.0) * n;
        if !u.is_finite() {
            u = 0.0;
        }
        let i = (u.floor() as usize).min(self.n() - 1);
        let frac = u - i as f64;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }

    /// Two-column CSV `t,value` with 17 significant digits (exact f64 round-trip).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{:.16e},{:.16e}\n", self.node(i), v));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), GridError> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    /// Parses `t,value` rows (optional header). Nodes must form a uniform grid
    /// starting at 0 within 1e-9 relative to the period, or the load is rejected.
    pub fn from_csv(text: &str) -> Result<Self, GridError> {
        let mut nodes = Vec::new();
        let mut values = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',').map(str::trim);
            let (t_field, v_field) = match (fields.next(), fields.next(), fields.next()) {
                (Some(t), Some(v), None) => (t, v),
                _ => {
                    return Err(GridError::Csv {
                        line: lineno + 1,
                        message: format!("expected two comma-separated fields, got `{line}`"),
                    })
                }
            };
            if nodes.is_empty() && values.is_empty() && t_field.parse::<f64>().is_err() {
                continue; // header row
            }
            let parse = |field: &str| {
                field.parse::<f64>().map_err(|e| GridError::Csv {
                    line: lineno + 1,
                    message: format!("bad float `{field}`: {e}"),
                })
            };
            nodes.push(parse(t_field)?);
            values.push(parse(v_field)?);
        }
        if nodes.len() < 2 {
            return Err(GridError::TooFewNodes(nodes.len()));
        }
        let period = *nodes.last().unwrap();
        if !(period.is_finite() && period > 0.0) {
            return Err(GridError::BadPeriod(period));
        }
        let n = nodes.len() - 1;
        for (i, &t) in nodes.iter().enumerate() {
            let expected = i as f64 * period / n as f64;
            if (t - expected).abs() > 1e-9 * period {
                return Err(GridError::NonUniformNodes { index: i, found: t, expected });
            }
        }
        Self::new(period, values)
    }

    pub fn read_csv(path: &Path) -> Result<Self, GridError> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}
