//! Line-oriented `key = value` problem configs with `[problem]`, `[model]`,
//! `[certify]` and `[solve]` sections. Coefficients are either a bare number
//! or `csv:relative/path.csv`, resolved against the config file's directory
//! at parse time. `dump` emits a canonical form that re-parses to an equal
//! `ConfigFile`.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::grid::{GridError, GridFunction};
use crate::model::{CoefficientFunction, ModelError, ProblemSpec, SingularModelSpec};
use crate::solver::SolverMethod;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("config is missing required key {section}.{key}")]
    MissingKey { section: &'static str, key: &'static str },
    #[error("config file error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn parse_err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Parse { line, message: message.into() }
}

/// A coefficient as written in a config: a constant, or a CSV table path.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffSource {
    Constant(f64),
    CsvPath(PathBuf),
}

impl CoeffSource {
    fn parse(value: &str, base_dir: &Path, line: usize) -> Result<Self, ConfigError> {
        if let Some(rest) = value.strip_prefix("csv:") {
            let rest = rest.trim();
            if rest.is_empty() {
                return Err(parse_err(line, "empty path after csv:"));
            }
            Ok(CoeffSource::CsvPath(base_dir.join(rest)))
        } else {
            let v = value
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("expected a number or csv:PATH, got '{value}'")))?;
            Ok(CoeffSource::Constant(v))
        }
    }

    pub fn resolve(&self) -> Result<CoefficientFunction, ConfigError> {
        match self {
            CoeffSource::Constant(v) => Ok(CoefficientFunction::Constant(*v)),
            CoeffSource::CsvPath(path) => {
                let table = GridFunction::read_csv(path)?;
                Ok(CoefficientFunction::table(table)?)
            }
        }
    }

    fn dump(&self) -> String {
        match self {
            CoeffSource::Constant(v) => format!("{v}"),
            CoeffSource::CsvPath(path) => format!("csv:{}", path.display()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProblemSection {
    pub a: Option<f64>,
    pub period: Option<f64>,
    pub r: Option<CoeffSource>,
    pub s: Option<CoeffSource>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
}

impl ProblemSection {
    pub fn is_empty(&self) -> bool {
        self.a.is_none()
            && self.period.is_none()
            && self.r.is_none()
            && self.s.is_none()
            && self.alpha.is_none()
            && self.beta.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModelSection {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub e: Option<CoeffSource>,
    pub period: Option<f64>,
}

impl ModelSection {
    pub fn is_empty(&self) -> bool {
        self.a.is_none()
            && self.b.is_none()
            && self.c.is_none()
            && self.e.is_none()
            && self.period.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CertifySection {
    pub m: Option<f64>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveSection {
    pub method: Option<SolverMethod>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub max_iterations: Option<usize>,
    pub guess_x: Option<f64>,
    pub guess_v: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub problem: ProblemSection,
    pub model: ModelSection,
    pub certify: CertifySection,
    pub solve: SolveSection,
}

#[derive(Clone, Copy)]
enum Section {
    Problem,
    Model,
    Certify,
    Solve,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse_str(&text, base)
    }

    pub fn parse_str(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let mut cfg = ConfigFile::default();
        let mut section: Option<Section> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if let Some(inner) = trimmed.strip_prefix('[') {
                let Some(name) = inner.strip_suffix(']') else {
                    return Err(parse_err(line, format!("unterminated section header '{trimmed}'")));
                };
                section = Some(match name.trim() {
                    "problem" => Section::Problem,
                    "model" => Section::Model,
                    "certify" => Section::Certify,
                    "solve" => Section::Solve,
                    other => return Err(parse_err(line, format!("unknown section '{other}'"))),
                });
                continue;
            }
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(parse_err(line, format!("expected 'key = value', got '{trimmed}'")));
            };
            let key = key.trim();
            let value = value.trim();
            let Some(section) = section else {
                return Err(parse_err(line, format!("key '{key}' appears before any [section]")));
            };
            cfg.set(section, key, value, base_dir, line)?;
        }
        Ok(cfg)
    }

    fn set(
        &mut self,
        section: Section,
        key: &str,
        value: &str,
        base_dir: &Path,
        line: usize,
    ) -> Result<(), ConfigError> {
        fn float(value: &str, key: &str, line: usize) -> Result<f64, ConfigError> {
            value
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("key '{key}' expects a number, got '{value}'")))
        }
        fn count(value: &str, key: &str, line: usize) -> Result<usize, ConfigError> {
            value.parse::<usize>().map_err(|_| {
                parse_err(line, format!("key '{key}' expects a positive integer, got '{value}'"))
            })
        }
        fn put<T>(slot: &mut Option<T>, value: T, key: &str, line: usize) -> Result<(), ConfigError> {
            if slot.is_some() {
                return Err(parse_err(line, format!("duplicate key '{key}'")));
            }
            *slot = Some(value);
            Ok(())
        }
        match section {
            Section::Problem => match key {
                "a" => put(&mut self.problem.a, float(value, key, line)?, key, line),
                "period" => put(&mut self.problem.period, float(value, key, line)?, key, line),
                "r" => put(&mut self.problem.r, CoeffSource::parse(value, base_dir, line)?, key, line),
                "s" => put(&mut self.problem.s, CoeffSource::parse(value, base_dir, line)?, key, line),
                "alpha" => put(&mut self.problem.alpha, float(value, key, line)?, key, line),
                "beta" => put(&mut self.problem.beta, float(value, key, line)?, key, line),
                other => Err(parse_err(line, format!("unknown key '{other}' in [problem]"))),
            },
            Section::Model => match key {
                "a" => put(&mut self.model.a, float(value, key, line)?, key, line),
                "b" => put(&mut self.model.b, float(value, key, line)?, key, line),
                "c" => put(&mut self.model.c, float(value, key, line)?, key, line),
                "e" => put(&mut self.model.e, CoeffSource::parse(value, base_dir, line)?, key, line),
                "period" => put(&mut self.model.period, float(value, key, line)?, key, line),
                other => Err(parse_err(line, format!("unknown key '{other}' in [model]"))),
            },
            Section::Certify => match key {
                "m" => put(&mut self.certify.m, float(value, key, line)?, key, line),
                "r1" => put(&mut self.certify.r1, float(value, key, line)?, key, line),
                "r2" => put(&mut self.certify.r2, float(value, key, line)?, key, line),
                "grid" => put(&mut self.certify.grid, count(value, key, line)?, key, line),
                other => Err(parse_err(line, format!("unknown key '{other}' in [certify]"))),
            },
            Section::Solve => match key {
                "method" => {
                    let method = SolverMethod::from_str(value).map_err(|e| parse_err(line, e))?;
                    put(&mut self.solve.method, method, key, line)
                }
                "grid" => put(&mut self.solve.grid, count(value, key, line)?, key, line),
                "tol" => put(&mut self.solve.tol, float(value, key, line)?, key, line),
                "max_iterations" => {
                    put(&mut self.solve.max_iterations, count(value, key, line)?, key, line)
                }
                "guess_x" => put(&mut self.solve.guess_x, float(value, key, line)?, key, line),
                "guess_v" => put(&mut self.solve.guess_v, float(value, key, line)?, key, line),
                other => Err(parse_err(line, format!("unknown key '{other}' in [solve]"))),
            },
        }
    }

    /// Canonical text form: fixed section and key order, only keys that are
    /// set, shortest round-trip float formatting.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut section = |name: &str, pairs: Vec<(&str, Option<String>)>| {
            if pairs.iter().all(|(_, v)| v.is_none()) {
                return;
            }
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("[{name}]\n"));
            for (key, value) in pairs {
                if let Some(value) = value {
                    out.push_str(&format!("{key} = {value}\n"));
                }
            }
        };
        let f = |v: Option<f64>| v.map(|v| format!("{v}"));
        let u = |v: Option<usize>| v.map(|v| format!("{v}"));
        section(
            "problem",
            vec![
                ("a", f(self.problem.a)),
                ("period", f(self.problem.period)),
                ("r", self.problem.r.as_ref().map(CoeffSource::dump)),
                ("s", self.problem.s.as_ref().map(CoeffSource::dump)),
                ("alpha", f(self.problem.alpha)),
                ("beta", f(self.problem.beta)),
            ],
        );
        section(
            "model",
            vec![
                ("a", f(self.model.a)),
                ("b", f(self.model.b)),
                ("c", f(self.model.c)),
                ("e", self.model.e.as_ref().map(CoeffSource::dump)),
                ("period", f(self.model.period)),
            ],
        );
        section(
            "certify",
            vec![
                ("m", f(self.certify.m)),
                ("r1", f(self.certify.r1)),
                ("r2", f(self.certify.r2)),
                ("grid", u(self.certify.grid)),
            ],
        );
        section(
            "solve",
            vec![
                ("method", self.solve.method.map(|m| m.to_string())),
                ("grid", u(self.solve.grid)),
                ("tol", f(self.solve.tol)),
                ("max_iterations", u(self.solve.max_iterations)),
                ("guess_x", f(self.solve.guess_x)),
                ("guess_v", f(self.solve.guess_v)),
            ],
        );
        out
    }

    pub fn has_problem(&self) -> bool {
        !self.problem.is_empty()
    }

    pub fn has_model(&self) -> bool {
        !self.model.is_empty()
    }

    pub fn build_problem(&self) -> Result<ProblemSpec, ConfigError> {
        fn need<T: Copy>(
            v: Option<T>,
            section: &'static str,
            key: &'static str,
        ) -> Result<T, ConfigError> {
            v.ok_or(ConfigError::MissingKey { section, key })
        }
        let p = &self.problem;
        let r = p
            .r
            .as_ref()
            .ok_or(ConfigError::MissingKey { section: "problem", key: "r" })?
            .resolve()?;
        let s = p
            .s
            .as_ref()
            .ok_or(ConfigError::MissingKey { section: "problem", key: "s" })?
            .resolve()?;
        Ok(ProblemSpec::new(
            need(p.a, "problem", "a")?,
            need(p.period, "problem", "period")?,
            r,
            s,
            need(p.alpha, "problem", "alpha")?,
            need(p.beta, "problem", "beta")?,
        )?)
    }

    pub fn build_model(&self) -> Result<SingularModelSpec, ConfigError> {
        fn need<T: Copy>(
            v: Option<T>,
            section: &'static str,
            key: &'static str,
        ) -> Result<T, ConfigError> {
            v.ok_or(ConfigError::MissingKey { section, key })
        }
        let m = &self.model;
        let e = m
            .e
            .as_ref()
            .ok_or(ConfigError::MissingKey { section: "model", key: "e" })?
            .resolve()?;
        Ok(SingularModelSpec::new(
            need(m.a, "model", "a")?,
            need(m.b, "model", "b")?,
            need(m.c, "model", "c")?,
            e,
            need(m.period, "model", "period")?,
        )?)
    }
}
