//! Periodic solvers for the two-power problem: single shooting with a damped
//! Newton iteration on the period map, and Picard iteration on the integral
//! fixed-point form `x = G_m[f(., x) + m^2 x]`.
//!
//! Both report `ode_residual` the same way: the solution is recomputed on a
//! grid with twice as many subintervals and the largest disagreement at the
//! shared nodes is returned, so the number estimates the discretization
//! error without trusting either run alone.

use thiserror::Error;

use crate::certify::{Check, Slab};
use crate::grid::{GridError, GridFunction};
use crate::model::{ModelError, ProblemSpec, ShiftedProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMethod {
    Shooting,
    Picard,
}

impl std::fmt::Display for SolverMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverMethod::Shooting => "shooting",
            SolverMethod::Picard => "picard",
        })
    }
}

impl std::str::FromStr for SolverMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "shooting" => Ok(SolverMethod::Shooting),
            "picard" => Ok(SolverMethod::Picard),
            other => Err(format!("unknown solver method '{other}' (expected shooting or picard)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Subintervals of the working grid.
    pub grid_size: usize,
    /// Convergence threshold: period-map defect for shooting, largest sample
    /// update for Picard.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub method: SolverMethod,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_size: 2048,
            tolerance: 1e-10,
            max_iterations: 1000,
            method: SolverMethod::Shooting,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.grid_size < 16 {
            return Err(SolverError::BadConfig(format!(
                "grid must have at least 16 subintervals (got {})",
                self.grid_size
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(SolverError::BadConfig(format!(
                "tolerance must be positive (got {})",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(SolverError::BadConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// A converged periodic solution with its quality indicators.
#[derive(Debug, Clone)]
pub struct PeriodicSolution {
    pub x: GridFunction,
    pub xprime: GridFunction,
    /// Largest disagreement against a re-solve on a doubled grid.
    pub ode_residual: f64,
    /// Shooting: final period-map defect `|x(T)-x(0)| + |x'(T)-x'(0)|`.
    /// Picard: exactly zero by construction of the integral map.
    pub periodicity_defect: f64,
    /// `(min, max)` of the solution samples.
    pub bounds: (f64, f64),
    pub iterations: usize,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("the closed-form constant solution needs constant coefficients")]
    NotAutonomous,
    #[error("the closed-form constant solution needs r > 0 and s > 0 (got r = {r}, s = {s})")]
    NonPositiveCoefficient { r: f64, s: f64 },
    #[error("no convergence after {steps} iterations (last defect {last:e})")]
    NonConvergence { last: f64, steps: usize },
    #[error("shooting iteration diverged; defect trail {trail:?}")]
    NewtonDiverged { trail: Vec<f64> },
    #[error("trajectory left the admissible region (negative or non-finite state)")]
    StateEscapedPositivity,
    #[error("invalid initial guess: {0}")]
    InvalidInitialGuess(String),
    #[error("invalid solver configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// The constant positive solution of an autonomous problem with positive
/// coefficients: `x = (r/s)^(1/(beta-alpha))`, where the two powers balance.
pub fn constant_solution(p: &ProblemSpec) -> Result<f64, SolverError> {
    if !p.is_autonomous() {
        return Err(SolverError::NotAutonomous);
    }
    let (r, _) = p.r_bounds();
    let (s, _) = p.s_bounds();
    if !(r > 0.0 && s > 0.0) {
        return Err(SolverError::NonPositiveCoefficient { r, s });
    }
    Ok(((r.ln() - s.ln()) / (p.beta - p.alpha)).exp())
}

/// Integrates `x'' + a x' = f(t, x)` over one period with classical
/// fourth-order Runge-Kutta, bailing out if any stage state leaves the
/// positive half-line or stops being finite.
fn integrate_period(
    p: &ProblemSpec,
    xi: f64,
    eta: f64,
    n: usize,
) -> Result<(Vec<f64>, Vec<f64>), SolverError> {
    let h = p.period / n as f64;
    let acc = |t: f64, x: f64, v: f64| -> Result<f64, SolverError> {
        if x < 0.0 {
            return Err(SolverError::StateEscapedPositivity);
        }
        Ok(p.f_unchecked(t, x) - p.a * v)
    };
    let mut xs = Vec::with_capacity(n + 1);
    let mut vs = Vec::with_capacity(n + 1);
    let (mut x, mut v) = (xi, eta);
    xs.push(x);
    vs.push(v);
    for i in 0..n {
        let t = i as f64 * h;
        let k1x = v;
        let k1v = acc(t, x, v)?;
        let k2x = v + 0.5 * h * k1v;
        let k2v = acc(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v)?;
        let k3x = v + 0.5 * h * k2v;
        let k3v = acc(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v)?;
        let k4x = v + h * k3v;
        let k4v = acc(t + h, x + h * k3x, v + h * k3v)?;
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if !(x.is_finite() && v.is_finite()) {
            return Err(SolverError::StateEscapedPositivity);
        }
        xs.push(x);
        vs.push(v);
    }
    Ok((xs, vs))
}

/// Single shooting: Newton on the period-map defect
/// `(x(T) - x(0), x'(T) - x'(0))` with a finite-difference Jacobian and step
/// halving to keep trial starts integrable.
pub fn shooting_solve(
    p: &ProblemSpec,
    guess: (f64, f64),
    cfg: &SolverConfig,
) -> Result<PeriodicSolution, SolverError> {
    cfg.validate()?;
    let (mut xi, mut eta) = guess;
    if !(xi.is_finite() && eta.is_finite() && xi > 0.0) {
        return Err(SolverError::InvalidInitialGuess(format!(
            "shooting needs a finite start with x(0) > 0 (got x(0) = {xi}, x'(0) = {eta})"
        )));
    }
    let n = cfg.grid_size;
    let mut trail = Vec::new();
    for iteration in 1..=cfg.max_iterations {
        let (xs, vs) = integrate_period(p, xi, eta, n)?;
        let phi = (xs[n] - xi, vs[n] - eta);
        let norm = phi.0.abs() + phi.1.abs();
        trail.push(norm);
        if norm <= cfg.tolerance {
            return finish_shooting(p, xi, eta, n, norm, iteration);
        }
        let ex = 1e-6 * xi.abs().max(1.0);
        let ev = 1e-6 * eta.abs().max(1.0);
        let (xs1, vs1) = integrate_period(p, xi + ex, eta, n)?;
        let (xs2, vs2) = integrate_period(p, xi, eta + ev, n)?;
        let j00 = ((xs1[n] - (xi + ex)) - phi.0) / ex;
        let j10 = ((vs1[n] - eta) - phi.1) / ex;
        let j01 = ((xs2[n] - xi) - phi.0) / ev;
        let j11 = ((vs2[n] - (eta + ev)) - phi.1) / ev;
        let det = j00 * j11 - j01 * j10;
        let det_scale = (j00.abs() * j11.abs() + j01.abs() * j10.abs()).max(f64::MIN_POSITIVE);
        if !det.is_finite() || det.abs() < 1e-14 * det_scale {
            return Err(SolverError::NewtonDiverged { trail });
        }
        let dx = -(phi.0 * j11 - phi.1 * j01) / det;
        let dv = -(j00 * phi.1 - j10 * phi.0) / det;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let trial_xi = xi + lambda * dx;
            let trial_eta = eta + lambda * dv;
            if trial_xi > 0.0 && integrate_period(p, trial_xi, trial_eta, n).is_ok() {
                xi = trial_xi;
                eta = trial_eta;
                accepted = true;
                break;
            }
            lambda /= 2.0;
        }
        if !accepted {
            return Err(SolverError::StateEscapedPositivity);
        }
    }
    let last = trail.last().copied().unwrap_or(f64::INFINITY);
    Err(SolverError::NonConvergence { last, steps: cfg.max_iterations })
}

fn finish_shooting(
    p: &ProblemSpec,
    xi: f64,
    eta: f64,
    n: usize,
    defect: f64,
    iterations: usize,
) -> Result<PeriodicSolution, SolverError> {
    let (xs, vs) = integrate_period(p, xi, eta, n)?;
    let (fine, _) = integrate_period(p, xi, eta, 2 * n)?;
    let mut residual = 0.0f64;
    for (i, &coarse) in xs.iter().enumerate() {
        residual = residual.max((coarse - fine[2 * i]).abs());
    }
    let x = GridFunction::new(p.period, xs)?;
    let xprime = GridFunction::new(p.period, vs)?;
    Ok(PeriodicSolution {
        bounds: (x.min(), x.max()),
        x,
        xprime,
        ode_residual: residual,
        periodicity_defect: defect,
        iterations,
    })
}

/// Picard iteration on `x -> G_m[f(., x) + m^2 x]`, optionally projected
/// into a localization slab after every pass. Converges exactly when the
/// shifted map contracts; an equilibrium that repels the map surfaces as
/// [`SolverError::NonConvergence`] even when a solution exists.
pub fn picard_solve(
    sp: &ShiftedProblem,
    x0: &GridFunction,
    cfg: &SolverConfig,
    slab: Option<&Slab>,
) -> Result<PeriodicSolution, SolverError> {
    cfg.validate()?;
    let (x, iterations) = picard_core(sp, x0, cfg, slab, cfg.grid_size)?;
    let (fine, _) = picard_core(sp, &x, cfg, slab, 2 * cfg.grid_size)?;
    let mut residual = 0.0f64;
    for (i, &coarse) in x.values().iter().enumerate() {
        residual = residual.max((coarse - fine.values()[2 * i]).abs());
    }
    let xprime = periodic_derivative(&x);
    let defect = (x.values()[x.n()] - x.values()[0]).abs();
    Ok(PeriodicSolution {
        bounds: (x.min(), x.max()),
        x,
        xprime,
        ode_residual: residual,
        periodicity_defect: defect,
        iterations,
    })
}

fn picard_core(
    sp: &ShiftedProblem,
    seed: &GridFunction,
    cfg: &SolverConfig,
    slab: Option<&Slab>,
    n: usize,
) -> Result<(GridFunction, usize), SolverError> {
    let period = sp.problem.period;
    let mut x = GridFunction::from_fn(period, n, |t| seed.eval_linear(t))?;
    match slab {
        Some(slab) => {
            let lo = slab.x_lo();
            for &v in x.values() {
                if !(v >= lo * (1.0 - 1e-12) && v <= slab.r2 * (1.0 + 1e-12)) {
                    return Err(SolverError::InvalidInitialGuess(format!(
                        "seed sample {v} outside the slab [{lo}, {}]",
                        slab.r2
                    )));
                }
            }
            for v in x.values_mut() {
                *v = v.clamp(lo, slab.r2);
            }
        }
        None => {
            if let Some(&v) = x.values().iter().find(|v| !(**v > 0.0)) {
                return Err(SolverError::InvalidInitialGuess(format!(
                    "seed sample {v} is not strictly positive"
                )));
            }
        }
    }
    let mut last = f64::INFINITY;
    for iteration in 1..=cfg.max_iterations {
        let fm: Vec<f64> = x
            .values()
            .iter()
            .enumerate()
            .map(|(i, &v)| sp.fm_unchecked(x.node(i), v))
            .collect();
        if fm.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::NonConvergence { last, steps: iteration });
        }
        let mut next = sp.kernel.apply(&GridFunction::new(period, fm)?);
        if let Some(slab) = slab {
            for v in next.values_mut() {
                *v = v.clamp(slab.x_lo(), slab.r2);
            }
        }
        let step = x
            .values()
            .iter()
            .zip(next.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if !step.is_finite() {
            return Err(SolverError::NonConvergence { last: step, steps: iteration });
        }
        x = next;
        if step <= cfg.tolerance {
            return Ok((x, iteration));
        }
        last = step;
    }
    Err(SolverError::NonConvergence { last, steps: cfg.max_iterations })
}

/// One pass of the integral fixed-point map `x -> G_m[f(., x) + m^2 x]`.
pub fn fixed_point_map(sp: &ShiftedProblem, x: &GridFunction) -> Result<GridFunction, SolverError> {
    if let Some(&v) = x.values().iter().find(|v| **v < 0.0) {
        return Err(SolverError::Model(ModelError::NegativeState { x: v }));
    }
    let fm: Vec<f64> = x
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| sp.fm_unchecked(x.node(i), v))
        .collect();
    Ok(sp.kernel.apply(&GridFunction::new(x.period(), fm)?))
}

/// Fourth-order periodic central differences; the input must wrap
/// (`values[n] == values[0]`).
fn periodic_derivative(x: &GridFunction) -> GridFunction {
    let n = x.n();
    let h = x.step();
    let v = x.values();
    let mut out = vec![0.0; n + 1];
    for (i, o) in out.iter_mut().enumerate().take(n) {
        let p1 = v[(i + 1) % n];
        let m1 = v[(i + n - 1) % n];
        let p2 = v[(i + 2) % n];
        let m2 = v[(i + n - 2) % n];
        *o = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
    }
    out[n] = out[0];
    GridFunction::new(x.period(), out).expect("derivative of finite samples is finite")
}

/// Confirms the guaranteed localization `cone * r1 <= x(t) <= r2`, with a
/// tolerance of `1e-6 * r2` folded into the margins so discretization noise
/// does not flip a true containment.
pub fn verify_localization(sol: &PeriodicSolution, slab: &Slab) -> Vec<Check> {
    let tol = 1e-6 * slab.r2;
    let (lo, hi) = sol.bounds;
    let lower_margin = lo - slab.x_lo() + tol;
    let upper_margin = slab.r2 + tol - hi;
    let lower_detail =
        format!("min sample {lo} vs lower edge {} (tolerance {tol:e})", slab.x_lo());
    let upper_detail = format!("max sample {hi} vs upper edge {} (tolerance {tol:e})", slab.r2);
    vec![
        if lower_margin >= 0.0 {
            Check::pass("localization.lower", lower_margin, lower_detail)
        } else {
            Check::fail("localization.lower", lower_margin, lower_detail, None)
        },
        if upper_margin >= 0.0 {
            Check::pass("localization.upper", upper_margin, upper_detail)
        } else {
            Check::fail("localization.upper", upper_margin, upper_detail, None)
        },
    ]
}

/// Period averages `(mean of f, mean of |f|)` of the unshifted forcing along
/// a discrete solution, by the trapezoid rule. Integrating
/// `x'' + a x' = f(t, x(t))` over one period kills both derivative terms, so
/// the first average vanishes for a true periodic solution; the second gives
/// the scale to judge it against.
pub fn forcing_balance(p: &ProblemSpec, x: &GridFunction) -> (f64, f64) {
    let n = x.n();
    let h = x.step();
    let mut acc = 0.0;
    let mut acc_abs = 0.0;
    for (i, &v) in x.values().iter().enumerate() {
        let weight = if i == 0 || i == n { 0.5 } else { 1.0 };
        let f = p.f_unchecked(x.node(i), v.max(0.0));
        acc += weight * f;
        acc_abs += weight * f.abs();
    }
    (acc * h / p.period, acc_abs * h / p.period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CoefficientFunction, SingularModelSpec};

    fn example_problem() -> ProblemSpec {
        SingularModelSpec::new(1.6, 99.0, 1.49, CoefficientFunction::Constant(1.54), 1.0)
            .unwrap()
            .regularize()
            .unwrap()
    }

    fn flat_problem() -> ProblemSpec {
        ProblemSpec::new(
            0.0,
            1.0,
            CoefficientFunction::Constant(2.0),
            CoefficientFunction::Constant(1.0),
            0.25,
            0.5,
        )
        .unwrap()
    }

    const X_STAR: f64 = 27.129_715_683_055_327;

    #[test]
    fn constant_solution_matches_closed_forms() {
        assert!((constant_solution(&flat_problem()).unwrap() - 16.0).abs() < 1e-9);
        assert!((constant_solution(&example_problem()).unwrap() - X_STAR).abs() < 1e-9);
    }

    #[test]
    fn constant_solution_rejects_unsuitable_problems() {
        let table = CoefficientFunction::table(
            GridFunction::from_fn(1.0, 8, |t| 2.0 + 0.1 * (2.0 * std::f64::consts::PI * t).sin())
                .unwrap(),
        )
        .unwrap();
        let p = ProblemSpec::new(
            0.0,
            1.0,
            table,
            CoefficientFunction::Constant(1.0),
            0.25,
            0.5,
        )
        .unwrap();
        assert!(matches!(constant_solution(&p), Err(SolverError::NotAutonomous)));
        let p = ProblemSpec::new(
            0.0,
            1.0,
            CoefficientFunction::Constant(-2.0),
            CoefficientFunction::Constant(1.0),
            0.25,
            0.5,
        )
        .unwrap();
        assert!(matches!(
            constant_solution(&p),
            Err(SolverError::NonPositiveCoefficient { .. })
        ));
    }

    #[test]
    fn shooting_finds_the_pumping_equilibrium() {
        let sol = shooting_solve(&example_problem(), (27.0, 0.0), &SolverConfig::default())
            .unwrap();
        assert!(sol.iterations <= 8, "iterations {}", sol.iterations);
        assert!(sol.periodicity_defect <= 1e-10);
        assert!(sol.ode_residual < 1e-9);
        for &v in sol.x.values() {
            assert!((v - X_STAR).abs() < 1e-6);
        }
        let (balance, scale) = forcing_balance(&example_problem(), &sol.x);
        assert!(balance.abs() <= 1e-6 * scale.max(1.0), "balance {balance} scale {scale}");
    }

    #[test]
    fn shooting_reaches_the_flat_equilibrium_from_afar() {
        let sol = shooting_solve(&flat_problem(), (10.0, 0.0), &SolverConfig::default()).unwrap();
        assert!(sol.iterations <= 10, "iterations {}", sol.iterations);
        for &v in sol.x.values() {
            assert!((v - 16.0).abs() < 1e-8);
        }
    }

    #[test]
    fn shooting_rejects_a_nonpositive_start() {
        assert!(matches!(
            shooting_solve(&flat_problem(), (-1.0, 0.0), &SolverConfig::default()),
            Err(SolverError::InvalidInitialGuess(_))
        ));
    }

    fn kinked_table_problem() -> ProblemSpec {
        // Gentle periodic modulation sampled on 8 subintervals: the
        // interpolation kinks sit exactly on the solver step boundaries for
        // any grid divisible by 8, so Runge-Kutta keeps its full order.
        let r = CoefficientFunction::table(
            GridFunction::from_fn(1.0, 8, |t| {
                154.0 * (1.0 + 0.005 * (2.0 * std::f64::consts::PI * t).sin())
            })
            .unwrap(),
        )
        .unwrap();
        ProblemSpec::new(1.6, 1.0, r, CoefficientFunction::Constant(149.0), 0.98, 0.99).unwrap()
    }

    #[test]
    fn shooting_residual_shrinks_at_high_order_on_a_kinked_table() {
        let p = kinked_table_problem();
        let coarse = shooting_solve(
            &p,
            (27.0, 0.0),
            &SolverConfig { grid_size: 512, ..SolverConfig::default() },
        )
        .unwrap();
        let fine = shooting_solve(
            &p,
            (27.0, 0.0),
            &SolverConfig { grid_size: 1024, ..SolverConfig::default() },
        )
        .unwrap();
        // Frozen oracle values for this problem.
        assert!((coarse.x.values()[0] - 26.900_714_57).abs() < 1e-6);
        assert!((coarse.bounds.0 - 26.5527).abs() < 1e-2);
        assert!((coarse.bounds.1 - 27.4928).abs() < 1e-2);
        assert!(coarse.ode_residual > 0.0 && fine.ode_residual > 0.0);
        let ratio = coarse.ode_residual / fine.ode_residual;
        assert!(ratio >= 3.5, "halving ratio {ratio}");
    }

    #[test]
    fn picard_contracts_to_the_flat_equilibrium() {
        let sp = ShiftedProblem::new(flat_problem(), 1.0).unwrap();
        let x0 = GridFunction::constant(1.0, 256, 10.0).unwrap();
        let cfg = SolverConfig { grid_size: 256, method: SolverMethod::Picard, ..Default::default() };
        let sol = picard_solve(&sp, &x0, &cfg, None).unwrap();
        assert!(sol.iterations <= 600, "iterations {}", sol.iterations);
        for &v in sol.x.values() {
            assert!((v - 16.0).abs() < 1e-8);
        }
        assert_eq!(sol.periodicity_defect, 0.0);
        for &v in sol.xprime.values() {
            assert!(v.abs() < 1e-7);
        }
    }

    #[test]
    fn picard_fixed_point_error_drops_fourth_order_in_the_grid() {
        let sp = ShiftedProblem::new(flat_problem(), 1.0).unwrap();
        let dev = |n: usize| {
            let x0 = GridFunction::constant(1.0, n, 10.0).unwrap();
            let cfg = SolverConfig {
                grid_size: n,
                tolerance: 1e-13,
                method: SolverMethod::Picard,
                ..Default::default()
            };
            let sol = picard_solve(&sp, &x0, &cfg, None).unwrap();
            sol.x
                .values()
                .iter()
                .map(|v| (v - 16.0).abs())
                .fold(0.0f64, f64::max)
        };
        let (coarse, fine) = (dev(128), dev(256));
        assert!(coarse > 0.0 && fine > 0.0);
        let ratio = coarse / fine;
        assert!(ratio >= 3.5, "halving ratio {ratio} ({coarse:e} vs {fine:e})");
    }

    #[test]
    fn picard_reports_non_convergence_at_a_repelling_equilibrium() {
        // The pumping example's equilibrium repels the integral map (its
        // linearization has gain |1 + f'(x*)/m^2| of about 1.9), so Picard
        // must bounce inside the slab and give up rather than fake success.
        let sp = ShiftedProblem::new(example_problem(), 0.7).unwrap();
        let slab = Slab::new(27.0, 29.0, sp.kernel.cone_const).unwrap();
        let x0 = GridFunction::constant(1.0, 128, 28.0).unwrap();
        let cfg = SolverConfig {
            grid_size: 128,
            max_iterations: 60,
            method: SolverMethod::Picard,
            ..Default::default()
        };
        match picard_solve(&sp, &x0, &cfg, Some(&slab)) {
            Err(SolverError::NonConvergence { steps, .. }) => assert_eq!(steps, 60),
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn picard_validates_the_seed_against_its_domain() {
        let sp = ShiftedProblem::new(flat_problem(), 1.0).unwrap();
        let cfg = SolverConfig { grid_size: 64, method: SolverMethod::Picard, ..Default::default() };
        let zeroed = GridFunction::constant(1.0, 64, 0.0).unwrap();
        assert!(matches!(
            picard_solve(&sp, &zeroed, &cfg, None),
            Err(SolverError::InvalidInitialGuess(_))
        ));
        let slab = Slab::new(10.0, 20.0, sp.kernel.cone_const).unwrap();
        let outside = GridFunction::constant(1.0, 64, 30.0).unwrap();
        assert!(matches!(
            picard_solve(&sp, &outside, &cfg, Some(&slab)),
            Err(SolverError::InvalidInitialGuess(_))
        ));
    }

    #[test]
    fn localization_checks_reflect_the_solution_bounds() {
        let sp = ShiftedProblem::new(example_problem(), 0.7).unwrap();
        let sol = shooting_solve(&example_problem(), (27.0, 0.0), &SolverConfig::default())
            .unwrap();
        let good = Slab::new(27.0, 29.0, sp.kernel.cone_const).unwrap();
        let checks = verify_localization(&sol, &good);
        assert!(checks.iter().all(|c| c.status == crate::certify::CheckStatus::Pass));
        let tight = Slab::new(1.0, 27.0, sp.kernel.cone_const).unwrap();
        let checks = verify_localization(&sol, &tight);
        assert_eq!(checks[0].status, crate::certify::CheckStatus::Pass);
        assert_eq!(checks[1].status, crate::certify::CheckStatus::Fail);
        assert!(checks[1].margin < 0.0);
    }

    #[test]
    fn regularized_solution_satisfies_the_singular_equation() {
        let model =
            SingularModelSpec::new(1.6, 99.0, 1.49, CoefficientFunction::Constant(1.54), 1.0)
                .unwrap();
        let p = model.regularize().unwrap();
        let sol = shooting_solve(
            &p,
            (27.0, 0.0),
            &SolverConfig { grid_size: 4096, ..SolverConfig::default() },
        )
        .unwrap();
        let u = crate::model::singularize_solution(&sol.x, model.mu()).unwrap();
        assert!(model.residual(&u).unwrap() < 1e-4);
        for &v in u.values() {
            assert!((v - 154.0 / 149.0).abs() < 1e-6);
        }
    }
}
