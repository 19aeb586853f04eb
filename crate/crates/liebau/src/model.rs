//! Problem descriptions: the two-power periodic equation
//! `x'' + a x' = r(t) x^alpha - s(t) x^beta` and the singular valveless-pumping
//! model `u'' + a u' = (1/u)(e(t) - b u'^2) - c` it regularizes into.

use thiserror::Error;

use crate::green::{GreenError, KernelParams};
use crate::grid::{GridError, GridFunction};

/// Coefficient tables may miss exact periodicity by this relative amount and
/// still be accepted (the endpoint is snapped onto the start).
const WRAP_SNAP_REL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error(
        "coefficient table is not periodic: last sample {found} vs first {expected} \
         (beyond {WRAP_SNAP_REL:e} relative)"
    )]
    NonPeriodicTable { found: f64, expected: f64 },
    #[error("coefficient table period {found} does not match problem period {expected}")]
    PeriodMismatch { found: f64, expected: f64 },
    #[error("state x = {x} left the positive half-line; the powers x^alpha need x >= 0")]
    NegativeState { x: f64 },
    #[error(
        "sample {index} has non-positive value {value}; \
         the singular change of variables needs x > 0"
    )]
    NonPositiveSample { index: usize, value: f64 },
    #[error("singular model parameters need a >= 0, b > 1, c > 0 (got a = {a}, b = {b}, c = {c})")]
    BadModelParameter { a: f64, b: f64, c: f64 },
    #[error(transparent)]
    Green(#[from] GreenError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A periodic, continuous coefficient: either a constant or a sampled table
/// evaluated by periodic linear interpolation.
#[derive(Debug, Clone)]
pub enum CoefficientFunction {
    Constant(f64),
    Table(GridFunction),
}

impl CoefficientFunction {
    /// Wraps a sampled table, requiring the last sample to match the first
    /// within [`WRAP_SNAP_REL`] relative; the endpoint is snapped exactly.
    pub fn table(mut table: GridFunction) -> Result<Self, ModelError> {
        let n = table.n();
        let first = table.values()[0];
        let last = table.values()[n];
        if (last - first).abs() > WRAP_SNAP_REL * first.abs().max(1.0) {
            return Err(ModelError::NonPeriodicTable { found: last, expected: first });
        }
        table.values_mut()[n] = first;
        Ok(Self::Table(table))
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Self::Constant(v) => *v,
            Self::Table(g) => g.eval_linear(t),
        }
    }

    /// Range `(low, high)` over one period. Exact for the piecewise-linear
    /// interpolant, whose extrema sit at the sample nodes.
    pub fn extrema(&self) -> (f64, f64) {
        match self {
            Self::Constant(v) => (*v, *v),
            Self::Table(g) => (g.min(), g.max()),
        }
    }

    /// Node times where the interpolant may kink; empty for constants.
    pub fn node_times(&self) -> Vec<f64> {
        match self {
            Self::Constant(_) => Vec::new(),
            Self::Table(g) => (0..g.n()).map(|i| g.node(i)).collect(),
        }
    }

    pub fn period(&self) -> Option<f64> {
        match self {
            Self::Constant(_) => None,
            Self::Table(g) => Some(g.period()),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Self::Constant(_))
    }

    /// The coefficient multiplied pointwise by `factor`.
    pub fn scale(&self, factor: f64) -> Self {
        match self {
            Self::Constant(v) => Self::Constant(v * factor),
            Self::Table(g) => {
                let mut g = g.clone();
                for v in g.values_mut() {
                    *v *= factor;
                }
                Self::Table(g)
            }
        }
    }
}

/// The two-power periodic problem `x'' + a x' = r(t) x^alpha - s(t) x^beta`
/// with `a >= 0`, `0 < alpha < beta < 1`, and `T`-periodic `r`, `s`.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub a: f64,
    pub period: f64,
    pub r: CoefficientFunction,
    pub s: CoefficientFunction,
    pub alpha: f64,
    pub beta: f64,
}

impl ProblemSpec {
    pub fn new(
        a: f64,
        period: f64,
        r: CoefficientFunction,
        s: CoefficientFunction,
        alpha: f64,
        beta: f64,
    ) -> Result<Self, ModelError> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(ModelError::InvalidProblem(format!("damping a = {a} must be finite and >= 0")));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(ModelError::InvalidProblem(format!("period T = {period} must be positive")));
        }
        if !(alpha.is_finite() && beta.is_finite() && 0.0 < alpha && alpha < beta && beta < 1.0) {
            return Err(ModelError::InvalidProblem(format!(
                "exponents must satisfy 0 < alpha < beta < 1 (got alpha = {alpha}, beta = {beta})"
            )));
        }
        for coeff in [&r, &s] {
            if let Some(found) = coeff.period() {
                if (found - period).abs() > 1e-9 * period {
                    return Err(ModelError::PeriodMismatch { found, expected: period });
                }
            }
        }
        Ok(Self { a, period, r, s, alpha, beta })
    }

    /// Right-hand side `f(t, x) = r(t) x^alpha - s(t) x^beta` for `x >= 0`.
    pub fn eval_f(&self, t: f64, x: f64) -> Result<f64, ModelError> {
        if x < 0.0 {
            return Err(ModelError::NegativeState { x });
        }
        Ok(self.f_unchecked(t, x))
    }

    /// `f(t, x)` without the sign guard; callers must keep `x >= 0`.
    #[inline]
    pub fn f_unchecked(&self, t: f64, x: f64) -> f64 {
        self.r.eval(t) * x.powf(self.alpha) - self.s.eval(t) * x.powf(self.beta)
    }

    pub fn is_autonomous(&self) -> bool {
        self.r.is_constant() && self.s.is_constant()
    }

    pub fn r_bounds(&self) -> (f64, f64) {
        self.r.extrema()
    }

    pub fn s_bounds(&self) -> (f64, f64) {
        self.s.extrema()
    }

    /// Merged coefficient kink times, sorted and deduplicated, always
    /// containing `t = 0`. Between consecutive entries both coefficients are
    /// affine in `t`, so for fixed `x` so is `f(t, x)`: scanning these nodes
    /// bounds `f` in `t` exactly.
    pub fn t_nodes(&self) -> Vec<f64> {
        let mut nodes = vec![0.0];
        nodes.extend(self.r.node_times());
        nodes.extend(self.s.node_times());
        nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite node times"));
        nodes.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * self.period);
        nodes
    }
}

/// A [`ProblemSpec`] paired with the kernel of its shift `m`, for the fixed
/// point form `x = G_m[f(., x) + m^2 x]`.
#[derive(Debug, Clone)]
pub struct ShiftedProblem {
    pub problem: ProblemSpec,
    pub kernel: KernelParams,
}

impl ShiftedProblem {
    pub fn new(problem: ProblemSpec, m: f64) -> Result<Self, ModelError> {
        let kernel = KernelParams::new(problem.a, m, problem.period)?;
        Ok(Self { problem, kernel })
    }

    pub fn m(&self) -> f64 {
        self.kernel.m
    }

    /// Shifted right-hand side `f_m(t, x) = f(t, x) + m^2 x` for `x >= 0`.
    pub fn eval_fm(&self, t: f64, x: f64) -> Result<f64, ModelError> {
        if x < 0.0 {
            return Err(ModelError::NegativeState { x });
        }
        Ok(self.fm_unchecked(t, x))
    }

    #[inline]
    pub fn fm_unchecked(&self, t: f64, x: f64) -> f64 {
        self.problem.f_unchecked(t, x) + self.kernel.m * self.kernel.m * x
    }
}

/// The singular pumping model `u'' + a u' = (1/u)(e(t) - b u'^2) - c` with
/// periodic forcing `e` and parameters `a >= 0`, `b > 1`, `c > 0`.
#[derive(Debug, Clone)]
pub struct SingularModelSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub e: CoefficientFunction,
    pub period: f64,
}

impl SingularModelSpec {
    pub fn new(
        a: f64,
        b: f64,
        c: f64,
        e: CoefficientFunction,
        period: f64,
    ) -> Result<Self, ModelError> {
        if !(a.is_finite() && a >= 0.0 && b.is_finite() && b > 1.0 && c.is_finite() && c > 0.0) {
            return Err(ModelError::BadModelParameter { a, b, c });
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(ModelError::InvalidProblem(format!("period T = {period} must be positive")));
        }
        if let Some(found) = e.period() {
            if (found - period).abs() > 1e-9 * period {
                return Err(ModelError::PeriodMismatch { found, expected: period });
            }
        }
        Ok(Self { a, b, c, e, period })
    }

    /// Exponent of the regularizing substitution `u = x^mu`, `mu = 1/(b+1)`.
    pub fn mu(&self) -> f64 {
        1.0 / (self.b + 1.0)
    }

    /// The substitution `u = x^mu` removes the singular `1/u` and the `u'^2`
    /// term at once, leaving the two-power problem with `r = e/mu`,
    /// `s = c/mu`, `alpha = 1 - 2 mu`, `beta = 1 - mu`.
    pub fn regularize(&self) -> Result<ProblemSpec, ModelError> {
        let mu = self.mu();
        ProblemSpec::new(
            self.a,
            self.period,
            self.e.scale(1.0 / mu),
            CoefficientFunction::Constant(self.c / mu),
            1.0 - 2.0 * mu,
            1.0 - mu,
        )
    }

    /// Maximum absolute defect of `u` against the singular equation, with
    /// periodic second-order central differences for `u'` and `u''`.
    pub fn residual(&self, u: &GridFunction) -> Result<f64, ModelError> {
        let n = u.n();
        let h = u.step();
        let v = u.values();
        let mut worst = 0.0f64;
        for i in 0..n {
            if v[i] <= 0.0 {
                return Err(ModelError::NonPositiveSample { index: i, value: v[i] });
            }
            let prev = v[(i + n - 1) % n];
            let next = v[(i + 1) % n];
            let du = (next - prev) / (2.0 * h);
            let ddu = (next - 2.0 * v[i] + prev) / (h * h);
            let defect =
                ddu + self.a * du - (self.e.eval(u.node(i)) - self.b * du * du) / v[i] + self.c;
            worst = worst.max(defect.abs());
        }
        Ok(worst)
    }
}

/// Maps a positive periodic solution `x` of the regularized problem back to
/// the singular model's unknown via `u = x^mu`, sample by sample.
pub fn singularize_solution(x: &GridFunction, mu: f64) -> Result<GridFunction, ModelError> {
    let mut out = Vec::with_capacity(x.values().len());
    for (index, &value) in x.values().iter().enumerate() {
        if value <= 0.0 {
            return Err(ModelError::NonPositiveSample { index, value });
        }
        out.push(value.powf(mu));
    }
    Ok(GridFunction::new(x.period(), out)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pipe_tank_example() -> SingularModelSpec {
        SingularModelSpec::new(1.6, 99.0, 1.49, CoefficientFunction::Constant(1.54), 1.0).unwrap()
    }

    #[test]
    fn regularization_matches_hand_computation() {
        let model = pipe_tank_example();
        assert!((model.mu() - 0.01).abs() < 1e-15);
        let p = model.regularize().unwrap();
        assert!((p.alpha - 0.98).abs() < 1e-12);
        assert!((p.beta - 0.99).abs() < 1e-12);
        let (r_lo, r_hi) = p.r_bounds();
        let (s_lo, s_hi) = p.s_bounds();
        assert!((r_lo - 154.0).abs() < 1e-9 && (r_hi - 154.0).abs() < 1e-9);
        assert!((s_lo - 149.0).abs() < 1e-9 && (s_hi - 149.0).abs() < 1e-9);
        assert!(p.is_autonomous());
    }

    #[test]
    fn substitution_exponent_round_trips() {
        let p = pipe_tank_example().regularize().unwrap();
        let mu = 1.0 - p.beta;
        let b = (1.0 - mu) / mu;
        assert!((b - 99.0).abs() < 1e-9);
        assert!((p.alpha - (1.0 - 2.0 * mu)).abs() < 1e-15);
    }

    #[test]
    fn shifted_rhs_balances_at_the_constant_solution() {
        let p = pipe_tank_example().regularize().unwrap();
        let sp = ShiftedProblem::new(p, 0.7).unwrap();
        let x_star = (154.0f64 / 149.0).powf(100.0);
        assert!((x_star - 27.129_715_683_055_327).abs() < 1e-12);
        let fm = sp.eval_fm(0.3, x_star).unwrap();
        assert!((fm - 0.49 * x_star).abs() < 1e-9);
        // And f itself vanishes there.
        assert!(sp.problem.eval_f(0.3, x_star).unwrap().abs() < 1e-9);
    }

    #[test]
    fn rhs_vanishes_at_zero_and_rejects_negative_state() {
        let p = pipe_tank_example().regularize().unwrap();
        assert_eq!(p.eval_f(0.0, 0.0).unwrap(), 0.0);
        assert!(matches!(p.eval_f(0.0, -1.0), Err(ModelError::NegativeState { .. })));
    }

    #[test]
    fn table_coefficients_snap_or_reject_the_wrap() {
        let good = GridFunction::new(1.0, vec![1.0, 2.0, 1.0 + 1e-12]).unwrap();
        match CoefficientFunction::table(good).unwrap() {
            CoefficientFunction::Table(g) => assert_eq!(g.values()[2], 1.0),
            _ => panic!("expected a table"),
        }
        let bad = GridFunction::new(1.0, vec![1.0, 2.0, 1.5]).unwrap();
        assert!(matches!(
            CoefficientFunction::table(bad),
            Err(ModelError::NonPeriodicTable { .. })
        ));
    }

    #[test]
    fn t_nodes_merge_both_coefficient_grids() {
        let r = CoefficientFunction::table(
            GridFunction::from_fn(1.0, 2, |t| 1.0 + t * (1.0 - t)).unwrap(),
        )
        .unwrap();
        let s = CoefficientFunction::table(
            GridFunction::from_fn(1.0, 4, |t| 2.0 + t * (1.0 - t)).unwrap(),
        )
        .unwrap();
        let p = ProblemSpec::new(0.5, 1.0, r, s, 0.3, 0.6).unwrap();
        let nodes = p.t_nodes();
        assert_eq!(nodes.len(), 4);
        for (got, want) in nodes.iter().zip([0.0, 0.25, 0.5, 0.75]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn exponent_order_is_enforced() {
        let c = CoefficientFunction::Constant(1.0);
        assert!(matches!(
            ProblemSpec::new(1.0, 1.0, c.clone(), c.clone(), 0.9, 0.8),
            Err(ModelError::InvalidProblem(_))
        ));
        assert!(matches!(
            ProblemSpec::new(1.0, 1.0, c.clone(), c, 0.5, 1.0),
            Err(ModelError::InvalidProblem(_))
        ));
    }

    #[test]
    fn singular_round_trip_recovers_the_ratio() {
        let x_star = (154.0f64 / 149.0).powf(100.0);
        let x = GridFunction::constant(1.0, 16, x_star).unwrap();
        let u = singularize_solution(&x, 0.01).unwrap();
        for &v in u.values() {
            assert!((v - 154.0 / 149.0).abs() < 1e-12);
        }
        // The constant u = e/c solves the singular model exactly.
        let model = pipe_tank_example();
        assert!(model.residual(&u).unwrap() < 1e-10);
    }

    #[test]
    fn singularization_rejects_non_positive_samples() {
        let x = GridFunction::new(1.0, vec![1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            singularize_solution(&x, 0.5),
            Err(ModelError::NonPositiveSample { index: 1, .. })
        ));
    }
}
