//! Mechanical certificates for the two-power periodic problem.
//!
//! Every check returns a [`Check`] carrying a status, a signed margin, and a
//! human-readable detail line; failing scans also carry a [`Witness`] that
//! can be re-evaluated directly. A PASS from the rectangle or analytic
//! checks is a certificate (rounding aside); a PASS never comes out of a
//! plain grid search, which can only produce FAIL-with-witness or
//! INCONCLUSIVE.

use std::f64::consts::{LN_10, PI};
use std::fmt;

use thiserror::Error;

use crate::model::{ProblemSpec, ShiftedProblem, SingularModelSpec};

/// Default number of state-grid subintervals for the rectangle checks.
pub const DEFAULT_CERTIFY_GRID: usize = 4096;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error(
        "slab needs 0 < r1 < r2 and a cone constant in (0, 1) \
         (got r1 = {r1}, r2 = {r2}, cone = {cone})"
    )]
    BadSlab { r1: f64, r2: f64, cone: f64 },
    #[error("slab cone constant {slab} does not match the kernel's {kernel}")]
    ConeMismatch { slab: f64, kernel: f64 },
    #[error(
        "both coefficients must stay strictly positive for this check \
         (got r_low = {r_low}, s_low = {s_low})"
    )]
    CoefficientsNotPositive { r_low: f64, s_low: f64 },
    #[error("the forcing must stay strictly positive (got e_low = {e_low})")]
    ForcingNotPositive { e_low: f64 },
    #[error(
        "exponents must satisfy 1 - alpha = 2 (beta - alpha) for the quadratic \
         substitution (got alpha = {alpha}, beta = {beta})"
    )]
    ExponentRelation { alpha: f64, beta: f64 },
    #[error("no real sign-change roots: discriminant = {discriminant}")]
    NoRealRoots { discriminant: f64 },
    #[error("invalid sign analysis query: {0}")]
    InvalidSignQuery(String),
    #[error("suggested radii overflow the floating-point range: {0}")]
    RadiiOverflow(String),
}

/// Outcome of a single certificate check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// A point at which a failed check can be re-evaluated directly.
#[derive(Debug, Clone, Copy)]
pub struct Witness {
    pub t: f64,
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// Signed slack: positive means the condition holds with room to spare.
    /// For certified passes the margin already has the grid resolution band
    /// subtracted.
    pub margin: f64,
    pub detail: String,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: &str, margin: f64, detail: String) -> Self {
        Self { name: name.to_owned(), status: CheckStatus::Pass, margin, detail, witness: None }
    }

    pub fn fail(name: &str, margin: f64, detail: String, witness: Option<Witness>) -> Self {
        Self { name: name.to_owned(), status: CheckStatus::Fail, margin, detail, witness }
    }

    pub fn inconclusive(name: &str, margin: f64, detail: String) -> Self {
        Self {
            name: name.to_owned(),
            status: CheckStatus::Inconclusive,
            margin,
            detail,
            witness: None,
        }
    }
}

/// An ordered collection of checks with deterministic renderings.
#[derive(Debug, Clone, Default)]
pub struct CertificateReport {
    pub checks: Vec<Check>,
}

impl CertificateReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn any_passed(&self, prefix: &str) -> bool {
        self.checks
            .iter()
            .any(|c| c.name.starts_with(prefix) && c.status == CheckStatus::Pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} margin={:+.6e} :: {}\n",
                c.status, c.name, c.margin, c.detail
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!(
                    "       witness: t={:.17e} x={:.17e} value={:.17e}\n",
                    w.t, w.x, w.value
                ));
            }
        }
        out
    }

    /// Stable `key=value` lines for machine consumption; byte-identical for
    /// identical inputs.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{}.status={}\n", c.name, c.status));
            out.push_str(&format!("{}.margin={:.17e}\n", c.name, c.margin));
            if let Some(w) = &c.witness {
                out.push_str(&format!("{}.witness.t={:.17e}\n", c.name, w.t));
                out.push_str(&format!("{}.witness.x={:.17e}\n", c.name, w.x));
                out.push_str(&format!("{}.witness.value={:.17e}\n", c.name, w.value));
            }
        }
        out
    }
}

/// The localization slab `[cone * r1, r2]` with its inner and outer radii.
#[derive(Debug, Clone, Copy)]
pub struct Slab {
    pub r1: f64,
    pub r2: f64,
    pub cone: f64,
}

impl Slab {
    pub fn new(r1: f64, r2: f64, cone: f64) -> Result<Self, CertifyError> {
        let ok = r1.is_finite()
            && r2.is_finite()
            && cone.is_finite()
            && 0.0 < r1
            && r1 < r2
            && 0.0 < cone
            && cone < 1.0;
        if !ok {
            return Err(CertifyError::BadSlab { r1, r2, cone });
        }
        Ok(Self { r1, r2, cone })
    }

    /// Lower edge of the slab, `cone * r1`.
    pub fn x_lo(&self) -> f64 {
        self.cone * self.r1
    }
}

/// The four sign-pattern certificates that rule out positive periodic
/// solutions outright: if either coefficient keeps a strict sign while the
/// other never opposes it, the forcing `r x^alpha - s x^beta` keeps a strict
/// sign for `x > 0` and cannot average to zero over a period.
pub fn check_nonexistence(p: &ProblemSpec) -> Vec<Check> {
    let (r_low, r_high) = p.r_bounds();
    let (s_low, s_high) = p.s_bounds();
    let cases: [(&str, bool, f64, String); 4] = [
        (
            "nonexistence.r_nonneg_s_neg",
            r_low >= 0.0 && s_high < 0.0,
            r_low.min(-s_high),
            format!("needs r_low >= 0 and s_high < 0 (got r_low = {r_low}, s_high = {s_high})"),
        ),
        (
            "nonexistence.r_pos_s_nonpos",
            r_low > 0.0 && s_high <= 0.0,
            r_low.min(-s_high),
            format!("needs r_low > 0 and s_high <= 0 (got r_low = {r_low}, s_high = {s_high})"),
        ),
        (
            "nonexistence.r_nonpos_s_pos",
            r_high <= 0.0 && s_low > 0.0,
            (-r_high).min(s_low),
            format!("needs r_high <= 0 and s_low > 0 (got r_high = {r_high}, s_low = {s_low})"),
        ),
        (
            "nonexistence.r_neg_s_nonneg",
            r_high < 0.0 && s_low >= 0.0,
            (-r_high).min(s_low),
            format!("needs r_high < 0 and s_low >= 0 (got r_high = {r_high}, s_low = {s_low})"),
        ),
    ];
    cases
        .into_iter()
        .map(|(name, holds, margin, detail)| {
            if holds {
                Check::pass(name, margin, detail)
            } else {
                Check::fail(name, margin.min(0.0), detail, None)
            }
        })
        .collect()
}

/// Coefficient-only existence certificate: `s_high` strictly below both the
/// resonance threshold `(pi/T)^2 + (a/2)^2` and `r_low`. Requires strictly
/// positive coefficients.
pub fn check_coefficient_bound(p: &ProblemSpec) -> Result<Check, CertifyError> {
    let (r_low, _) = p.r_bounds();
    let (s_low, s_high) = p.s_bounds();
    if !(r_low > 0.0 && s_low > 0.0) {
        return Err(CertifyError::CoefficientsNotPositive { r_low, s_low });
    }
    let threshold = (PI / p.period).powi(2) + (p.a / 2.0).powi(2);
    let margin = threshold.min(r_low) - s_high;
    let detail = format!(
        "s_high = {s_high} vs min(resonance threshold = {threshold}, r_low = {r_low})"
    );
    Ok(if margin > 0.0 {
        Check::pass("existence.coefficient_bound", margin, detail)
    } else {
        Check::fail("existence.coefficient_bound", margin, detail, None)
    })
}

/// Existence certificate for the singular model straight from its
/// parameters: `(b+1) c^2 / (4 e_low) < (pi/T)^2 + a^2/4`.
pub fn check_model_bound(model: &SingularModelSpec) -> Result<Check, CertifyError> {
    let (e_low, _) = model.e.extrema();
    if e_low <= 0.0 {
        return Err(CertifyError::ForcingNotPositive { e_low });
    }
    let left = (model.b + 1.0) * model.c * model.c / (4.0 * e_low);
    let right = (PI / model.period).powi(2) + model.a * model.a / 4.0;
    let margin = right - left;
    let detail = format!("(b+1) c^2 / (4 e_low) = {left} vs (pi/T)^2 + a^2/4 = {right}");
    Ok(if margin > 0.0 {
        Check::pass("existence.model_bound", margin, detail)
    } else {
        Check::fail("existence.model_bound", margin, detail, None)
    })
}

/// Whether the shifted forcing `f_m(t, x) = r x^alpha - s x^beta + m^2 x`
/// stays nonnegative for all `x >= 0`.
///
/// Tries two analytic certificates before falling back to a grid search,
/// which can only disprove (FAIL with witness) or stay INCONCLUSIVE.
pub fn check_global_nonnegativity(sp: &ShiftedProblem) -> Check {
    const NAME: &str = "nonnegativity.global";
    let p = &sp.problem;
    let (r_low, _) = p.r_bounds();
    let (s_low, s_high) = p.s_bounds();
    let m2 = sp.kernel.m * sp.kernel.m;

    // Term domination: for x in [0,1], x^alpha >= x^beta handles the middle
    // term when s_high <= r_low; for x >= 1, x^beta <= x hands it to m^2 x
    // when s_high <= m^2. Both need r_low >= 0 to keep the first term up.
    if r_low >= 0.0 && s_high <= r_low && s_high <= m2 {
        let margin = r_low.min(r_low - s_high).min(m2 - s_high);
        return Check::pass(
            NAME,
            margin,
            format!(
                "term domination: r_low = {r_low} >= 0 and s_high = {s_high} <= \
                 min(r_low, m^2 = {m2})"
            ),
        );
    }

    // Quadratic route: when 1 - alpha = 2 (beta - alpha), dividing by
    // x^alpha gives m^2 y^2 - s(t) y + r(t) in y = x^(beta-alpha); a
    // negative worst-case discriminant makes it positive definite.
    if ((1.0 - p.alpha) - 2.0 * (p.beta - p.alpha)).abs() <= 1e-12 {
        let s_abs = s_low.abs().max(s_high.abs());
        let disc = s_abs * s_abs - 4.0 * m2 * r_low;
        if disc < 0.0 {
            return Check::pass(
                NAME,
                -disc,
                format!(
                    "quadratic in x^(beta-alpha) is positive definite: \
                     worst discriminant = {disc}"
                ),
            );
        }
    }

    // Heuristic counterexample search. Beyond x_max the linear term
    // provably dominates, so the scan is confined there.
    let x_max = {
        let mut ln_max = 0.0f64;
        if s_high > 0.0 {
            ln_max = ln_max.max(2f64.ln() + (s_high.ln() - m2.ln()) / (1.0 - p.beta));
        }
        if r_low < 0.0 {
            ln_max = ln_max.max(2f64.ln() + ((2.0 * -r_low).ln() - m2.ln()) / (1.0 - p.alpha));
        }
        ln_max.min(690.0).exp()
    };
    let t_nodes = p.t_nodes();
    let mut min_value = f64::INFINITY;
    let mut at: Option<(f64, f64)> = None;
    let mut consider = |t: f64, x: f64, v: f64| {
        if v < min_value {
            min_value = v;
            at = Some((t, x));
        }
    };
    const LOG_POINTS: usize = 3072;
    const LIN_POINTS: usize = 1024;
    let ln_lo = 1e-15f64.ln();
    let ln_hi = x_max.ln();
    let lin_hi = x_max.min(1e6);
    for &t in &t_nodes {
        consider(t, 0.0, sp.fm_unchecked(t, 0.0));
        for i in 0..LOG_POINTS {
            let x = (ln_lo + (ln_hi - ln_lo) * i as f64 / (LOG_POINTS - 1) as f64).exp();
            consider(t, x, sp.fm_unchecked(t, x));
        }
        for i in 1..=LIN_POINTS {
            let x = lin_hi * i as f64 / LIN_POINTS as f64;
            consider(t, x, sp.fm_unchecked(t, x));
        }
    }
    if min_value < 0.0 {
        let (t, x) = at.expect("minimum recorded");
        return Check::fail(
            NAME,
            min_value,
            format!("negative shifted forcing found at t = {t}, x = {x:e}"),
            Some(Witness { t, x, value: min_value }),
        );
    }
    Check::inconclusive(
        NAME,
        min_value,
        format!(
            "no violation on a {LOG_POINTS}-point log grid up to x = {x_max:e} \
             plus a {LIN_POINTS}-point linear grid; not a certificate"
        ),
    )
}

/// The three rectangle conditions that drive the cone compression argument:
/// nonnegativity of `f_m` on the whole slab, `f_m >= m^2 r1` on the inner
/// band, and `f_m <= m^2 r2` on the outer band.
///
/// Time is scanned exactly (the coefficients are piecewise affine between
/// their merged nodes, hence so is `f_m` for fixed `x`); the state axis uses
/// a grid plus a Lipschitz resolution band. PASS requires the worst grid
/// slack to clear the band; any negative grid slack is a direct FAIL with a
/// witness; the band is tightened by refining the grid four-fold up to two
/// times before conceding INCONCLUSIVE.
pub fn check_slab_conditions(
    sp: &ShiftedProblem,
    slab: &Slab,
    x_grid: usize,
) -> Result<Vec<Check>, CertifyError> {
    let kernel_cone = sp.kernel.cone_const;
    if (slab.cone - kernel_cone).abs() > 1e-12 * kernel_cone {
        return Err(CertifyError::ConeMismatch { slab: slab.cone, kernel: kernel_cone });
    }
    let m2 = sp.kernel.m * sp.kernel.m;
    let jobs = [
        ("slab.nonnegativity", slab.x_lo(), slab.r2, 0.0, true),
        ("slab.inner_bound", slab.x_lo(), slab.r1, m2 * slab.r1, true),
        ("slab.outer_bound", slab.cone * slab.r2, slab.r2, m2 * slab.r2, false),
    ];
    Ok(jobs
        .into_iter()
        .map(|(name, x_from, x_to, threshold, at_least)| {
            rectangle_check(sp, name, x_from, x_to, threshold, at_least, x_grid)
        })
        .collect())
}

fn rectangle_check(
    sp: &ShiftedProblem,
    name: &str,
    x_from: f64,
    x_to: f64,
    threshold: f64,
    at_least: bool,
    base_grid: usize,
) -> Check {
    let p = &sp.problem;
    let t_nodes = p.t_nodes();
    let (r_low, r_high) = p.r_bounds();
    let (s_low, s_high) = p.s_bounds();
    let m2 = sp.kernel.m * sp.kernel.m;
    // Lipschitz constant of x -> f_m(t, x) on [x_from, x_to], uniform in t;
    // the power derivatives only grow toward the left edge.
    let lip = r_low.abs().max(r_high.abs()) * p.alpha * x_from.powf(p.alpha - 1.0)
        + s_low.abs().max(s_high.abs()) * p.beta * x_from.powf(p.beta - 1.0)
        + m2;
    let relation = if at_least { ">=" } else { "<=" };
    let mut grid = base_grid.max(2);
    for round in 0..3 {
        let band = lip * (x_to - x_from) / grid as f64 / 2.0;
        let mut min_slack = f64::INFINITY;
        let mut at = (0.0, 0.0, 0.0);
        for &t in &t_nodes {
            for k in 0..=grid {
                let x = x_from + (x_to - x_from) * k as f64 / grid as f64;
                let v = sp.fm_unchecked(t, x);
                let slack = if at_least { v - threshold } else { threshold - v };
                if slack < min_slack {
                    min_slack = slack;
                    at = (t, x, v);
                }
            }
        }
        if min_slack < 0.0 {
            return Check::fail(
                name,
                min_slack,
                format!(
                    "f_m(t, x) {relation} {threshold} violated on \
                     [{x_from}, {x_to}] at t = {}, x = {}",
                    at.0, at.1
                ),
                Some(Witness { t: at.0, x: at.1, value: at.2 }),
            );
        }
        if min_slack > band {
            return Check::pass(
                name,
                min_slack - band,
                format!(
                    "f_m(t, x) {relation} {threshold} on [{x_from}, {x_to}]: \
                     worst grid slack {min_slack:e} clears the resolution band \
                     {band:e} ({grid} subintervals)"
                ),
            );
        }
        if round < 2 {
            grid *= 4;
        } else {
            return Check::inconclusive(
                name,
                min_slack,
                format!(
                    "worst grid slack {min_slack:e} within the resolution band \
                     {band:e} even at {grid} subintervals"
                ),
            );
        }
    }
    unreachable!("rectangle refinement loop always returns")
}

/// Constructs slab radii that satisfy the two coefficient-level
/// inequalities behind the inner and outer rectangle conditions, with
/// deliberate slack (10% inward on the inner radius, 10% outward on the
/// outer). Requires strictly positive coefficients.
pub fn suggest_radii(sp: &ShiftedProblem) -> Result<Slab, CertifyError> {
    let p = &sp.problem;
    let (r_low, r_high) = p.r_bounds();
    let (s_low, s_high) = p.s_bounds();
    if !(r_low > 0.0 && s_low > 0.0) {
        return Err(CertifyError::CoefficientsNotPositive { r_low, s_low });
    }
    let cone = sp.kernel.cone_const;
    let m2 = sp.kernel.m * sp.kernel.m;
    let (alpha, beta) = (p.alpha, p.beta);
    // Inner radius: the largest R with
    // (1 - cone) m^2 R^(1-alpha) + s_high R^(beta-alpha) <= r_low cone^alpha.
    // The left side is continuous, strictly increasing, and spans (0, inf),
    // so the equality has a unique root, bracketed then bisected.
    let target = r_low * cone.powf(alpha);
    let lhs = |radius: f64| {
        (1.0 - cone) * m2 * radius.powf(1.0 - alpha) + s_high * radius.powf(beta - alpha)
    };
    let mut lo = 1.0f64;
    let mut hi = 1.0f64;
    for _ in 0..4200 {
        if lhs(hi) >= target {
            break;
        }
        hi *= 2.0;
    }
    if !(lhs(hi) >= target) {
        return Err(CertifyError::RadiiOverflow(format!("no inner radius below {hi:e}")));
    }
    for _ in 0..4200 {
        if lhs(lo) <= target {
            break;
        }
        lo /= 2.0;
    }
    if !(lhs(lo) <= target) {
        return Err(CertifyError::RadiiOverflow(format!("no inner radius above {lo:e}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lhs(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    let r1 = 0.9 * 0.5 * (lo + hi);
    // Outer radius: r_high <= s_low cone^beta R^(beta-alpha), solved in logs
    // to survive tiny exponent gaps.
    let base = ((r_high.ln() - s_low.ln() - beta * cone.ln()) / (beta - alpha)).exp();
    let r2 = (1.1 * base).max(2.0 * r1);
    if !(r1.is_finite() && r1 > 0.0 && r2.is_finite()) {
        return Err(CertifyError::RadiiOverflow(format!("r1 = {r1}, r2 = {r2}")));
    }
    Slab::new(r1, r2, cone)
}

/// Sign-change analysis of `g(x) = lambda x + c_alpha x^alpha - c_beta x^beta`
/// for positive constants, under the exponent relation
/// `1 - alpha = 2 (beta - alpha)` that turns `g / x^alpha` into the
/// quadratic `lambda y^2 - c_beta y + c_alpha` in `y = x^(beta-alpha)`.
#[derive(Debug, Clone, Copy)]
pub struct SignAnalysis {
    /// Roots of the quadratic in `y`, ascending. `g < 0` strictly between
    /// the corresponding `x` values and `g > 0` outside them.
    pub y_roots: [f64; 2],
    /// The roots mapped back, `x = y^(1/(beta-alpha))`; may overflow to
    /// infinity for tiny exponent gaps.
    pub x_roots: [f64; 2],
    /// Base-10 logarithms of the `x` roots, always finite.
    pub log10_x_roots: [f64; 2],
}

pub fn sign_change_roots(
    lambda: f64,
    c_alpha: f64,
    c_beta: f64,
    alpha: f64,
    beta: f64,
) -> Result<SignAnalysis, CertifyError> {
    if !(lambda > 0.0 && c_alpha > 0.0 && c_beta > 0.0) {
        return Err(CertifyError::InvalidSignQuery(format!(
            "all three constants must be positive (got lambda = {lambda}, \
             c_alpha = {c_alpha}, c_beta = {c_beta})"
        )));
    }
    if !(0.0 < alpha && alpha < beta && beta < 1.0) {
        return Err(CertifyError::InvalidSignQuery(format!(
            "exponents must satisfy 0 < alpha < beta < 1 (got {alpha}, {beta})"
        )));
    }
    if ((1.0 - alpha) - 2.0 * (beta - alpha)).abs() > 1e-12 {
        return Err(CertifyError::ExponentRelation { alpha, beta });
    }
    let disc = c_beta * c_beta - 4.0 * lambda * c_alpha;
    if disc < 0.0 {
        return Err(CertifyError::NoRealRoots { discriminant: disc });
    }
    // Subtraction-free quadratic roots: y_small * y_big = c_alpha / lambda.
    let q = (c_beta + disc.sqrt()) / 2.0;
    let y_roots = [c_alpha / q, q / lambda];
    let inv_gap = 1.0 / (beta - alpha);
    let x_roots = [
        (inv_gap * y_roots[0].ln()).exp(),
        (inv_gap * y_roots[1].ln()).exp(),
    ];
    let log10_x_roots = [
        inv_gap * y_roots[0].ln() / LN_10,
        inv_gap * y_roots[1].ln() / LN_10,
    ];
    Ok(SignAnalysis { y_roots, x_roots, log10_x_roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CoefficientFunction;

    fn example_problem() -> ProblemSpec {
        SingularModelSpec::new(1.6, 99.0, 1.49, CoefficientFunction::Constant(1.54), 1.0)
            .unwrap()
            .regularize()
            .unwrap()
    }

    fn example_shifted() -> ShiftedProblem {
        ShiftedProblem::new(example_problem(), 0.7).unwrap()
    }

    fn constant_problem(a: f64, r: f64, s: f64, alpha: f64, beta: f64) -> ProblemSpec {
        ProblemSpec::new(
            a,
            1.0,
            CoefficientFunction::Constant(r),
            CoefficientFunction::Constant(s),
            alpha,
            beta,
        )
        .unwrap()
    }

    #[test]
    fn example_slab_certifies_with_frozen_margins() {
        let sp = example_shifted();
        let slab = Slab::new(27.0, 29.0, sp.kernel.cone_const).unwrap();
        let checks = check_slab_conditions(&sp, &slab, DEFAULT_CERTIFY_GRID).unwrap();
        let frozen = [
            ("slab.nonnegativity", 11.301_147),
            ("slab.inner_bound", 0.131_587),
            ("slab.outer_bound", 1.021_943),
        ];
        for (check, (name, margin)) in checks.iter().zip(frozen) {
            assert_eq!(check.name, name);
            assert_eq!(check.status, CheckStatus::Pass, "{name}: {}", check.detail);
            assert!(
                (check.margin - margin).abs() < 2e-3,
                "{name}: margin {} vs frozen {margin}",
                check.margin
            );
        }
    }

    #[test]
    fn oversized_outer_radius_fails_with_usable_witness() {
        let sp = example_shifted();
        let slab = Slab::new(27.0, 50.0, sp.kernel.cone_const).unwrap();
        let checks = check_slab_conditions(&sp, &slab, DEFAULT_CERTIFY_GRID).unwrap();
        let nonneg = &checks[0];
        assert_eq!(nonneg.name, "slab.nonnegativity");
        assert_eq!(nonneg.status, CheckStatus::Fail);
        let w = nonneg.witness.expect("failures carry a witness");
        // The witness re-evaluates to a negative shifted forcing.
        assert!(sp.eval_fm(w.t, w.x).unwrap() < 0.0);
        assert!((w.x - 50.0).abs() < 1e-9);
        assert!((w.value - -19.168).abs() < 1e-2);
    }

    #[test]
    fn shrunken_slab_fails_the_inner_bound_directly() {
        let sp = example_shifted();
        let slab = Slab::new(35.0, 36.0, sp.kernel.cone_const).unwrap();
        let checks = check_slab_conditions(&sp, &slab, DEFAULT_CERTIFY_GRID).unwrap();
        let inner = checks.iter().find(|c| c.name == "slab.inner_bound").unwrap();
        assert_eq!(inner.status, CheckStatus::Fail);
        let w = inner.witness.expect("failures carry a witness");
        let m2 = sp.kernel.m * sp.kernel.m;
        assert!(sp.eval_fm(w.t, w.x).unwrap() < m2 * 35.0);
    }

    #[test]
    fn slab_requires_the_kernel_cone_constant() {
        let sp = example_shifted();
        let slab = Slab::new(27.0, 29.0, 0.5).unwrap();
        assert!(matches!(
            check_slab_conditions(&sp, &slab, 64),
            Err(CertifyError::ConeMismatch { .. })
        ));
    }

    #[test]
    fn slab_rejects_degenerate_radii() {
        assert!(matches!(Slab::new(29.0, 29.0, 0.9), Err(CertifyError::BadSlab { .. })));
        assert!(matches!(Slab::new(-1.0, 29.0, 0.9), Err(CertifyError::BadSlab { .. })));
        assert!(matches!(Slab::new(1.0, 29.0, 1.5), Err(CertifyError::BadSlab { .. })));
    }

    #[test]
    fn suggested_radii_match_frozen_values_and_recertify() {
        let sp = example_shifted();
        let slab = suggest_radii(&sp).unwrap();
        assert!((slab.r1 - 0.064_747_611_949_644_5).abs() / slab.r1 < 1e-9);
        assert!((slab.r2 - 11_731.772_675_214_454).abs() / slab.r2 < 1e-9);
        // Both coefficient-level inequalities hold with slack at the output.
        let p = &sp.problem;
        let cone = slab.cone;
        let m2 = sp.kernel.m * sp.kernel.m;
        let inner = (1.0 - cone) * m2 * slab.r1.powf(1.0 - p.alpha)
            + 149.0 * slab.r1.powf(p.beta - p.alpha);
        assert!(inner <= 154.0 * cone.powf(p.alpha));
        let outer = 149.0 * cone.powf(p.beta) * slab.r2.powf(p.beta - p.alpha);
        assert!(154.0 <= outer);
    }

    #[test]
    fn suggest_radii_needs_positive_coefficients() {
        let p = constant_problem(1.6, 154.0, -1.0, 0.98, 0.99);
        let sp = ShiftedProblem::new(p, 0.7).unwrap();
        assert!(matches!(
            suggest_radii(&sp),
            Err(CertifyError::CoefficientsNotPositive { .. })
        ));
    }

    #[test]
    fn coefficient_bound_fails_for_the_pumping_example() {
        let check = check_coefficient_bound(&example_problem()).unwrap();
        assert_eq!(check.status, CheckStatus::Fail);
        // Threshold (pi/T)^2 + (a/2)^2 = 10.5096...; s_high = 149.
        assert!((check.margin - (10.509_604_401_089_36 - 149.0)).abs() < 1e-9);
    }

    #[test]
    fn coefficient_bound_passes_when_s_is_small() {
        let p = constant_problem(1.6, 154.0, 1.0, 0.98, 0.99);
        let check = check_coefficient_bound(&p).unwrap();
        assert_eq!(check.status, CheckStatus::Pass);
        assert!((check.margin - (10.509_604_401_089_36 - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn model_bound_fails_for_the_pumping_example_with_frozen_sides() {
        let model =
            SingularModelSpec::new(1.6, 99.0, 1.49, CoefficientFunction::Constant(1.54), 1.0)
                .unwrap();
        let check = check_model_bound(&model).unwrap();
        assert_eq!(check.status, CheckStatus::Fail);
        let left = 36.040_584_415_584_41;
        let right = 10.509_604_401_089_36;
        assert!((check.margin - (right - left)).abs() < 1e-9);
    }

    #[test]
    fn model_bound_passes_for_gentle_pumping() {
        let model =
            SingularModelSpec::new(1.6, 99.0, 0.3, CoefficientFunction::Constant(1.54), 1.0)
                .unwrap();
        let check = check_model_bound(&model).unwrap();
        assert_eq!(check.status, CheckStatus::Pass, "{}", check.detail);
    }

    #[test]
    fn global_nonnegativity_certifies_by_term_domination() {
        let p = constant_problem(0.0, 2.0, 1.0, 0.25, 0.5);
        let sp = ShiftedProblem::new(p, 1.2).unwrap();
        let check = check_global_nonnegativity(&sp);
        assert_eq!(check.status, CheckStatus::Pass);
        assert!(check.detail.contains("term domination"));
        assert!((check.margin - (1.44 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn global_nonnegativity_certifies_by_quadratic_form() {
        let p = constant_problem(2.0, 1.0, 0.5, 0.6, 0.8);
        let sp = ShiftedProblem::new(p, 0.5).unwrap();
        let check = check_global_nonnegativity(&sp);
        assert_eq!(check.status, CheckStatus::Pass);
        assert!(check.detail.contains("quadratic"));
        assert!((check.margin - 0.75).abs() < 1e-12);
    }

    #[test]
    fn global_nonnegativity_finds_the_pumping_example_dip() {
        let check = check_global_nonnegativity(&example_shifted());
        assert_eq!(check.status, CheckStatus::Fail);
        let w = check.witness.expect("failures carry a witness");
        // The dip lives on (38.18, 1.4e248).
        assert!(w.x > 38.0 && w.value < 0.0);
        let sp = example_shifted();
        assert!(sp.eval_fm(w.t, w.x).unwrap() < 0.0);
    }

    #[test]
    fn global_nonnegativity_stays_inconclusive_on_a_true_but_unprovable_case() {
        // s oscillates; r tracks s^2 so the pointwise discriminant is a
        // strict -0.1, but the worst-case combination the analytic routes
        // use is positive. Linear interpolation preserves the pointwise
        // bound by convexity of s -> s^2.
        let n = 64;
        let s_tab = crate::grid::GridFunction::from_fn(1.0, n, |t| {
            0.5 + 0.4 * (2.0 * PI * t).sin()
        })
        .unwrap();
        let r_tab = crate::grid::GridFunction::from_fn(1.0, n, |t| {
            let s = 0.5 + 0.4 * (2.0 * PI * t).sin();
            s * s + 0.1
        })
        .unwrap();
        let p = ProblemSpec::new(
            2.0,
            1.0,
            CoefficientFunction::table(r_tab).unwrap(),
            CoefficientFunction::table(s_tab).unwrap(),
            0.6,
            0.8,
        )
        .unwrap();
        let sp = ShiftedProblem::new(p, 0.5).unwrap();
        let check = check_global_nonnegativity(&sp);
        assert_eq!(check.status, CheckStatus::Inconclusive, "{}", check.detail);
        assert!(check.margin >= 0.0);
    }

    #[test]
    fn nonexistence_cases_are_mutually_consistent_on_spot_patterns() {
        // Strictly positive forcing.
        let p = constant_problem(1.0, 1.0, -1.0, 0.3, 0.6);
        let checks = check_nonexistence(&p);
        assert!(checks.iter().any(|c| c.status == CheckStatus::Pass));
        // Strictly negative forcing.
        let p = constant_problem(1.0, -1.0, 1.0, 0.3, 0.6);
        let checks = check_nonexistence(&p);
        assert!(checks.iter().any(|c| c.status == CheckStatus::Pass));
        // Mixed signs prove nothing.
        let p = constant_problem(1.0, 1.0, 1.0, 0.3, 0.6);
        let checks = check_nonexistence(&p);
        assert!(checks.iter().all(|c| c.status == CheckStatus::Fail));
    }

    #[test]
    fn sign_change_roots_match_frozen_values() {
        let lambda = 10.5096;
        let out = sign_change_roots(lambda, 154.0, 149.0, 0.98, 0.99).unwrap();
        assert!((out.y_roots[0] - 1.122_417_561_776_447).abs() < 1e-12);
        assert!((out.y_roots[1] - 13.055_096_330_284_144).abs() < 1e-11);
        assert!((out.x_roots[0] - 103_620.413_538_609_28).abs() / out.x_roots[0] < 1e-10);
        assert!((out.log10_x_roots[1] - 111.578_008_072_093_06).abs() < 1e-9);
    }

    #[test]
    fn sign_change_roots_reject_bad_queries() {
        assert!(matches!(
            sign_change_roots(10.0, 154.0, 149.0, 0.5, 0.6),
            Err(CertifyError::ExponentRelation { .. })
        ));
        assert!(matches!(
            sign_change_roots(100.0, 154.0, 1.0, 0.98, 0.99),
            Err(CertifyError::NoRealRoots { .. })
        ));
        assert!(matches!(
            sign_change_roots(-1.0, 154.0, 149.0, 0.98, 0.99),
            Err(CertifyError::InvalidSignQuery(_))
        ));
    }

    #[test]
    fn report_renderings_are_stable_and_addressable() {
        let mut report = CertificateReport::default();
        report.push(Check::pass("demo.first", 1.5, "ok".into()));
        report.push(Check::fail(
            "demo.second",
            -0.25,
            "bad".into(),
            Some(Witness { t: 0.125, x: 2.0, value: -0.25 }),
        ));
        assert!(report.get("demo.first").is_some());
        assert!(report.any_passed("demo."));
        assert!(!report.any_passed("missing."));
        let machine = report.render_machine();
        assert_eq!(machine, report.render_machine());
        assert!(machine.contains("demo.second.status=FAIL"));
        assert!(machine.contains("demo.second.witness.x="));
        let text = report.render_text();
        assert!(text.contains("[PASS] demo.first"));
        assert!(text.contains("witness:"));
    }
}
