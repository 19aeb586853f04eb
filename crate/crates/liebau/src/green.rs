//! Periodic Green's function of `x'' + a x' + m^2 x` on `[0, T]`.
//!
//! For every admissible `(a, m, T)` the kernel is a function of the wrapped
//! offset alone, `G(t, s) = g((t - s) mod T)`, where `g` solves the
//! homogeneous equation on `(0, T)`, wraps continuously (`g(0) = g(T)`), and
//! carries the unit derivative jump `g'(0+) - g'(T-) = 1`. The diagonal
//! `G(s, s) = g(0)` is therefore constant, it is the minimum of the kernel,
//! and every row integrates to exactly `1/m^2`.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::grid::GridFunction;

#[derive(Debug, Error)]
pub enum GreenError {
    #[error("kernel parameters need a >= 0, m > 0, T > 0 (got a = {a}, m = {m}, T = {period})")]
    InvalidParameter { a: f64, m: f64, period: f64 },
    #[error(
        "resonant or beyond: m^2 = {m_squared} >= (pi/T)^2 + (a/2)^2 = {bound}; \
         the kernel diagonal vanishes there and positivity fails"
    )]
    ResonantOrBeyond { m_squared: f64, bound: f64 },
    #[error("point (t, s) = ({t}, {s}) outside [0, {period}]^2")]
    DomainError { t: f64, s: f64, period: f64 },
}

/// Damping regimes of the shifted linear operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `0 < m < a/2`: two distinct real characteristic roots.
    UnderDamped,
    /// `m = a/2`: double root.
    Critical,
    /// `a/2 < m` with `m^2 < (pi/T)^2 + (a/2)^2`: complex roots, non-resonant.
    Oscillatory,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::UnderDamped => "under-damped",
            Regime::Critical => "critical",
            Regime::Oscillatory => "oscillatory",
        })
    }
}

/// Regime-specific kernel constants.
#[derive(Debug, Clone, Copy)]
pub enum RegimeConstants {
    /// Characteristic roots `lambda1 < lambda2 < 0`.
    UnderDamped { lambda1: f64, lambda2: f64 },
    /// `kappa = mT / (e^{mT} - 1)`, always in `(0, 1)`.
    Critical { kappa: f64 },
    /// `gamma = -a/2`, `delta = sqrt(4m^2 - a^2)/2`,
    /// `denom = 1 - 2 e^{gamma T} cos(delta T) + e^{2 gamma T}`.
    Oscillatory { gamma: f64, delta: f64, denom: f64 },
}

/// Below this distance of `m` from `a/2` the critical formula is used: the
/// under-damped form divides by `lambda2 - lambda1` and loses precision,
/// while the two formulas agree to well under 1e-6 across the band.
pub const CRITICAL_BAND: f64 = 1e-9;

/// Classifies `(a, m, T)` into its damping regime, rejecting resonance.
pub fn classify_regime(a: f64, m: f64, period: f64) -> Result<Regime, GreenError> {
    if !(a.is_finite() && a >= 0.0 && m.is_finite() && m > 0.0 && period.is_finite() && period > 0.0)
    {
        return Err(GreenError::InvalidParameter { a, m, period });
    }
    let bound = (PI / period).powi(2) + (a / 2.0).powi(2);
    if m * m >= bound {
        return Err(GreenError::ResonantOrBeyond { m_squared: m * m, bound });
    }
    if a > 0.0 && (m - a / 2.0).abs() < CRITICAL_BAND {
        Ok(Regime::Critical)
    } else if m < a / 2.0 {
        Ok(Regime::UnderDamped)
    } else {
        Ok(Regime::Oscillatory)
    }
}

/// The kernel together with all derived constants for one `(a, m, T)`.
#[derive(Debug, Clone)]
pub struct KernelParams {
    pub a: f64,
    pub m: f64,
    pub period: f64,
    pub regime: Regime,
    pub constants: RegimeConstants,
    /// The constant diagonal value `G(s, s)`, which is also `min G`.
    pub diag: f64,
    /// Certified lower bound for the cone constant `c_m = diag / max G`.
    /// Exact in the under-damped, critical, and zero-damping oscillatory
    /// regimes; the bound `e^{gamma T} cos(delta T / 2)` otherwise.
    pub cone_const: f64,
    /// Non-certified estimate of the true `c_m` from grid maximization.
    pub cone_const_estimate: f64,
}

impl KernelParams {
    pub fn new(a: f64, m: f64, period: f64) -> Result<Self, GreenError> {
        let regime = classify_regime(a, m, period)?;
        let constants = match regime {
            Regime::UnderDamped => {
                let d = ((a - 2.0 * m) * (a + 2.0 * m)).sqrt();
                RegimeConstants::UnderDamped {
                    lambda1: (-a - d) / 2.0,
                    lambda2: (-a + d) / 2.0,
                }
            }
            Regime::Critical => {
                // mT e^{-mT} / (1 - e^{-mT}): overflow-safe for large mT.
                let z = m * period;
                RegimeConstants::Critical { kappa: z * (-z).exp() / (-(-z).exp_m1()) }
            }
            Regime::Oscillatory => {
                let gamma = -a / 2.0;
                let delta = ((2.0 * m - a) * (2.0 * m + a)).sqrt() / 2.0;
                let p = (gamma * period).exp();
                RegimeConstants::Oscillatory {
                    gamma,
                    delta,
                    denom: 1.0 - 2.0 * p * (delta * period).cos() + p * p,
                }
            }
        };
        let diag = slice(&constants, m, period, 0.0);
        let cone_const = certified_cone_const(a, m, period, &constants);
        let mut params = Self {
            a,
            m,
            period,
            regime,
            constants,
            diag,
            cone_const,
            cone_const_estimate: f64::NAN,
        };
        params.cone_const_estimate = params.diag / params.grid_max();
        debug_assert!(params.diag > 0.0);
        debug_assert!(params.cone_const > 0.0 && params.cone_const < 1.0);
        debug_assert!(params.cone_const <= params.cone_const_estimate + 1e-9);
        Ok(params)
    }

    /// Kernel value `G(t, s)` for `(t, s)` in `[0, T]^2`.
    pub fn eval(&self, t: f64, s: f64) -> Result<f64, GreenError> {
        if !(0.0..=self.period).contains(&t) || !(0.0..=self.period).contains(&s) {
            return Err(GreenError::DomainError { t, s, period: self.period });
        }
        Ok(self.slice_at(t, s))
    }

    /// Composite-trapezoid approximation of `integral of G(t, s) ds` with
    /// `n` subintervals in total, split at the diagonal kink `s = t` so the
    /// rule sees two smooth pieces. Converges to `1/m^2` at trapezoid order.
    pub fn row_integral(&self, t: f64, n: usize) -> Result<f64, GreenError> {
        assert!(n >= 2, "row_integral needs at least two subintervals");
        if !(0.0..=self.period).contains(&t) {
            return Err(GreenError::DomainError { t, s: 0.0, period: self.period });
        }
        let trapezoid = |lo: f64, hi: f64, k: usize| -> f64 {
            let h = (hi - lo) / k as f64;
            let mut acc = 0.5 * (self.slice_at(t, lo) + self.slice_at(t, hi));
            for i in 1..k {
                acc += self.slice_at(t, lo + i as f64 * h);
            }
            acc * h
        };
        if t <= 0.0 || t >= self.period {
            return Ok(trapezoid(0.0, self.period, n));
        }
        let n1 = ((n as f64 * t / self.period).round() as usize).clamp(1, n - 1);
        Ok(trapezoid(0.0, t, n1) + trapezoid(t, self.period, n - n1))
    }

    /// Applies the Green operator `h -> integral of G(., s) h(s) ds` on the
    /// grid of `h`, returning samples at the same nodes.
    ///
    /// Quadrature is the periodic trapezoid rule plus the kink correction
    /// `step^2 / 12 * h(t_i)` per row: the kernel's `s`-derivative drops by
    /// exactly 1 across `s = t`, and the Euler-Maclaurin term of that jump
    /// cancels the leading quadrature error, restoring near-`step^4`
    /// accuracy.
    pub fn apply(&self, h: &GridFunction) -> GridFunction {
        let n = h.n();
        let step = h.period() / n as f64;
        let g: Vec<f64> = (0..n)
            .map(|k| slice(&self.constants, self.m, self.period, k as f64 * step))
            .collect();
        let hv = h.values();
        let mut out = vec![0.0; n + 1];
        for (i, o) in out.iter_mut().enumerate() {
            let row = i % n;
            // Nodes 0 and n wrap onto the same kernel offset; trapezoid
            // half-weights put their samples back together.
            let mut acc = 0.5 * g[row] * (hv[0] + hv[n]);
            for j in 1..n {
                acc += g[(row + n - j) % n] * hv[j];
            }
            *o = acc * step + step * step / 12.0 * hv[i];
        }
        GridFunction::new(h.period(), out).expect("quadrature output stays finite")
    }

    /// Resonance threshold `(pi/T)^2 + (a/2)^2` for this damping and period.
    pub fn resonance_bound_squared(&self) -> f64 {
        (PI / self.period).powi(2) + (self.a / 2.0).powi(2)
    }

    fn slice_at(&self, t: f64, s: f64) -> f64 {
        let mut tau = t - s;
        if tau < 0.0 {
            tau += self.period;
        }
        slice(&self.constants, self.m, self.period, tau)
    }

    /// Grid maximization of the kernel slice: 501-point scan over the offset
    /// plus three golden-section refinements around the best node.
    fn grid_max(&self) -> f64 {
        const N: usize = 500;
        let h = self.period / N as f64;
        let f = |tau: f64| slice(&self.constants, self.m, self.period, tau);
        let mut best_k = 0;
        let mut best = f64::NEG_INFINITY;
        for k in 0..=N {
            let v = f(k as f64 * h);
            if v > best {
                best = v;
                best_k = k;
            }
        }
        let lo = (best_k as f64 * h - h).max(0.0);
        let hi = (best_k as f64 * h + h).min(self.period);
        best.max(f(golden_max(f, lo, hi, 3)))
    }
}

/// The kernel as a function of the wrapped offset `tau = (t - s) mod T`.
fn slice(c: &RegimeConstants, m: f64, period: f64, tau: f64) -> f64 {
    match *c {
        RegimeConstants::UnderDamped { lambda1, lambda2 } => {
            ((lambda2 * tau).exp() / (1.0 - (lambda2 * period).exp())
                - (lambda1 * tau).exp() / (1.0 - (lambda1 * period).exp()))
                / (lambda2 - lambda1)
        }
        RegimeConstants::Critical { .. } => {
            // Double-root limit of the under-damped slice. Decaying
            // exponentials only, so large mT cannot overflow.
            let one_minus_em = -(-m * period).exp_m1(); // 1 - e^{-mT}
            let tail = period * (-m * period).exp(); // T e^{-mT}
            (-m * tau).exp() * (tau * one_minus_em + tail) / (one_minus_em * one_minus_em)
        }
        RegimeConstants::Oscillatory { gamma, delta, denom } => {
            ((gamma * (period + tau)).exp() * (delta * (period - tau)).sin()
                + (gamma * tau).exp() * (delta * tau).sin())
                / (delta * denom)
        }
    }
}

fn certified_cone_const(a: f64, m: f64, period: f64, c: &RegimeConstants) -> f64 {
    match *c {
        RegimeConstants::UnderDamped { lambda1, lambda2 } => {
            let e1 = (lambda1 * period).exp();
            let e2 = (lambda2 * period).exp();
            let q = ((1.0 - e2) * lambda1) / ((1.0 - e1) * lambda2);
            let q_pow = (lambda1 / (lambda2 - lambda1) * q.ln()).exp();
            -lambda2 / (lambda2 - lambda1) * (e2 - e1) / ((1.0 - e2) * q_pow)
        }
        RegimeConstants::Critical { kappa } => kappa * (1.0 - kappa).exp(),
        RegimeConstants::Oscillatory { gamma, delta, .. } => {
            if a == 0.0 {
                (m * period / 2.0).cos()
            } else {
                (gamma * period).exp() * (delta * period / 2.0).cos()
            }
        }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        x1
    } else {
        x2
    }
}
