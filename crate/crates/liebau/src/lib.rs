//! Periodic kernels, mechanical existence certificates, and guaranteed
//! positive periodic solutions for the damped two-power equation
//!
//! ```text
//! x'' + a x' = r(t) x^alpha - s(t) x^beta,    0 < alpha < beta < 1,
//! ```
//!
//! with period-`T` boundary conditions, including the singular pipe-tank
//! (valveless pumping) model
//!
//! ```text
//! u'' + a u' = (1/u) (e(t) - b (u')^2) - c
//! ```
//!
//! which the substitution `u = x^mu`, `mu = 1/(b+1)`, turns into the
//! two-power form.
//!
//! The pieces, bottom to top:
//!
//! - [`grid`]: uniform periodic samples with linear interpolation and CSV io.
//! - [`green`]: the periodic kernel of `x'' + a x' + m^2 x` in all three
//!   damping regimes, its constant diagonal, and the cone constant used by
//!   every certificate.
//! - [`model`]: problem types, the `m^2 x` shift, and the singular-model
//!   change of variables.
//! - [`certify`]: non-existence sign cases, coefficient- and model-level
//!   existence bounds, nonnegativity and slab (localization) certificates,
//!   automatic radii search, and the sign-change root analysis.
//! - [`solver`]: single shooting and Picard iteration on the integral
//!   fixed-point form, with localization verification.
//! - [`config`] / [`cli`]: the `key = value` config format and the command
//!   front end (`certify`, `solve`, `green`, `reproduce-example`).
//!
//! ```
//! use liebau::model::{CoefficientFunction, ProblemSpec};
//! use liebau::green::KernelParams;
//! use liebau::solver::constant_solution;
//!
//! // x'' = 2 x^(1/4) - x^(1/2) has the constant periodic solution x = 16.
//! let p = ProblemSpec::new(
//!     0.0,
//!     1.0,
//!     CoefficientFunction::Constant(2.0),
//!     CoefficientFunction::Constant(1.0),
//!     0.25,
//!     0.5,
//! )
//! .unwrap();
//! assert!((constant_solution(&p).unwrap() - 16.0).abs() < 1e-12);
//!
//! // The shifted operator's kernel is positive below resonance.
//! let kernel = KernelParams::new(0.0, 1.0, 1.0).unwrap();
//! assert!(kernel.diag > 0.0 && kernel.cone_const > 0.0);
//! ```

pub mod certify;
pub mod cli;
pub mod config;
pub mod green;
pub mod grid;
pub mod model;
pub mod solver;

pub use certify::{CertificateReport, Check, CheckStatus, SignAnalysis, Slab, Witness};
pub use green::{KernelParams, Regime};
pub use grid::GridFunction;
pub use model::{CoefficientFunction, ProblemSpec, ShiftedProblem, SingularModelSpec};
pub use solver::{PeriodicSolution, SolverConfig, SolverMethod};
