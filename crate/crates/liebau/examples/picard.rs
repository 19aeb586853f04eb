//! Picard iteration on the integral fixed-point form
//! `x = G_m[f(., x) + m^2 x]`: a contraction case that converges from far
//! away, and the pipe-tank example where the equilibrium repels the map and
//! the solver honestly reports non-convergence instead of a fake answer.
//!
//! Run with: cargo run --example picard

use liebau::certify::Slab;
use liebau::grid::GridFunction;
use liebau::model::{CoefficientFunction, ProblemSpec, ShiftedProblem, SingularModelSpec};
use liebau::solver::{picard_solve, SolverConfig, SolverError, SolverMethod};

fn main() {
    // x'' = 2 x^(1/4) - x^(1/2): with shift m = 1 the integral map is a
    // contraction on the positive half-line and walks from 10 to 16.
    let p = ProblemSpec::new(
        0.0,
        1.0,
        CoefficientFunction::Constant(2.0),
        CoefficientFunction::Constant(1.0),
        0.25,
        0.5,
    )
    .unwrap();
    let sp = ShiftedProblem::new(p, 1.0).unwrap();
    let seed = GridFunction::constant(1.0, 256, 10.0).unwrap();
    let cfg = SolverConfig { grid_size: 256, method: SolverMethod::Picard, ..Default::default() };
    let sol = picard_solve(&sp, &seed, &cfg, None).unwrap();
    println!("contraction case (x'' = 2 x^0.25 - x^0.5, m = 1):");
    println!("  iterations     : {}", sol.iterations);
    println!("  solution range : [{:.12}, {:.12}] (exact constant 16)", sol.bounds.0, sol.bounds.1);
    println!("  grid residual  : {:.3e}", sol.ode_residual);
    println!();

    // The pipe-tank equilibrium x* = (154/149)^100 repels the integral map:
    // the linearization has gain |1 + f'(x*)/m^2| of about 1.9 at m = 0.7.
    let model = SingularModelSpec::new(1.6, 99.0, 1.49, CoefficientFunction::Constant(1.54), 1.0)
        .unwrap();
    let sp = ShiftedProblem::new(model.regularize().unwrap(), 0.7).unwrap();
    let slab = Slab::new(27.0, 29.0, sp.kernel.cone_const).unwrap();
    let seed = GridFunction::constant(1.0, 128, 28.0).unwrap();
    let cfg = SolverConfig {
        grid_size: 128,
        max_iterations: 60,
        method: SolverMethod::Picard,
        ..Default::default()
    };
    println!("pipe-tank example at m = 0.7, iterates projected into the slab [27, 29]:");
    match picard_solve(&sp, &seed, &cfg, Some(&slab)) {
        Err(SolverError::NonConvergence { last, steps }) => {
            println!("  gave up after {steps} iterations, last update {last:.3e}");
            println!("  (expected: the equilibrium repels this map; use shooting instead)");
        }
        other => println!("  unexpected outcome: {other:?}"),
    }
}
