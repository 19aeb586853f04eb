//! Kernel constants of `x'' + a x' + m^2 x` with periodic boundary
//! conditions, across all three damping regimes, plus the resonance
//! rejection just past the admissible range.
//!
//! Run with: cargo run --example green_kernel

use liebau::green::KernelParams;

fn main() {
    let cases = [
        (1.6, 0.7, 1.0),                          // under-damped
        (2.0, 1.0, 1.0),                          // critical
        (1.6, 1.5, 1.0),                          // oscillatory, damped
        (0.0, std::f64::consts::FRAC_PI_2, 1.0),  // oscillatory, no damping
    ];
    for (a, m, period) in cases {
        let k = KernelParams::new(a, m, period).expect("parameters are below resonance");
        println!("a = {a}, m = {m:.6}, T = {period}: {} regime", k.regime);
        println!("  diagonal value (kernel minimum): {:.12}", k.diag);
        println!("  cone constant (certified)      : {:.12}", k.cone_const);
        println!("  cone constant (grid estimate)  : {:.12}", k.cone_const_estimate);
        let integral = k.row_integral(0.25 * period, 2000).unwrap();
        println!("  row integral * m^2             : {:.12} (exact value 1)", integral * m * m);
        println!();
    }

    // At m = pi with a = 0 and T = 1 the kernel diagonal vanishes and
    // positivity is lost; construction refuses.
    let err = KernelParams::new(0.0, std::f64::consts::PI, 1.0).unwrap_err();
    println!("m = pi, a = 0, T = 1 -> {err}");
}
