//! Where the shifted profile `lambda x - r x^alpha + s x^beta` changes sign
//! for the pipe-tank coefficients: with the printed threshold value 10.5096
//! the profile is negative only between two astronomically separated states,
//! which is why no slab certificate can work near them.
//!
//! Run with: cargo run --example sign_analysis

use liebau::certify::sign_change_roots;

fn main() {
    let (r, s, alpha, beta) = (154.0, 149.0, 0.98, 0.99);
    // Largest admissible shift-squared for a = 1.6, T = 1.
    let threshold = (std::f64::consts::PI).powi(2) + (1.6f64 / 2.0).powi(2);
    println!("resonance threshold (pi/T)^2 + (a/2)^2 = {threshold:.6}");

    let roots = sign_change_roots(threshold, r, s, alpha, beta).unwrap();
    println!(
        "substituted variable y = x^(beta - alpha): roots {:.9} and {:.9}",
        roots.y_roots[0], roots.y_roots[1]
    );
    println!("first sign change : x1 = {:.4e}", roots.x_roots[0]);
    println!(
        "second sign change: x2 = 10^{:.4} (about {:.4e})",
        roots.log10_x_roots[1],
        10f64.powf(roots.log10_x_roots[1] - 111.0) * 1e111
    );
    println!();
    println!(
        "the shifted profile is nonnegative on [0, {:.4e}] and beyond 10^{:.1},",
        roots.x_roots[0], roots.log10_x_roots[1]
    );
    println!("so certificates anchored below x1 (like the slab [27, 29]) are safe.");
}
