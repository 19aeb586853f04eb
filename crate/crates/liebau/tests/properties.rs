//! Randomized invariants: kernel ordering and cone preservation, quadrature
//! identities, soundness of the slab checks in both directions, radii
//! re-certification, and the change-of-variables round trip.

use proptest::prelude::*;

use liebau::certify::{
    check_global_nonnegativity, check_nonexistence, check_slab_conditions, suggest_radii,
    CertifyError, CheckStatus, Slab,
};
use liebau::green::KernelParams;
use liebau::grid::GridFunction;
use liebau::model::{
    singularize_solution, CoefficientFunction, ProblemSpec, ShiftedProblem,
};

fn resonance_bound(a: f64, period: f64) -> f64 {
    ((std::f64::consts::PI / period).powi(2) + (a / 2.0).powi(2)).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn interpolation_stays_within_extrema(
        mut values in prop::collection::vec(-100.0f64..100.0, 3..32),
        t in -5.0f64..15.0,
    ) {
        let first = values[0];
        values.push(first);
        let table = CoefficientFunction::table(GridFunction::new(2.0, values).unwrap()).unwrap();
        let (lo, hi) = table.extrema();
        let y = table.eval(t);
        prop_assert!(y >= lo - 1e-9 && y <= hi + 1e-9, "{y} outside [{lo}, {hi}]");
    }

    #[test]
    fn singular_change_of_variables_round_trips(
        values in prop::collection::vec(0.05f64..50.0, 4..64),
        mu in 0.002f64..0.5,
    ) {
        let mut wrapped = values;
        let first = wrapped[0];
        wrapped.push(first);
        let x = GridFunction::new(1.0, wrapped).unwrap();
        let u = singularize_solution(&x, mu).unwrap();
        for (orig, mapped) in x.values().iter().zip(u.values()) {
            let back = mapped.powf(1.0 / mu);
            prop_assert!((back - orig).abs() <= 1e-9 * orig.abs().max(1.0));
        }
    }

    #[test]
    fn proposed_radii_recertify_their_inequalities(
        a in 0.0f64..3.0,
        period in 0.4f64..2.5,
        r in 0.1f64..150.0,
        s in 0.05f64..150.0,
        alpha in 0.1f64..0.7,
        beta_gap in 0.1f64..0.28,
        frac in 0.1f64..0.95,
    ) {
        let beta = alpha + beta_gap;
        let p = ProblemSpec::new(
            a,
            period,
            CoefficientFunction::Constant(r),
            CoefficientFunction::Constant(s),
            alpha,
            beta,
        )
        .unwrap();
        let m = frac * resonance_bound(a, period);
        let sp = ShiftedProblem::new(p, m).unwrap();
        match suggest_radii(&sp) {
            Ok(slab) => {
                let c = slab.cone;
                let m2 = m * m;
                let inner =
                    (1.0 - c) * m2 * slab.r1.powf(1.0 - alpha) + s * slab.r1.powf(beta - alpha);
                prop_assert!(
                    inner <= r * c.powf(alpha) * (1.0 + 1e-10),
                    "inner inequality broke: {inner} vs {}",
                    r * c.powf(alpha)
                );
                let outer = s * c.powf(beta) * slab.r2.powf(beta - alpha);
                prop_assert!(r <= outer * (1.0 + 1e-10), "outer inequality broke: {r} vs {outer}");
            }
            Err(CertifyError::RadiiOverflow(_)) => {}
            Err(e) => prop_assert!(false, "unexpected radii failure: {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_ordering_chain_and_diagonal_constancy(
        a in 0.0f64..4.0,
        period in 0.3f64..3.0,
        frac in 0.05f64..0.95,
    ) {
        let m = frac * resonance_bound(a, period);
        let k = KernelParams::new(a, m, period).unwrap();
        prop_assert!(k.diag > 0.0);
        prop_assert!(k.cone_const > 0.0 && k.cone_const < 1.0);
        prop_assert!(k.cone_const <= k.cone_const_estimate + 1e-9);
        for i in 0..=40 {
            let t = (period * i as f64 / 40.0).min(period);
            let on_diag = k.eval(t, t).unwrap();
            prop_assert!((on_diag - k.diag).abs() <= 1e-11 * k.diag.max(1.0));
            for j in 0..=40 {
                let s = (period * j as f64 / 40.0).min(period);
                let g = k.eval(t, s).unwrap();
                prop_assert!(g > 0.0, "kernel not positive at ({t}, {s})");
                prop_assert!(g >= k.diag * (1.0 - 1e-11), "diagonal is not the minimum");
                prop_assert!(k.diag >= k.cone_const * g * (1.0 - 1e-11), "cone chain broke");
            }
        }
    }

    #[test]
    fn row_integral_approximates_inverse_shift_squared(
        a in 0.0f64..4.0,
        period in 0.3f64..3.0,
        frac in 0.05f64..0.9,
        pos in 0.0f64..1.0,
    ) {
        let m = frac * resonance_bound(a, period);
        let k = KernelParams::new(a, m, period).unwrap();
        let integral = k.row_integral(pos * period, 1000).unwrap();
        let rel = (integral * m * m - 1.0).abs();
        prop_assert!(rel < 1e-4, "row integral off by {rel:e}");
    }

    #[test]
    fn integral_map_preserves_the_cone(
        a in 0.0f64..3.0,
        period in 0.4f64..2.0,
        frac in 0.05f64..0.9,
        coarse in prop::collection::vec(0.0f64..100.0, 8),
    ) {
        let m = frac * resonance_bound(a, period);
        let k = KernelParams::new(a, m, period).unwrap();
        let mut wrapped = coarse;
        wrapped.push(wrapped[0]);
        let shape = GridFunction::new(period, wrapped).unwrap();
        let h = GridFunction::from_fn(period, 2048, |t| shape.eval_linear(t)).unwrap();
        let out = k.apply(&h);
        let (lo, hi) = (out.min(), out.max());
        prop_assert!(lo >= 0.0, "image of a nonnegative function dipped to {lo}");
        prop_assert!(
            lo >= k.cone_const * hi * (1.0 - 1e-8),
            "cone not preserved: min {lo} vs cone * max {}",
            k.cone_const * hi
        );
    }

    #[test]
    fn slab_checks_are_sound_in_both_directions(
        r0 in 0.5f64..5.0,
        s0 in 0.5f64..5.0,
        wiggle in 0.0f64..0.3,
        alpha in 0.2f64..0.6,
        beta_gap in 0.15f64..0.3,
        a in 0.0f64..2.5,
        frac in 0.15f64..0.9,
        u1 in 0.3f64..0.95,
        u2 in 1.05f64..30.0,
    ) {
        let beta = alpha + beta_gap;
        let period = 1.0;
        let r = CoefficientFunction::table(
            GridFunction::from_fn(period, 8, |t| {
                r0 * (1.0 + wiggle * (2.0 * std::f64::consts::PI * t).sin())
            })
            .unwrap(),
        )
        .unwrap();
        let s = CoefficientFunction::table(
            GridFunction::from_fn(period, 8, |t| {
                s0 * (1.0 + 0.7 * wiggle * (2.0 * std::f64::consts::PI * t).cos())
            })
            .unwrap(),
        )
        .unwrap();
        let p = ProblemSpec::new(a, period, r, s, alpha, beta).unwrap();
        let m = frac * resonance_bound(a, period);
        let sp = ShiftedProblem::new(p, m).unwrap();
        let x_star = (r0 / s0).powf(1.0 / (beta - alpha));
        let slab = Slab::new(x_star * u1, x_star * u2, sp.kernel.cone_const).unwrap();
        let m2 = m * m;

        // PASS must survive a 10x denser direct scan; FAIL must carry a
        // witness that re-evaluates on the violating side.
        for check in check_slab_conditions(&sp, &slab, 512).unwrap() {
            let (x_from, x_to, thresh, lower) = match check.name.as_str() {
                "slab.nonnegativity" => (slab.x_lo(), slab.r2, 0.0, true),
                "slab.inner_bound" => (slab.x_lo(), slab.r1, m2 * slab.r1, true),
                "slab.outer_bound" => (slab.cone * slab.r2, slab.r2, m2 * slab.r2, false),
                other => {
                    prop_assert!(false, "unexpected check {other}");
                    unreachable!()
                }
            };
            match check.status {
                CheckStatus::Pass => {
                    for t in sp.problem.t_nodes() {
                        for k in 0..=5120u32 {
                            let x = x_from + (x_to - x_from) * k as f64 / 5120.0;
                            let fm = sp.eval_fm(t, x).unwrap();
                            let slack = if lower { fm - thresh } else { thresh - fm };
                            prop_assert!(
                                slack > 0.0,
                                "{} passed but dense scan violates at t = {t}, x = {x}",
                                check.name
                            );
                        }
                    }
                }
                CheckStatus::Fail => {
                    let w = check.witness.expect("failures carry a witness");
                    let fm = sp.eval_fm(w.t, w.x).unwrap();
                    let slack = if lower { fm - thresh } else { thresh - fm };
                    prop_assert!(
                        slack < 0.0,
                        "{} failed but its witness does not violate (slack {slack})",
                        check.name
                    );
                    prop_assert!((fm - w.value).abs() <= 1e-9 * fm.abs().max(1.0));
                }
                CheckStatus::Inconclusive => {}
            }
        }
    }
}

#[test]
fn nonexistence_directions_are_mutually_exclusive() {
    let coeff = |lo: f64, hi: f64| -> CoefficientFunction {
        if lo == hi {
            CoefficientFunction::Constant(lo)
        } else {
            CoefficientFunction::table(GridFunction::new(1.0, vec![lo, hi, lo]).unwrap()).unwrap()
        }
    };
    let levels = [-1.0, 0.0, 1.0];
    for &r_lo in &levels {
        for &r_hi in &levels {
            for &s_lo in &levels {
                for &s_hi in &levels {
                    if r_lo > r_hi || s_lo > s_hi {
                        continue;
                    }
                    let p =
                        ProblemSpec::new(0.0, 1.0, coeff(r_lo, r_hi), coeff(s_lo, s_hi), 0.3, 0.6)
                            .unwrap();
                    let checks = check_nonexistence(&p);
                    let positive_forcing = checks[..2].iter().any(|c| c.status == CheckStatus::Pass);
                    let negative_forcing = checks[2..].iter().any(|c| c.status == CheckStatus::Pass);
                    assert!(
                        !(positive_forcing && negative_forcing),
                        "both forcing signs certified for ({r_lo},{r_hi},{s_lo},{s_hi})"
                    );
                }
            }
        }
    }
}

#[test]
fn nonnegativity_margin_decreases_as_the_sink_grows() {
    let mut margins = Vec::new();
    for s in [0.2, 0.6, 1.0] {
        let p = ProblemSpec::new(
            0.0,
            1.0,
            CoefficientFunction::Constant(2.0),
            CoefficientFunction::Constant(s),
            0.25,
            0.5,
        )
        .unwrap();
        let sp = ShiftedProblem::new(p, 1.2).unwrap();
        let check = check_global_nonnegativity(&sp);
        assert_eq!(check.status, CheckStatus::Pass, "term domination should hold for s = {s}");
        margins.push(check.margin);
    }
    assert!(
        margins[0] > margins[1] && margins[1] > margins[2],
        "margins not monotone: {margins:?}"
    );
}
