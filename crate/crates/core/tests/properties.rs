use std::f64::consts::PI;

use besselquad::bessel::{bessel_j, bessel_j_sin_kernel};
use besselquad::gamma_star::{gamma_lower, gamma_star, gamma_star_shift, gamma_upper, kummer_m1};
use besselquad::numerics::{
    gamma_fn, is_nonpositive_integer, principal_arg, principal_log, principal_pow, recip_gamma,
};
use besselquad::quadrature::{periodic_rule, periodic_trapezoid, QuadratureSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(a, b)| Complex64::new(a, b))
}

fn away_from_poles(s: Complex64) -> bool {
    s.re > 0.0 || s.im.abs() > 0.05 || (s.re - s.re.round()).abs() > 0.05
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reciprocal_gamma_inverts_gamma(s in complex(-8.0..12.0, -6.0..6.0)) {
        prop_assume!(away_from_poles(s));
        let prod = recip_gamma(s) * gamma_fn(s).unwrap();
        prop_assert!((prod - 1.0).norm() < 1e-12, "{s}: {prod}");
    }

    #[test]
    fn gamma_functional_equation(s in complex(-8.0..12.0, -6.0..6.0)) {
        prop_assume!(away_from_poles(s));
        let lhs = gamma_fn(s + 1.0).unwrap();
        let rhs = s * gamma_fn(s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm(), "{s}: {lhs} vs {rhs}");
    }

    #[test]
    fn reciprocal_gamma_vanishes_only_at_poles(n in 0u32..40) {
        let s = Complex64::new(-(n as f64), 0.0);
        prop_assert!(is_nonpositive_integer(s));
        prop_assert_eq!(recip_gamma(s), Complex64::new(0.0, 0.0));
        prop_assert!(recip_gamma(s + 1e-9).norm() > 0.0);
    }

    #[test]
    fn integer_powers_match_the_log_form(z in complex(-5.0..5.0, -5.0..5.0), n in -10i32..10) {
        prop_assume!(z.norm() > 1e-3);
        let fast = principal_pow(z, Complex64::new(n as f64, 0.0)).unwrap();
        let slow = (principal_log(z) * n as f64).exp();
        prop_assert!((fast - slow).norm() <= 1e-12 * slow.norm(), "{z}^{n}");
    }

    #[test]
    fn principal_argument_range(re in -10.0f64..10.0, im in -10.0f64..10.0) {
        let a = principal_arg(Complex64::new(re, im));
        prop_assert!(a > -PI && a <= PI);
    }

    #[test]
    fn gamma_star_at_nonpositive_integers_is_a_power(n in 0u32..=8, w in complex(-7.0..7.0, -7.0..7.0)) {
        let (g, _) = gamma_star(Complex64::new(-(n as f64), 0.0), w).unwrap();
        let want = w.powi(n as i32);
        prop_assert!((g - want).norm() <= 1e-12 * want.norm().max(1e-300), "{n}, {w}: {g}");
    }

    #[test]
    fn gamma_star_matches_kummer_form(mu in complex(-3.0..4.0, -1.0..1.0), w in complex(-4.0..4.0, -4.0..4.0)) {
        prop_assume!(!is_nonpositive_integer(mu + 1.0));
        let (g, diag) = gamma_star(mu, w).unwrap();
        let via_kummer = (-w).exp() * kummer_m1(mu, w).unwrap() * recip_gamma(mu + 1.0);
        // the Kummer form carries e^{-w} and the cancellation of M on its own
        let scale = g.norm().max(diag.max_term_mag) * (2.0 * w.norm()).exp();
        prop_assert!((g - via_kummer).norm() <= 1e-13 * scale, "{mu}, {w}: {g} vs {via_kummer}");
    }

    #[test]
    fn order_recurrence(mu in complex(-3.0..4.0, -1.0..1.0), w in complex(-5.0..5.0, -5.0..5.0)) {
        prop_assume!(w.norm() > 0.5);
        let (base, _) = gamma_star(mu, w).unwrap();
        let (next, _) = gamma_star(mu + 1.0, w).unwrap();
        let shifted = gamma_star_shift(mu, 1, w, base).unwrap();
        let scale = (base.norm() + ((-w).exp() * recip_gamma(mu + 1.0)).norm()) / w.norm();
        prop_assert!((shifted - next).norm() <= 1e-12 * scale.max(next.norm()), "{mu}, {w}");
    }

    #[test]
    fn incomplete_gamma_pieces_add_up(mu in complex(0.2..6.0, -2.0..2.0), w in complex(0.0..8.0, -5.0..5.0)) {
        let total = gamma_fn(mu).unwrap();
        let sum = gamma_lower(mu, w).unwrap() + gamma_upper(mu, w).unwrap();
        let scale = total.norm().max(gamma_lower(mu, w).unwrap().norm());
        prop_assert!((sum - total).norm() <= 1e-12 * scale);
    }

    #[test]
    fn periodic_rule_is_linear(a in complex(-3.0..3.0, -3.0..3.0), b in complex(-3.0..3.0, -3.0..3.0), p in 1usize..5) {
        let f = |t: f64| Ok(Complex64::new(t.cos(), 0.0).exp());
        let g = move |t: f64| Ok(Complex64::from_polar(1.0, p as f64 * t) * t.sin());
        let (fi, _) = periodic_rule(f, 64).unwrap();
        let (gi, _) = periodic_rule(g, 64).unwrap();
        let (combo, _) = periodic_rule(|t| Ok(a * f(t)? + b * g(t)?), 64).unwrap();
        let scale = a.norm() * fi.norm() + b.norm() * 2.0 * PI;
        prop_assert!((combo - (a * fi + b * gi)).norm() <= 1e-14 * scale.max(1.0));
    }

    #[test]
    fn adaptive_rule_is_bit_reproducible(x in -3.0f64..3.0) {
        let spec = QuadratureSpec::default();
        let f = |t: f64| Ok(Complex64::new(0.0, x * t.sin()).exp());
        let a = periodic_trapezoid(f, &spec).unwrap();
        let b = periodic_trapezoid(f, &spec).unwrap();
        prop_assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        prop_assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
        prop_assert_eq!(a.nodes_used, b.nodes_used);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quiet_results_meet_their_tolerance(mu in complex(-3.0..4.0, -1.0..1.0), z in complex(-6.0..6.0, -6.0..6.0)) {
        prop_assume!(z.norm() > 0.05);
        let spec = QuadratureSpec::default();
        let out = bessel_j(mu, z, &spec).unwrap();
        if out.warnings.is_empty() {
            prop_assert!(out.err_est <= spec.tolerance(out.value), "{mu}, {z}: {out:?}");
        }
    }

    #[test]
    fn kernels_agree_within_their_estimates(mu in complex(-3.0..4.0, -1.0..1.0), z in complex(-6.0..6.0, -6.0..6.0)) {
        prop_assume!(z.norm() > 0.05);
        let spec = QuadratureSpec::default();
        let a = bessel_j(mu, z, &spec).unwrap();
        let b = bessel_j_sin_kernel(mu, z, &spec).unwrap();
        prop_assert!((a.value - b.value).norm() <= a.err_est + b.err_est, "{mu}, {z}");
    }

    #[test]
    fn evaluation_is_bit_reproducible(mu in complex(-3.0..4.0, -1.0..1.0), z in complex(-6.0..6.0, -6.0..6.0)) {
        prop_assume!(z.norm() > 0.05);
        let spec = QuadratureSpec::default();
        prop_assert_eq!(bessel_j(mu, z, &spec).unwrap(), bessel_j(mu, z, &spec).unwrap());
    }

    #[test]
    fn integer_orders_are_real_on_the_real_axis(m in -6i32..=6, x in -8.0f64..8.0) {
        prop_assume!(x.abs() > 0.05);
        let v = bessel_j(Complex64::new(m as f64, 0.0), Complex64::new(x, 0.0), &QuadratureSpec::default())
            .unwrap()
            .value;
        prop_assert!(v.im.abs() <= 1e-12 * (1.0 + v.re.abs()), "J_{m}({x}) = {v}");
    }
}
