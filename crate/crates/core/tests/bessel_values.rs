use std::f64::consts::PI;

use besselquad::bessel::*;
use besselquad::numerics::principal_pow;
use besselquad::oracles::{deriv_binomial_oracle, series_i, series_j, series_j_shifted, ORACLE_TOL};
use besselquad::quadrature::QuadratureSpec;
use besselquad::Error;
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn assert_close(got: Complex64, want: Complex64, tol: f64) {
    let err = (got - want).norm();
    assert!(
        err <= tol * want.norm() || err <= 1e-12,
        "got {got}, want {want}, err {err:.3e}"
    );
}

fn j_series(mu: Complex64, z: Complex64) -> Complex64 {
    series_j(mu, z, ORACLE_TOL).unwrap().0
}

#[test]
fn cos_kernel_examples() {
    assert_eq!(bessel_j(c(0.0), c(0.0), &spec()).unwrap().value, c(1.0));
    assert_close(bessel_j(c(1.0), c(1.0), &spec()).unwrap().value, c(0.440_050_585_744_933_5), 1e-12);
    let closed = (1.0 / PI).sqrt() * 2.0f64.sin();
    assert!((closed - 0.513_016_136_5).abs() < 1e-10);
    assert_close(bessel_j(c(0.5), c(2.0), &spec()).unwrap().value, c(closed), 1e-12);
    let z = Complex64::new(1.0, 1.0);
    let want = Complex64::new(0.038_688_922_030_869_32, -0.928_836_790_820_571_7);
    assert_close(j_series(c(-2.5), z), want, 1e-14);
    assert_close(bessel_j(c(-2.5), z, &spec()).unwrap().value, want, 1e-9);
}

#[test]
fn sin_kernel_examples() {
    assert_eq!(bessel_j_sin_kernel(c(0.0), c(0.0), &spec()).unwrap().value, c(1.0));
    assert_close(
        bessel_j_sin_kernel(c(2.0), c(3.0), &spec()).unwrap().value,
        c(0.486_091_260_585_891),
        1e-12,
    );
    let (mu, z) = (Complex64::new(0.5, 0.5), Complex64::new(2.0, -1.0));
    let a = bessel_j_sin_kernel(mu, z, &spec()).unwrap();
    let b = bessel_j(mu, z, &spec()).unwrap();
    assert_close(a.value, b.value, 1e-9);
    assert!((a.value - b.value).norm() <= a.err_est + b.err_est);
}

#[test]
fn shifted_order_examples() {
    let (mu, z) = (Complex64::new(0.3, -0.2), Complex64::new(1.5, 0.5));
    let a = bessel_j_shifted(mu, 0, z, &spec()).unwrap();
    let b = bessel_j_sin_kernel(mu, z, &spec()).unwrap();
    assert_eq!(a, b);
    let v = bessel_j_shifted(c(0.3), 4, c(2.0), &spec()).unwrap().value;
    assert_close(v, c(0.021_682_656_629_565_807), 1e-9);
    let v = bessel_j_shifted(c(1.0), 2, c(5.0), &spec()).unwrap().value;
    assert_close(v, c(0.364_831_230_613_667), 1e-9);
}

#[test]
fn fourier_coefficient_examples() {
    let (mu, z) = (Complex64::new(0.4, 0.1), Complex64::new(1.0, 0.5));
    let scale = principal_pow(z * 0.5, -mu).unwrap() * (2.0 * PI);
    let k0 = kappa_fourier_coeff(0, mu, z, &spec()).unwrap().value;
    assert_close(k0, scale * j_series(mu, z), 1e-9);

    let k2 = kappa_fourier_coeff(2, c(1.5), c(1.0), &spec()).unwrap().value;
    let want = principal_pow(c(0.5), c(-1.5)).unwrap() * (2.0 * PI) * 0.032_156_587_616_943_4;
    assert_close(k2, want, 1e-9);
    let shifted = series_j_shifted(c(1.5), 2, c(1.0), ORACLE_TOL).unwrap();
    assert_close(shifted, c(0.032_156_587_616_943_4), 1e-14);

    let km3 = kappa_fourier_coeff(-3, c(0.5), c(2.0), &spec()).unwrap().value;
    let want = 2.0 * PI * 0.068_517_549_985_127_07;
    assert_close(km3, c(want), 1e-9);
}

#[test]
fn modified_bessel_examples() {
    assert_eq!(bessel_i(c(0.0), c(0.0), &spec()).unwrap().value, c(1.0));
    assert_close(bessel_i(c(0.0), c(1.0), &spec()).unwrap().value, c(1.266_065_877_752_008_4), 1e-12);
    let (mu, z) = (c(1.7), Complex64::new(2.0, 1.0));
    let i_val = bessel_i(mu, z, &spec()).unwrap().value;
    let rotated = (-Complex64::i() * mu * (PI / 2.0)).exp()
        * bessel_j(mu, Complex64::i() * z, &spec()).unwrap().value;
    assert_close(i_val, rotated, 1e-9);
    assert_close(i_val, series_i(mu, z, ORACLE_TOL).unwrap(), 1e-9);
}

#[test]
fn derivative_examples() {
    let (mu, z) = (Complex64::new(1.2, 0.3), c(2.5));
    let d0 = bessel_j_deriv(mu, c(0.0), z, &spec()).unwrap();
    assert_eq!(d0, bessel_j_sin_kernel(mu, z, &spec()).unwrap());
    assert_close(d0.value, bessel_j(mu, z, &spec()).unwrap().value, 1e-12);

    let d = bessel_j_deriv(c(0.0), c(1.0), c(1.0), &spec()).unwrap().value;
    assert_close(d, c(-0.440_050_585_744_933_5), 1e-12);
    let d = bessel_j_deriv(c(2.0), c(2.0), c(3.0), &spec()).unwrap().value;
    assert_close(d, c(-0.275_050_073_037_275_85), 1e-8);
    assert_close(d, deriv_binomial_oracle(c(2.0), 2, c(3.0)).unwrap(), 1e-8);

    let f = |k: f64| bessel_j_deriv(c(1.0), c(k), c(2.0), &spec()).unwrap().value;
    let mid = f(0.5);
    let scale = mid.norm().max(1.0);
    assert!((f(0.5 + 1e-4) - mid).norm() <= 1e-2 * scale);
    assert!((f(0.5 - 1e-4) - mid).norm() <= 1e-2 * scale);
}

#[test]
fn fractional_derivatives_report_their_limits() {
    let out = bessel_j_deriv(c(1.0), c(-0.5), c(2.0), &spec()).unwrap();
    assert!(out.warnings.contains(&Warning::SlowConvergence));
    assert!(out.err_est.is_finite());
    let out = bessel_j_deriv(c(1.0), c(0.5), c(2.0), &spec()).unwrap();
    assert!(!out.warnings.is_empty() || out.err_est <= spec().tolerance(out.value));
    assert!(matches!(
        bessel_j_deriv(c(1.0), c(-1.0), c(2.0), &spec()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn kummer_kernel_examples() {
    assert_close(bessel_j_kummer(c(0.0), c(1.0), &spec()).unwrap().value, c(0.765_197_686_557_966_6), 1e-12);
    assert_eq!(bessel_j_kummer(c(0.5), c(0.0), &spec()).unwrap().value, c(0.0));
    let (mu, z) = (c(2.2), Complex64::new(1.0, -1.0));
    let a = bessel_j_kummer(mu, z, &spec()).unwrap().value;
    assert_close(a, bessel_j(mu, z, &spec()).unwrap().value, 1e-9);
    assert!(matches!(bessel_j_kummer(c(-2.0), c(1.0), &spec()), Err(Error::Pole(_))));
}

#[test]
fn kummer_variants_of_i_and_derivative() {
    let (mu, z) = (Complex64::new(0.8, 0.2), Complex64::new(1.5, -0.5));
    let a = bessel_i_kummer(mu, z, &spec()).unwrap().value;
    assert_close(a, series_i(mu, z, ORACLE_TOL).unwrap(), 1e-10);
    for k in 1..=3u32 {
        let a = bessel_j_deriv_kummer(mu, c(k as f64), z, &spec()).unwrap().value;
        assert_close(a, deriv_binomial_oracle(mu, k, z).unwrap(), 1e-9);
    }
}

#[test]
fn zero_argument_rules() {
    assert!(matches!(bessel_j(c(-0.5), c(0.0), &spec()), Err(Error::Branch { .. })));
    assert_eq!(bessel_j(c(-3.0), c(0.0), &spec()).unwrap().value, c(0.0));
    assert_eq!(bessel_i(Complex64::new(2.0, 1.0), c(0.0), &spec()).unwrap().value, c(0.0));
    let d = bessel_j_deriv(c(0.0), c(2.0), c(0.0), &spec()).unwrap();
    assert_close(d.value, c(-0.5), 1e-15);
    assert!(matches!(
        bessel_j_deriv(c(0.2), c(0.5), c(0.0), &spec()),
        Err(Error::Branch { .. })
    ));
    // mu = k is left to the kernel
    let d = bessel_j_deriv(c(0.5), c(0.5), c(0.0), &spec()).unwrap();
    assert!(d.value.norm().is_finite());
}

#[test]
fn integer_order_values_are_real_on_the_real_axis() {
    for m in -4..=4 {
        for x in [0.3, 1.0, 4.5, 9.0, -2.0] {
            let v = bessel_j(c(m as f64), c(x), &spec()).unwrap().value;
            assert!(v.im.abs() <= 1e-12 * (1.0 + v.re.abs()), "J_{m}({x}) = {v}");
        }
    }
}

#[test]
fn representation_agreement_grid() {
    let orders = [
        c(-2.5),
        c(-1.0),
        Complex64::new(-0.5, 0.3),
        c(0.0),
        c(0.5),
        c(1.0),
        Complex64::new(3.7, 1.0),
    ];
    let args = [c(0.1), c(1.0), Complex64::new(2.0, 1.0), c(5.0), Complex64::from_polar(10.0, PI / 4.0)];
    for mu in orders {
        for z in args {
            let mut outs = vec![
                bessel_j(mu, z, &spec()).unwrap(),
                bessel_j_sin_kernel(mu, z, &spec()).unwrap(),
                bessel_j_shifted(mu, 0, z, &spec()).unwrap(),
            ];
            if mu != c(-1.0) {
                outs.push(bessel_j_kummer(mu, z, &spec()).unwrap());
            }
            let oracle = j_series(mu, z);
            for a in &outs {
                assert_close(a.value, oracle, 1e-9);
                for b in &outs {
                    assert!((a.value - b.value).norm() <= a.err_est + b.err_est + 1e-300);
                }
            }
        }
    }
}

#[test]
fn dispatcher_matches_direct_calls() {
    let arg = OrderArg::new(Complex64::new(0.7, 0.1), Complex64::new(1.0, 2.0));
    let s = spec();
    assert_eq!(
        evaluate(Function::J, Representation::Auto, &arg, &s).unwrap(),
        bessel_j(arg.mu, arg.z, &s).unwrap()
    );
    assert_eq!(
        evaluate(Function::J, Representation::SinKernel, &arg.with_shift(3), &s).unwrap(),
        bessel_j_shifted(arg.mu, 3, arg.z, &s).unwrap()
    );
    assert_eq!(
        evaluate(Function::Kappa, Representation::Auto, &arg.with_shift(-2), &s).unwrap(),
        kappa_fourier_coeff(-2, arg.mu, arg.z, &s).unwrap()
    );
    let k = c(2.0);
    assert_eq!(
        evaluate(Function::Jderiv, Representation::Kummer, &arg.with_derivative(k), &s).unwrap(),
        bessel_j_deriv_kummer(arg.mu, k, arg.z, &s).unwrap()
    );
}

#[test]
fn fixed_rule_matches_adaptive_value() {
    let kernel = Kernel::new(KernelKind::JCos, c(0.0), c(1.0)).unwrap();
    let adaptive = bessel_j(c(0.0), c(1.0), &spec()).unwrap();
    let fixed = kernel.evaluate_fixed(adaptive.nodes_used).unwrap();
    assert_close(fixed, adaptive.value, 1e-15);
}
