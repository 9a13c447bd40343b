//! Registry of checkable identities and the suite driver.
//!
//! Each identity compares a subject evaluator against an oracle on fixed
//! grids plus a few seeded random samples. The subject is a table of
//! function pointers so a deliberately broken implementation can be checked
//! against the same registry.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bessel::{self, EvalOutput};
use crate::error::{Error, Result};
use crate::gamma_star::{self, SeriesDiagnostics};
use crate::numerics::{gamma_fn, principal_pow, I, ONE, ZERO};
use crate::oracles::{self, IdentityReport, ORACLE_TOL};
use crate::quadrature::QuadratureSpec;

type Eval2 = fn(Complex64, Complex64, &QuadratureSpec) -> Result<EvalOutput>;

/// The implementation under test.
#[derive(Clone, Copy)]
pub struct Subject {
    pub bessel_j: Eval2,
    pub bessel_j_sin_kernel: Eval2,
    pub bessel_j_kummer: Eval2,
    pub bessel_j_shifted: fn(Complex64, u32, Complex64, &QuadratureSpec) -> Result<EvalOutput>,
    pub kappa_fourier_coeff: fn(i64, Complex64, Complex64, &QuadratureSpec) -> Result<EvalOutput>,
    pub bessel_i: Eval2,
    pub bessel_j_deriv: fn(Complex64, Complex64, Complex64, &QuadratureSpec) -> Result<EvalOutput>,
    pub gamma_star: fn(Complex64, Complex64) -> Result<(Complex64, SeriesDiagnostics)>,
}

impl Default for Subject {
    fn default() -> Self {
        Subject {
            bessel_j: bessel::bessel_j,
            bessel_j_sin_kernel: bessel::bessel_j_sin_kernel,
            bessel_j_kummer: bessel::bessel_j_kummer,
            bessel_j_shifted: bessel::bessel_j_shifted,
            kappa_fourier_coeff: bessel::kappa_fourier_coeff,
            bessel_i: bessel::bessel_i,
            bessel_j_deriv: bessel::bessel_j_deriv,
            gamma_star: gamma_star::gamma_star,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Restrict to these identity ids; `None` runs everything.
    pub only: Option<Vec<String>>,
    pub spec: QuadratureSpec,
    /// Random samples drawn per identity on top of the fixed grids.
    pub random_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0x5eed,
            only: None,
            spec: QuadratureSpec::default(),
            random_samples: 4,
        }
    }
}

/// One registered identity.
pub struct Identity {
    pub id: &'static str,
    pub description: &'static str,
    pub rtol: f64,
    pub atol: f64,
    check: fn(&mut Context<'_>),
}

impl Identity {
    pub fn new(
        id: &'static str,
        description: &'static str,
        rtol: f64,
        atol: f64,
        check: fn(&mut Context<'_>),
    ) -> Self {
        Identity {
            id,
            description,
            rtol,
            atol,
            check,
        }
    }
}

/// State handed to an identity check: subject, spec, rng and the running
/// tally of errors.
pub struct Context<'a> {
    pub subject: &'a Subject,
    pub spec: QuadratureSpec,
    pub rng: ChaCha8Rng,
    pub random_samples: usize,
    rtol: f64,
    atol: f64,
    samples: usize,
    max_rel: f64,
    max_abs: f64,
    pass: bool,
    first_failure: Option<String>,
}

impl Context<'_> {
    fn fail(&mut self, what: String) {
        self.pass = false;
        if self.first_failure.is_none() {
            self.first_failure = Some(what);
        }
    }

    /// `got` vs `want`: passes when within `rtol` relative or `atol` absolute.
    pub fn compare(&mut self, label: &str, got: Result<Complex64>, want: Result<Complex64>) {
        self.samples += 1;
        let (got, want) = match (got, want) {
            (Ok(g), Ok(w)) => (g, w),
            (Err(e), _) | (_, Err(e)) => {
                self.max_abs = f64::INFINITY;
                self.max_rel = f64::INFINITY;
                self.fail(format!("{label}: {e}"));
                return;
            }
        };
        let abs = (got - want).norm();
        let rel = if want.norm() > 0.0 {
            abs / want.norm()
        } else if abs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
        if !(rel <= self.rtol || abs <= self.atol) {
            self.fail(format!("{label}: got {got}, want {want}, rel {rel:.3e}"));
        }
    }

    /// A nonnegative quantity that must not exceed `limit`.
    pub fn bound(&mut self, label: &str, value: Result<f64>, limit: f64) {
        self.samples += 1;
        match value {
            Ok(v) => {
                self.max_abs = self.max_abs.max(v);
                self.max_rel = self.max_rel.max(v / limit);
                if !(v <= limit) {
                    self.fail(format!("{label}: {v:.3e} exceeds {limit:.3e}"));
                }
            }
            Err(e) => {
                self.max_abs = f64::INFINITY;
                self.max_rel = f64::INFINITY;
                self.fail(format!("{label}: {e}"));
            }
        }
    }

    pub fn random_order(&mut self) -> Complex64 {
        let re = self.rng.gen_range(-3.0..4.0);
        let im = if self.rng.gen_bool(0.5) {
            0.0
        } else {
            self.rng.gen_range(-1.0..1.0)
        };
        Complex64::new(re, im)
    }

    /// Modulus in `[r_min, r_max)`, argument in `(arg_lo, arg_hi)`.
    pub fn random_point(&mut self, r_min: f64, r_max: f64, arg_lo: f64, arg_hi: f64) -> Complex64 {
        let r = self.rng.gen_range(r_min..r_max);
        let t = self.rng.gen_range(arg_lo..arg_hi);
        Complex64::from_polar(r, t)
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Orders used on the main grid.
pub fn order_grid() -> Vec<Complex64> {
    vec![
        c(-2.5),
        c(-1.0),
        Complex64::new(-0.5, 0.3),
        ZERO,
        c(0.5),
        ONE,
        Complex64::new(3.7, 1.0),
    ]
}

/// Arguments used on the main grid.
pub fn argument_grid() -> Vec<Complex64> {
    vec![
        c(0.1),
        ONE,
        Complex64::new(2.0, 1.0),
        c(5.0),
        Complex64::from_polar(10.0, PI / 4.0),
    ]
}

fn j_ref(mu: Complex64, z: Complex64) -> Result<Complex64> {
    oracles::series_j(mu, z, ORACLE_TOL).map(|(v, _)| v)
}

fn value(r: Result<EvalOutput>) -> Result<Complex64> {
    r.map(|o| o.value)
}

fn rotation(mu: Complex64) -> Complex64 {
    (-I * mu * (PI / 2.0)).exp()
}

fn check_series_cross(cx: &mut Context<'_>) {
    let spec = cx.spec;
    for m in -3..=3 {
        for z in argument_grid() {
            let mu = c(m as f64);
            let got = oracles::bessel_integral_oracle(mu, z, &spec);
            cx.compare(&format!("integral J_{m}({z})"), got, j_ref(mu, z));
        }
    }
    let mut orders = vec![c(-0.4), ZERO, c(0.5), Complex64::new(1.3, 0.2)];
    for _ in 0..cx.random_samples {
        let mu = Complex64::new(cx.rng.gen_range(-0.4..3.0), cx.rng.gen_range(-0.5..0.5));
        orders.push(mu);
    }
    for mu in orders {
        for z in [ONE, Complex64::new(2.0, 1.0), c(5.0)] {
            let got = oracles::poisson_integral_oracle(mu, z, &spec);
            cx.compare(&format!("Poisson J_{mu}({z})"), got, j_ref(mu, z));
        }
    }
}

fn check_reflection(cx: &mut Context<'_>) {
    let mut zs = argument_grid();
    for _ in 0..cx.random_samples {
        zs.push(cx.random_point(0.1, 8.0, -PI, PI));
    }
    for z in zs {
        for n in 1..=6 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let pos = j_ref(c(n as f64), z).map(|v| v * sign);
            cx.compare(&format!("J_-{n}({z})"), j_ref(c(-(n as f64)), z), pos);
        }
    }
}

fn check_series_connection(cx: &mut Context<'_>) {
    let mut pairs = Vec::new();
    for mu in order_grid() {
        for z in argument_grid() {
            pairs.push((mu, z));
        }
    }
    for _ in 0..cx.random_samples {
        let mu = cx.random_order();
        let z = cx.random_point(0.1, 8.0, -PI, PI / 2.0);
        pairs.push((mu, z));
    }
    for (mu, z) in pairs {
        let got = oracles::series_i(mu, z, ORACLE_TOL);
        let want = j_ref(mu, I * z).map(|j| rotation(mu) * j);
        cx.compare(&format!("series I_{mu}({z})"), got, want);
    }
}

fn grid_pairs(cx: &mut Context<'_>, arg_hi: f64) -> Vec<(Complex64, Complex64)> {
    let mut pairs = Vec::new();
    for mu in order_grid() {
        for z in argument_grid() {
            if z.arg() <= arg_hi {
                pairs.push((mu, z));
            }
        }
    }
    for _ in 0..cx.random_samples {
        let mu = cx.random_order();
        let z = cx.random_point(0.1, 8.0, -PI, arg_hi);
        pairs.push((mu, z));
    }
    pairs
}

fn check_main(cx: &mut Context<'_>) {
    let f = cx.subject.bessel_j;
    for (mu, z) in grid_pairs(cx, PI) {
        let got = value(f(mu, z, &cx.spec));
        cx.compare(&format!("J_{mu}({z})"), got, j_ref(mu, z));
    }
}

fn check_sin_kernel(cx: &mut Context<'_>) {
    let f = cx.subject.bessel_j_sin_kernel;
    for (mu, z) in grid_pairs(cx, PI) {
        let got = value(f(mu, z, &cx.spec));
        cx.compare(&format!("sin-kernel J_{mu}({z})"), got, j_ref(mu, z));
    }
}

fn check_kummer_kernel(cx: &mut Context<'_>) {
    let f = cx.subject.bessel_j_kummer;
    for (mu, z) in grid_pairs(cx, PI) {
        if crate::numerics::is_nonpositive_integer(mu + 1.0) {
            continue;
        }
        let got = value(f(mu, z, &cx.spec));
        cx.compare(&format!("Kummer-kernel J_{mu}({z})"), got, j_ref(mu, z));
    }
}

fn check_representation_agreement(cx: &mut Context<'_>) {
    let s = *cx.subject;
    let spec = cx.spec;
    for (mu, z) in grid_pairs(cx, PI) {
        let mut outs = vec![(s.bessel_j)(mu, z, &spec), (s.bessel_j_sin_kernel)(mu, z, &spec)];
        if !crate::numerics::is_nonpositive_integer(mu + 1.0) {
            outs.push((s.bessel_j_kummer)(mu, z, &spec));
        }
        outs.push((s.bessel_j_shifted)(mu, 0, z, &spec));
        let outs: Result<Vec<EvalOutput>> = outs.into_iter().collect();
        let outs = match outs {
            Ok(o) => o,
            Err(e) => {
                cx.bound(&format!("representations at ({mu}, {z})"), Err(e), 0.0);
                continue;
            }
        };
        for a in 0..outs.len() {
            for b in a + 1..outs.len() {
                let diff = (outs[a].value - outs[b].value).norm();
                let budget = outs[a].err_est + outs[b].err_est;
                cx.bound(&format!("representations {a}/{b} at ({mu}, {z})"), Ok(diff), budget);
            }
        }
    }
}

fn check_shifted(cx: &mut Context<'_>) {
    let f = cx.subject.bessel_j_shifted;
    let mut pairs = Vec::new();
    for mu in [c(0.3), ONE, Complex64::new(-0.5, 0.3)] {
        for z in [ONE, c(2.0), Complex64::new(2.0, 1.0)] {
            pairs.push((mu, z));
        }
    }
    for _ in 0..cx.random_samples {
        let mu = cx.random_order();
        let z = cx.random_point(0.2, 6.0, -PI, PI);
        pairs.push((mu, z));
    }
    for (mu, z) in pairs {
        for n in 0..=6u32 {
            let got = value(f(mu, n, z, &cx.spec));
            let want = j_ref(mu + n as f64, z);
            cx.compare(&format!("J_({mu})+{n}({z})"), got, want);
        }
    }
}

fn kappa_scale(mu: Complex64, z: Complex64) -> Result<Complex64> {
    Ok(principal_pow(z * 0.5, -mu)? * (2.0 * PI))
}

fn check_fourier(cx: &mut Context<'_>) {
    let f = cx.subject.kappa_fourier_coeff;
    let mut pairs = vec![(c(1.5), ONE), (c(0.5), c(2.0)), (c(2.2), Complex64::new(1.0, -1.0))];
    for _ in 0..cx.random_samples {
        let mu = cx.random_order();
        let z = cx.random_point(0.2, 5.0, -PI, PI);
        pairs.push((mu, z));
    }
    for (mu, z) in pairs {
        for n in -3..=4i64 {
            let got = value(f(n, mu, z, &cx.spec));
            let want = kappa_scale(mu, z).and_then(|s| {
                if n > 0 {
                    Ok(s * oracles::series_j_shifted(mu, n as u32, z, ORACLE_TOL)?)
                } else {
                    Ok(s * j_ref(mu - n as f64, z)?)
                }
            });
            cx.compare(&format!("kappa_{n}({mu}, {z})"), got, want);
        }
    }
}

fn check_fourier_reconstruction(cx: &mut Context<'_>) {
    let s = *cx.subject;
    let (mu, z) = (c(1.3), c(2.0));
    let coeffs: Result<Vec<Complex64>> = (-40..=40)
        .map(|n| (s.kappa_fourier_coeff)(n, mu, z, &cx.spec).map(|o| o.value))
        .collect();
    for j in 0..8 {
        let theta = -PI + (j as f64 + 0.3) * PI / 4.0;
        let kernel = (s.gamma_star)(mu, z * Complex64::from_polar(0.5, theta))
            .map(|(g, _)| (I * z * theta.sin()).exp() * g);
        let series = coeffs.as_ref().map_err(Clone::clone).map(|cs| {
            cs.iter()
                .zip(-40..=40)
                .map(|(k, n)| k * Complex64::from_polar(1.0, -(n as f64) * theta))
                .sum::<Complex64>()
                / (2.0 * PI)
        });
        cx.compare(&format!("kernel at theta = {theta:.3}"), series, kernel);
    }
}

fn check_modified(cx: &mut Context<'_>) {
    let f = cx.subject.bessel_i;
    for (mu, z) in grid_pairs(cx, PI / 2.0) {
        let got = value(f(mu, z, &cx.spec));
        let want = oracles::series_i(mu, z, ORACLE_TOL);
        cx.compare(&format!("I_{mu}({z})"), got, want);
    }
}

fn check_connection(cx: &mut Context<'_>) {
    let (fi, fj) = (cx.subject.bessel_i, cx.subject.bessel_j);
    for (mu, z) in grid_pairs(cx, PI / 2.0) {
        let got = value(fi(mu, z, &cx.spec));
        let want = value(fj(mu, I * z, &cx.spec)).map(|j| rotation(mu) * j);
        cx.compare(&format!("I_{mu}({z}) vs rotated J"), got, want);
    }
}

fn check_derivatives(cx: &mut Context<'_>) {
    let s = *cx.subject;
    let mut pairs = vec![(ZERO, ONE), (ONE, c(2.0)), (c(2.5), Complex64::new(1.0, 1.0))];
    for _ in 0..cx.random_samples {
        let mu = cx.random_order();
        let z = cx.random_point(0.2, 5.0, -PI, PI);
        pairs.push((mu, z));
    }
    for (mu, z) in pairs {
        for k in 1..=3u32 {
            let got = value((s.bessel_j_deriv)(mu, c(k as f64), z, &cx.spec));
            let want = oracles::deriv_binomial_oracle(mu, k, z);
            cx.compare(&format!("d^{k} J_{mu}({z})"), got, want);
        }
        let d0 = value((s.bessel_j_deriv)(mu, ZERO, z, &cx.spec));
        let j = value((s.bessel_j_sin_kernel)(mu, z, &cx.spec));
        let same = match (d0, j) {
            (Ok(a), Ok(b)) => Ok(if a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits() {
                0.0
            } else {
                f64::INFINITY
            }),
            (Err(e), _) | (_, Err(e)) => Err(e),
        };
        cx.bound(&format!("d^0 J_{mu}({z}) bit identity"), same, 0.0);
    }
}

/// `|f(k0 +- h) - f(k0)| <= 1e-2 max(1, |f(k0)|)` with `h = 1e-4`.
pub fn fractional_continuity(
    f: fn(Complex64, Complex64, Complex64, &QuadratureSpec) -> Result<EvalOutput>,
    mu: Complex64,
    k0: f64,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let at = |k: f64| f(mu, c(k), z, spec).map(|o| o.value);
    let f0 = at(k0)?;
    let jump = (at(k0 + 1e-4)? - f0).norm().max((at(k0 - 1e-4)? - f0).norm());
    Ok((jump, 1e-2 * f0.norm().max(1.0)))
}

fn check_fractional(cx: &mut Context<'_>) {
    let f = cx.subject.bessel_j_deriv;
    for (mu, z) in [(ONE, c(2.0)), (ZERO, ONE), (c(2.5), Complex64::new(1.0, 1.0))] {
        for k0 in [0.5, 1.5] {
            let probe = fractional_continuity(f, mu, k0, z, &cx.spec);
            let (jump, limit) = match probe {
                Ok((j, l)) => (Ok(j), l),
                Err(e) => (Err(e), 0.0),
            };
            cx.bound(&format!("continuity in k at {k0} for J_{mu}({z})"), jump, limit);
        }
    }
}

/// Complex `w` grid with `|w| <= 10`.
pub fn w_grid() -> Vec<Complex64> {
    let mut out = Vec::new();
    for re in [-10.0, -7.0, -3.0, -1.0, 0.0, 0.5, 2.0, 6.0, 10.0] {
        for im in [-10.0, -6.0, -2.0, 0.0, 1.0, 5.0, 10.0] {
            let w = Complex64::new(re, im);
            if w.norm() <= 10.0 {
                out.push(w);
            }
        }
    }
    out
}

/// Difference quotients of `gamma*(., w)` across the nonpositive integer
/// `-n`, at steps `1e-3` and `1e-6`. A jump would blow up the finer quotient.
pub fn order_transect(
    g: fn(Complex64, Complex64) -> Result<(Complex64, SeriesDiagnostics)>,
    n: u32,
    w: Complex64,
) -> Result<(f64, f64)> {
    let mu0 = c(-(n as f64));
    let quotient = |h: f64| -> Result<f64> {
        let (a, _) = g(mu0 + h, w)?;
        let (b, _) = g(mu0 - h, w)?;
        Ok((a - b).norm() / (2.0 * h))
    };
    Ok((quotient(1e-3)?, quotient(1e-6)?))
}

fn check_gamma_entire(cx: &mut Context<'_>) {
    let g = cx.subject.gamma_star;
    let mut ws = w_grid();
    for _ in 0..cx.random_samples {
        ws.push(cx.random_point(0.0, 10.0, -PI, PI));
    }
    for &w in &ws {
        for n in 0..=8u32 {
            let got = g(c(-(n as f64)), w).map(|(v, _)| v);
            cx.compare(&format!("gamma*(-{n}, {w})"), got, Ok(w.powi(n as i32)));
        }
    }
    for w in [Complex64::new(2.0, 1.0), c(-3.0), Complex64::new(0.5, -4.0)] {
        for n in 0..=4u32 {
            let (coarse, fine) = match order_transect(g, n, w) {
                Ok(q) => q,
                Err(e) => {
                    cx.bound("order transect", Err(e), 0.0);
                    continue;
                }
            };
            let limit = 2.0 * coarse + 1e-6 * w.norm().max(1.0).powi(n as i32);
            cx.bound(&format!("transect across -{n} at {w}"), Ok(fine), limit);
        }
    }
}

fn check_gamma_euler(cx: &mut Context<'_>) {
    let g = cx.subject.gamma_star;
    let spec = cx.spec;
    let mut pairs = Vec::new();
    for mu in [0.5, 1.0, 2.7] {
        for w in [c(0.25), ONE, Complex64::new(1.0, 2.0), c(5.0)] {
            pairs.push((c(mu), w));
        }
    }
    for _ in 0..cx.random_samples {
        let mu = Complex64::new(cx.rng.gen_range(0.3..4.0), cx.rng.gen_range(-1.0..1.0));
        let w = cx.random_point(0.1, 6.0, -PI / 2.0, PI / 2.0);
        pairs.push((mu, w));
    }
    for (mu, w) in pairs {
        let got = (|| -> Result<Complex64> {
            let (gs, _) = g(mu, w)?;
            Ok(gs * gamma_fn(mu)? * principal_pow(w, mu)?)
        })();
        let want = oracles::gamma_lower_direct(mu, w, &spec);
        cx.compare(&format!("gamma({mu}, {w})"), got, want);
    }
}

fn check_vanishing(cx: &mut Context<'_>) {
    let spec = cx.spec;
    let mut zs = vec![ONE, c(2.0), Complex64::new(1.0, 1.0), c(5.0)];
    for _ in 0..cx.random_samples {
        zs.push(cx.random_point(0.0, 5.0, -PI, PI));
    }
    for z in zs {
        for n in 1..=6u32 {
            let report = oracles::vanishing_moment_check(z, n, &spec);
            let limit = 1e-10 * (z.norm() / 2.0).exp();
            cx.bound(&format!("moments n = {n}, z = {z}"), report.map(|r| r.max_abs_err), limit);
        }
    }
}

fn check_beta(cx: &mut Context<'_>) {
    let spec = cx.spec;
    for (nu, k, l) in [(ONE, 0, 0), (Complex64::new(0.7, 0.1), 2, 1), (c(2.5), 3, 2)] {
        let got = oracles::beta_moment_integral(nu, k, l, &spec);
        let want = oracles::beta_moment_closed_form(nu, k, l);
        cx.compare(&format!("beta moment ({nu}, {k}, {l})"), got, want);
    }
    for nu in [c(0.3), ONE, c(2.5), Complex64::new(0.7, 0.1)] {
        for l in 1..=4u32 {
            for k in 0..l {
                let got = oracles::beta_moment_integral(nu, k, l, &spec).map(|v| v.norm());
                cx.bound(&format!("null beta moment ({nu}, {k}, {l})"), got, 1e-8);
            }
        }
    }
}

/// The default registry, in report order.
pub fn registry() -> Vec<Identity> {
    vec![
        Identity::new(
            "series_cross_agreement",
            "power series vs Bessel and Poisson integrals",
            1e-10,
            1e-12,
            check_series_cross,
        ),
        Identity::new(
            "integer_order_reflection",
            "J_-n = (-1)^n J_n in the series",
            1e-11,
            1e-14,
            check_reflection,
        ),
        Identity::new(
            "series_connection",
            "I series vs rotated J series",
            1e-11,
            1e-14,
            check_series_connection,
        ),
        Identity::new("cos_kernel_series", "cos-kernel J vs series", 1e-9, 1e-12, check_main),
        Identity::new("sin_kernel", "sin-kernel J vs series", 1e-9, 1e-12, check_sin_kernel),
        Identity::new("kummer_kernel", "Kummer-kernel J vs series", 1e-9, 1e-12, check_kummer_kernel),
        Identity::new(
            "representation_agreement",
            "all J kernels agree within their error estimates",
            0.0,
            0.0,
            check_representation_agreement,
        ),
        Identity::new("shifted_orders", "shifted sin kernel vs J_{mu+n} series", 1e-9, 1e-12, check_shifted),
        Identity::new(
            "fourier_coefficients",
            "kernel Fourier coefficients vs (shifted) series",
            1e-9,
            1e-12,
            check_fourier,
        ),
        Identity::new(
            "fourier_reconstruction",
            "81 Fourier coefficients rebuild the kernel",
            1e-6,
            1e-6,
            check_fourier_reconstruction,
        ),
        Identity::new("modified_bessel", "I kernel vs series", 1e-9, 1e-12, check_modified),
        Identity::new(
            "connection_relation",
            "I_mu(z) = e^{-i mu pi/2} J_mu(iz)",
            1e-9,
            1e-12,
            check_connection,
        ),
        Identity::new(
            "derivative_binomial",
            "integer-order derivatives vs binomial sum",
            1e-8,
            1e-12,
            check_derivatives,
        ),
        Identity::new(
            "fractional_continuity",
            "fractional derivatives are continuous in k",
            0.0,
            0.0,
            check_fractional,
        ),
        Identity::new(
            "gamma_star_entire",
            "gamma*(-n, w) = w^n and no jumps across -n",
            1e-12,
            1e-300,
            check_gamma_entire,
        ),
        Identity::new(
            "gamma_star_euler",
            "gamma* vs Euler integral along a ray",
            1e-9,
            1e-14,
            check_gamma_euler,
        ),
        Identity::new(
            "vanishing_moments",
            "integrals of exp(-z e^{-it}/2) e^{i(k-n)t} vanish for k < n",
            0.0,
            0.0,
            check_vanishing,
        ),
        Identity::new(
            "beta_moments",
            "cosine-power moments vs beta closed form",
            1e-6,
            0.0,
            check_beta,
        ),
    ]
}

fn selected(config: &SuiteConfig, id: &str) -> bool {
    config
        .only
        .as_ref()
        .map_or(true, |ids| ids.iter().any(|s| s == id))
}

/// Runs the given identities against `subject`. Reports follow registry
/// order; each identity gets its own rng stream so filtering does not
/// change the samples.
pub fn run_identities(
    identities: &[Identity],
    subject: &Subject,
    config: &SuiteConfig,
) -> Vec<IdentityReport> {
    let mut reports = Vec::new();
    for (index, identity) in identities.iter().enumerate() {
        if !selected(config, identity.id) {
            continue;
        }
        let stream = config.seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut cx = Context {
            subject,
            spec: config.spec,
            rng: ChaCha8Rng::seed_from_u64(stream),
            random_samples: config.random_samples,
            rtol: identity.rtol,
            atol: identity.atol,
            samples: 0,
            max_rel: 0.0,
            max_abs: 0.0,
            pass: true,
            first_failure: None,
        };
        (identity.check)(&mut cx);
        reports.push(IdentityReport {
            identity_id: identity.id.to_string(),
            max_rel_err: cx.max_rel,
            max_abs_err: cx.max_abs,
            samples: cx.samples,
            pass: cx.pass && cx.samples > 0,
            first_failure: cx.first_failure,
        });
    }
    reports
}

/// Runs the default registry against the library's own evaluators.
pub fn run_identity_suite(config: &SuiteConfig) -> Vec<IdentityReport> {
    run_identities(&registry(), &Subject::default(), config)
}

/// Errors for ids in `only` that are not registered.
pub fn check_filter(config: &SuiteConfig) -> Result<()> {
    if let Some(ids) = &config.only {
        let known = registry();
        for id in ids {
            if !known.iter().any(|i| i.id == id) {
                return Err(Error::Domain(format!("unknown identity '{id}'")));
            }
        }
    }
    Ok(())
}
