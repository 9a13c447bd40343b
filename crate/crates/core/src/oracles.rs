//! Reference computations used as ground truth: power series, classical
//! integral representations, the binomial derivative formula and two
//! vanishing-integral identities.
//!
//! Nothing here calls the periodic-kernel evaluators. Integrals go through
//! [`segment_quad`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma_star::SeriesDiagnostics;
use crate::numerics::{
    as_integer, ensure_finite, gamma_fn, is_nonpositive_integer, principal_pow, recip_gamma, I,
    ONE, ZERO,
};
use crate::quadrature::{segment_quad, QuadratureSpec};

/// Default relative truncation tolerance for the series oracles.
pub const ORACLE_TOL: f64 = 1e-17;
const ORACLE_MAX_TERMS: usize = 2000;
const QUIET_RUN: usize = 3;
const VANISHING_TOL: f64 = 1e-10;
const BETA_REL_TOL: f64 = 1e-6;
const BETA_NULL_TOL: f64 = 1e-8;

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub identity_id: String,
    pub max_rel_err: f64,
    pub max_abs_err: f64,
    pub samples: usize,
    pub pass: bool,
    /// Description of the first failing sample, if any.
    pub first_failure: Option<String>,
}

/// `sum_{k >= k_min} sign^k / k! (z/2)^{2k+nu} / Gamma(nu+k+1)`.
///
/// Terms with `nu + k + 1` a nonpositive integer vanish and are skipped, so
/// the recurrence never divides by zero.
fn bessel_series(
    nu: Complex64,
    z: Complex64,
    sign: f64,
    k_min: u64,
    tol: f64,
) -> Result<(Complex64, SeriesDiagnostics)> {
    ensure_finite(nu, "order")?;
    ensure_finite(z, "argument")?;
    let first_live = match as_integer(nu) {
        Some(m) if m < 0 => (-m) as u64,
        _ => 0,
    };
    let k0 = k_min.max(first_live);
    let half = z * 0.5;
    let kf0 = k0 as f64;
    let sign0 = if sign < 0.0 && k0 % 2 == 1 { -1.0 } else { 1.0 };
    let mut term = principal_pow(half, nu + 2.0 * kf0)?
        * recip_gamma(Complex64::new(kf0 + 1.0, 0.0))
        * recip_gamma(nu + (kf0 + 1.0))
        * sign0;
    let step = half * half * sign;

    let mut sum = ZERO;
    let mut max_term = 0.0_f64;
    let mut quiet = 0;
    for j in 0..ORACLE_MAX_TERMS {
        let term_ok = ensure_finite(term, "series term")?;
        sum += term_ok;
        let mag = term_ok.norm();
        max_term = max_term.max(mag);
        let k = kf0 + j as f64;
        let denom = (nu + (k + 1.0)) * (k + 1.0);
        let ratio = step / denom;
        let contracting = ratio.norm() <= 0.5 && nu.re + k + 1.0 > 0.0;
        if contracting && mag <= tol * sum.norm() + 1e-300 {
            quiet += 1;
            if quiet == QUIET_RUN {
                let r = sum.norm();
                let cancellation_digits = if r > 0.0 {
                    (max_term / r).log10()
                } else if max_term > 0.0 {
                    17.0
                } else {
                    0.0
                };
                return Ok((
                    sum,
                    SeriesDiagnostics {
                        terms_used: j + 1,
                        max_term_mag: max_term,
                        cancellation_digits,
                        converged: true,
                    },
                ));
            }
        } else {
            quiet = 0;
        }
        term *= ratio;
    }
    Err(Error::Convergence {
        terms: ORACLE_MAX_TERMS,
    })
}

/// `J_mu(z)` from its power series.
pub fn series_j(mu: Complex64, z: Complex64, tol: f64) -> Result<(Complex64, SeriesDiagnostics)> {
    bessel_series(mu, z, -1.0, 0, tol)
}

/// The series of `J_{mu-n}(z)` with its first `n` terms removed:
/// `sum_{k >= n} (-1)^k / k! (z/2)^{2k+mu-n} / Gamma(mu-n+k+1)`.
pub fn series_j_shifted(mu: Complex64, n: u32, z: Complex64, tol: f64) -> Result<Complex64> {
    bessel_series(mu - n as f64, z, -1.0, n as u64, tol).map(|(v, _)| v)
}

/// `I_mu(z)` from its power series.
pub fn series_i(mu: Complex64, z: Complex64, tol: f64) -> Result<Complex64> {
    bessel_series(mu, z, 1.0, 0, tol).map(|(v, _)| v)
}

/// `J_m(z) = ((-i)^m / pi) integral_0^pi e^{iz cos t} cos(m t) dt` for integer `m`.
pub fn bessel_integral_oracle(mu: Complex64, z: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    let m = as_integer(mu)
        .ok_or_else(|| Error::Domain(format!("integral oracle needs integer order, got {mu}")))?;
    let m = i32::try_from(m).map_err(|_| Error::Domain(format!("order {m} too large")))?;
    ensure_finite(z, "argument")?;
    let q = segment_quad(
        |t| Ok((I * z * t.re.cos()).exp() * (m as f64 * t.re).cos()),
        ZERO,
        Complex64::new(PI, 0.0),
        spec,
    )?;
    Ok((-I).powi(m) * q.value / PI)
}

/// Poisson's integral
/// `J_mu(z) = (z/2)^mu / (Gamma(mu+1/2) sqrt(pi)) integral_0^pi e^{iz cos t} sin^{2mu} t dt`,
/// `Re mu > -1/2`. Folded onto `[0, pi/2]` so the endpoint singularity sits at `0`.
pub fn poisson_integral_oracle(mu: Complex64, z: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    if !(mu.re > -0.5) {
        return Err(Error::Domain(format!("Poisson integral needs Re mu > -1/2, got {mu}")));
    }
    ensure_finite(z, "argument")?;
    let pre = principal_pow(z * 0.5, mu)? * recip_gamma(mu + 0.5) / PI.sqrt();
    if pre == ZERO {
        return Ok(ZERO);
    }
    let q = segment_quad(
        |t| {
            let s = Complex64::new(t.re.sin(), 0.0);
            Ok((z * t.re.cos()).cos() * 2.0 * principal_pow(s, mu * 2.0)?)
        },
        ZERO,
        Complex64::new(PI / 2.0, 0.0),
        spec,
    )?;
    ensure_finite(pre * q.value, "Poisson integral")
}

/// `integral_0^w e^{-t} t^{mu-1} dt` along the straight segment from `0`.
pub fn gamma_lower_direct(mu: Complex64, w: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    if !(mu.re > 0.0) {
        return Err(Error::Domain(format!("Euler integral needs Re mu > 0, got {mu}")));
    }
    ensure_finite(w, "argument")?;
    if w == ZERO {
        return Ok(ZERO);
    }
    let q = segment_quad(
        |t| Ok((-t).exp() * principal_pow(t, mu - 1.0)?),
        ZERO,
        w,
        spec,
    )?;
    Ok(q.value)
}

fn binomial(k: u32, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (k - j) as f64 / (j + 1) as f64)
}

/// `d^k J_mu / dz^k = 2^{-k} sum_m (-1)^m C(k, m) J_{mu-k+2m}(z)` from the series oracle.
pub fn deriv_binomial_oracle(mu: Complex64, k: u32, z: Complex64) -> Result<Complex64> {
    let mut acc = ZERO;
    for m in 0..=k {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let (j, _) = series_j(mu - k as f64 + 2.0 * m as f64, z, ORACLE_TOL)?;
        acc += j * (sign * binomial(k, m));
    }
    Ok(acc * 0.5f64.powi(k as i32))
}

/// Checks `integral_{-pi}^{pi} exp(-z e^{-it}/2) e^{i(k-n)t} dt = 0` for `0 <= k < n`.
///
/// Passes iff the largest magnitude is at most `1e-10 e^{|z|/2}`.
pub fn vanishing_moment_check(z: Complex64, n: u32, spec: &QuadratureSpec) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Domain("vanishing moments need n >= 1".into()));
    }
    ensure_finite(z, "argument")?;
    let scale = (z.norm() / 2.0).exp();
    let mut worst = 0.0_f64;
    for k in 0..n {
        let freq = k as f64 - n as f64;
        let q = segment_quad(
            |t| {
                let e = Complex64::from_polar(1.0, -t.re);
                Ok((-z * e * 0.5).exp() * Complex64::from_polar(1.0, freq * t.re))
            },
            Complex64::new(-PI, 0.0),
            Complex64::new(PI, 0.0),
            spec,
        )?;
        worst = worst.max(q.value.norm());
    }
    Ok(IdentityReport {
        identity_id: "vanishing_moments".into(),
        max_rel_err: worst / scale,
        max_abs_err: worst,
        samples: n as usize,
        pass: worst <= VANISHING_TOL * scale,
        first_failure: None,
    })
}

/// Left side `2^{nu+k+2} integral_0^{pi/2} cos^{2(nu+k)} t cos(2(l+nu) t) dt`,
/// integrated in `s = pi/2 - t` so the endpoint singularity sits at `0`.
pub fn beta_moment_integral(
    nu: Complex64,
    k: u32,
    ell: u32,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !(nu.re > -0.5) {
        return Err(Error::Domain(format!("beta moment needs Re nu > -1/2, got {nu}")));
    }
    let p = (nu + k as f64) * 2.0;
    let freq = (nu + ell as f64) * 2.0;
    let q = segment_quad(
        |s| {
            let base = Complex64::new(s.re.sin(), 0.0);
            Ok(principal_pow(base, p)? * (freq * (PI / 2.0 - s.re)).cos())
        },
        ZERO,
        Complex64::new(PI / 2.0, 0.0),
        spec,
    )?;
    Ok(principal_pow(Complex64::new(2.0, 0.0), nu + (k as f64 + 2.0))? * q.value)
}

/// Right side `2^{1-nu-k} pi / ((2nu+2k+1) B(2nu+k+l+1, k-l+1))`, zero when
/// `k < l` (the beta function has a pole there).
pub fn beta_moment_closed_form(nu: Complex64, k: u32, ell: u32) -> Result<Complex64> {
    let a = nu * 2.0 + (k + ell + 1) as f64;
    let b = Complex64::new(k as f64 - ell as f64 + 1.0, 0.0);
    if is_nonpositive_integer(b) {
        return Ok(ZERO);
    }
    // 1/B(a, b) = Gamma(a + b) / (Gamma(a) Gamma(b))
    let inv_beta = gamma_fn(a + b)? * recip_gamma(a) * recip_gamma(b);
    let two = principal_pow(Complex64::new(2.0, 0.0), ONE - nu - k as f64)?;
    ensure_finite(two * PI * inv_beta / (nu * 2.0 + (2 * k + 1) as f64), "beta moment")
}

/// Compares [`beta_moment_integral`] against [`beta_moment_closed_form`]:
/// relative `1e-6`, or magnitude `1e-8` in the vanishing cases `k < l`.
pub fn beta_moment_identity(
    nu: Complex64,
    k: u32,
    ell: u32,
    spec: &QuadratureSpec,
) -> Result<IdentityReport> {
    let left = beta_moment_integral(nu, k, ell, spec)?;
    let right = beta_moment_closed_form(nu, k, ell)?;
    let abs = (left - right).norm();
    let (rel, pass) = if k < ell {
        (abs, left.norm() <= BETA_NULL_TOL)
    } else {
        let rel = abs / right.norm();
        (rel, rel <= BETA_REL_TOL)
    };
    Ok(IdentityReport {
        identity_id: "beta_moments".into(),
        max_rel_err: rel,
        max_abs_err: abs,
        samples: 1,
        pass,
        first_failure: None,
    })
}
