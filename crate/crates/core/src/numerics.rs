//! Complex gamma-family scaffolding: reciprocal gamma, gamma, beta and the
//! principal-branch logarithm and power.
//!
//! The gamma function uses a 15-term Lanczos sum (g = 607/128) evaluated in
//! log form for `Re s >= 1/2` and the reflection identity elsewhere, which
//! keeps a single approximation domain. The coefficient table lives in
//! `lanczos_coeffs.rs` and is regenerated by `scripts/gen_lanczos.py`.
//!
//! Branch convention: `arg` lies in `(-pi, pi]`, so the negative real axis is
//! approached from above (`arg = pi`), regardless of the sign of a zero
//! imaginary part.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lanczos_coeffs::{LANCZOS_COEFFS, LANCZOS_G};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest magnitude for which integer exponents are raised by repeated
/// squaring instead of `exp(k log x)`.
const POWI_LIMIT: f64 = 64.0;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub(crate) fn ensure_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Returns `Some(n)` when `s` is exactly the real integer `n`.
pub fn as_integer(s: Complex64) -> Option<i64> {
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 9.0e15 {
        Some(s.re as i64)
    } else {
        None
    }
}

/// True for `s` in `{0, -1, -2, ...}` exactly.
pub fn is_nonpositive_integer(s: Complex64) -> bool {
    matches!(as_integer(s), Some(n) if n <= 0)
}

/// `sin(pi s)` with the argument reduced by the nearest integer first, so the
/// zeros at integers are exact and nearby values keep their relative accuracy.
fn sin_pi(s: Complex64) -> Complex64 {
    let n = s.re.round();
    let d = Complex64::new(s.re - n, s.im);
    let v = (d * PI).sin();
    if n.rem_euclid(2.0) == 0.0 {
        v
    } else {
        -v
    }
}

/// `Gamma(n) = (n - 1)!` exactly for integers `1 <= n <= 21`.
fn small_factorial(s: Complex64) -> Option<f64> {
    match as_integer(s) {
        Some(n) if (1..=21).contains(&n) => Some((1..n).map(|k| k as f64).product()),
        _ => None,
    }
}

/// `ln Gamma(s)` for `Re s >= 1/2` (principal value of the Lanczos log form).
fn ln_gamma_right(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut acc = c(LANCZOS_COEFFS[0]);
    for (k, &ck) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += ck / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + acc.ln() + HALF_LN_2PI
}

/// Reciprocal gamma function `1/Gamma(s)`, entire in `s`.
///
/// Exactly zero at `s = 0, -1, -2, ...`.
pub fn recip_gamma(s: Complex64) -> Complex64 {
    if let Some(f) = small_factorial(s) {
        return c(1.0 / f);
    }
    if s.re >= 0.5 {
        (-ln_gamma_right(s)).exp()
    } else {
        if is_nonpositive_integer(s) {
            return ZERO;
        }
        // 1/Gamma(s) = sin(pi s) Gamma(1 - s) / pi
        sin_pi(s) * ln_gamma_right(ONE - s).exp() / PI
    }
}

/// Gamma function. Errors with [`Error::Pole`] only at exact nonpositive
/// integers; values arbitrarily close to a pole are returned (large).
pub fn gamma_fn(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::Pole(s));
    }
    if let Some(f) = small_factorial(s) {
        return Ok(c(f));
    }
    let v = if s.re >= 0.5 {
        ln_gamma_right(s).exp()
    } else {
        PI / (sin_pi(s) * ln_gamma_right(ONE - s).exp())
    };
    ensure_finite(v, "gamma overflow")
}

/// Euler beta function `Gamma(a) Gamma(b) / Gamma(a + b)`.
pub fn beta_fn(a: Complex64, b: Complex64) -> Result<Complex64> {
    let ga = gamma_fn(a)?;
    let gb = gamma_fn(b)?;
    let sum = a + b;
    if is_nonpositive_integer(sum) {
        return Err(Error::Pole(sum));
    }
    Ok(ga * gb * recip_gamma(sum))
}

/// Principal argument in `(-pi, pi]`; a signed zero imaginary part on the
/// negative real axis still maps to `pi`.
pub fn principal_arg(z: Complex64) -> f64 {
    if z.im == 0.0 {
        if z.re < 0.0 {
            PI
        } else {
            0.0
        }
    } else {
        z.im.atan2(z.re)
    }
}

/// Principal logarithm. `z` must be nonzero.
pub fn principal_log(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), principal_arg(z))
}

/// `base^exponent = exp(exponent * Log base)` on the principal branch.
///
/// `0^e` is `0` for `Re e > 0` and `1` for `e = 0`; any other power of zero is
/// a [`Error::Branch`]. Small real integer exponents use repeated squaring.
pub fn principal_pow(base: Complex64, exponent: Complex64) -> Result<Complex64> {
    if exponent == ZERO {
        return Ok(ONE);
    }
    if base == ZERO {
        return if exponent.re > 0.0 {
            Ok(ZERO)
        } else {
            Err(Error::Branch { base, exponent })
        };
    }
    if let Some(n) = as_integer(exponent) {
        if (n as f64).abs() <= POWI_LIMIT {
            return ensure_finite(base.powi(n as i32), "power overflow");
        }
    }
    ensure_finite((exponent * principal_log(base)).exp(), "power overflow")
}
