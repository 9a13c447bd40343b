//! Tricomi's entire incomplete gamma function `gamma*(mu, w)` and the
//! incomplete gamma family derived from it.
//!
//! `gamma*(mu, w) = e^{-w} sum_k w^k / Gamma(mu + k + 1)` is entire in both
//! arguments. For `Re w < 0` the exponential prefactor is large and the sum
//! cancels, so the same function is summed in its Kummer-transformed form
//! `sum_k (-w)^k (mu)_k / (k! Gamma(mu + k + 1))`, which is also entire and
//! free of that cancellation.
//!
//! Both series advance the reciprocal gamma factor by
//! `1/Gamma(s + 1) = (1/Gamma(s)) / s`, restarting from `recip_gamma` when
//! `s` is exactly zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{
    ensure_finite, gamma_fn, is_nonpositive_integer, principal_pow, recip_gamma, ONE, ZERO,
};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 512;
/// Relative size below which a term counts as negligible.
pub const SERIES_TOL: f64 = 1e-16;
const ABS_FLOOR: f64 = 1e-300;
/// Negligible terms required in a row before stopping.
const QUIET_RUN: usize = 3;
/// Reported cancellation when the result is exactly zero but terms are not.
const TOTAL_LOSS_DIGITS: f64 = 17.0;

/// Conditioning report for one power-series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesDiagnostics {
    pub terms_used: usize,
    /// Largest term magnitude, in the units of the returned value.
    pub max_term_mag: f64,
    /// `log10(max_term_mag / |result|)`.
    pub cancellation_digits: f64,
    pub converged: bool,
}

impl SeriesDiagnostics {
    /// Identity for [`SeriesDiagnostics::worst`].
    pub fn clean() -> Self {
        SeriesDiagnostics {
            terms_used: 0,
            max_term_mag: 0.0,
            cancellation_digits: f64::NEG_INFINITY,
            converged: true,
        }
    }

    fn from_terms(terms_used: usize, max_term_mag: f64, result: Complex64) -> Self {
        let r = result.norm();
        let cancellation_digits = if r > 0.0 {
            (max_term_mag / r).log10()
        } else if max_term_mag > 0.0 {
            TOTAL_LOSS_DIGITS
        } else {
            0.0
        };
        SeriesDiagnostics {
            terms_used,
            max_term_mag,
            cancellation_digits,
            converged: true,
        }
    }

    /// Worst-case merge: most terms, largest term, most digits lost.
    pub fn worst(self, other: Self) -> Self {
        SeriesDiagnostics {
            terms_used: self.terms_used.max(other.terms_used),
            max_term_mag: self.max_term_mag.max(other.max_term_mag),
            cancellation_digits: self.cancellation_digits.max(other.cancellation_digits),
            converged: self.converged && other.converged,
        }
    }

    /// Cancellation digits with the empty-reducer sentinel mapped to zero.
    pub fn digits_lost(&self) -> f64 {
        self.cancellation_digits.max(0.0)
    }
}

/// Sums `next(k)` for `k = 0, 1, ...` until [`QUIET_RUN`] consecutive terms
/// are negligible while `next` reports the tail as contracting.
fn sum_series<F>(mut next: F) -> Result<(Complex64, usize, f64)>
where
    F: FnMut(usize) -> (Complex64, bool),
{
    let mut sum = ZERO;
    let mut max_term = 0.0_f64;
    let mut quiet = 0;
    for k in 0..MAX_TERMS {
        let (term, tail_contracts) = next(k);
        let term = ensure_finite(term, "series term")?;
        sum += term;
        let mag = term.norm();
        max_term = max_term.max(mag);
        if tail_contracts && mag <= SERIES_TOL * sum.norm() + ABS_FLOOR {
            quiet += 1;
            if quiet == QUIET_RUN {
                return Ok((sum, k + 1, max_term));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence { terms: MAX_TERMS })
}

/// Advances `1/Gamma(s)` to `1/Gamma(s + 1)`.
#[inline]
fn next_recip_gamma(r: Complex64, s: Complex64) -> Complex64 {
    if s == ZERO {
        recip_gamma(ONE)
    } else {
        r / s
    }
}

/// `gamma*(mu, .)` at a fixed order, caching `1/Gamma(mu + 1)`.
#[derive(Debug, Clone, Copy)]
pub struct GammaStar {
    mu: Complex64,
    r0: Complex64,
}

impl GammaStar {
    pub fn new(mu: Complex64) -> Result<Self> {
        let mu = ensure_finite(mu, "order")?;
        Ok(GammaStar {
            mu,
            r0: recip_gamma(mu + 1.0),
        })
    }

    pub fn order(&self) -> Complex64 {
        self.mu
    }

    pub fn eval(&self, w: Complex64) -> Result<(Complex64, SeriesDiagnostics)> {
        let w = ensure_finite(w, "incomplete gamma argument")?;
        if w.re >= 0.0 {
            self.eval_direct(w)
        } else {
            self.eval_transformed(w)
        }
    }

    /// `e^{-w} sum_k w^k / Gamma(mu + k + 1)`.
    fn eval_direct(&self, w: Complex64) -> Result<(Complex64, SeriesDiagnostics)> {
        let mu = self.mu;
        let wabs = w.norm();
        let mut r = self.r0;
        let mut wk = ONE;
        let (sum, terms, max_term) = sum_series(|k| {
            let kf = k as f64;
            if k > 0 {
                r = next_recip_gamma(r, mu + kf);
                wk *= w;
            }
            // |w / (mu + j + 1)| < 1/2 for every later ratio
            let contracts = mu.re + kf + 2.0 > (2.0 * wabs).max(1.0);
            (wk * r, contracts)
        })?;
        let scale = (-w).exp();
        let value = ensure_finite(scale * sum, "gamma* overflow")?;
        let diag = SeriesDiagnostics::from_terms(terms, max_term * scale.norm(), value);
        Ok((value, diag))
    }

    /// `sum_k (-w)^k (mu)_k / (k! Gamma(mu + k + 1))`.
    fn eval_transformed(&self, w: Complex64) -> Result<(Complex64, SeriesDiagnostics)> {
        let mu = self.mu;
        let wabs = w.norm();
        let mut r = self.r0;
        let mut a = ONE;
        let (sum, terms, max_term) = sum_series(|k| {
            let kf = k as f64;
            if k > 0 {
                r = next_recip_gamma(r, mu + kf);
                a *= -w * (mu + (kf - 1.0)) / kf;
            }
            let contracts = mu.re + kf + 2.0 >= 1.0 && kf + 2.0 > 4.0 * wabs;
            (a * r, contracts)
        })?;
        let diag = SeriesDiagnostics::from_terms(terms, max_term, sum);
        Ok((sum, diag))
    }
}

/// Tricomi's `gamma*(mu, w)` with conditioning diagnostics.
pub fn gamma_star(mu: Complex64, w: Complex64) -> Result<(Complex64, SeriesDiagnostics)> {
    GammaStar::new(mu)?.eval(w)
}

/// Normalised lower incomplete gamma `P(mu, w) = w^mu gamma*(mu, w)`.
pub fn lower_p(mu: Complex64, w: Complex64) -> Result<Complex64> {
    let pow = principal_pow(w, mu)?;
    if pow == ZERO {
        return Ok(ZERO);
    }
    let (g, _) = gamma_star(mu, w)?;
    ensure_finite(pow * g, "P overflow")
}

/// Lower incomplete gamma `gamma(mu, w) = Gamma(mu) w^mu gamma*(mu, w)`.
pub fn gamma_lower(mu: Complex64, w: Complex64) -> Result<Complex64> {
    let g = gamma_fn(mu)?;
    Ok(g * lower_p(mu, w)?)
}

/// Upper incomplete gamma `Gamma(mu, w) = Gamma(mu) (1 - w^mu gamma*(mu, w))`.
pub fn gamma_upper(mu: Complex64, w: Complex64) -> Result<Complex64> {
    let g = gamma_fn(mu)?;
    Ok(g * (ONE - lower_p(mu, w)?))
}

/// Order-shift recurrence: `gamma*(mu + n, w)` from `base = gamma*(mu, w)`.
///
/// `gamma*(mu+n, w) = w^{-n} (base - e^{-w} sum_{k<n} w^k / Gamma(mu+k+1))`.
pub fn gamma_star_shift(mu: Complex64, n: u32, w: Complex64, base: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Ok(base);
    }
    if w == ZERO {
        return Err(Error::Degenerate(
            "order-shift recurrence is undefined at w = 0",
        ));
    }
    let mut partial = ZERO;
    let mut wk = ONE;
    for k in 0..n {
        partial += wk * recip_gamma(mu + (k as f64 + 1.0));
        wk *= w;
    }
    // wk == w^n here
    ensure_finite((base - (-w).exp() * partial) / wk, "shifted gamma*")
}

/// Kummer's `M(1, 1 + mu; w)` with diagnostics.
pub fn kummer_m1_diag(mu: Complex64, w: Complex64) -> Result<(Complex64, SeriesDiagnostics)> {
    let mu = ensure_finite(mu, "order")?;
    let w = ensure_finite(w, "Kummer argument")?;
    let b = mu + 1.0;
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(b));
    }
    let wabs = w.norm();
    let mut t = ONE;
    let (sum, terms, max_term) = sum_series(|k| {
        let kf = k as f64;
        if k > 0 {
            t *= w / (b + (kf - 1.0));
        }
        let contracts = mu.re + kf + 2.0 > (2.0 * wabs).max(1.0);
        (t, contracts)
    })?;
    Ok((sum, SeriesDiagnostics::from_terms(terms, max_term, sum)))
}

/// Kummer's confluent hypergeometric `M(1, 1 + mu; w) = sum_k w^k / (1 + mu)_k`.
pub fn kummer_m1(mu: Complex64, w: Complex64) -> Result<Complex64> {
    kummer_m1_diag(mu, w).map(|(v, _)| v)
}
