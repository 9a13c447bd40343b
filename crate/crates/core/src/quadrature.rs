//! Quadrature for smooth `2pi`-periodic integrands and for straight segments
//! in the complex plane.
//!
//! The periodic rule is the equal-weight rule on a midpoint-offset grid
//! `theta_j = -pi + 2pi (j + 1/2) / N`, which never lands on `0` or `+-pi`.
//! It converges geometrically for analytic periodic integrands; the reported
//! error is the last doubling difference `|S_2N - S_N|` (a heuristic, not a
//! bound). Node values are reduced in index order with compensated summation,
//! so results are bit-reproducible.
//!
//! The segment rule is composite 16-point Gauss–Legendre. The first panel at
//! the start point is graded geometrically (ratio 1/4) so an integrable
//! algebraic singularity there is resolved by panel refinement alone.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::is_finite;
use crate::sum::ComplexSum;

/// Differences below `NOISE_FACTOR * eps * integral(|f|)` are rounding noise.
const NOISE_FACTOR: f64 = 32.0;
const GL_ORDER: usize = 16;
const GRADING_RATIO: f64 = 0.25;
/// Geometric levels in the graded panel at refinement level 0.
const GRADED_LEVELS_BASE: usize = 16;

/// Node budget and tolerance policy for the adaptive rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub n_start: usize,
    pub n_max: usize,
    pub rtol: f64,
    pub atol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            n_start: 32,
            n_max: 8192,
            rtol: 1e-12,
            atol: 1e-300,
        }
    }
}

impl QuadratureSpec {
    pub fn new(n_start: usize, n_max: usize, rtol: f64, atol: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            n_start,
            n_max,
            rtol,
            atol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_start < 8 || !self.n_start.is_power_of_two() {
            return Err(Error::InvalidSpec("n_start must be a power of two >= 8"));
        }
        if self.n_max < self.n_start || !self.n_max.is_power_of_two() {
            return Err(Error::InvalidSpec("n_max must be a power of two >= n_start"));
        }
        if !(self.rtol > 0.0) || !(self.atol > 0.0) {
            return Err(Error::InvalidSpec("rtol and atol must be positive"));
        }
        Ok(())
    }

    /// Same spec with the node cap multiplied by `factor` (a power of two).
    pub fn with_cap_scaled(self, factor: usize) -> Self {
        QuadratureSpec {
            n_max: self.n_max.saturating_mul(factor),
            ..self
        }
    }

    pub fn tolerance(&self, value: Complex64) -> f64 {
        self.rtol * value.norm() + self.atol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub err_est: f64,
    pub nodes_used: usize,
    pub converged: bool,
    /// The rule's approximation of `integral |f|`; scales rounding noise.
    pub abs_integral: f64,
    /// Doubling stopped because the difference reached rounding noise
    /// before meeting the tolerance.
    pub rounding_limited: bool,
}

/// The midpoint-offset periodic grid with `n` nodes.
pub fn periodic_nodes(n: usize) -> impl Iterator<Item = f64> {
    let step = 2.0 * PI / n as f64;
    (0..n).map(move |j| -PI + step * (j as f64 + 0.5))
}

fn checked_node<F>(f: &mut F, node: Complex64, arg: Complex64) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    match f(arg) {
        Ok(v) if is_finite(v) => Ok(v),
        Ok(_) => Err(Error::NodeEvaluation {
            node,
            source: Box::new(Error::NonFinite("integrand value")),
        }),
        Err(e) => Err(Error::NodeEvaluation {
            node,
            source: Box::new(e),
        }),
    }
}

/// Fixed-`n` periodic rule: `(2pi/n) sum_j f(theta_j)` and `(2pi/n) sum_j |f(theta_j)|`.
pub fn periodic_rule<F>(mut f: F, n: usize) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut acc = ComplexSum::default();
    let mut abs_acc = 0.0;
    let mut g = |t: Complex64| f(t.re);
    for theta in periodic_nodes(n) {
        let arg = Complex64::new(theta, 0.0);
        let v = checked_node(&mut g, arg, arg)?;
        acc += v;
        abs_acc += v.norm();
    }
    let h = 2.0 * PI / n as f64;
    Ok((acc.sum() * h, abs_acc * h))
}

/// Doubling driver shared by both rules. `rule(level)` returns the value, the
/// `|f|` integral and the node count at that refinement level.
fn refine<R>(
    mut rule: R,
    nodes_at: impl Fn(usize) -> usize,
    first_level: usize,
    spec: &QuadratureSpec,
    noise_rel: impl Fn() -> f64,
) -> Result<QuadratureResult>
where
    R: FnMut(usize) -> Result<(Complex64, f64)>,
{
    let mut level = first_level;
    let (mut coarse, mut coarse_abs) = rule(level)?;
    let mut last_diff = None;
    loop {
        if nodes_at(level + 1) > spec.n_max {
            return Ok(QuadratureResult {
                value: coarse,
                err_est: last_diff.unwrap_or(coarse.norm()),
                nodes_used: nodes_at(level),
                converged: false,
                abs_integral: coarse_abs,
                rounding_limited: false,
            });
        }
        level += 1;
        let (fine, fine_abs) = rule(level)?;
        let diff = (fine - coarse).norm();
        let noise = NOISE_FACTOR * f64::EPSILON * noise_rel().max(1.0) * fine_abs;
        let converged = diff <= spec.tolerance(fine);
        if converged || diff <= noise {
            return Ok(QuadratureResult {
                value: fine,
                err_est: diff,
                nodes_used: nodes_at(level),
                converged,
                abs_integral: fine_abs,
                rounding_limited: !converged,
            });
        }
        coarse = fine;
        coarse_abs = fine_abs;
        last_diff = Some(diff);
    }
}

/// Adaptive periodic trapezoid over `[-pi, pi)` with node doubling from
/// `spec.n_start` to `spec.n_max`.
pub fn periodic_trapezoid<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    periodic_trapezoid_with_noise(f, spec, || 1.0)
}

/// As [`periodic_trapezoid`], with `noise_rel()` reporting how many ulps of
/// relative error the integrand values currently carry.
pub fn periodic_trapezoid_with_noise<F>(
    mut f: F,
    spec: &QuadratureSpec,
    noise_rel: impl Fn() -> f64,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    spec.validate()?;
    // With no room to double, compare against the half-size rule instead.
    let base = if spec.n_start == spec.n_max {
        spec.n_start / 2
    } else {
        spec.n_start
    };
    let nodes_at = move |level: usize| base << level;
    refine(
        |level| periodic_rule(&mut f, nodes_at(level)),
        nodes_at,
        0,
        spec,
        noise_rel,
    )
}

fn gauss_legendre() -> &'static ([f64; GL_ORDER], [f64; GL_ORDER]) {
    static RULE: OnceLock<([f64; GL_ORDER], [f64; GL_ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut x = [0.0; GL_ORDER];
        let mut w = [0.0; GL_ORDER];
        for i in 0..n {
            // Tricomi's initial guess, then Newton on P_n.
            let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, t);
                let dt = p / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, t);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        (x, w)
    })
}

/// `(P_n(t), P_n'(t))` by the three-term recurrence.
fn legendre(n: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, dp)
}

fn segment_nodes_at(level: usize) -> usize {
    let uniform = 1usize << level;
    let graded = GRADED_LEVELS_BASE << level;
    GL_ORDER * (uniform + graded + 1)
}

/// Composite Gauss–Legendre along the straight segment `a -> b`.
///
/// Refinement level `m` uses `2^m` uniform panels with the first one split
/// into `16 * 2^m` geometric sub-panels toward `a` plus an innermost panel.
/// Only `a` may carry an integrable singularity.
pub fn segment_quad<F>(
    mut f: F,
    a: Complex64,
    b: Complex64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    spec.validate()?;
    if !is_finite(a) || !is_finite(b) {
        return Err(Error::NonFinite("segment endpoint"));
    }
    let (xs, ws) = gauss_legendre();
    let span = b - a;
    let mut rule = |level: usize| -> Result<(Complex64, f64)> {
        let uniform = 1usize << level;
        let graded = GRADED_LEVELS_BASE << level;
        let h = 1.0 / uniform as f64;
        let mut acc = ComplexSum::default();
        let mut abs_acc = 0.0;
        let mut panel = |lo: f64, hi: f64, acc: &mut ComplexSum, abs_acc: &mut f64| {
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (x, w) in xs.iter().zip(ws.iter()) {
                let s = mid + half * x;
                let t = a + span * s;
                let v = checked_node(&mut f, t, t)?;
                *acc += v * (w * half);
                *abs_acc += v.norm() * w * half;
            }
            Ok::<(), Error>(())
        };
        // innermost panel first, then outward: a fixed order
        let mut hi = h * GRADING_RATIO.powi(graded as i32);
        panel(0.0, hi, &mut acc, &mut abs_acc)?;
        for j in (0..graded).rev() {
            let lo = hi;
            hi = h * GRADING_RATIO.powi(j as i32);
            panel(lo, hi, &mut acc, &mut abs_acc)?;
        }
        for p in 1..uniform {
            panel(p as f64 * h, (p + 1) as f64 * h, &mut acc, &mut abs_acc)?;
        }
        Ok((acc.sum() * span, abs_acc * span.norm()))
    };

    if segment_nodes_at(1) > spec.n_max {
        let (value, abs_integral) = rule(0)?;
        return Ok(QuadratureResult {
            value,
            err_est: value.norm(),
            nodes_used: segment_nodes_at(0),
            converged: false,
            abs_integral,
            rounding_limited: false,
        });
    }
    refine(rule, segment_nodes_at, 0, spec, || 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c, I, ONE, ZERO};

    #[test]
    fn constant_and_orthogonal_modes() {
        let spec = QuadratureSpec::default();
        let r = periodic_trapezoid(|_| Ok(ONE), &spec).unwrap();
        assert!((r.value - c(2.0 * PI)).norm() < 1e-14);
        assert!(r.converged && r.err_est < 1e-14);

        let r = periodic_trapezoid(|t| Ok((I * t).exp()), &spec).unwrap();
        assert!(r.value.norm() < 1e-14);
    }

    #[test]
    fn exp_cos_matches_bessel_i0() {
        // 2 pi I_0(1), I_0(1) from its power series
        let i0: f64 = (0..30)
            .map(|k| {
                let f: f64 = (1..=k).map(|j| j as f64).product();
                0.25f64.powi(k) / (f * f)
            })
            .sum();
        let r = periodic_trapezoid(|t| Ok(c(t.cos().exp())), &QuadratureSpec::default()).unwrap();
        assert!((r.value.re - 2.0 * PI * i0).abs() < 1e-13);
        assert!((i0 - 1.266_065_877_752_008_4).abs() < 1e-15);
    }

    #[test]
    fn nodes_avoid_symmetry_points() {
        for n in [8, 16, 32, 1024, 8192] {
            for t in periodic_nodes(n) {
                assert!(t != 0.0 && t.abs() != PI && t > -PI && t < PI);
            }
        }
    }

    #[test]
    fn node_failure_is_reported() {
        let r = periodic_trapezoid(
            |t| {
                if t > 1.0 {
                    Err(Error::Degenerate("boom"))
                } else {
                    Ok(ONE)
                }
            },
            &QuadratureSpec::default(),
        );
        assert!(matches!(r, Err(Error::NodeEvaluation { .. })));
        let r = periodic_trapezoid(|_| Ok(c(f64::NAN)), &QuadratureSpec::default());
        assert!(matches!(r, Err(Error::NodeEvaluation { .. })));
    }

    #[test]
    fn budget_exhaustion_returns_best_value() {
        // sqrt|theta| has a cusp at 0: only algebraic convergence
        let spec = QuadratureSpec::new(8, 64, 1e-14, 1e-300).unwrap();
        let r = periodic_trapezoid(|t| Ok(c(t.abs().sqrt())), &spec).unwrap();
        assert!(!r.converged);
        assert_eq!(r.nodes_used, 64);
        assert!((r.value.re - 4.0 / 3.0 * PI.powf(1.5)).abs() < 1e-1);
        assert!(r.err_est > 0.0);
    }

    #[test]
    fn fixed_size_spec_still_estimates() {
        let spec = QuadratureSpec::new(32, 32, 1e-12, 1e-300).unwrap();
        let r = periodic_trapezoid(|t| Ok(c(t.cos().exp())), &spec).unwrap();
        assert_eq!(r.nodes_used, 32);
        assert!(r.converged);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(4, 64, 1e-12, 1e-300).is_err());
        assert!(QuadratureSpec::new(48, 64, 1e-12, 1e-300).is_err());
        assert!(QuadratureSpec::new(64, 32, 1e-12, 1e-300).is_err());
        assert!(QuadratureSpec::new(32, 64, 0.0, 1e-300).is_err());
        assert!(QuadratureSpec::new(32, 64, 1e-12, f64::NAN).is_err());
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree 30 is within the 2n - 1 = 31 exactness range
        let s: f64 = x.iter().zip(w.iter()).map(|(x, w)| w * x.powi(30)).sum();
        assert!((s - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn segment_examples() {
        let spec = QuadratureSpec::default();
        let r = segment_quad(|_| Ok(ONE), ZERO, ONE, &spec).unwrap();
        assert!((r.value - ONE).norm() < 1e-14 && r.converged);

        let r = segment_quad(|t| Ok((-t).exp()), ZERO, c(40.0), &spec).unwrap();
        assert!((r.value - ONE).norm() < 1e-12);

        let r = segment_quad(|t| Ok((-t).exp() / t.sqrt()), ZERO, c(30.0), &spec).unwrap();
        assert!((r.value.re - PI.sqrt()).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn segment_in_complex_direction() {
        // integral of e^t along 0 -> 1 + 2i is e^{1+2i} - 1
        let b = Complex64::new(1.0, 2.0);
        let r = segment_quad(|t| Ok(t.exp()), ZERO, b, &QuadratureSpec::default()).unwrap();
        assert!((r.value - (b.exp() - 1.0)).norm() < 1e-13);
    }

    #[test]
    fn segment_resolves_strong_endpoint_singularity() {
        // integral_0^1 t^{-0.8} dt = 5
        let r = segment_quad(|t| Ok(t.powf(-0.8)), ZERO, ONE, &QuadratureSpec::default()).unwrap();
        assert!((r.value.re - 5.0).abs() < 1e-11, "{}", r.value);
    }
}
