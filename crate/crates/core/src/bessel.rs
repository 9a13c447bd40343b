//! Bessel functions of the first kind through single periodic integrals of
//! Tricomi's `gamma*`.
//!
//! Every representation here has the shape
//!
//! ```text
//! value = C(mu, z) / (2 pi) * integral_{-pi}^{pi} K(theta; mu, z) d theta
//! ```
//!
//! with an entire, `2pi`-periodic kernel `K`, so the periodic trapezoid rule
//! converges geometrically. The kernels are:
//!
//! | function | kernel `K(theta)` | prefactor `C` |
//! |---|---|---|
//! | `J` (cos form) | `e^{iz cos t} g*(mu, iz e^{it}/2)` | `(z/2)^mu` |
//! | `J` (sin form), `J_{mu+n}` | `e^{iz sin t} g*(mu, z e^{it}/2) e^{-int}` | `(z/2)^mu` |
//! | `J` (Kummer form) | `e^{iz e^{-it}/2} M(1, 1+mu, iz e^{it}/2)` | `(z/2)^mu / Gamma(1+mu)` |
//! | `I` | `e^{z cos t} g*(mu, z e^{it}/2)` | `(z/2)^mu` |
//! | `I` (Kummer form) | `e^{z e^{-it}/2} M(1, 1+mu, z e^{it}/2)` | `(z/2)^mu / Gamma(1+mu)` |
//! | `d^k J` | `e^{iz sin t} g*(mu-k, z e^{it}/2) (i sin t)^k e^{-ikt}` | `(z/2)^{mu-k}` |
//! | `d^k J` (Kummer form) | `e^{-z e^{-it}/2} M(1, 1+mu-k, z e^{it}/2) (i sin t)^k e^{-ikt}` | `(z/2)^{mu-k} / Gamma(1+mu-k)` |
//!
//! Fourier coefficients of the sin-form kernel are returned raw, without
//! prefactor or `1/(2 pi)`.
//!
//! Powers use the principal branch. For non-integer orders and `z` on the
//! negative real axis the value on the `arg z = pi` side is returned together
//! with [`Warning::BranchCutProximity`].

use std::cell::Cell;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma_star::{kummer_m1_diag, GammaStar, SeriesDiagnostics};
use crate::numerics::{
    as_integer, ensure_finite, is_nonpositive_integer, principal_log, principal_pow, recip_gamma,
    I, ONE, ZERO,
};
use crate::quadrature::{periodic_rule, periodic_trapezoid_with_noise, QuadratureSpec};

/// Rounding amplification (in digits) over the plain integral that is flagged.
const CANCELLATION_WARN_DIGITS: f64 = 3.0;
/// Node-cap multiplier for non-integer derivative orders, whose kernels are
/// only algebraically smooth at `theta = 0, +-pi`.
const FRACTIONAL_CAP_FACTOR: usize = 4;
/// Ulps of rounding charged per kernel evaluation in the error estimate.
const ROUNDING_ULPS: f64 = 4.0;
/// Relative distance to the negative real axis counted as "on the cut".
const CUT_PROXIMITY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Warning {
    BranchCutProximity,
    SlowConvergence,
    CancellationLoss,
}

impl Warning {
    pub fn name(&self) -> &'static str {
        match self {
            Warning::BranchCutProximity => "BranchCutProximity",
            Warning::SlowConvergence => "SlowConvergence",
            Warning::CancellationLoss => "CancellationLoss",
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A function value with its error budget and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalOutput {
    pub value: Complex64,
    pub err_est: f64,
    pub nodes_used: usize,
    /// Worst case over all kernel evaluations.
    pub series_diag: SeriesDiagnostics,
    /// Sorted, without duplicates.
    pub warnings: Vec<Warning>,
}

impl EvalOutput {
    fn exact(value: Complex64) -> Self {
        EvalOutput {
            value,
            err_est: 0.0,
            nodes_used: 0,
            series_diag: SeriesDiagnostics::clean(),
            warnings: Vec::new(),
        }
    }

    fn warn(&mut self, w: Warning) {
        if let Err(pos) = self.warnings.binary_search(&w) {
            self.warnings.insert(pos, w);
        }
    }

    pub fn has_warnings(&self) -> bool {
        !self.warnings.is_empty()
    }
}

/// Order, argument, derivative order and integer shift of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderArg {
    pub mu: Complex64,
    pub z: Complex64,
    pub k: Complex64,
    pub n: i64,
}

impl OrderArg {
    pub fn new(mu: Complex64, z: Complex64) -> Self {
        OrderArg { mu, z, k: ZERO, n: 0 }
    }

    pub fn with_derivative(self, k: Complex64) -> Self {
        OrderArg { k, ..self }
    }

    pub fn with_shift(self, n: i64) -> Self {
        OrderArg { n, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.mu, "order")?;
        ensure_finite(self.z, "argument")?;
        ensure_finite(self.k, "derivative order")?;
        if self.k.re <= -1.0 {
            return Err(Error::Domain(format!(
                "derivative order needs Re k > -1, got {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// Which integral representation a kernel realizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    JCos,
    /// Sin form times `e^{-in theta}`; yields `J_{mu+n}`.
    JSin { shift: u32 },
    JKummer,
    I,
    IKummer,
    JDeriv { k: Complex64 },
    JDerivKummer { k: Complex64 },
    /// Raw Fourier coefficient `integral e^{iz sin t} g*(mu, z e^{it}/2) e^{int} dt`.
    Kappa { n: i64 },
}

#[derive(Debug, Clone, Copy)]
enum Series {
    GammaStar(GammaStar),
    /// `M(1, 1 + order; .)`.
    Kummer(Complex64),
}

impl Series {
    fn eval(&self, w: Complex64) -> Result<(Complex64, SeriesDiagnostics)> {
        match self {
            Series::GammaStar(g) => g.eval(w),
            Series::Kummer(order) => kummer_m1_diag(*order, w),
        }
    }
}

/// A kernel bound to `(mu, z)`; integrate with [`Kernel::evaluate`] or
/// sample at a fixed node count with [`Kernel::evaluate_fixed`].
#[derive(Debug, Clone)]
pub struct Kernel {
    kind: KernelKind,
    z: Complex64,
    series: Series,
    /// `(z/2)^p` and friends; `1` for raw Fourier coefficients.
    prefactor: Complex64,
    /// Exponent `p` of `(z/2)^p`, `None` when there is no power prefactor.
    power: Option<Complex64>,
    /// Divide the integral by `2 pi`.
    normalized: bool,
}

impl Kernel {
    pub fn new(kind: KernelKind, mu: Complex64, z: Complex64) -> Result<Self> {
        ensure_finite(mu, "order")?;
        ensure_finite(z, "argument")?;
        let half_z = z * 0.5;
        let (series_order, kummer, power) = match kind {
            KernelKind::JCos | KernelKind::JSin { .. } | KernelKind::I => (mu, false, Some(mu)),
            KernelKind::JKummer | KernelKind::IKummer => (mu, true, Some(mu)),
            KernelKind::JDeriv { k } => (mu - k, false, Some(mu - k)),
            KernelKind::JDerivKummer { k } => (mu - k, true, Some(mu - k)),
            KernelKind::Kappa { .. } => (mu, false, None),
        };
        if let KernelKind::JDeriv { k } | KernelKind::JDerivKummer { k } = kind {
            OrderArg::new(mu, z).with_derivative(k).validate()?;
        }
        let series = if kummer {
            let b = series_order + 1.0;
            if is_nonpositive_integer(b) {
                return Err(Error::Pole(b));
            }
            Series::Kummer(series_order)
        } else {
            Series::GammaStar(GammaStar::new(series_order)?)
        };
        let mut prefactor = match power {
            Some(p) => principal_pow(half_z, p)?,
            None => ONE,
        };
        if kummer {
            prefactor *= recip_gamma(series_order + 1.0);
        }
        Ok(Kernel {
            kind,
            z,
            series,
            prefactor,
            power,
            normalized: power.is_some(),
        })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// Kernel value at `theta` and the diagnostics of its series evaluation.
    pub fn integrand(&self, theta: f64) -> Result<(Complex64, SeriesDiagnostics)> {
        let z = self.z;
        let e_it = Complex64::from_polar(1.0, theta);
        let (sin_t, cos_t) = theta.sin_cos();
        let (value, diag) = match self.kind {
            KernelKind::JCos => {
                let (g, d) = self.series.eval(I * z * e_it * 0.5)?;
                ((I * z * cos_t).exp() * g, d)
            }
            KernelKind::JSin { shift } => {
                let (g, d) = self.series.eval(z * e_it * 0.5)?;
                let phase = Complex64::from_polar(1.0, -(shift as f64) * theta);
                ((I * z * sin_t).exp() * g * phase, d)
            }
            KernelKind::Kappa { n } => {
                let (g, d) = self.series.eval(z * e_it * 0.5)?;
                let phase = Complex64::from_polar(1.0, n as f64 * theta);
                ((I * z * sin_t).exp() * g * phase, d)
            }
            KernelKind::JKummer => {
                let (m, d) = self.series.eval(I * z * e_it * 0.5)?;
                ((I * z * e_it.conj() * 0.5).exp() * m, d)
            }
            KernelKind::I => {
                let (g, d) = self.series.eval(z * e_it * 0.5)?;
                ((z * cos_t).exp() * g, d)
            }
            KernelKind::IKummer => {
                let (m, d) = self.series.eval(z * e_it * 0.5)?;
                ((z * e_it.conj() * 0.5).exp() * m, d)
            }
            KernelKind::JDeriv { k } => {
                let (g, d) = self.series.eval(z * e_it * 0.5)?;
                ((I * z * sin_t).exp() * g * sine_factor(theta, k)?, d)
            }
            KernelKind::JDerivKummer { k } => {
                let (m, d) = self.series.eval(z * e_it * 0.5)?;
                ((-z * e_it.conj() * 0.5).exp() * m * sine_factor(theta, k)?, d)
            }
        };
        Ok((ensure_finite(value, "kernel value")?, diag))
    }

    fn finish(&self, integral: Complex64) -> Complex64 {
        if self.normalized {
            self.prefactor * integral / (2.0 * PI)
        } else {
            self.prefactor * integral
        }
    }

    fn scale(&self) -> f64 {
        let s = self.prefactor.norm();
        if self.normalized {
            s / (2.0 * PI)
        } else {
            s
        }
    }

    /// Value from the fixed `n`-node periodic rule (no adaptivity).
    pub fn evaluate_fixed(&self, n: usize) -> Result<Complex64> {
        let (integral, _) = periodic_rule(|t| self.integrand(t).map(|(v, _)| v), n)?;
        ensure_finite(self.finish(integral), "result")
    }

    /// Adaptive evaluation with composed error estimate and warnings.
    pub fn evaluate(&self, spec: &QuadratureSpec) -> Result<EvalOutput> {
        let worst = Cell::new(SeriesDiagnostics::clean());
        // largest |K(theta)| 10^{digits lost at theta}
        let peak = Cell::new(0.0_f64);
        let quad = periodic_trapezoid_with_noise(
            |t| {
                let (v, d) = self.integrand(t)?;
                worst.set(worst.get().worst(d));
                peak.set(peak.get().max(v.norm() * 10f64.powf(d.digits_lost())));
                Ok(v)
            },
            spec,
            || 10f64.powf(worst.get().digits_lost()),
        )?;
        let diag = worst.get();
        let value = ensure_finite(self.finish(quad.value), "result")?;

        let noisy_mass = (10f64.powf(diag.digits_lost()) * quad.abs_integral).min(2.0 * PI * peak.get());
        let rounding = ROUNDING_ULPS * f64::EPSILON * noisy_mass.max(quad.abs_integral);
        let prefactor_err = match self.power {
            Some(p) if self.z != ZERO => {
                f64::EPSILON * (1.0 + p.norm() * principal_log(self.z * 0.5).norm()) * value.norm()
            }
            _ => 0.0,
        };
        let err_est = self.scale() * (quad.err_est + rounding) + prefactor_err;

        let mut out = EvalOutput {
            value,
            err_est,
            nodes_used: quad.nodes_used,
            series_diag: diag,
            warnings: Vec::new(),
        };
        if !quad.converged {
            out.warn(if quad.rounding_limited {
                Warning::CancellationLoss
            } else {
                Warning::SlowConvergence
            });
        }
        if noisy_mass > 10f64.powf(CANCELLATION_WARN_DIGITS) * quad.abs_integral {
            out.warn(Warning::CancellationLoss);
        }
        if let Some(p) = self.power {
            if on_negative_axis(self.z) && as_integer(p).is_none() {
                out.warn(Warning::BranchCutProximity);
            }
        }
        if out.warnings.is_empty() && out.err_est > spec.tolerance(out.value) {
            out.warn(Warning::CancellationLoss);
        }
        Ok(out)
    }
}

fn on_negative_axis(z: Complex64) -> bool {
    z.re < 0.0 && z.im.abs() <= CUT_PROXIMITY * z.norm()
}

/// `(i sin theta)^k e^{-ik theta}` on the principal branch.
fn sine_factor(theta: f64, k: Complex64) -> Result<Complex64> {
    let base = Complex64::new(0.0, theta.sin());
    Ok(principal_pow(base, k)? * (-I * k * theta).exp())
}

/// `J_nu(0)` (equally `I_nu(0)`) where it exists.
fn value_at_origin(order: Complex64) -> Result<Complex64> {
    if order == ZERO {
        Ok(ONE)
    } else if order.re > 0.0 || is_nonpositive_integer(order) {
        Ok(ZERO)
    } else {
        Err(Error::Branch {
            base: ZERO,
            exponent: order,
        })
    }
}

fn check_inputs(mu: Complex64, z: Complex64) -> Result<()> {
    ensure_finite(mu, "order")?;
    ensure_finite(z, "argument")?;
    Ok(())
}

fn with_cut_warning(mut out: EvalOutput, order: Complex64, z: Complex64) -> EvalOutput {
    if on_negative_axis(z) && as_integer(order).is_none() {
        out.warn(Warning::BranchCutProximity);
    }
    out
}

/// `J_mu(z)` from the cos-kernel representation.
pub fn bessel_j(mu: Complex64, z: Complex64, spec: &QuadratureSpec) -> Result<EvalOutput> {
    check_inputs(mu, z)?;
    if z == ZERO {
        return value_at_origin(mu).map(EvalOutput::exact);
    }
    Kernel::new(KernelKind::JCos, mu, z)?.evaluate(spec)
}

/// `J_mu(z)` from the sin-kernel (generating-function) representation.
pub fn bessel_j_sin_kernel(mu: Complex64, z: Complex64, spec: &QuadratureSpec) -> Result<EvalOutput> {
    bessel_j_shifted(mu, 0, z, spec)
}

/// `J_{mu+n}(z)` from the sin kernel of order `mu` times `e^{-in theta}`.
pub fn bessel_j_shifted(
    mu: Complex64,
    n: u32,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<EvalOutput> {
    check_inputs(mu, z)?;
    if z == ZERO {
        return value_at_origin(mu + n as f64).map(EvalOutput::exact);
    }
    Kernel::new(KernelKind::JSin { shift: n }, mu, z)?.evaluate(spec)
}

/// Raw Fourier coefficient `integral_{-pi}^{pi} e^{iz sin t} g*(mu, z e^{it}/2) e^{int} dt`.
///
/// For `n <= 0` this is `2 pi (z/2)^{-mu} J_{mu-n}(z)`; for `n > 0` it is
/// `2 pi (z/2)^{-mu}` times the power series of `J_{mu-n}` started at `k = n`.
pub fn kappa_fourier_coeff(
    n: i64,
    mu: Complex64,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<EvalOutput> {
    check_inputs(mu, z)?;
    Kernel::new(KernelKind::Kappa { n }, mu, z)?.evaluate(spec)
}

/// `I_mu(z)`, `-pi < arg z <= pi`.
pub fn bessel_i(mu: Complex64, z: Complex64, spec: &QuadratureSpec) -> Result<EvalOutput> {
    check_inputs(mu, z)?;
    if z == ZERO {
        return value_at_origin(mu).map(EvalOutput::exact);
    }
    Kernel::new(KernelKind::I, mu, z)?.evaluate(spec)
}

/// `I_mu(z)` from the Kummer-function kernel.
pub fn bessel_i_kummer(mu: Complex64, z: Complex64, spec: &QuadratureSpec) -> Result<EvalOutput> {
    check_inputs(mu, z)?;
    if is_nonpositive_integer(mu + 1.0) {
        return Err(Error::Pole(mu + 1.0));
    }
    if z == ZERO {
        return value_at_origin(mu).map(EvalOutput::exact);
    }
    Kernel::new(KernelKind::IKummer, mu, z)?.evaluate(spec)
}

/// `J_mu(z)` from the Kummer-function kernel.
pub fn bessel_j_kummer(mu: Complex64, z: Complex64, spec: &QuadratureSpec) -> Result<EvalOutput> {
    check_inputs(mu, z)?;
    if is_nonpositive_integer(mu + 1.0) {
        return Err(Error::Pole(mu + 1.0));
    }
    if z == ZERO {
        return value_at_origin(mu).map(EvalOutput::exact);
    }
    Kernel::new(KernelKind::JKummer, mu, z)?.evaluate(spec)
}

fn binomial(k: u32, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (k - j) as f64 / (j + 1) as f64)
}

/// `d^k J_mu / dz^k` at `z = 0` for integer `k`, from the binomial expansion.
fn derivative_at_origin(mu: Complex64, k: u32) -> Result<Complex64> {
    let mut acc = ZERO;
    for m in 0..=k {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let order = mu - k as f64 + 2.0 * m as f64;
        acc += value_at_origin(order)? * (sign * binomial(k, m));
    }
    Ok(acc * 0.5f64.powi(k as i32))
}

fn derivative(
    mu: Complex64,
    k: Complex64,
    z: Complex64,
    spec: &QuadratureSpec,
    kummer: bool,
) -> Result<EvalOutput> {
    check_inputs(mu, z)?;
    OrderArg::new(mu, z).with_derivative(k).validate()?;
    let order = mu - k;
    if kummer && is_nonpositive_integer(order + 1.0) {
        return Err(Error::Pole(order + 1.0));
    }
    let integer_k = as_integer(k).filter(|&v| v >= 0).map(|v| v as u32);
    if z == ZERO {
        if order.re > 0.0 {
            return Ok(EvalOutput::exact(ZERO));
        }
        if let Some(kk) = integer_k {
            return derivative_at_origin(mu, kk).map(EvalOutput::exact);
        }
        if order != ZERO {
            return Err(Error::Branch {
                base: ZERO,
                exponent: order,
            });
        }
    }
    let kind = if kummer {
        KernelKind::JDerivKummer { k }
    } else {
        KernelKind::JDeriv { k }
    };
    let kernel = Kernel::new(kind, mu, z)?;
    if integer_k.is_some() {
        return kernel.evaluate(spec);
    }
    let mut out = kernel.evaluate(&spec.with_cap_scaled(FRACTIONAL_CAP_FACTOR))?;
    if k.re < 0.0 {
        out.warn(Warning::SlowConvergence);
    }
    Ok(out)
}

/// `d^k/dz^k J_mu(z)` for complex `k` with `Re k > -1` (sin-kernel form).
///
/// `k = 0` is exactly [`bessel_j_sin_kernel`]. Non-integer `k` makes the
/// kernel non-smooth at `theta = 0, +-pi`; those run with a 4x node cap and
/// report honest convergence.
pub fn bessel_j_deriv(
    mu: Complex64,
    k: Complex64,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<EvalOutput> {
    if k == ZERO {
        return bessel_j_sin_kernel(mu, z, spec);
    }
    derivative(mu, k, z, spec, false)
}

/// As [`bessel_j_deriv`], through the Kummer-function kernel.
pub fn bessel_j_deriv_kummer(
    mu: Complex64,
    k: Complex64,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<EvalOutput> {
    if k == ZERO {
        return bessel_j_kummer(mu, z, spec);
    }
    derivative(mu, k, z, spec, true)
}

/// Function selector for [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    J,
    I,
    Jderiv,
    Kappa,
}

/// Representation selector for [`evaluate`]. `Auto` is the cos kernel for
/// `J` and `I`, and the sin kernel for derivatives and Fourier coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    CosKernel,
    SinKernel,
    Kummer,
    Auto,
}

fn unsupported(function: Function, repr: Representation) -> Error {
    Error::Domain(format!("{function:?} has no {repr:?} representation"))
}

/// Resolves a function/representation pair to its kernel.
pub fn kernel_for(function: Function, repr: Representation, arg: &OrderArg) -> Result<Kernel> {
    arg.validate()?;
    let kind = resolve_kernel(function, repr, arg)?;
    Kernel::new(kind, arg.mu, arg.z)
}

/// The kernel a function/representation pair maps to, or [`Error::Domain`]
/// when the pair has no such representation.
pub fn resolve_kernel(function: Function, repr: Representation, arg: &OrderArg) -> Result<KernelKind> {
    use Representation::*;
    let shift = || {
        u32::try_from(arg.n)
            .map_err(|_| Error::Domain(format!("order shift must be >= 0, got {}", arg.n)))
    };
    Ok(match (function, repr) {
        (Function::J, Auto | CosKernel) if arg.n == 0 => KernelKind::JCos,
        (Function::J, SinKernel | Auto | CosKernel) => KernelKind::JSin { shift: shift()? },
        (Function::J, Kummer) if arg.n == 0 => KernelKind::JKummer,
        (Function::I, Auto | CosKernel) => KernelKind::I,
        (Function::I, Kummer) => KernelKind::IKummer,
        (Function::Jderiv, Auto | SinKernel) => KernelKind::JDeriv { k: arg.k },
        (Function::Jderiv, Kummer) => KernelKind::JDerivKummer { k: arg.k },
        (Function::Kappa, Auto | SinKernel) => KernelKind::Kappa { n: arg.n },
        _ => return Err(unsupported(function, repr)),
    })
}

/// Dispatches one evaluation. `J` with a nonzero shift `n` evaluates
/// `J_{mu+n}` from the shifted sin kernel.
pub fn evaluate(
    function: Function,
    repr: Representation,
    arg: &OrderArg,
    spec: &QuadratureSpec,
) -> Result<EvalOutput> {
    arg.validate()?;
    let (mu, z) = (arg.mu, arg.z);
    let out = match resolve_kernel(function, repr, arg)? {
        KernelKind::JCos => bessel_j(mu, z, spec)?,
        KernelKind::JSin { shift } => bessel_j_shifted(mu, shift, z, spec)?,
        KernelKind::JKummer => bessel_j_kummer(mu, z, spec)?,
        KernelKind::I => bessel_i(mu, z, spec)?,
        KernelKind::IKummer => bessel_i_kummer(mu, z, spec)?,
        KernelKind::JDeriv { k } => bessel_j_deriv(mu, k, z, spec)?,
        KernelKind::JDerivKummer { k } => bessel_j_deriv_kummer(mu, k, z, spec)?,
        KernelKind::Kappa { n } => kappa_fourier_coeff(n, mu, z, spec)?,
    };
    let order = match function {
        Function::Jderiv => mu - arg.k,
        Function::Kappa => return Ok(out),
        _ => mu,
    };
    Ok(with_cut_warning(out, order, z))
}
