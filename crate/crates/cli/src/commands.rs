use std::fmt::Write as _;

use besselquad::bessel::{self, EvalOutput, Function, OrderArg, Representation};
use besselquad::identities::{self, registry, Subject, SuiteConfig};
use besselquad::oracles::IdentityReport;
use besselquad::quadrature::QuadratureSpec;
use clap::ValueEnum;
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::render::{csv_field, csv_warnings, json_num, json_str, json_warnings, num, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_WARNINGS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Eval(#[from] besselquad::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Eval(_) => EXIT_FAILURE,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    #[value(name = "J")]
    J,
    #[value(name = "I")]
    I,
    #[value(name = "Jderiv")]
    Jderiv,
    #[value(name = "kappa")]
    Kappa,
}

impl From<FunctionArg> for Function {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::J => Function::J,
            FunctionArg::I => Function::I,
            FunctionArg::Jderiv => Function::Jderiv,
            FunctionArg::Kappa => Function::Kappa,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReprArg {
    #[value(name = "cos_kernel")]
    CosKernel,
    #[value(name = "sin_kernel")]
    SinKernel,
    Kummer,
    Auto,
}

impl From<ReprArg> for Representation {
    fn from(r: ReprArg) -> Self {
        match r {
            ReprArg::CosKernel => Representation::CosKernel,
            ReprArg::SinKernel => Representation::SinKernel,
            ReprArg::Kummer => Representation::Kummer,
            ReprArg::Auto => Representation::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Output of one command: text for each stream and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// One point evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRequest {
    pub function: Function,
    pub mu: Complex64,
    pub z: Complex64,
    /// Derivative order (`Jderiv` only).
    pub k: Complex64,
    /// Order shift for `J`, coefficient index for `kappa`.
    pub n: i64,
    pub spec: QuadratureSpec,
    pub representation: Representation,
}

impl EvalRequest {
    pub fn new(function: Function, mu: Complex64, z: Complex64) -> Self {
        EvalRequest {
            function,
            mu,
            z,
            k: Complex64::new(0.0, 0.0),
            n: 0,
            spec: QuadratureSpec::default(),
            representation: Representation::Auto,
        }
    }

    fn arg(&self) -> OrderArg {
        OrderArg::new(self.mu, self.z)
            .with_derivative(self.k)
            .with_shift(self.n)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.spec.validate().map_err(usage)?;
        if self.function != Function::Jderiv && self.k != Complex64::new(0.0, 0.0) {
            return Err(usage("--k applies to Jderiv only"));
        }
        if matches!(self.function, Function::I | Function::Jderiv) && self.n != 0 {
            return Err(usage("--n applies to J and kappa only"));
        }
        let arg = self.arg();
        arg.validate().map_err(usage)?;
        bessel::resolve_kernel(self.function, self.representation, &arg).map_err(usage)?;
        Ok(())
    }

    pub fn evaluate(&self) -> besselquad::Result<EvalOutput> {
        bessel::evaluate(self.function, self.representation, &self.arg(), &self.spec)
    }
}

fn outcome_code(out: &EvalOutput) -> i32 {
    if out.has_warnings() {
        EXIT_WARNINGS
    } else {
        EXIT_OK
    }
}

fn json_eval(out: &EvalOutput) -> String {
    format!(
        "{{\"value_re\":{},\"value_im\":{},\"err_est\":{},\"nodes\":{},\"warnings\":{}}}",
        json_num(out.value.re),
        json_num(out.value.im),
        json_num(out.err_est),
        out.nodes_used,
        json_warnings(&out.warnings)
    )
}

fn csv_row(mu: Complex64, z: Complex64, result: &besselquad::Result<EvalOutput>) -> String {
    let head = format!("{},{},{},{}", num(mu.re), num(mu.im), num(z.re), num(z.im));
    match result {
        Ok(out) => format!(
            "{head},{},{},{},{},{}",
            num(out.value.re),
            num(out.value.im),
            num(out.err_est),
            out.nodes_used,
            csv_warnings(&out.warnings)
        ),
        Err(e) => format!("{head},nan,nan,nan,0,{}", csv_field(&format!("error: {e}"))),
    }
}

fn json_row(mu: Complex64, z: Complex64, result: &besselquad::Result<EvalOutput>) -> String {
    let head = format!(
        "\"mu_re\":{},\"mu_im\":{},\"z_re\":{},\"z_im\":{}",
        json_num(mu.re),
        json_num(mu.im),
        json_num(z.re),
        json_num(z.im)
    );
    match result {
        Ok(out) => format!(
            "{{{head},\"value_re\":{},\"value_im\":{},\"err_est\":{},\"nodes\":{},\"warnings\":{},\"error\":null}}",
            json_num(out.value.re),
            json_num(out.value.im),
            json_num(out.err_est),
            out.nodes_used,
            json_warnings(&out.warnings)
        ),
        Err(e) => format!(
            "{{{head},\"value_re\":null,\"value_im\":null,\"err_est\":null,\"nodes\":0,\"warnings\":[],\"error\":{}}}",
            json_str(&e.to_string())
        ),
    }
}

/// Evaluates one point. Evaluation errors surface as [`CliError::Eval`].
pub fn cmd_eval(req: &EvalRequest, format: Format) -> Result<Rendered, CliError> {
    req.validate()?;
    let out = req.evaluate()?;
    let stdout = match format {
        Format::Json => format!("{}\n", json_eval(&out)),
        Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(req.mu, req.z, &Ok(out.clone()))),
    };
    Ok(Rendered {
        stdout,
        stderr: String::new(),
        code: outcome_code(&out),
    })
}

/// A grid evaluation; rows are `mu`-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRequest {
    pub request: EvalRequest,
    pub mu_grid: Vec<Complex64>,
    pub z_grid: Vec<Complex64>,
    pub format: Format,
}

fn evaluate_grid(req: &TableRequest) -> Vec<(Complex64, Complex64, besselquad::Result<EvalOutput>)> {
    let points: Vec<(Complex64, Complex64)> = req
        .mu_grid
        .iter()
        .flat_map(|&mu| req.z_grid.iter().map(move |&z| (mu, z)))
        .collect();
    points
        .par_iter()
        .map(|&(mu, z)| {
            let point = EvalRequest { mu, z, ..req.request };
            (mu, z, point.evaluate())
        })
        .collect()
}

/// Evaluates a grid, fanning rows out over `threads` workers (the rayon
/// default when `None`). Output order never depends on scheduling.
pub fn cmd_table(req: &TableRequest, threads: Option<usize>) -> Result<Rendered, CliError> {
    if req.mu_grid.is_empty() || req.z_grid.is_empty() {
        return Err(usage("grids must be non-empty"));
    }
    for &mu in &req.mu_grid {
        for &z in &req.z_grid {
            EvalRequest { mu, z, ..req.request }.validate()?;
        }
    }
    let rows = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(usage)?
            .install(|| evaluate_grid(req)),
        None => evaluate_grid(req),
    };
    let mut stdout = String::new();
    if req.format == Format::Csv {
        stdout.push_str(CSV_HEADER);
        stdout.push('\n');
    }
    let mut code = EXIT_OK;
    for (mu, z, result) in &rows {
        let line = match req.format {
            Format::Json => json_row(*mu, *z, result),
            Format::Csv => csv_row(*mu, *z, result),
        };
        stdout.push_str(&line);
        stdout.push('\n');
        code = match result {
            Err(_) => EXIT_FAILURE,
            Ok(out) if out.has_warnings() && code == EXIT_OK => EXIT_WARNINGS,
            _ => code,
        };
    }
    Ok(Rendered {
        stdout,
        stderr: String::new(),
        code,
    })
}

/// One fixed-size rule in a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergeRow {
    pub nodes: usize,
    pub value: Complex64,
    /// `|S_N - S_{N/2}|`.
    pub delta: f64,
}

/// Fixed-size rules at each node count, each compared with the rule at half
/// the nodes.
pub fn converge_rows(req: &EvalRequest, nodes: &[usize]) -> Result<Vec<ConvergeRow>, CliError> {
    req.validate()?;
    if nodes.iter().any(|&n| n < 2 || !n.is_power_of_two()) || nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("node counts must be ascending powers of two >= 2"));
    }
    let kernel = bessel::kernel_for(req.function, req.representation, &req.arg())?;
    let mut rows = Vec::with_capacity(nodes.len());
    let mut prev: Option<(usize, Complex64)> = None;
    for &n in nodes {
        let half = match prev {
            Some((m, v)) if m == n / 2 => v,
            _ => kernel.evaluate_fixed(n / 2)?,
        };
        let value = kernel.evaluate_fixed(n)?;
        rows.push(ConvergeRow {
            nodes: n,
            value,
            delta: (value - half).norm(),
        });
        prev = Some((n, value));
    }
    Ok(rows)
}

pub fn cmd_converge(req: &EvalRequest, nodes: &[usize], format: Format) -> Result<Rendered, CliError> {
    let rows = converge_rows(req, nodes)?;
    let mut stdout = String::new();
    if format == Format::Csv {
        stdout.push_str("n,value_re,value_im,delta\n");
    }
    for r in rows {
        let line = match format {
            Format::Json => format!(
                "{{\"n\":{},\"value_re\":{},\"value_im\":{},\"delta\":{}}}",
                r.nodes,
                json_num(r.value.re),
                json_num(r.value.im),
                json_num(r.delta)
            ),
            Format::Csv => format!("{},{},{},{}", r.nodes, num(r.value.re), num(r.value.im), num(r.delta)),
        };
        let _ = writeln!(stdout, "{line}");
    }
    Ok(Rendered {
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestRequest {
    pub config: SuiteConfig,
    pub verbose: bool,
    pub format: Format,
}

fn summary(reports: &[IdentityReport], verbose: bool) -> String {
    let known = registry();
    let mut s = String::new();
    for r in reports {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{tag} {:<26} samples={:<4} max_rel={:.2e} max_abs={:.2e}",
            r.identity_id, r.samples, r.max_rel_err, r.max_abs_err
        );
        if verbose {
            if let Some(i) = known.iter().find(|i| i.id == r.identity_id) {
                let _ = writeln!(s, "     {}", i.description);
            }
            if let Some(f) = &r.first_failure {
                let _ = writeln!(s, "     first failure: {f}");
            }
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    let _ = writeln!(s, "{passed}/{} identities passed", reports.len());
    s
}

fn report_json(seed: u64, reports: &[IdentityReport]) -> String {
    let items: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{{\"id\":{},\"pass\":{},\"max_rel_err\":{},\"max_abs_err\":{},\"samples\":{},\"first_failure\":{}}}",
                json_str(&r.identity_id),
                r.pass,
                json_num(r.max_rel_err),
                json_num(r.max_abs_err),
                r.samples,
                r.first_failure.as_deref().map_or("null".into(), json_str)
            )
        })
        .collect();
    let pass = reports.iter().all(|r| r.pass);
    format!(
        "{{\"seed\":{seed},\"pass\":{pass},\"identities\":[{}]}}\n",
        items.join(",")
    )
}

fn report_csv(reports: &[IdentityReport]) -> String {
    let mut s = String::from("id,pass,max_rel_err,max_abs_err,samples\n");
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.identity_id,
            r.pass,
            num(r.max_rel_err),
            num(r.max_abs_err),
            r.samples
        );
    }
    s
}

/// Runs the identity registry against `subject`. Exit 0 iff every selected
/// identity passes.
pub fn selftest_with(req: &SelftestRequest, subject: &Subject) -> Result<Rendered, CliError> {
    identities::check_filter(&req.config).map_err(usage)?;
    req.config.spec.validate().map_err(usage)?;
    let reports = identities::run_identities(&registry(), subject, &req.config);
    let stdout = match req.format {
        Format::Json => report_json(req.config.seed, &reports),
        Format::Csv => report_csv(&reports),
    };
    let code = if reports.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    Ok(Rendered {
        stdout,
        stderr: summary(&reports, req.verbose),
        code,
    })
}

pub fn cmd_selftest(req: &SelftestRequest) -> Result<Rendered, CliError> {
    selftest_with(req, &Subject::default())
}
