//! Reduced-equation solvers and the end-to-end pipeline: reduce, solve the
//! reduced equation, recover `X`, and check `X` against the original equation.

mod spectral;
mod stein;
mod sylvester;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use spectral::spectral_radius_estimate;
pub use stein::{solve_stein_direct, solve_stein_direct_with_cap, solve_stein_smith, SmithSolution, SMITH_RHO_LIMIT};
pub use sylvester::{solve_sylvester_direct, solve_sylvester_direct_with_cap};

use crate::error::{Error, Result};
use crate::matcore::{Lu, Mat};
use crate::oracle::solve_dense_oracle;
use crate::transform::{
    stein_residual, sylvester_residual, to_stein_via_a, to_stein_via_b, to_sylvester, Side, SteinForm,
    TcsProblem, DEFAULT_DENSE_CAP,
};

/// Spectral radius estimate below which `SteinSolver::Auto` picks Smith.
pub const SMITH_AUTO_THRESHOLD: f64 = 0.95;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    LyapunovViaA,
    LyapunovViaB,
    Sylvester,
    Oracle,
    Auto,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::LyapunovViaA => "lyapunov-a",
            Method::LyapunovViaB => "lyapunov-b",
            Method::Sylvester => "sylvester",
            Method::Oracle => "oracle",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Method, String> {
        match s {
            "lyapunov-a" => Ok(Method::LyapunovViaA),
            "lyapunov-b" => Ok(Method::LyapunovViaB),
            "sylvester" => Ok(Method::Sylvester),
            "oracle" => Ok(Method::Oracle),
            "auto" => Ok(Method::Auto),
            _ => Err(format!("unknown method '{s}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SteinSolver {
    Direct,
    Smith,
    Auto,
}

impl SteinSolver {
    pub fn as_str(&self) -> &'static str {
        match self {
            SteinSolver::Direct => "direct",
            SteinSolver::Smith => "smith",
            SteinSolver::Auto => "auto",
        }
    }
}

impl fmt::Display for SteinSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SteinSolver {
    type Err = String;

    fn from_str(s: &str) -> Result<SteinSolver, String> {
        match s {
            "direct" => Ok(SteinSolver::Direct),
            "smith" => Ok(SteinSolver::Smith),
            "auto" => Ok(SteinSolver::Auto),
            _ => Err(format!("unknown Stein solver '{s}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    /// Acceptance threshold for the scaled residual of the original equation.
    pub tol: f64,
    /// Cap on Smith squaring steps.
    pub max_iter: usize,
    pub stein_solver: SteinSolver,
    pub method: Method,
    /// Largest `n` for which `n² x n²` reduced operators are assembled.
    pub dense_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions {
            tol: 1e-8,
            max_iter: 64,
            stein_solver: SteinSolver::Auto,
            method: Method::Auto,
            dense_cap: DEFAULT_DENSE_CAP,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::Value(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::Value("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub x: Mat,
    /// `‖AX + XᵀB − C‖_F / (‖A‖_F‖X‖_F + ‖X‖_F‖B‖_F + ‖C‖_F)` on the untouched input.
    pub residual_original: f64,
    pub residual_reduced: f64,
    pub method_used: Method,
    pub stein_solver_used: Option<SteinSolver>,
    pub spectral_radius_estimate: Option<f64>,
    pub iterations: usize,
    pub wall_time: Duration,
    pub warnings: Vec<String>,
}

/// Scaled Frobenius residual of `AX + XᵀB = C`.
pub fn residual(p: &TcsProblem, x: &Mat) -> Result<f64> {
    let r = p.apply(x)?.sub(p.c())?.frobenius();
    let xn = x.frobenius();
    let scale = p.a().frobenius() * xn + xn * p.b().frobenius() + p.c().frobenius();
    Ok(if scale == 0.0 { r } else { r / scale })
}

/// Recovers `X` from the reduced unknown: `AX = Y` (via A) or `BᵀX = Yᵀ` (via B).
pub fn back_substitute(s: &SteinForm, reduced_solution: &Mat) -> Result<Mat> {
    let lu = Lu::factor(&s.back_ref)?;
    match s.side {
        Side::ViaA => lu.solve(reduced_solution),
        Side::ViaB => lu.solve_transpose(&reduced_solution.transpose()),
    }
}

struct Candidate {
    x: Mat,
    residual_reduced: f64,
    method: Method,
    stein_solver: Option<SteinSolver>,
    rho: Option<f64>,
    iterations: usize,
    warnings: Vec<String>,
}

fn solve_stein_form(s: &SteinForm, opts: &SolveOptions, method: Method) -> Result<Candidate> {
    let rho = spectral_radius_estimate(&s.m_coef);
    let mut warnings = Vec::new();
    let direct = || -> Result<(Mat, SteinSolver, usize)> {
        Ok((solve_stein_direct_with_cap(&s.m_coef, &s.q, opts.dense_cap)?, SteinSolver::Direct, 0))
    };
    let smith = || -> Result<(Mat, SteinSolver, usize)> {
        let sol = solve_stein_smith(&s.m_coef, &s.q, opts)?;
        Ok((sol.x, SteinSolver::Smith, sol.iterations))
    };
    let (y, used, iterations) = match opts.stein_solver {
        SteinSolver::Direct => direct()?,
        SteinSolver::Smith => smith()?,
        SteinSolver::Auto if rho < SMITH_AUTO_THRESHOLD => match smith() {
            Ok(r) => r,
            Err(Error::NotConvergent(why)) => {
                warnings.push(format!("Smith iteration failed ({why}); using the direct solver"));
                match direct() {
                    Err(Error::Capacity(cap)) => {
                        return Err(Error::NotConvergent(format!("{why}; direct solver unavailable: {cap}")))
                    }
                    other => other?,
                }
            }
            Err(e) => return Err(e),
        },
        SteinSolver::Auto => match direct() {
            Err(Error::Capacity(cap)) if rho < SMITH_RHO_LIMIT => {
                warnings.push(format!("direct solver unavailable ({cap}); trying Smith iteration"));
                smith()?
            }
            Err(Error::Capacity(cap)) => {
                return Err(Error::NotConvergent(format!(
                    "spectral radius estimate {rho:.4} rules out Smith iteration and {cap}"
                )))
            }
            other => other?,
        },
    };
    let residual_reduced = stein_residual(&s.m_coef, &s.q, &y)?;
    let x = back_substitute(s, &y)?;
    Ok(Candidate { x, residual_reduced, method, stein_solver: Some(used), rho: Some(rho), iterations, warnings })
}

fn solve_sylvester_route(p: &TcsProblem, opts: &SolveOptions) -> Result<Candidate> {
    let f = to_sylvester(p)?;
    let y = solve_sylvester_direct_with_cap(&f, opts.dense_cap)?;
    let residual_reduced = sylvester_residual(&f, &y)?;
    let x = Lu::factor(&f.back_ref)?.solve(&y)?;
    Ok(Candidate {
        x,
        residual_reduced,
        method: Method::Sylvester,
        stein_solver: None,
        rho: Some(spectral_radius_estimate(&f.neg_m)),
        iterations: 0,
        warnings: Vec::new(),
    })
}

fn solve_oracle_route(p: &TcsProblem) -> Result<Candidate> {
    let x = solve_dense_oracle(p).map_err(|e| match e {
        Error::SingularOperator { context, kind } => Error::NoUniqueSolution { context, kind },
        other => other,
    })?;
    let r = residual(p, &x)?;
    Ok(Candidate {
        x,
        residual_reduced: r,
        method: Method::Oracle,
        stein_solver: None,
        rho: None,
        iterations: 0,
        warnings: Vec::new(),
    })
}

fn run_method(p: &TcsProblem, opts: &SolveOptions, method: Method) -> Result<Candidate> {
    match method {
        Method::LyapunovViaA => solve_stein_form(&to_stein_via_a(p)?, opts, method),
        Method::LyapunovViaB => solve_stein_form(&to_stein_via_b(p)?, opts, method),
        Method::Sylvester => solve_sylvester_route(p, opts),
        Method::Oracle => solve_oracle_route(p),
        Method::Auto => unreachable!("auto is resolved by the caller"),
    }
}

fn finish(p: &TcsProblem, opts: &SolveOptions, c: Candidate, start: Instant) -> Result<SolveReport> {
    let residual_original = residual(p, &c.x)?;
    let report = SolveReport {
        x: c.x,
        residual_original,
        residual_reduced: c.residual_reduced,
        method_used: c.method,
        stein_solver_used: c.stein_solver,
        spectral_radius_estimate: c.rho,
        iterations: c.iterations,
        wall_time: start.elapsed(),
        warnings: c.warnings,
    };
    if !(residual_original <= opts.tol) {
        return Err(Error::SpuriousSolution(Box::new(report)));
    }
    Ok(report)
}

/// Solves `AX + XᵀB = C`.
///
/// `Method::Auto` goes through `A` when it is nonsingular, else through `B`,
/// else the dense oracle. When a reduction is taken but its reduced operator
/// is singular or its candidate fails the original equation, Auto retries
/// with the dense oracle, since the reduction is only a forward implication.
/// Every returned report satisfies `residual_original <= opts.tol`.
pub fn solve_tcs(p: &TcsProblem, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let start = Instant::now();
    if opts.method != Method::Auto {
        let c = run_method(p, opts, opts.method)?;
        return finish(p, opts, c, start);
    }

    let reduction = [Method::LyapunovViaA, Method::LyapunovViaB]
        .into_iter()
        .map(|m| (m, run_method(p, opts, m)))
        .find(|(_, r)| !matches!(r, Err(Error::SingularMatrix(_))));
    let Some((method, attempt)) = reduction else {
        let mut c = solve_oracle_route(p)?;
        c.warnings.push("A and B are both singular; solved the assembled system directly".into());
        return finish(p, opts, c, start);
    };

    let failure = match attempt.and_then(|c| finish(p, opts, c, start)) {
        Ok(report) => return Ok(report),
        Err(e @ (Error::SingularOperator { .. } | Error::SpuriousSolution(_))) => e,
        Err(e) => return Err(e),
    };
    if p.n() > crate::oracle::ORACLE_MAX_N {
        return Err(failure);
    }
    let mut c = match solve_oracle_route(p) {
        Ok(c) => c,
        Err(Error::NoUniqueSolution { context, kind }) => {
            return Err(Error::NoUniqueSolution {
                context: format!("{method} reduction failed ({failure}); {context}"),
                kind,
            })
        }
        Err(e) => return Err(e),
    };
    c.warnings.push(format!("{method} reduction failed ({failure}); solved the assembled system directly"));
    finish(p, opts, c, start)
}
