//! Residual evaluators for the hypergeometric identities and the period
//! relations satisfied by `dn2`.
//!
//! Every checker reports `lhs − rhs` (never a ratio) so that a systematic
//! bias in one evaluator shows up as a consistent sign.

use std::f64::consts::SQRT_2;

use crate::error::{domain, Result};
use crate::hypergeom::{gauss_2f1, gauss_2f1_complement, HyperParams};
use crate::shen::{periods, Modulus, PeriodMethod};

pub const BBG_TOL: f64 = 1e-12;
pub const TRANSFORM_TOL: f64 = 1e-11;
pub const RELATION_TOL: f64 = 1e-12;
pub const CONSTRAINT_TOL: f64 = 1e-15;

/// One identity evaluated at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub identity: &'static str,
    pub parameter: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(identity: &'static str, parameter: f64, lhs: f64, rhs: f64, tol: f64) -> Self {
        let residual = lhs - rhs;
        ResidualReport {
            identity,
            parameter,
            lhs,
            rhs,
            residual,
            tol,
            pass: residual.abs() <= tol,
        }
    }

    /// Re-judges the report against a different tolerance.
    pub fn with_tol(self, tol: f64) -> Self {
        ResidualReport {
            tol,
            pass: self.residual.abs() <= tol,
            ..self
        }
    }
}

fn f4(x: f64) -> Result<f64> {
    gauss_2f1(HyperParams::SIGNATURE_FOUR, x)
}

/// `F(1/4,3/4;1;1−w)`.
fn f4c(w: f64) -> Result<f64> {
    gauss_2f1_complement(HyperParams::SIGNATURE_FOUR, w)
}

fn f2(x: f64) -> Result<f64> {
    gauss_2f1(HyperParams::CLASSICAL, x)
}

/// `F(1/2,1/2;1;1−w)`.
fn f2c(w: f64) -> Result<f64> {
    gauss_2f1_complement(HyperParams::CLASSICAL, w)
}

fn open_unit(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(domain(what, v, "0 < value < 1"))
    }
}

fn bbg_92_lhs(lambda: f64) -> Result<f64> {
    f4c(lambda * lambda)
}

fn bbg_92_rhs(lambda: f64) -> Result<f64> {
    Ok((2.0 / (1.0 + lambda)).sqrt() * f2((1.0 - lambda) / (1.0 + lambda))?)
}

fn bbg_91_lhs(lambda: f64) -> Result<f64> {
    f4(lambda * lambda)
}

fn bbg_91_rhs(lambda: f64) -> Result<f64> {
    Ok((1.0 / (1.0 + lambda)).sqrt() * f2c((1.0 - lambda) / (1.0 + lambda))?)
}

fn transform_lhs(x: f64) -> Result<f64> {
    Ok((1.0 + 3.0 * x).sqrt() * f4(x * x)?)
}

fn transform_rhs(x: f64) -> Result<f64> {
    let y = symmetric_pair(x);
    f4c(y * y)
}

/// `F(1/4,3/4;1;1−λ²) = √(2/(1+λ))·F(1/2,1/2;1;(1−λ)/(1+λ))`.
pub fn identity_bbg_92(lambda: f64) -> Result<ResidualReport> {
    open_unit("lambda", lambda)?;
    Ok(ResidualReport::new(
        "bbg_9.2",
        lambda,
        bbg_92_lhs(lambda)?,
        bbg_92_rhs(lambda)?,
        BBG_TOL,
    ))
}

/// `F(1/4,3/4;1;λ²) = √(1/(1+λ))·F(1/2,1/2;1;2λ/(1+λ))`.
pub fn identity_bbg_91(lambda: f64) -> Result<ResidualReport> {
    open_unit("lambda", lambda)?;
    Ok(ResidualReport::new(
        "bbg_9.1",
        lambda,
        bbg_91_lhs(lambda)?,
        bbg_91_rhs(lambda)?,
        BBG_TOL,
    ))
}

/// `√(1+3x)·F(1/4,3/4;1;x²) = F(1/4,3/4;1;1−y²)` with `y = (1−x)/(1+3x)`.
pub fn transform_signature4(x: f64) -> Result<ResidualReport> {
    open_unit("x", x)?;
    Ok(ResidualReport::new(
        "transformation",
        x,
        transform_lhs(x)?,
        transform_rhs(x)?,
        TRANSFORM_TOL,
    ))
}

/// `y = (1 − x)/(1 + 3x)`, the partner of `x` under `x + y + 3xy = 1`.
///
/// A decreasing involution of `[0, 1]` with fixed point `1/3`.
pub fn symmetric_pair(x: f64) -> f64 {
    (1.0 - x) / (1.0 + 3.0 * x)
}

/// Residual of `x + y + 3xy = 1` for `y = symmetric_pair(x)`.
pub fn symmetric_constraint(x: f64) -> Result<ResidualReport> {
    open_unit("x", x)?;
    let y = symmetric_pair(x);
    Ok(ResidualReport::new(
        "x+y+3xy=1",
        x,
        x + y + 3.0 * x * y,
        1.0,
        CONSTRAINT_TOL,
    ))
}

/// The four period relations between the moduli `κ` and `λ`, using the
/// elliptic-integral periods:
///
/// * `K′κ = √2·Kλ`
/// * `K′λ = √2·Kκ`
/// * `Kκ·K′κ = Kλ·K′λ`
/// * `(K′κ/Kκ)·(K′λ/Kλ) = 2`
pub fn period_relations(kappa: f64) -> Result<Vec<ResidualReport>> {
    let md = Modulus::new(kappa)?;
    let pk = periods(&md, PeriodMethod::Elliptic)?;
    let pl = periods(&md.complement(), PeriodMethod::Elliptic)?;
    Ok(vec![
        ResidualReport::new(
            "K'k=sqrt2*Kl",
            kappa,
            pk.k_prime,
            SQRT_2 * pl.k,
            RELATION_TOL,
        ),
        ResidualReport::new(
            "K'l=sqrt2*Kk",
            kappa,
            pl.k_prime,
            SQRT_2 * pk.k,
            RELATION_TOL,
        ),
        ResidualReport::new(
            "equal_area",
            kappa,
            pk.k * pk.k_prime,
            pl.k * pl.k_prime,
            RELATION_TOL,
        ),
        ResidualReport::new(
            "ratio_product",
            kappa,
            pk.ratio() * pl.ratio(),
            2.0,
            RELATION_TOL,
        ),
    ])
}

/// Parameter grid `step, 2·step, …` stopping short of 1 by at least half a
/// step.
pub fn sweep_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step < 0.5) {
        return Err(domain("step", step, "0 < step < 0.5"));
    }
    let limit = 1.0 - 0.5 * step;
    Ok((1..)
        .map(|j| j as f64 * step)
        .take_while(|&v| v < limit)
        .collect())
}

/// Every checker at a single grid parameter.
///
/// `perturb` shifts the parameter seen by the left-hand sides of the three
/// hypergeometric identities; a non-zero value must make them fail.
pub fn sweep_point(p: f64, perturb: f64) -> Result<Vec<ResidualReport>> {
    open_unit("parameter", p)?;
    let lp = p + perturb;
    let mut out = vec![
        ResidualReport::new("bbg_9.2", p, bbg_92_lhs(lp)?, bbg_92_rhs(p)?, BBG_TOL),
        ResidualReport::new("bbg_9.1", p, bbg_91_lhs(lp)?, bbg_91_rhs(p)?, BBG_TOL),
        ResidualReport::new(
            "transformation",
            p,
            transform_lhs(lp)?,
            transform_rhs(p)?,
            TRANSFORM_TOL,
        ),
        symmetric_constraint(p)?,
    ];
    out.extend(period_relations(p)?);
    Ok(out)
}
