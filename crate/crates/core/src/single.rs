//! Single-mode kernel `A exp(-a1 x^2 - a2 x'^2 + 2 b x x')`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bipartite::entropy::{report_from_factors, EntropyOrder, EntropyReport, Physicality};
use crate::error::{invalid, Error, Result};
use crate::math::{hermite, ln_hermite_norm_sq, GeometricParam};

/// Largest eigenfunction degree served; the normalization sum loses
/// accuracy beyond it.
pub const MAX_DEGREE: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleParams {
    /// Coefficient of the unprimed `x^2`.
    pub a1: f64,
    /// Coefficient of the primed `x'^2`.
    pub a2: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleDerived {
    pub epsilon0: f64,
    pub alpha0: f64,
    pub xi0: f64,
    /// Kernel normalization `A = sqrt((a1 + a2 - 2b) / pi)`.
    pub norm: f64,
}

impl SingleParams {
    pub fn new(a1: f64, a2: f64, b: f64) -> Self {
        Self { a1, a2, b }
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a1, a2, b } = *self;
        if ![a1, a2, b].iter().all(|v| v.is_finite()) {
            return Err(invalid("single: parameters must be finite"));
        }
        if !(a1 > 0.0) {
            return Err(invalid(format!("single: a1 > 0 violated (a1 = {a1})")));
        }
        if !(a2 > 0.0) {
            return Err(invalid(format!("single: a2 > 0 violated (a2 = {a2})")));
        }
        if !(a1 + a2 - 2.0 * b > 0.0) {
            return Err(invalid(format!("single: a1 + a2 - 2b > 0 violated ({})", a1 + a2 - 2.0 * b)));
        }
        if !(a1 + a2 + 2.0 * b > 0.0) {
            return Err(invalid(format!("single: a1 + a2 + 2b > 0 violated ({})", a1 + a2 + 2.0 * b)));
        }
        Ok(())
    }
}

pub fn single_derive(p: &SingleParams) -> Result<SingleDerived> {
    p.validate()?;
    let s = p.a1 + p.a2;
    let epsilon0 = ((s - 2.0 * p.b) * (s + 2.0 * p.b)).sqrt();
    let alpha0 = epsilon0 - (p.a1 - p.a2);
    if !(alpha0 > 0.0) {
        return Err(invalid(format!(
            "single: alpha0 = eps0 - (a1 - a2) > 0 violated ({alpha0})"
        )));
    }
    Ok(SingleDerived {
        epsilon0,
        alpha0,
        xi0: 2.0 * p.b / (s + epsilon0),
        norm: ((s - 2.0 * p.b) / PI).sqrt(),
    })
}

pub fn single_eigenvalue(p: &SingleParams, n: usize) -> Result<f64> {
    let d = single_derive(p)?;
    Ok(GeometricParam::new(d.xi0).eigenvalue(n))
}

/// Normalized right eigenfunction `C_n^{-1} H_n(sqrt(eps0) x) exp(-alpha0 x^2 / 2)`.
pub fn single_eigenfunction(p: &SingleParams, n: usize, x: f64) -> Result<f64> {
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { degree: n, max: MAX_DEGREE });
    }
    let d = single_derive(p)?;
    mode_value(n, d.epsilon0, d.alpha0, x)
}

/// `C_n^{-1} H_n(sqrt(eps) x) exp(-alpha x^2 / 2)` for arbitrary `(eps, alpha)`.
pub(crate) fn mode_value(n: usize, eps: f64, alpha: f64, x: f64) -> Result<f64> {
    let ln_c2 = ln_hermite_norm_sq(n, eps, alpha)?;
    Ok(hermite(n, eps.sqrt() * x) * (-0.5 * ln_c2 - 0.5 * alpha * x * x).exp())
}

pub fn single_kernel(p: &SingleParams, xp: f64, x: f64) -> Result<f64> {
    p.validate()?;
    let a = ((p.a1 + p.a2 - 2.0 * p.b) / PI).sqrt();
    Ok(a * (-p.a1 * x * x - p.a2 * xp * xp + 2.0 * p.b * x * xp).exp())
}

/// Closed-form `tr rho^2 = (a1 + a2 - 2b) / eps0`.
pub fn single_purity(p: &SingleParams) -> Result<f64> {
    let d = single_derive(p)?;
    Ok((p.a1 + p.a2 - 2.0 * p.b) / d.epsilon0)
}

pub fn single_entropies(p: &SingleParams, orders: &[EntropyOrder]) -> Result<EntropyReport> {
    let d = single_derive(p)?;
    let class = if d.xi0 == 0.0 {
        Physicality::Pure
    } else if d.xi0 < 0.0 {
        Physicality::Unphysical
    } else {
        Physicality::PhysicalMixed
    };
    report_from_factors(&[d.xi0], class, false, single_purity(p)?, orders)
}
