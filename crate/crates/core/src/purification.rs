//! Three-mode pure states whose partial trace over `x3` gives a bipartite
//! kernel, on the parameter surfaces where one spectral parameter vanishes.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bipartite::{is_positive_definite, TypeIIIParams, TypeIIParams, TypeIParams};
use crate::error::{invalid, Error, Result};

/// Tolerance for recognising the surfaces `c = ±f`.
pub const SURFACE_TOL: f64 = 1e-12;
/// Relative tolerance for `c1 c2 = |f|^2`.
pub const SURFACE_REL_TOL: f64 = 1e-10;

/// `psi(x) = sqrt(N) exp(-x^T P x)`, `x = (x1, x2, x3)`, `P` complex symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureState3 {
    pub normalization: f64,
    pub quad: [[Complex64; 3]; 3],
}

impl PureState3 {
    fn from_upper(normalization: f64, p11: Complex64, p22: Complex64, p33: Complex64, p12: Complex64, p13: Complex64, p23: Complex64) -> Self {
        Self { normalization, quad: [[p11, p12, p13], [p12, p22, p23], [p13, p23, p33]] }
    }

    /// `Re P` positive definite, i.e. `|psi|^2` integrable.
    pub fn is_normalizable(&self) -> bool {
        let re: Vec<f64> = self.quad.iter().flatten().map(|z| z.re).collect();
        is_positive_definite(&re, 3)
    }
}

pub fn psi_eval(s: &PureState3, x1: f64, x2: f64, x3: f64) -> Complex64 {
    let x = [x1, x2, x3];
    let mut e = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        for j in 0..3 {
            e += s.quad[i][j] * (x[i] * x[j]);
        }
    }
    s.normalization.sqrt() * (-e).exp()
}

/// Which of the surfaces `c = f` or `c = -f` a type I parameter set lies on.
fn surface_sign(c: f64, f: f64) -> Option<f64> {
    if (c - f).abs() <= SURFACE_TOL {
        Some(1.0)
    } else if (c + f).abs() <= SURFACE_TOL {
        Some(-1.0)
    } else {
        None
    }
}

/// Purification of a type I kernel with `c = ±f = z`, `z >= 0`.
pub fn purify_type_i(p: &TypeIParams) -> Result<PureState3> {
    p.validate()?;
    let TypeIParams { a1, a2, b, c, f } = *p;
    let s = surface_sign(c, f).ok_or_else(|| {
        Error::ConditionNotMet(format!("type I purification needs c = f or c = -f (c = {c}, f = {f})"))
    })?;
    let z = c;
    if z < 0.0 {
        return Err(Error::NegativeZ(z));
    }
    let d = (a1 - z) * (a2 - z) - (b + s * z).powi(2);
    if !(d > 0.0) {
        return Err(invalid(format!("purification: (a1-z)(a2-z) - (b±z)^2 > 0 violated ({d})")));
    }
    let p13 = 0.5 * (z / d).sqrt();
    Ok(PureState3::from_upper(
        PI.powf(-1.5),
        (a1 + z).into(),
        (a2 + z).into(),
        (1.0 / (8.0 * d)).into(),
        (s * z - b).into(),
        p13.into(),
        (s * p13).into(),
    ))
}

/// Purification of a type II kernel; known only for `a1 = a2`, `b1 = b2`,
/// where the kernel coincides with type I.
pub fn purify_type_ii(p: &TypeIIParams) -> Result<PureState3> {
    p.validate()?;
    let TypeIIParams { a1, a2, b1, b2, c, f } = *p;
    if (a1 - a2).abs() > SURFACE_TOL || (b1 - b2).abs() > SURFACE_TOL {
        return Err(Error::ConditionNotMet(format!(
            "no purification is known for type II with a1 != a2 or b1 != b2 (a1 = {a1}, a2 = {a2}, b1 = {b1}, b2 = {b2})"
        )));
    }
    if surface_sign(c, f).is_none() {
        return Err(Error::ConditionNotMet(format!(
            "type II purification needs c = f or c = -f (c = {c}, f = {f})"
        )));
    }
    purify_type_i(&TypeIParams::new(a1, a1, b1, c, f))
}

/// Moduli and phases of the `(theta, xbar)` family for type III.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeIIICoefficients {
    pub theta: f64,
    pub theta_f: f64,
    pub xbar: f64,
    pub normalization: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
}

/// Coefficients of the type III purification. `xbar = None` selects
/// `xbar = 1 / (4(a1-c1)(a2-c2) - (2b + f + f*)^2)`.
///
/// Each phase comes from the two-argument arctangent of the numerator and
/// denominator of its tangent, which puts `r e^{-i phi}` in the right quadrant.
pub fn type_iii_coefficients(p: &TypeIIIParams, theta: f64, xbar: Option<f64>) -> Result<TypeIIICoefficients> {
    p.validate()?;
    let TypeIIIParams { a1, a2, b, c1, c2, f } = *p;
    if c1 < 0.0 || c2 < 0.0 {
        return Err(invalid(format!("type III purification needs c1, c2 >= 0 (c1 = {c1}, c2 = {c2})")));
    }
    let x = c1 * c2 - f.norm_sqr();
    let scale = (c1 * c2).max(f.norm_sqr());
    if x.abs() > SURFACE_REL_TOL * scale {
        return Err(Error::ConditionNotMet(format!(
            "type III purification needs c1 c2 = |f|^2 (c1 c2 - |f|^2 = {x:e})"
        )));
    }
    if !theta.is_finite() {
        return Err(invalid("theta must be finite"));
    }
    let theta_f = if f.norm_sqr() == 0.0 { 0.0 } else { f.arg() };
    let denom = 4.0 * (a1 - c1) * (a2 - c2) - (2.0 * b + 2.0 * f.re).powi(2);
    let xbar = match xbar {
        None => 1.0 / denom,
        Some(v) if v > 0.0 && v.is_finite() => v,
        Some(v) => return Err(invalid(format!("xbar must be positive, got {v}"))),
    };
    let g = (c1 * c2).sqrt();
    let t1 = theta + theta_f;
    let t3 = 2.0 * theta + theta_f;
    Ok(TypeIIICoefficients {
        theta,
        theta_f,
        xbar,
        normalization: xbar.sqrt() * denom.sqrt() / PI.powf(1.5),
        r1: ((a1 - c1).powi(2) + 4.0 * a1 * c1 * theta.cos().powi(2)).sqrt(),
        r2: ((a2 - c2).powi(2) + 4.0 * a2 * c2 * t1.cos().powi(2)).sqrt(),
        r3: (c1 * c2 + b * b - 2.0 * b * g * t3.cos()).max(0.0).sqrt(),
        phi1: (c1 * (2.0 * theta).sin()).atan2(c1 * (2.0 * theta).cos() + a1),
        phi2: (c2 * (2.0 * t1).sin()).atan2(c2 * (2.0 * t1).cos() + a2),
        phi3: (g * t3.sin()).atan2(g * t3.cos() - b),
    })
}

pub fn purify_type_iii(p: &TypeIIIParams, theta: f64, xbar: Option<f64>) -> Result<PureState3> {
    let k = type_iii_coefficients(p, theta, xbar)?;
    let e = |phase: f64| Complex64::from_polar(1.0, -phase);
    Ok(PureState3::from_upper(
        k.normalization,
        k.r1 * e(k.phi1),
        k.r2 * e(k.phi2),
        (0.5 * k.xbar).into(),
        k.r3 * e(k.phi3),
        (p.c1 * k.xbar).sqrt() * e(k.theta),
        (p.c2 * k.xbar).sqrt() * e(k.theta + k.theta_f),
    ))
}
