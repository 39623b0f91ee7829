use serde::{Deserialize, Serialize};

use super::{GaussianForm, XiPair};
use crate::error::{invalid, Error, Result};
use crate::single::mode_value;

/// Largest `m`, `n` served by the bipartite eigenfunctions.
pub const MAX_MODE_DEGREE: usize = 30;

/// `A exp[-a1(x1'^2 + x1^2) - a2(x2'^2 + x2^2) + 2b(x1'x2' + x1x2)
///       + 2c(x1x1' + x2x2') + 2f(x1x2' + x2x1')]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeIParams {
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
    pub c: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeIDerived {
    pub theta: f64,
    pub mu_plus: f64,
    pub mu_minus: f64,
    pub c1: f64,
    pub c2: f64,
    pub big_f: f64,
    pub phi: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    pub eps_plus: f64,
    pub eps_minus: f64,
    pub xi: XiPair,
}

impl TypeIParams {
    pub fn new(a1: f64, a2: f64, b: f64, c: f64, f: f64) -> Self {
        Self { a1, a2, b, c, f }
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a1, a2, b, c, f } = *self;
        if ![a1, a2, b, c, f].iter().all(|v| v.is_finite()) {
            return Err(invalid("type I: parameters must be finite"));
        }
        let d = (a1 - c) * (a2 - c) - (b + f).powi(2);
        if !(d > 0.0) {
            return Err(invalid(format!("type I: (a1-c)(a2-c) - (b+f)^2 > 0 violated ({d})")));
        }
        let d2 = (a1 + c) * (a2 + c) - (b - f).powi(2);
        if !(d2 > 0.0) {
            return Err(invalid(format!("type I: (a1+c)(a2+c) - (b-f)^2 > 0 violated ({d2})")));
        }
        if !(a1 - c > 0.0 && a1 + c > 0.0) {
            return Err(invalid(format!("type I: a1 > |c| violated (a1 = {a1}, c = {c})")));
        }
        if !(a1 * a2 - b * b > 0.0) {
            return Err(invalid(format!("type I: a1 a2 - b^2 > 0 violated ({})", a1 * a2 - b * b)));
        }
        Ok(())
    }

    pub(crate) fn form(&self) -> GaussianForm {
        let Self { a1, a2, b, c, f } = *self;
        let norm = 2.0 * ((a1 - c) * (a2 - c) - (b + f).powi(2)).sqrt() / std::f64::consts::PI;
        let mut g = GaussianForm::new(2, norm);
        // v = (x1', x2', x1, x2)
        g.square(0, a1);
        g.square(2, a1);
        g.square(1, a2);
        g.square(3, a2);
        g.cross(0, 1, b.into());
        g.cross(2, 3, b.into());
        g.cross(2, 0, c.into());
        g.cross(3, 1, c.into());
        g.cross(2, 1, f.into());
        g.cross(3, 0, f.into());
        g
    }
}

/// Rotation `theta`, scaling by `sqrt(mu_pm)`, rotation `phi`; the kernel then
/// factorizes into two single-mode kernels with couplings `nu_pm`.
pub fn xi_pair_type_i(p: &TypeIParams) -> Result<TypeIDerived> {
    p.validate()?;
    let TypeIParams { a1, a2, b, c, f } = *p;
    let d = a1 - a2;
    let root = (d * d + 4.0 * b * b).sqrt();
    // Half of atan2(2b, a1 - a2): equal to the half-angle form
    // atan(2b / (root + d)) and well defined at b = 0 for either sign of d.
    let theta = 0.5 * (2.0 * b).atan2(d);
    let mu_plus = 0.5 * ((a1 + a2) + root);
    let mu_minus = 0.5 * ((a1 + a2) - root);
    let (s2, c2t) = (2.0 * theta).sin_cos();
    let c1 = c - f * s2;
    let c2 = c + f * s2;
    let big_f = f * c2t;

    let k11 = c1 / mu_plus;
    let k22 = c2 / mu_minus;
    let k12 = big_f / (mu_plus * mu_minus).sqrt();
    let kd = k11 - k22;
    let kroot = (kd * kd + 4.0 * k12 * k12).sqrt();
    let phi = 0.5 * (-2.0 * k12).atan2(kd);
    let nu_plus = 0.5 * ((k11 + k22) + kroot);
    let nu_minus = 0.5 * ((k11 + k22) - kroot);
    for nu in [nu_plus, nu_minus] {
        if !(nu.abs() < 1.0) {
            return Err(Error::NonConvergent(nu.abs()));
        }
    }
    let eps_plus = (1.0 - nu_plus * nu_plus).sqrt();
    let eps_minus = (1.0 - nu_minus * nu_minus).sqrt();
    let xi = XiPair::new(nu_plus / (1.0 + eps_plus), nu_minus / (1.0 + eps_minus))?;
    Ok(TypeIDerived {
        theta,
        mu_plus,
        mu_minus,
        c1,
        c2,
        big_f,
        phi,
        nu_plus,
        nu_minus,
        eps_plus,
        eps_minus,
        xi,
    })
}

impl TypeIDerived {
    /// `(Y1, Y2)` for a point `(x1, x2)`.
    pub fn chained_coords(&self, x1: f64, x2: f64) -> (f64, f64) {
        let (st, ct) = self.theta.sin_cos();
        let big_x1 = ct * x1 - st * x2;
        let big_x2 = st * x1 + ct * x2;
        let y1 = self.mu_plus.sqrt() * big_x1;
        let y2 = self.mu_minus.sqrt() * big_x2;
        let (sp, cp) = self.phi.sin_cos();
        (cp * y1 - sp * y2, sp * y1 + cp * y2)
    }

    /// Eigenvalue belonging to `eigenfunction_type_i(.., m, n, ..)`.
    pub fn eigenvalue(&self, m: usize, n: usize) -> f64 {
        self.xi.eigenvalue(m, n)
    }
}

/// Eigenfunction `f_mn(x1, x2)`, normalized over `dx1 dx2`.
///
/// Each factor is the `(1, 1, nu)` single-mode eigenfunction of `Y1` or
/// `Y2`; the Jacobian `(mu+ mu-)^{1/4}` moves the normalization from the
/// `Y` measure to the `x` measure.
pub fn eigenfunction_type_i(p: &TypeIParams, m: usize, n: usize, x1: f64, x2: f64) -> Result<f64> {
    let deg = m.max(n);
    if deg > MAX_MODE_DEGREE {
        return Err(Error::DegreeTooLarge { degree: deg, max: MAX_MODE_DEGREE });
    }
    let d = xi_pair_type_i(p)?;
    let (big_y1, big_y2) = d.chained_coords(x1, x2);
    let g1 = mode_value(m, 2.0 * d.eps_plus, 2.0 * d.eps_plus, big_y1)?;
    let g2 = mode_value(n, 2.0 * d.eps_minus, 2.0 * d.eps_minus, big_y2)?;
    Ok(g1 * g2 * (d.mu_plus * d.mu_minus).powf(0.25))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_when_c_and_f_vanish() {
        let d = xi_pair_type_i(&TypeIParams::new(1.0, 1.0, 0.2, 0.0, 0.0)).unwrap();
        assert_eq!((d.xi.xi1, d.xi.xi2), (0.0, 0.0));
    }

    #[test]
    fn worked_example() {
        let d = xi_pair_type_i(&TypeIParams::new(1.0, 1.0, 0.2, 0.1, 0.05)).unwrap();
        assert!((d.nu_plus - 0.1875).abs() < 1e-15);
        assert!((d.nu_minus - 1.0 / 24.0).abs() < 1e-15);
        assert!((d.xi.xi1 - 0.094_588_8).abs() < 5e-8);
        assert!((d.xi.xi2 - 0.020_842_4).abs() < 5e-8);
    }

    #[test]
    fn theta_diagonalizes_at_zero_coupling() {
        // b = 0, a1 < a2: mu+ = a2 pairs with X1, so theta must be pi/2.
        let d = xi_pair_type_i(&TypeIParams::new(0.8, 1.5, 0.0, 0.1, 0.05)).unwrap();
        assert!((d.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let d = xi_pair_type_i(&TypeIParams::new(1.5, 0.8, 0.0, 0.1, 0.05)).unwrap();
        assert_eq!(d.theta, 0.0);
    }

    #[test]
    fn rejects_invalid() {
        let e = xi_pair_type_i(&TypeIParams::new(1.0, 1.0, 0.9, 0.1, 0.2)).unwrap_err();
        assert!(e.to_string().contains("(a1-c)(a2-c)"));
    }

    #[test]
    fn odd_mode_vanishes_on_axis() {
        let p = TypeIParams::new(1.1, 0.8, 0.15, 0.1, -0.05);
        let d = xi_pair_type_i(&p).unwrap();
        // A point with Y1 = 0: invert the chain at (Y1, Y2) = (0, 0.7).
        let (sp, cp) = d.phi.sin_cos();
        let (y1, y2) = (sp * 0.7, cp * 0.7);
        let (bx1, bx2) = (y1 / d.mu_plus.sqrt(), y2 / d.mu_minus.sqrt());
        let (st, ct) = d.theta.sin_cos();
        let (x1, x2) = (ct * bx1 + st * bx2, -st * bx1 + ct * bx2);
        assert!(d.chained_coords(x1, x2).0.abs() < 1e-15);
        assert!(eigenfunction_type_i(&p, 1, 0, x1, x2).unwrap().abs() < 1e-14);
    }
}
