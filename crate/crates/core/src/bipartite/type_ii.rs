use serde::{Deserialize, Serialize};

use super::type_i::MAX_MODE_DEGREE;
use super::{GaussianForm, XiPair};
use crate::error::{invalid, Error, Result};
use crate::single::{mode_value, single_derive, SingleParams};

/// `A exp[-a1(x1'^2 + x2'^2) - a2(x1^2 + x2^2) + 2b1 x1'x2' + 2b2 x1x2
///       + 2c(x1x1' + x2x2') + 2f(x1x2' + x2x1')]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeIIParams {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub c: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeIIDerived {
    pub eps1: f64,
    pub eps2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    /// `(xi` of the `y1` factor, `xi` of the `y2` factor`)`, unsorted.
    pub factor_xi: (f64, f64),
    pub xi: XiPair,
}

impl TypeIIParams {
    pub fn new(a1: f64, a2: f64, b1: f64, b2: f64, c: f64, f: f64) -> Self {
        Self { a1, a2, b1, b2, c, f }
    }

    /// In `y1 = (x1 + x2)/sqrt2`, `y2 = (x1 - x2)/sqrt2` the kernel is a
    /// product of two single-mode kernels. Returned with the unprimed
    /// coefficient first, as `SingleParams` expects.
    pub fn factors(&self) -> (SingleParams, SingleParams) {
        let Self { a1, a2, b1, b2, c, f } = *self;
        (SingleParams::new(a2 - b2, a1 - b1, c + f), SingleParams::new(a2 + b2, a1 + b1, c - f))
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a1, a2, b1, b2, c, f } = *self;
        if ![a1, a2, b1, b2, c, f].iter().all(|v| v.is_finite()) {
            return Err(invalid("type II: parameters must be finite"));
        }
        let s = a1 + a2;
        let bb = b1 + b2;
        let y1 = (s - 2.0 * c).powi(2) - (bb + 2.0 * f).powi(2);
        if !(y1 > 0.0) {
            return Err(invalid(format!("type II: (a1+a2-2c)^2 - (b1+b2+2f)^2 > 0 violated ({y1})")));
        }
        if !(s - 2.0 * c > 0.0) {
            return Err(invalid(format!("type II: a1 + a2 - 2c > 0 violated ({})", s - 2.0 * c)));
        }
        let y2 = (s + 2.0 * c).powi(2) - (bb - 2.0 * f).powi(2);
        if !(y2 > 0.0) {
            return Err(invalid(format!("type II: (a1+a2+2c)^2 - (b1+b2-2f)^2 > 0 violated ({y2})")));
        }
        if !(s > bb.abs()) {
            return Err(invalid(format!("type II: a1 + a2 > |b1 + b2| violated ({s} vs {})", bb.abs())));
        }
        if !((s - bb).powi(2) >= 4.0 * (c + f).powi(2)) {
            return Err(invalid("type II: (a1+a2-b1-b2)^2 >= 4(c+f)^2 violated"));
        }
        if !((s + bb).powi(2) >= 4.0 * (c - f).powi(2)) {
            return Err(invalid("type II: (a1+a2+b1+b2)^2 >= 4(c-f)^2 violated"));
        }
        let (g1, g2) = self.factors();
        for (name, g) in [("y1", g1), ("y2", g2)] {
            single_derive(&g).map_err(|e| invalid(format!("type II, {name} factor: {e}")))?;
        }
        Ok(())
    }

    pub(crate) fn form(&self) -> GaussianForm {
        let Self { a1, a2, b1, b2, c, f } = *self;
        let norm = ((a1 + a2 - 2.0 * c).powi(2) - (b1 + b2 + 2.0 * f).powi(2)).sqrt() / std::f64::consts::PI;
        let mut g = GaussianForm::new(2, norm);
        g.square(0, a1);
        g.square(1, a1);
        g.square(2, a2);
        g.square(3, a2);
        g.cross(0, 1, b1.into());
        g.cross(2, 3, b2.into());
        g.cross(2, 0, c.into());
        g.cross(3, 1, c.into());
        g.cross(2, 1, f.into());
        g.cross(3, 0, f.into());
        g
    }
}

pub fn xi_pair_type_ii(p: &TypeIIParams) -> Result<TypeIIDerived> {
    p.validate()?;
    let TypeIIParams { a1, a2, b1, b2, c, f } = *p;
    let sm = a1 + a2 - b1 - b2;
    let sp = a1 + a2 + b1 + b2;
    let eps1 = (sm * sm - 4.0 * (c + f).powi(2)).sqrt();
    let eps2 = (sp * sp - 4.0 * (c - f).powi(2)).sqrt();
    let alpha1 = eps1 + (a1 - a2) - (b1 - b2);
    let alpha2 = eps2 + (a1 - a2) + (b1 - b2);
    let x1 = 2.0 * (c + f) / (sm + eps1);
    let x2 = 2.0 * (c - f) / (sp + eps2);
    Ok(TypeIIDerived { eps1, eps2, alpha1, alpha2, factor_xi: (x1, x2), xi: XiPair::new(x1, x2)? })
}

impl TypeIIDerived {
    /// Eigenvalue belonging to `eigenfunction_type_ii(.., m, n, ..)`.
    pub fn eigenvalue(&self, m: usize, n: usize) -> f64 {
        use crate::math::GeometricParam;
        GeometricParam::new(self.factor_xi.0).eigenvalue(m) * GeometricParam::new(self.factor_xi.1).eigenvalue(n)
    }
}

/// `f_mn = C_{1,m}^{-1} H_m(sqrt(eps1) y1) e^{-alpha1 y1^2/2} * C_{2,n}^{-1} H_n(sqrt(eps2) y2) e^{-alpha2 y2^2/2}`.
pub fn eigenfunction_type_ii(p: &TypeIIParams, m: usize, n: usize, x1: f64, x2: f64) -> Result<f64> {
    let deg = m.max(n);
    if deg > MAX_MODE_DEGREE {
        return Err(Error::DegreeTooLarge { degree: deg, max: MAX_MODE_DEGREE });
    }
    let d = xi_pair_type_ii(p)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (y1, y2) = (r * (x1 + x2), r * (x1 - x2));
    Ok(mode_value(m, d.eps1, d.alpha1, y1)? * mode_value(n, d.eps2, d.alpha2, y2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_and_special_values() {
        let d = xi_pair_type_ii(&TypeIIParams::new(1.0, 1.0, 0.3, 0.3, 0.0, 0.0)).unwrap();
        assert_eq!((d.xi.xi1, d.xi.xi2), (0.0, 0.0));
        let d = xi_pair_type_ii(&TypeIIParams::new(1.0, 1.0, 0.3, 0.3, 0.2, 0.1)).unwrap();
        assert!((d.xi.xi1 - 0.3 / (0.7 + 0.4f64.sqrt())).abs() < 1e-15);
        assert!((d.xi.xi2 - 0.1 / (1.3 + 1.68f64.sqrt())).abs() < 1e-15);
        let d = xi_pair_type_ii(&TypeIIParams::new(1.2, 0.9, 0.1, -0.2, 0.15, 0.15)).unwrap();
        assert_eq!(d.factor_xi.1, 0.0);
    }

    #[test]
    fn factors_reproduce_eps_and_alpha() {
        let p = TypeIIParams::new(1.3, 0.8, 0.2, -0.1, 0.12, 0.05);
        let d = xi_pair_type_ii(&p).unwrap();
        let (g1, g2) = p.factors();
        let (s1, s2) = (single_derive(&g1).unwrap(), single_derive(&g2).unwrap());
        assert!((s1.epsilon0 - d.eps1).abs() < 1e-14 && (s1.alpha0 - d.alpha1).abs() < 1e-14);
        assert!((s2.epsilon0 - d.eps2).abs() < 1e-14 && (s2.alpha0 - d.alpha2).abs() < 1e-14);
        assert!((s1.xi0 - d.factor_xi.0).abs() < 1e-15 && (s2.xi0 - d.factor_xi.1).abs() < 1e-15);
    }

    #[test]
    fn swap_parity() {
        let p = TypeIIParams::new(1.3, 0.8, 0.2, -0.1, 0.12, 0.05);
        for (m, n) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
            let a = eigenfunction_type_ii(&p, m, n, 0.4, -0.3).unwrap();
            let b = eigenfunction_type_ii(&p, m, n, -0.3, 0.4).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a - sign * b).abs() < 1e-14, "{m} {n}");
        }
    }
}
