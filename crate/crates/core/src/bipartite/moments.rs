//! Moment route: `(tr rho^2, tr rho^3)` and their inversion to `(xi1, xi2)`.
//! Types III and IV are solved only through this route.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GaussianForm, XiPair};
use crate::error::{domain, invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentPair {
    /// `tr rho^2`
    pub beta1: f64,
    /// `tr rho^3`
    pub beta2: f64,
}

/// Roots of `t^2 - u t + v = 0`, larger first.
///
/// A discriminant that is negative only at rounding level (relative
/// `1e-13`) is treated as zero.
pub fn split_quadratic(u: f64, v: f64) -> Result<(f64, f64)> {
    let disc = u * u - 4.0 * v;
    let scale = (u * u).max(4.0 * v.abs());
    if disc < 0.0 && disc < -1e-13 * scale {
        return Err(Error::ComplexRoots { u, v });
    }
    let sq = disc.max(0.0).sqrt();
    let q = 0.5 * (u + if u >= 0.0 { sq } else { -sq });
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q, v / q) };
    Ok(if r1 >= r2 { (r1, r2) } else { (r2, r1) })
}

/// Inverts `beta1 = prod (1-xi)/(1+xi)`, `beta2 = prod (1-xi)^2/(1+xi+xi^2)`.
///
/// With `T = 3 beta2 (1 + beta1)` and `S = sqrt(3 beta2 (16 beta1^2 - beta2 (3 - beta1)^2))`
/// the symmetric functions are `u = (1 - beta1) g`, `v = (1 + beta1) g - 1`
/// where `g = 6 beta2 / (S + T)`. This is the conjugate-rationalized form of
/// `(S - T) / (2 (4 beta1^2 - beta1^2 beta2 - 3 beta2))`; it stays finite
/// when that denominator vanishes, which happens whenever one `xi` is 0.
pub fn moments_to_xi(m: MomentPair) -> Result<XiPair> {
    let MomentPair { beta1: b1, beta2: b2 } = m;
    if !(b1.is_finite() && b2.is_finite() && b1 > 0.0 && b2 > 0.0) {
        return Err(domain(format!("moments must be positive and finite (beta1 = {b1}, beta2 = {b2})")));
    }
    let t = 3.0 * b2 * (1.0 + b1);
    let arg = 3.0 * b2 * (16.0 * b1 * b1 - b2 * (3.0 - b1).powi(2));
    if arg < 0.0 {
        return Err(domain(format!(
            "moments (beta1 = {b1}, beta2 = {b2}) are not attained by any product-geometric spectrum"
        )));
    }
    let den = arg.sqrt() + t;
    if den == 0.0 {
        return Err(Error::DegenerateDenominator("moment inversion"));
    }
    let g = 6.0 * b2 / den;
    let u = (1.0 - b1) * g;
    let v = (1.0 + b1) * g - 1.0;
    let (x1, x2) = split_quadratic(u, v)?;
    XiPair::new(x1, x2)
}

/// `A exp[-a1(x1'^2 + x1^2) - a2(x2'^2 + x2^2) + 2b(x1x2 + x1'x2')
///       + 2c1 x1x1' + 2c2 x2x2' + 2f x1'x2 + 2f* x1x2']`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeIIIParams {
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    pub f: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentsIII {
    pub big_x1: f64,
    pub big_x2: f64,
    /// `c1 c2 - |f|^2`
    pub x: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub a_tilde: f64,
    pub pair: MomentPair,
}

impl TypeIIIParams {
    pub fn new(a1: f64, a2: f64, b: f64, c1: f64, c2: f64, f: Complex64) -> Self {
        Self { a1, a2, b, c1, c2, f }
    }

    fn structure(&self) -> MomentsIII {
        let Self { a1, a2, b, c1, c2, f } = *self;
        let fr = f.re;
        let big_x1 = 4.0 * ((a1 - c1) * (a2 - c2) - (b + fr).powi(2));
        let big_x2 = 4.0 * ((a1 + c1) * (a2 + c2) - (b - fr).powi(2));
        let x = c1 * c2 - f.norm_sqr();
        let a_plus = a1 * a2 + c1 * c2 - b * b - fr * fr;
        let a_minus = a1 * c2 + a2 * c1 + 2.0 * b * fr;
        let a_tilde = (a1 * a1 - c1 * c1) * (a2 * a2 - c2 * c2) + (b * b - fr * fr).powi(2)
            - 2.0 * (a1 * a2 + c1 * c2) * (b * b + fr * fr)
            - 4.0 * b * fr * (a1 * c2 + a2 * c1);
        let beta1 = (big_x1 / big_x2).sqrt();
        let beta2 = 4.0 * big_x1 / (big_x1 + 3.0 * big_x2 - 12.0 * x);
        MomentsIII { big_x1, big_x2, x, a_plus, a_minus, a_tilde, pair: MomentPair { beta1, beta2 } }
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a1, a2, b, c1, c2, f } = *self;
        if ![a1, a2, b, c1, c2, f.re, f.im].iter().all(|v| v.is_finite()) {
            return Err(invalid("type III: parameters must be finite"));
        }
        let s = self.structure();
        if !(s.big_x1 > 0.0) {
            return Err(invalid(format!("type III: X1 = 4[(a1-c1)(a2-c2) - (b+fR)^2] > 0 violated ({})", s.big_x1)));
        }
        if !(s.big_x2 > 0.0) {
            return Err(invalid(format!("type III: X2 = 4[(a1+c1)(a2+c2) - (b-fR)^2] > 0 violated ({})", s.big_x2)));
        }
        if !(s.a_tilde >= 0.0) {
            return Err(invalid(format!("type III: A~ >= 0 violated ({})", s.a_tilde)));
        }
        if !self.form().decays() {
            return Err(invalid("type III: kernel must decay in every direction (Re Q positive definite)"));
        }
        let root = s.a_plus + s.a_tilde.sqrt();
        if !(root > 0.0 && 2.0 * s.x < root) {
            return Err(invalid(format!("type III: 2x / (A+ + sqrt(A~)) < 1 violated (x = {}, A+ + sqrt(A~) = {root})", s.x)));
        }
        Ok(())
    }

    pub(crate) fn form(&self) -> GaussianForm {
        let Self { a1, a2, b, c1, c2, f } = *self;
        let norm = 2.0 * ((a1 - c1) * (a2 - c2) - (b + f.re).powi(2)).max(0.0).sqrt() / std::f64::consts::PI;
        let mut g = GaussianForm::new(2, norm);
        g.square(0, a1);
        g.square(2, a1);
        g.square(1, a2);
        g.square(3, a2);
        g.cross(0, 1, b.into());
        g.cross(2, 3, b.into());
        g.cross(2, 0, c1.into());
        g.cross(3, 1, c2.into());
        g.cross(0, 3, f);
        g.cross(2, 1, f.conj());
        g
    }
}

pub fn moments_type_iii(p: &TypeIIIParams) -> Result<MomentsIII> {
    p.validate()?;
    let s = p.structure();
    if s.big_x1 + 3.0 * s.big_x2 - 12.0 * s.x == 0.0 {
        return Err(Error::DegenerateDenominator("X1 + 3 X2 - 12 x"));
    }
    Ok(s)
}

/// `u = 2 A- / (S (1 + r))`, `v = 2 / (1 + r) - 1` with `S = A+ + sqrt(A~)` and
/// `r = sqrt(1 - 2x/S)`: the closed form with `1 - r` rationalized, so that
/// `x = 0` gives `v = 0` and `u = A- / S` without a special case.
pub fn xi_pair_type_iii(p: &TypeIIIParams) -> Result<XiPair> {
    let s = moments_type_iii(p)?;
    let big_s = s.a_plus + s.a_tilde.sqrt();
    let r = (1.0 - 2.0 * s.x / big_s).sqrt();
    let u = 2.0 * s.a_minus / (big_s * (1.0 + r));
    let v = 2.0 / (1.0 + r) - 1.0;
    let (x1, x2) = split_quadratic(u, v)?;
    XiPair::new(x1, x2)
}

/// `A exp[-a1(x1^2 + x2'^2) - a2(x1'^2 + x2^2) + 2b(x1'x2' + x1x2)
///       + 2c(x1x1' + x2x2') + 2f1 x1x2' + 2f2 x1'x2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeIVParams {
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
    pub c: f64,
    pub f1: f64,
    pub f2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentsIV {
    pub big_y1: f64,
    pub big_y2: f64,
    /// `c^2 - f1 f2`
    pub y: f64,
    pub b_plus: f64,
    pub b_minus: f64,
    pub b_tilde: f64,
    pub pair: MomentPair,
}

impl TypeIVParams {
    pub fn new(a1: f64, a2: f64, b: f64, c: f64, f1: f64, f2: f64) -> Self {
        Self { a1, a2, b, c, f1, f2 }
    }

    fn structure(&self) -> MomentsIV {
        let Self { a1, a2, b, c, f1, f2 } = *self;
        let s = a1 + a2;
        let ff = f1 + f2;
        let big_y1 = (s - 2.0 * c).powi(2) - (ff + 2.0 * b).powi(2);
        let big_y2 = (s + 2.0 * c).powi(2) - (ff - 2.0 * b).powi(2);
        let y = c * c - f1 * f2;
        let b_plus = s * s + 4.0 * c * c - ff * ff - 4.0 * b * b;
        let b_minus = 4.0 * c * s + 4.0 * b * ff;
        let b_tilde = big_y1 * big_y2;
        let beta1 = (big_y1 / big_y2).sqrt();
        let beta2 = 4.0 * big_y1 / (big_y1 + 3.0 * big_y2 - 12.0 * y);
        MomentsIV { big_y1, big_y2, y, b_plus, b_minus, b_tilde, pair: MomentPair { beta1, beta2 } }
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a1, a2, b, c, f1, f2 } = *self;
        if ![a1, a2, b, c, f1, f2].iter().all(|v| v.is_finite()) {
            return Err(invalid("type IV: parameters must be finite"));
        }
        let s = self.structure();
        if !(s.big_y1 > 0.0) {
            return Err(invalid(format!("type IV: Y1 = (a1+a2-2c)^2 - (f1+f2+2b)^2 > 0 violated ({})", s.big_y1)));
        }
        if !(s.big_y2 > 0.0) {
            return Err(invalid(format!("type IV: Y2 = (a1+a2+2c)^2 - (f1+f2-2b)^2 > 0 violated ({})", s.big_y2)));
        }
        if !self.form().decays() {
            return Err(invalid("type IV: kernel must decay in every direction (Re Q positive definite)"));
        }
        let root = s.b_plus + s.b_tilde.sqrt();
        if !(root > 0.0 && 8.0 * s.y < root) {
            return Err(invalid(format!("type IV: 8y / (B+ + sqrt(B~)) < 1 violated (y = {}, B+ + sqrt(B~) = {root})", s.y)));
        }
        Ok(())
    }

    pub(crate) fn form(&self) -> GaussianForm {
        let Self { a1, a2, b, c, f1, f2 } = *self;
        let norm = ((a1 + a2 - 2.0 * c).powi(2) - (2.0 * b + f1 + f2).powi(2)).max(0.0).sqrt() / std::f64::consts::PI;
        let mut g = GaussianForm::new(2, norm);
        g.square(2, a1);
        g.square(1, a1);
        g.square(0, a2);
        g.square(3, a2);
        g.cross(0, 1, b.into());
        g.cross(2, 3, b.into());
        g.cross(2, 0, c.into());
        g.cross(3, 1, c.into());
        g.cross(2, 1, f1.into());
        g.cross(0, 3, f2.into());
        g
    }
}

pub fn moments_type_iv(p: &TypeIVParams) -> Result<MomentsIV> {
    p.validate()?;
    let s = p.structure();
    if s.big_y1 + 3.0 * s.big_y2 - 12.0 * s.y == 0.0 {
        return Err(Error::DegenerateDenominator("Y1 + 3 Y2 - 12 y"));
    }
    Ok(s)
}

/// Same rationalized closed form as type III with `B+-`, `B~` and `8y`.
/// The product-geometric spectrum is an assumption for this family; the
/// result is marked accordingly.
pub fn xi_pair_type_iv(p: &TypeIVParams) -> Result<XiPair> {
    let s = moments_type_iv(p)?;
    let big_s = s.b_plus + s.b_tilde.sqrt();
    let r = (1.0 - 8.0 * s.y / big_s).sqrt();
    let u = 2.0 * s.b_minus / (big_s * (1.0 + r));
    let v = 2.0 / (1.0 + r) - 1.0;
    let (x1, x2) = split_quadratic(u, v)?;
    Ok(XiPair::new(x1, x2)?.assumed())
}

/// `(u, v)` of the type IV closed form, before the quadratic split.
pub fn type_iv_symmetric_functions(p: &TypeIVParams) -> Result<(f64, f64)> {
    let s = moments_type_iv(p)?;
    let big_s = s.b_plus + s.b_tilde.sqrt();
    let r = (1.0 - 8.0 * s.y / big_s).sqrt();
    Ok((2.0 * s.b_minus / (big_s * (1.0 + r)), 2.0 / (1.0 + r) - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_moments_invert_to_zero() {
        let p = moments_to_xi(MomentPair { beta1: 1.0, beta2: 1.0 }).unwrap();
        assert_eq!((p.xi1, p.xi2), (0.0, 0.0));
    }

    #[test]
    fn one_zero_parameter_inverts_exactly() {
        let m = XiPair::new(0.3, 0.0).unwrap().moments();
        assert!((m.beta1 - 0.7 / 1.3).abs() < 1e-15);
        // 0.49 / 1.39
        assert!((m.beta2 - 0.352_517_985_611_510_8).abs() < 1e-15);
        let p = moments_to_xi(m).unwrap();
        assert!((p.xi1 - 0.3).abs() < 1e-14 && p.xi2.abs() < 1e-14);
    }

    #[test]
    fn negative_parameters_invert() {
        for (a, b) in [(0.2, -0.3), (-0.1, -0.5), (0.5, -0.4)] {
            let p = moments_to_xi(XiPair::new(a, b).unwrap().moments()).unwrap();
            let (hi, lo) = if a > b { (a, b) } else { (b, a) };
            assert!((p.xi1 - hi).abs() < 1e-10 && (p.xi2 - lo).abs() < 1e-10, "{a} {b}: {p:?}");
        }
    }

    #[test]
    fn quadratic_split() {
        let (a, b) = split_quadratic(0.5, 0.06).unwrap();
        assert!((a - 0.3).abs() < 1e-15 && (b - 0.2).abs() < 1e-15);
        assert!(matches!(split_quadratic(0.1, 0.01), Err(Error::ComplexRoots { .. })));
        let (a, b) = split_quadratic(0.2, 0.01 * (1.0 + 1e-15)).unwrap();
        assert!((a - 0.1).abs() < 1e-7 && (b - 0.1).abs() < 1e-7);
    }

    #[test]
    fn type_iii_structure_identities() {
        let p = TypeIIIParams::new(1.0, 1.2, 0.1, 0.2, 0.05, Complex64::new(0.06, 0.08));
        let s = moments_type_iii(&p).unwrap();
        assert!((s.big_x2 + s.big_x1 - 8.0 * s.a_plus).abs() < 1e-13);
        assert!((s.big_x2 - s.big_x1 - 8.0 * s.a_minus).abs() < 1e-13);
        assert!((s.big_x1 * s.big_x2 - 16.0 * s.a_tilde).abs() < 1e-12);
    }

    #[test]
    fn type_iii_pure_and_surface() {
        let p = TypeIIIParams::new(1.0, 1.0, 0.2, 0.0, 0.0, Complex64::new(0.0, 0.0));
        let s = moments_type_iii(&p).unwrap();
        assert_eq!((s.pair.beta1, s.pair.beta2), (1.0, 1.0));
        let xi = xi_pair_type_iii(&p).unwrap();
        assert_eq!((xi.xi1, xi.xi2), (0.0, 0.0));

        let p = TypeIIIParams::new(1.0, 1.0, 0.1, 0.2, 0.05, Complex64::new(0.1, 0.0));
        let s = moments_type_iii(&p).unwrap();
        let xi = xi_pair_type_iii(&p).unwrap();
        assert_eq!(xi.xi2, 0.0);
        assert!((xi.xi1 - s.a_minus / (s.a_plus + s.a_tilde.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn type_iv_pure_and_surface() {
        let xi = xi_pair_type_iv(&TypeIVParams::new(1.0, 1.0, 0.2, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!((xi.xi1, xi.xi2), (0.0, 0.0));
        assert!(xi.ansatz_assumed);
        let p = TypeIVParams::new(1.0, 1.0, 0.2, 0.1, 0.2, 0.05);
        let (_, v) = type_iv_symmetric_functions(&p).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(xi_pair_type_iv(&p).unwrap().zero_count(), 1);
    }

    #[test]
    fn type_iv_example_purity() {
        let s = moments_type_iv(&TypeIVParams::new(1.0, 1.0, 0.2, 0.1, 0.05, 0.05)).unwrap();
        assert!((s.pair.beta1 - (2.99f64 / 4.75).sqrt()).abs() < 1e-15);
    }
}
