//! Bipartite kernels `rho[x1', x2' : x1, x2]` of the four Gaussian families.

pub mod entropy;
mod form;
mod moments;
mod type_i;
mod type_ii;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::math::GeometricParam;

pub use entropy::{entropy_report, EntropyOrder, EntropyReport, Physicality, RenyiEntry, VonNeumannEntry};
pub use form::{kernel_eval, purity, GaussianForm, GaussianKernelParams, KernelKind};
pub use moments::{
    moments_to_xi, moments_type_iii, moments_type_iv, split_quadratic, type_iv_symmetric_functions,
    xi_pair_type_iii, xi_pair_type_iv,
    MomentPair, MomentsIII, MomentsIV, TypeIIIParams, TypeIVParams,
};
pub use type_i::{eigenfunction_type_i, xi_pair_type_i, TypeIDerived, TypeIParams, MAX_MODE_DEGREE};
pub use type_ii::{eigenfunction_type_ii, xi_pair_type_ii, TypeIIDerived, TypeIIParams};

pub(crate) use form::is_positive_definite;

/// Parameters with magnitude below this are reported as exactly zero.
pub const XI_ZERO_SNAP: f64 = 1e-14;

/// The two spectral parameters of `lambda_mn = (1 - xi1) xi1^m (1 - xi2) xi2^n`,
/// ordered `xi1 >= xi2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiPair {
    pub xi1: f64,
    pub xi2: f64,
    pub physicality: Physicality,
    /// True when the product-geometric spectrum is assumed rather than derived.
    pub ansatz_assumed: bool,
}

impl XiPair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        for x in [a, b] {
            if !(x.is_finite() && x.abs() < 1.0) {
                return Err(domain(format!("spectral parameter {x} is outside (-1, 1)")));
            }
        }
        let snap = |x: f64| if x.abs() < XI_ZERO_SNAP { 0.0 } else { x };
        let (a, b) = (snap(a), snap(b));
        let (xi1, xi2) = if a >= b { (a, b) } else { (b, a) };
        let physicality = if xi1 == 0.0 && xi2 == 0.0 {
            Physicality::Pure
        } else if xi2 < 0.0 {
            Physicality::Unphysical
        } else {
            Physicality::PhysicalMixed
        };
        Ok(Self { xi1, xi2, physicality, ansatz_assumed: false })
    }

    pub(crate) fn assumed(mut self) -> Self {
        self.ansatz_assumed = true;
        self
    }

    pub fn eigenvalue(&self, m: usize, n: usize) -> f64 {
        GeometricParam::new(self.xi1).eigenvalue(m) * GeometricParam::new(self.xi2).eigenvalue(n)
    }

    /// The `k` largest eigenvalues (by value), descending, with multiplicity.
    pub fn top_eigenvalues(&self, k: usize) -> Vec<f64> {
        // With alternating signs an entry of index m is dominated by all
        // same-parity indices below it, so 2k + 2 per axis suffices.
        let r = 2 * k + 2;
        let mut all = Vec::with_capacity(r * r);
        for m in 0..r {
            for n in 0..r {
                all.push(self.eigenvalue(m, n));
            }
        }
        all.sort_by(|a, b| b.total_cmp(a));
        all.truncate(k);
        all
    }

    /// `(tr rho^2, tr rho^3)` of the product-geometric spectrum.
    pub fn moments(&self) -> MomentPair {
        let b1 = |x: f64| (1.0 - x) / (1.0 + x);
        let b2 = |x: f64| (1.0 - x).powi(2) / (1.0 + x + x * x);
        MomentPair { beta1: b1(self.xi1) * b1(self.xi2), beta2: b2(self.xi1) * b2(self.xi2) }
    }

    /// Number of parameters that are exactly zero.
    pub fn zero_count(&self) -> usize {
        [self.xi1, self.xi2].iter().filter(|x| **x == 0.0).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_class() {
        let p = XiPair::new(0.1, 0.3).unwrap();
        assert_eq!((p.xi1, p.xi2), (0.3, 0.1));
        assert_eq!(p.physicality, Physicality::PhysicalMixed);
        assert_eq!(XiPair::new(0.0, 0.0).unwrap().physicality, Physicality::Pure);
        assert_eq!(XiPair::new(0.2, -0.1).unwrap().physicality, Physicality::Unphysical);
        assert_eq!(XiPair::new(3e-17, 0.2).unwrap().xi2, 0.0);
        assert!(XiPair::new(1.0, 0.0).is_err());
    }

    #[test]
    fn top_eigenvalues_sum_towards_one() {
        let p = XiPair::new(0.3, 0.1).unwrap();
        let top = p.top_eigenvalues(200);
        assert!(top.windows(2).all(|w| w[0] >= w[1]));
        let s: f64 = top.iter().sum();
        assert!((s - 1.0).abs() < 1e-6);
        assert_eq!(top[0], 0.7 * 0.9);
    }

    #[test]
    fn moments_match_series() {
        let p = XiPair::new(0.4, -0.2).unwrap();
        let (mut s2, mut s3) = (0.0, 0.0);
        for m in 0..200 {
            for n in 0..200 {
                let l = p.eigenvalue(m, n);
                s2 += l * l;
                s3 += l * l * l;
            }
        }
        let mo = p.moments();
        assert!((mo.beta1 - s2).abs() < 1e-14);
        assert!((mo.beta2 - s3).abs() < 1e-14);
    }
}
