//! Hermite polynomials, geometric-spectrum entropies and the log-space
//! normalization sum shared by the single-mode eigenfunctions.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, Error, Result};

/// Ratio parameter of a geometric spectrum `(1 - xi) xi^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricParam {
    pub xi: f64,
}

impl GeometricParam {
    pub fn new(xi: f64) -> Self {
        Self { xi }
    }

    pub fn is_physical(&self) -> bool {
        (0.0..1.0).contains(&self.xi)
    }

    /// `n`-th eigenvalue `(1 - xi) xi^n`; `0^0 = 1`.
    pub fn eigenvalue(&self, n: usize) -> f64 {
        if n == 0 {
            1.0 - self.xi
        } else if self.xi == 0.0 {
            0.0
        } else {
            (1.0 - self.xi) * self.xi.powi(n as i32)
        }
    }

    fn check_convergent(&self) -> Result<()> {
        if self.xi.is_finite() && self.xi.abs() < 1.0 {
            Ok(())
        } else {
            Err(domain(format!("|xi| = {} must be < 1", self.xi.abs())))
        }
    }
}

/// Physicists' Hermite polynomial by forward recurrence.
pub fn hermite(n: usize, z: f64) -> f64 {
    let mut h0 = 1.0;
    if n == 0 {
        return h0;
    }
    let mut h1 = 2.0 * z;
    for k in 1..n {
        let h2 = 2.0 * z * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// Rényi entropy of order `alpha` of the spectrum `(1 - xi) xi^n`.
///
/// Negative `xi` is accepted only for integer `alpha >= 2`, where `xi^alpha`
/// has no branch ambiguity.
pub fn geometric_renyi(xi: GeometricParam, alpha: f64) -> Result<f64> {
    xi.check_convergent()?;
    if !(alpha.is_finite() && alpha > 0.0) || alpha == 1.0 {
        return Err(domain(format!("Renyi order must be positive and != 1, got {alpha}")));
    }
    let x = xi.xi;
    let x_pow = if x < 0.0 {
        if alpha.fract() != 0.0 || alpha < 2.0 {
            return Err(domain(format!(
                "xi = {x} < 0 requires an integer Renyi order >= 2, got {alpha}"
            )));
        }
        x.powi(alpha as i32)
    } else {
        x.powf(alpha)
    };
    Ok((alpha * (-x).ln_1p() - (-x_pow).ln_1p()) / (1.0 - alpha))
}

/// von Neumann entropy of `(1 - xi) xi^n`; zero at `xi = 0`.
pub fn geometric_von_neumann(xi: GeometricParam) -> Result<f64> {
    xi.check_convergent()?;
    let x = xi.xi;
    if x < 0.0 {
        return Err(domain(format!("von Neumann entropy needs xi >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(-(-x).ln_1p() - x / (1.0 - x) * x.ln())
}

/// Estimates `lim_{alpha -> 1} S_alpha` from Rényi entropies at `1 ± eps`.
///
/// Each `eps` contributes the symmetric mean `(S(1+eps) + S(1-eps)) / 2`,
/// which is even in `eps`; the means are extrapolated to `eps = 0` with
/// Neville's scheme in `eps^2`.
pub fn alpha_limit_check(xi: GeometricParam, epsilons: &[f64]) -> Result<f64> {
    if epsilons.is_empty() {
        return Err(domain("alpha_limit_check needs at least one offset"));
    }
    if xi.xi < 0.0 {
        return Err(domain(format!("alpha limit needs xi >= 0, got {}", xi.xi)));
    }
    let mut nodes = Vec::with_capacity(epsilons.len());
    let mut vals = Vec::with_capacity(epsilons.len());
    for &e in epsilons {
        if !(e > 0.0 && e < 1.0) {
            return Err(domain(format!("offset {e} must lie in (0, 1)")));
        }
        let s = 0.5 * (geometric_renyi(xi, 1.0 + e)? + geometric_renyi(xi, 1.0 - e)?);
        nodes.push(e * e);
        vals.push(s);
    }
    let n = vals.len();
    for level in 1..n {
        for i in 0..n - level {
            let (t0, t1) = (nodes[i], nodes[i + level]);
            vals[i] = (t0 * vals[i + 1] - t1 * vals[i]) / (t0 - t1);
        }
    }
    Ok(vals[0])
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `ln C_n^2` for the eigenfunction `C_n^{-1} H_n(sqrt(eps) x) exp(-alpha x^2 / 2)`:
///
/// `C_n^2 = alpha^{-1/2} sum_k 2^{2n-k} t^{n-k} Γ(n+1)^2 Γ(n-k+1/2) / (Γ(k+1) Γ(n-k+1)^2)`
/// with `t = eps/alpha - 1`. Terms are summed in log space with their signs
/// carried separately, since `t` may be negative.
pub fn ln_hermite_norm_sq(n: usize, eps: f64, alpha: f64) -> Result<f64> {
    if !(eps > 0.0 && alpha > 0.0) {
        return Err(domain(format!("normalization needs eps, alpha > 0 (eps = {eps}, alpha = {alpha})")));
    }
    let t = eps / alpha - 1.0;
    let nf = n as f64;
    let ln2 = std::f64::consts::LN_2;
    let lg_n1 = ln_gamma(nf + 1.0);
    let mut logs = Vec::with_capacity(n + 1);
    let mut signs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let p = n - k;
        if p > 0 && t == 0.0 {
            continue;
        }
        let (pf, kf) = (p as f64, k as f64);
        let ln_t = if p == 0 { 0.0 } else { pf * t.abs().ln() };
        logs.push(
            (2.0 * nf - kf) * ln2 + ln_t + 2.0 * lg_n1 + ln_gamma(pf + 0.5)
                - ln_gamma(kf + 1.0)
                - 2.0 * ln_gamma(pf + 1.0),
        );
        signs.push(if t < 0.0 && p % 2 == 1 { -1.0 } else { 1.0 });
    }
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let terms: Vec<f64> = logs
        .iter()
        .zip(&signs)
        .map(|(l, s)| s * (l - top).exp())
        .collect();
    let sum = pairwise_sum(&terms);
    if !(sum > 0.0) {
        return Err(Error::Domain(format!(
            "normalization sum for n = {n} is not positive ({sum:e})"
        )));
    }
    Ok(top + sum.ln() - 0.5 * alpha.ln())
}
