//! Independent numerical check of the closed forms: discretize a kernel on a
//! tensor grid, diagonalise the dense matrix, and compare spectra, moments
//! and entropies.
//!
//! The matrix used throughout is `S_ij = sqrt(w_i w_j) K(x_i; x_j)`. It is
//! similar to the plain Nystrom matrix `K_ij w_j` (conjugate by `W^{1/2}`),
//! so eigenvalues and traces of powers agree, but it keeps the symmetry of
//! the kernel exactly.

mod grid;

use faer::{c64, Mat};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bipartite::{moments_to_xi, EntropyOrder, GaussianForm, GaussianKernelParams, MomentPair, XiPair};
use crate::error::{domain, Error, Result};
use crate::purification::{psi_eval, PureState3};

pub use grid::{Grid, ACCURACY_FLOOR, EDGE_TAIL, MAX_AUTO_HALF_WIDTH};

/// Largest dense dimension the oracle will allocate.
pub const MAX_DIM: usize = 6400;
/// Eigenvalues with a larger imaginary part make entropies meaningless.
pub const IMAG_THRESHOLD: f64 = 1e-8;
/// Eigenvalues at or below this are dropped from the von Neumann sum.
pub const VON_NEUMANN_CUTOFF: f64 = 1e-14;
/// Negative eigenvalues of this size are treated as round-off in
/// non-integer Renyi sums.
pub const NEGATIVE_ROUNDOFF: f64 = 1e-10;
/// Number of leading eigenvalues used to score a geometric fit.
pub const FIT_TOP_K: usize = 20;

#[derive(Debug, Clone)]
pub enum NystromMatrix {
    Real(Mat<f64>),
    Complex(Mat<c64>),
}

impl NystromMatrix {
    pub fn dim(&self) -> usize {
        match self {
            Self::Real(m) => m.nrows(),
            Self::Complex(m) => m.nrows(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        match self {
            Self::Real(m) => m[(i, j)].into(),
            Self::Complex(m) => m[(i, j)],
        }
    }

    /// `max |S_ij - conj(S_ji)|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim();
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
            r = r.max(self.get(i, i).im.abs());
        }
        r
    }

    /// `max |S_ij - S_ji|`.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.dim();
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                r = r.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        r
    }

    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let ev = match self {
            Self::Real(m) => m.eigenvalues(),
            Self::Complex(m) => m.eigenvalues(),
        };
        ev.map_err(|e| Error::EigFailure(format!("{e:?}")))
    }

    /// `tr S`, `tr S^2`, `tr S^3`; one matrix product.
    pub fn trace_moments(&self) -> TraceMoments {
        match self {
            Self::Real(m) => {
                let m2 = m * m;
                let n = m.nrows();
                let (mut t1, mut t2, mut t3) = (0.0, 0.0, 0.0);
                for i in 0..n {
                    t1 += m[(i, i)];
                    t2 += m2[(i, i)];
                    for j in 0..n {
                        t3 += m2[(i, j)] * m[(j, i)];
                    }
                }
                TraceMoments { trace: t1.into(), trace2: t2.into(), trace3: t3.into() }
            }
            Self::Complex(m) => {
                let m2 = m * m;
                let n = m.nrows();
                let zero = Complex64::new(0.0, 0.0);
                let (mut t1, mut t2, mut t3) = (zero, zero, zero);
                for i in 0..n {
                    t1 += m[(i, i)];
                    t2 += m2[(i, i)];
                    for j in 0..n {
                        t3 += m2[(i, j)] * m[(j, i)];
                    }
                }
                TraceMoments { trace: t1, trace2: t2, trace3: t3 }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceMoments {
    pub trace: Complex64,
    pub trace2: Complex64,
    pub trace3: Complex64,
}

impl TraceMoments {
    pub fn pair(&self) -> MomentPair {
        MomentPair { beta1: self.trace2.re, beta2: self.trace3.re }
    }
}

fn grid_points(grid: &Grid, modes: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let x = grid.nodes();
    let w = grid.weights();
    let n = grid.points;
    let dim = n.pow(modes as u32);
    let mut pts = Vec::with_capacity(dim);
    let mut sw = Vec::with_capacity(dim);
    for idx in 0..dim {
        let mut rest = idx;
        let mut p = vec![0.0; modes];
        let mut weight = 1.0;
        for k in (0..modes).rev() {
            let d = rest % n;
            rest /= n;
            p[k] = x[d];
            weight *= w[d];
        }
        pts.push(p);
        sw.push(weight.sqrt());
    }
    (pts, sw)
}

fn check_dim(points: usize, modes: usize) -> Result<usize> {
    let dim = (points as u128).pow(modes as u32);
    if dim > MAX_DIM as u128 {
        return Err(Error::ResourceLimit { dim: dim.min(usize::MAX as u128) as usize, limit: MAX_DIM });
    }
    Ok(dim as usize)
}

/// Dense matrix of `params` on `grid` (one axis per mode).
pub fn discretize(params: &GaussianKernelParams, grid: &Grid) -> Result<NystromMatrix> {
    let form = params.form()?;
    discretize_form(&form, grid)
}

pub fn discretize_form(form: &GaussianForm, grid: &Grid) -> Result<NystromMatrix> {
    if !form.decays() {
        return Err(domain("kernel does not decay in every direction; the grid truncation is not controlled"));
    }
    let dim = check_dim(grid.points, form.modes)?;
    let (pts, sw) = grid_points(grid, form.modes);
    if form.is_real() {
        let d = 2 * form.modes;
        let q: Vec<f64> = form.q.iter().map(|z| z.re).collect();
        let mut v = vec![0.0; d];
        Ok(NystromMatrix::Real(Mat::from_fn(dim, dim, |i, j| {
            v[..form.modes].copy_from_slice(&pts[i]);
            v[form.modes..].copy_from_slice(&pts[j]);
            let mut e = 0.0;
            for a in 0..d {
                for b in 0..d {
                    e += q[a * d + b] * v[a] * v[b];
                }
            }
            sw[i] * sw[j] * form.norm * (-e).exp()
        })))
    } else {
        Ok(NystromMatrix::Complex(Mat::from_fn(dim, dim, |i, j| sw[i] * sw[j] * form.eval(&pts[i], &pts[j]))))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Sorted by real part, descending.
    pub eigenvalues: Vec<Complex64>,
    pub max_imag: f64,
    pub hermiticity_residual: f64,
    pub moments: TraceMoments,
}

impl Spectrum {
    pub fn real_parts(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }
}

pub fn spectrum(m: &NystromMatrix) -> Result<Spectrum> {
    let mut eigenvalues = m.eigenvalues()?;
    eigenvalues.sort_by(|a, b| b.re.total_cmp(&a.re));
    let max_imag = eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(Spectrum {
        eigenvalues,
        max_imag,
        hermiticity_residual: m.hermiticity_residual(),
        moments: m.trace_moments(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricFit {
    pub xi: XiPair,
    /// Largest gap between the leading numerical eigenvalues and those of
    /// the fitted pair.
    pub max_gap: f64,
}

/// Spectral parameters matching `tr S^2` and `tr S^3`.
pub fn fit_from_moments(m: &TraceMoments) -> Result<XiPair> {
    moments_to_xi(m.pair())
}

pub fn fit_geometric_pair(s: &Spectrum) -> Result<GeometricFit> {
    let xi = fit_from_moments(&s.moments)?;
    let k = FIT_TOP_K.min(s.eigenvalues.len());
    let model = xi.top_eigenvalues(k);
    let max_gap = s.eigenvalues[..k].iter().zip(&model).map(|(a, b)| (a.re - b).abs()).fold(0.0, f64::max);
    Ok(GeometricFit { xi, max_gap })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericEntropy {
    /// `(alpha, S_alpha)`.
    pub renyi: Vec<(f64, f64)>,
    pub von_neumann: Option<f64>,
}

/// Entropies straight from the numerical eigenvalues.
pub fn numeric_entropy(s: &Spectrum, orders: &[EntropyOrder]) -> Result<NumericEntropy> {
    if s.max_imag > IMAG_THRESHOLD {
        return Err(Error::ImaginarySpectrum { residue: s.max_imag, threshold: IMAG_THRESHOLD });
    }
    let lam = s.real_parts();
    let mut out = NumericEntropy { renyi: Vec::new(), von_neumann: None };
    for order in orders {
        match *order {
            EntropyOrder::VonNeumann => {
                let h: f64 = lam.iter().filter(|&&l| l > VON_NEUMANN_CUTOFF).map(|&l| -l * l.ln()).sum();
                out.von_neumann = Some(h);
            }
            EntropyOrder::Renyi(alpha) => {
                let integer = alpha.fract() == 0.0;
                let mut sum = 0.0;
                for &l in &lam {
                    if l >= 0.0 || integer {
                        sum += if integer { l.powi(alpha as i32) } else { l.powf(alpha) };
                    } else if -l > NEGATIVE_ROUNDOFF {
                        return Err(domain(format!(
                            "negative eigenvalue {l:e} with non-integer Renyi order {alpha}"
                        )));
                    }
                }
                if !(sum > 0.0) {
                    return Err(domain(format!("sum of eigenvalue powers is {sum} for order {alpha}")));
                }
                out.renyi.push((alpha, sum.ln() / (1.0 - alpha)));
            }
        }
    }
    Ok(out)
}

/// `Tr_3 |psi><psi|` on `grid` x `grid`, in the same `sqrt(w_i w_j)`
/// weighting as `discretize`, so the two matrices can be compared entrywise.
pub fn numeric_partial_trace(state: &PureState3, grid: &Grid, traced: &Grid) -> Result<Mat<c64>> {
    let dim = check_dim(grid.points, 2)?;
    let (pts, sw) = grid_points(grid, 2);
    let x3 = traced.nodes();
    let w3 = traced.weights();
    let a = Mat::<c64>::from_fn(dim, traced.points, |i, k| {
        sw[i] * w3[k].sqrt() * psi_eval(state, pts[i][0], pts[i][1], x3[k])
    });
    Ok(&a * a.adjoint())
}

/// `sum_k w_k psi(x1', x2', x3_k) conj psi(x1, x2, x3_k)`.
pub fn partial_trace_at(state: &PureState3, traced: &Grid, x1p: f64, x2p: f64, x1: f64, x2: f64) -> Complex64 {
    traced
        .nodes()
        .iter()
        .zip(traced.weights())
        .map(|(&t, w)| w * psi_eval(state, x1p, x2p, t) * psi_eval(state, x1, x2, t).conj())
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralOracleResult {
    pub grid: Grid,
    pub dim: usize,
    pub below_accuracy_floor: bool,
    /// Leading eigenvalues, descending by real part.
    pub leading: Vec<Complex64>,
    pub max_imag: f64,
    pub hermiticity_residual: f64,
    pub moments: TraceMoments,
    pub fit: Option<GeometricFit>,
    pub fit_error: Option<String>,
    pub entropy: Option<NumericEntropy>,
    pub entropy_error: Option<String>,
}

/// Discretize, diagonalise, fit and compute entropies. Fit and entropy
/// failures are recorded rather than returned, since they are findings.
pub fn run_oracle(params: &GaussianKernelParams, grid: &Grid, orders: &[EntropyOrder], leading: usize) -> Result<SpectralOracleResult> {
    let m = discretize(params, grid)?;
    let s = spectrum(&m)?;
    let (fit, fit_error) = match fit_geometric_pair(&s) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let (entropy, entropy_error) = match numeric_entropy(&s, orders) {
        Ok(e) => (Some(e), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(SpectralOracleResult {
        grid: *grid,
        dim: m.dim(),
        below_accuracy_floor: grid.below_accuracy_floor(),
        leading: s.eigenvalues.iter().take(leading).copied().collect(),
        max_imag: s.max_imag,
        hermiticity_residual: s.hermiticity_residual,
        moments: s.moments,
        fit,
        fit_error,
        entropy,
        entropy_error,
    })
}
