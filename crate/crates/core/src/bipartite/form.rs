use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    moments_type_iii, moments_type_iv, xi_pair_type_i, xi_pair_type_ii, xi_pair_type_iii,
    xi_pair_type_iv, TypeIIIParams, TypeIIParams, TypeIParams, TypeIVParams, XiPair,
};
use crate::bipartite::entropy::{entropy_report, EntropyOrder, EntropyReport};
use crate::error::{invalid, Result};
use crate::single::{single_entropies, single_purity, SingleParams};

/// `norm * exp(-v^T Q v)` with `v = (x'_1, .., x'_m, x_1, .., x_m)`.
///
/// A term `-a v_i^2` of the exponent contributes `a` to `Q_ii`; a term
/// `+2 b v_i v_j` contributes `-b` to both `Q_ij` and `Q_ji`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianForm {
    pub modes: usize,
    pub norm: f64,
    /// Row-major, `2 modes x 2 modes`, symmetric (not Hermitian).
    pub q: Vec<Complex64>,
}

impl GaussianForm {
    pub fn new(modes: usize, norm: f64) -> Self {
        let d = 2 * modes;
        Self { modes, norm, q: vec![Complex64::new(0.0, 0.0); d * d] }
    }

    fn dim(&self) -> usize {
        2 * self.modes
    }

    pub(crate) fn square(&mut self, i: usize, a: f64) {
        let d = self.dim();
        self.q[i * d + i] += a;
    }

    pub(crate) fn cross(&mut self, i: usize, j: usize, b: Complex64) {
        let d = self.dim();
        self.q[i * d + j] -= b;
        self.q[j * d + i] -= b;
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.q[i * self.dim() + j]
    }

    pub fn is_real(&self) -> bool {
        self.q.iter().all(|z| z.im == 0.0)
    }

    pub fn eval(&self, xp: &[f64], x: &[f64]) -> Complex64 {
        debug_assert_eq!(xp.len(), self.modes);
        debug_assert_eq!(x.len(), self.modes);
        let d = self.dim();
        let v = |i: usize| if i < self.modes { xp[i] } else { x[i - self.modes] };
        let mut e = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                e += self.q[i * d + j] * (v(i) * v(j));
            }
        }
        self.norm * (-e).exp()
    }

    /// Real part of the form restricted to the diagonal `x' = x`
    /// (`Q_pp + Q_pu + Q_up + Q_uu`), row-major `modes x modes`.
    pub fn diagonal_form(&self) -> Vec<f64> {
        let m = self.modes;
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                out[i * m + j] = (self.entry(i, j)
                    + self.entry(i, j + m)
                    + self.entry(i + m, j)
                    + self.entry(i + m, j + m))
                .re;
            }
        }
        out
    }

    /// Whether `|kernel|` decays in every direction of `(x', x)`.
    pub fn decays(&self) -> bool {
        let re: Vec<f64> = self.q.iter().map(|z| z.re).collect();
        is_positive_definite(&re, self.dim())
    }
}

/// Cholesky test on a small dense symmetric matrix.
pub(crate) fn is_positive_definite(a: &[f64], n: usize) -> bool {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(s > 0.0) {
                    return false;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    #[serde(rename = "single")]
    Single,
    I,
    II,
    III,
    IV,
}

impl KernelKind {
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Self::Single => &["a1", "a2", "b"],
            Self::I => &["a1", "a2", "b", "c", "f"],
            Self::II => &["a1", "a2", "b1", "b2", "c", "f"],
            Self::III => &["a1", "a2", "b", "c1", "c2", "fr", "fi"],
            Self::IV => &["a1", "a2", "b", "c", "f1", "f2"],
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Single => "single",
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
            Self::IV => "IV",
        })
    }
}

impl FromStr for KernelKind {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "single" | "Single" | "0" => Ok(Self::Single),
            "I" | "i" | "1" => Ok(Self::I),
            "II" | "ii" | "2" => Ok(Self::II),
            "III" | "iii" | "3" => Ok(Self::III),
            "IV" | "iv" | "4" => Ok(Self::IV),
            other => Err(invalid(format!(
                "unknown kernel type '{other}' (expected single, I, II, III or IV)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "params")]
pub enum GaussianKernelParams {
    #[serde(rename = "single")]
    Single(SingleParams),
    I(TypeIParams),
    II(TypeIIParams),
    III(TypeIIIParams),
    IV(TypeIVParams),
}

impl GaussianKernelParams {
    pub fn kind(&self) -> KernelKind {
        match self {
            Self::Single(_) => KernelKind::Single,
            Self::I(_) => KernelKind::I,
            Self::II(_) => KernelKind::II,
            Self::III(_) => KernelKind::III,
            Self::IV(_) => KernelKind::IV,
        }
    }

    /// Builds parameters from `name = value` pairs. Every name of the kind
    /// is required except `fi` (type III), which defaults to 0; `f` is
    /// accepted as an alias of `fr`.
    pub fn from_pairs(kind: KernelKind, pairs: &[(String, f64)]) -> Result<Self> {
        let names = kind.param_names();
        let mut vals: Vec<Option<f64>> = vec![None; names.len()];
        for (k, v) in pairs {
            let key = if kind == KernelKind::III && k == "f" { "fr" } else { k.as_str() };
            let idx = names.iter().position(|n| *n == key).ok_or_else(|| {
                invalid(format!("unknown parameter '{k}' for type {kind} (expected {})", names.join(", ")))
            })?;
            if vals[idx].replace(*v).is_some() {
                return Err(invalid(format!("parameter '{k}' given twice")));
            }
        }
        if kind == KernelKind::III && vals[6].is_none() {
            vals[6] = Some(0.0);
        }
        let missing: Vec<&str> =
            names.iter().zip(&vals).filter(|(_, v)| v.is_none()).map(|(n, _)| *n).collect();
        if !missing.is_empty() {
            return Err(invalid(format!("missing parameter(s) for type {kind}: {}", missing.join(", "))));
        }
        let v: Vec<f64> = vals.into_iter().map(Option::unwrap).collect();
        Ok(match kind {
            KernelKind::Single => Self::Single(SingleParams::new(v[0], v[1], v[2])),
            KernelKind::I => Self::I(TypeIParams::new(v[0], v[1], v[2], v[3], v[4])),
            KernelKind::II => Self::II(TypeIIParams::new(v[0], v[1], v[2], v[3], v[4], v[5])),
            KernelKind::III => Self::III(TypeIIIParams::new(
                v[0],
                v[1],
                v[2],
                v[3],
                v[4],
                Complex64::new(v[5], v[6]),
            )),
            KernelKind::IV => Self::IV(TypeIVParams::new(v[0], v[1], v[2], v[3], v[4], v[5])),
        })
    }

    /// Parameter values in the order of `KernelKind::param_names`.
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Self::Single(p) => vec![p.a1, p.a2, p.b],
            Self::I(p) => vec![p.a1, p.a2, p.b, p.c, p.f],
            Self::II(p) => vec![p.a1, p.a2, p.b1, p.b2, p.c, p.f],
            Self::III(p) => vec![p.a1, p.a2, p.b, p.c1, p.c2, p.f.re, p.f.im],
            Self::IV(p) => vec![p.a1, p.a2, p.b, p.c, p.f1, p.f2],
        }
    }

    pub fn named_values(&self) -> Vec<(&'static str, f64)> {
        self.kind().param_names().iter().copied().zip(self.values()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Single(p) => crate::single::single_derive(p).map(|_| ()),
            Self::I(p) => xi_pair_type_i(p).map(|_| ()),
            Self::II(p) => xi_pair_type_ii(p).map(|_| ()),
            Self::III(p) => p.validate(),
            Self::IV(p) => p.validate(),
        }
    }

    pub fn form(&self) -> Result<GaussianForm> {
        self.validate()?;
        Ok(match self {
            Self::Single(p) => {
                let mut g = GaussianForm::new(1, ((p.a1 + p.a2 - 2.0 * p.b) / std::f64::consts::PI).sqrt());
                g.square(0, p.a2);
                g.square(1, p.a1);
                g.cross(0, 1, p.b.into());
                g
            }
            Self::I(p) => p.form(),
            Self::II(p) => p.form(),
            Self::III(p) => p.form(),
            Self::IV(p) => p.form(),
        })
    }

    /// Closed-form `tr rho^2`.
    pub fn purity(&self) -> Result<f64> {
        purity(self)
    }

    /// Closed-form spectral parameters. A single-mode kernel is reported as
    /// the pair `(xi0, 0)` so that it shares the bipartite machinery.
    pub fn xi_pair(&self) -> Result<XiPair> {
        match self {
            Self::Single(p) => XiPair::new(crate::single::single_derive(p)?.xi0, 0.0),
            Self::I(p) => Ok(xi_pair_type_i(p)?.xi),
            Self::II(p) => Ok(xi_pair_type_ii(p)?.xi),
            Self::III(p) => xi_pair_type_iii(p),
            Self::IV(p) => xi_pair_type_iv(p),
        }
    }

    pub fn entropy_report(&self, orders: &[EntropyOrder]) -> Result<EntropyReport> {
        match self {
            Self::Single(p) => single_entropies(p, orders),
            _ => entropy_report(&self.xi_pair()?, self.purity()?, orders),
        }
    }
}

/// Pointwise value of a bipartite kernel `rho[x1', x2' : x1, x2]`.
pub fn kernel_eval(
    params: &GaussianKernelParams,
    x1p: f64,
    x2p: f64,
    x1: f64,
    x2: f64,
) -> Result<Complex64> {
    params.validate()?;
    let (x1p2, x2p2, x12, x22) = (x1p * x1p, x2p * x2p, x1 * x1, x2 * x2);
    let pi = std::f64::consts::PI;
    Ok(match *params {
        GaussianKernelParams::Single(_) => {
            return Err(invalid("kernel_eval takes a bipartite kernel; use single_kernel"))
        }
        GaussianKernelParams::I(TypeIParams { a1, a2, b, c, f }) => {
            let a = 2.0 * ((a1 - c) * (a2 - c) - (b + f).powi(2)).sqrt() / pi;
            let e = -a1 * (x1p2 + x12) - a2 * (x2p2 + x22)
                + 2.0 * b * (x1p * x2p + x1 * x2)
                + 2.0 * c * (x1 * x1p + x2 * x2p)
                + 2.0 * f * (x1 * x2p + x2 * x1p);
            Complex64::new(a * e.exp(), 0.0)
        }
        GaussianKernelParams::II(TypeIIParams { a1, a2, b1, b2, c, f }) => {
            let a = ((a1 + a2 - 2.0 * c).powi(2) - (b1 + b2 + 2.0 * f).powi(2)).sqrt() / pi;
            let e = -a1 * (x1p2 + x2p2) - a2 * (x12 + x22)
                + 2.0 * b1 * x1p * x2p
                + 2.0 * b2 * x1 * x2
                + 2.0 * c * (x1 * x1p + x2 * x2p)
                + 2.0 * f * (x1 * x2p + x2 * x1p);
            Complex64::new(a * e.exp(), 0.0)
        }
        GaussianKernelParams::III(TypeIIIParams { a1, a2, b, c1, c2, f }) => {
            let a = 2.0 * ((a1 - c1) * (a2 - c2) - (b + f.re).powi(2)).sqrt() / pi;
            let e = Complex64::from(
                -a1 * (x1p2 + x12) - a2 * (x2p2 + x22)
                    + 2.0 * b * (x1 * x2 + x1p * x2p)
                    + 2.0 * c1 * x1 * x1p
                    + 2.0 * c2 * x2 * x2p,
            ) + 2.0 * f * (x1p * x2)
                + 2.0 * f.conj() * (x1 * x2p);
            a * e.exp()
        }
        GaussianKernelParams::IV(TypeIVParams { a1, a2, b, c, f1, f2 }) => {
            let a = ((a1 + a2 - 2.0 * c).powi(2) - (2.0 * b + f1 + f2).powi(2)).sqrt() / pi;
            let e = -a1 * (x12 + x2p2) - a2 * (x1p2 + x22)
                + 2.0 * b * (x1p * x2p + x1 * x2)
                + 2.0 * c * (x1 * x1p + x2 * x2p)
                + 2.0 * f1 * x1 * x2p
                + 2.0 * f2 * x1p * x2;
            Complex64::new(a * e.exp(), 0.0)
        }
    })
}

/// Closed-form purity `tr rho^2` of each kernel family.
pub fn purity(params: &GaussianKernelParams) -> Result<f64> {
    params.validate()?;
    Ok(match *params {
        GaussianKernelParams::Single(p) => single_purity(&p)?,
        GaussianKernelParams::I(TypeIParams { a1, a2, b, c, f }) => {
            (((a1 - c) * (a2 - c) - (b + f).powi(2)) / ((a1 + c) * (a2 + c) - (b - f).powi(2))).sqrt()
        }
        GaussianKernelParams::II(TypeIIParams { a1, a2, b1, b2, c, f }) => {
            let s = a1 + a2;
            let bb = b1 + b2;
            (((s - 2.0 * c).powi(2) - (bb + 2.0 * f).powi(2)) / ((s + 2.0 * c).powi(2) - (bb - 2.0 * f).powi(2)))
                .sqrt()
        }
        GaussianKernelParams::III(p) => moments_type_iii(&p)?.pair.beta1,
        GaussianKernelParams::IV(p) => moments_type_iv(&p)?.pair.beta1,
    })
}
