use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::XiPair;
use crate::error::{invalid, Error, Result};
use crate::math::{geometric_renyi, geometric_von_neumann, GeometricParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Physicality {
    Pure,
    PhysicalMixed,
    Unphysical,
}

impl fmt::Display for Physicality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pure => "pure",
            Self::PhysicalMixed => "physical-mixed",
            Self::Unphysical => "unphysical",
        })
    }
}

/// A requested entropy: Rényi of some order, or von Neumann.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EntropyOrder {
    Renyi(f64),
    VonNeumann,
}

impl FromStr for EntropyOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("von") || s == "1" {
            return Ok(Self::VonNeumann);
        }
        let a: f64 = s
            .parse()
            .map_err(|_| invalid(format!("entropy order '{s}' is neither a number nor 'von'")))?;
        if !(a.is_finite() && a > 0.0) {
            return Err(invalid(format!("Renyi order must be positive, got {a}")));
        }
        Ok(Self::Renyi(a))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenyiEntry {
    pub alpha: f64,
    pub total: f64,
    /// `S_{k,alpha}` per geometric factor, in the order of `EntropyReport::xi`.
    pub factors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VonNeumannEntry {
    pub total: f64,
    pub factors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    /// Spectral parameters of the geometric factors (one for a single mode,
    /// two for bipartite kernels, larger first).
    pub xi: Vec<f64>,
    pub physicality: Physicality,
    pub ansatz_assumed: bool,
    pub purity: f64,
    pub renyi: Vec<RenyiEntry>,
    pub von_neumann: Option<VonNeumannEntry>,
    /// Set when von Neumann was requested but cannot be evaluated.
    pub von_neumann_omitted: Option<String>,
}

pub fn entropy_report(xi: &XiPair, purity: f64, orders: &[EntropyOrder]) -> Result<EntropyReport> {
    report_from_factors(&[xi.xi1, xi.xi2], xi.physicality, xi.ansatz_assumed, purity, orders)
}

pub(crate) fn report_from_factors(
    xi: &[f64],
    physicality: Physicality,
    ansatz_assumed: bool,
    purity: f64,
    orders: &[EntropyOrder],
) -> Result<EntropyReport> {
    let mut renyi = Vec::new();
    let mut von_neumann = None;
    let mut von_neumann_omitted = None;
    for order in orders {
        match *order {
            EntropyOrder::Renyi(alpha) => {
                let factors = xi
                    .iter()
                    .map(|&x| geometric_renyi(GeometricParam::new(x), alpha))
                    .collect::<Result<Vec<_>>>()?;
                renyi.push(RenyiEntry { alpha, total: factors.iter().sum(), factors });
            }
            EntropyOrder::VonNeumann => {
                if let Some(&neg) = xi.iter().find(|&&x| x < 0.0) {
                    von_neumann_omitted = Some(format!(
                        "von Neumann entropy is undefined for the unphysical spectrum parameter xi = {neg}"
                    ));
                    continue;
                }
                let factors = xi
                    .iter()
                    .map(|&x| geometric_von_neumann(GeometricParam::new(x)))
                    .collect::<Result<Vec<_>>>()?;
                von_neumann = Some(VonNeumannEntry { total: factors.iter().sum(), factors });
            }
        }
    }
    Ok(EntropyReport {
        xi: xi.to_vec(),
        physicality,
        ansatz_assumed,
        purity,
        renyi,
        von_neumann,
        von_neumann_omitted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_orders() {
        assert_eq!("2".parse::<EntropyOrder>().unwrap(), EntropyOrder::Renyi(2.0));
        assert_eq!("von".parse::<EntropyOrder>().unwrap(), EntropyOrder::VonNeumann);
        assert!("-2".parse::<EntropyOrder>().is_err());
        assert!("x".parse::<EntropyOrder>().is_err());
    }

    #[test]
    fn pure_pair_gives_zeros() {
        let xi = XiPair::new(0.0, 0.0).unwrap();
        let r = entropy_report(&xi, 1.0, &[EntropyOrder::Renyi(2.0), EntropyOrder::VonNeumann]).unwrap();
        assert_eq!(r.renyi[0].total, 0.0);
        assert_eq!(r.von_neumann.unwrap().total, 0.0);
    }

    #[test]
    fn unphysical_pair_omits_von_neumann() {
        let xi = XiPair::new(0.2, -0.1).unwrap();
        let r = entropy_report(&xi, 1.0, &[EntropyOrder::Renyi(2.0), EntropyOrder::VonNeumann]).unwrap();
        assert!(r.von_neumann.is_none());
        assert!(r.von_neumann_omitted.is_some());
        assert!(r.renyi[0].total.is_finite());
    }

    #[test]
    fn renyi_is_additive_and_symmetric() {
        let a = XiPair::new(0.3, 0.1).unwrap();
        let b = XiPair::new(0.1, 0.3).unwrap();
        let orders = [EntropyOrder::Renyi(3.0), EntropyOrder::VonNeumann];
        let ra = entropy_report(&a, 0.0, &orders).unwrap();
        let rb = entropy_report(&b, 0.0, &orders).unwrap();
        assert_eq!(ra, rb);
        let e = &ra.renyi[0];
        assert_eq!(e.total, e.factors[0] + e.factors[1]);
    }
}
