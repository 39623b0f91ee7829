use serde::{Deserialize, Serialize};

use crate::bipartite::GaussianForm;
use crate::error::{domain, invalid, Result};
use crate::purification::PureState3;

/// Points per axis below which the trapezoid rule is not trusted to the
/// acceptance tolerances. Smaller grids are allowed but flagged.
pub const ACCURACY_FLOOR: usize = 16;
/// Upper bound for an automatically chosen half-width.
pub const MAX_AUTO_HALF_WIDTH: f64 = 12.0;
/// Target size of the diagonal Gaussian tail at the grid edge.
pub const EDGE_TAIL: f64 = 1e-14;

/// Uniform grid `x_k = -L + k h`, `h = 2L / (N - 1)`, with trapezoid weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub half_width: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(invalid(format!("grid half-width must be positive, got {half_width}")));
        }
        if points < 2 {
            return Err(invalid(format!("grid needs at least 2 points, got {points}")));
        }
        Ok(Self { half_width, points })
    }

    /// Half-width from `exp(-w_min L^2) = EDGE_TAIL`, `w_min` the smallest
    /// eigenvalue of the real diagonal form of the kernel, capped at
    /// `MAX_AUTO_HALF_WIDTH`.
    pub fn auto(form: &GaussianForm, points: usize) -> Result<Self> {
        let d = form.diagonal_form();
        let w_min = match form.modes {
            1 => d[0],
            2 => {
                let (a, b, c) = (d[0], 0.5 * (d[1] + d[2]), d[3]);
                0.5 * ((a + c) - ((a - c).powi(2) + 4.0 * b * b).sqrt())
            }
            m => return Err(invalid(format!("auto grid supports 1 or 2 modes, got {m}"))),
        };
        if !(w_min > 0.0) {
            return Err(domain(format!("diagonal of the kernel does not decay (w_min = {w_min})")));
        }
        let l = ((-EDGE_TAIL.ln()) / w_min).sqrt() * 1.001;
        Self::new(l.min(MAX_AUTO_HALF_WIDTH), points)
    }

    /// Grid for the traced mode of `state`, wide enough to hold the `x3`
    /// integrand centred anywhere the outer grid can put it.
    pub fn auto_traced(state: &PureState3, outer: &Grid, points: usize) -> Result<Self> {
        let q = &state.quad;
        let kappa = 2.0 * q[2][2].re;
        if !(kappa > 0.0) {
            return Err(domain(format!("traced mode does not decay (2 Re P33 = {kappa})")));
        }
        let shift = 2.0 * outer.half_width * (q[0][2].re.abs() + q[1][2].re.abs()) / kappa;
        let l = ((-EDGE_TAIL.ln()) / kappa).sqrt() + shift;
        Self::new(l.min(4.0 * MAX_AUTO_HALF_WIDTH), points)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points).map(|k| -self.half_width + k as f64 * h).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut w = vec![h; self.points];
        w[0] = 0.5 * h;
        w[self.points - 1] = 0.5 * h;
        w
    }

    pub fn below_accuracy_floor(&self) -> bool {
        self.points < ACCURACY_FLOOR
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_and_weights() {
        let g = Grid::new(2.0, 5).unwrap();
        assert_eq!(g.nodes(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(g.weights(), vec![0.5, 1.0, 1.0, 1.0, 0.5]);
        assert!(g.below_accuracy_floor());
        assert!(Grid::new(0.0, 10).is_err());
        assert!(Grid::new(1.0, 1).is_err());
    }

    #[test]
    fn auto_half_width_meets_tail_target() {
        let mut f = GaussianForm::new(1, 1.0);
        f.square(0, 1.0);
        f.square(1, 1.0);
        f.cross(0, 1, 0.5.into());
        let g = Grid::auto(&f, 100).unwrap();
        let w = f.diagonal_form()[0];
        assert!((-w * g.half_width.powi(2)).exp() < EDGE_TAIL);
        assert!(g.half_width <= MAX_AUTO_HALF_WIDTH);
    }
}
