mod common;

use common::*;
use gaussent::bipartite::{TypeIIIParams, TypeIParams};
use gaussent::oracle::{
    discretize, fit_geometric_pair, numeric_entropy, numeric_partial_trace, partial_trace_at, run_oracle, spectrum,
    Grid,
};
use gaussent::{kernel_eval, purify_type_i, EntropyOrder, Error, GaussianKernelParams, SingleParams};
use num_complex::Complex64;

#[test]
fn grid_construction() {
    assert!(matches!(Grid::new(0.0, 10), Err(Error::InvalidParams(_))));
    assert!(matches!(Grid::new(5.0, 1), Err(Error::InvalidParams(_))));
    let g = Grid::new(8.0, 200).unwrap();
    let w: f64 = g.weights().iter().sum();
    assert!((w - 16.0).abs() < 1e-12);
    assert!(Grid::new(8.0, 12).unwrap().below_accuracy_floor());
    assert!(!g.below_accuracy_floor());
}

#[test]
fn single_mode_trace_and_spectrum() {
    let p = GaussianKernelParams::Single(SingleParams::new(1.0, 1.0, 0.5));
    let s = spectrum(&discretize(&p, &Grid::new(8.0, 200).unwrap()).unwrap()).unwrap();
    assert!((s.moments.trace.re - 1.0).abs() < 1e-9);
    let xi = 2.0 - 3f64.sqrt();
    for n in 0..6 {
        assert!((s.eigenvalues[n].re - (1.0 - xi) * xi.powi(n as i32)).abs() < 1e-6);
    }
    let e = numeric_entropy(&s, &[EntropyOrder::Renyi(2.0), EntropyOrder::VonNeumann]).unwrap();
    // tr rho^2 = (1 - xi)/(1 + xi) = 1/sqrt 3.
    assert!((e.renyi[0].1 - 3f64.sqrt().ln()).abs() < 1e-9);
    assert!((e.von_neumann.unwrap() - 0.7939454041714472).abs() < 1e-8);
}

#[test]
fn type_i_matrix_is_symmetric() {
    let p = GaussianKernelParams::I(TypeIParams::new(1.0, 1.3, 0.2, 0.1, 0.05));
    let m = discretize(&p, &Grid::new(6.0, 30).unwrap()).unwrap();
    assert!(m.symmetry_residual() < 1e-12);
    assert_eq!(m.dim(), 900);
    // Entry (i, j) is sqrt(w_i w_j) K(x_i; x_j) with index i1 N + i2.
    let g = Grid::new(6.0, 30).unwrap();
    let (x, w) = (g.nodes(), g.weights());
    let (i, j) = (3 * 30 + 17, 21 * 30 + 8);
    let want = (w[3] * w[17] * w[21] * w[8]).sqrt() * kernel_eval(&p, x[3], x[17], x[21], x[8]).unwrap();
    assert!((m.get(i, j) - want).norm() < 1e-15);
}

#[test]
fn pure_kernel_has_rank_one() {
    let p = GaussianKernelParams::I(TypeIParams::new(1.0, 1.0, 0.2, 0.0, 0.0));
    let g = Grid::auto(&p.form().unwrap(), 30).unwrap();
    let s = spectrum(&discretize(&p, &g).unwrap()).unwrap();
    assert!((s.eigenvalues[0].re - 1.0).abs() < 1e-9);
    assert!(s.eigenvalues[1..].iter().all(|l| l.norm() < 1e-10));
    let fit = fit_geometric_pair(&s).unwrap();
    // The moment inversion goes through a square root, so at a pure state
    // round-off of order 1e-13 in the traces shows up as |xi| ~ 3e-7.
    assert!(fit.xi.xi1.abs() < 1e-6 && fit.xi.xi2.abs() < 1e-6, "{:?}", fit);
}

#[test]
fn type_iii_matrix_is_hermitian() {
    let p = GaussianKernelParams::III(TypeIIIParams::new(1.0, 1.2, 0.2, 0.1, 0.05, Complex64::new(0.05, 0.03)));
    let r = run_oracle(&p, &Grid::auto(&p.form().unwrap(), 30).unwrap(), &[EntropyOrder::Renyi(2.0)], 5).unwrap();
    assert!(r.hermiticity_residual < 1e-10);
    assert!(r.max_imag < 1e-8);
    assert_eq!(r.leading.len(), 5);
    let e = r.entropy.unwrap();
    assert!((e.renyi[0].1 + p.purity().unwrap().ln()).abs() < 1e-6);
    assert!(xi_gap(&r.fit.unwrap().xi, &p.xi_pair().unwrap()) < 1e-5);
}

#[test]
fn rejects_invalid_and_oversized() {
    let bad = GaussianKernelParams::I(TypeIParams::new(1.0, 1.0, 0.99, 0.1, 0.05));
    assert!(matches!(discretize(&bad, &Grid::new(6.0, 20).unwrap()), Err(Error::InvalidParams(_))));
    let p = GaussianKernelParams::I(TypeIParams::new(1.0, 1.0, 0.2, 0.1, 0.05));
    assert!(matches!(discretize(&p, &Grid::new(6.0, 90).unwrap()), Err(Error::ResourceLimit { dim: 8100, .. })));
}

#[test]
fn partial_trace_reproduces_kernel() {
    let t = TypeIParams::new(1.0, 1.3, 0.2, 0.1, 0.1);
    let p = GaussianKernelParams::I(t);
    let state = purify_type_i(&t).unwrap();
    let g = Grid::auto(&p.form().unwrap(), 20).unwrap();
    let traced = Grid::auto_traced(&state, &g, 200).unwrap();
    let b = numeric_partial_trace(&state, &g, &traced).unwrap();
    let m = discretize(&p, &g).unwrap();
    let mut worst = 0.0f64;
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            let z = b[(i, j)];
            worst = worst.max((Complex64::new(z.re, z.im) - m.get(i, j)).norm());
        }
    }
    assert!(worst < 1e-9, "{worst}");
    let v = partial_trace_at(&state, &traced, 0.3, -0.2, -0.5, 0.4);
    assert!((v - kernel_eval(&p, 0.3, -0.2, -0.5, 0.4).unwrap()).norm() < 1e-10);
}
