//! Shared numerics against direct series and finite differences.

use gaussent::math::{
    alpha_limit_check, geometric_renyi, geometric_von_neumann, hermite, ln_hermite_norm_sq, GeometricParam,
};
use gaussent::Error;
use proptest::prelude::*;

/// `sum_n lambda_n^alpha` until the tail drops below 1e-14.
fn series_power_sum(xi: f64, alpha: f64) -> f64 {
    let mut s = 0.0;
    let mut n = 0;
    loop {
        let t = ((1.0 - xi) * xi.powi(n)).powf(alpha);
        s += t;
        if t < 1e-17 || n > 20000 {
            return s;
        }
        n += 1;
    }
}

fn series_von_neumann(xi: f64) -> f64 {
    (0..4000).map(|n| (1.0 - xi) * xi.powi(n)).filter(|l| *l > 0.0).map(|l| -l * l.ln()).sum()
}

#[test]
fn hermite_examples() {
    assert_eq!(hermite(0, 3.7), 1.0);
    assert_eq!(hermite(1, 2.0), 4.0);
    assert_eq!(hermite(3, 2.0), 40.0);
    // 16 z^4 - 48 z^2 + 12 at z = 0.5
    assert_eq!(hermite(4, 0.5), 1.0);
}

#[test]
fn entropy_examples() {
    let g = GeometricParam::new;
    assert_eq!(geometric_renyi(g(0.0), 2.0).unwrap(), 0.0);
    assert!((geometric_renyi(g(0.5), 2.0).unwrap() - 3f64.ln()).abs() < 1e-15);
    let x = 2.0 - 3f64.sqrt();
    assert!((geometric_renyi(g(x), 2.0).unwrap() - 3f64.sqrt().ln()).abs() < 1e-15);
    assert_eq!(geometric_von_neumann(g(0.0)).unwrap(), 0.0);
    assert!((geometric_von_neumann(g(0.5)).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-15);
    assert!((geometric_von_neumann(g(x)).unwrap() - series_von_neumann(x)).abs() < 1e-12);
    assert!((geometric_von_neumann(g(x)).unwrap() - 0.7939454041714472).abs() < 1e-9);
}

#[test]
fn negative_xi_rules() {
    let g = GeometricParam::new(-0.3);
    assert!(!g.is_physical());
    let s2 = geometric_renyi(g, 2.0).unwrap();
    assert!((s2 + series_power_sum(-0.3, 2.0).ln()).abs() < 1e-12);
    assert!(matches!(geometric_renyi(g, 2.5), Err(Error::Domain(_))));
    assert!(matches!(geometric_von_neumann(g), Err(Error::Domain(_))));
    assert!(matches!(geometric_renyi(GeometricParam::new(1.0), 2.0), Err(Error::Domain(_))));
    assert!(geometric_renyi(GeometricParam::new(0.2), 1.0).is_err());
}

#[test]
fn alpha_limit_examples() {
    let eps = [1e-3, 5e-4];
    assert_eq!(alpha_limit_check(GeometricParam::new(0.0), &eps).unwrap(), 0.0);
    assert!((alpha_limit_check(GeometricParam::new(0.5), &eps).unwrap() - 1.3862944).abs() < 1e-6);
    for k in 1..=9 {
        let g = GeometricParam::new(0.1 * k as f64);
        let lim = alpha_limit_check(g, &eps).unwrap();
        assert!((lim - geometric_von_neumann(g).unwrap()).abs() < 1e-6, "xi = {}", 0.1 * k as f64);
    }
}

#[test]
fn renyi_is_increasing_in_xi() {
    for alpha in [2.0, 3.0, 4.0, 2.5] {
        let vals: Vec<f64> =
            (1..=100).map(|k| geometric_renyi(GeometricParam::new(k as f64 / 101.0), alpha).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]), "alpha = {alpha}");
    }
}

#[test]
fn hermite_norm_matches_quadrature() {
    for (eps, alpha) in [(1.7, 1.7), (3f64.sqrt(), 1.2), (0.9, 1.6)] {
        for n in [0usize, 1, 2, 5, 9] {
            let (l, m) = (14.0, 4001);
            let h = 2.0 * l / (m - 1) as f64;
            let q: f64 = (0..m)
                .map(|k| {
                    let x = -l + k as f64 * h;
                    h * (hermite(n, eps.sqrt() * x).powi(2) * (-alpha * x * x).exp())
                })
                .sum();
            let got = ln_hermite_norm_sq(n, eps, alpha).unwrap();
            assert!((got - q.ln()).abs() < 1e-10, "n = {n}, eps = {eps}, alpha = {alpha}: {got} vs {}", q.ln());
        }
    }
}

proptest! {
    #[test]
    fn renyi_matches_series(xi in 0.001f64..0.95, alpha in prop::sample::select(vec![2.0, 3.0, 4.0])) {
        let closed = geometric_renyi(GeometricParam::new(xi), alpha).unwrap();
        let series = series_power_sum(xi, alpha).ln() / (1.0 - alpha);
        prop_assert!((closed - series).abs() < 1e-12, "{} vs {}", closed, series);
    }

    #[test]
    fn von_neumann_matches_series(xi in 0.0f64..0.9) {
        let closed = geometric_von_neumann(GeometricParam::new(xi)).unwrap();
        prop_assert!((closed - series_von_neumann(xi)).abs() < 1e-11);
    }

    #[test]
    fn hermite_derivative_identity(n in 1usize..=12, z in -3.0f64..3.0) {
        // Five-point central difference. |H_n| is taken as its sup over the
        // sampled interval, since a pointwise bound cannot hold at the roots.
        let h = 1e-3;
        let f = |t: f64| hermite(n, t);
        let d = (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h);
        let want = 2.0 * n as f64 * hermite(n - 1, z);
        let sup = (0..=600).map(|k| f(-3.0 + 0.01 * k as f64).abs()).fold(0.0, f64::max);
        prop_assert!((d - want).abs() <= 1e-8 * sup, "{} vs {}", d, want);
    }

    #[test]
    fn eigenvalues_of_geometric_spectrum_sum_to_one(xi in -0.95f64..0.95) {
        let g = GeometricParam::new(xi);
        let s: f64 = (0..2000).map(|n| g.eigenvalue(n)).sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
    }
}
