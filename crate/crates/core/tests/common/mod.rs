#![allow(dead_code)]

use std::io::Write;

use gaussent::bipartite::{
    xi_pair_type_i, xi_pair_type_ii, xi_pair_type_iii, xi_pair_type_iv, TypeIIIParams, TypeIIParams, TypeIParams,
    TypeIVParams,
};
use gaussent::oracle::{self, Grid, TraceMoments};
use gaussent::{GaussianKernelParams, XiPair};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Writes straight to stderr so the line survives libtest's capture.
pub fn say(line: &str) {
    let mut e = std::io::stderr().lock();
    let _ = writeln!(e, "{line}");
}

pub fn verdict(id: &str, what: &str, ok: bool, detail: &str) {
    say(&format!("{} criterion {id}: {what} | {detail}", if ok { "PASS" } else { "FAIL" }));
}

fn sym(r: &mut ChaCha8Rng, m: f64) -> f64 {
    r.gen_range(-m..=m)
}

pub fn draw_type_i(r: &mut ChaCha8Rng) -> TypeIParams {
    loop {
        let p = TypeIParams::new(r.gen_range(0.5..=2.0), r.gen_range(0.5..=2.0), sym(r, 0.3), sym(r, 0.2), sym(r, 0.2));
        if xi_pair_type_i(&p).is_ok() {
            return p;
        }
    }
}

pub fn draw_type_ii(r: &mut ChaCha8Rng) -> TypeIIParams {
    loop {
        let p = TypeIIParams::new(
            r.gen_range(0.5..=2.0),
            r.gen_range(0.5..=2.0),
            sym(r, 0.3),
            sym(r, 0.3),
            sym(r, 0.2),
            sym(r, 0.2),
        );
        if xi_pair_type_ii(&p).is_ok() {
            return p;
        }
    }
}

pub fn draw_type_iii(r: &mut ChaCha8Rng) -> TypeIIIParams {
    loop {
        let f = Complex64::from_polar(r.gen_range(0.0..=0.2), r.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
        let p = TypeIIIParams::new(
            r.gen_range(0.5..=2.0),
            r.gen_range(0.5..=2.0),
            sym(r, 0.3),
            sym(r, 0.2),
            sym(r, 0.2),
            f,
        );
        if xi_pair_type_iii(&p).is_ok() {
            return p;
        }
    }
}

/// Valid means the closed form produces a real pair; draws whose
/// symmetric functions give complex roots are skipped.
pub fn draw_type_iv(r: &mut ChaCha8Rng) -> TypeIVParams {
    loop {
        let p = TypeIVParams::new(
            r.gen_range(0.5..=2.0),
            r.gen_range(0.5..=2.0),
            sym(r, 0.3),
            sym(r, 0.2),
            sym(r, 0.2),
            sym(r, 0.2),
        );
        if xi_pair_type_iv(&p).is_ok() {
            return p;
        }
    }
}

/// Trace moments on the default bipartite grid (auto L).
pub fn oracle_moments(p: &GaussianKernelParams, n: usize) -> TraceMoments {
    let g = Grid::auto(&p.form().unwrap(), n).unwrap();
    oracle::discretize(p, &g).unwrap().trace_moments()
}

pub fn oracle_fit(p: &GaussianKernelParams, n: usize) -> (XiPair, TraceMoments) {
    let m = oracle_moments(p, n);
    (oracle::fit_from_moments(&m).unwrap(), m)
}

pub fn xi_gap(a: &XiPair, b: &XiPair) -> f64 {
    (a.xi1 - b.xi1).abs().max((a.xi2 - b.xi2).abs())
}
