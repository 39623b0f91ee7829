use std::path::Path;
use std::time::Instant;

use gaussent::oracle::{self, Grid};
use gaussent::purification::{purify_type_i, purify_type_ii, purify_type_iii, type_iii_coefficients};
use gaussent::{EntropyOrder, Error, GaussianKernelParams, KernelKind, Physicality};
use rayon::prelude::*;

use crate::args::{parse_kernel, parse_orders, parse_pairs, parse_sweep};
use crate::report::{print_entropy, Check, OracleSummary, PurificationSummary, RunReport};
use crate::{CliError, KernelArgs};

pub fn entropy(k: &KernelArgs, alpha: &str, json: bool) -> Result<(), CliError> {
    let t0 = Instant::now();
    let p = parse_kernel(k.kind, &k.params)?;
    let orders = parse_orders(alpha)?;
    let rep = p.entropy_report(&orders)?;
    if let Some(why) = &rep.von_neumann_omitted {
        return Err(Error::Domain(why.clone()).into());
    }
    let mut r = RunReport::new("entropy", &p);
    r.xi = Some(p.xi_pair()?);
    r.entropy = Some(rep);
    r.elapsed_seconds = t0.elapsed().as_secs_f64();
    if json {
        println!("{}", r.to_json());
    } else {
        println!("type         {}", p.kind());
        print_entropy(r.entropy.as_ref().unwrap());
    }
    Ok(())
}

fn grid_for(p: &GaussianKernelParams, n: usize, l: &str) -> Result<Grid, CliError> {
    if l.eq_ignore_ascii_case("auto") {
        Ok(Grid::auto(&p.form()?, n)?)
    } else {
        let l: f64 = l.parse().map_err(|_| CliError::Usage(format!("--grid-l must be a number or 'auto', got '{l}'")))?;
        Ok(Grid::new(l, n)?)
    }
}

fn floor_warning(g: &Grid) -> Option<String> {
    g.below_accuracy_floor().then(|| {
        format!(
            "{} points per axis is below the accuracy floor of {}; results may miss the tolerances",
            g.points,
            oracle::ACCURACY_FLOOR
        )
    })
}

pub fn verify(k: &KernelArgs, grid_n: Option<usize>, grid_l: &str, top_k: usize, tol: f64, json: bool) -> Result<(), CliError> {
    let t0 = Instant::now();
    let p = parse_kernel(k.kind, &k.params)?;
    p.validate()?;
    let n = grid_n.unwrap_or(if p.kind() == KernelKind::Single { 200 } else { 40 });
    let g = grid_for(&p, n, grid_l)?;
    let mut r = RunReport::new("verify", &p);
    if let Some(w) = floor_warning(&g) {
        eprintln!("warning: {w}");
        r.warnings.push(w);
    }
    let xi = p.xi_pair()?;
    let purity = p.purity()?;
    let m = oracle::discretize(&p, &g)?;
    let s = oracle::spectrum(&m)?;
    let (fit, fit_error) = match oracle::fit_geometric_pair(&s) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let k = top_k.min(s.eigenvalues.len());
    let model = xi.top_eigenvalues(k);
    let leading: Vec<(f64, f64)> = s.eigenvalues[..k].iter().map(|z| z.re).zip(model).collect();
    let mut checks = Vec::new();
    for (i, (num, ana)) in leading.iter().enumerate() {
        checks.push(Check::new(format!("eigenvalue[{i}] gap"), (num - ana).abs(), tol));
    }
    match &fit {
        Some(f) => {
            checks.push(Check::new("xi1 fitted vs closed form", (f.xi.xi1 - xi.xi1).abs(), tol));
            checks.push(Check::new("xi2 fitted vs closed form", (f.xi.xi2 - xi.xi2).abs(), tol));
        }
        None => checks.push(Check::new("moment fit", f64::INFINITY, tol)),
    }
    checks.push(Check::new("|tr M - 1|", (s.moments.trace.re - 1.0).abs(), tol));
    checks.push(Check::new("|tr M^2 - purity|", (s.moments.trace2.re - purity).abs(), tol));

    r.xi = Some(xi);
    r.oracle = Some(OracleSummary {
        half_width: g.half_width,
        points_per_axis: g.points,
        dim: m.dim(),
        max_imag: s.max_imag,
        hermiticity_residual: s.hermiticity_residual,
        moments: s.moments,
        fit,
        fit_error: fit_error.clone(),
        leading,
        checks,
    });
    r.elapsed_seconds = t0.elapsed().as_secs_f64();
    let o = r.oracle.as_ref().unwrap();
    if json {
        println!("{}", r.to_json());
    } else {
        println!("type         {}", p.kind());
        println!("grid         L = {}, N = {}, dim = {}", g.half_width, g.points, o.dim);
        println!("closed form  xi1 = {}  xi2 = {}", xi.xi1, xi.xi2);
        match (&o.fit, &fit_error) {
            (Some(f), _) => println!("fitted       xi1 = {}  xi2 = {}  (max gap {:e})", f.xi.xi1, f.xi.xi2, f.max_gap),
            (None, Some(e)) => println!("fitted       failed: {e}"),
            _ => {}
        }
        println!("tr M = {}  tr M^2 = {}  tr M^3 = {}", o.moments.trace.re, o.moments.trace2.re, o.moments.trace3.re);
        println!("max |Im lambda| = {:e}  hermiticity residual = {:e}", o.max_imag, o.hermiticity_residual);
        println!("{:>4} {:>24} {:>24} {:>10}", "k", "numeric", "closed form", "gap");
        for (i, (a, b)) in o.leading.iter().enumerate() {
            println!("{i:>4} {a:>24.16e} {b:>24.16e} {:>10.2e}", (a - b).abs());
        }
    }
    let worst = o
        .checks
        .iter()
        .filter(|c| !c.pass)
        .max_by(|a, b| (a.value / a.tol).total_cmp(&(b.value / b.tol)));
    if let Some(c) = worst {
        return Err(CliError::Verification(format!("{} = {:e} exceeds {:e}", c.name, c.value, c.tol)));
    }
    Ok(())
}

struct Row {
    values: Vec<f64>,
    cells: Vec<String>,
}

fn scan_row(kind: KernelKind, pairs: &[(String, f64)], orders: &[EntropyOrder]) -> Row {
    let empty = |n: usize| vec![String::new(); n];
    let n_entropy = orders.len();
    let fail = |status: &str, e: &Error| {
        let mut cells = empty(3 + n_entropy + 2);
        cells.push(status.to_string());
        cells.push(e.to_string());
        cells
    };
    let p = match GaussianKernelParams::from_pairs(kind, pairs) {
        Ok(p) => p,
        Err(e) => return Row { values: pairs.iter().map(|(_, v)| *v).collect(), cells: fail("invalid", &e) },
    };
    let values = p.values();
    let cells = match p.validate().and_then(|_| p.entropy_report(orders)) {
        Err(e @ (Error::InvalidParams(_) | Error::DegreeTooLarge { .. })) => fail("invalid", &e),
        Err(e) => fail("domain-error", &e),
        Ok(rep) => {
            let mut c = vec![
                rep.xi[0].to_string(),
                rep.xi.get(1).copied().unwrap_or(0.0).to_string(),
                rep.purity.to_string(),
            ];
            let mut renyi = rep.renyi.iter();
            for o in orders {
                c.push(match o {
                    EntropyOrder::Renyi(_) => renyi.next().map(|e| e.total.to_string()).unwrap_or_default(),
                    EntropyOrder::VonNeumann => rep.von_neumann.as_ref().map(|v| v.total.to_string()).unwrap_or_default(),
                });
            }
            c.push(rep.physicality.to_string());
            c.push(rep.ansatz_assumed.to_string());
            c.push(if rep.physicality == Physicality::Unphysical { "unphysical" } else { "physical" }.to_string());
            c.push(rep.von_neumann_omitted.unwrap_or_default());
            c
        }
    };
    Row { values, cells }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("GAUSSENT_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::Usage(format!("GAUSSENT_THREADS must be a positive integer, got '{v}'")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

pub fn scan(kind: KernelKind, fixed: &str, vary: &str, alpha: &str, out: &Path) -> Result<(), CliError> {
    let fixed = parse_pairs(fixed)?;
    let sweep = parse_sweep(vary)?;
    let orders = parse_orders(alpha)?;
    let names = kind.param_names();
    for n in &sweep.names {
        let key = if kind == KernelKind::III && n == "f" { "fr" } else { n.as_str() };
        if !names.contains(&key) {
            return Err(CliError::Usage(format!("unknown parameter '{n}' for type {kind}")));
        }
        if fixed.iter().any(|(k, _)| k == n) {
            return Err(CliError::Usage(format!("'{n}' is both fixed and varied")));
        }
    }
    let points: Vec<Vec<(String, f64)>> = sweep
        .values
        .iter()
        .map(|&v| {
            let mut pairs = fixed.clone();
            pairs.extend(sweep.names.iter().map(|n| (n.clone(), v)));
            pairs
        })
        .collect();
    let rows: Vec<Row> = thread_pool()?.install(|| points.par_iter().map(|p| scan_row(kind, p, &orders)).collect());

    let mut w = csv::Writer::from_path(out)?;
    let mut header: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    header.extend(["xi1", "xi2", "purity"].map(String::from));
    for o in &orders {
        header.push(match o {
            EntropyOrder::Renyi(a) => format!("S_{a}"),
            EntropyOrder::VonNeumann => "S_von".into(),
        });
    }
    header.extend(["physicality", "ansatz_assumed", "status", "message"].map(String::from));
    w.write_record(&header)?;
    for (row, pairs) in rows.iter().zip(&points) {
        let mut rec: Vec<String> = if row.values.len() == names.len() {
            row.values.iter().map(f64::to_string).collect()
        } else {
            // Parameters that did not parse: echo what was given by name.
            names
                .iter()
                .map(|n| pairs.iter().find(|(k, _)| k == n).map(|(_, v)| v.to_string()).unwrap_or_default())
                .collect()
        };
        rec.extend(row.cells.iter().cloned());
        w.write_record(&rec)?;
    }
    w.flush()?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

pub fn purify(k: &KernelArgs, theta: f64, xbar: &str, check: bool, grid_n: usize, tol: f64, json: bool) -> Result<(), CliError> {
    let t0 = Instant::now();
    let p = parse_kernel(k.kind, &k.params)?;
    let xbar = if xbar.eq_ignore_ascii_case("auto") {
        None
    } else {
        Some(xbar.parse::<f64>().map_err(|_| CliError::Usage(format!("--xbar must be a number or 'auto', got '{xbar}'")))?)
    };
    let (state, type_iii) = match p {
        GaussianKernelParams::I(q) => (purify_type_i(&q)?, None),
        GaussianKernelParams::II(q) => (purify_type_ii(&q)?, None),
        GaussianKernelParams::III(q) => (purify_type_iii(&q, theta, xbar)?, Some(type_iii_coefficients(&q, theta, xbar)?)),
        GaussianKernelParams::IV(_) => {
            return Err(Error::ConditionNotMet("no three-mode purification is known for type IV".into()).into())
        }
        GaussianKernelParams::Single(_) => {
            return Err(CliError::Usage("purify takes a bipartite kernel (I, II or III)".into()))
        }
    };
    let mut r = RunReport::new("purify", &p);
    r.xi = Some(p.xi_pair()?);
    let check = if check {
        let g = Grid::auto(&p.form()?, grid_n)?;
        if let Some(w) = floor_warning(&g) {
            eprintln!("warning: {w}");
            r.warnings.push(w);
        }
        let traced = Grid::auto_traced(&state, &g, 200)?;
        let m = oracle::discretize(&p, &g)?;
        let b = oracle::numeric_partial_trace(&state, &g, &traced)?;
        let mut gap: f64 = 0.0;
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                gap = gap.max((b[(i, j)] - m.get(i, j)).norm());
            }
        }
        Some(Check::new("sup |Tr_3 psi psi* - kernel| (discretized)", gap, tol))
    } else {
        None
    };
    r.purification = Some(PurificationSummary { state, type_iii, check: check.clone() });
    r.elapsed_seconds = t0.elapsed().as_secs_f64();
    if json {
        println!("{}", r.to_json());
    } else {
        println!("type           {}", p.kind());
        println!("normalization  {}", state.normalization);
        let labels = ["1", "2", "3"];
        for i in 0..3 {
            for j in i..3 {
                let z = state.quad[i][j];
                println!("P{}{}            {} {:+}i", labels[i], labels[j], z.re, z.im);
            }
        }
        if let Some(c) = &type_iii {
            println!("theta          {}", c.theta);
            println!("theta_f        {}", c.theta_f);
            println!("xbar           {}", c.xbar);
        }
        if let Some(c) = &check {
            println!("check          {} = {:e} (tol {:e})", c.name, c.value, c.tol);
        }
    }
    if let Some(c) = check.filter(|c| !c.pass) {
        return Err(CliError::Verification(format!("{} = {:e} exceeds {:e}", c.name, c.value, c.tol)));
    }
    Ok(())
}

