use gaussent::{EntropyOrder, GaussianKernelParams, KernelKind};

use crate::CliError;

/// `a1=1,a2=0.5,...` into name/value pairs.
pub fn parse_pairs(s: &str) -> Result<Vec<(String, f64)>, CliError> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected name=value, got '{item}'")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("value of '{}' is not a number: '{v}'", k.trim())))?;
        out.push((k.trim().to_string(), v));
    }
    Ok(out)
}

pub fn parse_kernel(kind: KernelKind, params: &str) -> Result<GaussianKernelParams, CliError> {
    Ok(GaussianKernelParams::from_pairs(kind, &parse_pairs(params)?)?)
}

pub fn parse_orders(s: &str) -> Result<Vec<EntropyOrder>, CliError> {
    let orders = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<EntropyOrder>, _>>()?;
    if orders.is_empty() {
        return Err(CliError::Usage("no entropy order given".into()));
    }
    Ok(orders)
}

/// `--vary c,f=0:0.3:0.01`: the listed parameters all take each value of
/// the inclusive range.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub names: Vec<String>,
    pub values: Vec<f64>,
}

pub fn parse_sweep(s: &str) -> Result<Sweep, CliError> {
    let bad = |why: &str| CliError::Usage(format!("malformed range '{s}': {why}"));
    let (names, range) = s.split_once('=').ok_or_else(|| bad("expected name=start:stop:step"))?;
    let names: Vec<String> =
        names.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect();
    if names.is_empty() {
        return Err(bad("no parameter name"));
    }
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected start:stop:step"));
    }
    let num = |t: &str| t.trim().parse::<f64>().ok().filter(|v| v.is_finite());
    let (start, stop, step) = match (num(parts[0]), num(parts[1]), num(parts[2])) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(bad("start, stop and step must be finite numbers")),
    };
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    if stop < start {
        return Err(bad("stop is below start"));
    }
    // Tolerate round-off so that 0:0.3:0.01 includes 0.3.
    let count = ((stop - start) / step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(bad("more than a million points"));
    }
    Ok(Sweep { names, values: (0..count).map(|k| start + k as f64 * step).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        let p = parse_pairs("a1=1, a2=0.5,b=-0.2").unwrap();
        assert_eq!(p[2], ("b".to_string(), -0.2));
        assert!(parse_pairs("a1").is_err());
        assert!(parse_pairs("a1=x").is_err());
    }

    #[test]
    fn sweep_includes_endpoint() {
        let s = parse_sweep("c,f=0:0.3:0.01").unwrap();
        assert_eq!(s.names, vec!["c", "f"]);
        assert_eq!(s.values.len(), 31);
        assert!((s.values[30] - 0.3).abs() < 1e-12);
        for bad in ["c=0:1", "c=1:0:0.1", "c=0:1:0", "=0:1:0.1", "c=a:1:0.1"] {
            assert!(parse_sweep(bad).is_err(), "{bad}");
        }
    }
}
