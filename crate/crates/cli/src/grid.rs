//! Parameter grids: `a:b:geometric[:factor]`, `a:b[:linear[:step]]`, or a
//! comma list.

use crate::CliError;

pub fn parse_grid(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("grid `{text}`: {why}"));
    let text = text.trim();
    if text.is_empty() {
        return Err(bad("empty"));
    }
    let values = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        if parts.len() < 2 || parts.len() > 4 {
            return Err(bad("expected a:b[:kind[:step]]"));
        }
        let a = parse_int(parts[0]).ok_or_else(|| bad("start is not an integer"))?;
        let b = parse_int(parts[1]).ok_or_else(|| bad("end is not an integer"))?;
        let kind = parts.get(2).copied().unwrap_or("linear");
        match kind {
            "linear" => {
                let step = match parts.get(3) {
                    Some(s) => parse_int(s).ok_or_else(|| bad("step is not an integer"))?,
                    None => 1,
                };
                if step == 0 {
                    return Err(bad("step must be positive"));
                }
                (a..=b).step_by(step as usize).collect()
            }
            "geometric" => {
                let factor: f64 = match parts.get(3) {
                    Some(s) => s.parse().map_err(|_| bad("factor is not a number"))?,
                    None => 2.0,
                };
                if !(factor > 1.0 && factor.is_finite()) {
                    return Err(bad("factor must exceed 1"));
                }
                if a == 0 {
                    return Err(bad("geometric grids start above 0"));
                }
                geometric(a, b, factor)
            }
            other => return Err(bad(&format!("unknown kind `{other}`"))),
        }
    } else {
        text.split(',')
            .map(|s| parse_int(s.trim()).ok_or_else(|| bad("list entry is not an integer")))
            .collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err(bad("no points"));
    }
    Ok(values)
}

fn parse_int(s: &str) -> Option<u64> {
    if let Ok(v) = s.parse::<u64>() {
        return Some(v);
    }
    // accept 1e6 style integers
    let f: f64 = s.parse().ok()?;
    (f >= 0.0 && f.fract() == 0.0 && f < 9.0e15).then_some(f as u64)
}

fn geometric(a: u64, b: u64, factor: f64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 0i32;
    loop {
        let v = (a as f64 * factor.powi(k)).round();
        if v > b as f64 {
            break;
        }
        let v = v as u64;
        if out.last() != Some(&v) {
            out.push(v);
        }
        k += 1;
    }
    out
}
