use num_complex::Complex64;

/// Parses `RE`, `IMi`, or `RE[+-]IMi` (e.g. `2+1i`, `-0.5`, `1e-3-2i`, `-i`).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let bad = || format!("invalid complex number '{s}' (expected RE, IMi or RE+IMi)");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return parse_real(t).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (parse_real(&body[..j]).ok_or_else(bad)?, &body[j..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Some(v),
        _ => None,
    }
}

/// Comma-separated complex list, e.g. `0,1,2+1i`.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    let items: Result<Vec<_>, _> = s.split(',').map(parse_complex).collect();
    let items = items?;
    if items.is_empty() {
        return Err("empty list".into());
    }
    Ok(items)
}

/// Comma-separated node counts; must be ascending powers of two.
pub fn parse_node_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let n: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("invalid node count '{part}'"))?;
        if n < 2 || !n.is_power_of_two() {
            return Err(format!("node count {n} is not a power of two >= 2"));
        }
        if out.last().is_some_and(|&prev| prev >= n) {
            return Err("node counts must be strictly ascending".into());
        }
        out.push(n);
    }
    Ok(out)
}
