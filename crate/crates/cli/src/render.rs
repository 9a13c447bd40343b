//! Text rendering. Numbers carry 17 significant digits so binary64 values
//! round-trip; non-finite values become `null` in JSON.

use besselquad::bessel::Warning;

pub const CSV_HEADER: &str = "mu_re,mu_im,z_re,z_im,value_re,value_im,err_est,nodes,warnings";

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn json_num(x: f64) -> String {
    if x.is_finite() {
        num(x)
    } else {
        "null".into()
    }
}

pub fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn json_warnings(warnings: &[Warning]) -> String {
    let items: Vec<String> = warnings.iter().map(|w| json_str(w.name())).collect();
    format!("[{}]", items.join(","))
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_warnings(warnings: &[Warning]) -> String {
    let names: Vec<&str> = warnings.iter().map(|w| w.name()).collect();
    names.join(";")
}
