//! Parsing of complex numbers written as `a+bi` / `a-bi` / `a` / `bi`.

use num_complex::Complex64;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    // pure imaginary: "i", "-i", "0.5i"
    if let Some(head) = t.strip_suffix('i') {
        if !head.contains(['+', '-']) || head.rfind(['+', '-']) == Some(0) {
            let im = match head {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => other.parse::<f64>().map_err(|e| e.to_string())?,
            };
            return Ok(Complex64::new(0.0, im));
        }
    }
    // general a+bi: split at the last sign that is not an exponent sign
    let body = t.strip_suffix('i').ok_or_else(|| {
        format!("cannot parse '{s}' as a complex number (expected forms: 1.5, -0.8, 1.6+0.5i, 2i)")
    })?;
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let ch = bytes[idx] as char;
        if (ch == '+' || ch == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
            split = Some(idx);
            break;
        }
    }
    let idx = split.ok_or_else(|| format!("cannot parse '{s}' as a complex number"))?;
    let re: f64 = body[..idx].parse().map_err(|e| format!("{e} in '{s}'"))?;
    let im_str = &body[idx..];
    let im: f64 = match im_str {
        "+" => 1.0,
        "-" => -1.0,
        other => other.parse().map_err(|e| format!("{e} in '{s}'"))?,
    };
    Ok(Complex64::new(re, im))
}
