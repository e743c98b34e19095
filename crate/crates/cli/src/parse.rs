//! Text grammar for shapes, tableau indices, and complex literals.
//!
//! Tableau exponents: rows separated by `/`, entries by whitespace, row `i`
//! carrying exactly `lambda_i - mu_i` entries. Complex literals: `a`,
//! `a+bi`, or `a-bi` with ordinary float syntax (exponents allowed).

use num_complex::Complex64;
use schur_ohno::{SkewShape, TableauIndex};

pub fn parse_shape(lambda: &[u32], mu: Option<&[u32]>) -> Result<SkewShape, String> {
    SkewShape::from_parts(lambda, mu.unwrap_or(&[])).map_err(|e| e.to_string())
}

pub fn parse_tableau(
    lambda: &[u32],
    mu: Option<&[u32]>,
    k_rows: &str,
) -> Result<TableauIndex, String> {
    let shape = parse_shape(lambda, mu)?;
    let rows: Vec<&str> = k_rows.split('/').collect();
    if rows.len() != shape.num_rows() as usize {
        return Err(format!(
            "index has {} row(s) but the shape has {} row(s)",
            rows.len(),
            shape.num_rows()
        ));
    }
    let mut flat = Vec::with_capacity(shape.num_cells());
    for (i, row) in rows.iter().enumerate() {
        let want = (shape.lambda().part(i) - shape.mu().part(i)) as usize;
        let entries: Result<Vec<u32>, _> =
            row.split_whitespace().map(|t| t.parse::<u32>()).collect();
        let entries = entries.map_err(|e| format!("row {}: {e}", i + 1))?;
        if entries.len() != want {
            return Err(format!(
                "row {} carries {} exponent(s) but needs {}",
                i + 1,
                entries.len(),
                want
            ));
        }
        flat.extend(entries);
    }
    TableauIndex::new(shape, flat).map_err(|e| e.to_string())
}

/// Formats a tableau index back in the input grammar.
pub fn format_tableau_rows(k: &TableauIndex) -> String {
    let shape = k.shape();
    let mut rows: Vec<String> = Vec::with_capacity(shape.num_rows() as usize);
    let mut pos = 0usize;
    for i in 0..shape.num_rows() as usize {
        let len = (shape.lambda().part(i) - shape.mu().part(i)) as usize;
        let row: Vec<String> = k.exponents()[pos..pos + len]
            .iter()
            .map(|e| e.to_string())
            .collect();
        rows.push(row.join(" "));
        pos += len;
    }
    rows.join(" / ")
}

pub fn format_parts(parts: &[u32]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(rest) = t.strip_suffix('i') else {
        let re: f64 = t
            .parse()
            .map_err(|_| format!("cannot parse '{t}' as a number"))?;
        return Ok(Complex64::new(re, 0.0));
    };
    let bytes = rest.as_bytes();
    // split at the last +/- that is not an exponent sign
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    let i = split
        .ok_or_else(|| format!("cannot parse complex literal '{t}': expected a, a+bi, or a-bi"))?;
    let re: f64 = rest[..i]
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse real part of '{t}'"))?;
    let sign = if bytes[i] as char == '-' { -1.0 } else { 1.0 };
    let imag_text = rest[i + 1..].trim();
    let im: f64 = if imag_text.is_empty() {
        1.0
    } else {
        imag_text
            .parse()
            .map_err(|_| format!("cannot parse imaginary part of '{t}'"))?
    };
    Ok(Complex64::new(re, sign * im))
}

pub fn parse_points(text: &str) -> Result<Vec<Complex64>, String> {
    let pts: Result<Vec<Complex64>, String> = text
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_complex)
        .collect();
    let pts = pts?;
    if pts.is_empty() {
        return Err("no evaluation points given".into());
    }
    Ok(pts)
}
