//! Plain-text symbol format: one term per line, `deg_x deg_p re im`,
//! sorted by `(deg_x, deg_p)`. Blank lines and `#` comments are ignored on
//! input; `;` also separates terms so a symbol fits on a command line.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::symbol::WeylSymbol;
use crate::error::{Error, Result};

pub fn to_text(symbol: &WeylSymbol) -> String {
    let mut out = String::new();
    for (m, c) in symbol.terms() {
        // Debug formatting of f64 is the shortest round-trip representation.
        let _ = writeln!(out, "{} {} {:?} {:?}", m.x, m.p, c.re, c.im);
    }
    out
}

pub fn parse_text(text: &str) -> Result<WeylSymbol> {
    let mut terms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for chunk in line.split(';') {
            let fields: Vec<&str> = chunk.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if fields.len() != 4 {
                return Err(Error::Parse(format!(
                    "line {}: expected `deg_x deg_p re im`, got `{}`",
                    lineno + 1,
                    chunk.trim()
                )));
            }
            let bad = |what: &str| Error::Parse(format!("line {}: invalid {what}", lineno + 1));
            let dx: u32 = fields[0].parse().map_err(|_| bad("deg_x"))?;
            let dp: u32 = fields[1].parse().map_err(|_| bad("deg_p"))?;
            let re: f64 = fields[2].parse().map_err(|_| bad("real part"))?;
            let im: f64 = fields[3].parse().map_err(|_| bad("imaginary part"))?;
            terms.push((dx, dp, Complex64::new(re, im)));
        }
    }
    Ok(WeylSymbol::from_terms(terms))
}
