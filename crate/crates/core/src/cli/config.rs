use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::weyl::{text::parse_text, WeylSymbol};

/// One named parameter of a subcommand.
#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

pub const fn param(name: &'static str, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec { name, default, help }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation; exit code 2.
    Usage(String),
    /// Computation failed; exit code 1.
    Numeric(crate::Error),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Numeric(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `key=value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value, got `{line}`", k + 1)))?;
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

/// Resolved parameters in schema order.
#[derive(Clone, Debug)]
pub struct Params {
    values: Vec<(&'static str, String)>,
}

impl Params {
    /// Defaults, overridden by `config`, overridden by `flags`.
    pub fn resolve(
        schema: &[ParamSpec],
        config: &[(String, String)],
        flags: &BTreeMap<String, String>,
    ) -> CliResult<Self> {
        for (key, _) in config {
            if !schema.iter().any(|p| p.name == key) {
                return Err(CliError::Usage(format!("unknown config key `{key}`")));
            }
        }
        let values = schema
            .iter()
            .map(|p| {
                let v = flags
                    .get(p.name)
                    .cloned()
                    .or_else(|| config.iter().rev().find(|(k, _)| k == p.name).map(|(_, v)| v.clone()))
                    .unwrap_or_else(|| p.default.to_string());
                (p.name, v)
            })
            .collect();
        Ok(Params { values })
    }

    pub fn entries(&self) -> &[(&'static str, String)] {
        &self.values
    }

    pub fn raw(&self, key: &str) -> &str {
        self.values
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.as_str())
            .unwrap_or_else(|| panic!("parameter `{key}` missing from schema"))
    }

    fn bad(&self, key: &str, what: &str) -> CliError {
        CliError::Usage(format!("--{key}: expected {what}, got `{}`", self.raw(key)))
    }

    pub fn f64(&self, key: &str) -> CliResult<f64> {
        parse_real(self.raw(key)).ok_or_else(|| self.bad(key, "a real number"))
    }

    pub fn usize(&self, key: &str) -> CliResult<usize> {
        self.raw(key).trim().parse().map_err(|_| self.bad(key, "a non-negative integer"))
    }

    pub fn u32(&self, key: &str) -> CliResult<u32> {
        self.raw(key).trim().parse().map_err(|_| self.bad(key, "a non-negative integer"))
    }

    pub fn bool(&self, key: &str) -> CliResult<bool> {
        match self.raw(key).trim() {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            _ => Err(self.bad(key, "true or false")),
        }
    }

    pub fn choice<'a>(&self, key: &str, options: &[&'a str]) -> CliResult<&'a str> {
        let v = self.raw(key).trim();
        options
            .iter()
            .find(|o| **o == v)
            .copied()
            .ok_or_else(|| self.bad(key, &format!("one of {}", options.join("|"))))
    }

    pub fn f64_list(&self, key: &str) -> CliResult<Vec<f64>> {
        self.raw(key)
            .split(',')
            .map(|s| parse_real(s).ok_or_else(|| self.bad(key, "a comma-separated list of reals")))
            .collect()
    }

    /// `lo:hi:steps`.
    pub fn range(&self, key: &str) -> CliResult<(f64, f64, usize)> {
        let parts: Vec<&str> = self.raw(key).split(':').collect();
        let err = || self.bad(key, "lo:hi:steps");
        if parts.len() != 3 {
            return Err(err());
        }
        let lo = parse_real(parts[0]).ok_or_else(err)?;
        let hi = parse_real(parts[1]).ok_or_else(err)?;
        let steps = parts[2].trim().parse().map_err(|_| err())?;
        Ok((lo, hi, steps))
    }

    /// `x_min,x_max,points`.
    pub fn grid(&self, key: &str) -> CliResult<(f64, f64, usize)> {
        let parts: Vec<&str> = self.raw(key).split(',').collect();
        let err = || self.bad(key, "x_min,x_max,points");
        if parts.len() != 3 {
            return Err(err());
        }
        let lo = parse_real(parts[0]).ok_or_else(err)?;
        let hi = parse_real(parts[1]).ok_or_else(err)?;
        let n = parts[2].trim().parse().map_err(|_| err())?;
        Ok((lo, hi, n))
    }

    /// `k=v,k=v` pairs.
    pub fn kv_list(&self, key: &str) -> CliResult<BTreeMap<String, f64>> {
        let mut out = BTreeMap::new();
        for item in self.raw(key).split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| self.bad(key, "k=v,k=v,..."))?;
            let v = parse_real(v).ok_or_else(|| self.bad(key, "k=v with real v"))?;
            out.insert(k.trim().to_string(), v);
        }
        Ok(out)
    }

    /// Symbol in the `deg_x deg_p re im; ...` text form.
    pub fn symbol(&self, key: &str) -> CliResult<WeylSymbol> {
        parse_text(self.raw(key)).map_err(|e| CliError::Usage(format!("--{key}: {e}")))
    }

    /// `dx,dp;dx,dp` monomial list.
    pub fn monomials(&self, key: &str) -> CliResult<Vec<(u32, u32)>> {
        self.raw(key)
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|pair| {
                let (a, b) = pair.split_once(',').ok_or_else(|| self.bad(key, "dx,dp;dx,dp"))?;
                let a = a.trim().parse().map_err(|_| self.bad(key, "integer degrees"))?;
                let b = b.trim().parse().map_err(|_| self.bad(key, "integer degrees"))?;
                Ok((a, b))
            })
            .collect()
    }
}

/// Reals, plus `pi` multiples such as `35pi` or `-pi/4`.
pub fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Some(v);
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim().parse::<f64>().ok()?),
        None => (s, 1.0),
    };
    let coeff = num.strip_suffix("pi")?.trim();
    let c = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => coeff.trim_end_matches('*').parse::<f64>().ok()?,
    };
    Some(c * std::f64::consts::PI / den)
}

/// Monomial rows `deg_x,deg_p,re,im`.
pub fn symbol_rows(symbol: &WeylSymbol) -> Vec<[String; 4]> {
    use crate::numeric::fmt_g12;
    symbol
        .terms()
        .map(|(m, c): (_, Complex64)| [m.x.to_string(), m.p.to_string(), fmt_g12(c.re), fmt_g12(c.im)])
        .collect()
}
