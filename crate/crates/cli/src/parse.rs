//! Input parsing: coefficient lists and Eisenstein tuples.

use num_bigint::BigInt;

use ramforge_core::localram::CatalogMap;
use ramforge_core::{EisensteinDatum, Error, Result};

/// Comma-separated coefficient list, constant term first; expressions
/// containing `x` are accepted as a convenience (`x^2+1`).
pub fn coeff_list(s: &str) -> Result<Vec<BigInt>> {
    if s.contains('x') {
        return poly_string(s);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient {t:?}")))
        })
        .collect()
}

/// Parse `x^4 - x^2 + 1` style input into a coefficient list.
fn poly_string(s: &str) -> Result<Vec<BigInt>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut term = String::new();
    let mut terms = Vec::new();
    for (i, c) in compact.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 && !term.ends_with('^') {
            terms.push(std::mem::take(&mut term));
        }
        term.push(c);
    }
    if !term.is_empty() {
        terms.push(term);
    }
    for t in terms {
        let (coeff_str, degree) = match t.find('x') {
            None => (t.as_str(), 0usize),
            Some(pos) => {
                let deg = match t[pos + 1..].strip_prefix('^') {
                    Some(d) => d
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent in {t:?}")))?,
                    None if t.len() == pos + 1 => 1,
                    None => {
                        return Err(Error::InvalidInput(format!("malformed term {t:?}")))
                    }
                };
                (&t[..pos], deg)
            }
        };
        let coeff = match coeff_str.trim_end_matches('*') {
            "" | "+" => BigInt::from(1),
            "-" => BigInt::from(-1),
            c => c
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient in {t:?}")))?,
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, BigInt::from(0));
        }
        coeffs[degree] += coeff;
    }
    if coeffs.is_empty() {
        return Err(Error::InvalidInput("empty polynomial".into()));
    }
    Ok(coeffs)
}

/// Eisenstein tuple `p=2,e=3,g=0:1,u=1` (g colon-separated, optional).
pub fn eisenstein(s: &str, precision: Option<u32>) -> Result<EisensteinDatum> {
    let mut p: Option<u64> = None;
    let mut e: Option<u32> = None;
    let mut g: Vec<BigInt> = Vec::new();
    let mut u: Option<BigInt> = None;
    let mut n: Option<u32> = None;
    for part in s.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("expected key=value, got {part:?}")))?;
        match key.trim() {
            "p" => p = Some(parse_num(value)?),
            "e" => e = Some(parse_num(value)? as u32),
            "n" => n = Some(parse_num(value)? as u32),
            "u" => {
                u = Some(value.trim().parse::<BigInt>().map_err(|_| {
                    Error::InvalidInput(format!("bad unit {value:?}"))
                })?)
            }
            "g" => {
                g = value
                    .split(':')
                    .map(|t| {
                        t.trim().parse::<BigInt>().map_err(|_| {
                            Error::InvalidInput(format!("bad g coefficient {t:?}"))
                        })
                    })
                    .collect::<Result<_>>()?;
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown Eisenstein key {other:?}"
                )))
            }
        }
    }
    let p = p.ok_or_else(|| Error::InvalidInput("missing p".into()))?;
    let e = e.ok_or_else(|| Error::InvalidInput("missing e".into()))?;
    let u = u.ok_or_else(|| Error::InvalidInput("missing u".into()))?;
    let precision = precision.or(n).unwrap_or(16);
    EisensteinDatum::new(p, precision, e, g, u)
}

/// Catalog target: `identity`, `localization:N`, `quotient:N`.
pub fn catalog_target(s: &str) -> Result<CatalogMap> {
    let s = s.trim();
    if s == "identity" {
        return Ok(CatalogMap::Identity);
    }
    if let Some((kind, n)) = s.split_once(':') {
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad modulus {n:?}")))?;
        return match kind.trim() {
            "localization" => Ok(CatalogMap::Localization(n)),
            "quotient" => Ok(CatalogMap::Quotient(n)),
            other => Err(Error::InvalidInput(format!("unknown target {other:?}"))),
        };
    }
    Err(Error::InvalidInput(format!(
        "expected identity, localization:N, or quotient:N; got {s:?}"
    )))
}

fn parse_num(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad number {s:?}")))
}
