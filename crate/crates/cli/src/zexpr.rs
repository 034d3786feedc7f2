//! Parser for `--z` arguments: sums of real terms, imaginary terms and the
//! half-period landmarks `K` and `iK'`.
//!
//! Examples: `0.37`, `-1e-3`, `0.3+0.4i`, `K`, `iK'`, `K+iK'`, `0.5K`,
//! `2*K-0.25iK'`, `0.1+0.5iK'`.

use dn2_core::{CPoint, PeriodPair};

/// One term of the expression before the periods are known.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Unit {
    Real,
    Imag,
    K,
    IKPrime,
}

/// A parsed `--z` expression, linear in `K` and `K′`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ZExpr {
    constant: CPoint,
    k: f64,
    k_prime: f64,
}

impl ZExpr {
    pub fn parse(src: &str) -> Result<Self, String> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty z expression".into());
        }
        let mut out = ZExpr::default();
        for (sign, term) in split_terms(&s)? {
            let (coef, unit) = parse_term(term).map_err(|e| format!("bad z term '{term}': {e}"))?;
            let c = sign * coef;
            match unit {
                Unit::Real => out.constant.re += c,
                Unit::Imag => out.constant.im += c,
                Unit::K => out.k += c,
                Unit::IKPrime => out.k_prime += c,
            }
        }
        Ok(out)
    }

    pub fn needs_periods(&self) -> bool {
        self.k != 0.0 || self.k_prime != 0.0
    }

    pub fn resolve(&self, p: Option<&PeriodPair>) -> CPoint {
        match p {
            Some(p) => self.constant + CPoint::new(self.k * p.k, self.k_prime * p.k_prime),
            None => self.constant,
        }
    }
}

/// Splits at `+`/`-` that are not part of an exponent.
fn split_terms(s: &str) -> Result<Vec<(f64, &str)>, String> {
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    let mut sign = 1.0;
    let mut i = 0;
    if matches!(bytes.first(), Some(b'+') | Some(b'-')) {
        sign = if bytes[0] == b'-' { -1.0 } else { 1.0 };
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        let b = bytes[i];
        let exponent = i > start && matches!(bytes[i - 1], b'e' | b'E') && {
            // `e` only counts as an exponent marker after a digit or '.'.
            i >= 2 && (bytes[i - 2].is_ascii_digit() || bytes[i - 2] == b'.')
        };
        if (b == b'+' || b == b'-') && !exponent {
            if i == start {
                return Err(format!("dangling sign in '{s}'"));
            }
            terms.push((sign, &s[start..i]));
            sign = if b == b'-' { -1.0 } else { 1.0 };
            start = i + 1;
        }
        i += 1;
    }
    if start >= bytes.len() {
        return Err(format!("dangling sign in '{s}'"));
    }
    terms.push((sign, &s[start..]));
    Ok(terms)
}

fn parse_term(t: &str) -> Result<(f64, Unit), String> {
    let (body, unit) = if let Some(b) = t.strip_suffix("iK'") {
        (b, Unit::IKPrime)
    } else if let Some(b) = t.strip_suffix("K'i") {
        (b, Unit::IKPrime)
    } else if let Some(b) = t.strip_suffix('K') {
        (b, Unit::K)
    } else if let Some(b) = t.strip_suffix('i') {
        (b, Unit::Imag)
    } else {
        (t, Unit::Real)
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    if body.is_empty() {
        return match unit {
            Unit::Real => Err("missing value".into()),
            _ => Ok((1.0, unit)),
        };
    }
    let v: f64 = body
        .parse()
        .map_err(|_| format!("'{body}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{body}' is not finite"));
    }
    Ok((v, unit))
}
