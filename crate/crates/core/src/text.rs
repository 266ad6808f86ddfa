//! Plain-text forms of an element.
//!
//! Two spellings are accepted:
//!
//! * v-basis brackets, `[g1,g2,g3,g4]`;
//! * half coordinates, `(A+Bi+Cr2j+Dr2k)/2`, where `r2j` and `r2k` stand for
//!   `sqrt2 j` and `sqrt2 k`. Terms may be omitted or reordered and a bare
//!   suffix means coefficient one, so `(2+2i)/2` is `1 + i`.
//!
//! The JSON encoding `{"v":[g1,g2,g3,g4]}` is accepted as well.

use std::str::FromStr;

use crate::element::{HalfCoords, OrderElement};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<OrderElement> {
    let s = text.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
    }
    if let Some(body) = s.strip_prefix('[') {
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("missing ']' in {s:?}")))?;
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected 4 coordinates, got {}", parts.len())));
        }
        let mut v = [0i64; 4];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| Error::Parse(format!("bad integer {p:?}")))?;
        }
        return Ok(OrderElement { v });
    }
    if let Some(body) = s.strip_prefix('(') {
        let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_suffix(")/2")
            .ok_or_else(|| Error::Parse(format!("half form must end with ')/2': {s:?}")))?;
        let h = parse_half_terms(inner)?;
        return OrderElement::from_half(h);
    }
    Err(Error::Parse(format!("unrecognised quaternion syntax {s:?}")))
}

fn parse_half_terms(inner: &str) -> Result<HalfCoords> {
    if inner.is_empty() {
        return Err(Error::Parse("empty half form".into()));
    }
    let mut coords = [None::<i64>; 4];
    let bytes = inner.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let start = pos;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            pos += 1;
        }
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let term = &inner[start..pos];
        let (slot, coef) = parse_term(term)?;
        if coords[slot].replace(coef).is_some() {
            return Err(Error::Parse(format!("repeated term in {inner:?}")));
        }
    }
    let [a, b, c, d] = coords.map(|x| x.unwrap_or(0));
    Ok(HalfCoords::new(a, b, c, d))
}

fn parse_term(term: &str) -> Result<(usize, i64)> {
    let (slot, digits) = if let Some(t) = term.strip_suffix("r2j") {
        (2, t)
    } else if let Some(t) = term.strip_suffix("r2k") {
        (3, t)
    } else if let Some(t) = term.strip_suffix('i') {
        (1, t)
    } else {
        (0, term)
    };
    let coef = match digits {
        "" | "+" if slot != 0 => 1,
        "-" if slot != 0 => -1,
        _ => digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad term {term:?}")))?,
    };
    Ok((slot, coef))
}

/// The v-basis bracket form.
pub fn format(e: &OrderElement) -> String {
    e.to_string()
}

/// The half-coordinate form with all four terms written out.
pub fn format_half(e: &OrderElement) -> String {
    let h = e.to_half();
    let sign = |x: i64| if x < 0 { '-' } else { '+' };
    format!(
        "({}{}{}i{}{}r2j{}{}r2k)/2",
        h.a,
        sign(h.b),
        h.b.unsigned_abs(),
        sign(h.c),
        h.c.unsigned_abs(),
        sign(h.d),
        h.d.unsigned_abs()
    )
}

impl FromStr for OrderElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
