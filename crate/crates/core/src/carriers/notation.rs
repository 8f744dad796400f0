//! Canonical element strings.
//!
//! Modular: `term ("+" term)*` with terms drawn from `n`, `niF`, `iF`, `nI`,
//! `I`, `niFI`, `iFI` in the fixed order re, iF, I, iFI. Coefficients are
//! canonical residues; a coefficient of 1 is elided before a symbol and the
//! zero element is `0`.
//!
//! Exact: the same layout with symbols `i`, `I`, `iI`, signed rational
//! coefficients such as `3/2`, and `+`/`-` as separators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactElem, ModElem, ModRing};
use crate::error::{Error, Result};

const MOD_SYMBOLS: [&str; 4] = ["", "iF", "I", "iFI"];
const EXACT_SYMBOLS: [&str; 4] = ["", "i", "I", "iI"];

pub(crate) fn render_modular(x: &ModElem) -> String {
    let mut out = String::new();
    for (slot, c) in x.coords().into_iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        if c != 1 || slot == 0 {
            out.push_str(&c.to_string());
        }
        out.push_str(MOD_SYMBOLS[slot]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Longest symbol at the start of `rest`, as `(slot, byte length)`.
fn match_symbol(rest: &[u8], symbols: &[&str; 4]) -> Option<(usize, usize)> {
    (1..4)
        .filter(|&slot| rest.starts_with(symbols[slot].as_bytes()))
        .max_by_key(|&slot| symbols[slot].len())
        .map(|slot| (slot, symbols[slot].len()))
}

fn digits(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    pos
}

pub(crate) fn parse_modular(s: &str, ring: &ModRing) -> Result<ModElem> {
    if s == "0" {
        return Ok(ModElem::ZERO);
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse(0, "empty element"));
    }
    let n = ring.modulus();
    let slots = ring.family().slots();
    let mut coords = [0u64; 4];
    let mut last: Option<usize> = None;
    let mut pos = 0;
    loop {
        let start = pos;
        let end = digits(bytes, pos);
        let coef = if end > pos {
            let text = &s[pos..end];
            let v: u64 = text
                .parse()
                .map_err(|_| Error::parse(pos, format!("coefficient `{text}` is too large")))?;
            Some(v)
        } else {
            None
        };
        pos = end;
        let slot = match match_symbol(&bytes[pos..], &MOD_SYMBOLS) {
            Some((slot, len)) => {
                pos += len;
                slot
            }
            None if coef.is_some() => 0,
            None => return Err(Error::parse(start, "expected a coefficient or one of iF, I, iFI")),
        };
        let coef = coef.unwrap_or(1);
        if coef == 0 {
            return Err(Error::parse(start, "zero terms are omitted in canonical form"));
        }
        if coef >= n {
            return Err(Error::parse(start, format!("coefficient {coef} is not a residue mod {n}")));
        }
        if !slots[slot] {
            return Err(Error::parse(
                start,
                format!("term `{}` is not admitted by this family", &s[start..pos]),
            ));
        }
        if last.is_some_and(|l| l >= slot) {
            return Err(Error::parse(start, "terms must appear once each, in the order re, iF, I, iFI"));
        }
        last = Some(slot);
        coords[slot] = coef;
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'+' {
            return Err(Error::parse(pos, format!("unexpected character `{}`", s[pos..].chars().next().unwrap())));
        }
        pos += 1;
        if pos == bytes.len() {
            return Err(Error::parse(pos, "dangling `+`"));
        }
    }
    Ok(ModElem::from_coords(coords))
}

pub(crate) fn render_exact(x: &ExactElem) -> String {
    let mut out = String::new();
    for (slot, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !mag.is_one() || slot == 0 {
            out.push_str(&mag.to_string());
        }
        out.push_str(EXACT_SYMBOLS[slot]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn parse_exact(s: &str) -> Result<ExactElem> {
    if s == "0" {
        return Ok(ExactElem::default());
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse(0, "empty element"));
    }
    let mut coords: [BigRational; 4] = Default::default();
    let mut last: Option<usize> = None;
    let mut pos = 0;
    loop {
        let start = pos;
        let negative = match bytes.get(pos) {
            Some(b'-') => {
                pos += 1;
                true
            }
            Some(b'+') if start > 0 => {
                pos += 1;
                false
            }
            _ if start > 0 => return Err(Error::parse(pos, "expected `+` or `-`")),
            _ => false,
        };
        let num_end = digits(bytes, pos);
        let coef = if num_end > pos {
            let numer: BigInt = s[pos..num_end].parse().expect("ascii digits");
            let mut value = BigRational::from_integer(numer);
            pos = num_end;
            if bytes.get(pos) == Some(&b'/') {
                let den_end = digits(bytes, pos + 1);
                if den_end == pos + 1 {
                    return Err(Error::parse(pos + 1, "expected a denominator"));
                }
                let den: BigInt = s[pos + 1..den_end].parse().expect("ascii digits");
                if den.is_zero() {
                    return Err(Error::parse(pos + 1, "zero denominator"));
                }
                value /= BigRational::from_integer(den);
                pos = den_end;
            }
            Some(value)
        } else {
            None
        };
        let slot = match match_symbol(&bytes[pos..], &EXACT_SYMBOLS) {
            Some((slot, len)) => {
                pos += len;
                slot
            }
            None if coef.is_some() => 0,
            None => return Err(Error::parse(pos, "expected a coefficient or one of i, I, iI")),
        };
        let mut coef = coef.unwrap_or_else(BigRational::one);
        if coef.is_zero() {
            return Err(Error::parse(start, "zero terms are omitted in canonical form"));
        }
        if negative {
            coef = -coef;
        }
        if last.is_some_and(|l| l >= slot) {
            return Err(Error::parse(start, "terms must appear once each, in the order re, i, I, iI"));
        }
        last = Some(slot);
        coords[slot] = coef;
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'+' && bytes[pos] != b'-' {
            return Err(Error::parse(pos, format!("unexpected character `{}`", s[pos..].chars().next().unwrap())));
        }
        if pos + 1 == bytes.len() {
            return Err(Error::parse(pos + 1, "dangling sign"));
        }
    }
    Ok(ExactElem::from_coords(coords))
}
