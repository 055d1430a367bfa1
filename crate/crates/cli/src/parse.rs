//! Flag-value parsers: exact rationals, reals, complex numbers, inclusive
//! index ranges, and polynomial arguments. All syntax is locale-independent.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use qeg::{Argument, C64, Rat};

/// "a" or "a/b" with integer a, b; b must be nonzero.
pub fn rational(text: &str) -> Result<Rat, String> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: BigInt = numer
        .trim()
        .parse()
        .map_err(|_| format!("`{text}` is not a rational; use `a` or `a/b`"))?;
    let denom: BigInt = denom
        .trim()
        .parse()
        .map_err(|_| format!("`{text}` is not a rational; use `a` or `a/b`"))?;
    if denom.is_zero() {
        return Err(format!("`{text}` has a zero denominator"));
    }
    Ok(Rat::new(numer, denom))
}

/// A real number as a decimal ("0.25") or a fraction ("1/4").
pub fn real(text: &str) -> Result<f64, String> {
    if text.contains('/') {
        let r = rational(text)?;
        return r
            .to_f64()
            .ok_or_else(|| format!("`{text}` does not fit in a float"));
    }
    text.trim()
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))
}

/// "a", "a+bi", "a-bi", or "bi": a complex number with real parts in
/// decimal or fraction syntax.
pub fn complex(text: &str) -> Result<C64, String> {
    let s = text.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(real(s)?, 0.0));
    };
    // Split at the sign that separates real and imaginary parts: the last
    // '+'/'-' that is neither leading nor part of an exponent like "1e-3".
    let bytes = body.as_bytes();
    let split = (1..body.len()).rev().find(|&i| {
        (bytes[i] == b'+' || bytes[i] == b'-')
            && !matches!(bytes[i - 1], b'e' | b'E')
    });
    match split {
        Some(i) => {
            let re = real(&body[..i])?;
            let im_text = &body[i..];
            let im = if im_text == "+" || im_text == "-" {
                // "a+i" / "a-i": unit imaginary part.
                if im_text == "+" { 1.0 } else { -1.0 }
            } else {
                real(im_text)?
            };
            Ok(C64::new(re, im))
        }
        None => {
            let im = match body {
                "" => 1.0,
                "-" => -1.0,
                other => real(other)?,
            };
            Ok(C64::new(0.0, im))
        }
    }
}

/// "k" or "a..b", both ends inclusive.
pub fn index_range(text: &str) -> Result<Vec<u32>, String> {
    let parse_end = |s: &str| -> Result<u32, String> {
        s.trim()
            .parse()
            .map_err(|_| format!("`{text}` is not an index or inclusive range `a..b`"))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse_end(a)?, parse_end(b)?),
        None => {
            let k = parse_end(text)?;
            (k, k)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{text}`"));
    }
    Ok((lo..=hi).collect())
}

/// Polynomial argument: a nonnegative integer stays exact, anything else
/// (fractions, decimals, negatives) evaluates in floating point.
pub fn argument(text: &str) -> Result<Argument, String> {
    if let Ok(k) = text.trim().parse::<u64>() {
        return Ok(Argument::Integer(k));
    }
    Ok(Argument::Real(real(text)?))
}
