//! Text forms for complex scalars and polynomials.
//!
//! A complex literal is `re` or `re+imi` / `re-imi` (a bare `imi` part such
//! as `2i` or `-i` is also accepted). Components are decimal (`1.5`, `2e-3`),
//! integer (`-4`) or rational (`3/4`); integer and rational components parse
//! exactly. A polynomial is a comma-separated coefficient list, ascending
//! degree: `0,-1,1` is z^2 - z.

use crate::error::{Error, Result};
use crate::rational::{ratio_to_f64, GaussianRational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use std::str::FromStr;

/// A parsed complex scalar: always usable as f64 pair, exact when the
/// source literal was integer/rational.
#[derive(Clone, Debug)]
pub struct CValue {
    pub approx: Complex64,
    pub exact: Option<GaussianRational>,
}

fn parse_component(s: &str) -> Result<(f64, Option<BigRational>)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty numeric component".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| Error::Parse(format!("bad rational numerator `{num}`")))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| Error::Parse(format!("bad rational denominator `{den}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        let r = BigRational::new(n, d);
        return Ok((ratio_to_f64(&r), Some(r)));
    }
    if let Ok(n) = BigInt::from_str(s) {
        let r = BigRational::from_integer(n);
        return Ok((ratio_to_f64(&r), Some(r)));
    }
    let v = f64::from_str(s).map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
    Ok((v, None))
}

/// Split `re+imi` style literals at the sign separating the two parts.
fn split_re_im(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    // Scan from the right so a leading sign on the real part is skipped.
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx] as char;
        if c == '+' || c == '-' {
            let prev = bytes[idx - 1] as char;
            if prev == 'e' || prev == 'E' || prev == '/' || prev == '+' || prev == '-' {
                continue;
            }
            return Some((&s[..idx], &s[idx..]));
        }
    }
    None
}

pub fn parse_complex(input: &str) -> Result<CValue> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let (re_str, im_str): (Option<&str>, Option<&str>) = if let Some(body) = s.strip_suffix('i') {
        match split_re_im(body) {
            Some((re, im)) => (Some(re), Some(im)),
            None => (None, Some(body)),
        }
    } else {
        (Some(&s), None)
    };

    let (re, re_exact) = match re_str {
        Some(r) => parse_component(r)?,
        None => (0.0, Some(BigRational::zero())),
    };
    let (im, im_exact) = match im_str {
        Some("") | Some("+") => (1.0, Some(BigRational::from_integer(BigInt::from(1)))),
        Some("-") => (-1.0, Some(BigRational::from_integer(BigInt::from(-1)))),
        Some(other) => parse_component(other)?,
        None => (0.0, Some(BigRational::zero())),
    };

    let exact = match (re_exact, im_exact) {
        (Some(r), Some(i)) => Some(GaussianRational::new(r, i)),
        _ => None,
    };
    Ok(CValue {
        approx: Complex64::new(re, im),
        exact,
    })
}

/// Canonical display for a floating complex scalar.
pub fn fmt_c64(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_complex("3").unwrap().approx, Complex64::new(3.0, 0.0));
        assert_eq!(parse_complex("-1/2").unwrap().approx, Complex64::new(-0.5, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap().approx, Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("0.5-0.25i").unwrap().approx, Complex64::new(0.5, -0.25));
        assert_eq!(parse_complex("-i").unwrap().approx, Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("2e-3").unwrap().approx, Complex64::new(2e-3, 0.0));
        assert_eq!(parse_complex("1/2+1/2i").unwrap().approx, Complex64::new(0.5, 0.5));
        assert!(parse_complex("2e-3").unwrap().exact.is_none());
        assert!(parse_complex("1/3").unwrap().exact.is_some());
        assert!(parse_complex("nope+2i").is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["2", "-1.5", "0", "1+2i", "0.25-3i"] {
            let v = parse_complex(s).unwrap().approx;
            assert_eq!(parse_complex(&fmt_c64(v)).unwrap().approx, v);
        }
    }
}
