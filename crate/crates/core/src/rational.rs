//! Exact rational parsing and formatting.
//!
//! Discrete probability arithmetic is exact throughout the engine; reals only
//! enter through densities. Probability annotations written as `a/b`, decimal
//! literals (`0.6`) and scientific notation (`1e-7`) all parse to exact
//! rationals here.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact decimal expansion: `"0.6"` becomes `3/5`.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = format!("{}{}", int_part, frac_part);
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = digits.parse().ok()?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(num, den))
}

/// Accepts `a/b`, decimals, integers and scientific notation (`1e-7`,
/// `2.5e3`). Returns None on malformed text.
pub fn parse_rational_text(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (neg, text) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let value = if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        BigRational::new(n, d)
    } else if let Some(pos) = text.find(['e', 'E']) {
        let mantissa = parse_decimal(&text[..pos])?;
        let exp: i32 = text[pos + 1..].parse().ok()?;
        let scale = BigRational::from(BigInt::from(10u32)).pow(exp);
        mantissa * scale
    } else {
        parse_decimal(text)?
    };
    Some(if neg { -value } else { value })
}

/// `"1/3"`-style display; integers render without a denominator.
pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for extreme values.
        let n = r.numer().to_f64().unwrap_or(if r.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_expansion_is_exact() {
        assert_eq!(parse_decimal("0.6").unwrap(), ratio(3, 5));
        assert_eq!(parse_decimal("3.14").unwrap(), ratio(157, 50));
        assert_eq!(parse_decimal("1").unwrap(), ratio(1, 1));
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(parse_rational_text("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational_text("1e-7").unwrap(), ratio(1, 10_000_000));
        assert_eq!(parse_rational_text("2.5e3").unwrap(), ratio(2500, 1));
        assert_eq!(parse_rational_text("-1/2").unwrap(), ratio(-1, 2));
        assert!(parse_rational_text("1/0").is_none());
        assert!(parse_rational_text("abc").is_none());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_ratio(&ratio(1, 3)), "1/3");
        assert_eq!(format_ratio(&ratio(2, 1)), "2");
    }
}
