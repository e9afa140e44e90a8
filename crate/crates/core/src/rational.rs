//! Exact exponents.

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, ToPrimitive, Zero};

use crate::{Error, Result};

/// Canonical rational number (`gcd(|num|, den) = 1`, `den ≥ 1`).
pub type Rational = num_rational::Ratio<i64>;

pub fn ratio(numer: i64, denom: i64) -> Result<Rational> {
    if denom == 0 {
        return Err(Error::InvalidParameter("zero denominator".into()));
    }
    Ok(Rational::new(numer, denom))
}

/// Parses `"3"`, `"-2/3"` or `"1/9"`.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidParameter(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            ratio(n, d).map_err(|_| bad())
        }
        None => text.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn checked_mul(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_mul(&b).ok_or(Error::RationalOverflow)
}

pub fn checked_add(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_add(&b).ok_or(Error::RationalOverflow)
}

pub fn checked_sub(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_sub(&b).ok_or(Error::RationalOverflow)
}

/// `p/q`, or just `p` when the denominator is one.
pub fn display(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders `r·π` as e.g. `-5π/12`, `π`, `0`.
pub fn display_pi(r: Rational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let n = *r.numer();
    let d = *r.denom();
    let head = match n {
        1 => "π".to_string(),
        -1 => "-π".to_string(),
        _ => format!("{n}π"),
    };
    if d == 1 {
        head
    } else {
        format!("{head}/{d}")
    }
}

/// Is `r` an even integer?
pub fn is_even_integer(r: Rational) -> bool {
    *r.denom() == 1 && r.numer() % 2 == 0
}
