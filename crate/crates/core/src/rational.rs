//! Exact rational helpers and their JSON form `{"num": n, "den": d}`.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

pub fn to_json(r: &Rational) -> Value {
    json!({ "num": bigint_json(r.numer()), "den": bigint_json(r.denom()) })
}

/// Decimal rendering for display only; rounds to `digits` places.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (r.abs() * Rational::from_integer(scale.clone())).round().to_integer();
    let int_part = &scaled / &scale;
    let frac = &scaled % &scale;
    let sign = if neg && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits)
    }
}

fn parse_bigint(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

/// Accepts an integer, `{"num": n, "den": d}`, or a string `"n/d"`.
pub fn from_json(v: &Value) -> Result<Rational> {
    let bad = || Error::Model(format!("not a rational: {v}"));
    match v {
        Value::Number(_) => Ok(Rational::from_integer(parse_bigint(v).ok_or_else(bad)?)),
        Value::String(s) => {
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s.trim(), "1"),
            };
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        Value::Object(o) => {
            let n = o.get("num").and_then(parse_bigint).ok_or_else(bad)?;
            let d = o.get("den").and_then(parse_bigint).ok_or_else(bad)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        assert_eq!(from_json(&json!(3)).unwrap(), int(3));
        assert_eq!(from_json(&json!("2/4")).unwrap(), ratio(1, 2));
        assert_eq!(from_json(&json!({"num": 6, "den": 4})).unwrap(), ratio(3, 2));
        assert!(from_json(&json!("1/0")).is_err());
        assert!(from_json(&json!(1.5)).is_err());
        assert_eq!(to_json(&ratio(-6, 4)), json!({"num": -3, "den": 2}));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&ratio(-5, 2), 2), "-2.50");
        assert_eq!(to_decimal(&int(7), 0), "7");
    }
}
