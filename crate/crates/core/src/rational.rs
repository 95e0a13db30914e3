//! Exact rationals. Values print as `num/den` in lowest terms, integers bare.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Accepts `n`, `-n` and `n/d` with optional surrounding whitespace.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let text = text.trim();
    let bad = || Error::Value(format!("`{text}` is not a rational number"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Value(format!("`{text}` has a zero denominator")));
    }
    Ok(Rat::new(num, den))
}

/// JSON form `{"num": n, "den": d}`; components that overflow `i64` are strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatJson {
    pub num: serde_json::Value,
    pub den: serde_json::Value,
}

impl From<&Rat> for RatJson {
    fn from(r: &Rat) -> Self {
        let part = |x: &BigInt| match x.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(x.to_string()),
        };
        RatJson {
            num: part(r.numer()),
            den: part(r.denom()),
        }
    }
}

impl TryFrom<&RatJson> for Rat {
    type Error = Error;

    fn try_from(j: &RatJson) -> Result<Rat> {
        let part = |v: &serde_json::Value| -> Result<BigInt> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Value(format!("{n} is not an integer"))),
                serde_json::Value::String(s) => s
                    .parse()
                    .map_err(|_| Error::Value(format!("{s:?} is not an integer"))),
                other => Err(Error::Value(format!("{other} is not an integer"))),
            }
        };
        let den = part(&j.den)?;
        if den.is_zero() {
            return Err(Error::Value("zero denominator".into()));
        }
        Ok(Rat::new(part(&j.num)?, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(ratio(-2, 12).to_string(), "-1/6");
        assert_eq!(ratio(4, 2).to_string(), "2");
        assert_eq!(ratio(3, -9).to_string(), "-1/3");
        assert_eq!(zero().to_string(), "0");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rat("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat(" -6/4 ").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn json_form() {
        let r = ratio(-1, 6);
        let j = RatJson::from(&r);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"num":-1,"den":6}"#);
        assert_eq!(Rat::try_from(&j).unwrap(), r);
        let huge = parse_rat("123456789012345678901234567890/7").unwrap();
        assert_eq!(Rat::try_from(&RatJson::from(&huge)).unwrap(), huge);
    }
}
