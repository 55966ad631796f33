//! Exact rationals and their canonical `p/q` text form.

use num_rational::Ratio;
use num_traits::Zero;
use std::str::FromStr;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{0}` (expected an integer or p/q)")]
pub struct ParseRationalError(pub String);

pub fn parse(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    let err = || ParseRationalError(text.to_string());
    match trimmed.split_once('/') {
        Some((p, q)) => {
            let p = i64::from_str(p.trim()).map_err(|_| err())?;
            let q = i64::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => i64::from_str(trimmed).map(Rational::from_integer).map_err(|_| err()),
    }
}

/// Lowest-terms text form, `p/q`, or plain `p` when the denominator is 1.
pub fn format(q: &Rational) -> String {
    q.to_string()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn half() -> Rational {
    Rational::new(1, 2)
}

pub fn is_even_integer(q: &Rational) -> bool {
    q.is_integer() && q.to_integer() % 2 == 0
}

/// Serde adaptor for rationals stored as canonical strings.
pub mod as_string {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Same as [`as_string`] for optional values.
pub mod as_opt_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_str(&super::format(q)),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("-3/2").unwrap(), Rational::new(-3, 2));
        assert_eq!(parse("4/2").unwrap(), int(2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert_eq!(format(&Rational::new(6, -4)), "-3/2");
        assert_eq!(format(&int(0)), "0");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1/2/3").is_err());
    }

    #[test]
    fn even_integers() {
        assert!(is_even_integer(&int(-2)));
        assert!(!is_even_integer(&int(1)));
        assert!(!is_even_integer(&half()));
    }
}
