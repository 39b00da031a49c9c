//! Exact instants and half-open spans.
//!
//! Every quantity is a rational number, so equality tests at window
//! boundaries are exact. Text forms accepted by [`parse_rational`]:
//! `12`, `-3`, `9.4` (read as `47/5`) and `7/2`.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Parses `integer`, `decimal` or `integer/integer`, with an optional sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::invalid(format!("`{text}` is not a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i128 = parse_int(num).ok_or_else(bad)?;
        let den: i128 = parse_int(den).ok_or_else(bad)?;
        if den == 0 {
            return Err(Error::invalid(format!("`{text}` has a zero denominator")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
            return Err(bad());
        }
        let whole_value: i128 = if whole_digits.is_empty() {
            0
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let scale = 10i128.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let frac_value: i128 = frac.parse().map_err(|_| bad())?;
        let magnitude = whole_value
            .checked_mul(scale)
            .and_then(|w| w.checked_add(frac_value))
            .ok_or_else(bad)?;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(num, scale));
    }
    parse_int(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<i128> {
    let s = s.trim();
    let digits = s.trim_start_matches(['-', '+']);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Formats as an integer when the denominator is 1, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An exact instant in abstract time units.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(Rational);

impl Timestamp {
    pub fn new(value: Rational) -> Self {
        Timestamp(value)
    }

    pub fn from_int(value: i128) -> Self {
        Timestamp(Rational::from_integer(value))
    }

    pub fn value(&self) -> Rational {
        self.0
    }
}

impl From<i128> for Timestamp {
    fn from(v: i128) -> Self {
        Timestamp::from_int(v)
    }
}

impl From<Rational> for Timestamp {
    fn from(v: Rational) -> Self {
        Timestamp(v)
    }
}

impl Add<Rational> for Timestamp {
    type Output = Timestamp;
    fn add(self, rhs: Rational) -> Timestamp {
        Timestamp(self.0 + rhs)
    }
}

impl Sub for Timestamp {
    type Output = Rational;
    fn sub(self, rhs: Timestamp) -> Rational {
        self.0 - rhs.0
    }
}

impl FromStr for Timestamp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Timestamp)
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Timestamp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_rational(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Timestamp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        deserialize_rational(d).map(Timestamp)
    }
}

/// Integers serialize as JSON numbers, everything else as a `"p/q"` string.
pub fn serialize_rational<S: Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    if r.is_integer() {
        if let Ok(v) = i64::try_from(*r.numer()) {
            return s.serialize_i64(v);
        }
    }
    s.serialize_str(&format_rational(r))
}

/// Accepts JSON integers, strings in any [`parse_rational`] form, and JSON
/// floats (read through their shortest decimal representation).
pub fn deserialize_rational<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Rational, D::Error> {
    struct RationalVisitor;

    impl Visitor<'_> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("an integer, a decimal, or a \"p/q\" string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
            Ok(Rational::from_integer(v as i128))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
            Ok(Rational::from_integer(v as i128))
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
            if !v.is_finite() {
                return Err(E::custom("non-finite number"));
            }
            parse_rational(&format!("{v:?}")).map_err(E::custom)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }
    }

    d.deserialize_any(RationalVisitor)
}

/// A half-open span `[start, end)` with `start < end`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    start: Timestamp,
    end: Timestamp,
}

impl Interval {
    pub fn new(start: impl Into<Timestamp>, end: impl Into<Timestamp>) -> Result<Self> {
        let (start, end) = (start.into(), end.into());
        if start < end {
            Ok(Interval { start, end })
        } else {
            Err(Error::invalid(format!(
                "interval ({start}, {end}) must start strictly before it ends"
            )))
        }
    }

    /// Panicking constructor for literals in tests and examples.
    pub fn of(start: i128, end: i128) -> Self {
        Interval::new(start, end).expect("literal interval must satisfy start < end")
    }

    pub fn start(&self) -> Timestamp {
        self.start
    }

    pub fn end(&self) -> Timestamp {
        self.end
    }

    pub fn length(&self) -> Rational {
        self.end - self.start
    }

    /// Half-open overlap: touching endpoints do not overlap.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.start < other.end && other.start < self.end
    }

    /// Distance between the two spans, zero when they touch or overlap.
    pub fn gap_to(&self, other: &Interval) -> Rational {
        let forward = other.start - self.end;
        let backward = self.start - other.end;
        let g = if forward > backward {
            forward
        } else {
            backward
        };
        if g.is_negative() {
            Rational::zero()
        } else {
            g
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start, self.end)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.start, self.end].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [start, end] = <[Timestamp; 2]>::deserialize(d)?;
        Interval::new(start, end).map_err(de::Error::custom)
    }
}

/// `1` as a rational, handy for tick arithmetic.
pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("12").unwrap(), Rational::from_integer(12));
        assert_eq!(parse_rational("-3").unwrap(), Rational::from_integer(-3));
        assert_eq!(parse_rational("9.4").unwrap(), Rational::new(47, 5));
        assert_eq!(parse_rational("7/2").unwrap(), Rational::new(7, 2));
        assert_eq!(parse_rational("-0.5").unwrap(), Rational::new(-1, 2));
        assert_eq!(
            parse_rational("1736253620").unwrap(),
            Rational::from_integer(1736253620)
        );
        for bad in ["", "a", "1/0", "1.", ".", "1.2.3", "3/x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn equality_is_exact() {
        let a: Timestamp = "0.1".parse().unwrap();
        let b: Timestamp = "1/10".parse().unwrap();
        assert_eq!(a, b);
        assert_ne!(a, "0.1000000000001".parse().unwrap());
    }

    #[test]
    fn interval_rejects_empty_and_inverted() {
        assert!(Interval::new(3, 3).is_err());
        assert!(Interval::new(4, 3).is_err());
        assert!(Interval::new(3, 4).is_ok());
    }

    #[test]
    fn overlap_is_half_open() {
        assert!(!Interval::of(0, 1).overlaps(&Interval::of(1, 2)));
        assert!(Interval::of(0, 2).overlaps(&Interval::of(1, 3)));
        assert_eq!(
            Interval::of(0, 1).gap_to(&Interval::of(3, 4)),
            Rational::from_integer(2)
        );
        assert_eq!(
            Interval::of(3, 4).gap_to(&Interval::of(0, 1)),
            Rational::from_integer(2)
        );
        assert_eq!(
            Interval::of(0, 2).gap_to(&Interval::of(1, 4)),
            Rational::zero()
        );
    }

    #[test]
    fn json_forms() {
        let iv: Interval = serde_json::from_str(r#"[0, "7/2"]"#).unwrap();
        assert_eq!(iv.end().value(), Rational::new(7, 2));
        assert_eq!(serde_json::to_string(&iv).unwrap(), r#"[0,"7/2"]"#);
        let iv: Interval = serde_json::from_str("[9.4, 20]").unwrap();
        assert_eq!(iv.start().value(), Rational::new(47, 5));
        assert!(serde_json::from_str::<Interval>("[2, 1]").is_err());
    }
}
