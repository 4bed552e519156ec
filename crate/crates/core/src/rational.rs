//! Exact rational helpers and the density parameter δ.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int<T: Into<BigInt>>(v: T) -> Rational {
    Rational::from_integer(v.into())
}

/// Parses `p/q`, an integer, or a plain decimal such as `0.148`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let den = num_traits::pow(BigInt::from(10u32), frac.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Always `p/q` with `q ≥ 1`, e.g. `1/5`, `3/1`, `-7/2`.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: scale down first.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn ceil_i64(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("ceiling fits in i64")
}

pub fn lcm_all<'a>(dens: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    dens.into_iter().fold(BigInt::one(), |acc, d| acc.lcm(d))
}

pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// The density parameter: graphs of order `n` are assumed to have minimum
/// degree at least `(1 − δ)n`. Stored exactly; `0 < δ < 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Delta(Rational);

impl Delta {
    pub fn new(value: Rational) -> Result<Self> {
        if value <= Rational::zero() || value >= Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "delta must satisfy 0 < delta < 1, got {}",
                fmt_rational(&value)
            )));
        }
        Ok(Delta(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.0)
    }

    /// `(1 − δ)n`.
    pub fn min_degree_bound(&self, n: usize) -> Rational {
        (Rational::one() - &self.0) * int(n)
    }

    /// `δn`.
    pub fn deficiency(&self, n: usize) -> Rational {
        &self.0 * int(n)
    }

    /// `⌈(1 − δ)n + 1⌉`, the degree cap in the reducedness condition.
    pub fn reduced_degree_cap(&self, n: usize) -> i64 {
        ceil_i64(&(self.min_degree_bound(n) + Rational::one()))
    }

    /// `⌈(1 − δ)n − 1⌉`, the per-triangle K4 bound used by `λ_A` and `c_max`.
    pub fn k4_cap(&self, n: usize) -> i64 {
        ceil_i64(&(self.min_degree_bound(n) - Rational::one()))
    }

    pub fn admits_min_degree(&self, n: usize, degree: usize) -> bool {
        int(degree) >= self.min_degree_bound(n)
    }
}

impl FromStr for Delta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Delta::new(parse_rational(s)?)
    }
}

impl fmt::Debug for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Delta({})", fmt_rational(&self.0))
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl Serialize for Delta {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(&self.0))
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("0.148").unwrap(), rat(37, 250));
        assert_eq!(parse_rational("7/14").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e3").is_err());
    }

    #[test]
    fn delta_thresholds() {
        let d: Delta = "0.148".parse().unwrap();
        // (1-δ)·7 = 5.964
        assert_eq!(d.reduced_degree_cap(7), 7);
        assert_eq!(d.k4_cap(7), 5);
        assert!(d.admits_min_degree(7, 6));
        assert!(!d.admits_min_degree(7, 5));
        let half: Delta = "1/2".parse().unwrap();
        assert_eq!(half.k4_cap(14), 6);
        assert!("0".parse::<Delta>().is_err());
        assert!("1".parse::<Delta>().is_err());
    }

    #[test]
    fn formats_as_fraction() {
        assert_eq!(fmt_rational(&rat(2, 10)), "1/5");
        assert_eq!(fmt_rational(&int(3)), "3/1");
    }
}
