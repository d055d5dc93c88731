//! Exact rational and floating complex linear algebra.
//!
//! Everything that decides a rank for the verification pipeline goes through
//! [`rank_exact`] / [`kernel_exact`], which never touch floating point. The
//! complex path ([`rank_numeric`]) exists for evaluation points that are not
//! rational, e.g. roots of an irreducible `l(c0(t))`.

mod exact;
mod matrix;
mod numeric;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use exact::{det_exact, kernel_exact, rank_exact, vandermonde, EchelonForm, KernelBasis};
pub use matrix::{ComplexMatrix, Matrix, RationalMatrix};
pub use numeric::{det_numeric, rank_numeric, singular_values, DEFAULT_TOLERANCE};

pub use num_complex::Complex64;
pub use num_rational::BigRational as Rational;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field of matrix entries and evaluation points.
pub trait Scalar:
    Clone
    + Debug
    + std::fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_rational(r: &Rational) -> Self;

    fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn pow(&self, exp: usize) -> Self {
        num_traits::pow(self.clone(), exp)
    }
}

impl Scalar for Complex64 {
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
}

/// JSON representation of a scalar: canonical strings for rationals,
/// `[re, im]` pairs for complex values.
pub trait JsonScalar: Sized {
    type Repr: serde::Serialize + serde::de::DeserializeOwned;

    fn to_repr(&self) -> Self::Repr;
    fn from_repr(r: Self::Repr) -> Result<Self>;
}

impl JsonScalar for Rational {
    type Repr = String;

    fn to_repr(&self) -> String {
        format_rational(self)
    }

    fn from_repr(r: String) -> Result<Self> {
        parse_rational(&r)
    }
}

impl JsonScalar for Complex64 {
    type Repr = [f64; 2];

    fn to_repr(&self) -> [f64; 2] {
        [self.re, self.im]
    }

    fn from_repr([re, im]: [f64; 2]) -> Result<Self> {
        Ok(Complex64::new(re, im))
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `"p/q"` string; the denominator is omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Serde adapters for rationals as canonical strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_rational(s).map_err(D::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_rational(&ratio(-2, 4)), "-1/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(parse_rational(" 6/-4 ").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = parse_rational("10/-15").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }
}
