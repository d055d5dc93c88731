use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, serde_rational, Rational, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial in the affine coordinate `t`; `coeffs[i]` is the
/// coefficient of `t^i`. Trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "UniRepr", into = "UniRepr")]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct UniRepr {
    #[serde(with = "serde_rational::vec")]
    coeffs: Vec<Rational>,
}

impl From<UniRepr> for UniPoly {
    fn from(r: UniRepr) -> Self {
        UniPoly::from_coeffs(r.coeffs)
    }
}

impl From<UniPoly> for UniRepr {
    fn from(p: UniPoly) -> Self {
        UniRepr { coeffs: p.coeffs }
    }
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::algebra::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^power`.
    pub fn monomial(power: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn t() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients padded with zeros (or truncated) to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Rational> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation in any scalar field containing the rationals.
    pub fn eval<T: Scalar>(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + T::from_rational(c))
    }

    /// Substitution `t -> inner(t)`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| {
            &(&acc * inner) + &UniPoly::constant(c.clone())
        })
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lc;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }
}

/// Monic greatest common divisor over the rationals.
pub fn gcd_univariate(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y);
        x = y;
        y = r.monic();
    }
    Ok(x.monic())
}

/// Gcd of a whole family; zero members are ignored. `None` when all are zero.
pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a UniPoly>) -> Option<UniPoly> {
    polys.into_iter().fold(None, |acc, p| match acc {
        None if p.is_zero() => None,
        None => Some(p.monic()),
        Some(g) => Some(gcd_univariate(&g, p).expect("g is nonzero")),
    })
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*t", format_rational(c)),
                _ => format!("{}*t^{i}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
