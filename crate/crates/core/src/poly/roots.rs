//! Numeric roots via companion-matrix eigenvalues, Newton-polished, with
//! promotion of roots that are exactly reproduced by a small-height rational.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::UniPoly;
use crate::algebra::{rational_to_f64, Complex64, Rational};
use crate::error::{Error, Result};

/// Largest precision a double can honor.
pub const MAX_PRECISION: u32 = 15;

/// Denominators tried when promoting a real root to an exact rational.
const MAX_PROMOTION_DENOMINATOR: i64 = 256;

const NEWTON_STEPS: usize = 60;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    /// Set when the root is a rational that makes the polynomial vanish exactly.
    #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
    pub exact: Option<Rational>,
}

impl Root {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

mod opt_rational {
    use crate::algebra::{format_rational, parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_rational(&s).map_err(D::Error::custom))
            .transpose()
    }
}

/// All complex roots with multiplicity, ordered by real part then imaginary part.
pub fn roots_numeric(p: &UniPoly, precision: u32) -> Result<Vec<Root>> {
    if precision > MAX_PRECISION {
        return Err(Error::Precision(precision));
    }
    let n = match p.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let lead = rational_to_f64(p.leading_coeff().unwrap());
    let monic: Vec<f64> = p.coeffs().iter().map(|c| rational_to_f64(c) / lead).collect();

    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -monic[i];
    }
    let eig = companion.complex_eigenvalues();

    let dp = p.derivative();
    let tol = 10f64.powi(-(precision as i32));
    let mut roots: Vec<Root> = eig
        .iter()
        .map(|&z0| {
            let z = polish(p, &dp, z0);
            let scale = z.norm().max(1.0);
            let z = if z.im.abs() <= tol * scale {
                Complex64::new(z.re, 0.0)
            } else {
                z
            };
            let exact = if z.im == 0.0 {
                promote(p, z.re, tol * scale)
            } else {
                None
            };
            match exact {
                Some(r) => Root {
                    re: rational_to_f64(&r),
                    im: 0.0,
                    exact: Some(r),
                },
                None => Root {
                    re: z.re,
                    im: z.im,
                    exact: None,
                },
            }
        })
        .collect();

    let key = |x: f64| (x / tol).round();
    roots.sort_by(|a, b| {
        key(a.re)
            .partial_cmp(&key(b.re))
            .unwrap_or(Ordering::Equal)
            .then(key(a.im).partial_cmp(&key(b.im)).unwrap_or(Ordering::Equal))
    });
    Ok(roots)
}

fn eval_c(p: &UniPoly, z: Complex64) -> Complex64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, c| acc * z + rational_to_f64(c))
}

fn polish(p: &UniPoly, dp: &UniPoly, mut z: Complex64) -> Complex64 {
    let mut best = eval_c(p, z).norm();
    for _ in 0..NEWTON_STEPS {
        let d = eval_c(dp, z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - eval_c(p, z) / d;
        let r = eval_c(p, next).norm();
        if r.is_nan() || r >= best {
            break;
        }
        best = r;
        z = next;
    }
    z
}

/// Smallest-denominator exact root within `window` of `x`.
fn promote(p: &UniPoly, x: f64, window: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    for den in 1..=MAX_PROMOTION_DENOMINATOR {
        let num = (x * den as f64).round();
        if num.abs() > 1e15 {
            return None;
        }
        if (num / den as f64 - x).abs() > window {
            continue;
        }
        let r = Rational::new(BigInt::from(num as i64), BigInt::from(den));
        if p.eval(&r).is_zero() {
            return Some(r);
        }
    }
    None
}
