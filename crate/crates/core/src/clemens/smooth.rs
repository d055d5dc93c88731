//! Finite-field search for singular points of a quartic surface in `P^3`.
//!
//! A point over `F_p` where `q` and all its partials vanish is a singular
//! point of the reduction mod `p`. Finding none for several primes is
//! evidence (not proof) of smoothness in characteristic zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

use super::fixture::HYPERPLANE;

fn reduce(c: &crate::algebra::Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = c.numer().mod_floor(&pb).to_u64()?;
    let den = c.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    Some(num * pow_mod(den, p - 2, p) % p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    fn new(f: &MultiPoly, p: u64) -> Result<Self> {
        let mut terms = Vec::new();
        for (exp, c) in f.terms() {
            let r = reduce(c, p).ok_or_else(|| Error::Invariant(format!("denominator divisible by {p}")))?;
            if r != 0 {
                terms.push((exp[..HYPERPLANE].to_vec(), r));
            }
        }
        Ok(ModPoly { terms })
    }

    fn eval(&self, z: &[u64], p: u64) -> u64 {
        self.terms.iter().fold(0, |acc, (e, c)| {
            let mono = e.iter().zip(z).fold(*c, |m, (&k, &x)| m * pow_mod(x, k as u64, p) % p);
            (acc + mono) % p
        })
    }
}

/// Singular points of `{q = 0} ⊂ P^3(F_p)`, as normalized representatives
/// (first nonzero coordinate 1). `p` must be a prime below 2^16.
pub fn singular_points_mod_p(q: &MultiPoly, p: u64) -> Result<Vec<[u64; 4]>> {
    if !(2..1 << 16).contains(&p) || !(2..p).all(|k| k * k > p || !p.is_multiple_of(k)) {
        return Err(Error::Invariant(format!("{p} is not a small prime")));
    }
    if q.involves(HYPERPLANE) {
        return Err(Error::Invariant("q free of z4".into()));
    }
    let polys: Vec<ModPoly> = std::iter::once(Ok(q.clone()))
        .chain((0..HYPERPLANE).map(|m| q.partial_derivative(m)))
        .map(|f| f.and_then(|f| ModPoly::new(&f, p)))
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    for lead in 0..HYPERPLANE {
        let free = HYPERPLANE - 1 - lead;
        let count = p.pow(free as u32);
        for idx in 0..count {
            let mut z = [0u64; 4];
            z[lead] = 1;
            let mut rest = idx;
            for slot in &mut z[lead + 1..HYPERPLANE] {
                *slot = rest % p;
                rest /= p;
            }
            if polys.iter().all(|f| f.eval(&z, p).is_zero()) {
                found.push(z);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clemens::{fixture_a, fixture_b};

    #[test]
    fn fixtures_have_no_small_singular_points() {
        for p in [5, 7, 11, 13] {
            assert!(
                singular_points_mod_p(&fixture_a().q, p).unwrap().is_empty(),
                "A mod {p}"
            );
            assert!(
                singular_points_mod_p(&fixture_b().q, p).unwrap().is_empty(),
                "B mod {p}"
            );
        }
    }

    #[test]
    fn finds_a_cone_point() {
        // z0^2 z1^2 + z2^4 + z3^4 is singular along z0 = z2 = z3 = 0
        let q = MultiPoly::from_int_terms(
            5,
            &[(1, &[2, 2, 0, 0, 0]), (1, &[0, 0, 4, 0, 0]), (1, &[0, 0, 0, 4, 0])],
        )
        .unwrap();
        let pts = singular_points_mod_p(&q, 7).unwrap();
        assert!(pts.contains(&[0, 1, 0, 0]));
        assert!(pts.contains(&[1, 0, 0, 0]));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(singular_points_mod_p(&fixture_a().q, 9).is_err());
    }
}
