use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{int, Complex64, JsonScalar, Rational, Scalar};
use crate::error::{Error, Result};
use crate::incidence::CurveParam;
use crate::poly::{gcd_univariate, roots_numeric, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Rational,
    Complex,
}

/// The `5d + 1` evaluation points: the `d` roots of `l(c0(t))` first, then
/// `4d + 1` generic points.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialPoints<T> {
    pub root_points: Vec<T>,
    pub generic_points: Vec<T>,
}

impl<T: Clone> SpecialPoints<T> {
    pub fn all(&self) -> Vec<T> {
        self.root_points.iter().chain(&self.generic_points).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.root_points.len() + self.generic_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `t_1 ..= t_{d+1}`.
    pub fn leading(&self, d: usize) -> Vec<T> {
        self.all()[..d + 1].to_vec()
    }

    /// `t_{d+2} ..= t_{5d+1}`.
    pub fn trailing(&self, d: usize) -> Vec<T> {
        self.all()[d + 1..].to_vec()
    }
}

impl<T: JsonScalar + Clone> SpecialPoints<T> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "root_points": self.root_points.iter().map(T::to_repr).collect::<Vec<_>>(),
            "generic_points": self.generic_points.iter().map(T::to_repr).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpecialPointSet {
    Exact(SpecialPoints<Rational>),
    Numeric(SpecialPoints<Complex64>),
}

impl SpecialPointSet {
    pub fn field_tag(&self) -> FieldTag {
        match self {
            SpecialPointSet::Exact(_) => FieldTag::Rational,
            SpecialPointSet::Numeric(_) => FieldTag::Complex,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = match self {
            SpecialPointSet::Exact(p) => p.to_json(),
            SpecialPointSet::Numeric(p) => p.to_json(),
        };
        v["field"] = serde_json::to_value(self.field_tag()).expect("enum serializes");
        v
    }
}

/// `count` distinct rationals avoiding `avoid`.
///
/// Seed 0 gives `1, 2, 3, ...`; other seeds draw `a/b` with `|a| <= 12`,
/// `1 <= b <= 6` from ChaCha8.
pub fn generic_points(count: usize, seed: u64, avoid: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    let fresh = |r: &Rational, out: &[Rational]| !avoid.contains(r) && !out.contains(r);
    if seed == 0 {
        let mut k = 1;
        while out.len() < count {
            let r = int(k);
            if fresh(&r, &out) {
                out.push(r);
            }
            k += 1;
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let num: i64 = rng.random_range(-12..=12);
        let den: i64 = rng.random_range(1..=6);
        let r = Rational::new(BigInt::from(num), BigInt::from(den));
        if fresh(&r, &out) {
            out.push(r);
        }
    }
    out
}

/// Places the `d` roots of `l(c0(t))` first and fills up with `4d + 1`
/// generic points. Roots are kept exact when every one of them is rational.
pub fn select_special_points(
    c0: &CurveParam,
    l: &MultiPoly,
    p: &MultiPoly,
    seed: u64,
    precision: u32,
) -> Result<SpecialPointSet> {
    let d = c0.degree_bound();
    let lc = l.compose_with(c0.components())?;
    let pc = p.compose_with(c0.components())?;
    if lc.is_zero() {
        return Err(Error::LNotGeneric);
    }
    if lc.degree() != Some(d) {
        return Err(Error::RootAtInfinity);
    }
    if !gcd_univariate(&lc, &lc.derivative())?.is_constant() {
        return Err(Error::LNotGeneric);
    }
    if !gcd_univariate(&lc, &pc)?.is_constant() {
        return Err(Error::PNotGeneric);
    }
    let roots = if d == 0 {
        Vec::new()
    } else {
        roots_numeric(&lc, precision)?
    };
    let exact_roots: Vec<Rational> = roots.iter().filter_map(|r| r.exact.clone()).collect();
    let generic = generic_points(4 * d + 1, seed, &exact_roots);
    if exact_roots.len() == roots.len() {
        debug_assert!(exact_roots.iter().all(|r| lc.eval(r).is_zero()));
        return Ok(SpecialPointSet::Exact(SpecialPoints {
            root_points: exact_roots,
            generic_points: generic,
        }));
    }
    Ok(SpecialPointSet::Numeric(SpecialPoints {
        root_points: roots
            .iter()
            .map(|r| match &r.exact {
                Some(x) => Complex64::from_rational(x),
                None => r.value(),
            })
            .collect(),
        generic_points: generic.iter().map(Complex64::from_rational).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::clemens::{fixture_a, fixture_b, fixture_b_complex};

    #[test]
    fn fixture_a_points() {
        let fx = fixture_a();
        let SpecialPointSet::Exact(pts) = select_special_points(&fx.c0, &fx.l, &fx.p, 0, 12).unwrap() else {
            panic!("fixture A splits over Q");
        };
        assert_eq!(pts.root_points, vec![ratio(-1, 2)]);
        assert_eq!(pts.generic_points, [1, 2, 3, 4, 5].map(int).to_vec());
        assert_eq!(pts.leading(1), vec![ratio(-1, 2), int(1)]);
        let pv = fx.p.eval(&fx.c0.point_at(&ratio(-1, 2))).unwrap();
        assert_eq!(pv, ratio(17, 16));
    }

    #[test]
    fn fixture_b_points() {
        let fx = fixture_b();
        let SpecialPointSet::Exact(pts) = select_special_points(&fx.c0, &fx.l, &fx.p, 0, 12).unwrap() else {
            panic!("fixture B splits over Q");
        };
        assert_eq!(pts.root_points, vec![int(-1), int(1)]);
        // 1 is a root, so the canonical generic sequence skips it
        assert_eq!(pts.generic_points, [2, 3, 4, 5, 6, 7, 8, 9, 10].map(int).to_vec());
    }

    #[test]
    fn complex_roots() {
        let fx = fixture_b_complex();
        let set = select_special_points(&fx.c0, &fx.l, &fx.p, 0, 12).unwrap();
        assert_eq!(set.field_tag(), FieldTag::Complex);
        let SpecialPointSet::Numeric(pts) = set else {
            unreachable!()
        };
        assert_eq!(pts.len(), 11);
        assert!((pts.root_points[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((pts.root_points[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn seeded_points_are_distinct_and_reproducible() {
        let avoid = [ratio(-1, 2)];
        let a = generic_points(9, 42, &avoid);
        assert_eq!(a, generic_points(9, 42, &avoid));
        assert_ne!(a, generic_points(9, 43, &avoid));
        for (i, x) in a.iter().enumerate() {
            assert!(!avoid.contains(x));
            assert!(!a[..i].contains(x));
        }
    }

    #[test]
    fn genericity_errors() {
        let fa = fixture_a();
        // z0 + 4 z1 + 4 z2 restricts to (1 + 2t)^2 on the conic
        let fb = fixture_b();
        let sq = MultiPoly::from_int_terms(
            5,
            &[(1, &[1, 0, 0, 0, 0]), (4, &[0, 1, 0, 0, 0]), (4, &[0, 0, 1, 0, 0])],
        )
        .unwrap();
        assert_eq!(
            select_special_points(&fb.c0, &sq, &fb.p, 0, 12),
            Err(Error::LNotGeneric)
        );
        // l(c0(t)) = 1 has no affine root: degree drop
        let drop = MultiPoly::from_int_terms(5, &[(1, &[1, 0, 0, 0, 0])]).unwrap();
        assert_eq!(
            select_special_points(&fa.c0, &drop, &fa.p, 0, 12),
            Err(Error::RootAtInfinity)
        );
        // p = (z0 + 2 z1) z0^3 vanishes at t = -1/2
        let bad_p = MultiPoly::from_int_terms(5, &[(1, &[4, 0, 0, 0, 0]), (2, &[3, 1, 0, 0, 0])]).unwrap();
        assert_eq!(
            select_special_points(&fa.c0, &fa.l, &bad_p, 0, 12),
            Err(Error::PNotGeneric)
        );
    }
}
