use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::incidence::CurveParam;
use crate::poly::MultiPoly;

/// Number of ambient coordinates `z0 .. z4`.
pub const NVARS: usize = 5;
/// Index of the coordinate cutting out the hyperplane that contains `Q`.
pub const HYPERPLANE: usize = 4;

/// `l q + z4 p`, after checking degrees 1, 4, 4 and that `q` avoids `z4`.
pub fn build_special_hypersurface(l: &MultiPoly, q: &MultiPoly, p: &MultiPoly) -> Result<MultiPoly> {
    for (name, poly, deg) in [("l", l, 1), ("q", q, 4), ("p", p, 4)] {
        if poly.num_vars() != NVARS {
            return Err(Error::Dimension(format!(
                "{name} has {} variables, expected {NVARS}",
                poly.num_vars()
            )));
        }
        if !poly.is_homogeneous_of(deg) {
            return Err(Error::Invariant(format!("{name} homogeneous of degree {deg}")));
        }
    }
    if q.involves(HYPERPLANE) {
        return Err(Error::Invariant("q free of z4".into()));
    }
    let z4 = MultiPoly::var(NVARS, HYPERPLANE);
    l.checked_mul(q)?.checked_add(&z4.checked_mul(p)?)
}

/// A curve `c0` on the quartic surface `Q = {z4 = 0 = q}` together with the
/// data `l`, `p` of the special quintic `f0 = l q + z4 p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClemensFixture {
    pub name: Option<String>,
    pub q: MultiPoly,
    pub l: MultiPoly,
    pub p: MultiPoly,
    pub c0: CurveParam,
    pub f0: MultiPoly,
}

impl ClemensFixture {
    pub fn new(name: Option<String>, q: MultiPoly, l: MultiPoly, p: MultiPoly, c0: CurveParam) -> Result<Self> {
        let f0 = build_special_hypersurface(&l, &q, &p)?;
        if c0.ambient_dim() + 1 != NVARS {
            return Err(Error::Dimension(format!(
                "c0 lives in P^{}, expected P^4",
                c0.ambient_dim()
            )));
        }
        if !c0.component(HYPERPLANE).is_zero() {
            return Err(Error::Invariant("c0 z4-component ≡ 0".into()));
        }
        if !q.compose_with(c0.components())?.is_zero() {
            return Err(Error::Invariant("q(c0(t)) ≡ 0".into()));
        }
        Ok(ClemensFixture { name, q, l, p, c0, f0 })
    }

    pub fn d(&self) -> usize {
        self.c0.degree_bound()
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }
}

#[derive(Serialize, Deserialize)]
struct FixtureRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    d: usize,
    q: MultiPoly,
    l: MultiPoly,
    p: MultiPoly,
    c0: CurveParam,
    /// Derived `l q + z4 p`; checked against the parts when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f0: Option<MultiPoly>,
}

impl Serialize for ClemensFixture {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FixtureRepr {
            name: self.name.clone(),
            d: self.d(),
            q: self.q.clone(),
            l: self.l.clone(),
            p: self.p.clone(),
            c0: self.c0.clone(),
            f0: Some(self.f0.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClemensFixture {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FixtureRepr::deserialize(d)?;
        if r.d != r.c0.degree_bound() {
            return Err(D::Error::custom(format!(
                "dimension mismatch: fixture d = {} but c0 has degree bound {}",
                r.d,
                r.c0.degree_bound()
            )));
        }
        let fx = ClemensFixture::new(r.name, r.q, r.l, r.p, r.c0).map_err(D::Error::custom)?;
        if r.f0.is_some_and(|f0| f0 != fx.f0) {
            return Err(D::Error::custom("invariant violated: f0 = l q + z4 p"));
        }
        Ok(fx)
    }
}

fn poly(terms: &[(i64, [u32; 5])]) -> MultiPoly {
    MultiPoly::from_terms(NVARS, terms.iter().map(|(c, e)| (e.to_vec(), crate::algebra::int(*c))))
        .expect("five exponents per term")
}

fn fermat_quartic() -> MultiPoly {
    poly(&[
        (1, [4, 0, 0, 0, 0]),
        (1, [0, 4, 0, 0, 0]),
        (1, [0, 0, 4, 0, 0]),
        (1, [0, 0, 0, 4, 0]),
        (1, [0, 0, 0, 0, 4]),
    ])
}

/// `z0^3 z2 + z1^3 z3 + z2^4 + z3^4`, smooth, containing the line `z2 = z3 = 0`.
fn quartic_a() -> MultiPoly {
    poly(&[
        (1, [3, 0, 1, 0, 0]),
        (1, [0, 3, 0, 1, 0]),
        (1, [0, 0, 4, 0, 0]),
        (1, [0, 0, 0, 4, 0]),
    ])
}

fn line_a() -> CurveParam {
    CurveParam::from_ints(4, 1, &[&[1], &[0, 1], &[], &[], &[]]).expect("valid line")
}

fn linear_a() -> MultiPoly {
    poly(&[
        (1, [1, 0, 0, 0, 0]),
        (2, [0, 1, 0, 0, 0]),
        (3, [0, 0, 1, 0, 0]),
        (5, [0, 0, 0, 1, 0]),
        (7, [0, 0, 0, 0, 1]),
    ])
}

/// Line on the quartic `z0^3 z2 + z1^3 z3 + z2^4 + z3^4`.
///
/// `p` is the Fermat quartic plus `z1^2 (z0 + 2 z1)(z0 - z1)`, so that
/// `p(c0(t)) = 1 + t^2 + t^3 - t^4` agrees with the Fermat value `1 + t^4` at
/// `t = -1/2` and `t = 1` but is not in the span of `{1, t, t^3, t^4}`.
pub fn fixture_a() -> ClemensFixture {
    let correction = poly(&[(1, [2, 2, 0, 0, 0]), (1, [1, 3, 0, 0, 0]), (-2, [0, 4, 0, 0, 0])]);
    let p = fermat_quartic().checked_add(&correction).expect("same variables");
    ClemensFixture::new(Some("A".into()), quartic_a(), linear_a(), p, line_a()).expect("fixture A is valid")
}

/// Fixture A with the plain Fermat quartic as `p`. Here `p(c0(t)) = 1 + t^4`
/// lies in the image of the gradient pairing, and the Jacobian drops to rank 5.
pub fn fixture_a_fermat() -> ClemensFixture {
    ClemensFixture::new(
        Some("A-fermat".into()),
        quartic_a(),
        linear_a(),
        fermat_quartic(),
        line_a(),
    )
    .expect("fixture A-fermat is valid")
}

/// `(z0 z2 - z1^2)(z0^2 + z2^2) + z3 (z0^3 + z1^3 + z3^3)`, a smooth quartic
/// containing the conic `(1, t, t^2, 0, 0)`.
fn quartic_b() -> MultiPoly {
    poly(&[
        (1, [3, 0, 1, 0, 0]),
        (1, [1, 0, 3, 0, 0]),
        (-1, [2, 2, 0, 0, 0]),
        (-1, [0, 2, 2, 0, 0]),
        (1, [3, 0, 0, 1, 0]),
        (1, [0, 3, 0, 1, 0]),
        (1, [0, 0, 0, 4, 0]),
    ])
}

fn conic_b() -> CurveParam {
    CurveParam::from_ints(4, 2, &[&[1], &[0, 1], &[0, 0, 1], &[], &[]]).expect("valid conic")
}

/// Conic on a smooth quartic; `l(c0(t)) = 1 - t^2`.
pub fn fixture_b() -> ClemensFixture {
    let l = poly(&[
        (1, [1, 0, 0, 0, 0]),
        (-1, [0, 0, 1, 0, 0]),
        (3, [0, 0, 0, 1, 0]),
        (5, [0, 0, 0, 0, 1]),
    ]);
    ClemensFixture::new(Some("B".into()), quartic_b(), l, fermat_quartic(), conic_b()).expect("fixture B is valid")
}

/// Fixture B with `l(c0(t)) = 1 + t^2`, whose roots `±i` force the complex path.
pub fn fixture_b_complex() -> ClemensFixture {
    let l = poly(&[
        (1, [1, 0, 0, 0, 0]),
        (1, [0, 0, 1, 0, 0]),
        (3, [0, 0, 0, 1, 0]),
        (5, [0, 0, 0, 0, 1]),
    ]);
    ClemensFixture::new(Some("B-complex".into()), quartic_b(), l, fermat_quartic(), conic_b())
        .expect("fixture B-complex is valid")
}

pub const FIXTURE_NAMES: [&str; 4] = ["A", "B", "A-fermat", "B-complex"];

pub fn fixture_by_name(name: &str) -> Option<ClemensFixture> {
    match name {
        "A" => Some(fixture_a()),
        "B" => Some(fixture_b()),
        "A-fermat" => Some(fixture_a_fermat()),
        "B-complex" => Some(fixture_b_complex()),
        _ => None,
    }
}
