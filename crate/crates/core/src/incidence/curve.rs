use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{int, Rational, Scalar};
use crate::error::{Error, Result};
use crate::poly::{gcd_all, UniPoly};

/// A point of the parameter space: `n + 1` polynomials of degree `<= d` in `t`.
///
/// The affine coordinates of that space ("theta") are the coefficients,
/// ordered component-major, power-minor: index `m * (d + 1) + i` is the
/// coefficient of `t^i` in component `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParam {
    n: usize,
    d: usize,
    components: Vec<UniPoly>,
}

impl CurveParam {
    pub fn new(n: usize, d: usize, components: Vec<UniPoly>) -> Result<Self> {
        if components.len() != n + 1 {
            return Err(Error::Dimension(format!(
                "curve in P^{n} needs {} components, got {}",
                n + 1,
                components.len()
            )));
        }
        if let Some(m) = components.iter().position(|c| c.degree().is_some_and(|k| k > d)) {
            return Err(Error::Dimension(format!(
                "component {m} has degree {} > {d}",
                components[m].degree().unwrap()
            )));
        }
        Ok(CurveParam { n, d, components })
    }

    /// Curve from integer coefficient lists, one per component.
    pub fn from_ints(n: usize, d: usize, components: &[&[i64]]) -> Result<Self> {
        Self::new(n, d, components.iter().map(|c| UniPoly::from_ints(c)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn components(&self) -> &[UniPoly] {
        &self.components
    }

    pub fn component(&self, m: usize) -> &UniPoly {
        &self.components[m]
    }

    /// Dimension `(n + 1)(d + 1)` of the parameter space.
    pub fn theta_dim(&self) -> usize {
        (self.n + 1) * (self.d + 1)
    }

    pub fn theta_index(&self, m: usize, i: usize) -> usize {
        m * (self.d + 1) + i
    }

    pub fn theta_labels(&self) -> Vec<String> {
        (0..=self.n)
            .flat_map(|m| (0..=self.d).map(move |i| format!("c{m}[{i}]")))
            .collect()
    }

    pub fn to_theta(&self) -> Vec<Rational> {
        self.components.iter().flat_map(|c| c.padded(self.d + 1)).collect()
    }

    pub fn from_theta(n: usize, d: usize, theta: &[Rational]) -> Result<Self> {
        let dim = (n + 1) * (d + 1);
        if theta.len() != dim {
            return Err(Error::Dimension(format!(
                "theta vector of length {} for a space of dimension {dim}",
                theta.len()
            )));
        }
        let components = theta
            .chunks(d + 1)
            .map(|ch| UniPoly::from_coeffs(ch.to_vec()))
            .collect();
        Self::new(n, d, components)
    }

    /// Componentwise image of the curve at `t`.
    pub fn point_at<T: Scalar>(&self, t: &T) -> Vec<T> {
        self.components.iter().map(|c| c.eval(t)).collect()
    }

    pub fn derivative(&self) -> Vec<UniPoly> {
        self.components.iter().map(UniPoly::derivative).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(UniPoly::is_zero)
    }

    /// `self + h * direction`, for a direction given in theta coordinates.
    pub fn perturbed(&self, direction: &[Rational], h: &Rational) -> Result<Self> {
        let theta = self.to_theta();
        if direction.len() != theta.len() {
            return Err(Error::Dimension("direction length".into()));
        }
        let moved: Vec<Rational> = theta.iter().zip(direction).map(|(a, b)| a + b * h).collect();
        Self::from_theta(self.n, self.d, &moved)
    }

    pub fn scaled(&self, lambda: &Rational) -> Self {
        CurveParam {
            n: self.n,
            d: self.d,
            components: self.components.iter().map(|c| c.scale(lambda)).collect(),
        }
    }

    /// Affine reparametrization `t -> a t + b`.
    pub fn reparametrized(&self, a: &Rational, b: &Rational) -> Self {
        let inner = UniPoly::from_coeffs(vec![b.clone(), a.clone()]);
        CurveParam {
            n: self.n,
            d: self.d,
            components: self.components.iter().map(|c| c.compose(&inner)).collect(),
        }
    }
}

/// Necessary conditions for the curve to be an embedding of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    /// The components have no common zero in the affine chart.
    pub base_point_free: bool,
    /// Some component has degree exactly `d`.
    pub degree_attained: bool,
    /// `c'(t)` is not identically zero.
    pub nonconstant: bool,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.base_point_free && self.degree_attained && self.nonconstant
    }
}

pub fn membership_checks(c: &CurveParam) -> MembershipReport {
    let base_point_free = gcd_all(c.components()).is_some_and(|g| g.is_constant());
    let degree_attained = c.components().iter().any(|p| p.degree() == Some(c.d));
    let nonconstant = c.derivative().iter().any(|p| !p.is_zero());
    MembershipReport {
        base_point_free,
        degree_attained,
        nonconstant,
    }
}

/// θ-images of `c'`, `t c'`, `t^2 c' - d t c` and `c`: the infinitesimal
/// reparametrizations by `PGL(2)` together with scaling of the cone.
pub fn symmetry_kernel_vectors(c: &CurveParam) -> Vec<Vec<Rational>> {
    let d = int(c.d as i64);
    let dc = c.derivative();
    let t = UniPoly::t();
    let flatten = |comps: Vec<UniPoly>| -> Vec<Rational> {
        let curve = CurveParam::new(c.n, c.d, comps).expect("symmetry directions keep degree <= d");
        curve.to_theta()
    };
    let translate = dc.clone();
    let dilate: Vec<UniPoly> = dc.iter().map(|p| p.shift(1)).collect();
    let special: Vec<UniPoly> = dc
        .iter()
        .zip(c.components())
        .map(|(p, q)| &p.shift(2) - &(&t * &q.scale(&d)))
        .collect();
    vec![flatten(translate), flatten(dilate), flatten(special), c.to_theta()]
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    n: usize,
    d: usize,
    components: Vec<UniPoly>,
}

impl Serialize for CurveParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveRepr {
            n: self.n,
            d: self.d,
            components: self.components.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CurveRepr::deserialize(d)?;
        CurveParam::new(r.n, r.d, r.components).map_err(D::Error::custom)
    }
}
