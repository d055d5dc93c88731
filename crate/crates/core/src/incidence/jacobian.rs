use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CurveParam;
use crate::algebra::{
    format_rational, rank_exact, serde_rational, JsonScalar, Matrix, Rational, RationalMatrix, Scalar,
};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, UniPoly};

/// Curves of degree `<= d` in `P^n` lying on the hypersurface `f = 0` of degree `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceProblem {
    pub n: usize,
    pub d: usize,
    pub e: usize,
    pub f: MultiPoly,
}

impl IncidenceProblem {
    pub fn new(n: usize, d: usize, e: usize, f: MultiPoly) -> Result<Self> {
        if f.num_vars() != n + 1 {
            return Err(Error::Dimension(format!(
                "hypersurface in {} variables for P^{n}",
                f.num_vars()
            )));
        }
        if !f.is_homogeneous_of(e) {
            return Err(Error::NotHomogeneous(e));
        }
        Ok(IncidenceProblem { n, d, e, f })
    }

    /// Problem for `f` with `n` and `e` read off the polynomial.
    pub fn for_form(d: usize, f: MultiPoly) -> Result<Self> {
        let n = f
            .num_vars()
            .checked_sub(1)
            .ok_or_else(|| Error::Dimension("polynomial in zero variables".into()))?;
        let e = f
            .homogeneous_degree()
            .ok_or(Error::Invariant("hypersurface must be a nonzero form".into()))?;
        Self::new(n, d, e, f)
    }

    /// `(n + 1)(d + 1)`.
    pub fn parameter_dim(&self) -> usize {
        (self.n + 1) * (self.d + 1)
    }

    /// `e d + 1`.
    pub fn num_equations(&self) -> usize {
        self.e * self.d + 1
    }

    fn check_curve(&self, c: &CurveParam) -> Result<()> {
        if c.ambient_dim() != self.n || c.degree_bound() != self.d {
            return Err(Error::Dimension(format!(
                "curve (n = {}, d = {}) against problem (n = {}, d = {})",
                c.ambient_dim(),
                c.degree_bound(),
                self.n,
                self.d
            )));
        }
        Ok(())
    }

    /// `(∂f/∂z_m)(c(t))` for every `m`.
    fn gradient_along(&self, c: &CurveParam) -> Result<Vec<UniPoly>> {
        self.f
            .gradient()
            .iter()
            .map(|g| g.compose_with(c.components()))
            .collect()
    }
}

impl<'de> Deserialize<'de> for IncidenceProblem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            d: usize,
            e: usize,
            f: MultiPoly,
        }
        let r = Repr::deserialize(d)?;
        IncidenceProblem::new(r.n, r.d, r.e, r.f).map_err(D::Error::custom)
    }
}

/// Coefficients `k_0 ..= k_{ed}` of `f(c(t))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KVector {
    #[serde(with = "serde_rational::vec")]
    pub values: Vec<Rational>,
}

impl KVector {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

pub fn coefficients_k(prob: &IncidenceProblem, c: &CurveParam) -> Result<KVector> {
    prob.check_curve(c)?;
    let composed = prob.f.compose_with(c.components())?;
    debug_assert!(composed.degree().is_none_or(|k| k < prob.num_equations()));
    Ok(KVector {
        values: composed.padded(prob.num_equations()),
    })
}

/// Whether the curve lies on the hypersurface, i.e. all `k_j` vanish.
pub fn lies_on(prob: &IncidenceProblem, c: &CurveParam) -> Result<bool> {
    Ok(coefficients_k(prob, c)?.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobianForm {
    /// Rows are the coefficients `k_j`.
    Coefficient,
    /// Rows are the point evaluations `f(c(t_s))`.
    Evaluation,
}

/// Jacobian of the defining equations with respect to the θ coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianMatrix<T = Rational> {
    pub form: JacobianForm,
    pub matrix: Matrix<T>,
    pub basepoint: CurveParam,
    /// Evaluation points, present exactly for the evaluation form.
    pub points: Option<Vec<T>>,
}

impl<T: Scalar> JacobianMatrix<T> {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

impl JacobianMatrix<Rational> {
    pub fn rank(&self) -> usize {
        rank_exact(&self.matrix)
    }
}

/// `entry(j, (m, i))` = coefficient of `t^j` in `(∂f/∂z_m)(c(t)) * t^i`.
pub fn jacobian_coefficient_form(prob: &IncidenceProblem, c: &CurveParam) -> Result<JacobianMatrix> {
    prob.check_curve(c)?;
    let grads = prob.gradient_along(c)?;
    let rows = prob.num_equations();
    let d = prob.d;
    let matrix = RationalMatrix::from_fn(rows, c.theta_dim(), |j, col| {
        let (m, i) = (col / (d + 1), col % (d + 1));
        if j < i {
            Rational::zero()
        } else {
            grads[m].coeff(j - i)
        }
    })
    .with_labels((0..rows).map(|j| format!("k{j}")).collect(), c.theta_labels())?;
    Ok(JacobianMatrix {
        form: JacobianForm::Coefficient,
        matrix,
        basepoint: c.clone(),
        points: None,
    })
}

/// `entry(s, (m, i))` = `(∂f/∂z_m)(c(t_s)) * t_s^i`.
pub fn jacobian_evaluation_form<T: Scalar>(
    prob: &IncidenceProblem,
    c: &CurveParam,
    points: &[T],
) -> Result<JacobianMatrix<T>> {
    prob.check_curve(c)?;
    if points.len() != prob.num_equations() {
        return Err(Error::PointCount {
            expected: prob.num_equations(),
            got: points.len(),
        });
    }
    for (i, a) in points.iter().enumerate() {
        if points[..i].contains(a) {
            return Err(Error::RepeatedPoint(a.to_string()));
        }
    }
    let grads = prob.gradient_along(c)?;
    let d = prob.d;
    let values: Vec<Vec<T>> = points
        .iter()
        .map(|t| grads.iter().map(|g| g.eval(t)).collect())
        .collect();
    let matrix = Matrix::from_fn(points.len(), c.theta_dim(), |s, col| {
        let (m, i) = (col / (d + 1), col % (d + 1));
        values[s][m].clone() * points[s].pow(i)
    })
    .with_labels(
        (1..=points.len()).map(|s| format!("f(c(t{s}))")).collect(),
        c.theta_labels(),
    )?;
    Ok(JacobianMatrix {
        form: JacobianForm::Evaluation,
        matrix,
        basepoint: c.clone(),
        points: Some(points.to_vec()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentDim {
    pub dimension: usize,
    pub rank: usize,
    /// True when the basepoint is not on the hypersurface; the value is then
    /// only the formal corank of the Jacobian.
    pub formal: bool,
}

/// `(n + 1)(d + 1) - rank(J)` at the basepoint.
pub fn tangent_dim(prob: &IncidenceProblem, c: &CurveParam) -> Result<TangentDim> {
    let on = lies_on(prob, c)?;
    let rank = jacobian_coefficient_form(prob, c)?.rank();
    Ok(TangentDim {
        dimension: prob.parameter_dim() - rank,
        rank,
        formal: !on,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct JacobianRepr<T: JsonScalar> {
    form: JacobianForm,
    matrix: serde_json::Value,
    basepoint: CurveParam,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<T::Repr>>,
}

impl<T: Scalar + JsonScalar> Serialize for JacobianMatrix<T>
where
    Matrix<T>: Serialize,
{
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        JacobianRepr::<T> {
            form: self.form,
            matrix: serde_json::to_value(&self.matrix).map_err(S::Error::custom)?,
            basepoint: self.basepoint.clone(),
            points: self.points.as_ref().map(|p| p.iter().map(T::to_repr).collect()),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar + JsonScalar> Deserialize<'de> for JacobianMatrix<T>
where
    Matrix<T>: serde::de::DeserializeOwned,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = JacobianRepr::<T>::deserialize(d)?;
        let matrix: Matrix<T> = serde_json::from_value(r.matrix).map_err(D::Error::custom)?;
        let points = r
            .points
            .map(|p| p.into_iter().map(T::from_repr).collect::<Result<Vec<T>>>())
            .transpose()
            .map_err(D::Error::custom)?;
        if matrix.cols() != r.basepoint.theta_dim() {
            return Err(D::Error::custom(
                "matrix columns do not match the basepoint's parameter space",
            ));
        }
        Ok(JacobianMatrix {
            form: r.form,
            matrix,
            basepoint: r.basepoint,
            points,
        })
    }
}

/// Row-major strings of a rational matrix; used by text reports.
pub fn format_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, kernel_exact, ratio, vandermonde};

    fn line() -> CurveParam {
        CurveParam::from_ints(4, 1, &[&[1], &[0, 1], &[], &[], &[]]).unwrap()
    }

    fn z4_problem() -> IncidenceProblem {
        IncidenceProblem::new(4, 1, 1, MultiPoly::var(5, 4)).unwrap()
    }

    fn fermat5() -> MultiPoly {
        MultiPoly::from_terms(
            5,
            (0..5).map(|i| {
                let mut e = vec![0; 5];
                e[i] = 5;
                (e, int(1))
            }),
        )
        .unwrap()
    }

    #[test]
    fn k_vectors() {
        assert_eq!(
            coefficients_k(&z4_problem(), &line()).unwrap().values,
            vec![int(0), int(0)]
        );
        let fermat = IncidenceProblem::new(4, 1, 5, fermat5()).unwrap();
        let k = coefficients_k(&fermat, &line()).unwrap();
        assert_eq!(k.values, [1, 0, 0, 0, 0, 1].map(int).to_vec());
        assert!(!lies_on(&fermat, &line()).unwrap());
        assert!(lies_on(&z4_problem(), &line()).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let conic = CurveParam::from_ints(4, 2, &[&[1], &[0, 1], &[0, 0, 1], &[], &[]]).unwrap();
        assert!(matches!(
            coefficients_k(&z4_problem(), &conic),
            Err(Error::Dimension(_))
        ));
        assert!(IncidenceProblem::new(3, 1, 1, MultiPoly::var(5, 4)).is_err());
        assert!(IncidenceProblem::new(4, 1, 2, MultiPoly::var(5, 4)).is_err());
    }

    #[test]
    fn toy_coefficient_form() {
        let j = jacobian_coefficient_form(&z4_problem(), &line()).unwrap();
        assert_eq!(j.matrix.shape(), (2, 10));
        for r in 0..2 {
            for col in 0..10 {
                let expect = if col == 8 + r { int(1) } else { int(0) };
                assert_eq!(j.matrix[(r, col)], expect);
            }
        }
        let td = tangent_dim(&z4_problem(), &line()).unwrap();
        assert_eq!(
            td,
            TangentDim {
                dimension: 8,
                rank: 2,
                formal: false
            }
        );
    }

    #[test]
    fn toy_evaluation_form() {
        let j = jacobian_evaluation_form(&z4_problem(), &line(), &[int(0), int(1)]).unwrap();
        assert_eq!(j.matrix.column(8), vec![int(1), int(1)]);
        assert_eq!(j.matrix.column(9), vec![int(0), int(1)]);
        for col in 0..8 {
            assert!(j.matrix.column(col).iter().all(Zero::is_zero));
        }
        assert!(matches!(
            jacobian_evaluation_form(&z4_problem(), &line(), &[int(1), int(1)]),
            Err(Error::RepeatedPoint(_))
        ));
        assert!(matches!(
            jacobian_evaluation_form(&z4_problem(), &line(), &[int(1)]),
            Err(Error::PointCount { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn vandermonde_factorization_on_fermat() {
        let prob = IncidenceProblem::new(4, 1, 5, fermat5()).unwrap();
        let pts = [ratio(-1, 2), int(1), int(2), int(3), int(5), int(7)];
        let je = jacobian_evaluation_form(&prob, &line(), &pts).unwrap();
        let jc = jacobian_coefficient_form(&prob, &line()).unwrap();
        let v = vandermonde(&pts, 6).unwrap();
        assert!(v.mul(&jc.matrix).unwrap().same_entries(&je.matrix));
    }

    #[test]
    fn off_scheme_is_formal() {
        let prob = IncidenceProblem::new(4, 1, 5, fermat5()).unwrap();
        let td = tangent_dim(&prob, &line()).unwrap();
        assert!(td.formal);
        assert_eq!(td.dimension + td.rank, 10);
        let k = kernel_exact(&jacobian_coefficient_form(&prob, &line()).unwrap().matrix);
        assert_eq!(k.dimension(), td.dimension);
    }

    #[test]
    fn json_round_trip() {
        let j = jacobian_evaluation_form(&z4_problem(), &line(), &[int(0), ratio(1, 3)]).unwrap();
        let s = serde_json::to_string(&j).unwrap();
        let back: JacobianMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, j);
        let p: IncidenceProblem = serde_json::from_str(&serde_json::to_string(&z4_problem()).unwrap()).unwrap();
        assert_eq!(p, z4_problem());
    }
}
