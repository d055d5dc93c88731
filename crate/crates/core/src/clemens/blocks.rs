//! Block structure of the evaluation-form Jacobian of `f0` at `c0`.
//!
//! Rows split into the first `d + 1` points and the last `4d`; columns split
//! into the `z4`-component coordinates and the `4d + 4` others:
//!
//! ```text
//!            z4 cols   other cols
//!   t1..   [  A11        A12  ]
//!   ..t5d+1[  A21        A22  ]
//! ```

use num_traits::Zero;

use crate::algebra::{Matrix, Rational, RationalMatrix, Scalar};
use crate::error::{Error, Result};
use crate::incidence::CurveParam;
use crate::poly::{gcd_all, MultiPoly, UniPoly};

use super::fixture::HYPERPLANE;

#[derive(Clone, Debug, PartialEq)]
pub struct BlockSet<T> {
    pub d: usize,
    pub a11: Matrix<T>,
    pub a12: Matrix<T>,
    pub a21: Matrix<T>,
    pub a22: Matrix<T>,
    /// `A22` with row `s` divided by `l(c0(t_s))`; absent when some value is zero.
    pub a0: Option<Matrix<T>>,
    /// Rows of `A22` (0-based within the block) whose `l` value is zero.
    pub flagged_rows: Vec<usize>,
}

fn hyperplane_cols(d: usize) -> Vec<usize> {
    (HYPERPLANE * (d + 1)..(HYPERPLANE + 1) * (d + 1)).collect()
}

fn other_cols(d: usize) -> Vec<usize> {
    (0..HYPERPLANE * (d + 1)).collect()
}

/// Splits `j_eval` (rows in point order `t_1 .. t_{5d+1}`, canonical columns).
/// `l_values[s]` is `l(c0(t_s))` for every point.
pub fn block_decompose<T: Scalar>(j_eval: &Matrix<T>, d: usize, l_values: &[T]) -> Result<BlockSet<T>> {
    let rows = 5 * d + 1;
    let cols = 5 * (d + 1);
    if j_eval.shape() != (rows, cols) {
        return Err(Error::Dimension(format!(
            "evaluation Jacobian is {}x{}, expected {rows}x{cols}",
            j_eval.rows(),
            j_eval.cols()
        )));
    }
    if l_values.len() != rows {
        return Err(Error::PointCount {
            expected: rows,
            got: l_values.len(),
        });
    }
    let top: Vec<usize> = (0..=d).collect();
    let bottom: Vec<usize> = (d + 1..rows).collect();
    let (hc, oc) = (hyperplane_cols(d), other_cols(d));
    let a22 = j_eval.select(&bottom, &oc);
    let flagged_rows: Vec<usize> = bottom
        .iter()
        .enumerate()
        .filter(|(_, &s)| l_values[s].is_zero())
        .map(|(k, _)| k)
        .collect();
    let a0 = flagged_rows.is_empty().then(|| {
        Matrix::from_fn(a22.rows(), a22.cols(), |k, j| {
            a22[(k, j)].clone() / l_values[bottom[k]].clone()
        })
    });
    Ok(BlockSet {
        d,
        a11: j_eval.select(&top, &hc),
        a12: j_eval.select(&top, &oc),
        a21: j_eval.select(&bottom, &hc),
        a22,
        a0,
        flagged_rows,
    })
}

impl<T: Scalar> BlockSet<T> {
    /// Puts the blocks back into canonical column order.
    pub fn reassemble(&self) -> Matrix<T> {
        let d = self.d;
        let (hc, oc) = (hyperplane_cols(d), other_cols(d));
        let mut m = Matrix::zeros(5 * d + 1, 5 * (d + 1));
        let place = |m: &mut Matrix<T>, block: &Matrix<T>, row0: usize, cols: &[usize]| {
            for i in 0..block.rows() {
                for (k, &c) in cols.iter().enumerate() {
                    m[(row0 + i, c)] = block[(i, k)].clone();
                }
            }
        };
        place(&mut m, &self.a11, 0, &hc);
        place(&mut m, &self.a12, 0, &oc);
        place(&mut m, &self.a21, d + 1, &hc);
        place(&mut m, &self.a22, d + 1, &oc);
        m
    }
}

/// Column order reversed; maps the descending-power closed form of `A11`
/// onto the ascending θ order.
pub fn reverse_columns<T: Clone>(m: &Matrix<T>) -> Matrix<T> {
    let cols: Vec<usize> = (0..m.cols()).rev().collect();
    let rows: Vec<usize> = (0..m.rows()).collect();
    m.select(&rows, &cols)
}

/// `entry(s, i) = t_s^(d - i) p(c0(t_s))`, descending powers.
pub fn a11_closed_form<T: Scalar>(c0: &CurveParam, p: &MultiPoly, points: &[T]) -> Result<Matrix<T>> {
    let d = c0.degree_bound();
    let pv: Vec<T> = points.iter().map(|t| p.eval(&c0.point_at(t))).collect::<Result<_>>()?;
    Ok(Matrix::from_fn(points.len(), d + 1, |s, i| {
        points[s].pow(d - i) * pv[s].clone()
    }))
}

/// `entry(s, (m, i)) = (∂q/∂z_m)(c0(t_s)) t_s^i` for `m = 0..3`.
pub fn gradient_rows<T: Scalar>(c0: &CurveParam, q: &MultiPoly, points: &[T]) -> Result<Matrix<T>> {
    let d = c0.degree_bound();
    let grad: Vec<MultiPoly> = (0..HYPERPLANE)
        .map(|m| q.partial_derivative(m))
        .collect::<Result<_>>()?;
    let values: Vec<Vec<T>> = points
        .iter()
        .map(|t| {
            let z = c0.point_at(t);
            grad.iter().map(|g| g.eval(&z)).collect::<Result<Vec<T>>>()
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_fn(points.len(), HYPERPLANE * (d + 1), |s, col| {
        let (m, i) = (col / (d + 1), col % (d + 1));
        values[s][m].clone() * points[s].pow(i)
    }))
}

/// `entry(s, (m, i)) = l(c0(t_s)) (∂q/∂z_m)(c0(t_s)) t_s^i`; the closed form of
/// `A22` on the trailing points and of `A12` on the leading ones.
pub fn a22_closed_form<T: Scalar>(c0: &CurveParam, l: &MultiPoly, q: &MultiPoly, points: &[T]) -> Result<Matrix<T>> {
    let rows = gradient_rows(c0, q, points)?;
    let lv: Vec<T> = points.iter().map(|t| l.eval(&c0.point_at(t))).collect::<Result<_>>()?;
    Ok(Matrix::from_fn(rows.rows(), rows.cols(), |s, j| {
        lv[s].clone() * rows[(s, j)].clone()
    }))
}

fn gradient_along(q: &MultiPoly, c0: &CurveParam) -> Result<Vec<UniPoly>> {
    (0..HYPERPLANE)
        .map(|m| q.partial_derivative(m)?.compose_with(c0.components()))
        .collect()
}

fn require_on_q(q: &MultiPoly, c0: &CurveParam) -> Result<()> {
    if !q.compose_with(c0.components())?.is_zero() {
        return Err(Error::Invariant("q(c0(t)) ≡ 0".into()));
    }
    Ok(())
}

/// Matrix of `v -> Σ_m (∂q/∂z_m)(c0(t)) v_m(t)` from `(v_0..v_3)` of degree
/// `<= d` to polynomials of degree `<= 4d`. Its kernel is the space of
/// first-order deformations of `c0` inside the cone over `Q`.
pub fn gradient_pairing_map(q: &MultiPoly, c0: &CurveParam) -> Result<RationalMatrix> {
    require_on_q(q, c0)?;
    let d = c0.degree_bound();
    let grads = gradient_along(q, c0)?;
    let rows = 4 * d + 1;
    Ok(RationalMatrix::from_fn(rows, HYPERPLANE * (d + 1), |j, col| {
        let (m, i) = (col / (d + 1), col % (d + 1));
        if j < i {
            Rational::zero()
        } else {
            grads[m].coeff(j - i)
        }
    }))
}

/// Smoothness of `Q` at the points of `c0` only: the restricted partials have
/// no common affine zero and no common zero at `t = ∞` (all `t^{3d}`
/// coefficients vanishing).
pub fn smooth_along_curve(q: &MultiPoly, c0: &CurveParam) -> Result<bool> {
    require_on_q(q, c0)?;
    let d = c0.degree_bound();
    let grads = gradient_along(q, c0)?;
    let affine = gcd_all(&grads).is_some_and(|g| g.is_constant());
    let at_infinity = grads.iter().any(|g| !g.coeff(3 * d).is_zero());
    Ok(affine && at_infinity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{det_exact, int, kernel_exact, rank_exact, ratio};
    use crate::clemens::{fixture_a, fixture_b};
    use crate::incidence::{jacobian_evaluation_form, symmetry_kernel_vectors, IncidenceProblem};

    fn a_blocks() -> (BlockSet<crate::algebra::Rational>, RationalMatrix) {
        let fx = fixture_a();
        let pts = [ratio(-1, 2), int(1), int(2), int(3), int(4), int(5)];
        let prob = IncidenceProblem::new(4, 1, 5, fx.f0.clone()).unwrap();
        let je = jacobian_evaluation_form(&prob, &fx.c0, &pts).unwrap().matrix;
        let lv: Vec<_> = pts.iter().map(|t| fx.l.eval(&fx.c0.point_at(t)).unwrap()).collect();
        (block_decompose(&je, 1, &lv).unwrap(), je)
    }

    #[test]
    fn shapes_and_reassembly() {
        let (b, je) = a_blocks();
        assert_eq!(b.a11.shape(), (2, 2));
        assert_eq!(b.a12.shape(), (2, 8));
        assert_eq!(b.a21.shape(), (4, 2));
        assert_eq!(b.a22.shape(), (4, 8));
        assert!(b.reassemble().same_entries(&je));
        assert!(b.a12.row_is_zero(0));
        assert!(!b.a12.row_is_zero(1));
    }

    #[test]
    fn a11_matches_closed_form() {
        let fx = fixture_a();
        let (b, _) = a_blocks();
        let closed = a11_closed_form(&fx.c0, &fx.p, &[ratio(-1, 2), int(1)]).unwrap();
        assert_eq!(
            closed.row_vecs(),
            vec![vec![ratio(-17, 32), ratio(17, 16)], vec![int(2), int(2)]]
        );
        assert!(reverse_columns(&closed).same_entries(&b.a11));
        assert_eq!(det_exact(&closed).unwrap(), ratio(-51, 16));
        assert_eq!(det_exact(&b.a11.clone().without_labels()).unwrap(), ratio(51, 16));
    }

    #[test]
    fn a11_with_constant_p_is_vandermonde() {
        let fx = fixture_a();
        let one = MultiPoly::from_int_terms(5, &[(1, &[0, 0, 0, 0, 0])]).unwrap();
        let m = a11_closed_form(&fx.c0, &one, &[int(2), int(3)]).unwrap();
        assert_eq!(m.row_vecs(), vec![vec![int(2), int(1)], vec![int(3), int(1)]]);
    }

    #[test]
    fn a22_row_at_two() {
        let fx = fixture_a();
        let m = a22_closed_form(&fx.c0, &fx.l, &fx.q, &[int(2)]).unwrap();
        // gradient (0, 0, 1, 8) times l = 5, spread over powers 1, t
        assert_eq!(m.row(0), &[0, 0, 0, 0, 5, 10, 40, 80].map(int));
        let (b, _) = a_blocks();
        let closed = a22_closed_form(&fx.c0, &fx.l, &fx.q, &[int(2), int(3), int(4), int(5)]).unwrap();
        assert!(closed.same_entries(&b.a22));
        let a0 = b.a0.unwrap();
        assert!(gradient_rows(&fx.c0, &fx.q, &[int(2), int(3), int(4), int(5)])
            .unwrap()
            .same_entries(&a0));
        assert_eq!(rank_exact(&a0), 4);
    }

    #[test]
    fn zero_l_value_flags_row() {
        let (_, je) = a_blocks();
        let mut lv = vec![int(1); 6];
        lv[3] = int(0);
        let b = block_decompose(&je, 1, &lv).unwrap();
        assert_eq!(b.flagged_rows, vec![1]);
        assert!(b.a0.is_none());
    }

    #[test]
    fn pairing_fixture_a() {
        let fx = fixture_a();
        let m = gradient_pairing_map(&fx.q, &fx.c0).unwrap();
        assert_eq!(m.shape(), (5, 8));
        // (v0, v1, v2, v3) -> v2 + t^3 v3
        let expect = RationalMatrix::from_rows(
            [
                [0, 0, 0, 0, 1, 0, 0, 0],
                [0, 0, 0, 0, 0, 1, 0, 0],
                [0, 0, 0, 0, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, 0, 1, 0],
                [0, 0, 0, 0, 0, 0, 0, 1],
            ]
            .iter()
            .map(|r| r.map(int).to_vec())
            .collect(),
        )
        .unwrap();
        assert_eq!(m, expect);
        let k = kernel_exact(&m);
        assert_eq!(k.dimension(), 4);
        for v in symmetry_kernel_vectors(&fx.c0) {
            assert!(k.contains(&v[..8]));
        }
    }

    #[test]
    fn pairing_fixture_b() {
        let fx = fixture_b();
        let m = gradient_pairing_map(&fx.q, &fx.c0).unwrap();
        assert_eq!(m.shape(), (9, 12));
        assert_eq!(kernel_exact(&m).dimension(), 4);
    }

    #[test]
    fn smoothness_along_curve() {
        assert!(smooth_along_curve(&fixture_a().q, &fixture_a().c0).unwrap());
        assert!(smooth_along_curve(&fixture_b().q, &fixture_b().c0).unwrap());
        // z2^2 (z0^2 + z1^2) contains the line doubly
        let q = MultiPoly::from_int_terms(5, &[(1, &[2, 0, 2, 0, 0]), (1, &[0, 2, 2, 0, 0])]).unwrap();
        assert!(!smooth_along_curve(&q, &fixture_a().c0).unwrap());
        let off = MultiPoly::from_int_terms(5, &[(1, &[4, 0, 0, 0, 0])]).unwrap();
        assert!(gradient_pairing_map(&off, &fixture_a().c0).is_err());
    }
}
