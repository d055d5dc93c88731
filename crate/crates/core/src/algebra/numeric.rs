use nalgebra::DMatrix;

use super::{Complex64, ComplexMatrix};
use crate::error::{Error, Result};

/// Relative singular-value threshold used when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    for i in 0..m.rows() {
        for (j, z) in m.row(i).iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(Vec::new());
    }
    let a = DMatrix::from_row_slice(m.rows(), m.cols(), m.entries());
    let mut sv: Vec<f64> = a.singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

pub fn det_numeric(m: &ComplexMatrix) -> Result<Complex64> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    Ok(DMatrix::from_row_slice(rows, cols, m.entries()).determinant())
}

/// Number of singular values above `tol` times the largest one.
pub fn rank_numeric(m: &ComplexMatrix, tol: f64) -> Result<usize> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::NegativeTolerance);
    }
    let sv = singular_values(m)?;
    let Some(&largest) = sv.first() else { return Ok(0) };
    if largest == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tol * largest).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank_numeric(&ComplexMatrix::identity(4), 1e-10).unwrap(), 4);
        assert_eq!(rank_numeric(&ComplexMatrix::zeros(3, 3), 1e-10).unwrap(), 0);
    }

    #[test]
    fn rank_one_complex() {
        let i = Complex64::new(0.0, 1.0);
        let m = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(1.0, 0.0), i],
            vec![i, Complex64::new(-1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(rank_numeric(&m, 1e-8).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        let mut m = ComplexMatrix::identity(2);
        m[(1, 0)] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(rank_numeric(&m, 1e-8), Err(Error::NonFinite { row: 1, col: 0 }));
        assert_eq!(
            rank_numeric(&ComplexMatrix::identity(2), -1.0),
            Err(Error::NegativeTolerance)
        );
    }
}
