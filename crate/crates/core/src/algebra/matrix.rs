use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Complex64, Rational, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix with optional row/column labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

pub type RationalMatrix = Matrix<Rational>;
pub type ComplexMatrix = Matrix<Complex64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self[(i, k)].clone() * other[(k, j)].clone())
        }))
    }

    pub fn scale(&self, factor: &T) -> Matrix<T> {
        self.map(|x| x.clone() * factor.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(T::is_zero)
    }
}

impl<T: Clone> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols + j].clone())
            .collect()
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        if rows.len() != self.rows || cols.len() != self.cols {
            return Err(Error::Dimension(format!(
                "labels {}x{} for a {}x{} matrix",
                rows.len(),
                cols.len(),
                self.rows,
                self.cols
            )));
        }
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.row_labels = None;
        self.col_labels = None;
        self
    }

    /// Same shape and entries, ignoring labels.
    pub fn same_entries(&self, other: &Matrix<T>) -> bool
    where
        T: PartialEq,
    {
        self.shape() == other.shape() && self.entries == other.entries
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entries[i * self.cols + j].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Submatrix on the given row and column index lists, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.entries[i * self.cols + j].clone());
            }
        }
        let pick = |labels: &Option<Vec<String>>, idx: &[usize]| {
            labels.as_ref().map(|l| idx.iter().map(|&k| l[k].clone()).collect())
        };
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
            row_labels: pick(&self.row_labels, rows),
            col_labels: pick(&self.col_labels, cols),
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
    }
}

impl RationalMatrix {
    pub fn to_complex(&self) -> ComplexMatrix {
        self.map(Complex64::from_rational)
    }
}

impl ComplexMatrix {
    /// Largest entrywise modulus of `self - other`; `None` on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Option<f64> {
        if self.shape() != other.shape() {
            return None;
        }
        Some(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.entries[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<E> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<E>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    row_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    col_labels: Option<Vec<String>>,
}

impl<E> MatrixRepr<E> {
    fn from_matrix<T: Clone>(m: &Matrix<T>, f: impl Fn(&T) -> E) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows).map(|i| m.row(i).iter().map(&f).collect()).collect(),
            row_labels: m.row_labels.clone(),
            col_labels: m.col_labels.clone(),
        }
    }

    fn into_matrix<T, F>(self, f: F) -> std::result::Result<Matrix<T>, String>
    where
        F: Fn(E) -> std::result::Result<T, String>,
    {
        if self.entries.len() != self.rows {
            return Err(format!(
                "matrix declares {} rows but lists {}",
                self.rows,
                self.entries.len()
            ));
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.into_iter().enumerate() {
            if row.len() != self.cols {
                return Err(format!("row {i} has {} entries, expected {}", row.len(), self.cols));
            }
            for e in row {
                entries.push(f(e)?);
            }
        }
        let check = |labels: &Option<Vec<String>>, n: usize, what: &str| match labels {
            Some(l) if l.len() != n => Err(format!("{what} labels have length {}, expected {n}", l.len())),
            _ => Ok(()),
        };
        check(&self.row_labels, self.rows, "row")?;
        check(&self.col_labels, self.cols, "column")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            row_labels: self.row_labels,
            col_labels: self.col_labels,
        })
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr::from_matrix(self, format_rational).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixRepr::<String>::deserialize(d)?
            .into_matrix(|s| parse_rational(&s).map_err(|e| e.to_string()))
            .map_err(D::Error::custom)
    }
}

/// Complex entries serialize as `[re, im]` pairs.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr::from_matrix(self, |z| [z.re, z.im]).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MatrixRepr::<[f64; 2]>::deserialize(d)?
            .into_matrix(|[re, im]| Ok(Complex64::new(re, im)))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, ratio};

    #[test]
    fn json_form() {
        let m = RationalMatrix::from_rows(vec![vec![int(1), ratio(-1, 2)], vec![int(0), int(3)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":[["1","-1/2"],["0","3"]]}"#);
        let back: RationalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_ragged_rows() {
        let bad = r#"{"rows":2,"cols":2,"entries":[["1","2"],["3"]]}"#;
        assert!(serde_json::from_str::<RationalMatrix>(bad).is_err());
        let bad_count = r#"{"rows":3,"cols":1,"entries":[["1"]]}"#;
        assert!(serde_json::from_str::<RationalMatrix>(bad_count).is_err());
    }

    #[test]
    fn labels_must_match_shape() {
        let m = RationalMatrix::zeros(2, 3);
        assert!(m.clone().with_labels(vec!["a".into()], vec![]).is_err());
        let m = m
            .with_labels(vec!["r0".into(), "r1".into()], vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let sub = m.select(&[1], &[2, 0]);
        assert_eq!(sub.row_labels().unwrap(), ["r1"]);
        assert_eq!(sub.col_labels().unwrap(), ["c", "a"]);
    }

    #[test]
    fn products() {
        let a = RationalMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]).unwrap();
        let b = a.mul(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mul_vec(&[int(1), int(-1)]).unwrap(), vec![int(-1), int(-1)]);
        assert!(a.mul_vec(&[int(1)]).is_err());
    }
}
