//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Each row of a rational matrix is first cleared of denominators (rank and
//! kernel are unchanged, the determinant picks up the product of the row
//! scales). After `k` elimination steps every live entry is a `(k+1)`-minor
//! of the scaled matrix, so every division by the previous pivot is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, Rational, RationalMatrix, Scalar};
use crate::error::{Error, Result};

/// Integer row-echelon form produced by Bareiss elimination.
#[derive(Clone, Debug)]
pub struct EchelonForm {
    cols: usize,
    /// The `rank` leading rows; rows below are identically zero.
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
    swaps: usize,
}

impl EchelonForm {
    pub fn compute(m: &RationalMatrix) -> Self {
        let cols = m.cols();
        let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| integer_row(m.row(i)).0).collect();
        let nrows = a.len();
        let mut prev = BigInt::one();
        let mut pivot_cols = Vec::new();
        let mut swaps = 0;
        let mut r = 0;
        for col in 0..cols {
            if r == nrows {
                break;
            }
            // Largest |entry|, ties to the lowest row index.
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if a[i][col].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if a[b][col].abs() >= a[i][col].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(p) = best else { continue };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[col];
            for row in rest.iter_mut() {
                let factor = row[col].clone();
                for j in col + 1..cols {
                    let v = pivot * &row[j] - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = pivot.clone();
            pivot_cols.push(col);
            r += 1;
        }
        a.truncate(r);
        EchelonForm {
            cols,
            rows: a,
            pivot_cols,
            swaps,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Right null space by back substitution, one vector per free column.
    pub fn kernel(&self) -> KernelBasis {
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &c in &self.pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            for (k, &pc) in self.pivot_cols.iter().enumerate().rev() {
                let row = &self.rows[k];
                let mut acc = Rational::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        acc += Rational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[pc] = -acc / Rational::from_integer(row[pc].clone());
            }
            vectors.push(normalize_leading(x));
        }
        KernelBasis {
            ambient_dim: self.cols,
            vectors,
        }
    }
}

/// Scales a rational row to integers by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints = row.iter().map(|r| r.numer() * (&l / r.denom())).collect();
    (ints, l)
}

fn normalize_leading(mut v: Vec<Rational>) -> Vec<Rational> {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x = &*x / &lead;
        }
    }
    v
}

pub fn rank_exact(m: &RationalMatrix) -> usize {
    EchelonForm::compute(m).rank()
}

pub fn kernel_exact(m: &RationalMatrix) -> KernelBasis {
    EchelonForm::compute(m).kernel()
}

pub fn det_exact(m: &RationalMatrix) -> Result<Rational> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows == 0 {
        return Ok(Rational::one());
    }
    let scale = (0..rows).fold(BigInt::one(), |acc, i| acc * integer_row(m.row(i)).1);
    let ech = EchelonForm::compute(m);
    if ech.rank() < rows {
        return Ok(Rational::zero());
    }
    // The last Bareiss pivot is the determinant of the row-permuted scaled matrix.
    let mut det = ech.rows[rows - 1][cols - 1].clone();
    if ech.swaps % 2 == 1 {
        det = -det;
    }
    Ok(Rational::new(det, scale))
}

/// `entry(s, j) = points[s]^j` for `j < width`.
pub fn vandermonde<T: Scalar>(points: &[T], width: usize) -> Result<super::Matrix<T>> {
    for (i, a) in points.iter().enumerate() {
        if points[..i].contains(a) {
            return Err(Error::RepeatedPoint(a.to_string()));
        }
    }
    Ok(super::Matrix::from_fn(points.len(), width, |s, j| points[s].pow(j)))
}

/// Basis of a right null space; vectors are scaled so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelBasis {
    pub ambient_dim: usize,
    #[serde(with = "vectors_serde")]
    pub vectors: Vec<Vec<Rational>>,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Vectors as the rows of a matrix.
    pub fn as_matrix(&self) -> RationalMatrix {
        if self.vectors.is_empty() {
            return RationalMatrix::zeros(0, self.ambient_dim);
        }
        RationalMatrix::from_rows(self.vectors.clone()).expect("uniform vector lengths")
    }

    pub fn is_independent(&self) -> bool {
        rank_exact(&self.as_matrix()) == self.dimension()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        let stacked = RationalMatrix::from_rows(rows).expect("uniform vector lengths");
        rank_exact(&stacked) == rank_exact(&self.as_matrix())
    }

    /// Equality of spans, by mutual containment.
    pub fn same_span(&self, other: &KernelBasis) -> bool {
        self.ambient_dim == other.ambient_dim
            && other.vectors.iter().all(|v| self.contains(v))
            && self.vectors.iter().all(|v| other.contains(v))
    }
}

mod vectors_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = v.iter().map(|row| row.iter().map(format_rational).collect()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| super::super::parse_rational(s).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}
