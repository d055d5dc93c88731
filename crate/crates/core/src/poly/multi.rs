use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::UniPoly;
use crate::algebra::{format_rational, parse_rational, Rational, Scalar};
use crate::error::{Error, Result};

/// Exponent vector ordered by graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `degree` in `num_vars` variables,
/// in descending graded-lex order (`z0^e` first).
pub fn monomials_of_degree(num_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(remaining_vars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining_vars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(remaining_vars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(num_vars, degree, &mut Vec::new(), &mut out);
    out
}

/// Sparse multivariate polynomial in `z_0 .. z_{num_vars-1}` with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::from_terms(num_vars, [(vec![0; num_vars], c)]).expect("well-formed")
    }

    /// The coordinate `z_index`.
    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut exp = vec![0; num_vars];
        exp[index] = 1;
        Self::from_terms(num_vars, [(exp, Rational::one())]).expect("well-formed")
    }

    /// Builds a polynomial, summing repeated exponents and dropping zeros.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (exp, c) in terms {
            if exp.len() != num_vars {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} in {num_vars} variables",
                    exp.len()
                )));
            }
            p.add_term(Monomial(exp), c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(num_vars: usize, terms: &[(i64, &[u32])]) -> Result<Self> {
        Self::from_terms(
            num_vars,
            terms.iter().map(|(c, e)| (e.to_vec(), crate::algebra::int(*c))),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exp.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// `Some(e)` when nonzero and every term has total degree `e`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let first = self.terms.keys().next()?.degree();
        let last = self.terms.keys().next_back()?.degree();
        (first == last).then_some(first)
    }

    /// True for the zero polynomial and for forms of degree `e`.
    pub fn is_homogeneous_of(&self, e: usize) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(e)
    }

    /// Whether `z_index` occurs in some term.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.0[index] > 0)
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.checked_add(&other.scale(&-Rational::one()))
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exp = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exp), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to `z_index`.
    pub fn partial_derivative(&self, index: usize) -> Result<MultiPoly> {
        if index >= self.num_vars {
            return Err(Error::Dimension(format!(
                "coordinate z{index} in {} variables",
                self.num_vars
            )));
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[index] -= 1;
            out.add_term(Monomial(exp), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.num_vars)
            .map(|m| self.partial_derivative(m).expect("index in range"))
            .collect()
    }

    pub fn eval<T: Scalar>(&self, point: &[T]) -> Result<T> {
        if point.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.num_vars
            )));
        }
        Ok(self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let mono =
                m.0.iter()
                    .zip(point)
                    .fold(T::from_rational(c), |acc, (&e, x)| acc * x.pow(e as usize));
            acc + mono
        }))
    }

    /// Substitutes `z_m := components[m](t)`.
    pub fn compose_with(&self, components: &[UniPoly]) -> Result<UniPoly> {
        if components.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "curve with {} components for a polynomial in {} variables",
                components.len(),
                self.num_vars
            )));
        }
        let max_exp: Vec<u32> = (0..self.num_vars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<UniPoly>> = components
            .iter()
            .zip(&max_exp)
            .map(|(c, &top)| {
                let mut v = vec![UniPoly::constant(Rational::one())];
                for k in 1..=top as usize {
                    let next = &v[k - 1] * c;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
                if term.is_zero() {
                    break;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.terms() {
            let vars: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("z{i}") } else { format!("z{i}^{e}") })
                .collect();
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            let body = match (vars.is_empty(), mag.is_one()) {
                (true, _) => format_rational(&mag),
                (false, true) => vars.join("*"),
                (false, false) => format!("{}*{}", format_rational(&mag), vars.join("*")),
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct MultiRepr {
    nvars: usize,
    #[serde(default)]
    homogeneous_degree: Option<usize>,
    terms: Vec<TermRepr>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultiRepr {
            nvars: self.num_vars,
            homogeneous_degree: self.homogeneous_degree(),
            terms: self
                .terms()
                .map(|(e, c)| TermRepr {
                    exp: e.to_vec(),
                    coef: format_rational(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MultiRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c = parse_rational(&t.coef).map_err(D::Error::custom)?;
            terms.push((t.exp, c));
        }
        let p = MultiPoly::from_terms(repr.nvars, terms).map_err(D::Error::custom)?;
        if let Some(e) = repr.homogeneous_degree {
            if !p.is_homogeneous_of(e) {
                return Err(D::Error::custom(Error::NotHomogeneous(e)));
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn fermat(n: usize, e: u32) -> MultiPoly {
        MultiPoly::from_terms(
            n,
            (0..n).map(|i| {
                let mut exp = vec![0; n];
                exp[i] = e;
                (exp, int(1))
            }),
        )
        .unwrap()
    }

    #[test]
    fn ring_examples() {
        let z0 = MultiPoly::var(5, 0);
        let sq = z0.checked_mul(&z0).unwrap();
        assert_eq!(sq, MultiPoly::from_int_terms(5, &[(1, &[2, 0, 0, 0, 0])]).unwrap());
        assert!(z0.checked_add(&MultiPoly::var(4, 0)).is_err());
        assert!(z0.checked_sub(&z0).unwrap().is_zero());
        let prod = sq.checked_mul(&fermat(5, 3)).unwrap();
        assert_eq!(prod.homogeneous_degree(), Some(5));
    }

    #[test]
    fn derivatives() {
        let p = MultiPoly::from_int_terms(5, &[(1, &[3, 0, 1, 0, 0])]).unwrap();
        assert_eq!(
            p.partial_derivative(0).unwrap(),
            MultiPoly::from_int_terms(5, &[(3, &[2, 0, 1, 0, 0])]).unwrap()
        );
        assert!(MultiPoly::var(5, 4).partial_derivative(0).unwrap().is_zero());
        assert!(p.partial_derivative(5).is_err());
    }

    #[test]
    fn compose_examples() {
        let c = [
            UniPoly::from_ints(&[1]),
            UniPoly::from_ints(&[0, 1]),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::zero(),
        ];
        assert_eq!(
            fermat(5, 5).compose_with(&c).unwrap(),
            UniPoly::from_ints(&[1, 0, 0, 0, 0, 1])
        );
        let l = MultiPoly::from_int_terms(
            5,
            &[
                (1, &[1, 0, 0, 0, 0]),
                (2, &[0, 1, 0, 0, 0]),
                (3, &[0, 0, 1, 0, 0]),
                (5, &[0, 0, 0, 1, 0]),
                (7, &[0, 0, 0, 0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(l.compose_with(&c).unwrap(), UniPoly::from_ints(&[1, 2]));
        assert!(l.compose_with(&c[..4]).is_err());
    }

    #[test]
    fn grlex_basis() {
        let b = monomials_of_degree(5, 1);
        assert_eq!(b[0], vec![1, 0, 0, 0, 0]);
        assert_eq!(b[4], vec![0, 0, 0, 0, 1]);
        assert_eq!(monomials_of_degree(5, 5).len(), 126);
        assert_eq!(monomials_of_degree(5, 4).len(), 70);
        let b = monomials_of_degree(3, 2);
        let mut sorted = b.clone();
        sorted.sort_by_key(|x| std::cmp::Reverse(Monomial(x.clone())));
        assert_eq!(b, sorted);
    }

    #[test]
    fn json_form() {
        let p = MultiPoly::from_int_terms(5, &[(1, &[3, 0, 1, 0, 0]), (-2, &[0, 0, 0, 0, 4])]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"nvars":5,"homogeneous_degree":4,"terms":[{"exp":[3,0,1,0,0],"coef":"1"},{"exp":[0,0,0,0,4],"coef":"-2"}]}"#
        );
        assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), p);
        let bad = r#"{"nvars":2,"homogeneous_degree":2,"terms":[{"exp":[1,0],"coef":"1"}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(bad).is_err());
        let bad = r#"{"nvars":2,"terms":[{"exp":[1],"coef":"1"}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(bad).is_err());
    }

    #[test]
    fn display() {
        let p = MultiPoly::from_int_terms(3, &[(1, &[2, 0, 0]), (-3, &[0, 1, 1]), (1, &[0, 0, 0])]).unwrap();
        assert_eq!(p.to_string(), "z0^2 - 3*z1*z2 + 1");
    }
}
