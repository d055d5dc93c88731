//! Polynomials over the rationals: sparse forms in the ambient coordinates
//! and dense polynomials in the curve parameter `t`.

mod multi;
mod roots;
mod uni;

pub use multi::{monomials_of_degree, Monomial, MultiPoly};
pub use roots::{roots_numeric, Root, MAX_PRECISION};
pub use uni::{gcd_all, gcd_univariate, UniPoly};
