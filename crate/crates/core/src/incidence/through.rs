use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{jacobian_coefficient_form, CurveParam, IncidenceProblem};
use crate::algebra::{int, kernel_exact, rank_exact, KernelBasis, Rational, RationalMatrix};
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, MultiPoly};

/// Range of the integer weights used by [`ThroughCurve::random_member`].
pub const SAMPLE_COEFF_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

/// The linear system of degree-`e` forms containing a fixed curve, expressed
/// over the monomial basis in descending graded-lex order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThroughCurve {
    pub n: usize,
    pub e: usize,
    pub monomials: Vec<Vec<u32>>,
    pub constraint_rank: usize,
    pub kernel: KernelBasis,
}

/// Matrix of `f -> k(c, f)` on the degree-`e` monomial basis.
pub fn through_constraint_matrix(e: usize, c: &CurveParam) -> Result<(Vec<Vec<u32>>, RationalMatrix)> {
    let nvars = c.ambient_dim() + 1;
    let monomials = monomials_of_degree(nvars, e as u32);
    let rows = e * c.degree_bound() + 1;
    let mut cols = Vec::with_capacity(monomials.len());
    for exp in &monomials {
        let mono = MultiPoly::from_terms(nvars, [(exp.clone(), int(1))])?;
        cols.push(mono.compose_with(c.components())?.padded(rows));
    }
    let m = RationalMatrix::from_fn(rows, monomials.len(), |j, k| cols[k][j].clone());
    Ok((monomials, m))
}

/// All degree-`e` hypersurfaces in `P^n` containing `c`.
pub fn quintics_through_curve(n: usize, e: usize, c: &CurveParam) -> Result<ThroughCurve> {
    if c.ambient_dim() != n {
        return Err(Error::Dimension(format!(
            "curve in P^{} for forms on P^{n}",
            c.ambient_dim()
        )));
    }
    let (monomials, m) = through_constraint_matrix(e, c)?;
    Ok(ThroughCurve {
        n,
        e,
        monomials,
        constraint_rank: rank_exact(&m),
        kernel: kernel_exact(&m),
    })
}

impl ThroughCurve {
    pub fn dimension(&self) -> usize {
        self.kernel.dimension()
    }

    /// The form with coefficient vector `v` on the monomial basis.
    pub fn form(&self, v: &[Rational]) -> MultiPoly {
        MultiPoly::from_terms(self.n + 1, self.monomials.iter().cloned().zip(v.iter().cloned()))
            .expect("monomials have n + 1 exponents")
    }

    /// `Σ w_i b_i` over the kernel basis; extra weights are ignored.
    pub fn combination(&self, weights: &[Rational]) -> MultiPoly {
        let mut v = vec![Rational::zero(); self.kernel.ambient_dim];
        for (w, b) in weights.iter().zip(&self.kernel.vectors) {
            if w.is_zero() {
                continue;
            }
            for (acc, x) in v.iter_mut().zip(b) {
                *acc += w * x;
            }
        }
        self.form(&v)
    }

    pub fn basis_forms(&self) -> Vec<MultiPoly> {
        self.kernel.vectors.iter().map(|v| self.form(v)).collect()
    }

    /// Whether `f` belongs to the linear system.
    pub fn contains(&self, f: &MultiPoly) -> bool {
        if f.num_vars() != self.n + 1 || !f.is_homogeneous_of(self.e) {
            return false;
        }
        let v: Vec<Rational> = self.monomials.iter().map(|m| f.coeff(m)).collect();
        self.kernel.contains(&v)
    }

    /// Seeded combination of the basis with integer weights in [`SAMPLE_COEFF_RANGE`].
    pub fn random_member(&self, seed: u64) -> Result<MultiPoly> {
        if self.kernel.is_empty() {
            return Err(Error::EmptyBasis);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let weights: Vec<i64> = (0..self.dimension())
                .map(|_| rng.random_range(SAMPLE_COEFF_RANGE))
                .collect();
            if weights.iter().all(|&w| w == 0) {
                continue;
            }
            let weights: Vec<Rational> = weights.into_iter().map(int).collect();
            return Ok(self.combination(&weights));
        }
    }
}

/// splitmix64 of `seed` advanced by `stream` steps.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One draw of the through-curve sampling experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub draw: usize,
    pub draw_seed: u64,
    pub form: MultiPoly,
    pub rank: usize,
    pub tangent_dim: usize,
    pub full_rank: bool,
}

/// Rank a non-degenerate Jacobian has at a curve: the symmetry directions
/// always lie in the kernel, so it is `min(ed + 1, (n + 1)(d + 1) - 4)`.
pub fn expected_full_rank(n: usize, d: usize, e: usize) -> usize {
    (e * d + 1).min(((n + 1) * (d + 1)).saturating_sub(4))
}

/// Draws `count` members of the through-curve system and ranks the Jacobian
/// at `c` for each. Draw `i` uses `derive_seed(seed, i)`; output order is by
/// draw regardless of evaluation order.
pub fn sample_through_curve(system: &ThroughCurve, c: &CurveParam, count: usize, seed: u64) -> Result<Vec<Sample>> {
    use rayon::prelude::*;
    let expected = expected_full_rank(system.n, c.degree_bound(), system.e);
    (0..count)
        .into_par_iter()
        .map(|draw| {
            let draw_seed = derive_seed(seed, draw as u64);
            let form = system.random_member(draw_seed)?;
            let prob = IncidenceProblem::new(system.n, c.degree_bound(), system.e, form.clone())?;
            let rank = jacobian_coefficient_form(&prob, c)?.rank();
            Ok(Sample {
                draw,
                draw_seed,
                form,
                rank,
                tangent_dim: prob.parameter_dim() - rank,
                full_rank: rank == expected,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::lies_on;

    fn line() -> CurveParam {
        CurveParam::from_ints(4, 1, &[&[1], &[0, 1], &[], &[], &[]]).unwrap()
    }

    #[test]
    fn hyperplanes_through_the_line() {
        let sys = quintics_through_curve(4, 1, &line()).unwrap();
        assert_eq!(sys.dimension(), 3);
        let forms = sys.basis_forms();
        assert_eq!(forms, (2..5).map(|i| MultiPoly::var(5, i)).collect::<Vec<_>>());
    }

    #[test]
    fn quintics_through_the_line() {
        let sys = quintics_through_curve(4, 5, &line()).unwrap();
        assert_eq!(sys.constraint_rank, 6);
        assert_eq!(sys.dimension(), 120);
        assert_eq!(sys.dimension() + sys.constraint_rank, 126);
    }

    #[test]
    fn random_members_are_reproducible_and_on_the_curve() {
        let sys = quintics_through_curve(4, 1, &line()).unwrap();
        let a = sys.random_member(0).unwrap();
        assert_eq!(a, sys.random_member(0).unwrap());
        assert!(!a.involves(0) && !a.involves(1));
        assert_ne!(a, sys.random_member(1).unwrap());
        let prob = IncidenceProblem::new(4, 1, 1, a.clone()).unwrap();
        assert!(lies_on(&prob, &line()).unwrap());
        assert!(sys.contains(&a));
        assert!(!sys.contains(&MultiPoly::var(5, 0)));
    }

    #[test]
    fn empty_system_is_rejected() {
        // every linear form through a spanning curve of P^1 vanishes
        let c = CurveParam::from_ints(1, 1, &[&[1], &[0, 1]]).unwrap();
        let sys = quintics_through_curve(1, 1, &c).unwrap();
        assert_eq!(sys.dimension(), 0);
        assert_eq!(sys.random_member(0), Err(Error::EmptyBasis));
    }

    #[test]
    fn seeds_spread() {
        assert_ne!(derive_seed(0, 0), derive_seed(0, 1));
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }
}
