//! The incidence scheme of parametrized curves on a hypersurface, its
//! defining equations and their Jacobian.

mod curve;
mod jacobian;
mod through;

pub use curve::{membership_checks, symmetry_kernel_vectors, CurveParam, MembershipReport};
pub use jacobian::{
    coefficients_k, format_rows, jacobian_coefficient_form, jacobian_evaluation_form, lies_on, tangent_dim,
    IncidenceProblem, JacobianForm, JacobianMatrix, KVector, TangentDim,
};
pub use through::{
    derive_seed, expected_full_rank, quintics_through_curve, sample_through_curve, through_constraint_matrix, Sample,
    ThroughCurve, SAMPLE_COEFF_RANGE,
};
