//! The special quintic `f0 = l q + z4 p` through a curve `c0` on the quartic
//! surface `Q = {z4 = 0 = q}`, and the mechanical verification that the
//! Jacobian of the incidence scheme is non-degenerate at `c0`.

mod blocks;
mod fixture;
mod points;
mod smooth;
mod verify;

pub use blocks::{
    a11_closed_form, a22_closed_form, block_decompose, gradient_pairing_map, gradient_rows, reverse_columns,
    smooth_along_curve, BlockSet,
};
pub use fixture::{
    build_special_hypersurface, fixture_a, fixture_a_fermat, fixture_b, fixture_b_complex, fixture_by_name,
    ClemensFixture, FIXTURE_NAMES, HYPERPLANE, NVARS,
};
pub use points::{generic_points, select_special_points, FieldTag, SpecialPointSet, SpecialPoints};
pub use smooth::singular_points_mod_p;
pub use verify::{
    render_matrix, verify_construction, CheckEntry, CheckStatus, VerificationReport, VerifyConfig, MAX_ATTEMPTS,
};
