//! Special functions: both real Lambert W branches, `₂F₁(1, b; b+1; z)`, and
//! the adaptive quadrature they share with the channel module.

mod hyp2f1;
mod lambert;
pub mod quad;

pub use hyp2f1::gauss_2f1_1b;
pub use lambert::{lambert_ladder_upper, lambert_w, BranchK, BRANCH_POINT_TOL};
pub(crate) use lambert::{offset_from_branch_point, INV_E};
pub use quad::QuadResult;
