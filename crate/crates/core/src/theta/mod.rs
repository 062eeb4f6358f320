//! Theta series: Jacobi theta constants and the lambda function on the upper
//! half-plane, and theta series with Gaussian-integer characteristics on the
//! Hermitian upper half-space `H₂ₓ₂` together with their restriction to
//! hyperbolic 3-space.

mod characteristic;
mod jacobi;
mod siegel;
mod tau;

pub use characteristic::{Level, ThetaChar};
pub use jacobi::{jacobi_theta, jacobi_terms_needed, lambda, JacobiKind};
pub use siegel::{
    box_tail_bound, ellipsoid_tail_bound, gauss_reduce_form, is_identically_vanishing, siegel_theta,
    siegel_theta_box, siegel_theta_with, theta_on_h3, theta_on_h3_complex, theta_tail_bound,
    truncation_radius, SiegelOptions, ThetaEval, DEFAULT_RADIUS_CAP,
};
pub use tau::{tau_transform, GMat4, TauMat};
