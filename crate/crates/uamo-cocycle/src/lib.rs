//! Transfer matrices and quasiperiodic cocycles of the unitary
//! almost-Mathieu operator.
//!
//! Solutions of `Wψ = zψ` propagate by the transfer matrices [`transfer_t`].
//! Along the rotation `θ ↦ θ+Φ` these form the cocycle `A_z`, which has a
//! regularized version `B_z`, a dual `A♯_z` and a real conjugate `A^ℛ_z`.
//! The four maps are registered by name (see [`cocycle_map`]) and can be
//! evaluated at complex phases `θ + iε`.
//!
//! On top of the maps the crate provides renormalized products, Lyapunov
//! exponent estimates, the piecewise-affine profile `ε ↦ L(Φ, B, ε)` with
//! its quantized slopes, and the exact log-integral used to compare `A` and
//! `B`.

mod integral;
mod lyapunov;
mod mat2;
mod realify;
mod transfer;
mod variants;

pub use integral::{epsilon0, log_integral_closed, log_integral_quadrature};
pub use lyapunov::{
    acceleration_profile, default_epsilon_grid, fit_affine_segments, herman_check, herman_spectral_radius, iterate,
    lyapunov_estimate, lyapunov_exact, lyapunov_table, AffineSegment, HermanReport, LyapunovEstimate,
    LyapunovProfile, LyapunovRow, AFFINE_TOL, LYAPUNOV_BLOCKS, MIN_LYAPUNOV_STEPS, MIN_SEGMENT_POINTS,
};
pub use mat2::Mat2c;
pub use realify::{
    argument_derivative_check, monotonicity_coefficients, monotonicity_discriminant, realify, realify_at,
    realify_closed_form, x_matrix, y_matrix, ArgumentDerivative,
};
pub use transfer::{solve_by_transfer, transfer_t, SINGULAR_COIN_TOL};
pub use variants::{
    cocycle_eval, cocycle_map, cocycle_maps, reflection_check, CocycleA, CocycleARealified, CocycleASharp, CocycleB,
    CocycleMap, CocycleSpec, ComplexPhase, SINGULAR_TOL,
};

pub use num_complex::Complex64 as C64;
