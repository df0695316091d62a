//! Aubry duality at the level of solutions.
//!
//! Eigenvectors of the walk `W_{λ₁,λ₂,Φ,θ}` are mapped to solutions of the
//! dual equation `W♯φ = zφ`, where `W♯ = W_{λ₂,λ₁,Φ,ξ}^⊤`, by evaluating the
//! Fourier series `ψ̌(x) = Σ e^{2πinx}ψ_n` along the orbit `x = mΦ + ξ`.
//! Localized eigenpairs come from dense diagonalization of the exactly
//! unitary periodic wrap at a rational frequency.

mod dual;
mod eigen;

pub use dual::{
    dual_residual, dual_rotation, dual_solution, duality_sweep, duality_table, summarize, xi_grid, DualResidual,
    DualSolution, DualitySummary, DualityRow,
};
pub use eigen::{
    decay_rate, localized_eigenpairs, participation_ratio, ring_eigenpairs, tail_mass, truncate, truncation_radius,
    EigenPair, DEGENERACY_TOL, NOISE_FLOOR,
};

pub use num_complex::Complex64 as C64;
