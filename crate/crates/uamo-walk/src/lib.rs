//! The one-dimensional unitary almost-Mathieu walk `W = S_{λ₁} Q_{λ₂,Φ,θ}`.
//!
//! Basis vectors are `δ_n^±`, `n ∈ ℤ`. The coupled shift acts by
//!
//! ```text
//! S_λ δ_n^± = λ δ_{n±1}^± ± λ′ δ_n^∓
//! ```
//!
//! and the coin at site `n` is [`coin`], a unimodular unitary built from
//! `cos, sin` of `2π(nΦ+θ)`. This crate provides
//!
//! - banded application of `W` and of its transpose `W^⊤` in coordinates,
//! - exact finite-window dynamics using the one-site-per-step light cone,
//! - dense matrix realizations (truncated window, periodic wrap with a
//!   Bloch twist) that serve as oracles and as input to eigensolvers.

mod dense;
mod dynamics;
mod field;
mod operator;

pub use dense::{dense_window_matrix, periodic_matrix, Basis};
pub use dynamics::{evolve, evolve_in_window, evolve_state, scaling_exponent, MomentSeries, PowerLawFit};
pub use field::{Spin, SpinorField};
pub use operator::{coin, shift_apply, walk_apply, walk_transpose_apply, Coin2x2};

pub use num_complex::Complex64 as C64;
