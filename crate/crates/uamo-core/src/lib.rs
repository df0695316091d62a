//! Parameter domain of the unitary almost-Mathieu operator (UAMO).
//!
//! The UAMO is the split-step quantum walk `W = S_{λ₁} Q_{λ₂,Φ,θ}` on
//! `ℓ²(ℤ) ⊗ ℂ²`. This crate holds the pieces every other crate of the
//! workspace consumes:
//!
//! - [`CouplingPair`] with the derived complements `λ′ = √(1−λ²)` and the
//!   effective coupling `λ₀ = λ₂(1+λ₁′)/(λ₁(1+λ₂′))`,
//! - [`Frequency`] (rational or real), [`Phase`] and [`SpectralPoint`],
//! - continued-fraction convergents and the finite-sample Liouville
//!   exponent estimate,
//! - orbit phases `nΦ+θ mod 1` reduced without floating-point drift,
//! - fixed-precision float formatting shared by all CSV/JSON writers.

mod contfrac;
mod coupling;
mod error;
mod frequency;
pub mod io;

pub use contfrac::{beta_lower_bound, continued_fraction, convergents, tail_growth_rate};
pub use coupling::{complement, CouplingPair, Lambda0, Regime};
pub use error::{Result, UamoError};
pub use frequency::{Frequency, Phase, SpectralPoint, GOLDEN_MEAN};

/// `2π`, re-exported for readability of phase formulas.
pub const TAU: f64 = std::f64::consts::TAU;
