//! Spectra of the unitary almost-Mathieu walk at rational frequency.
//!
//! For `Φ = p/q` the walk is `q`-periodic and its spectrum is a union of at
//! most `2q` arcs. This crate computes them two ways: by diagonalizing the
//! Bloch matrices (the walk on one period with quasi-momentum `k`), and by
//! the discriminant `D(z)` of the one-period transfer matrix, with
//! `z ∈ σ ⇔ |D(z)| ≤ 2`. On top of single band sets it builds unions over
//! phases, the butterfly over all `p/q`, measure trends along convergents
//! and the coupling-swap symmetry check.

mod bands;
mod bandset;
mod bloch;
mod discriminant;

pub use bands::{
    band_measure_trend, band_set, band_set_over, band_set_union, bloch_band_set, bloch_band_set_over, butterfly, butterfly_table,
    symmetry_check, ButterflyRow, MeasureTrend, ThetaMode, SWEEP_TOL,
};
pub use bandset::{circle_distance, wrap_angle, BandSet, MERGE_TOL};
pub use bloch::{bloch_eigenangles, bloch_matrix, BlochMatrix};
pub use discriminant::{discriminant, monodromy, period_phase};
