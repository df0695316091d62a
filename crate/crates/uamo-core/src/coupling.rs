use crate::error::{Result, UamoError};

/// Complementary coupling `λ′ = √(1−λ²)`.
///
/// Computed as `√((1−λ)(1+λ))`, which keeps full relative accuracy as
/// `λ → 1`. Exact at the endpoints: `complement(0) = 1`, `complement(1) = 0`.
pub fn complement(lambda: f64) -> Result<f64> {
    check_unit("lambda", lambda)?;
    Ok(((1.0 - lambda) * (1.0 + lambda)).sqrt())
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(UamoError::invalid(format!("{name} = {x} must lie in [0, 1]")))
    }
}

/// Effective coupling `λ₀`, the quantity that separates the three regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lambda0 {
    /// `λ₁ > 0`: `λ₀ = λ₂(1+λ₁′)/(λ₁(1+λ₂′))`.
    Finite(f64),
    /// `λ₁ = 0 < λ₂`.
    Infinite,
    /// `λ₁ = λ₂ = 0`: the walk is the on-site rotation with spectrum `{±i}`
    /// and no coupling constant is assigned.
    Undefined,
}

impl Lambda0 {
    /// `log λ₀` where it exists (`+∞` for [`Lambda0::Infinite`]).
    pub fn ln(self) -> Option<f64> {
        match self {
            Lambda0::Finite(x) => Some(x.ln()),
            Lambda0::Infinite => Some(f64::INFINITY),
            Lambda0::Undefined => None,
        }
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            Lambda0::Finite(x) => Some(x),
            _ => None,
        }
    }
}

/// Regime of a coupling pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `λ₁ > λ₂`: absolutely continuous spectrum, ballistic transport.
    Subcritical,
    /// `λ₁ = λ₂`.
    Critical,
    /// `λ₁ < λ₂`: Anderson localization for almost every phase.
    Supercritical,
}

/// The two coupling constants `λ₁` (shift) and `λ₂` (coin) with their
/// derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingPair {
    lambda1: f64,
    lambda2: f64,
    lambda1p: f64,
    lambda2p: f64,
}

impl CouplingPair {
    /// Validates `λ₁, λ₂ ∈ [0, 1]` and precomputes the complements.
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        Ok(Self {
            lambda1p: complement(lambda1)?,
            lambda2p: complement(lambda2)?,
            lambda1,
            lambda2,
        })
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    /// `λ₁′ = √(1−λ₁²)`.
    pub fn lambda1p(&self) -> f64 {
        self.lambda1p
    }

    /// `λ₂′ = √(1−λ₂²)`.
    pub fn lambda2p(&self) -> f64 {
        self.lambda2p
    }

    /// The pair with the roles of shift and coin exchanged, `(λ₂, λ₁)`.
    pub fn swapped(&self) -> Self {
        Self {
            lambda1: self.lambda2,
            lambda2: self.lambda1,
            lambda1p: self.lambda2p,
            lambda2p: self.lambda1p,
        }
    }

    /// Effective coupling `λ₀`.
    pub fn lambda0(&self) -> Lambda0 {
        if self.lambda1 > 0.0 {
            Lambda0::Finite(
                self.lambda2 * (1.0 + self.lambda1p) / (self.lambda1 * (1.0 + self.lambda2p)),
            )
        } else if self.lambda2 > 0.0 {
            Lambda0::Infinite
        } else {
            Lambda0::Undefined
        }
    }

    pub fn regime(&self) -> Regime {
        if self.lambda1 > self.lambda2 {
            Regime::Subcritical
        } else if self.lambda1 < self.lambda2 {
            Regime::Supercritical
        } else {
            Regime::Critical
        }
    }
}
