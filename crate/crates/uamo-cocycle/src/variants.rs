use num_complex::Complex64 as C64;
use uamo_core::{CouplingPair, Frequency, Result, UamoError, TAU};

use crate::mat2::Mat2c;
use crate::realify::realify_at;

/// A complexified phase `θ + iε`, stored through `cos 2πθ`, `sin 2πθ` and
/// `ε` so that orbit phases reduced mod 1 never lose precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPhase {
    pub cos: f64,
    pub sin: f64,
    pub eps: f64,
}

impl ComplexPhase {
    pub fn new(theta: f64, eps: f64) -> Self {
        let (sin, cos) = (TAU * theta).sin_cos();
        Self { cos, sin, eps }
    }

    /// `c(θ+iε) = cos(2π(θ+iε))`.
    pub fn c(&self) -> C64 {
        let y = TAU * self.eps;
        C64::new(self.cos * y.cosh(), -self.sin * y.sinh())
    }

    /// `s(θ+iε) = sin(2π(θ+iε))`.
    pub fn s(&self) -> C64 {
        let y = TAU * self.eps;
        C64::new(self.sin * y.cosh(), self.cos * y.sinh())
    }

    /// The complex-conjugate phase `θ − iε`.
    pub fn conj(&self) -> Self {
        Self { eps: -self.eps, ..*self }
    }
}

/// A transfer-matrix cocycle map `θ ↦ M(θ)` of the UAMO family, evaluated at
/// complexified phases.
pub trait CocycleMap: Send + Sync {
    /// Registry name.
    fn name(&self) -> &'static str;

    /// `M_z(θ + iε)` for the couplings `pair`.
    fn eval(&self, pair: &CouplingPair, z: C64, phase: &ComplexPhase) -> Result<Mat2c>;
}

/// Denominators with modulus at or below this are reported as singular.
pub const SINGULAR_TOL: f64 = 1e-13;

/// The transfer cocycle
///
/// ```text
/// A_z(θ) = 1/(λ₂c − iλ₂′) [[λ₁⁻¹z⁻¹ + 2λ₁′λ₁⁻¹λ₂s + zλ₁′²λ₁⁻¹,  −λ₂s − λ₁′z],
///                           [−λ₂s − λ₁′z,                       λ₁z        ]]
/// ```
pub struct CocycleA;

/// The regularized cocycle `B_z = [2(λ₂c − iλ₂′)/(1+λ₂′)] A_z`, analytic in
/// the phase for every `λ₂ ∈ [0, 1]`.
pub struct CocycleB;

/// The dual cocycle `A♯_{λ₁,λ₂,z}(ξ) = conj(A_{λ₂,λ₁,1/z̄}(ξ̄))`.
pub struct CocycleASharp;

/// The real cocycle `A^ℛ = Y(λ₁)* (A/√det A) Y(λ₁)` with the factor-wise
/// principal square root.
pub struct CocycleARealified;

fn numerator(pair: &CouplingPair, z: C64, s: C64) -> Result<Mat2c> {
    let (l1, l1p, l2) = (pair.lambda1(), pair.lambda1p(), pair.lambda2());
    if l1 == 0.0 {
        return Err(UamoError::invalid("the transfer cocycle is undefined for λ₁ = 0"));
    }
    if z == C64::new(0.0, 0.0) {
        return Err(UamoError::invalid("spectral parameter z must be nonzero"));
    }
    let off = -(s * l2 + z * l1p);
    let a = z.inv() / l1 + s * (2.0 * l1p * l2 / l1) + z * (l1p * l1p / l1);
    Ok(Mat2c::new(a, off, off, z * l1))
}

impl CocycleMap for CocycleA {
    fn name(&self) -> &'static str {
        "A"
    }

    fn eval(&self, pair: &CouplingPair, z: C64, phase: &ComplexPhase) -> Result<Mat2c> {
        let den = phase.c() * pair.lambda2() - C64::new(0.0, pair.lambda2p());
        if den.norm() <= SINGULAR_TOL {
            return Err(UamoError::singular("A-cocycle denominator λ₂c − iλ₂′ vanishes"));
        }
        Ok(numerator(pair, z, phase.s())?.scale(den.inv()))
    }
}

impl CocycleMap for CocycleB {
    fn name(&self) -> &'static str {
        "B"
    }

    fn eval(&self, pair: &CouplingPair, z: C64, phase: &ComplexPhase) -> Result<Mat2c> {
        let f = 2.0 / (1.0 + pair.lambda2p());
        Ok(numerator(pair, z, phase.s())?.scale(C64::new(f, 0.0)))
    }
}

impl CocycleMap for CocycleASharp {
    fn name(&self) -> &'static str {
        "A_sharp"
    }

    fn eval(&self, pair: &CouplingPair, z: C64, phase: &ComplexPhase) -> Result<Mat2c> {
        let w = z.conj().inv();
        Ok(CocycleA.eval(&pair.swapped(), w, &phase.conj())?.conj())
    }
}

impl CocycleMap for CocycleARealified {
    fn name(&self) -> &'static str {
        "A_realified"
    }

    fn eval(&self, pair: &CouplingPair, z: C64, phase: &ComplexPhase) -> Result<Mat2c> {
        realify_at(pair, z, phase)
    }
}

static REGISTRY: [&dyn CocycleMap; 4] = [&CocycleA, &CocycleB, &CocycleASharp, &CocycleARealified];

/// All registered cocycle maps, in registration order.
pub fn cocycle_maps() -> &'static [&'static dyn CocycleMap] {
    &REGISTRY
}

/// Looks a cocycle map up by its registry name.
pub fn cocycle_map(name: &str) -> Result<&'static dyn CocycleMap> {
    REGISTRY.iter().copied().find(|m| m.name() == name).ok_or_else(|| {
        let known: Vec<_> = REGISTRY.iter().map(|m| m.name()).collect();
        UamoError::invalid(format!("unknown cocycle variant {name:?}; known: {}", known.join(", ")))
    })
}

/// A cocycle map together with its parameters: couplings, spectral
/// parameter `z` and imaginary phase shift `ε`.
#[derive(Clone, Copy)]
pub struct CocycleSpec {
    pub map: &'static dyn CocycleMap,
    pub pair: CouplingPair,
    pub z: C64,
    pub epsilon: f64,
}

impl std::fmt::Debug for CocycleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CocycleSpec")
            .field("variant", &self.map.name())
            .field("pair", &self.pair)
            .field("z", &self.z)
            .field("epsilon", &self.epsilon)
            .finish()
    }
}

impl CocycleSpec {
    /// Builds a spec for the registered variant `name`.
    pub fn new(name: &str, pair: CouplingPair, z: C64, epsilon: f64) -> Result<Self> {
        let map = cocycle_map(name)?;
        if !epsilon.is_finite() {
            return Err(UamoError::invalid("ε must be finite"));
        }
        Ok(Self { map, pair, z, epsilon })
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        Self { epsilon, ..*self }
    }

    /// `M_z(θ + iε)`.
    pub fn eval(&self, theta: f64) -> Result<Mat2c> {
        self.map.eval(&self.pair, self.z, &ComplexPhase::new(theta, self.epsilon))
    }

    /// `M_z(nΦ + θ + iε)` with the orbit phase reduced exactly.
    pub fn eval_orbit(&self, freq: &Frequency, n: i64, theta: f64) -> Result<Mat2c> {
        let (cos, sin) = freq.orbit_cos_sin(n, theta);
        self.map.eval(&self.pair, self.z, &ComplexPhase { cos, sin, eps: self.epsilon })
    }
}

/// `M_z(θ + iε)` for the variant of this spec.
pub fn cocycle_eval(spec: &CocycleSpec, theta: f64) -> Result<Mat2c> {
    spec.eval(theta)
}

/// Residuals of the reflection identities
/// `R⁻¹A_z(θ)⁻¹R = −A_z(½−θ)` and `R⁻¹A♯_z(θ)⁻¹R = −A♯_z(½−θ)` with
/// `R = [[0, 1], [−1, 0]]`; returns the larger of the two.
pub fn reflection_check(pair: &CouplingPair, z: C64, theta: f64) -> Result<f64> {
    let phase = ComplexPhase::new(theta, 0.0);
    let refl = ComplexPhase::new(0.5 - theta, 0.0);
    let mut worst: f64 = 0.0;
    for map in [&CocycleA as &dyn CocycleMap, &CocycleASharp] {
        let m = map.eval(pair, z, &phase)?;
        let inv = m.inverse().ok_or_else(|| UamoError::singular("cocycle not invertible"))?;
        // R⁻¹ M R for R = [[0,1],[−1,0]], R⁻¹ = [[0,−1],[1,0]].
        let conj = Mat2c::new(inv.d, -inv.c, -inv.b, inv.a);
        let target = -map.eval(pair, z, &refl)?;
        worst = worst.max(conj.max_abs_diff(&target));
    }
    Ok(worst)
}
