use num_complex::Complex64 as C64;
use uamo_core::{complement, CouplingPair, Frequency, Result};

use crate::field::SpinorField;

/// Coin matrix `[[q11, q12], [q21, q22]]` acting on the spin at one site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coin2x2 {
    pub q11: C64,
    pub q12: C64,
    pub q21: C64,
    pub q22: C64,
}

impl Coin2x2 {
    /// The UAMO coin for `(cos, sin)` of the phase `2π(nΦ+θ)`:
    ///
    /// ```text
    /// [[λ₂c + iλ₂′, −λ₂s],
    ///  [λ₂s,        λ₂c − iλ₂′]]
    /// ```
    pub fn from_cos_sin(lambda2: f64, lambda2p: f64, c: f64, s: f64) -> Self {
        Self {
            q11: C64::new(lambda2 * c, lambda2p),
            q12: C64::new(-lambda2 * s, 0.0),
            q21: C64::new(lambda2 * s, 0.0),
            q22: C64::new(lambda2 * c, -lambda2p),
        }
    }

    pub fn det(&self) -> C64 {
        self.q11 * self.q22 - self.q12 * self.q21
    }

    /// `max |(Q*Q − I)_{jk}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let a = self.q11.norm_sqr() + self.q21.norm_sqr() - 1.0;
        let d = self.q12.norm_sqr() + self.q22.norm_sqr() - 1.0;
        let b = self.q11.conj() * self.q12 + self.q21.conj() * self.q22;
        a.abs().max(d.abs()).max(b.norm())
    }

    /// `Q (a, b)ᵀ`.
    #[inline]
    pub fn apply(&self, a: C64, b: C64) -> (C64, C64) {
        (self.q11 * a + self.q12 * b, self.q21 * a + self.q22 * b)
    }

    /// `Qᵀ (a, b)ᵀ`.
    #[inline]
    pub fn apply_transpose(&self, a: C64, b: C64) -> (C64, C64) {
        (self.q11 * a + self.q21 * b, self.q12 * a + self.q22 * b)
    }
}

/// Coin `Q_n` of the walk with couplings `pair`, frequency `Φ` and phase `θ`.
pub fn coin(pair: &CouplingPair, freq: &Frequency, theta: f64, n: i64) -> Coin2x2 {
    let (c, s) = freq.orbit_cos_sin(n, theta);
    Coin2x2::from_cos_sin(pair.lambda2(), pair.lambda2p(), c, s)
}

fn coins_on(pair: &CouplingPair, freq: &Frequency, theta: f64, n_min: i64, n_max: i64) -> Vec<Coin2x2> {
    (n_min..=n_max).map(|n| coin(pair, freq, theta, n)).collect()
}

/// Coupled shift `S_λ`: `(Sψ)_n⁺ = λψ_{n−1}⁺ − λ′ψ_n⁻`,
/// `(Sψ)_n⁻ = λψ_{n+1}⁻ + λ′ψ_n⁺`.
///
/// The output window is the input window grown by one site on each side, so
/// the result is exact (no truncation).
pub fn shift_apply(lambda: f64, psi: &SpinorField) -> Result<SpinorField> {
    let lp = complement(lambda)?;
    Ok(shift_with(lambda, lp, psi.n_min(), psi.plus(), psi.minus()))
}

fn shift_with(lambda: f64, lambdap: f64, n_min: i64, plus: &[C64], minus: &[C64]) -> SpinorField {
    let len = plus.len();
    let zero = C64::new(0.0, 0.0);
    let mut out_p = vec![zero; len + 2];
    let mut out_m = vec![zero; len + 2];
    // Output index j corresponds to site n_min − 1 + j; input index i to n_min + i.
    for i in 0..len {
        out_p[i + 2] += lambda * plus[i];
        out_p[i + 1] -= lambdap * minus[i];
        out_m[i] += lambda * minus[i];
        out_m[i + 1] += lambdap * plus[i];
    }
    SpinorField::from_components(n_min - 1, out_p, out_m).expect("non-empty window")
}

/// `Wψ = S_{λ₁}(Qψ)` on the window grown by one site each side.
///
/// Coordinate form: `(Wψ)_n⁺ = λ₁(q¹¹_{n−1}ψ⁺_{n−1} + q¹²_{n−1}ψ⁻_{n−1}) − λ₁′(q²¹_nψ⁺_n + q²²_nψ⁻_n)`
/// and `(Wψ)_n⁻ = λ₁(q²¹_{n+1}ψ⁺_{n+1} + q²²_{n+1}ψ⁻_{n+1}) + λ₁′(q¹¹_nψ⁺_n + q¹²_nψ⁻_n)`.
pub fn walk_apply(pair: &CouplingPair, freq: &Frequency, theta: f64, psi: &SpinorField) -> SpinorField {
    let coins = coins_on(pair, freq, theta, psi.n_min(), psi.n_max());
    let (plus, minus): (Vec<C64>, Vec<C64>) = coins
        .iter()
        .zip(psi.plus().iter().zip(psi.minus()))
        .map(|(q, (&a, &b))| q.apply(a, b))
        .unzip();
    shift_with(pair.lambda1(), pair.lambda1p(), psi.n_min(), &plus, &minus)
}

/// `W^⊤ψ = Q^⊤(S_{λ₁}^⊤ψ)` on the window grown by one site each side.
///
/// Coordinate form: `(W^⊤ψ)_n⁺ = q¹¹_n(λ₁ψ⁺_{n+1} + λ₁′ψ⁻_n) + q²¹_n(−λ₁′ψ⁺_n + λ₁ψ⁻_{n−1})`
/// and `(W^⊤ψ)_n⁻ = q¹²_n(λ₁ψ⁺_{n+1} + λ₁′ψ⁻_n) + q²²_n(−λ₁′ψ⁺_n + λ₁ψ⁻_{n−1})`.
pub fn walk_transpose_apply(pair: &CouplingPair, freq: &Frequency, theta: f64, psi: &SpinorField) -> SpinorField {
    let (l, lp) = (pair.lambda1(), pair.lambda1p());
    let (lo, hi) = (psi.n_min() - 1, psi.n_max() + 1);
    let coins = coins_on(pair, freq, theta, lo, hi);
    let zero = C64::new(0.0, 0.0);
    let mut out_p = vec![zero; coins.len()];
    let mut out_m = vec![zero; coins.len()];
    for (j, q) in coins.iter().enumerate() {
        let n = lo + j as i64;
        let (pn, mn) = psi.get(n);
        let up = l * psi.get(n + 1).0 + lp * mn;
        let down = -lp * pn + l * psi.get(n - 1).1;
        let (a, b) = q.apply_transpose(up, down);
        out_p[j] = a;
        out_m[j] = b;
    }
    SpinorField::from_components(lo, out_p, out_m).expect("non-empty window")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Spin;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn coin_special_cases() {
        let pair = CouplingPair::new(0.4, 1.0).unwrap();
        let q = coin(&pair, &Frequency::golden(), 0.0, 0);
        assert_eq!((q.q11, q.q12, q.q21, q.q22), (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)));
        let pair = CouplingPair::new(0.4, 0.0).unwrap();
        for n in -3..3 {
            let q = coin(&pair, &Frequency::golden(), 0.3, n);
            assert_eq!(q.q11, c(0.0, 1.0));
            assert_eq!(q.q22, c(0.0, -1.0));
            assert_eq!(q.q12.norm() + q.q21.norm(), 0.0);
        }
    }

    #[test]
    fn shift_examples() {
        let up = SpinorField::delta(0, Spin::Up);
        let down = SpinorField::delta(0, Spin::Down);
        // λ = 1: pure spin-conditioned translation.
        let s = shift_apply(1.0, &up).unwrap();
        assert_eq!(s.get(1), (c(1.0, 0.0), c(0.0, 0.0)));
        assert_eq!(s.norm_sqr(), 1.0);
        let s = shift_apply(1.0, &down).unwrap();
        assert_eq!(s.get(-1), (c(0.0, 0.0), c(1.0, 0.0)));
        // λ = 0: S₀δ_n^± = ±δ_n^∓.
        let s = shift_apply(0.0, &up).unwrap();
        assert_eq!(s.get(0), (c(0.0, 0.0), c(1.0, 0.0)));
        let s = shift_apply(0.0, &down).unwrap();
        assert_eq!(s.get(0), (c(-1.0, 0.0), c(0.0, 0.0)));
        // λ = 0.6: 0.6 δ₁⁺ + 0.8 δ₀⁻.
        let s = shift_apply(0.6, &up).unwrap();
        assert!((s.get(1).0 - c(0.6, 0.0)).norm() < 1e-16);
        assert!((s.get(0).1 - c(0.8, 0.0)).norm() < 1e-16);
        assert!(s.get(0).0.norm() + s.get(1).1.norm() + s.get(-1).0.norm() + s.get(-1).1.norm() == 0.0);
    }

    #[test]
    fn ballistic_walk_example() {
        let pair = CouplingPair::new(1.0, 0.0).unwrap();
        let w = walk_apply(&pair, &Frequency::golden(), 0.0, &SpinorField::delta(0, Spin::Up));
        assert_eq!(w.get(1), (c(0.0, 1.0), c(0.0, 0.0)));
        assert_eq!(w.norm_sqr(), 1.0);
    }

    #[test]
    fn zero_shift_coupling_acts_on_site() {
        let pair = CouplingPair::new(0.0, 0.7).unwrap();
        let f = Frequency::golden();
        for n in -2..=2 {
            for spin in [Spin::Up, Spin::Down] {
                let w = walk_apply(&pair, &f, 0.1, &SpinorField::delta(n, spin));
                assert_eq!(w.support().map(|(a, b)| a == n && b == n), Some(true));
            }
        }
    }
}
