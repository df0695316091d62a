use num_complex::Complex64 as C64;
use uamo_core::{Result, UamoError};

/// Internal spin label of a basis vector `δ_n^±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

/// A two-component wavefunction on the window `[n_min, n_max]` of `ℤ`.
///
/// Coordinates outside the window are zero. The window is never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    n_min: i64,
    plus: Vec<C64>,
    minus: Vec<C64>,
}

impl SpinorField {
    /// The zero field on `[n_min, n_max]`.
    pub fn zeros(n_min: i64, n_max: i64) -> Result<Self> {
        if n_max < n_min {
            return Err(UamoError::invalid(format!("empty window [{n_min}, {n_max}]")));
        }
        let len = (n_max - n_min + 1) as usize;
        Ok(Self {
            n_min,
            plus: vec![C64::new(0.0, 0.0); len],
            minus: vec![C64::new(0.0, 0.0); len],
        })
    }

    /// Builds a field from its two component arrays.
    pub fn from_components(n_min: i64, plus: Vec<C64>, minus: Vec<C64>) -> Result<Self> {
        if plus.is_empty() || plus.len() != minus.len() {
            return Err(UamoError::invalid("components must be non-empty and of equal length"));
        }
        Ok(Self { n_min, plus, minus })
    }

    /// The unit vector `δ_n^s` on the one-site window `[n, n]`.
    pub fn delta(n: i64, spin: Spin) -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        match spin {
            Spin::Up => Self { n_min: n, plus: vec![one], minus: vec![zero] },
            Spin::Down => Self { n_min: n, plus: vec![zero], minus: vec![one] },
        }
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.plus.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    /// Always false: windows hold at least one site.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn plus(&self) -> &[C64] {
        &self.plus
    }

    pub fn minus(&self) -> &[C64] {
        &self.minus
    }

    pub fn plus_mut(&mut self) -> &mut [C64] {
        &mut self.plus
    }

    pub fn minus_mut(&mut self) -> &mut [C64] {
        &mut self.minus
    }

    /// `(ψ_n⁺, ψ_n⁻)`, zero outside the window.
    pub fn get(&self, n: i64) -> (C64, C64) {
        match self.index(n) {
            Some(i) => (self.plus[i], self.minus[i]),
            None => (C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
        }
    }

    /// Sets `(ψ_n⁺, ψ_n⁻)`; `n` must be inside the window.
    pub fn set(&mut self, n: i64, value: (C64, C64)) -> Result<()> {
        let i = self
            .index(n)
            .ok_or_else(|| UamoError::Window(format!("site {n} outside [{}, {}]", self.n_min, self.n_max())))?;
        self.plus[i] = value.0;
        self.minus[i] = value.1;
        Ok(())
    }

    fn index(&self, n: i64) -> Option<usize> {
        let i = n - self.n_min;
        (i >= 0 && (i as usize) < self.plus.len()).then_some(i as usize)
    }

    /// `‖ψ‖² = Σ |ψ_n⁺|² + |ψ_n⁻|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.plus.iter().chain(&self.minus).map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Divides by the norm; refuses the zero field.
    pub fn normalized(mut self) -> Result<Self> {
        let nrm = self.norm();
        if nrm == 0.0 {
            return Err(UamoError::invalid("cannot normalize the zero field"));
        }
        for c in self.plus.iter_mut().chain(self.minus.iter_mut()) {
            *c /= nrm;
        }
        Ok(self)
    }

    /// Smallest and largest site carrying a nonzero coordinate.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz = |i: &usize| self.plus[*i] != C64::new(0.0, 0.0) || self.minus[*i] != C64::new(0.0, 0.0);
        let first = (0..self.len()).find(nz)?;
        let last = (0..self.len()).rev().find(nz)?;
        Some((self.n_min + first as i64, self.n_min + last as i64))
    }

    /// The same field on a larger window `[n_min, n_max]` (zero padded).
    pub fn padded(&self, n_min: i64, n_max: i64) -> Result<Self> {
        if n_min > self.n_min || n_max < self.n_max() {
            return Err(UamoError::Window("padding must enlarge the window".into()));
        }
        let mut out = Self::zeros(n_min, n_max)?;
        let off = (self.n_min - n_min) as usize;
        out.plus[off..off + self.len()].copy_from_slice(&self.plus);
        out.minus[off..off + self.len()].copy_from_slice(&self.minus);
        Ok(out)
    }

    /// Restriction to `[n_min, n_max]` (zero where the old window had no data).
    pub fn restricted(&self, n_min: i64, n_max: i64) -> Result<Self> {
        let mut out = Self::zeros(n_min, n_max)?;
        for n in n_min..=n_max {
            out.set(n, self.get(n))?;
        }
        Ok(out)
    }

    /// Translation `(Uψ)_n = ψ_{n−m}`: every coordinate moves `m` sites right.
    pub fn translated(&self, m: i64) -> Self {
        Self {
            n_min: self.n_min + m,
            plus: self.plus.clone(),
            minus: self.minus.clone(),
        }
    }

    /// Largest coordinate difference `max_n |ψ_n − φ_n|` over the union of
    /// both windows.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let lo = self.n_min.min(other.n_min);
        let hi = self.n_max().max(other.n_max());
        (lo..=hi)
            .map(|n| {
                let (a, b) = self.get(n);
                let (c, d) = other.get(n);
                (a - c).norm().max((b - d).norm())
            })
            .fold(0.0, f64::max)
    }

    /// Position distribution `p_n = |ψ_n⁺|² + |ψ_n⁻|²` with site labels.
    pub fn position_weights(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        (0..self.len()).map(move |i| (self.n_min + i as i64, self.plus[i].norm_sqr() + self.minus[i].norm_sqr()))
    }
}
