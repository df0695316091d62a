use num_complex::Complex64 as C64;

/// Complex 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2c {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2c {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { a, b, c, d }
    }

    /// Real matrix `[[a, b], [c, d]]`.
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(d, 0.0))
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Entrywise complex conjugate (not the adjoint).
    pub fn conj(&self) -> Self {
        Self::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    /// Inverse, or `None` when the determinant vanishes exactly.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det == C64::new(0.0, 0.0) {
            return None;
        }
        let inv = det.inv();
        Some(Self::new(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv))
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm()).max(self.d.norm())
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Operator 2-norm: the largest singular value.
    pub fn norm(&self) -> f64 {
        let f = self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr();
        let det = self.det().norm();
        let disc = ((f - 2.0 * det) * (f + 2.0 * det)).max(0.0);
        ((f + disc.sqrt()) / 2.0).sqrt()
    }

    /// Largest imaginary part among the entries.
    pub fn max_imag(&self) -> f64 {
        self.a.im.abs().max(self.b.im.abs()).max(self.c.im.abs()).max(self.d.im.abs())
    }
}

impl std::ops::Mul for Mat2c {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl std::ops::Add for Mat2c {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl std::ops::Sub for Mat2c {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl std::ops::Neg for Mat2c {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_diagonal_and_rank_one() {
        let m = Mat2c::real(3.0, 0.0, 0.0, -2.0);
        assert!((m.norm() - 3.0).abs() < 1e-15);
        let r = Mat2c::real(1.0, 1.0, 1.0, 1.0);
        assert!((r.norm() - 2.0).abs() < 1e-15);
        let i = C64::new(0.0, 1.0);
        let u = Mat2c::new(i, C64::new(0.0, 0.0), C64::new(0.0, 0.0), -i);
        assert!((u.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat2c::new(C64::new(1.0, 2.0), C64::new(0.5, -1.0), C64::new(-3.0, 0.1), C64::new(2.0, 2.0));
        let p = m * m.inverse().unwrap();
        assert!(p.max_abs_diff(&Mat2c::identity()) < 1e-15);
        assert!(Mat2c::real(1.0, 2.0, 2.0, 4.0).inverse().is_none());
    }
}
