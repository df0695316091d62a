use std::fmt;
use std::str::FromStr;

use crate::contfrac::convergents;
use crate::error::{Result, UamoError};
use crate::TAU;

/// `(√5−1)/2`, the inverse golden ratio.
pub const GOLDEN_MEAN: f64 = 0.618_033_988_749_894_8;

/// Rotation number `Φ` of the coin sequence.
///
/// Rational frequencies are kept in lowest terms with `0 ≤ p < q`, so that
/// orbit phases can be reduced exactly in integer arithmetic. A real
/// frequency stands for an irrational number; it is used either directly
/// (orbit phases) or through its convergents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frequency {
    Rational { p: u64, q: u64 },
    Real(f64),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Frequency {
    /// `p/q` reduced to lowest terms and to `[0, 1)`.
    pub fn rational(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(UamoError::invalid("denominator q must be positive"));
        }
        let p = p % q;
        let g = gcd(p, q);
        Ok(Frequency::Rational { p: p / g, q: q / g })
    }

    /// A real frequency in `(0, 1)`.
    pub fn real(x: f64) -> Result<Self> {
        if x.is_finite() && x > 0.0 && x < 1.0 {
            Ok(Frequency::Real(x))
        } else {
            Err(UamoError::invalid(format!("real frequency {x} must lie in (0, 1)")))
        }
    }

    /// The inverse golden mean `(√5−1)/2`.
    pub fn golden() -> Self {
        Frequency::Real(GOLDEN_MEAN)
    }

    /// Floating-point value of `Φ`.
    pub fn value(&self) -> f64 {
        match *self {
            Frequency::Rational { p, q } => p as f64 / q as f64,
            Frequency::Real(x) => x,
        }
    }

    /// Period of the coin sequence, if `Φ` is rational.
    pub fn period(&self) -> Option<u64> {
        match *self {
            Frequency::Rational { q, .. } => Some(q),
            Frequency::Real(_) => None,
        }
    }

    /// First `k` continued-fraction convergents of `Φ`.
    pub fn convergents(&self, k: usize) -> Vec<(u64, u64)> {
        match *self {
            Frequency::Rational { p, q } => crate::contfrac::rational_convergents(p, q, k),
            Frequency::Real(x) => convergents(x, k),
        }
    }

    /// Fractional part of `nΦ` in `[0, 1)`.
    ///
    /// Rational frequencies are reduced in integer arithmetic. For real
    /// frequencies the rounding error of the product `n·Φ` is recovered with a
    /// fused multiply-add, so the result is accurate to a few ulps of 1 even
    /// for `|n| ~ 10⁹`.
    pub fn orbit_fraction(&self, n: i64) -> f64 {
        match *self {
            Frequency::Rational { p, q } => {
                let r = (n as i128 * p as i128).rem_euclid(q as i128);
                r as f64 / q as f64
            }
            Frequency::Real(x) => {
                let nf = n as f64;
                let prod = nf * x;
                let err = nf.mul_add(x, -prod);
                frac(frac(prod) + err)
            }
        }
    }

    /// Orbit phase `nΦ + θ mod 1` in `[0, 1)`.
    pub fn orbit_phase(&self, n: i64, theta: f64) -> f64 {
        frac(self.orbit_fraction(n) + theta)
    }

    /// `(cos, sin)` of `2π(nΦ+θ)`.
    pub fn orbit_cos_sin(&self, n: i64, theta: f64) -> (f64, f64) {
        let (s, c) = (TAU * self.orbit_phase(n, theta)).sin_cos();
        (c, s)
    }
}

/// Fractional part in `[0, 1)`.
pub(crate) fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frequency::Rational { p, q } => write!(f, "{p}/{q}"),
            Frequency::Real(x) => write!(f, "{x:.17e}"),
        }
    }
}

impl FromStr for Frequency {
    type Err = UamoError;

    /// Accepts `p/q`, a decimal in `(0, 1)` or the keyword `golden`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("golden") {
            return Ok(Frequency::golden());
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| UamoError::invalid(format!("bad numerator in '{s}'")))?;
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| UamoError::invalid(format!("bad denominator in '{s}'")))?;
            return Frequency::rational(p, q);
        }
        let x: f64 = s
            .parse()
            .map_err(|_| UamoError::invalid(format!("cannot parse frequency '{s}'")))?;
        if x == 0.0 {
            return Frequency::rational(0, 1);
        }
        Frequency::real(x)
    }
}

/// A phase `θ ∈ 𝕋`, stored reduced to `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase(f64);

impl Phase {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(UamoError::invalid("phase must be finite"));
        }
        Ok(Phase(frac(theta)))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A point `z = e^{i·angle}` of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    angle: f64,
}

impl SpectralPoint {
    /// Any finite angle, reduced to `[0, 2π)`.
    pub fn from_angle(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(UamoError::invalid("spectral angle must be finite"));
        }
        Ok(Self {
            angle: TAU * frac(angle / TAU),
        })
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// `(Re z, Im z)`.
    pub fn re_im(&self) -> (f64, f64) {
        let (s, c) = self.angle.sin_cos();
        (c, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("3/5".parse::<Frequency>().unwrap(), Frequency::Rational { p: 3, q: 5 });
        assert_eq!("6/10".parse::<Frequency>().unwrap(), Frequency::Rational { p: 3, q: 5 });
        assert_eq!("golden".parse::<Frequency>().unwrap(), Frequency::golden());
        assert_eq!("0.25".parse::<Frequency>().unwrap(), Frequency::Real(0.25));
        assert!("1/0".parse::<Frequency>().is_err());
        assert!("1.5".parse::<Frequency>().is_err());
        assert!("abc".parse::<Frequency>().is_err());
    }

    #[test]
    fn golden_mean_constant() {
        assert!((GOLDEN_MEAN - (5f64.sqrt() - 1.0) / 2.0).abs() <= f64::EPSILON);
        assert!((GOLDEN_MEAN * GOLDEN_MEAN + GOLDEN_MEAN - 1.0).abs() < 2.0 * f64::EPSILON);
    }

    #[test]
    fn rational_orbit_is_exact() {
        let f = Frequency::rational(34, 55).unwrap();
        for n in -200i64..200 {
            let expect = ((n * 34).rem_euclid(55)) as f64 / 55.0;
            assert_eq!(f.orbit_fraction(n), expect);
        }
        assert_eq!(f.orbit_fraction(55 * 1_000_003), 0.0);
    }

    #[test]
    fn real_orbit_tracks_exact_product() {
        // For x = 2^-20 · m the product n·x is exact in f64 for moderate n, so
        // the reduction has a closed form.
        let x = 648_719.0 / (1u64 << 20) as f64;
        let f = Frequency::real(x).unwrap();
        for n in [1i64, 7, 1_000_000, 123_456_789, -98_765_432] {
            let exact = ((n as i128 * 648_719).rem_euclid(1 << 20)) as f64 / (1u64 << 20) as f64;
            assert_eq!(f.orbit_fraction(n), exact);
        }
    }

    #[test]
    fn phase_and_point_reduce() {
        assert!((Phase::new(1.25).unwrap().value() - 0.25).abs() < 1e-15);
        assert!((Phase::new(-0.25).unwrap().value() - 0.75).abs() < 1e-15);
        let z = SpectralPoint::from_angle(-std::f64::consts::FRAC_PI_2).unwrap();
        assert!((z.angle() - 1.5 * std::f64::consts::PI).abs() < 1e-15);
        let (re, im) = z.re_im();
        assert!((re * re + im * im - 1.0).abs() < 1e-14);
    }
}
