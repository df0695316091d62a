use crate::error::{Result, UamoError};

/// Partial quotients `[a₀; a₁, a₂, …]` of `x ∈ (0, 1)`, at most `k` of them
/// after `a₀ = 0`.
///
/// Expansion stops early once the convergent reproduces `x` to within
/// `4·ε·x` (a rational input, or the float precision being exhausted).
pub fn continued_fraction(x: f64, k: usize) -> Vec<u64> {
    let mut quotients = Vec::with_capacity(k);
    let (mut p_prev, mut p) = (1u128, 0u128);
    let (mut q_prev, mut q) = (0u128, 1u128);
    let mut r = x;
    for _ in 0..k {
        if r <= 0.0 {
            break;
        }
        let inv = 1.0 / r;
        if !inv.is_finite() || inv > 1e17 {
            break;
        }
        let a = inv.floor();
        r = inv - a;
        let a = a as u128;
        (p_prev, p) = (p, a * p + p_prev);
        (q_prev, q) = (q, a * q + q_prev);
        quotients.push(a as u64);
        if (x - p as f64 / q as f64).abs() <= 4.0 * f64::EPSILON * x {
            break;
        }
    }
    quotients
}

/// First `k` continued-fraction convergents `p_j/q_j` of `x ∈ (0, 1)`.
///
/// Denominators are strictly increasing; the convergent `0/1` from `a₀` is
/// not reported. The list is shorter than `k` when the expansion
/// terminates.
pub fn convergents(x: f64, k: usize) -> Vec<(u64, u64)> {
    from_quotients(&continued_fraction(x, k))
}

fn from_quotients(quotients: &[u64]) -> Vec<(u64, u64)> {
    let (mut p_prev, mut p) = (1u64, 0u64);
    let (mut q_prev, mut q) = (0u64, 1u64);
    let mut out = Vec::with_capacity(quotients.len());
    for &a in quotients {
        (p_prev, p) = (p, a * p + p_prev);
        (q_prev, q) = (q, a * q + q_prev);
        out.push((p, q));
    }
    out
}

/// Exact convergents of a rational `p/q` (Euclid's algorithm).
pub(crate) fn rational_convergents(p: u64, q: u64, k: usize) -> Vec<(u64, u64)> {
    let mut quotients = Vec::new();
    let (mut a, mut b) = (q, p);
    while b != 0 && quotients.len() < k {
        quotients.push(a / b);
        (a, b) = (b, a % b);
    }
    from_quotients(&quotients)
}

/// Finite-sample estimate `max_k log(q_{k+1}) / q_k` of the Liouville
/// exponent `β(Φ) = limsup log(q_{k+1}) / q_k`.
///
/// Requires at least two denominators.
pub fn beta_lower_bound(denominators: &[u64]) -> Result<f64> {
    if denominators.len() < 2 {
        return Err(UamoError::invalid("need at least two convergent denominators"));
    }
    Ok(denominators
        .windows(2)
        .map(|w| (w[1] as f64).ln() / w[0] as f64)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Growth rate `log(q_K / q_{K−1})` of the last two denominators.
///
/// For the golden mean this tends to `log((1+√5)/2) ≈ 0.4812`; it measures
/// how fast the approximants improve, as opposed to [`beta_lower_bound`].
pub fn tail_growth_rate(denominators: &[u64]) -> Result<f64> {
    match denominators {
        [.., a, b] => Ok((*b as f64 / *a as f64).ln()),
        _ => Err(UamoError::invalid("need at least two convergent denominators")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GOLDEN_MEAN;

    #[test]
    fn golden_convergents_are_fibonacci() {
        assert_eq!(
            convergents(GOLDEN_MEAN, 6),
            vec![(1, 1), (1, 2), (2, 3), (3, 5), (5, 8), (8, 13)]
        );
        let long = convergents(GOLDEN_MEAN, 12);
        assert!(long.contains(&(34, 55)));
    }

    #[test]
    fn rational_input_terminates() {
        assert_eq!(convergents(1.0 / 3.0, 10), vec![(1, 3)]);
        assert_eq!(rational_convergents(1, 3, 10), vec![(1, 3)]);
        assert_eq!(rational_convergents(13, 21, 20).last(), Some(&(13, 21)));
    }

    #[test]
    fn pi_minus_three() {
        assert_eq!(convergents(std::f64::consts::PI - 3.0, 2), vec![(1, 7), (15, 106)]);
    }

    #[test]
    fn convergents_approximate_well() {
        for &x in &[GOLDEN_MEAN, std::f64::consts::E - 2.0, 2f64.sqrt() - 1.0, 0.123_456_789] {
            let c = convergents(x, 30);
            for w in c.windows(2) {
                let (p, q) = w[0];
                let q_next = w[1].1;
                assert!(q_next > q);
                let err = (x - p as f64 / q as f64).abs();
                assert!(err < 1.0 / (q as f64 * q_next as f64) + 1e-16);
            }
        }
    }

    #[test]
    fn beta_estimates() {
        let b = beta_lower_bound(&[1, 2, 3, 5, 8]).unwrap();
        assert!((b - 2f64.ln()).abs() < 1e-15);
        let b = beta_lower_bound(&[1, 1_000_000]).unwrap();
        assert!((b - 1e6f64.ln()).abs() < 1e-12);
        assert!(beta_lower_bound(&[3]).is_err());
    }

    #[test]
    fn golden_growth_rate_tends_to_log_phi() {
        let qs: Vec<u64> = convergents(GOLDEN_MEAN, 30).iter().map(|c| c.1).collect();
        let log_phi = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let errs: Vec<f64> = (3..qs.len())
            .map(|k| (tail_growth_rate(&qs[..k]).unwrap() - log_phi).abs())
            .collect();
        assert!(errs.last().unwrap() < &1e-9);
        // Alternating approach, shrinking in magnitude every two steps.
        for w in errs.windows(3).filter(|w| w[2] > 1e-12) {
            assert!(w[2] < w[0]);
        }
        // The tail of the max-based estimate decays like log(q)/q.
        let tail = beta_lower_bound(&qs[qs.len() - 2..]).unwrap();
        assert!(tail < 1e-4);
    }
}
