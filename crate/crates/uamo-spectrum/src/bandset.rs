use std::f64::consts::PI;

use uamo_core::TAU;

/// Gap tolerance (radians) below which neighbouring arcs are merged.
pub const MERGE_TOL: f64 = 1e-6;

/// A finite union of closed arcs of the unit circle.
///
/// Each arc is `(lo, hi)` with `lo ∈ [0, 2π)` and `lo < hi ≤ lo + 2π`; an arc
/// crossing angle 0 has `hi > 2π`. Arcs are sorted by `lo` and pairwise
/// disjoint (gaps wider than the merge tolerance), and the full circle is
/// the single arc `(0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandSet {
    arcs: Vec<(f64, f64)>,
    measure: f64,
}

/// `x` reduced to `[0, 2π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Angular distance between two points of the circle, in `[0, π]`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(TAU - d)
}

impl BandSet {
    pub fn empty() -> Self {
        Self { arcs: Vec::new(), measure: 0.0 }
    }

    pub fn full() -> Self {
        Self { arcs: vec![(0.0, TAU)], measure: TAU }
    }

    /// Normalizes and merges arbitrary arcs `(lo, hi)` with `hi ≥ lo`
    /// (angles in any range, length at most `2π`), joining arcs separated
    /// by less than `tol`.
    pub fn from_arcs(arcs: impl IntoIterator<Item = (f64, f64)>, tol: f64) -> Self {
        let mut v: Vec<(f64, f64)> = arcs
            .into_iter()
            .filter(|(lo, hi)| hi >= lo)
            .map(|(lo, hi)| {
                let len = (hi - lo).min(TAU);
                let l = wrap_angle(lo);
                (l, l + len)
            })
            .collect();
        if v.iter().any(|&(lo, hi)| hi - lo >= TAU - tol) {
            return Self::full();
        }
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for (lo, hi) in v {
            match merged.last_mut() {
                Some(last) if lo <= last.1 + tol => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        // Arcs reaching past 2π may overlap the first arcs.
        while merged.len() > 1 {
            let end = merged.last().unwrap().1 - TAU;
            let first = merged[0];
            if first.0 <= end + tol {
                let last = merged.last_mut().unwrap();
                last.1 = last.1.max(first.1 + TAU);
                merged.remove(0);
            } else {
                break;
            }
        }
        if merged.len() == 1 && merged[0].1 - merged[0].0 >= TAU - tol {
            return Self::full();
        }
        // Keep the sort order by `lo` after removals.
        merged.sort_by(|a, b| a.0.total_cmp(&b.0));
        let measure = merged.iter().map(|(lo, hi)| hi - lo).sum();
        Self { arcs: merged, measure }
    }

    /// `{e^{iω} : |cos ω| ≤ a}`, i.e. `{z ∈ ∂𝔻 : |Re z| ≤ a}` for `a ∈ [0, 1]`.
    pub fn re_band(a: f64) -> Self {
        if a >= 1.0 {
            return Self::full();
        }
        let c = a.clamp(0.0, 1.0).acos();
        Self::from_arcs([(c, PI - c), (PI + c, TAU - c)], MERGE_TOL)
    }

    pub fn arcs(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    /// Total arc length.
    /// Midpoint angle of every arc, in `[0, 2π)`.
    pub fn centers(&self) -> Vec<f64> {
        self.arcs.iter().map(|&(lo, hi)| wrap_angle(0.5 * (lo + hi))).collect()
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Union with another band set.
    pub fn union(&self, other: &Self, tol: f64) -> Self {
        Self::from_arcs(self.arcs.iter().chain(&other.arcs).copied(), tol)
    }

    /// Union of many band sets.
    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a BandSet>, tol: f64) -> Self {
        Self::from_arcs(sets.into_iter().flat_map(|s| s.arcs.iter().copied()), tol)
    }

    /// Distance from the angle `x` to the set (`0` inside, `∞` if empty).
    pub fn distance_to(&self, x: f64) -> f64 {
        let x = wrap_angle(x);
        let mut best = f64::INFINITY;
        for &(lo, hi) in &self.arcs {
            if (lo..=hi).contains(&x) || (lo..=hi).contains(&(x + TAU)) {
                return 0.0;
            }
            best = best.min(circle_distance(x, lo)).min(circle_distance(x, hi));
        }
        best
    }

    /// True when `x` lies in the set or within `tol` of it.
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.distance_to(x) <= tol
    }

    /// Midpoints of the gaps between consecutive arcs.
    fn gap_midpoints(&self) -> Vec<f64> {
        let n = self.arcs.len();
        (0..n)
            .map(|i| {
                let hi = self.arcs[i].1;
                let next_lo = if i + 1 < n { self.arcs[i + 1].0 } else { self.arcs[0].0 + TAU };
                wrap_angle(0.5 * (hi + next_lo))
            })
            .collect()
    }

    /// `sup_{x ∈ self} dist(x, other)`.
    fn directed_hausdorff(&self, other: &Self) -> f64 {
        // The supremum is attained at an endpoint of an arc of `self` or at
        // the midpoint of a gap of `other` that lies inside `self`.
        let mut worst: f64 = 0.0;
        for &(lo, hi) in &self.arcs {
            worst = worst.max(other.distance_to(lo)).max(other.distance_to(hi));
        }
        for m in other.gap_midpoints() {
            if self.contains(m, 0.0) {
                worst = worst.max(other.distance_to(m));
            }
        }
        worst
    }

    /// Hausdorff distance on the circle (`∞` if exactly one set is empty).
    pub fn hausdorff(&self, other: &Self) -> f64 {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => 0.0,
            (true, false) | (false, true) => f64::INFINITY,
            _ => self.directed_hausdorff(other).max(other.directed_hausdorff(self)),
        }
    }

    /// Image under the rotation `z ↦ e^{i·by} z` (`by = π` gives `z ↦ −z`).
    pub fn rotated(&self, by: f64) -> Self {
        Self::from_arcs(self.arcs.iter().map(|&(lo, hi)| (lo + by, hi + by)), 0.0)
    }
}
