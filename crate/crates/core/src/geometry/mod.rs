//! Planar geometry for the two-tier cell layout.
//!
//! The macro base station (MBS) sits at the origin and the tagged femto
//! access point (FAP) at `(d_f, 0)`. For a point `p`, the distance ratio
//! `delta = d(p, MBS) / d(p, FAP)` classifies `p`: the locus `delta = const`
//! is a circle (an Apollonius circle), and the macrocell disk splits into
//! annular-like bands between consecutive loci. This module computes those
//! band areas in closed form and provides a Monte Carlo area oracle that the
//! tests use to validate every closed form.

mod union;

pub use union::{disk_union_area, uncovered_disk_area};

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};

/// A point in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(&self, other: Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(&self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Distance from the origin.
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

/// A circle with nonnegative radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center_x: f64, center_y: f64, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Circle {
            center: Point::new(center_x, center_y),
            radius,
        }
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn contains(&self, p: Point) -> bool {
        self.center.dist_sq(p) <= self.radius * self.radius
    }
}

/// Coverage scale factor `gamma = kappa^2 / (1 - kappa^2)^2`.
///
/// A FAP at distance `d_f` from the MBS covers a circle of radius
/// `sqrt(gamma) * d_f`.
pub fn gamma(kappa: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&kappa) {
        return Err(Error::Domain(format!(
            "kappa must lie in [0, 1), got {kappa}; the coverage circle is undefined at kappa >= 1"
        )));
    }
    let one_minus = 1.0 - kappa * kappa;
    Ok(kappa * kappa / (one_minus * one_minus))
}

/// The set of points handed over to a FAP at `(d_f, 0)`: all `p` with
/// `d(p, FAP) < kappa * d(p, MBS)`, i.e. `delta > 1/kappa`. A circle of
/// radius `kappa * d_f / (1 - kappa^2)` centered at `(d_f / (1 - kappa^2), 0)`.
pub fn fap_coverage_circle(d_f: f64, kappa: f64) -> Result<Circle> {
    if d_f <= 0.0 {
        return Err(Error::Domain(format!("d_f must be positive, got {d_f}")));
    }
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::Domain(format!(
            "kappa must lie in (0, 1), got {kappa}"
        )));
    }
    let denom = 1.0 - kappa * kappa;
    Ok(Circle::new(d_f / denom, 0.0, kappa * d_f / denom))
}

/// The locus `delta = kappa_i` for `kappa_i < 1`: a circle of radius
/// `kappa_i * d_f / (1 - kappa_i^2)` centered at
/// `(-kappa_i^2 * d_f / (1 - kappa_i^2), 0)`, on the MBS side. Its interior
/// is `{ delta <= kappa_i }`. The `kappa_i = 1` locus degenerates to the
/// perpendicular bisector `x = d_f / 2` and is handled by
/// [`bisector_segment_area`], never here.
pub fn inner_apollonius_circle(d_f: f64, kappa_i: f64) -> Result<Circle> {
    if d_f <= 0.0 {
        return Err(Error::Domain(format!("d_f must be positive, got {d_f}")));
    }
    if !(kappa_i > 0.0 && kappa_i < 1.0) {
        return Err(Error::Domain(format!(
            "kappa_i must lie in (0, 1), got {kappa_i}; the ratio-1 locus is a line"
        )));
    }
    let denom = 1.0 - kappa_i * kappa_i;
    Ok(Circle::new(
        -kappa_i * kappa_i * d_f / denom,
        0.0,
        kappa_i * d_f / denom,
    ))
}

/// Distance ratio `delta = d(p, MBS) / d(p, FAP)` with the MBS at the origin
/// and the FAP at `(d_f, 0)`.
pub fn delta_ratio(p: Point, d_f: f64) -> f64 {
    let to_mbs = p.norm();
    let to_fap = p.dist(Point::new(d_f, 0.0));
    // A point exactly on the FAP has an infinite ratio; f64 yields inf, which
    // classifies into the coverage region as it should.
    to_mbs / to_fap
}

fn clamp_trig(x: f64) -> f64 {
    // acos arguments may drift past [-1, 1] by rounding; anything further is
    // a degenerate configuration the case analysis should have caught.
    debug_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&x), "acos arg {x}");
    x.clamp(-1.0, 1.0)
}

/// Area of the radius-`a` disk lying outside the radius-`b` disk whose center
/// is `c` away. Degenerate configurations (disjoint, contained) are resolved
/// by case analysis; the partially-overlapping case uses the closed form
/// `a^2 asec(2ac/(b^2-a^2-c^2)) - b^2 asec(2bc/(b^2+c^2-a^2)) + sqrt(...)/2`
/// evaluated through `asec(x) = acos(1/x)`.
pub fn circle_outside_area(a: f64, b: f64, c: f64) -> f64 {
    debug_assert!(a >= 0.0 && b >= 0.0 && c >= 0.0);
    if a == 0.0 {
        return 0.0;
    }
    if c >= a + b {
        // Disjoint: the whole a-disk lies outside.
        return PI * a * a;
    }
    if c + a <= b {
        // a-disk contained in the b-disk.
        return 0.0;
    }
    if c + b <= a {
        // b-disk contained in the a-disk.
        return PI * (a * a - b * b);
    }
    let cos_a = clamp_trig((b * b - a * a - c * c) / (2.0 * a * c));
    let cos_b = clamp_trig((b * b + c * c - a * a) / (2.0 * b * c));
    let heron = (a + b + c) * (b + c - a) * (c + a - b) * (a + b - c);
    a * a * cos_a.acos() - b * b * cos_b.acos() + 0.5 * heron.max(0.0).sqrt()
}

/// Area of the macrocell disk (radius `R`, centered at the MBS) on the FAP
/// side of the perpendicular bisector `x = d_f / 2`:
/// `R^2 (theta - sin(2 theta) / 2)` with `theta = acos(d_f / (2R))`.
pub fn bisector_segment_area(radius: f64, d_f: f64) -> Result<f64> {
    if !(d_f > 0.0 && d_f < 2.0 * radius) {
        return Err(Error::Domain(format!(
            "need 0 < d_f < 2R for the bisector segment, got d_f={d_f}, R={radius}"
        )));
    }
    let theta = (d_f / (2.0 * radius)).acos();
    Ok(radius * radius * (theta - 0.5 * (2.0 * theta).sin()))
}

/// The quantization ladder `kappa_0 = kappa < kappa_1 < ... < kappa_t = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationGrid {
    levels: Vec<f64>,
}

/// Where a distance ratio falls relative to a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    /// Inside the tagged FAP's coverage region (`delta > 1/kappa`): the point
    /// is not MBS-eligible.
    Coverage,
    /// Band index in `-t ..= t`. Index 0 is `delta <= kappa`, negative
    /// indices are the MBS-side rings `kappa_{j-1} < delta <= kappa_j`,
    /// positive indices the FAP-side rings `1/kappa_i < delta <= 1/kappa_{i-1}`.
    Index(isize),
}

impl QuantizationGrid {
    /// Build a grid from explicit levels. The first level is the system
    /// handover ratio and must lie in (0, 1); the last must be exactly 1.
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::Domain("grid needs at least two levels".into()));
        }
        if !(levels[0] > 0.0 && levels[0] < 1.0) {
            return Err(Error::Domain(format!(
                "kappa_0 must lie in (0, 1), got {}",
                levels[0]
            )));
        }
        if *levels.last().unwrap() != 1.0 {
            return Err(Error::Domain("kappa_t must equal 1".into()));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("grid levels must be strictly increasing".into()));
        }
        Ok(QuantizationGrid { levels })
    }

    /// Uniformly spaced ladder `kappa_j = kappa + j (1 - kappa) / t`.
    /// Doubling `t` yields a nested refinement (shared levels coincide
    /// bit-for-bit).
    pub fn uniform(kappa: f64, t: usize) -> Result<Self> {
        if t < 1 {
            return Err(Error::Domain("t must be at least 1".into()));
        }
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::Domain(format!(
                "kappa must lie in (0, 1), got {kappa}"
            )));
        }
        let width = 1.0 - kappa;
        let mut levels: Vec<f64> = (0..t)
            .map(|j| kappa + (j as f64) * width / (t as f64))
            .collect();
        levels.push(1.0);
        QuantizationGrid::new(levels)
    }

    /// Number of bands per side.
    pub fn t(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, j: usize) -> f64 {
        self.levels[j]
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Band containing the ratio `delta`.
    pub fn band_of(&self, delta: f64) -> Band {
        let t = self.t();
        let kappa = self.levels[0];
        if delta <= kappa {
            return Band::Index(0);
        }
        if delta <= 1.0 {
            // MBS side: kappa_{j-1} < delta <= kappa_j.
            for j in 1..=t {
                if delta <= self.levels[j] {
                    return Band::Index(-(j as isize));
                }
            }
            unreachable!("levels end at 1");
        }
        let recip = 1.0 / delta;
        if recip < kappa {
            return Band::Coverage;
        }
        // FAP side: 1/kappa_i < delta <= 1/kappa_{i-1}, i.e.
        // kappa_{i-1} <= 1/delta < kappa_i.
        for i in 1..=t {
            if recip < self.levels[i] {
                return Band::Index(i as isize);
            }
        }
        // recip == 1 can slip through when delta rounds to exactly 1.0.
        Band::Index(-(t as isize))
    }

    /// Upper quantizer of `delta`: the smallest grid value (or reciprocal)
    /// at or above it. Returns `None` inside the coverage region.
    pub fn upper_quantizer(&self, delta: f64) -> Option<f64> {
        match self.band_of(delta) {
            Band::Coverage => None,
            Band::Index(0) => Some(self.levels[0]),
            Band::Index(j) if j < 0 => Some(self.levels[(-j) as usize]),
            Band::Index(i) => Some(1.0 / self.levels[i as usize - 1]),
        }
    }

    /// Lower quantizer of `delta`: the largest grid value (or reciprocal)
    /// strictly below its band. Returns `None` inside the coverage region.
    pub fn lower_quantizer(&self, delta: f64) -> Option<f64> {
        match self.band_of(delta) {
            Band::Coverage => None,
            Band::Index(0) => Some(0.0),
            Band::Index(j) if j < 0 => Some(self.levels[(-j) as usize - 1]),
            Band::Index(i) => Some(1.0 / self.levels[i as usize]),
        }
    }
}

/// Band areas `s_{-t} ..= s_t` and the induced probabilities `p_i = s_i / s`.
#[derive(Debug, Clone)]
pub struct PartitionAreas {
    t: usize,
    areas: Vec<f64>,
    total: f64,
    probs: Vec<f64>,
}

impl PartitionAreas {
    pub fn t(&self) -> usize {
        self.t
    }

    /// Area of band `i`, `i` in `-t ..= t`.
    pub fn area(&self, i: isize) -> f64 {
        self.areas[(i + self.t as isize) as usize]
    }

    /// Probability of band `i` for a point uniform on the disk minus the
    /// tagged coverage region.
    pub fn prob(&self, i: isize) -> f64 {
        self.probs[(i + self.t as isize) as usize]
    }

    /// Total area `s`: the macrocell disk minus the clipped coverage region.
    pub fn total(&self) -> f64 {
        self.total
    }
}

/// Area of `{delta >= 1/k}` clipped to the macrocell disk (the FAP-side
/// locus interior for level `k`).
fn clipped_outer_area(d_f: f64, radius: f64, k: f64) -> f64 {
    let denom = 1.0 - k * k;
    let r = k * d_f / denom;
    let center = d_f / denom;
    let full = PI * r * r;
    // The locus circle pokes out of the disk exactly when k > 1 - d_f/R.
    if k > 1.0 - d_f / radius {
        full - circle_outside_area(r, radius, center)
    } else {
        full
    }
}

/// Area of `{delta <= k}` clipped to the macrocell disk (the MBS-side locus
/// interior for level `k`).
fn clipped_inner_area(d_f: f64, radius: f64, k: f64) -> f64 {
    let denom = 1.0 - k * k;
    let r = k * d_f / denom;
    let center = k * k * d_f / denom;
    let full = PI * r * r;
    // Pokes out exactly when k > R / (R + d_f).
    if k > radius / (radius + d_f) {
        full - circle_outside_area(r, radius, center)
    } else {
        full
    }
}

fn clamp_band_area(s: f64, eps: f64) -> Result<f64> {
    if s >= 0.0 {
        Ok(s)
    } else if s >= -eps {
        // The recursions subtract accumulated sums; tiny negatives are
        // rounding residue.
        Ok(0.0)
    } else {
        Err(Error::Internal(format!(
            "band area {s} below -{eps}; partition recursion is inconsistent"
        )))
    }
}

/// Closed-form band areas for a FAP at distance `d_f` inside a disk of
/// radius `radius`, under `grid`. Positive bands accumulate outward from the
/// clipped coverage region toward the bisector; negative bands accumulate
/// outward from the MBS. The bisector side itself is the circular segment
/// `x > d_f/2`, not a locus circle.
pub fn partition_areas(d_f: f64, radius: f64, grid: &QuantizationGrid) -> Result<PartitionAreas> {
    if !(d_f > 0.0 && d_f < radius) {
        return Err(Error::Domain(format!(
            "need 0 < d_f < R, got d_f={d_f}, R={radius}"
        )));
    }
    let t = grid.t();
    let eps = 1e-6 * PI * radius * radius;
    let mut areas = vec![0.0; 2 * t + 1];
    let at = |i: isize| (i + t as isize) as usize;

    // FAP side: s_i = clipped locus area at kappa_i minus everything already
    // assigned closer to the FAP (the clipped coverage region plus s_1..s_{i-1}).
    let coverage = clipped_outer_area(d_f, radius, grid.level(0));
    let mut acc = coverage;
    for i in 1..t {
        let s = clamp_band_area(clipped_outer_area(d_f, radius, grid.level(i)) - acc, eps)?;
        areas[at(i as isize)] = s;
        acc += s;
    }
    let segment = bisector_segment_area(radius, d_f)?;
    areas[at(t as isize)] = clamp_band_area(segment - acc, eps)?;

    // MBS side: s_0 is the innermost locus interior, then rings outward; the
    // last ring reaches the bisector (complement of the segment).
    let s0 = clamp_band_area(clipped_inner_area(d_f, radius, grid.level(0)), eps)?;
    areas[at(0)] = s0;
    let mut acc = s0;
    for j in 1..t {
        let s = clamp_band_area(clipped_inner_area(d_f, radius, grid.level(j)) - acc, eps)?;
        areas[at(-(j as isize))] = s;
        acc += s;
    }
    areas[at(-(t as isize))] = clamp_band_area(PI * radius * radius - segment - acc, eps)?;

    let total: f64 = areas.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Internal(format!("nonpositive partition total {total}")));
    }
    let probs = areas.iter().map(|a| a / total).collect();
    Ok(PartitionAreas {
        t,
        areas,
        total,
        probs,
    })
}

/// Sample a point uniform on the disk of radius `radius` (inverse CDF, so a
/// fixed RNG position always yields the same point).
fn uniform_disk_point(radius: f64, rng: &mut impl Rng) -> Point {
    let r = radius * rng.random::<f64>().sqrt();
    let theta = 2.0 * PI * rng.random::<f64>();
    let (sin, cos) = theta.sin_cos();
    Point::new(r * cos, r * sin)
}

/// Monte Carlo area oracle: `pi R^2` times the fraction of uniform disk
/// samples satisfying the predicate. Deterministic for a fixed RNG state.
pub fn monte_carlo_area<F>(predicate: F, radius: f64, n_samples: u64, rng: &mut impl Rng) -> f64
where
    F: Fn(Point) -> bool,
{
    assert!(n_samples >= 1);
    let mut hits = 0u64;
    for _ in 0..n_samples {
        if predicate(uniform_disk_point(radius, rng)) {
            hits += 1;
        }
    }
    PI * radius * radius * (hits as f64) / (n_samples as f64)
}
