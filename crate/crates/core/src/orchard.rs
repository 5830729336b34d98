//! Orchard problems: which thickened orbit points block the view from `i`.
//!
//! A point `z` thickened to radius `eps` eclipses `w` when the disk of radius
//! `eps` around `z` meets the geodesic segment from `i` to `w`. Distances are
//! handled as exact `sinh^2` values built from three integers:
//! `N_z = 2 cosh d(i, z)`, `N_w = 2 cosh d(i, w)` and
//! `C = 2 cosh d(z, w)`. The perpendicular from `z` lands inside the segment
//! iff both triangle angles at `i` and `w` are at most a right angle, which
//! by the hyperbolic law of cosines reads `N_z N_w >= 2C` and
//! `N_w C >= 2 N_z`.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::arith::{mul, sub};
use crate::enumeration::{enumerate, EnumerationConfig};
use crate::error::{Error, Result};
use crate::geometry::{
    geodesic_distance_sinh, gram_decompose, pair_trace, trace_product, OrbitPoint, SymmetricGram,
    Symmetry, UnimodularMatrix,
};
use crate::visibility::is_visible;

/// Threshold `sinh^2 eps = T^2 / (N_w^2 - 4)` above which `z` eclipses `w`,
/// with `T = Tr(S_z j S_w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EclipseThreshold {
    pub trace_product: i128,
    pub numerator: i128,
    pub denominator: i128,
}

impl EclipseThreshold {
    pub fn value(&self) -> Ratio<i128> {
        Ratio::new(self.numerator, self.denominator)
    }

    /// Smallest eclipsing radius as a float.
    pub fn epsilon(&self) -> f64 {
        (self.numerator as f64 / self.denominator as f64)
            .sqrt()
            .asinh()
    }

    pub fn is_eclipsed_by(&self, radius: Radius) -> bool {
        radius.covers(self.value())
    }
}

/// Thickness of the trees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    /// Exact value of `sinh^2 eps`.
    SinhSquared(Ratio<i128>),
    /// `eps` as a float.
    Float(f64),
}

impl Radius {
    /// `eps = log(1 + sqrt 2) = arcsinh 1`.
    pub const BLOCKING: Radius = Radius::SinhSquared(Ratio::new_raw(1, 1));

    /// Whether a distance with the given exact `sinh^2` is at most `eps`.
    pub fn covers(&self, sinh2: Ratio<i128>) -> bool {
        match *self {
            Radius::SinhSquared(r) => sinh2 <= r,
            Radius::Float(eps) => {
                let s = eps.sinh();
                ratio_to_f64(sinh2) <= s * s
            }
        }
    }
}

pub(crate) fn ratio_to_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn require_non_origin(z: &OrbitPoint) -> Result<()> {
    if z.is_origin() {
        Err(Error::BasePoint)
    } else {
        Ok(())
    }
}

/// The eclipse threshold for `z, w` in a common quadrant with
/// `trace(z) <= trace(w)`; there the perpendicular foot lies on the segment
/// and the threshold is the distance to the full geodesic.
pub fn eclipse_threshold(z: &OrbitPoint, w: &OrbitPoint) -> Result<EclipseThreshold> {
    require_non_origin(z)?;
    require_non_origin(w)?;
    if z.trace() > w.trace() {
        return Err(Error::TraceOrder {
            z_trace: z.trace(),
            w_trace: w.trace(),
        });
    }
    let t = trace_product(z, w)?;
    // Off-diagonal entry and trace of an integral symmetric SL2 matrix agree
    // mod 2, which forces T to be even.
    assert_eq!(t % 2, 0, "odd trace product for {z}, {w}");
    let nw = w.trace();
    Ok(EclipseThreshold {
        trace_product: t,
        numerator: mul(t, t, "squared trace product")?,
        denominator: sub(mul(nw, nw, "squared trace")?, 4, "squared trace")?,
    })
}

/// Where the closest point of the segment `[i, w]` to `z` lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nearest {
    /// Foot of the perpendicular, inside the closed segment.
    Foot,
    /// The endpoint `i`.
    Origin,
    /// The endpoint `w`.
    Target,
}

/// `sinh^2` of the distance from `z` to the closed segment `[i, w]`, and
/// which part of the segment realises it.
pub fn segment_distance_sinh2(z: &OrbitPoint, w: &OrbitPoint) -> Result<(Ratio<i128>, Nearest)> {
    require_non_origin(z)?;
    require_non_origin(w)?;
    let what = "segment distance";
    let (nz, nw) = (z.trace(), w.trace());
    let c = pair_trace(z, w)?;
    let acute_at_origin = mul(nz, nw, what)? >= mul(2, c, what)?;
    let acute_at_target = mul(nw, c, what)? >= mul(2, nz, what)?;
    Ok(match (acute_at_origin, acute_at_target) {
        (true, true) => (geodesic_distance_sinh(z, w)?, Nearest::Foot),
        (false, _) => (
            Ratio::new(sub(mul(nz, nz, what)?, 4, what)?, 4),
            Nearest::Origin,
        ),
        (true, false) => (
            Ratio::new(sub(mul(c, c, what)?, 4, what)?, 4),
            Nearest::Target,
        ),
    })
}

/// Whether `z` thickened to `radius` eclipses `w`.
pub fn eclipses_segment(z: &OrbitPoint, w: &OrbitPoint, radius: Radius) -> Result<bool> {
    let (sinh2, _) = segment_distance_sinh2(z, w)?;
    Ok(radius.covers(sinh2))
}

/// `sinh^2` of the distance from `z` to the ray from `i` through `w`.
pub fn ray_distance_sinh2(z: &OrbitPoint, w: &OrbitPoint) -> Result<Ratio<i128>> {
    require_non_origin(z)?;
    require_non_origin(w)?;
    let what = "ray distance";
    let (nz, nw) = (z.trace(), w.trace());
    if mul(nz, nw, what)? >= mul(2, pair_trace(z, w)?, what)? {
        geodesic_distance_sinh(z, w)
    } else {
        Ok(Ratio::new(sub(mul(nz, nz, what)?, 4, what)?, 4))
    }
}

/// One ordered pair of a pair scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairEclipse {
    pub z: OrbitPoint,
    pub w: OrbitPoint,
    /// `Tr(S_z j S_w)`.
    pub trace_product: i128,
    /// `sinh^2` of the smallest radius at which `z` eclipses `w`.
    pub sinh2: Ratio<i128>,
    pub nearest: Nearest,
}

impl PairEclipse {
    fn key(&self) -> (Ratio<i128>, OrbitPoint, OrbitPoint) {
        (self.sinh2, self.w, self.z)
    }
}

/// All ordered pairs `(z, w)` with `z != w` in the disk `A + D <= N`,
/// `w` visible, and the radius needed for `z` to eclipse `w`, sorted by
/// that radius (ties by `w` then `z`). At most `limit` pairs are kept.
pub fn eclipse_pairs(max_trace: i128, limit: Option<usize>) -> Result<Vec<PairEclipse>> {
    let pts = enumerate(&EnumerationConfig::new(max_trace)?.include_origin(false))?.into_points();
    let targets: Vec<OrbitPoint> = pts
        .par_iter()
        .filter(|w| is_visible(w).expect("non-origin"))
        .copied()
        .collect();
    let per_target = |w: &OrbitPoint| -> Result<Vec<PairEclipse>> {
        let mut row = pts
            .iter()
            .filter(|z| *z != w)
            .map(|z| {
                let (sinh2, nearest) = segment_distance_sinh2(z, w)?;
                Ok(PairEclipse {
                    z: *z,
                    w: *w,
                    trace_product: trace_product(z, w)?,
                    sinh2,
                    nearest,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(k) = limit {
            row.sort_unstable_by_key(PairEclipse::key);
            row.truncate(k);
        }
        Ok(row)
    };
    let rows = targets
        .par_iter()
        .map(per_target)
        .collect::<Result<Vec<_>>>()?;
    let mut all: Vec<PairEclipse> = rows.into_iter().flatten().collect();
    all.par_sort_unstable_by_key(PairEclipse::key);
    if let Some(k) = limit {
        all.truncate(k);
    }
    Ok(all)
}

/// The smallest eclipsing radius over the disk `A + D <= N` (as an exact
/// `sinh^2`, with the pair realising it). Below it every visible point of
/// the disk stays in view.
pub fn min_eclipse_epsilon(max_trace: i128) -> Result<PairEclipse> {
    if max_trace < 3 {
        return Err(Error::InvalidArgument(format!(
            "need max trace >= 3, got {max_trace}"
        )));
    }
    let pts = enumerate(&EnumerationConfig::new(max_trace)?.include_origin(false))?.into_points();
    let best = pts
        .par_iter()
        .filter(|w| is_visible(w).expect("non-origin"))
        .map(|w| -> Result<Option<PairEclipse>> {
            let mut best: Option<PairEclipse> = None;
            for z in pts.iter().filter(|z| *z != w) {
                let (sinh2, nearest) = segment_distance_sinh2(z, w)?;
                if best.is_none_or(|b| (sinh2, *w, *z) < b.key()) {
                    best = Some(PairEclipse {
                        z: *z,
                        w: *w,
                        trace_product: trace_product(z, w)?,
                        sinh2,
                        nearest,
                    });
                }
            }
            Ok(best)
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (Some(x), Some(y)) => Some(if y.key() < x.key() { y } else { x }),
                    (x, None) => x,
                    (None, y) => y,
                })
            },
        )?;
    best.ok_or_else(|| Error::InvalidArgument("disk has fewer than two points".into()))
}

/// Largest Fibonacci index the pair construction supports: `F_{12n+3}`
/// must stay below the trace guard, which holds for `n <= 7`.
pub const MAX_FIBONACCI_N: u32 = 7;

/// `F_k` with `F_1 = F_2 = 1`.
pub fn fibonacci(k: u32) -> i128 {
    let (mut a, mut b) = (0i128, 1i128);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

/// Two visible points `gamma(i)`, `tau(i)` with
/// `gamma = (F_{6n-1} F_{6n-2}; F_{6n+1} F_{6n})` and
/// `tau = (F_{6n-1} F_{6n}; F_{6n+1} F_{6n+2})`, whose trace product is `-2`:
/// the thinnest possible eclipse at their radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibonacciPair {
    pub n: u32,
    pub gamma: UnimodularMatrix,
    pub tau: UnimodularMatrix,
}

impl FibonacciPair {
    pub fn z(&self) -> OrbitPoint {
        self.gamma.apply_to_i()
    }

    pub fn w(&self) -> OrbitPoint {
        self.tau.apply_to_i()
    }

    pub fn trace_product(&self) -> i128 {
        trace_product(&self.z(), &self.w()).expect("within guard")
    }

    pub fn threshold(&self) -> EclipseThreshold {
        eclipse_threshold(&self.z(), &self.w()).expect("within guard")
    }

    /// `sinh^2 eps_min * sinh^2 d(i, w)`; exactly one.
    pub fn sinh2_product(&self) -> Ratio<i128> {
        let nw = self.w().trace();
        self.threshold().value() * Ratio::new(nw * nw - 4, 4)
    }

    /// `eps_min * e^R` with `R = d(i, w)`; tends to 2 from above.
    pub fn scaled_epsilon(&self) -> f64 {
        self.threshold().epsilon() * self.w().distance().exp()
    }
}

pub fn fibonacci_pair(n: u32) -> Result<FibonacciPair> {
    if n == 0 || n > MAX_FIBONACCI_N {
        return Err(Error::InvalidArgument(format!(
            "Fibonacci pair index must be in 1..={MAX_FIBONACCI_N}, got {n}"
        )));
    }
    let f = |k: u32| fibonacci(k);
    let m = 6 * n;
    let gamma = UnimodularMatrix::new(f(m - 1), f(m - 2), f(m + 1), f(m))?;
    let tau = UnimodularMatrix::new(f(m - 1), f(m), f(m + 1), f(m + 2))?;
    let m = 12 * n;
    assert_eq!(
        gamma.gram(),
        SymmetricGram::new(f(m - 3), f(m - 1), f(m + 1))?
    );
    assert_eq!(
        tau.gram(),
        SymmetricGram::new(f(m - 1), f(m + 1), f(m + 3))?
    );
    let pair = FibonacciPair { n, gamma, tau };
    assert_eq!(pair.trace_product(), -2);
    assert!(is_visible(&pair.z())? && is_visible(&pair.w())?);
    Ok(pair)
}

/// Outcome of a blocking check; `witness` is the first far point left in view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockingReport {
    pub checked: usize,
    pub witness: Option<OrbitPoint>,
}

impl BlockingReport {
    pub fn is_blocked(&self) -> bool {
        self.witness.is_none()
    }
}

/// Whether every point of `far_points` is eclipsed by some thickened point of
/// the disk `A + D <= N`.
pub fn blocking_check(
    radius: Radius,
    max_trace: i128,
    far_points: &[OrbitPoint],
) -> Result<BlockingReport> {
    if let Some(w) = far_points.iter().find(|w| w.trace() <= max_trace) {
        return Err(Error::InvalidArgument(format!(
            "far point {w} has trace {} <= {max_trace}",
            w.trace()
        )));
    }
    let trees = enumerate(&EnumerationConfig::new(max_trace)?.include_origin(false))?.into_points();
    let seen = far_points
        .par_iter()
        .map(|w| -> Result<bool> {
            for z in &trees {
                if eclipses_segment(z, w, radius)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(BlockingReport {
        checked: far_points.len(),
        witness: seen.iter().position(|&s| s).map(|k| far_points[k]),
    })
}

/// Points `(+-k + i)/(k^2 + 1)` and their images `+-k + i`, whose rays
/// approach the imaginary axis as `k` grows. `k` runs over `1..=20` and then
/// doubles, ending at `max_k`.
pub fn axis_adjacent_family(max_k: i128) -> Vec<OrbitPoint> {
    let mut ks: Vec<i128> = (1..=20.min(max_k)).collect();
    let mut k = 20i128;
    while k < max_k {
        k = (2 * k).min(max_k);
        ks.push(k);
    }
    let mut out = Vec::new();
    for k in ks {
        let base = OrbitPoint::new(k, k * k + 1).expect("k^2 + 1 divides itself");
        for s in Symmetry::ALL {
            out.push(base.symmetry(s));
        }
    }
    out
}

/// Default far set: every orbit point with `N < trace <= 16N`, followed by
/// the axis-adjacent family beyond that, up to `k = 10^6`.
pub fn default_far_points(max_trace: i128) -> Result<Vec<OrbitPoint>> {
    let outer = 16 * max_trace;
    let mut far: Vec<OrbitPoint> = enumerate(&EnumerationConfig::new(outer)?)?
        .into_points()
        .into_iter()
        .filter(|w| w.trace() > max_trace)
        .collect();
    far.extend(
        axis_adjacent_family(1_000_000)
            .into_iter()
            .filter(|w| w.trace() > outer),
    );
    Ok(far)
}

/// `|ac + bd|` for a matrix taking `i` to `z`, which equals `sinh` of the
/// distance from `z` to the imaginary axis.
pub fn axis_distance_sinh(z: &OrbitPoint) -> Result<i128> {
    require_non_origin(z)?;
    let [a, b, c, d] = gram_decompose(&z.gram())?.entries();
    Ok((a * c + b * d).abs())
}

/// Distance from `i - n` to the ray through `i + n`, against `2 e^{R/2}`
/// with `cosh R = (n^2 + 2)/2`. Reported only; the two are comparable.
pub fn quadrant_gap(n: i128) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("need n >= 1, got {n}")));
    }
    let left = OrbitPoint::new(-n, 1)?;
    let right = OrbitPoint::new(n, 1)?;
    let gap = ratio_to_f64(ray_distance_sinh2(&left, &right)?)
        .sqrt()
        .asinh();
    let radius = right.distance();
    Ok((gap, 2.0 * (radius / 2.0).exp()))
}
