//! Counting all and visible orbit points in hyperbolic disks.
//!
//! `H(N)` counts orbit points `z != i` with `A + D <= N` and `H*(N)` the
//! visible ones. The visible count is obtained two ways: directly, by
//! classifying every point, and by Möbius inversion over the equally spaced
//! points on each ray, `H*(R) = sum_n mu(n) H(R/n)`. The radius `R/n` is
//! realised exactly: a point of trace `t` lies within `R/n` iff
//! `C_n(t) <= N`, with `C_n(t) = 2 T_n(t/2)`.

use rayon::prelude::*;

use crate::arith::{chebyshev_trace, gcd, mobius_sieve};
use crate::enumeration::{
    count_h, enumerate, trace_for_exp_radius, Enumeration, EnumerationConfig,
};
use crate::error::{Error, Result};
use crate::visibility::is_visible;

/// Orbit points up to a trace bound together with their visibility.
#[derive(Debug, Clone)]
pub struct Census {
    enumeration: Enumeration,
    /// Indexed like `enumeration.points()`; `visible_prefix[k]` counts the
    /// visible points among the first `k`.
    visible_prefix: Vec<u64>,
}

impl Census {
    pub fn new(max_trace: i128) -> Result<Self> {
        let enumeration = enumerate(&EnumerationConfig::new(max_trace)?)?;
        let flags: Vec<bool> = enumeration
            .points()
            .par_iter()
            .map(|z| !z.is_origin() && is_visible(z).expect("non-origin"))
            .collect();
        let mut visible_prefix = Vec::with_capacity(flags.len() + 1);
        visible_prefix.push(0);
        let mut acc = 0u64;
        for f in flags {
            acc += f as u64;
            visible_prefix.push(acc);
        }
        Ok(Self {
            enumeration,
            visible_prefix,
        })
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }

    pub fn max_trace(&self) -> i128 {
        self.enumeration.max_trace()
    }

    pub fn is_visible_at(&self, index: usize) -> bool {
        self.visible_prefix[index + 1] > self.visible_prefix[index]
    }

    fn check(&self, trace: i128) -> Result<()> {
        if trace > self.max_trace() {
            return Err(Error::InsufficientRange {
                covered: self.max_trace(),
                needed: trace,
            });
        }
        Ok(())
    }

    /// `H`: points other than `i` with trace `<= trace`.
    pub fn total_up_to(&self, trace: i128) -> Result<u64> {
        self.check(trace)?;
        Ok(self.enumeration.count_up_to(trace).saturating_sub(1) as u64)
    }

    /// `H*`: visible points with trace `<= trace`.
    pub fn visible_up_to(&self, trace: i128) -> Result<u64> {
        self.check(trace)?;
        Ok(self.visible_prefix[self.enumeration.count_up_to(trace)])
    }

    /// Row of the tables for `x = e^R`.
    pub fn report(&self, x: f64) -> Result<CountReport> {
        let n = trace_for_exp_radius(x)?;
        let total = self.total_up_to(n)?;
        let visible = self.visible_up_to(n)?;
        Ok(CountReport::new(x, total, visible))
    }
}

/// `H*(N)` by classifying every point of the disk.
pub fn count_visible_direct(max_trace: i128) -> Result<u64> {
    Census::new(max_trace)?.visible_up_to(max_trace)
}

/// One term `mu(n) H(R/n)` of the Möbius sum: `n`, `mu(n)` and the largest
/// trace `t` with `C_n(t) <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MobiusTerm {
    pub n: u32,
    pub mu: i8,
    pub trace_bound: i128,
}

/// Terms of the Möbius sum for the disk `A + D <= N`, stopping once `R/n`
/// falls below the smallest nonzero distance `arccosh(3/2)` (trace 3).
pub fn mobius_terms(max_trace: i128) -> Result<Vec<MobiusTerm>> {
    if max_trace < 2 {
        return Err(Error::InvalidArgument(format!(
            "max trace must be at least 2, got {max_trace}"
        )));
    }
    let mut terms = Vec::new();
    let mut n = 1u32;
    while fits(3, n, max_trace) {
        // Largest t in [3, N] with C_n(t) <= N; C_n is increasing for t >= 2.
        let (mut lo, mut hi) = (3i128, max_trace);
        while lo < hi {
            let mid = lo + (hi - lo + 1) / 2;
            if fits(mid, n, max_trace) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        terms.push(MobiusTerm {
            n,
            mu: 0,
            trace_bound: lo,
        });
        n += 1;
    }
    let mu = mobius_sieve(terms.len());
    for t in &mut terms {
        t.mu = mu[t.n as usize];
    }
    terms.retain(|t| t.mu != 0);
    Ok(terms)
}

fn fits(t: i128, n: u32, max_trace: i128) -> bool {
    chebyshev_trace(t, n).is_ok_and(|c| c <= max_trace)
}

/// Möbius inversion given any counter `h(trace) = H`.
pub fn mobius_sum(max_trace: i128, mut h: impl FnMut(i128) -> Result<u64>) -> Result<u64> {
    let mut acc = 0i128;
    for t in mobius_terms(max_trace)? {
        acc += t.mu as i128 * h(t.trace_bound)? as i128;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("Möbius sum"))
}

/// `H*(N)` from counts of all points only.
pub fn count_visible_mobius(max_trace: i128) -> Result<u64> {
    mobius_sum(max_trace, |t| {
        count_h(&EnumerationConfig::new(t)?.include_origin(false))
    })
}

/// `visible - (3/2) x + (3/2) sqrt(x)`.
pub fn error_term(visible: u64, x: f64) -> f64 {
    visible as f64 - 1.5 * x + 1.5 * x.sqrt()
}

/// `(3/2)(x^(1/2) + x^(1/3) + x^(1/5) - x^(1/6))`, the expected number of
/// hidden points from the first Möbius terms.
pub fn approx_invisible(x: f64) -> f64 {
    1.5 * (x.sqrt() + x.cbrt() + x.powf(0.2) - x.powf(1.0 / 6.0))
}

/// `(visible - (3/2) x) / sqrt(x)`.
pub fn delta_star(visible: u64, x: f64) -> f64 {
    (visible as f64 - 1.5 * x) / x.sqrt()
}

/// One row of the merged count tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountReport {
    /// `e^R`.
    pub x: f64,
    pub total: u64,
    pub visible: u64,
    pub invisible: u64,
    pub error: f64,
    pub approx_invisible: f64,
    pub delta_star: f64,
}

impl CountReport {
    pub fn new(x: f64, total: u64, visible: u64) -> Self {
        Self {
            x,
            total,
            visible,
            invisible: total - visible,
            error: error_term(visible, x),
            approx_invisible: approx_invisible(x),
            delta_star: delta_star(visible, x),
        }
    }
}

/// Reports for several `e^R` values from one census.
pub fn count_reports(xs: &[f64]) -> Result<Vec<CountReport>> {
    let traces = xs
        .iter()
        .map(|&x| trace_for_exp_radius(x))
        .collect::<Result<Vec<_>>>()?;
    let Some(&max) = traces.iter().max() else {
        return Ok(Vec::new());
    };
    let census = Census::new(max)?;
    xs.iter().map(|&x| census.report(x)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Grid {
    /// Equal steps in `x`.
    #[default]
    Linear,
    /// Equal ratios in `x`, i.e. equal steps in `R`.
    Geometric,
}

impl Grid {
    /// `samples` nondecreasing points from `x_min` to `x_max` inclusive.
    pub fn points(&self, x_min: f64, x_max: f64, samples: usize) -> Vec<f64> {
        if samples <= 1 {
            return vec![x_max];
        }
        let steps = (samples - 1) as f64;
        (0..samples)
            .map(|k| {
                let f = k as f64 / steps;
                let x = match self {
                    Grid::Linear => x_min + (x_max - x_min) * f,
                    Grid::Geometric => x_min * (x_max / x_min).powf(f),
                };
                if k + 1 == samples {
                    x_max
                } else {
                    x
                }
            })
            .collect()
    }
}

/// `(x, Delta*(log x))` samples, approximating the disk of radius `log x` by
/// the disk `A + D <= round(x + 1/x)`.
pub fn delta_star_series(
    x_min: f64,
    x_max: f64,
    samples: usize,
    grid: Grid,
) -> Result<Vec<(f64, f64)>> {
    if !(x_min >= 3.0 && x_max >= x_min) {
        return Err(Error::InvalidArgument(format!(
            "need 3 <= x_min <= x_max, got [{x_min}, {x_max}]"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let census = Census::new(trace_for_exp_radius(x_max)?)?;
    grid.points(x_min, x_max, samples)
        .into_iter()
        .map(|x| {
            let visible = census.visible_up_to(trace_for_exp_radius(x)?)?;
            Ok((x, delta_star(visible, x)))
        })
        .collect()
}

/// `(1/R) int_1^R Delta*(t) dt` with `R = arccosh(N/2)`, `N = round(x_max + 1/x_max)`.
///
/// `H*(t)` is a step function of `t`, so each piece is integrated in closed
/// form: `int (h e^{-t/2} - (3/2) e^{t/2}) dt = -2h e^{-t/2} - 3 e^{t/2}`.
pub fn mean_delta_diagnostic(x_max: f64) -> Result<f64> {
    if x_max.is_nan() || x_max < 10.0 {
        return Err(Error::InvalidArgument(format!(
            "need x_max >= 10, got {x_max}"
        )));
    }
    let n = trace_for_exp_radius(x_max)?;
    let census = Census::new(n)?;
    let radius = (n as f64 / 2.0).acosh();
    let primitive = |h: u64, t: f64| -2.0 * h as f64 * (-t / 2.0).exp() - 3.0 * (t / 2.0).exp();

    // Jump radii of H*, in increasing order.
    let pts = census.enumeration().points();
    let mut jumps: Vec<(f64, u64)> = Vec::new();
    let mut k = 0;
    while k < pts.len() {
        let trace = pts[k].trace();
        let end = k + pts[k..].partition_point(|p| p.trace() == trace);
        let seen = census.visible_prefix[end];
        jumps.push(((trace as f64 / 2.0).acosh(), seen));
        k = end;
    }

    let (mut integral, mut t_prev, mut h) = (0.0, 1.0, 0u64);
    for &(t_jump, h_after) in &jumps {
        if t_jump <= 1.0 {
            h = h_after;
            continue;
        }
        integral += primitive(h, t_jump) - primitive(h, t_prev);
        t_prev = t_jump;
        h = h_after;
    }
    integral += primitive(h, radius) - primitive(h, t_prev);
    Ok(integral / radius)
}

/// Primitive lattice points `(m, n) != (0, 0)` with `m^2 + n^2 <= radius^2`.
pub fn euclid_visible_count(radius: f64) -> Result<u64> {
    if !radius.is_finite() || radius < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "radius must be >= 1, got {radius}"
        )));
    }
    let r = radius.floor() as i64;
    let r2 = radius * radius;
    let count = (-r..=r)
        .into_par_iter()
        .map(|m| {
            (-r..=r)
                .filter(|&n| {
                    (m, n) != (0, 0)
                        && ((m * m + n * n) as f64) <= r2
                        && gcd(m as i128, n as i128) == 1
                })
                .count() as u64
        })
        .sum();
    Ok(count)
}
