//! Enumeration of orbit points in a closed hyperbolic disk around `i`.
//!
//! A pair `(B, D)` with `D >= 1` is an orbit point exactly when
//! `D | B^2 + 1`, and the disk `d(i, z) <= R` is `A + D <= N` with
//! `N = 2 cosh R`. Both strategies below walk `D = 1..N` and collect the
//! admissible `B`; they differ only in how the residues `B mod D` are found.

use rayon::prelude::*;

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::geometry::OrbitPoint;

/// Largest trace bound accepted by [`enumerate`].
pub const MAX_ENUMERATION_TRACE: i128 = 1 << 31;

/// Below this bound the plain scan is used by [`Strategy::Auto`].
const SCAN_THRESHOLD: i128 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    /// Test every `B` with `B^2 + 1 <= D (N - D)`.
    Scan,
    /// Square roots of `-1` modulo `D` from its factorization, lifted by CRT.
    Sieve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    max_trace: i128,
    include_origin: bool,
    strategy: Strategy,
}

impl EnumerationConfig {
    /// Points with `A + D <= max_trace`, the origin included.
    pub fn new(max_trace: i128) -> Result<Self> {
        if max_trace < 2 {
            return Err(Error::InvalidArgument(format!(
                "max trace must be at least 2, got {max_trace}"
            )));
        }
        if max_trace > MAX_ENUMERATION_TRACE {
            return Err(Error::TraceGuard {
                value: max_trace,
                limit: MAX_ENUMERATION_TRACE,
            });
        }
        Ok(Self {
            max_trace,
            include_origin: true,
            strategy: Strategy::Auto,
        })
    }

    /// The disk of radius `R = log x`, via [`trace_for_exp_radius`].
    pub fn for_exp_radius(x: f64) -> Result<Self> {
        Self::new(trace_for_exp_radius(x)?)
    }

    pub fn include_origin(mut self, include: bool) -> Self {
        self.include_origin = include;
        self
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn max_trace(&self) -> i128 {
        self.max_trace
    }

    pub fn includes_origin(&self) -> bool {
        self.include_origin
    }
}

/// `N = 2 cosh R = x + 1/x` rounded to the nearest integer, for `x = e^R`.
pub fn trace_for_exp_radius(x: f64) -> Result<i128> {
    if !x.is_finite() || x < 1.0 {
        return Err(Error::InvalidArgument(format!("e^R must be >= 1, got {x}")));
    }
    let n = (x + 1.0 / x).round();
    if n > MAX_ENUMERATION_TRACE as f64 {
        return Err(Error::TraceGuard {
            value: n as i128,
            limit: MAX_ENUMERATION_TRACE,
        });
    }
    Ok(n as i128)
}

/// Orbit points sorted by `(trace, B, D)` together with the trace bound
/// they are complete up to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    max_trace: i128,
    points: Vec<OrbitPoint>,
}

impl Enumeration {
    pub fn max_trace(&self) -> i128 {
        self.max_trace
    }

    pub fn points(&self) -> &[OrbitPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<OrbitPoint> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, OrbitPoint> {
        self.points.iter()
    }

    /// Number of listed points with trace `<= trace`.
    pub fn count_up_to(&self, trace: i128) -> usize {
        self.points.partition_point(|p| p.trace() <= trace)
    }

    /// The listed points with trace `< trace`.
    pub fn below(&self, trace: i128) -> &[OrbitPoint] {
        &self.points[..self.points.partition_point(|p| p.trace() < trace)]
    }

    pub fn contains(&self, z: &OrbitPoint) -> bool {
        self.points.binary_search(z).is_ok()
    }
}

impl<'a> IntoIterator for &'a Enumeration {
    type Item = &'a OrbitPoint;
    type IntoIter = std::slice::Iter<'a, OrbitPoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// All orbit points with `A + D <= N`, each exactly once, sorted by
/// `(trace, B, D)`.
pub fn enumerate(cfg: &EnumerationConfig) -> Result<Enumeration> {
    let n = cfg.max_trace as i64;
    let strategy = match cfg.strategy {
        Strategy::Auto if cfg.max_trace < SCAN_THRESHOLD => Strategy::Scan,
        Strategy::Auto => Strategy::Sieve,
        s => s,
    };
    let mut points: Vec<OrbitPoint> = match strategy {
        Strategy::Scan => (1..n)
            .into_par_iter()
            .flat_map_iter(|d| scan_column(n, d))
            .collect(),
        _ => {
            let spf = smallest_prime_factors(n as usize);
            (1..n)
                .into_par_iter()
                .flat_map_iter(|d| sieve_column(n, d, &spf))
                .collect()
        }
    };
    if !cfg.include_origin {
        points.retain(|p| !p.is_origin());
    }
    points.par_sort_unstable();
    Ok(Enumeration {
        max_trace: cfg.max_trace,
        points,
    })
}

/// `H`: the number of points in the disk, excluding `i` unless the config
/// includes it.
pub fn count_h(cfg: &EnumerationConfig) -> Result<u64> {
    let n = cfg.max_trace as i64;
    let spf = smallest_prime_factors(n as usize);
    let total: u64 = (1..n)
        .into_par_iter()
        .map(|d| {
            let bmax = column_bound(n, d);
            roots_of_minus_one(d, &spf)
                .into_iter()
                .map(|r| residue_count(r, d, bmax))
                .sum::<u64>()
        })
        .sum();
    Ok(if cfg.include_origin { total } else { total - 1 })
}

/// Largest `|B|` with `(B^2 + 1)/D + D <= N`, or `None` if the column is empty.
fn column_bound(n: i64, d: i64) -> Option<i64> {
    let room = d as i128 * (n - d) as i128 - 1;
    (room >= 0).then(|| isqrt(room) as i64)
}

fn scan_column(n: i64, d: i64) -> Vec<OrbitPoint> {
    let Some(bmax) = column_bound(n, d) else {
        return Vec::new();
    };
    (-bmax..=bmax)
        .filter(|&b| (b as i128 * b as i128 + 1) % d as i128 == 0)
        .map(|b| OrbitPoint::from_parts_unchecked(b as i128, d as i128))
        .collect()
}

fn sieve_column(n: i64, d: i64, spf: &[u32]) -> Vec<OrbitPoint> {
    let Some(bmax) = column_bound(n, d) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for r in roots_of_minus_one(d, spf) {
        // Smallest B >= -bmax with B = r (mod d).
        let mut b = r - (r + bmax).div_euclid(d) * d;
        while b <= bmax {
            out.push(OrbitPoint::from_parts_unchecked(b as i128, d as i128));
            b += d;
        }
    }
    out
}

/// Number of `B` in `[-bmax, bmax]` with `B = r (mod d)`.
fn residue_count(r: i64, d: i64, bmax: Option<i64>) -> u64 {
    let Some(bmax) = bmax else { return 0 };
    let hi = (bmax - r).div_euclid(d);
    let lo = (-bmax - r + d - 1).div_euclid(d);
    (hi - lo + 1).max(0) as u64
}

pub(crate) fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn pow_mod(base: i64, mut exp: i64, m: i64) -> i64 {
    let m = m as i128;
    let mut acc = 1i128 % m;
    let mut b = (base as i128).rem_euclid(m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as i64
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let (mut old_r, mut r) = (a.rem_euclid(m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} not invertible mod {m}");
    old_s.rem_euclid(m as i128) as i64
}

/// A square root of `-1` modulo a prime `p = 1 (mod 4)`.
fn sqrt_minus_one_mod_prime(p: i64) -> i64 {
    let half = (p - 1) / 2;
    let quarter = (p - 1) / 4;
    (2..p)
        .find(|&c| pow_mod(c, half, p) == p - 1)
        .map(|c| pow_mod(c, quarter, p))
        .expect("a non-residue exists below p")
}

/// All residues `r` in `[0, d)` with `r^2 = -1 (mod d)`, ascending.
pub(crate) fn roots_of_minus_one(d: i64, spf: &[u32]) -> Vec<i64> {
    let mut roots = vec![0i64];
    let mut modulus = 1i64;
    let mut rest = d;
    while rest > 1 {
        let p = spf[rest as usize] as i64;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        let (pk, local): (i64, Vec<i64>) = if p == 2 {
            if e > 1 {
                return Vec::new();
            }
            (2, vec![1])
        } else if p % 4 == 3 {
            return Vec::new();
        } else {
            let mut r = sqrt_minus_one_mod_prime(p);
            let mut pk = p;
            for _ in 1..e {
                pk *= p;
                // Newton step: r <- r - (r^2 + 1) / (2r) mod p^k.
                let f = ((r as i128 * r as i128 + 1) % pk as i128) as i64;
                let step = (f as i128 * inv_mod(2 * r, pk) as i128 % pk as i128) as i64;
                r = (r - step).rem_euclid(pk);
            }
            (pk, vec![r, pk - r])
        };
        let inv = inv_mod(modulus, pk);
        let mut combined = Vec::with_capacity(roots.len() * local.len());
        for &r1 in &roots {
            for &r2 in &local {
                let t = ((r2 - r1).rem_euclid(pk) as i128 * inv as i128 % pk as i128) as i64;
                combined.push(r1 + modulus * t);
            }
        }
        modulus *= pk;
        roots = combined;
    }
    roots.sort_unstable();
    roots
}
