//! Visibility of orbit points from `i`.
//!
//! Two independent routes decide the same predicate:
//!
//! * [`classify`] is arithmetic. After moving `z` into the first quadrant,
//!   `z` is hidden iff some divisor `b < B` of `B` admits `1 <= a <= b < d`
//!   with `ad = b^2 + 1` and `B (d - a) = b (D - A)`. The blocking point is
//!   then `(b + i)/d`.
//! * [`is_visible_oracle`] is geometric. Geodesics through `i` are
//!   semicircles centred at `(A - D)/(2B)`; two points share a ray iff they
//!   have the same centre and `B` of the same sign.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::arith::{chebyshev_trace, divisors, exact_sqrt, gcd};
use crate::enumeration::Enumeration;
use crate::error::{Error, Result};
use crate::geometry::{gram_decompose, OrbitPoint, SymmetricGram, UnimodularMatrix};

/// Gram entries `(a, b, d)` of the visible point `(b + i)/d` that hides a
/// first-quadrant point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Witness {
    pub a: i128,
    pub b: i128,
    pub d: i128,
}

impl Witness {
    /// The blocking point, in the first quadrant.
    pub fn point(&self) -> OrbitPoint {
        OrbitPoint::from_parts_unchecked(self.b, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visibility {
    Visible,
    Hidden(Witness),
}

impl Visibility {
    pub fn is_visible(&self) -> bool {
        matches!(self, Visibility::Visible)
    }
}

/// Arithmetic visibility test with the smallest witness when hidden.
pub fn classify(z: &OrbitPoint) -> Result<Visibility> {
    let (q, _) = z.normalize_to_q1()?;
    let (big_b, diff) = (q.b(), q.d() - q.a());
    if gcd(big_b, diff) == 1 {
        return Ok(Visibility::Visible);
    }
    for b in divisors(big_b) {
        if b >= big_b {
            break;
        }
        // d - a = b (D - A) / B must be an integer.
        let scaled = b * diff;
        if scaled % big_b != 0 {
            continue;
        }
        let s = scaled / big_b;
        // a (a + s) = b^2 + 1.
        let Some(root) = exact_sqrt(s * s + 4 * (b * b + 1)) else {
            continue;
        };
        if (root - s) % 2 != 0 {
            continue;
        }
        let a = (root - s) / 2;
        let d = a + s;
        if 1 <= a && a <= b && b < d {
            debug_assert_eq!(a * d, b * b + 1);
            return Ok(Visibility::Hidden(Witness { a, b, d }));
        }
    }
    Ok(Visibility::Visible)
}

pub fn is_visible(z: &OrbitPoint) -> Result<bool> {
    classify(z).map(|v| v.is_visible())
}

/// `V(z) = (B, D - A)`.
pub fn v_map(z: &OrbitPoint) -> Result<(i128, i128)> {
    if z.is_origin() {
        return Err(Error::BasePoint);
    }
    Ok((z.b(), z.d() - z.a()))
}

/// Coprimality of the coordinates of a nonzero lattice point.
pub fn visible_euclidean(p: (i128, i128)) -> Result<bool> {
    if p == (0, 0) {
        return Err(Error::InvalidArgument("origin has no visibility".into()));
    }
    Ok(gcd(p.0, p.1) == 1)
}

/// The geodesic ray from `i` through `z`, as (side, reduced centre) with
/// centre `(A - D)/B` up to the factor 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RayKey {
    positive: bool,
    centre: (i128, i128),
}

impl RayKey {
    pub fn of(z: &OrbitPoint) -> Result<Self> {
        if z.is_origin() {
            return Err(Error::BasePoint);
        }
        // Only i has B = 0, so no vertical geodesic occurs.
        assert_ne!(z.b(), 0, "non-origin orbit point with B = 0");
        let c = Ratio::new(z.a() - z.d(), z.b());
        Ok(Self {
            positive: z.b() > 0,
            centre: (*c.numer(), *c.denom()),
        })
    }
}

/// Whether `w` lies on the open segment from `i` to `z`: same ray and `w`
/// strictly closer to `i`.
pub fn between(w: &OrbitPoint, z: &OrbitPoint) -> bool {
    !w.is_origin()
        && w.trace() < z.trace()
        && (w.b() > 0) == (z.b() > 0)
        && (z.a() - z.d()) * w.b() == (w.a() - w.d()) * z.b()
}

/// Brute-force visibility: no orbit point of smaller trace on the same ray.
/// `points` must contain every orbit point with trace below that of `z`.
pub fn is_visible_oracle(z: &OrbitPoint, points: &Enumeration) -> Result<bool> {
    if z.is_origin() {
        return Err(Error::BasePoint);
    }
    if points.max_trace() < z.trace() - 1 {
        return Err(Error::InsufficientRange {
            covered: points.max_trace(),
            needed: z.trace() - 1,
        });
    }
    Ok(!points.below(z.trace()).iter().any(|w| between(w, z)))
}

/// A ray from `i` containing orbit points, generated by its visible point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ray {
    generator: UnimodularMatrix,
    translation: SymmetricGram,
    spacing_cosh: Ratio<i128>,
}

impl Ray {
    /// `generator(i)` is taken to be the visible point of its ray.
    pub fn from_generator(generator: UnimodularMatrix) -> Result<Self> {
        let translation = generator.gram();
        if translation == SymmetricGram::IDENTITY {
            return Err(Error::BasePoint);
        }
        Ok(Self {
            generator,
            translation,
            spacing_cosh: Ratio::new(generator.trace_norm(), 2),
        })
    }

    /// The ray through a visible point.
    pub fn through(visible: &OrbitPoint) -> Result<Self> {
        if visible.is_origin() {
            return Err(Error::BasePoint);
        }
        Self::from_generator(gram_decompose(&visible.gram())?)
    }

    pub fn generator(&self) -> UnimodularMatrix {
        self.generator
    }

    /// `S = gamma gamma^t`, which translates the ray by twice the spacing.
    pub fn translation(&self) -> SymmetricGram {
        self.translation
    }

    /// `cosh l` for the distance `l` between consecutive points.
    pub fn spacing_cosh(&self) -> Ratio<i128> {
        self.spacing_cosh
    }

    pub fn visible_point(&self) -> OrbitPoint {
        self.translation.point()
    }

    /// The `n`-th orbit point on the ray (`n >= 1`): `S^m gamma (i)` for
    /// `n = 2m + 1`, `S^m (i)` for `n = 2m`.
    pub fn point(&self, n: u32) -> Result<OrbitPoint> {
        if n == 0 {
            return Err(Error::InvalidArgument("ray index starts at 1".into()));
        }
        let s = self.translation.as_matrix()?;
        let mut acc = if n % 2 == 1 {
            self.generator
        } else {
            UnimodularMatrix::IDENTITY
        };
        for _ in 0..n / 2 {
            acc = s.checked_mul(&acc)?;
        }
        Ok(acc.apply_to_i())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RayPosition {
    pub ray: Ray,
    /// Position counted from `i`; the visible point has index 1.
    pub index: u32,
}

impl RayPosition {
    pub fn is_even_place(&self) -> bool {
        self.index.is_multiple_of(2)
    }
}

/// Locates `z` on its ray: the visible point is the smallest witness of
/// [`classify`] (mapped back to the quadrant of `z`), and the index `n`
/// solves `2 cosh(n l) = trace(z)` exactly.
pub fn ray_decompose(z: &OrbitPoint) -> Result<RayPosition> {
    let (q, k) = z.normalize_to_q1()?;
    let visible = match classify(&q)? {
        Visibility::Visible => *z,
        Visibility::Hidden(w) => w.point().symmetry(k),
    };
    let ray = Ray::through(&visible)?;
    let index = chebyshev_index(visible.trace(), z.trace())?;
    if index > 1 && ray.point(index)? != *z {
        return Err(Error::InvalidArgument(format!(
            "{z} is not at index {index} of the ray through {visible}"
        )));
    }
    Ok(RayPosition { ray, index })
}

/// The `n >= 1` with `C_n(base) = target`.
fn chebyshev_index(base: i128, target: i128) -> Result<u32> {
    let mut n = 1;
    loop {
        let c = chebyshev_trace(base, n)?;
        if c == target {
            return Ok(n);
        }
        if c > target {
            return Err(Error::InvalidArgument(format!(
                "trace {target} is not on the ray of trace {base}"
            )));
        }
        n += 1;
    }
}

/// Whether `z = tau(i)` for a symmetric `tau = (a b; b d)` in SL2(Z), i.e.
/// `B = (a + d) b` and `D = b^2 + d^2` with `ad = b^2 + 1`.
pub fn even_place_witness(z: &OrbitPoint) -> Result<Option<SymmetricGram>> {
    if z.is_origin() {
        return Err(Error::BasePoint);
    }
    // tau and -tau give the same point; take a, d > 0, so sign(b) = sign(B).
    let sign = z.b().signum();
    for m in divisors(z.b().abs()) {
        let b = sign * m;
        let Some(d) = exact_sqrt(z.d() - b * b) else {
            continue;
        };
        if d == 0 || (b * b + 1) % d != 0 {
            continue;
        }
        let a = (b * b + 1) / d;
        if (a + d) * b == z.b() {
            return SymmetricGram::new(a, b, d).map(Some);
        }
    }
    Ok(None)
}

pub fn is_even_place(z: &OrbitPoint) -> Result<bool> {
    even_place_witness(z).map(|w| w.is_some())
}

/// Groups an enumeration by ray, ordering each ray by trace. Built only from
/// the same-ray relation, so it serves as an oracle for ray positions.
#[derive(Debug, Clone)]
pub struct RayIndex {
    rays: HashMap<RayKey, Vec<OrbitPoint>>,
}

impl RayIndex {
    pub fn new(points: &Enumeration) -> Self {
        let mut rays: HashMap<RayKey, Vec<OrbitPoint>> = HashMap::new();
        for z in points.iter().filter(|z| !z.is_origin()) {
            let key = RayKey::of(z).expect("non-origin");
            rays.entry(key).or_default().push(*z);
        }
        // Enumerations are sorted, so each group already is.
        Self { rays }
    }

    /// Position of `z` on its ray (1-based) and the ray's first point.
    pub fn position(&self, z: &OrbitPoint) -> Option<(u32, OrbitPoint)> {
        let group = self.rays.get(&RayKey::of(z).ok()?)?;
        let idx = group.iter().position(|w| w == z)?;
        Some((idx as u32 + 1, group[0]))
    }

    pub fn rays(&self) -> impl Iterator<Item = &[OrbitPoint]> {
        self.rays.values().map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}
