//! Exact matrix algebra for the orbit of `i` under SL2(Z).
//!
//! Every orbit point is `z = gamma(i)` for some unimodular `gamma`, and is
//! encoded without stabilizer ambiguity by its Gram matrix
//! `gamma gamma^t = (A B; B D)`: then `z = (B + i)/D`, `A = (B^2 + 1)/D` and
//! `2 cosh d(i, z) = A + D`. All predicates work on these integers.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use crate::arith::{add, mul, sub};
use crate::error::{Error, Result};

/// Upper bound on `a^2 + b^2 + c^2 + d^2` accepted by the constructors.
///
/// With this guard every Gram entry fits in 62 bits, so the trace products
/// used by the distance formulas stay inside `i128`.
pub const MAX_TRACE_NORM: i128 = 1 << 62;

/// A 2x2 integer matrix of determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl UnimodularMatrix {
    pub const IDENTITY: Self = Self {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    /// The involution `z -> -1/z`, stabilizer of `i`.
    pub const J: Self = Self {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        let limit = 1i128 << 31;
        if [a, b, c, d].iter().any(|x| x.abs() > limit) {
            return Err(Error::Overflow("matrix entries"));
        }
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::NotUnimodular { a, b, c, d, det });
        }
        let norm = a * a + b * b + c * c + d * d;
        if norm > MAX_TRACE_NORM {
            return Err(Error::TraceGuard {
                value: norm,
                limit: MAX_TRACE_NORM,
            });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn entries(&self) -> [i128; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `a^2 + b^2 + c^2 + d^2`, which equals `2 cosh d(i, gamma(i))`.
    pub fn trace_norm(&self) -> i128 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// `gamma gamma^t`.
    pub fn gram(&self) -> SymmetricGram {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        SymmetricGram {
            a: a * a + b * b,
            b: a * c + b * d,
            d: c * c + d * d,
        }
    }

    /// `gamma(i) = ((ac + bd) + i) / (c^2 + d^2)`.
    pub fn apply_to_i(&self) -> OrbitPoint {
        self.gram().point()
    }

    pub fn transpose(&self) -> Self {
        Self {
            a: self.a,
            b: self.c,
            c: self.b,
            d: self.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let what = "matrix product";
        let a = add(mul(self.a, rhs.a, what)?, mul(self.b, rhs.c, what)?, what)?;
        let b = add(mul(self.a, rhs.b, what)?, mul(self.b, rhs.d, what)?, what)?;
        let c = add(mul(self.c, rhs.a, what)?, mul(self.d, rhs.c, what)?, what)?;
        let d = add(mul(self.c, rhs.b, what)?, mul(self.d, rhs.d, what)?, what)?;
        Self::new(a, b, c, d).map_err(|e| match e {
            Error::TraceGuard { .. } => Error::Overflow(what),
            other => other,
        })
    }

    /// The four matrices `gamma * {I, -I, j, -j}`; all map `i` to the same point.
    pub fn stabilizer_coset(&self) -> [Self; 4] {
        let gj = Self {
            a: self.b,
            b: -self.a,
            c: self.d,
            d: -self.c,
        };
        [*self, self.negate(), gj, gj.negate()]
    }

    /// The representative of the coset `gamma * {±I, ±j}` whose first row
    /// `(a, b)` satisfies `a > 0, b >= 0`; exactly one such exists.
    pub fn normalize_stabilizer(&self) -> Self {
        self.stabilizer_coset()
            .into_iter()
            .find(|m| m.a > 0 && m.b >= 0)
            .expect("one of four quarter turns of a nonzero row has a > 0, b >= 0")
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// A symmetric positive definite integer matrix `(A B; B D)` with
/// `AD - B^2 = 1`, i.e. `gamma gamma^t` for some unimodular `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetricGram {
    a: i128,
    b: i128,
    d: i128,
}

impl SymmetricGram {
    pub const IDENTITY: Self = Self { a: 1, b: 0, d: 1 };

    pub fn new(a: i128, b: i128, d: i128) -> Result<Self> {
        if a < 1 || d < 1 || a > MAX_TRACE_NORM || d > MAX_TRACE_NORM - a {
            return Err(Error::InvalidGram { a, b, d });
        }
        let det = a
            .checked_mul(d)
            .zip(b.checked_mul(b))
            .map(|(ad, bb)| ad - bb);
        if det != Some(1) {
            return Err(Error::InvalidGram { a, b, d });
        }
        Ok(Self { a, b, d })
    }

    /// Top-left entry `A`.
    pub fn a(&self) -> i128 {
        self.a
    }

    /// Off-diagonal entry `B`.
    pub fn b(&self) -> i128 {
        self.b
    }

    /// Bottom-right entry `D`.
    pub fn d(&self) -> i128 {
        self.d
    }

    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    /// The orbit point `(B + i)/D` of any `gamma` with `gamma gamma^t = self`.
    pub fn point(&self) -> OrbitPoint {
        OrbitPoint {
            b: self.b,
            d: self.d,
            a: self.a,
        }
    }

    /// The Gram matrix viewed as an element of SL2(Z).
    pub fn as_matrix(&self) -> Result<UnimodularMatrix> {
        UnimodularMatrix::new(self.a, self.b, self.b, self.d)
    }
}

/// An orbit point `z = (B + i)/D` with `D | B^2 + 1`.
///
/// Ordering is by `(trace, B, D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbitPoint {
    b: i128,
    d: i128,
    a: i128,
}

impl OrbitPoint {
    /// The base point `i`.
    pub const ORIGIN: Self = Self { b: 0, d: 1, a: 1 };

    pub fn new(b: i128, d: i128) -> Result<Self> {
        if d < 1 {
            return Err(Error::NotOrbitPoint { b, d });
        }
        if b.abs() >= MAX_TRACE_NORM || d > MAX_TRACE_NORM {
            return Err(Error::TraceGuard {
                value: b.abs().max(d),
                limit: MAX_TRACE_NORM,
            });
        }
        let num = b * b + 1;
        if num % d != 0 {
            return Err(Error::NotOrbitPoint { b, d });
        }
        let a = num / d;
        if a > MAX_TRACE_NORM - d {
            return Err(Error::TraceGuard {
                value: a.saturating_add(d),
                limit: MAX_TRACE_NORM,
            });
        }
        Ok(Self { b, d, a })
    }

    /// Caller guarantees `d >= 1` and `d | b^2 + 1` within the guard.
    pub(crate) fn from_parts_unchecked(b: i128, d: i128) -> Self {
        debug_assert!(d >= 1 && (b * b + 1) % d == 0);
        Self {
            b,
            d,
            a: (b * b + 1) / d,
        }
    }

    pub fn b(&self) -> i128 {
        self.b
    }

    pub fn d(&self) -> i128 {
        self.d
    }

    /// `A = (B^2 + 1)/D`.
    pub fn a(&self) -> i128 {
        self.a
    }

    /// `A + D = 2 cosh d(i, z)`.
    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn is_origin(&self) -> bool {
        self.b == 0 && self.d == 1
    }

    pub fn gram(&self) -> SymmetricGram {
        SymmetricGram {
            a: self.a,
            b: self.b,
            d: self.d,
        }
    }

    /// Image under the isometry `T_k` fixing `i`.
    pub fn symmetry(&self, k: Symmetry) -> Self {
        match k {
            Symmetry::T1 => *self,
            Symmetry::T2 => Self {
                b: self.b,
                d: self.a,
                a: self.d,
            },
            Symmetry::T3 => Self {
                b: -self.b,
                d: self.a,
                a: self.d,
            },
            Symmetry::T4 => Self {
                b: -self.b,
                d: self.d,
                a: self.a,
            },
        }
    }

    pub fn quadrant(&self) -> QuadrantReport {
        let quadrant = match (self.b >= 0, self.a <= self.d) {
            (true, true) => Quadrant::Q1,
            (true, false) => Quadrant::Q2,
            (false, false) => Quadrant::Q3,
            (false, true) => Quadrant::Q4,
        };
        let on_boundary = self.b == 0 || self.a == self.d;
        // D^2 - B^2 = 1 forces B = 0, so only i sits on a quadrant boundary.
        debug_assert_eq!(on_boundary, self.is_origin());
        QuadrantReport {
            quadrant,
            on_boundary,
        }
    }

    /// Moves `z != i` into the first quadrant, returning the image and the
    /// symmetry used (which is its own inverse).
    pub fn normalize_to_q1(&self) -> Result<(Self, Symmetry)> {
        if self.is_origin() {
            return Err(Error::BasePoint);
        }
        let k = self.quadrant().quadrant.symmetry_to_q1();
        Ok((self.symmetry(k), k))
    }

    /// Real part as a float, for reports.
    pub fn re(&self) -> f64 {
        self.b as f64 / self.d as f64
    }

    /// Imaginary part as a float, for reports.
    pub fn im(&self) -> f64 {
        1.0 / self.d as f64
    }

    /// `d(i, z)` as a float.
    pub fn distance(&self) -> f64 {
        (self.trace() as f64 / 2.0).acosh()
    }
}

impl Ord for OrbitPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.trace(), self.b, self.d).cmp(&(other.trace(), other.b, other.d))
    }
}

impl PartialOrd for OrbitPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+i)/{}", self.b, self.d)
    }
}

/// The four isometries of the half-plane fixing `i` and preserving the orbit:
/// `z`, `1/conj(z)`, `-1/z`, `-conj(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    T1,
    T2,
    T3,
    T4,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [Symmetry::T1, Symmetry::T2, Symmetry::T3, Symmetry::T4];

    pub fn index(&self) -> u8 {
        match self {
            Symmetry::T1 => 1,
            Symmetry::T2 => 2,
            Symmetry::T3 => 3,
            Symmetry::T4 => 4,
        }
    }

    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Symmetry::T1),
            2 => Ok(Symmetry::T2),
            3 => Ok(Symmetry::T3),
            4 => Ok(Symmetry::T4),
            _ => Err(Error::InvalidArgument(format!(
                "symmetry index {k} not in 1..=4"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    /// `|z| <= 1`, `Re z >= 0`.
    Q1,
    /// `|z| >= 1`, `Re z >= 0`.
    Q2,
    /// `|z| >= 1`, `Re z <= 0`.
    Q3,
    /// `|z| <= 1`, `Re z <= 0`.
    Q4,
}

impl Quadrant {
    /// `T_k` restricted to `Q_k` is an isometry onto `Q_1`.
    pub fn symmetry_to_q1(&self) -> Symmetry {
        match self {
            Quadrant::Q1 => Symmetry::T1,
            Quadrant::Q2 => Symmetry::T2,
            Quadrant::Q3 => Symmetry::T3,
            Quadrant::Q4 => Symmetry::T4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadrantReport {
    pub quadrant: Quadrant,
    /// True only for `z = i`, which lies on the boundary of all four.
    pub on_boundary: bool,
}

/// `2 cosh d(i, gamma(i))`.
pub fn trace_norm(g: &UnimodularMatrix) -> i128 {
    g.trace_norm()
}

/// Finds `gamma` with `gamma gamma^t = s`, normalized so that its first row
/// satisfies `a > 0, b >= 0`.
///
/// Reduces the positive definite form `A x^2 + 2B xy + D y^2` of determinant
/// one to `x^2 + y^2`, accumulating the change of variables `P` with
/// `P^t S P = I`; then `gamma = P^{-t}`.
pub fn gram_decompose(s: &SymmetricGram) -> Result<UnimodularMatrix> {
    // Revalidate: callers may hold a Gram built through `new` only, but keep
    // the reduction honest about its precondition.
    let s = SymmetricGram::new(s.a, s.b, s.d)?;
    let (mut a, mut b, mut d) = (s.a, s.b, s.d);
    // P as plain integers; |entries| stay below sqrt(trace).
    let (mut p11, mut p12, mut p21, mut p22) = (1i128, 0i128, 0i128, 1i128);
    loop {
        // Translate: x -> x + k y sends B to B + kA; pick k with |B| <= A/2.
        let k = -div_round(b, a);
        if k != 0 {
            d = d + 2 * k * b + k * k * a;
            b += k * a;
            p12 += k * p11;
            p22 += k * p21;
        }
        if a > d {
            // Swap: (x, y) -> (-y, x), i.e. P <- P (0 -1; 1 0).
            std::mem::swap(&mut a, &mut d);
            b = -b;
            let (n11, n12, n21, n22) = (p12, -p11, p22, -p21);
            p11 = n11;
            p12 = n12;
            p21 = n21;
            p22 = n22;
            continue;
        }
        break;
    }
    // A reduced form of determinant one has A = D = 1, B = 0.
    debug_assert_eq!((a, b, d), (1, 0, 1));
    // gamma = P^{-t}; P^{-1} = (p22 -p12; -p21 p11).
    let gamma = UnimodularMatrix::new(p22, -p21, -p12, p11)?.normalize_stabilizer();
    debug_assert_eq!(gamma.gram(), s);
    Ok(gamma)
}

/// Nearest integer to `num / den` for `den > 0`, ties toward zero.
fn div_round(num: i128, den: i128) -> i128 {
    let q = num.div_euclid(den);
    let r = num.rem_euclid(den);
    if 2 * r > den || (2 * r == den && q < 0) {
        q + 1
    } else {
        q
    }
}

/// The unique `gamma` with `a, b >= 0`, `ac + bd > 0`, `a^2 + b^2 < c^2 + d^2`
/// and `gamma(i) = z`, for `z` in the interior of the first quadrant.
///
/// When `a = 0` or `b = 0` two coset members meet the sign constraints; the
/// one with `a > 0` is returned.
pub fn canonical_rep(z: &OrbitPoint) -> Result<UnimodularMatrix> {
    if z.is_origin() {
        return Err(Error::BasePoint);
    }
    if !(z.b > 0 && z.a < z.d) {
        return Err(Error::OutsideFirstQuadrant { b: z.b, d: z.d });
    }
    gram_decompose(&z.gram())
}

/// `Tr(S_z j S_w)` for the Gram matrices of `z` and `w`:
/// `B_z (A_w - D_w) - B_w (A_z - D_z)`.
pub fn trace_product(z: &OrbitPoint, w: &OrbitPoint) -> Result<i128> {
    let what = "trace product";
    let left = mul(z.b, w.a - w.d, what)?;
    let right = mul(w.b, z.a - z.d, what)?;
    sub(left, right, what)
}

/// `sinh^2` of the distance from `z` to the complete geodesic through `i`
/// and `w`: `T^2 / (N_w^2 - 4)` with `T = Tr(S_z j S_w)`, `N_w = A_w + D_w`.
pub fn geodesic_distance_sinh(z: &OrbitPoint, w: &OrbitPoint) -> Result<Ratio<i128>> {
    if w.is_origin() {
        return Err(Error::BasePoint);
    }
    let t = trace_product(z, w)?;
    let num = mul(t, t, "squared trace product")?;
    let n = w.trace();
    let den = sub(mul(n, n, "squared trace")?, 4, "squared trace")?;
    Ok(Ratio::new(num, den))
}

/// `cosh d(i, z) = (A + D)/2`.
pub fn cosh_distance(z: &OrbitPoint) -> Ratio<i128> {
    Ratio::new(z.trace(), 2)
}

/// `2 cosh d(z, w) = Tr(S_z S_w^{-1}) = A_z D_w - 2 B_z B_w + D_z A_w`.
pub fn pair_trace(z: &OrbitPoint, w: &OrbitPoint) -> Result<i128> {
    let what = "pair trace";
    let t1 = mul(z.a, w.d, what)?;
    let t2 = mul(2 * z.b, w.b, what)?;
    let t3 = mul(z.d, w.a, what)?;
    add(sub(t1, t2, what)?, t3, what)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i128, b: i128, c: i128, d: i128) -> UnimodularMatrix {
        UnimodularMatrix::new(a, b, c, d).unwrap()
    }

    fn p(b: i128, d: i128) -> OrbitPoint {
        OrbitPoint::new(b, d).unwrap()
    }

    #[test]
    fn trace_norm_examples() {
        assert_eq!(trace_norm(&UnimodularMatrix::IDENTITY), 2);
        assert_eq!(trace_norm(&UnimodularMatrix::J), 2);
        let g = m(2, 1, 3, 2);
        assert_eq!(trace_norm(&g), 18);
        assert_eq!(cosh_distance(&g.apply_to_i()), Ratio::from_integer(9));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(m(2, 1, 3, 2).gram(), SymmetricGram::new(5, 8, 13).unwrap());
        assert_eq!(UnimodularMatrix::IDENTITY.gram(), SymmetricGram::IDENTITY);
        assert_eq!(
            m(1, 3, 2, 7).gram(),
            SymmetricGram::new(10, 23, 53).unwrap()
        );
    }

    #[test]
    fn apply_to_i_examples() {
        assert_eq!(UnimodularMatrix::J.apply_to_i(), OrbitPoint::ORIGIN);
        assert_eq!(m(2, 1, 3, 2).apply_to_i(), p(8, 13));
        assert_eq!(m(1, 3, 2, 7).apply_to_i(), p(23, 53));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            UnimodularMatrix::new(2, 0, 0, 1),
            Err(Error::NotUnimodular { det: 2, .. })
        ));
        assert!(SymmetricGram::new(2, 2, 2).is_err());
        assert!(SymmetricGram::new(-1, 0, -1).is_err());
        assert!(matches!(
            OrbitPoint::new(2, 3),
            Err(Error::NotOrbitPoint { .. })
        ));
        assert!(OrbitPoint::new(1, 0).is_err());
        assert!(matches!(
            UnimodularMatrix::new(1 << 31, 0, 0, 1),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn symmetry_examples() {
        let z = p(8, 13);
        assert_eq!(z.symmetry(Symmetry::T2), p(8, 5));
        assert_eq!(z.symmetry(Symmetry::T4), p(-8, 13));
        assert_eq!(z.symmetry(Symmetry::T3).symmetry(Symmetry::T3), z);
        for k in Symmetry::ALL {
            assert_eq!(OrbitPoint::ORIGIN.symmetry(k), OrbitPoint::ORIGIN);
        }
    }

    #[test]
    fn t2_agrees_with_matrix_action() {
        // T2(gamma i) = (-c d; -a b) i.
        let g = m(2, 1, 3, 2);
        let [a, b, c, d] = g.entries();
        assert_eq!(
            g.apply_to_i().symmetry(Symmetry::T2),
            m(-c, d, -a, b).apply_to_i()
        );
        // T3(gamma i) = j gamma i.
        let jg = UnimodularMatrix::J.checked_mul(&g).unwrap();
        assert_eq!(g.apply_to_i().symmetry(Symmetry::T3), jg.apply_to_i());
    }

    #[test]
    fn quadrant_examples() {
        assert_eq!(p(8, 13).quadrant().quadrant, Quadrant::Q1);
        assert_eq!(p(1, 1).quadrant().quadrant, Quadrant::Q2);
        assert_eq!(p(-1, 1).quadrant().quadrant, Quadrant::Q3);
        assert_eq!(p(-1, 2).quadrant().quadrant, Quadrant::Q4);
        assert!(OrbitPoint::ORIGIN.quadrant().on_boundary);
        assert!(!p(8, 13).quadrant().on_boundary);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            p(-8, 13).normalize_to_q1().unwrap(),
            (p(8, 13), Symmetry::T4)
        );
        assert_eq!(p(8, 5).normalize_to_q1().unwrap(), (p(8, 13), Symmetry::T2));
        assert_eq!(
            p(8, 13).normalize_to_q1().unwrap(),
            (p(8, 13), Symmetry::T1)
        );
        assert_eq!(
            p(-8, 5).normalize_to_q1().unwrap(),
            (p(8, 13), Symmetry::T3)
        );
        assert_eq!(OrbitPoint::ORIGIN.normalize_to_q1(), Err(Error::BasePoint));
    }

    #[test]
    fn gram_decompose_examples() {
        assert_eq!(
            gram_decompose(&SymmetricGram::IDENTITY).unwrap(),
            UnimodularMatrix::IDENTITY
        );
        let s = SymmetricGram::new(5, 8, 13).unwrap();
        let g = gram_decompose(&s).unwrap();
        assert_eq!(g.gram(), s);
        assert_eq!(g, m(2, 1, 3, 2));
        let s = SymmetricGram::new(2, 1, 1).unwrap();
        let g = gram_decompose(&s).unwrap();
        assert_eq!(g.gram(), s);
        let [a, b, _, _] = g.entries();
        assert!(a > 0 && b >= 0);
    }

    #[test]
    fn canonical_rep_examples() {
        let g = canonical_rep(&p(8, 13)).unwrap();
        assert_eq!(g.gram(), SymmetricGram::new(5, 8, 13).unwrap());
        assert_eq!(canonical_rep(&p(1, 2)).unwrap(), m(1, 0, 1, 1));
        let g = canonical_rep(&p(23, 53)).unwrap();
        assert_eq!(g.gram(), SymmetricGram::new(10, 23, 53).unwrap());
        assert_eq!(g, m(1, 3, 2, 7));
        assert_eq!(canonical_rep(&OrbitPoint::ORIGIN), Err(Error::BasePoint));
        assert!(matches!(
            canonical_rep(&p(8, 5)),
            Err(Error::OutsideFirstQuadrant { .. })
        ));
    }

    #[test]
    fn canonical_rep_tie_case() {
        // (1+i)/2 has A = 1: both (1,0;1,1) and (0,1;-1,1) satisfy a, b >= 0.
        let z = p(1, 2);
        let alt = m(0, 1, -1, 1);
        assert_eq!(alt.apply_to_i(), z);
        let g = canonical_rep(&z).unwrap();
        let [a, b, c, d] = g.entries();
        assert!(a > 0 && b >= 0 && a * c + b * d > 0 && a * a + b * b < c * c + d * d);
    }

    #[test]
    fn geodesic_distance_examples() {
        let w = p(8, 13);
        assert_eq!(
            geodesic_distance_sinh(&w, &w).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(
            geodesic_distance_sinh(&OrbitPoint::ORIGIN, &w).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(
            geodesic_distance_sinh(&w, &OrbitPoint::ORIGIN),
            Err(Error::BasePoint)
        );
        // Far along the nearly vertical geodesics through (k+i)/(k^2+1) the
        // distance from 1+i tends to its distance to the imaginary axis.
        let z = p(1, 1);
        let k = 1_000_000i128;
        let s = geodesic_distance_sinh(&z, &p(k, k * k + 1)).unwrap();
        let v = *s.numer() as f64 / *s.denom() as f64;
        assert!((v - 1.0).abs() < 1e-5, "{v}");
    }

    #[test]
    fn cosh_distance_examples() {
        assert_eq!(cosh_distance(&OrbitPoint::ORIGIN), Ratio::from_integer(1));
        assert_eq!(cosh_distance(&p(8, 13)), Ratio::from_integer(9));
        assert_eq!(cosh_distance(&p(1, 1)), Ratio::new(3, 2));
    }

    #[test]
    fn pair_trace_matches_float_distance() {
        let (z, w) = (p(-1, 1), p(1, 1));
        assert_eq!(pair_trace(&z, &w).unwrap(), 6);
        for (z, w) in [
            (p(8, 13), p(23, 53)),
            (p(2, 5), p(-3, 10)),
            (p(1, 1), p(1, 2)),
        ] {
            let dx = z.re() - w.re();
            let dy = z.im() - w.im();
            let cosh = 1.0 + (dx * dx + dy * dy) / (2.0 * z.im() * w.im());
            assert!((2.0 * cosh - pair_trace(&z, &w).unwrap() as f64).abs() < 1e-9);
        }
    }
}
