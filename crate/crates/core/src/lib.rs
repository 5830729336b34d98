//! The orbit of `i` under `SL2(Z)` in the upper half-plane, in exact integer
//! arithmetic.
//!
//! An orbit point `z = (B + i)/D` is stored by its Gram matrix
//! `S = (A B; B D)` with `AD - B^2 = 1`; `A + D = 2 cosh d(i, z)`.
//! A point is visible from `i` when no other orbit point lies on the
//! geodesic segment between them.

mod arith;
pub mod counting;
pub mod enumeration;
mod error;
pub mod geometry;
pub mod orchard;
pub mod parse;
pub mod visibility;

pub use arith::{chebyshev_trace, divisors, exact_sqrt, factorize, gcd, isqrt, mobius_sieve};
pub use counting::{Census, CountReport, Grid};
pub use enumeration::{enumerate, Enumeration, EnumerationConfig, Strategy};
pub use error::{Error, Result};
pub use geometry::{
    OrbitPoint, Quadrant, QuadrantReport, SymmetricGram, Symmetry, UnimodularMatrix,
};
pub use orchard::{EclipseThreshold, FibonacciPair, Radius};
pub use parse::parse_point;
pub use visibility::{classify, is_visible, Ray, RayPosition, Visibility, Witness};
