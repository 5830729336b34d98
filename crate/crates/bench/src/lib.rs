//! Fixed workloads shared by the benchmarks.

use modvis_core::{enumerate, EnumerationConfig, OrbitPoint};

/// Trace bounds used across benchmark groups.
pub const SIZES: [i128; 3] = [1_000, 10_000, 100_000];

/// Every non-origin orbit point of the disk `A + D <= n`.
pub fn sample_points(n: i128) -> Vec<OrbitPoint> {
    enumerate(&EnumerationConfig::new(n).unwrap().include_origin(false))
        .unwrap()
        .into_points()
}
