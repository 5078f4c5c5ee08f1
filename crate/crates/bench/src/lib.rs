//! Benchmark fixtures shared by the criterion targets.

use setcross::{IntegerPartition, SetPartition};

/// The `(n, k)` cells timed for each distribution route.
pub const DIST_CELLS: [(usize, usize); 4] = [(8, 3), (12, 4), (20, 6), (30, 8)];

/// A deterministic partition of `[n]` with many crossings of both kinds.
pub fn dense_partition(n: usize, k: usize) -> SetPartition {
    let rgs = (0..n).map(|i| i % k).collect();
    SetPartition::from_rgs(rgs).expect("cyclic labels form a restricted growth string")
}

/// Every partition of `n` with exactly `k` parts.
pub fn shapes(n: usize, k: usize) -> Vec<IntegerPartition> {
    IntegerPartition::with_parts(n, k)
}
