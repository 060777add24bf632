//! Range scanners for the two divisibility conditions.
//!
//! All-Type-I digraphs need `(k+1) | d(M(d,k)+1)`. Vertex-transitive ones
//! need that and additionally `(k+t) | (M(d,k)+1)(d^t - d^{t-1})` for
//! `2 ≤ t ≤ k-1`. Both are decided with residues modulo the divisor, so no
//! Moore bound is ever expanded.

use std::ops::RangeInclusive;

use crate::arithmetic::{moore_bound_mod, mul_mod, pow_mod};
use crate::par::{filter_map_range, Workers};

/// Number of `k` values examined per parallel batch; only hits are kept.
const CHUNK: u64 = 4096;

/// `(k+1) | d(M(d,k)+1)`.
pub fn is_type1_divisible(d: u64, k: u64) -> bool {
    let m = k + 1;
    let order = (moore_bound_mod(d, k, m) + 1) % m;
    mul_mod(d % m, order, m) == 0
}

/// `(k+t) | (M(d,k)+1)(d^t - d^{t-1})`.
fn vt_condition(d: u64, k: u64, t: u64) -> bool {
    let m = k + t;
    let order = (moore_bound_mod(d, k, m) + 1) % m;
    let diff = mul_mod(pow_mod(d, t - 1, m), (d + m - 1) % m, m);
    mul_mod(order, diff, m) == 0
}

/// The type-1 condition plus the cycle-count conditions for `2 ≤ t ≤ k-1`.
pub fn is_vt_feasible(d: u64, k: u64) -> bool {
    is_type1_divisible(d, k) && (2..k).all(|t| vt_condition(d, k, t))
}

fn scan_with(
    d_range: RangeInclusive<u64>,
    k_range: RangeInclusive<u64>,
    workers: Workers,
    pred: impl Fn(u64, u64) -> bool + Sync + Send + Copy,
    mut sink: impl FnMut(u64, u64),
) {
    let (k_lo, k_hi) = (*k_range.start(), *k_range.end());
    for d in d_range {
        let mut start = k_lo;
        while start <= k_hi {
            let end = k_hi.min(start.saturating_add(CHUNK - 1));
            for k in filter_map_range(start..end + 1, workers, move |k| pred(d, k).then_some(k)) {
                sink(d, k);
            }
            start = end + 1;
        }
    }
}

/// Streams every `(d, k)` passing the type-1 condition to `sink`, in
/// increasing `d` then `k` order, whatever the worker count.
pub fn scan_type1_divisibility_with(
    d_range: RangeInclusive<u64>,
    k_range: RangeInclusive<u64>,
    workers: Workers,
    sink: impl FnMut(u64, u64),
) {
    scan_with(d_range, k_range, workers, is_type1_divisible, sink);
}

pub fn scan_type1_divisibility(
    d_range: RangeInclusive<u64>,
    k_range: RangeInclusive<u64>,
) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    scan_type1_divisibility_with(d_range, k_range, Workers::default(), |d, k| {
        out.push((d, k))
    });
    out
}

/// Streams every vertex-transitive-feasible `(d, k)`, sorted as above.
pub fn scan_vt_feasible_with(
    d_range: RangeInclusive<u64>,
    k_range: RangeInclusive<u64>,
    workers: Workers,
    sink: impl FnMut(u64, u64),
) {
    scan_with(d_range, k_range, workers, is_vt_feasible, sink);
}

pub fn scan_vt_feasible(
    d_range: RangeInclusive<u64>,
    k_range: RangeInclusive<u64>,
) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    scan_vt_feasible_with(d_range, k_range, Workers::default(), |d, k| {
        out.push((d, k))
    });
    out
}
