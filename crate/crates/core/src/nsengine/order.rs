//! The total order used to pick orbit representatives: first by the sum of
//! absolute values of the coordinates, then lexicographically.

use std::cmp::Ordering;

pub fn weight(x: &[i64]) -> i64 {
    x.iter().map(|c| c.abs()).sum()
}

pub fn total_cmp(x: &[i64], y: &[i64]) -> Ordering {
    weight(x).cmp(&weight(y)).then_with(|| x.cmp(y))
}

pub fn is_less(x: &[i64], y: &[i64]) -> bool {
    total_cmp(x, y) == Ordering::Less
}
