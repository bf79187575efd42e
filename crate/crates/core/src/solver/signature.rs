use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

/// `(s_1, .., s_ℓ, ∞)` with `s_j = ⌊log_base |B_{≤j}|⌋` (and `-1` for an
/// empty prefix). The trailing sentinel exceeds every finite coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureVector {
    pub coordinates: Vec<i64>,
    pub sentinel: i64,
}

impl SignatureVector {
    pub fn from_prefix_sizes(base: &Rational, prefix_sizes: &[usize], sentinel: i64) -> Self {
        let coordinates = prefix_sizes
            .iter()
            .map(|&n| {
                if n == 0 {
                    -1
                } else {
                    rational::floor_log(base, n as u64)
                }
            })
            .collect();
        Self {
            coordinates,
            sentinel,
        }
    }

    /// Sentinel for a ground set of `ground` elements: `⌈log_base |X|⌉ + 1`.
    pub fn sentinel_for(base: &Rational, ground: usize) -> i64 {
        rational::ceil_log(base, ground.max(1) as u64) + 1
    }

    /// Coordinates followed by the sentinel.
    pub fn as_vec(&self) -> Vec<i64> {
        let mut v = self.coordinates.clone();
        v.push(self.sentinel);
        v
    }
}

impl PartialOrd for SignatureVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignatureVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_vec().cmp(&other.as_vec())
    }
}
