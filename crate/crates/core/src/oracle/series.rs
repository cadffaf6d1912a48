//! Partial sums of the Basel series.

use std::f64::consts::PI;

/// Beyond this many terms the tail is taken from its Euler-Maclaurin expansion.
const DIRECT_LIMIT: u64 = 10_000;

pub const ZETA2: f64 = PI * PI / 6.0;

/// `sum_{n=1}^{m} 1/n^2`.
///
/// The tail `pi^2/6 - S(m)` lies strictly between `1/(m+1)` and `1/m`.
pub fn partial_zeta2(m: u64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    if m <= DIRECT_LIMIT {
        // smallest terms first
        (1..=m).rev().map(|n| 1.0 / (n as f64 * n as f64)).sum()
    } else {
        ZETA2 - zeta2_tail(m)
    }
}

/// `sum_{n>m} 1/n^2` from the Euler-Maclaurin expansion; accurate to rounding for m > 100.
pub fn zeta2_tail(m: u64) -> f64 {
    let x = m as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    inv * (1.0 - 0.5 * inv + inv2 / 6.0 - inv2 * inv2 / 30.0 + inv2 * inv2 * inv2 / 42.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        assert_eq!(partial_zeta2(1), 1.0);
        assert!((partial_zeta2(5) - 1.463_611_111_111_111).abs() < 1e-15);
        assert_eq!(partial_zeta2(0), 0.0);
    }

    #[test]
    fn expansion_matches_direct_sum_at_switch() {
        let m = DIRECT_LIMIT + 1;
        let direct: f64 = (1..=m).rev().map(|n| 1.0 / (n as f64 * n as f64)).sum();
        assert!((partial_zeta2(m) - direct).abs() < 1e-14);
        let direct_tail = ZETA2 - partial_zeta2(200);
        assert!((zeta2_tail(200) - direct_tail).abs() < 1e-14);
    }

    #[test]
    fn tail_bounds() {
        for m in [1u64, 2, 7, 50, 999, 10_000, 123_456, 10_000_000] {
            let tail = ZETA2 - partial_zeta2(m);
            let x = m as f64;
            assert!(tail > 1.0 / (x + 1.0) - 1e-15, "m={m}");
            assert!(tail < 1.0 / x, "m={m}");
        }
    }

    #[test]
    fn converges_to_basel_constant() {
        assert!((partial_zeta2(1_000_000_000) - 1.644_934_066_848_226_4).abs() < 2e-9);
    }
}
