//! Integer sign-change search and accelerated fixed-point iteration.

use crate::error::{Error, Result};

/// Scans `lo..=hi` and returns the integer next to the first sign change of `f`
/// with the smaller `|f|`.
pub fn find_sign_change<F: Fn(u64) -> f64>(f: F, lo: u64, hi: u64) -> Result<u64> {
    find_sign_change_among(f, lo..=hi)
}

/// Like [`find_sign_change`] but only visits the given ascending candidates
/// (e.g. the admissible ruling counts).
pub fn find_sign_change_among<F, I>(f: F, candidates: I) -> Result<u64>
where
    F: Fn(u64) -> f64,
    I: IntoIterator<Item = u64>,
{
    let mut prev: Option<(u64, f64)> = None;
    for x in candidates {
        let y = f(x);
        if y == 0.0 {
            return Ok(x);
        }
        if let Some((px, py)) = prev {
            if py.signum() != y.signum() {
                return Ok(if py.abs() <= y.abs() { px } else { x });
            }
        }
        prev = Some((x, y));
    }
    Err(Error::NoSignChange)
}

/// Steffensen's method for `x = g(x)`.
///
/// Returns the fixed point and the number of iterations used. Converges
/// quadratically for a smooth contraction even when its factor is close to 1.
pub fn steffensen<G: FnMut(f64) -> Result<f64>>(
    mut g: G,
    x0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, usize)> {
    let mut x = x0;
    let mut last_step = f64::INFINITY;
    for iter in 1..=max_iter {
        let x1 = g(x)?;
        let x2 = g(x1)?;
        let denom = x2 - 2.0 * x1 + x;
        let next = if denom.abs() > f64::EPSILON * x.abs().max(1.0) {
            x - (x1 - x).powi(2) / denom
        } else {
            x2
        };
        last_step = (next - x).abs();
        x = next;
        if !x.is_finite() {
            break;
        }
        if last_step <= tol {
            return Ok((x, iter));
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        last_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_sign_change() {
        assert_eq!(find_sign_change(|r| r as f64 - 7.0, 1, 20).unwrap(), 7);
        assert_eq!(find_sign_change(|r| r as f64 - 7.4, 1, 20).unwrap(), 7);
        assert_eq!(find_sign_change(|r| r as f64 - 7.6, 1, 20).unwrap(), 8);
    }

    #[test]
    fn monotone_positive_has_no_sign_change() {
        assert_eq!(
            find_sign_change(|r| r as f64 + 1.0, 1, 20),
            Err(Error::NoSignChange)
        );
    }

    #[test]
    fn candidate_subset() {
        let r = find_sign_change_among(|r| r as f64 - 11.0, [1, 2, 5, 10, 25, 50]).unwrap();
        assert_eq!(r, 10);
    }

    #[test]
    fn steffensen_handles_slow_contraction() {
        // x = sqrt(c + k x^2) / N has contraction factor (N^2-1)/N^2 at the root
        let n = 10.0_f64;
        let g = |x: f64| Ok((0.4 + (n * n - 1.0) * x * x).sqrt() / n);
        let (x, iters) = steffensen(g, 0.5, 1e-12, 100).unwrap();
        assert!((x - 0.4_f64.sqrt()).abs() < 1e-11);
        assert!(iters < 20);
    }

    #[test]
    fn steffensen_reports_failure() {
        let err = steffensen(|x| Ok(x + 1.0), 0.0, 1e-10, 5).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { iterations: 5, .. }));
    }
}
