use serde::Serialize;

use crate::error::{Error, Result};

/// Continued-fraction reconstruction of `x` as `p / q` with `q <= max_den`,
/// accepted once `|q x - p| < residual`.
pub fn rational_approx(x: f64, max_den: u64, residual: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e18 {
            return None;
        }
        let a_int = a as i128;
        let (h, k) = (a_int * h1 + h0, a_int * k1 + k0);
        if k > max_den as i128 {
            return None;
        }
        if (k as f64 * x - h as f64).abs() < residual {
            return Some((h as i64, k as u64));
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = rest - a;
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioVerdict {
    pub holds: bool,
    /// `(theta_k, theta_l, theta_r, theta_s)` whose ratio
    /// `(theta_k - theta_l) / (theta_r - theta_s)` failed reconstruction.
    pub witness: Option<[f64; 4]>,
    /// The fixed denominator pair: largest and smallest value.
    pub denominator: [f64; 2],
}

/// Tests that every ratio of differences of `values` is rational, measured
/// against the widest pair.
pub fn ratio_condition(values: &[f64], denominator_bound: u64, residual: f64) -> Result<RatioVerdict> {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted.dedup();
    if sorted.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "ratio condition needs at least two distinct values, got {}",
            sorted.len()
        )));
    }
    let (top, bottom) = (sorted[0], sorted[sorted.len() - 1]);
    let span = top - bottom;
    for (i, &a) in sorted.iter().enumerate() {
        for &b in &sorted[i + 1..] {
            if rational_approx((a - b) / span, denominator_bound, residual).is_none() {
                return Ok(RatioVerdict {
                    holds: false,
                    witness: Some([a, b, top, bottom]),
                    denominator: [top, bottom],
                });
            }
        }
    }
    Ok(RatioVerdict {
        holds: true,
        witness: None,
        denominator: [top, bottom],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn reconstruction() {
        assert_eq!(rational_approx(0.5, 10, 1e-9), Some((1, 2)));
        assert_eq!(rational_approx(-0.75, 10, 1e-9), Some((-3, 4)));
        assert_eq!(rational_approx(3.0, 1, 1e-9), Some((3, 1)));
        assert_eq!(rational_approx(355.0 / 113.0, 1000, 1e-9), Some((355, 113)));
        assert_eq!(rational_approx(1.0 / 3.0, 2, 1e-9), None);
        assert_eq!(rational_approx(SQRT_2, 1_000_000, 1e-9), None);
        assert_eq!(rational_approx(1.0 / 5f64.sqrt(), 1_000_000, 1e-9), None);
    }

    #[test]
    fn examples() {
        assert!(ratio_condition(&[SQRT_2, 0.0, -SQRT_2], 1_000_000, 1e-9).unwrap().holds);
        assert!(ratio_condition(&[3.0, 1.0, -1.0, -3.0], 1_000_000, 1e-9).unwrap().holds);
        let r5 = 5f64.sqrt();
        let p4 = [(1.0 + r5) / 2.0, (r5 - 1.0) / 2.0, (1.0 - r5) / 2.0, (-1.0 - r5) / 2.0];
        let verdict = ratio_condition(&p4, 1_000_000, 1e-9).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.witness.unwrap(), [p4[0], p4[1], p4[0], p4[3]]);
        assert!(ratio_condition(&[1.0, 1.0], 1_000_000, 1e-9).is_err());
    }
}
