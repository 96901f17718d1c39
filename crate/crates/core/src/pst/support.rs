use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{square_free_part, ExactPoly, RatPoly};
use crate::spectral::SpectralDecomposition;

const FIT_TOLERANCE: f64 = 1e-8;

/// Arithmetic shape of an eigenvalue support.
///
/// Quadratic supports are `theta_i = (a + b_i sqrt(delta)) / 2` with integer
/// `a`, `b_i` and square-free `delta > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SupportClass {
    Integer { values: Vec<i64> },
    Quadratic { a: i64, delta: u64, b: Vec<i64> },
    Neither,
}

impl SupportClass {
    pub fn is_neither(&self) -> bool {
        matches!(self, SupportClass::Neither)
    }
}

fn near_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= FIT_TOLERANCE && r.abs() < 1e15).then_some(r as i64)
}

/// Classifies `values` (roots of `phi`) as integers, quadratic conjugates, or neither.
/// Every fit is confirmed by exact divisibility against `phi`.
pub fn classify_support(values: &[f64], phi: &ExactPoly) -> Result<SupportClass> {
    for &x in values {
        let scale = phi.magnitude_f64(x).max(1.0);
        if !x.is_finite() || phi.eval_f64(x).abs() > 1e-7 * scale {
            return Err(Error::NotRoots(format!("{x} is not a root of {phi}")));
        }
    }
    if values.is_empty() {
        return Ok(SupportClass::Neither);
    }

    if let Some(ints) = values.iter().map(|&x| near_integer(x)).collect::<Option<Vec<i64>>>() {
        if ints.iter().all(|&m| phi.eval(&BigInt::from(m)).is_zero()) {
            return Ok(SupportClass::Integer { values: ints });
        }
    }

    let candidates: BTreeSet<i64> = values
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| values[i..].iter().filter_map(move |&y| near_integer(x + y)))
        .collect();
    let phi_rat = phi.to_rat();
    for a in candidates {
        if let Some(class) = fit_quadratic(values, a, &phi_rat) {
            return Ok(class);
        }
    }
    Ok(SupportClass::Neither)
}

fn fit_quadratic(values: &[f64], a: i64, phi: &RatPoly) -> Option<SupportClass> {
    let af = a as f64;
    let widest = values
        .iter()
        .map(|&x| 2.0 * x - af)
        .max_by(|p, q| p.abs().total_cmp(&q.abs()))?;
    let squared = widest * widest;
    let m = squared.round();
    if m < 1.0 || (squared - m).abs() > FIT_TOLERANCE * m.max(1.0) || m > 1e15 {
        return None;
    }
    let delta = square_free_part(m as u64);
    if delta == 1 {
        return None;
    }
    let root = (delta as f64).sqrt();
    let mut b = Vec::with_capacity(values.len());
    for &x in values {
        let bi = ((2.0 * x - af) / root).round();
        if ((af + bi * root) / 2.0 - x).abs() > FIT_TOLERANCE {
            return None;
        }
        b.push(bi as i64);
    }
    b.iter()
        .all(|&bi| quadratic_divides(a, bi, delta, phi))
        .then_some(SupportClass::Quadratic { a, delta, b })
}

/// Whether the minimal polynomial of `(a + b sqrt(delta)) / 2` divides `phi`.
fn quadratic_divides(a: i64, b: i64, delta: u64, phi: &RatPoly) -> bool {
    let (a, b, delta) = (i128::from(a), i128::from(b), i128::from(delta));
    let factor = if b == 0 {
        RatPoly::from_i64(&[-(a as i64), 2])
    } else {
        // 4 t^2 - 4 a t + a^2 - b^2 delta
        let c = a * a - b * b * delta;
        match (i64::try_from(c), i64::try_from(4 * a)) {
            (Ok(c), Ok(la)) => RatPoly::from_i64(&[c, -la, 4]),
            _ => return false,
        }
    };
    factor.divides(phi)
}

/// Whether `rho^2` is an integer `m`, confirmed by `gcd(phi, t^2 - m) != 1`.
pub fn rho_squared_integer(sd: &SpectralDecomposition, phi: &ExactPoly) -> bool {
    let rho = sd.spectral_radius();
    let squared = rho * rho;
    let m = squared.round();
    if (squared - m).abs() > FIT_TOLERANCE * m.max(1.0) || m > 1e15 {
        return false;
    }
    let probe = RatPoly::from_i64(&[-(m as i64), 0, 1]);
    phi.to_rat().gcd(&probe).degree().unwrap_or(0) >= 1
}
